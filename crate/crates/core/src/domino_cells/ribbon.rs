use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::tableau::DominoTableau;
use crate::error::{Error, Result};
use crate::partitions::{Box, Partition, ResidueClass};

/// A rim ribbon together with its domino tiling.
///
/// `boxes` runs from the lower-left end to the upper-right end. Each domino
/// is stored as `[first, pivot]` in walk order; the pivot is the box of
/// residue `j + 1` that stays fixed when a tableau is moved through.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct RimRibbon {
    pub boxes: Vec<Box>,
    pub dominoes: Vec<[Box; 2]>,
}

impl RimRibbon {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: Box) -> bool {
        self.boxes.contains(&b)
    }

    pub fn first(&self) -> Box {
        self.boxes[0]
    }

    pub fn last(&self) -> Box {
        *self.boxes.last().expect("ribbons are non-empty")
    }
}

/// Walks the rim of `lambda` from `start` to `end` (right when the box to
/// the right is in `lambda`, up otherwise) and tiles the walk by
/// consecutive pairs.
///
/// `start` must be a corner of `lambda` and removing the walk must leave a
/// partition.
pub fn tile_rim_ribbon(lambda: &Partition, start: Box, end: Box) -> Result<RimRibbon> {
    if !lambda.corners().contains(&start) {
        return Err(Error::ContractViolation(format!(
            "{start} is not a corner of {lambda}"
        )));
    }
    let mut boxes = vec![start];
    let mut cur = start;
    while cur != end {
        let right = Box::new(cur.p, cur.q + 1);
        cur = if lambda.contains(right) {
            right
        } else if cur.p > 1 {
            Box::new(cur.p - 1, cur.q)
        } else {
            return Err(Error::ContractViolation(format!(
                "rim walk from {start} in {lambda} never reaches {end}"
            )));
        };
        if cur.p < end.p || cur.q > end.q {
            return Err(Error::ContractViolation(format!(
                "rim walk from {start} in {lambda} passes {end}"
            )));
        }
        boxes.push(cur);
    }
    if boxes.len() % 2 != 0 {
        return Err(Error::ContractViolation(format!(
            "rim walk {start}..{end} has odd length {}",
            boxes.len()
        )));
    }
    let rest = remove_boxes(lambda, &boxes)?;
    debug_assert_eq!(rest.size() + boxes.len(), lambda.size());
    let dominoes = boxes.chunks(2).map(|c| [c[0], c[1]]).collect();
    Ok(RimRibbon { boxes, dominoes })
}

fn remove_boxes(lambda: &Partition, boxes: &[Box]) -> Result<Partition> {
    let mut parts = lambda.parts().to_vec();
    for b in boxes {
        parts[b.p - 1] -= 1;
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::new(parts.clone())
        .ok()
        .filter(|mu| mu.parts() == parts.as_slice())
        .ok_or_else(|| {
            Error::ContractViolation(format!(
                "removing {boxes:?} from {lambda} leaves no partition"
            ))
        })
}

/// True for boxes of `lambda` and for the virtual row above it.
fn in_shape_or_top_border(lambda: &Partition, v: usize, w: usize) -> bool {
    w >= 1 && (v == 0 || lambda.contains(Box::new(v, w)))
}

/// Checks the local shape of the tiling around every pivot that is not the
/// upper-right end:
///
/// * (i) the pivot's domino is `{below, pivot}` or `{left, pivot}`;
/// * (ii) if `s_{v-1,w+1}` is in `lambda` then `s_{v,w+1}` is in the
///   ribbon, and for horizontal dominoes `s_{v-1,w+1}` is not;
/// * (iii) otherwise `s_{v-1,w}` is in the ribbon.
pub fn check_tiling_properties(
    lambda: &Partition,
    ribbon: &RimRibbon,
    j: ResidueClass,
) -> Result<()> {
    let pivot_residue = j.shifted(1);
    let last = ribbon.last();
    let fail = |what: &str, b: Box| {
        Err(Error::ContractViolation(format!(
            "tiling property {what} fails at {b}"
        )))
    };
    for &[other, pivot] in &ribbon.dominoes {
        if pivot.residue(2) != pivot_residue {
            return fail("residue", pivot);
        }
        if pivot == last {
            continue;
        }
        let (v, w) = (pivot.p, pivot.q);
        let vertical = other == Box::new(v + 1, w);
        let horizontal = other == Box::new(v, w - 1);
        if !vertical && !horizontal {
            return fail("(i)", pivot);
        }
        if in_shape_or_top_border(lambda, v - 1, w + 1) {
            if !ribbon.contains(Box::new(v, w + 1)) {
                return fail("(ii)", pivot);
            }
            if horizontal && v > 1 && ribbon.contains(Box::new(v - 1, w + 1)) {
                return fail("(ii)", pivot);
            }
        } else if v == 1 || !ribbon.contains(Box::new(v - 1, w)) {
            return fail("(iii)", pivot);
        }
    }
    Ok(())
}

/// Moves `tableau` through the cycle given by `ribbon`.
///
/// Each domino `D` of the ribbon keeps its label and its box `S = s_vw` of
/// residue `r + 1`, and swaps its other box:
///
/// * if `S` is the top of a vertical or the right end of a horizontal
///   domino, `D` becomes `{S, s_{v,w+1}}` when `s_{v-1,w+1}` carries a
///   smaller label (the row above the diagram counts as label 0), and
///   `{S, s_{v-1,w}}` otherwise;
/// * in the transposed situation `D` becomes `{S, s_{v+1,w}}` when
///   `s_{v+1,w-1}` carries a smaller label (column 0 counts as label 0),
///   and `{S, s_{v,w-1}}` otherwise.
///
/// Returns the new tableau and the image ribbon.
pub fn move_through(
    tableau: &DominoTableau,
    ribbon: &RimRibbon,
) -> Result<(DominoTableau, RimRibbon)> {
    let fixed = ResidueClass::new(tableau.rank() + 1, 2);
    let mut labels = tableau.labels();
    let mut moved: Vec<(usize, [Box; 2])> = Vec::with_capacity(ribbon.dominoes.len());
    let smaller = |b: Box, k: usize, labels: &BTreeMap<Box, usize>| {
        b.p == 0 || b.q == 0 || labels.get(&b).is_some_and(|&l| l < k)
    };
    for &[a, b] in &ribbon.dominoes {
        let k = match (tableau.label(a), tableau.label(b)) {
            (Some(x), Some(y)) if x == y && x > 0 => x,
            _ => {
                return Err(Error::ContractViolation(format!(
                    "ribbon domino {{{a}, {b}}} is not a domino of the tableau"
                )))
            }
        };
        let (s, other) = if a.residue(2) == fixed {
            (a, b)
        } else {
            (b, a)
        };
        if s.residue(2) != fixed || other.residue(2) == fixed {
            return Err(Error::ContractViolation(format!(
                "domino {{{a}, {b}}} has no fixed box"
            )));
        }
        let (v, w) = (s.p, s.q);
        let new_other = if other == Box::new(v + 1, w) || other == Box::new(v, w - 1) {
            if smaller(Box::new(v - 1, w + 1), k, &labels) {
                Box::new(v, w + 1)
            } else {
                Box::new(v - 1, w)
            }
        } else if smaller(Box::new(v + 1, w - 1), k, &labels) {
            Box::new(v + 1, w)
        } else {
            Box::new(v, w - 1)
        };
        if new_other.p == 0 || new_other.q == 0 {
            return Err(Error::ContractViolation(format!(
                "domino {k} would leave the diagram at {s}"
            )));
        }
        moved.push((k, [s, new_other]));
    }
    for &[a, b] in &ribbon.dominoes {
        labels.remove(&a);
        labels.remove(&b);
    }
    let mut image_boxes = BTreeSet::new();
    for &(k, [s, o]) in &moved {
        for b in [s, o] {
            if labels.insert(b, k).is_some() || !image_boxes.insert(b) {
                return Err(Error::ContractViolation(format!(
                    "moved dominoes overlap at {b}"
                )));
            }
        }
    }
    let result = DominoTableau::from_labels_unchecked(tableau.rank(), &labels)?;
    result.validate()?;

    // walk order on a rim path: columns left to right, rows bottom to top
    let mut boxes: Vec<Box> = image_boxes.into_iter().collect();
    boxes.sort_by_key(|b| (b.q, std::cmp::Reverse(b.p)));
    let position = |b: Box| boxes.iter().position(|&x| x == b).expect("image box");
    let dominoes = moved
        .iter()
        .map(|&(_, [s, o])| {
            if position(o) < position(s) {
                [o, s]
            } else {
                [s, o]
            }
        })
        .collect();
    Ok((result, RimRibbon { boxes, dominoes }))
}
