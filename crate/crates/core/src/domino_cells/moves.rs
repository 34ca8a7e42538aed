use std::collections::BTreeMap;

use serde::Serialize;

use super::ribbon::{check_tiling_properties, move_through, tile_rim_ribbon, RimRibbon};
use super::tableau::{check_p_r, some_tableau, DominoTableau};
use crate::error::{Error, Result};
use crate::partitions::{addable_boxes, removable_boxes, Box, Partition, ResidueClass};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// The removed box lies below and to the left of the added one.
    Forward,
    Reverse,
}

/// Replace the `j`-removable box `removed` of `source` by the `j`-addable
/// box `added`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct ElementaryMove {
    pub source: Partition,
    pub removed: Box,
    pub added: Box,
    pub direction: Direction,
}

impl ElementaryMove {
    pub fn target(&self) -> Partition {
        self.source
            .remove_box(self.removed)
            .and_then(|mu| mu.add_box(self.added))
            .expect("moves are only built between partitions")
    }

    /// The same move read backwards.
    pub fn reversed(&self) -> Self {
        Self {
            source: self.target(),
            removed: self.added,
            added: self.removed,
            direction: match self.direction {
                Direction::Forward => Direction::Reverse,
                Direction::Reverse => Direction::Forward,
            },
        }
    }
}

/// A tableau on each side of a move, related by moving through a cycle.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Witness {
    pub before: DominoTableau,
    pub ribbon: RimRibbon,
    pub after: DominoTableau,
    pub image: RimRibbon,
}

fn in_rectangle(b: Box, low: Box, high: Box) -> bool {
    (high.p..=low.p).contains(&b.p) && (low.q..=high.q).contains(&b.q)
}

/// Forward admissibility: `removed` lies weakly below and left of `added`
/// and no other `j`-addable or `j`-removable box sits in the rectangle they
/// span.
fn forward_admissible(lambda: &Partition, removed: Box, added: Box, j: ResidueClass) -> bool {
    if removed.p < added.p || removed.q > added.q {
        return false;
    }
    removable_boxes(lambda, j)
        .into_iter()
        .chain(addable_boxes(lambda, j))
        .all(|b| b == removed || b == added || !in_rectangle(b, removed, added))
}

fn forward_moves(lambda: &Partition, j: ResidueClass) -> Vec<ElementaryMove> {
    let addable = addable_boxes(lambda, j);
    let mut out = Vec::new();
    for removed in removable_boxes(lambda, j) {
        for &added in &addable {
            if forward_admissible(lambda, removed, added, j) {
                out.push(ElementaryMove {
                    source: lambda.clone(),
                    removed,
                    added,
                    direction: Direction::Forward,
                });
            }
        }
    }
    out
}

/// All elementary moves out of `lambda ∈ P_r(n)` with `j = r mod 2`:
/// forward moves first, then moves whose reversal is a forward move.
pub fn elementary_moves(lambda: &Partition, rank: usize) -> Result<Vec<ElementaryMove>> {
    check_p_r(lambda, rank)?;
    let j = ResidueClass::new(rank, 2);
    let mut out = forward_moves(lambda, j);
    for removed in removable_boxes(lambda, j) {
        for added in addable_boxes(lambda, j) {
            let Ok(other) = lambda.remove_box(removed).and_then(|mu| mu.add_box(added)) else {
                continue;
            };
            if forward_admissible(&other, added, removed, j) {
                out.push(ElementaryMove {
                    source: lambda.clone(),
                    removed,
                    added,
                    direction: Direction::Reverse,
                });
            }
        }
    }
    Ok(out)
}

/// Labels the ribbon's dominoes `first..` in an order compatible with rows
/// and columns, preferring walk order.
fn label_ribbon(ribbon: &RimRibbon, first: usize) -> BTreeMap<Box, usize> {
    let d = &ribbon.dominoes;
    let before = |a: &[Box; 2], b: &[Box; 2]| {
        b.iter().any(|y| {
            a.iter()
                .any(|x| (x.p == y.p && x.q + 1 == y.q) || (x.q == y.q && x.p + 1 == y.p))
        })
    };
    let mut indegree: Vec<usize> = (0..d.len())
        .map(|i| {
            (0..d.len())
                .filter(|&k| k != i && before(&d[k], &d[i]))
                .count()
        })
        .collect();
    let mut done = vec![false; d.len()];
    let mut labels = BTreeMap::new();
    for label in first..first + d.len() {
        let next = (0..d.len())
            .find(|&i| !done[i] && indegree[i] == 0)
            .expect("ribbon dominoes are acyclic");
        done[next] = true;
        for b in d[next] {
            labels.insert(b, label);
        }
        for i in 0..d.len() {
            if !done[i] && before(&d[next], &d[i]) {
                indegree[i] -= 1;
            }
        }
    }
    labels
}

/// Builds a pair of tableaux realising a forward move, and checks that
/// moving back through the image cycle returns the original tableau.
pub fn forward_witness(mv: &ElementaryMove, rank: usize) -> Result<Witness> {
    if mv.direction != Direction::Forward {
        return Err(Error::InvalidParameter(
            "forward_witness needs a forward move".into(),
        ));
    }
    let lambda = &mv.source;
    let n = check_p_r(lambda, rank)?;
    let j = ResidueClass::new(rank, 2);
    if mv.added.q < 2 {
        return Err(Error::ContractViolation(format!(
            "{} cannot end a ribbon",
            mv.added
        )));
    }
    let ribbon = tile_rim_ribbon(lambda, mv.removed, Box::new(mv.added.p, mv.added.q - 1))?;
    check_tiling_properties(lambda, &ribbon, j)?;
    let mut rest = lambda.parts().to_vec();
    for b in &ribbon.boxes {
        rest[b.p - 1] -= 1;
    }
    let rest = Partition::new(rest)?;
    let t = ribbon.dominoes.len();
    let base = some_tableau(&rest, rank)?;
    let mut labels = base.labels();
    labels.extend(label_ribbon(&ribbon, n - t + 1));
    let before = DominoTableau::from_labels_unchecked(rank, &labels)?;
    before.validate()?;

    let (after, image) = move_through(&before, &ribbon)?;
    if after.shape() != &mv.target() {
        return Err(Error::ContractViolation(format!(
            "moving {lambda} through its cycle gave {} instead of {}",
            after.shape(),
            mv.target()
        )));
    }
    let (back, back_ribbon) = move_through(&after, &image)?;
    if back != before || back_ribbon != ribbon {
        return Err(Error::ContractViolation(format!(
            "moving through the image cycle of {lambda} is not inverse"
        )));
    }
    Ok(Witness {
        before,
        ribbon,
        after,
        image,
    })
}

/// A witness for any move; reverse moves use the forward witness of their
/// reversal, read backwards.
pub fn witness(mv: &ElementaryMove, rank: usize) -> Result<Witness> {
    match mv.direction {
        Direction::Forward => forward_witness(mv, rank),
        Direction::Reverse => {
            let w = forward_witness(&mv.reversed(), rank)?;
            Ok(Witness {
                before: w.after,
                ribbon: w.image,
                after: w.before,
                image: w.ribbon,
            })
        }
    }
}
