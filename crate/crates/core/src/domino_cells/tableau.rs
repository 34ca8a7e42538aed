use std::collections::BTreeMap;

use serde::Serialize;

use crate::cores_quotients::{ell_core, p_r_size};
use crate::error::{Error, Result};
use crate::partitions::{Box, Partition};

/// A rank-`r` domino tableau: the staircase core filled with 0 and `n`
/// dominoes labelled `1..=n`, weakly increasing along rows and columns.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DominoTableau {
    #[serde(skip)]
    shape: Partition,
    #[serde(skip)]
    rank: usize,
    #[serde(rename = "labels")]
    rows: Vec<Vec<usize>>,
}

impl DominoTableau {
    /// The tableau of shape `(r, ..., 1)` with no dominoes.
    pub fn core(rank: usize) -> Self {
        let shape = Partition::staircase(rank);
        let rows = shape.parts().iter().map(|&len| vec![0; len]).collect();
        Self { shape, rank, rows }
    }

    /// Builds and validates a tableau from its label matrix.
    pub fn from_rows(rank: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        let t = Self { shape, rank, rows };
        t.validate()?;
        Ok(t)
    }

    pub(crate) fn from_labels_unchecked(
        rank: usize,
        labels: &BTreeMap<Box, usize>,
    ) -> Result<Self> {
        let mut rows: Vec<Vec<usize>> = Vec::new();
        for (b, &label) in labels {
            if rows.len() < b.p {
                rows.resize(b.p, Vec::new());
            }
            let row = &mut rows[b.p - 1];
            if row.len() + 1 != b.q {
                return Err(Error::ContractViolation(format!(
                    "labelled boxes do not form a Young diagram near {b}"
                )));
            }
            row.push(label);
        }
        let lens: Vec<usize> = rows.iter().map(Vec::len).collect();
        if lens.contains(&0) || lens.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ContractViolation(format!(
                "row lengths {lens:?} are not a partition"
            )));
        }
        Ok(Self {
            shape: Partition::from_parts_unchecked(lens),
            rank,
            rows,
        })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of dominoes.
    pub fn n(&self) -> usize {
        (self.shape.size() - p_r_size(0, self.rank)) / 2
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn label(&self, b: Box) -> Option<usize> {
        if b.p == 0 || b.q == 0 {
            return None;
        }
        self.rows.get(b.p - 1)?.get(b.q - 1).copied()
    }

    /// Labels of all boxes, keyed by box.
    pub fn labels(&self) -> BTreeMap<Box, usize> {
        self.shape
            .boxes()
            .into_iter()
            .map(|b| (b, self.rows[b.p - 1][b.q - 1]))
            .collect()
    }

    /// The two boxes carrying label `k`, in row-major order.
    pub fn domino(&self, k: usize) -> Option<[Box; 2]> {
        let cells: Vec<Box> = self
            .shape
            .boxes()
            .into_iter()
            .filter(|&b| self.rows[b.p - 1][b.q - 1] == k)
            .collect();
        match cells.as_slice() {
            [a, b] => Some([*a, *b]),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let core = Partition::staircase(self.rank);
        let mut counts: BTreeMap<usize, Vec<Box>> = BTreeMap::new();
        for b in self.shape.boxes() {
            let label = self.rows[b.p - 1][b.q - 1];
            if (label == 0) != core.contains(b) {
                return Err(Error::ContractViolation(format!(
                    "label 0 must fill exactly the staircase core; {b} has {label}"
                )));
            }
            if b.q > 1 && self.rows[b.p - 1][b.q - 2] > label {
                return Err(Error::ContractViolation(format!("row decreases at {b}")));
            }
            if b.p > 1 && self.rows[b.p - 2][b.q - 1] > label {
                return Err(Error::ContractViolation(format!("column decreases at {b}")));
            }
            if label > 0 {
                counts.entry(label).or_default().push(b);
            }
        }
        let n = counts.len();
        if self.shape.size() != p_r_size(n, self.rank) {
            return Err(Error::ContractViolation(format!(
                "shape {} does not hold {n} dominoes over the rank-{} core",
                self.shape, self.rank
            )));
        }
        for (expected, (&label, cells)) in (1..).zip(&counts) {
            if label != expected {
                return Err(Error::ContractViolation(format!(
                    "label {expected} is missing"
                )));
            }
            let adjacent = cells.len() == 2 && {
                let (a, b) = (cells[0], cells[1]);
                (a.p == b.p && a.q + 1 == b.q) || (a.q == b.q && a.p + 1 == b.p)
            };
            if !adjacent {
                return Err(Error::ContractViolation(format!(
                    "label {label} does not occupy a domino: {cells:?}"
                )));
            }
        }
        Ok(())
    }
}

/// Checks `lambda ∈ P_r(n)` for some `n` and returns `n`.
pub fn check_p_r(lambda: &Partition, rank: usize) -> Result<usize> {
    let core_size = p_r_size(0, rank);
    let size = lambda.size();
    let n = size.saturating_sub(core_size) / 2;
    if size < core_size
        || !(size - core_size).is_multiple_of(2)
        || ell_core(lambda, 2) != Partition::staircase(rank)
    {
        return Err(Error::InvalidShape {
            shape: lambda.clone(),
            rank,
            size: n,
        });
    }
    Ok(n)
}

/// Dominoes whose removal leaves a partition.
pub fn removable_dominoes(lambda: &Partition) -> Vec<[Box; 2]> {
    let mut out = Vec::new();
    for p in 1..=lambda.len() {
        let len = lambda.row_len(p);
        // horizontal at the end of row p
        if len >= 2 && len - 2 >= lambda.row_len(p + 1) {
            out.push([Box::new(p, len - 1), Box::new(p, len)]);
        }
        // vertical at the end of rows p, p + 1
        if lambda.row_len(p + 1) == len && lambda.row_len(p + 2) < len {
            out.push([Box::new(p, len), Box::new(p + 1, len)]);
        }
    }
    out
}

pub(crate) fn remove_domino(lambda: &Partition, domino: [Box; 2]) -> Partition {
    let mut parts = lambda.parts().to_vec();
    for b in domino {
        parts[b.p - 1] -= 1;
    }
    while parts.last() == Some(&0) {
        parts.pop();
    }
    Partition::from_parts_unchecked(parts)
}

/// All standard domino tableaux of shape `lambda` and rank `r`, built by
/// peeling off the domino carrying the largest label.
pub fn enumerate_tableaux(lambda: &Partition, rank: usize) -> Result<Vec<DominoTableau>> {
    let n = check_p_r(lambda, rank)?;
    let mut out = Vec::new();
    let mut labels: BTreeMap<Box, usize> = Partition::staircase(rank)
        .boxes()
        .into_iter()
        .map(|b| (b, 0))
        .collect();
    fill_all(lambda, rank, n, &mut labels, &mut out);
    Ok(out)
}

fn fill_all(
    lambda: &Partition,
    rank: usize,
    n: usize,
    labels: &mut BTreeMap<Box, usize>,
    out: &mut Vec<DominoTableau>,
) {
    if n == 0 {
        out.push(
            DominoTableau::from_labels_unchecked(rank, labels).expect("valid by construction"),
        );
        return;
    }
    for domino in removable_dominoes(lambda) {
        let smaller = remove_domino(lambda, domino);
        if !Partition::staircase(rank).is_contained_in(&smaller) {
            continue;
        }
        for b in domino {
            labels.insert(b, n);
        }
        fill_all(&smaller, rank, n - 1, labels, out);
        for b in domino {
            labels.remove(&b);
        }
    }
}

/// One tableau of shape `lambda`: repeatedly peel the first removable
/// domino outside the core.
pub fn some_tableau(lambda: &Partition, rank: usize) -> Result<DominoTableau> {
    let n = check_p_r(lambda, rank)?;
    let core = Partition::staircase(rank);
    let mut labels: BTreeMap<Box, usize> = core.boxes().into_iter().map(|b| (b, 0)).collect();
    let mut shape = lambda.clone();
    for k in (1..=n).rev() {
        let domino = removable_dominoes(&shape)
            .into_iter()
            .find(|&d| core.is_contained_in(&remove_domino(&shape, d)))
            .ok_or_else(|| Error::Internal(format!("no removable domino in {shape}")))?;
        for b in domino {
            labels.insert(b, k);
        }
        shape = remove_domino(&shape, domino);
    }
    DominoTableau::from_labels_unchecked(rank, &labels)
}
