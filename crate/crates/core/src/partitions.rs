//! Partitions, boxes, residues and J-hearts.
//!
//! Young diagrams are drawn northwest-justified with 1-indexed rows and
//! columns. The residue of the box in row `p`, column `q` is `p - q mod l`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default ceiling on the size of partitions that may be enumerated.
pub const DEFAULT_MAX_PARTITION_SIZE: usize = 40;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Builds a partition, rejecting sequences that are not weakly
    /// decreasing. Trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(!parts.contains(&0));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The staircase `(r, r-1, ..., 1)`.
    pub fn staircase(r: usize) -> Self {
        Self {
            parts: (1..=r).rev().collect(),
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `p` (1-indexed); zero beyond the last row.
    pub fn row_len(&self, p: usize) -> usize {
        if p == 0 {
            return 0;
        }
        self.parts.get(p - 1).copied().unwrap_or(0)
    }

    /// Length of column `q` (1-indexed).
    pub fn col_len(&self, q: usize) -> usize {
        if q == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&part| part >= q).count()
    }

    pub fn contains(&self, b: Box) -> bool {
        b.p >= 1 && b.q >= 1 && b.q <= self.row_len(b.p)
    }

    /// All boxes in row-major order.
    pub fn boxes(&self) -> Vec<Box> {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |q| Box::new(i + 1, q)))
            .collect()
    }

    /// Boxes whose removal leaves a partition (the outer corners).
    pub fn corners(&self) -> Vec<Box> {
        (1..=self.len())
            .filter(|&p| self.row_len(p) > self.row_len(p + 1))
            .map(|p| Box::new(p, self.row_len(p)))
            .collect()
    }

    /// Boxes outside the diagram whose addition gives a partition.
    pub fn outer_corners(&self) -> Vec<Box> {
        (1..=self.len() + 1)
            .filter(|&p| p == 1 || self.row_len(p - 1) > self.row_len(p))
            .map(|p| Box::new(p, self.row_len(p) + 1))
            .collect()
    }

    /// Removes a corner box. Errors if `b` is not a corner.
    pub fn remove_box(&self, b: Box) -> Result<Self> {
        if !self.contains(b) || self.row_len(b.p) != b.q || self.row_len(b.p + 1) >= b.q {
            return Err(Error::InvalidParameter(format!(
                "{b} is not a removable box of {self}"
            )));
        }
        let mut parts = self.parts.clone();
        parts[b.p - 1] -= 1;
        if parts[b.p - 1] == 0 {
            parts.pop();
        }
        Ok(Self { parts })
    }

    /// Adds an outer-corner box. Errors if the result is not a partition.
    pub fn add_box(&self, b: Box) -> Result<Self> {
        let ok =
            b.p >= 1 && b.q == self.row_len(b.p) + 1 && (b.p == 1 || self.row_len(b.p - 1) >= b.q);
        if !ok {
            return Err(Error::InvalidParameter(format!(
                "{b} is not an addable box of {self}"
            )));
        }
        let mut parts = self.parts.clone();
        if b.p > parts.len() {
            parts.push(1);
        } else {
            parts[b.p - 1] += 1;
        }
        Ok(Self { parts })
    }

    /// Conjugate (transposed) partition.
    pub fn conjugate(&self) -> Self {
        let width = self.row_len(1);
        Self {
            parts: (1..=width).map(|q| self.col_len(q)).collect(),
        }
    }

    /// True if every box of `self` lies in `other`.
    pub fn is_contained_in(&self, other: &Partition) -> bool {
        self.len() <= other.len() && self.parts.iter().zip(&other.parts).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

/// Decreasing lexicographic order: `(4) < (3,1) < (2,2) < ...` in this
/// crate's canonical listings.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.parts.cmp(&self.parts)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let body: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The box `s_pq` in row `p`, column `q`, both 1-indexed.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Box {
    pub p: usize,
    pub q: usize,
}

impl Box {
    pub const fn new(p: usize, q: usize) -> Self {
        Self { p, q }
    }

    pub fn residue(self, ell: usize) -> ResidueClass {
        ResidueClass::from_signed(self.p as i64 - self.q as i64, ell)
    }
}

impl fmt::Display for Box {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{},{}", self.p, self.q)
    }
}

impl fmt::Debug for Box {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An integer modulo `l`, stored in `0..l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    value: usize,
    modulus: usize,
}

impl ResidueClass {
    pub fn new(value: usize, modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_signed(value: i64, modulus: usize) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Self {
            value: value.rem_euclid(modulus as i64) as usize,
            modulus,
        }
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn modulus(self) -> usize {
        self.modulus
    }

    pub fn shifted(self, by: i64) -> Self {
        Self::from_signed(self.value as i64 + by, self.modulus)
    }
}

/// Residue of `b` modulo `ell`.
pub fn residue(b: Box, ell: usize) -> ResidueClass {
    b.residue(ell)
}

/// A subset of `{0, ..., l-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TypeJ {
    members: BTreeSet<usize>,
    modulus: usize,
}

impl TypeJ {
    pub fn new(members: impl IntoIterator<Item = usize>, modulus: usize) -> Result<Self> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be positive".into()));
        }
        if let Some(bad) = members.iter().find(|&&j| j >= modulus) {
            return Err(Error::InvalidParameter(format!(
                "residue {bad} out of range for l = {modulus}"
            )));
        }
        Ok(Self { members, modulus })
    }

    pub fn empty(modulus: usize) -> Self {
        Self {
            members: BTreeSet::new(),
            modulus,
        }
    }

    pub fn singleton(j: ResidueClass) -> Self {
        Self {
            members: BTreeSet::from([j.value()]),
            modulus: j.modulus(),
        }
    }

    pub fn contains(&self, j: ResidueClass) -> bool {
        j.modulus() == self.modulus && self.members.contains(&j.value())
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }
}

/// The `j`-removable boxes of `lambda`, top row first.
pub fn removable_boxes(lambda: &Partition, j: ResidueClass) -> Vec<Box> {
    lambda
        .corners()
        .into_iter()
        .filter(|b| b.residue(j.modulus()) == j)
        .collect()
}

/// The `j`-addable boxes of `lambda`, top row first.
pub fn addable_boxes(lambda: &Partition, j: ResidueClass) -> Vec<Box> {
    lambda
        .outer_corners()
        .into_iter()
        .filter(|b| b.residue(j.modulus()) == j)
        .collect()
}

/// Removes `J`-removable boxes until none are left.
///
/// Greedy: rows are scanned top-down and the first eligible corner is
/// removed. The result does not depend on the order (checked in tests).
pub fn j_heart(lambda: &Partition, types: &TypeJ) -> Partition {
    if types.is_empty() {
        return lambda.clone();
    }
    let ell = types.modulus();
    let mut current = lambda.clone();
    'outer: loop {
        for corner in current.corners() {
            if types.contains(corner.residue(ell)) {
                current = current
                    .remove_box(corner)
                    .expect("corner boxes are removable");
                continue 'outer;
            }
        }
        return current;
    }
}

/// True iff `lambda` and `mu` have the same `J`-heart.
pub fn same_j_class(lambda: &Partition, mu: &Partition, types: &TypeJ) -> bool {
    lambda == mu || j_heart(lambda, types) == j_heart(mu, types)
}

/// All partitions of `n` in decreasing lexicographic order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(n, DEFAULT_MAX_PARTITION_SIZE)
}

pub fn enumerate_partitions_bounded(n: usize, bound: usize) -> Result<Vec<Partition>> {
    if n > bound {
        return Err(Error::EnumerationLimit {
            what: "partition size",
            requested: n,
            bound,
        });
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    extend_partitions(n, n, &mut prefix, &mut out);
    Ok(out)
}

fn extend_partitions(
    remaining: usize,
    max_part: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::from_parts_unchecked(prefix.clone()));
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        prefix.push(part);
        extend_partitions(remaining - part, part, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn r(j: usize, ell: usize) -> ResidueClass {
        ResidueClass::new(j, ell)
    }

    /// Definition oracle: try every box position and test whether
    /// removing/adding it leaves a weakly decreasing sequence.
    fn removable_oracle(lambda: &Partition, j: ResidueClass) -> BTreeSet<Box> {
        lambda
            .boxes()
            .into_iter()
            .filter(|b| b.residue(j.modulus()) == j)
            .filter(|b| {
                let mut parts = lambda.parts().to_vec();
                if parts[b.p - 1] != b.q {
                    return false;
                }
                parts[b.p - 1] -= 1;
                Partition::new(parts).is_ok()
            })
            .collect()
    }

    fn addable_oracle(lambda: &Partition, j: ResidueClass) -> BTreeSet<Box> {
        let mut out = BTreeSet::new();
        for row in 1..=lambda.len() + 1 {
            for col in 1..=lambda.row_len(1) + 1 {
                let b = Box::new(row, col);
                if lambda.contains(b) || b.residue(j.modulus()) != j {
                    continue;
                }
                let mut parts = lambda.parts().to_vec();
                if row > parts.len() {
                    parts.push(0);
                }
                if parts[row - 1] + 1 != col {
                    continue;
                }
                parts[row - 1] += 1;
                if Partition::new(parts).is_ok() {
                    out.insert(b);
                }
            }
        }
        out
    }

    /// Every terminal partition reachable by some order of removals.
    fn heart_terminals(
        lambda: &Partition,
        types: &TypeJ,
        memo: &mut HashMap<Partition, BTreeSet<Partition>>,
    ) -> BTreeSet<Partition> {
        if let Some(hit) = memo.get(lambda) {
            return hit.clone();
        }
        let ell = types.modulus();
        let eligible: Vec<Box> = removable_oracle_all(lambda)
            .into_iter()
            .filter(|b| types.contains(b.residue(ell)))
            .collect();
        let result = if eligible.is_empty() {
            BTreeSet::from([lambda.clone()])
        } else {
            eligible
                .into_iter()
                .flat_map(|b| heart_terminals(&lambda.remove_box(b).unwrap(), types, memo))
                .collect()
        };
        memo.insert(lambda.clone(), result.clone());
        result
    }

    fn removable_oracle_all(lambda: &Partition) -> Vec<Box> {
        // modulo 1 every box has residue 0
        removable_oracle(lambda, ResidueClass::new(0, 1))
            .into_iter()
            .collect()
    }

    fn all_types(ell: usize) -> Vec<TypeJ> {
        (0u32..(1 << ell))
            .map(|mask| TypeJ::new((0..ell).filter(|j| mask & (1 << j) != 0), ell).unwrap())
            .collect()
    }

    #[test]
    fn boxes_are_row_major() {
        assert!(p(&[]).boxes().is_empty());
        assert_eq!(p(&[1]).boxes(), vec![Box::new(1, 1)]);
        assert_eq!(
            p(&[2, 1]).boxes(),
            vec![Box::new(1, 1), Box::new(1, 2), Box::new(2, 1)]
        );
    }

    #[test]
    fn residues_use_row_minus_column() {
        assert_eq!(residue(Box::new(1, 1), 2).value(), 0);
        assert_eq!(residue(Box::new(1, 2), 2).value(), 1);
        assert_eq!(residue(Box::new(4, 1), 3).value(), 0);
        assert_eq!(residue(Box::new(1, 3), 3).value(), 1);
    }

    #[test]
    fn removable_examples() {
        assert_eq!(removable_boxes(&p(&[2]), r(1, 2)), vec![Box::new(1, 2)]);
        assert!(removable_boxes(&p(&[2]), r(0, 2)).is_empty());
        assert!(removable_boxes(&p(&[]), r(0, 2)).is_empty());
        assert!(removable_boxes(&p(&[]), r(1, 2)).is_empty());
    }

    #[test]
    fn addable_examples() {
        assert_eq!(addable_boxes(&p(&[]), r(0, 2)), vec![Box::new(1, 1)]);
        assert_eq!(
            addable_boxes(&p(&[1]), r(1, 2)),
            vec![Box::new(1, 2), Box::new(2, 1)]
        );
        assert_eq!(
            addable_boxes(&p(&[2, 2]), r(0, 2)),
            vec![Box::new(1, 3), Box::new(3, 1)]
        );
    }

    #[test]
    fn removable_and_addable_match_definition_oracle() {
        for n in 0..=8 {
            for lambda in enumerate_partitions(n).unwrap() {
                for ell in 1..=4 {
                    for j in 0..ell {
                        let j = r(j, ell);
                        let fast: BTreeSet<Box> = removable_boxes(&lambda, j).into_iter().collect();
                        assert_eq!(fast, removable_oracle(&lambda, j), "{lambda} j={j:?}");
                        let fast: BTreeSet<Box> = addable_boxes(&lambda, j).into_iter().collect();
                        assert_eq!(fast, addable_oracle(&lambda, j), "{lambda} j={j:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn removable_addable_duality() {
        for n in 0..=7 {
            for lambda in enumerate_partitions(n).unwrap() {
                for ell in 2..=3 {
                    for j in 0..ell {
                        let j = r(j, ell);
                        for b in removable_boxes(&lambda, j) {
                            let smaller = lambda.remove_box(b).unwrap();
                            assert!(addable_boxes(&smaller, j).contains(&b));
                        }
                        for b in addable_boxes(&lambda, j) {
                            let bigger = lambda.add_box(b).unwrap();
                            assert!(removable_boxes(&bigger, j).contains(&b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heart_examples() {
        let one = TypeJ::new([1], 2).unwrap();
        let zero = TypeJ::new([0], 2).unwrap();
        assert_eq!(j_heart(&p(&[3, 2, 1]), &TypeJ::empty(2)), p(&[3, 2, 1]));
        assert_eq!(j_heart(&p(&[2, 1]), &one), p(&[1]));
        assert_eq!(j_heart(&p(&[3, 1]), &zero), p(&[2, 1]));
    }

    #[test]
    fn j_class_examples() {
        let zero = TypeJ::new([0], 2).unwrap();
        assert!(same_j_class(&p(&[3, 1]), &p(&[3, 1]), &zero));
        assert!(same_j_class(&p(&[3, 1]), &p(&[2, 2]), &zero));
        assert!(!same_j_class(&p(&[4]), &p(&[1, 1, 1, 1]), &zero));
        assert_eq!(j_heart(&p(&[4]), &zero), p(&[4]));
        assert_eq!(j_heart(&p(&[1, 1, 1, 1]), &zero), p(&[1, 1, 1, 1]));
    }

    #[test]
    fn heart_is_idempotent_and_has_no_eligible_corners() {
        for n in 0..=9 {
            for lambda in enumerate_partitions(n).unwrap() {
                for ell in 2..=4 {
                    for types in all_types(ell) {
                        let heart = j_heart(&lambda, &types);
                        assert_eq!(j_heart(&heart, &types), heart);
                        assert!(heart.is_contained_in(&lambda));
                        for j in types.members() {
                            assert!(removable_boxes(&heart, r(j, ell)).is_empty());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heart_removal_order_is_confluent_small() {
        for n in 0..=7 {
            for lambda in enumerate_partitions(n).unwrap() {
                for ell in 2..=3 {
                    for types in all_types(ell) {
                        let mut memo = HashMap::new();
                        let terminals = heart_terminals(&lambda, &types, &mut memo);
                        assert_eq!(terminals.len(), 1, "{lambda} {types:?}");
                        assert_eq!(
                            terminals.into_iter().next().unwrap(),
                            j_heart(&lambda, &types)
                        );
                    }
                }
            }
        }
    }

    /// Partition-counting recurrence p(n, k) = p(n, k-1) + p(n-k, k).
    fn count_oracle(n: usize) -> usize {
        let mut table = vec![vec![0usize; n + 1]; n + 1];
        table[0].fill(1);
        for m in 1..=n {
            for k in 1..=n {
                table[m][k] = table[m][k - 1] + if m >= k { table[m - k][k] } else { 0 };
            }
        }
        table[n][n]
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0).unwrap(), vec![p(&[])]);
        assert_eq!(
            enumerate_partitions(4).unwrap(),
            vec![
                p(&[4]),
                p(&[3, 1]),
                p(&[2, 2]),
                p(&[2, 1, 1]),
                p(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(enumerate_partitions(10).unwrap().len(), 42);
        for n in 0..=20 {
            let all = enumerate_partitions(n).unwrap();
            assert_eq!(all.len(), count_oracle(n));
            assert!(
                all.windows(2).all(|w| w[0] < w[1]),
                "canonical order at {n}"
            );
            assert!(all.iter().all(|l| l.size() == n));
        }
    }

    #[test]
    fn enumeration_limit() {
        let err = enumerate_partitions_bounded(12, 10).unwrap_err();
        assert!(matches!(
            err,
            Error::EnumerationLimit {
                requested: 12,
                bound: 10,
                ..
            }
        ));
    }

    #[test]
    fn constructor_validates() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        let json = serde_json::to_string(&p(&[3, 1])).unwrap();
        assert_eq!(json, "[3,1]");
        assert_eq!(serde_json::to_string(&p(&[])).unwrap(), "[]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn conjugate_and_staircase() {
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
        assert_eq!(Partition::staircase(3), p(&[3, 2, 1]));
        assert_eq!(Partition::staircase(0), p(&[]));
    }
}
