//! Cores, quotients and the bijection `(s, mp) -> tau_s(mp)`.
//!
//! Conventions (frozen; golden tests depend on them):
//! - the beta-numbers of `lambda` with `N` beads are `lambda_i + N - i`,
//!   `i = 1..=N`, with `N` a multiple of `l`;
//! - runner `k` holds the beta-numbers congruent to `k` mod `l`, and the
//!   level of position `x` is `x div l`;
//! - component `k` of a multipartition lives on runner `k`, and the charge
//!   `s_k` is the bead excess of runner `k` over `N / l`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate_partitions_bounded, Partition, DEFAULT_MAX_PARTITION_SIZE};

/// A sum-zero integer vector indexing the core-quotient bijection.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct Charge {
    entries: Vec<i64>,
}

impl Charge {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter(
                "charge must have length >= 1".into(),
            ));
        }
        if entries.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidParameter(format!(
                "charge {entries:?} does not sum to zero"
            )));
        }
        Ok(Self { entries })
    }

    pub fn zero(ell: usize) -> Self {
        Self {
            entries: vec![0; ell],
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn level(&self) -> usize {
        self.entries.len()
    }

    fn max_abs(&self) -> usize {
        self.entries
            .iter()
            .map(|e| e.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }
}

impl TryFrom<Vec<i64>> for Charge {
    type Error = Error;

    fn try_from(entries: Vec<i64>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<Charge> for Vec<i64> {
    fn from(c: Charge) -> Self {
        c.entries
    }
}

impl fmt::Display for Charge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

/// An `l`-tuple of partitions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multipartition {
    components: Vec<Partition>,
}

impl Multipartition {
    pub fn new(components: Vec<Partition>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter(
                "a multipartition needs at least one component".into(),
            ));
        }
        Ok(Self { components })
    }

    pub fn empty(ell: usize) -> Self {
        Self {
            components: vec![Partition::empty(); ell],
        }
    }

    pub fn components(&self) -> &[Partition] {
        &self.components
    }

    pub fn level(&self) -> usize {
        self.components.len()
    }

    pub fn size(&self) -> usize {
        self.components.iter().map(Partition::size).sum()
    }
}

impl fmt::Display for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", body.join(", "))
    }
}

impl fmt::Debug for Multipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite bead window on an `l`-runner abacus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Abacus {
    ell: usize,
    /// Beads per runner in the vacuum configuration, i.e. `N / l`.
    depth: usize,
    /// Occupied levels on each runner, strictly decreasing.
    runners: Vec<Vec<usize>>,
}

impl Abacus {
    /// Abacus of `lambda` using `depth * l` beads. Needs
    /// `depth * l >= lambda.len()`.
    pub fn from_partition(lambda: &Partition, ell: usize, depth: usize) -> Result<Self> {
        let beads = depth * ell;
        if beads < lambda.len() || ell == 0 {
            return Err(Error::Internal(format!(
                "abacus window of {beads} beads too small for {lambda}"
            )));
        }
        let mut runners = vec![Vec::new(); ell];
        for i in 1..=beads {
            let x = lambda.row_len(i) + beads - i;
            runners[x % ell].push(x / ell);
        }
        Ok(Self {
            ell,
            depth,
            runners,
        })
    }

    /// Smallest comfortable window for `lambda`.
    pub fn for_partition(lambda: &Partition, ell: usize) -> Result<Self> {
        Self::from_partition(lambda, ell, lambda.len().div_ceil(ell.max(1)) + 1)
    }

    /// Places `mp[k]` on runner `k` with charge `s[k]`.
    pub fn from_quotient(s: &Charge, mp: &Multipartition) -> Result<Self> {
        let ell = s.level();
        if mp.level() != ell {
            return Err(Error::InvalidParameter(format!(
                "multipartition has level {} but charge has length {ell}",
                mp.level()
            )));
        }
        let longest = mp
            .components()
            .iter()
            .map(Partition::len)
            .max()
            .unwrap_or(0);
        let depth = longest + s.max_abs() + 1;
        let runners = s
            .entries()
            .iter()
            .zip(mp.components())
            .map(|(&charge, part)| {
                let count = (depth as i64 + charge) as usize;
                (1..=count).map(|i| part.row_len(i) + count - i).collect()
            })
            .collect();
        Ok(Self {
            ell,
            depth,
            runners,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn charges(&self) -> Charge {
        Charge {
            entries: self
                .runners
                .iter()
                .map(|r| r.len() as i64 - self.depth as i64)
                .collect(),
        }
    }

    /// The partition whose beta-numbers are the occupied positions.
    pub fn to_partition(&self) -> Partition {
        let mut positions: Vec<usize> = self
            .runners
            .iter()
            .enumerate()
            .flat_map(|(k, levels)| levels.iter().map(move |&y| y * self.ell + k))
            .collect();
        positions.sort_unstable_by(|a, b| b.cmp(a));
        let beads = positions.len();
        let parts = positions
            .iter()
            .enumerate()
            .map(|(i, &x)| x + i + 1 - beads)
            .filter(|&part| part > 0)
            .collect();
        Partition::from_parts_unchecked(parts)
    }

    /// The partition recorded on runner `k` relative to its own bead count.
    pub fn runner_partition(&self, k: usize) -> Partition {
        let levels = &self.runners[k];
        let count = levels.len();
        let parts = levels
            .iter()
            .enumerate()
            .map(|(i, &y)| y + i + 1 - count)
            .filter(|&part| part > 0)
            .collect();
        Partition::from_parts_unchecked(parts)
    }

    pub fn quotient(&self) -> Multipartition {
        Multipartition {
            components: (0..self.ell).map(|k| self.runner_partition(k)).collect(),
        }
    }

    /// Slides every bead to the bottom of its runner.
    pub fn to_core(&self) -> Self {
        Self {
            ell: self.ell,
            depth: self.depth,
            runners: self
                .runners
                .iter()
                .map(|r| (0..r.len()).rev().collect())
                .collect(),
        }
    }
}

/// The `l`-core of `lambda`.
pub fn ell_core(lambda: &Partition, ell: usize) -> Partition {
    assert!(ell >= 1, "l must be positive");
    Abacus::for_partition(lambda, ell)
        .expect("window sized from the partition")
        .to_core()
        .to_partition()
}

/// The charge of `lambda`'s abacus; identifies its `l`-core.
pub fn charge_of(lambda: &Partition, ell: usize) -> Charge {
    Abacus::for_partition(lambda, ell)
        .expect("window sized from the partition")
        .charges()
}

/// The `l`-core with runner charges `s`.
pub fn core_of_charge(s: &Charge) -> Partition {
    tau(s, &Multipartition::empty(s.level())).expect("levels agree")
}

/// `tau_s(mp)`: the partition with core `core_of_charge(s)` and quotient `mp`.
pub fn tau(s: &Charge, mp: &Multipartition) -> Result<Partition> {
    Ok(Abacus::from_quotient(s, mp)?.to_partition())
}

/// Inverse of [`tau`] for a fixed charge.
pub fn tau_inverse(s: &Charge, lambda: &Partition) -> Result<Multipartition> {
    let abacus = Abacus::for_partition(lambda, s.level())?;
    let found = abacus.charges();
    if &found != s {
        return Err(Error::WrongCore {
            expected: core_of_charge(s),
            found: abacus.to_core().to_partition(),
        });
    }
    Ok(abacus.quotient())
}

/// All `l`-multipartitions of `n`.
///
/// Canonical order: first by the size vector `(|mp_0|, ..., |mp_{l-1}|)` in
/// decreasing lexicographic order, then componentwise by the canonical
/// partition order. `((n), (), ..., ())` comes first.
pub fn enumerate_multipartitions(ell: usize, n: usize) -> Result<Vec<Multipartition>> {
    if ell == 0 {
        return Err(Error::InvalidParameter("l must be positive".into()));
    }
    let bound = DEFAULT_MAX_PARTITION_SIZE;
    let tables: Vec<Vec<Partition>> = (0..=n)
        .map(|m| enumerate_partitions_bounded(m, bound))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for sizes in compositions(n, ell) {
        let mut stack: Vec<Vec<Partition>> = vec![Vec::new()];
        for &m in &sizes {
            stack = stack
                .into_iter()
                .flat_map(|prefix| {
                    tables[m].iter().map(move |part| {
                        let mut next = prefix.clone();
                        next.push(part.clone());
                        next
                    })
                })
                .collect();
        }
        out.extend(
            stack
                .into_iter()
                .map(|components| Multipartition { components }),
        );
    }
    Ok(out)
}

/// Weak compositions of `n` into `parts` parts, decreasing lexicographic.
fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .rev()
        .flat_map(|first| {
            compositions(n - first, parts - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// Size of the partitions in `P_r(n)`: `r(r+1)/2 + 2n`.
pub fn p_r_size(n: usize, r: usize) -> usize {
    r * (r + 1) / 2 + 2 * n
}

/// `P_r(n)`: partitions of `r(r+1)/2 + 2n` with 2-core `(r, ..., 1)`, in
/// canonical order.
pub fn enumerate_p_r(n: usize, r: usize) -> Result<Vec<Partition>> {
    enumerate_p_r_bounded(n, r, DEFAULT_MAX_PARTITION_SIZE)
}

pub fn enumerate_p_r_bounded(n: usize, r: usize, bound: usize) -> Result<Vec<Partition>> {
    let core = Partition::staircase(r);
    Ok(enumerate_partitions_bounded(p_r_size(n, r), bound)?
        .into_iter()
        .filter(|lambda| ell_core(lambda, 2) == core)
        .collect())
}

/// The charge whose 2-core is the staircase `(r, ..., 1)`: `(-r/2, r/2)` for
/// even `r`, `((r+1)/2, -(r+1)/2)` for odd `r`.
pub fn staircase_charge(r: usize) -> Charge {
    let r = r as i64;
    let a = if r % 2 == 0 { -r / 2 } else { (r + 1) / 2 };
    Charge {
        entries: vec![a, -a],
    }
}
