//! Block partitions of `Irr G(l,1,n) = P(l,n)`.
//!
//! For a parameter point with fundamental-alcove data `(s, w, J)`, two
//! multipartitions share a block exactly when `tau_s(w . mp)` have the same
//! `J`-heart. Blocks are labelled by that heart.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::alcoves::{
    adjacent_alcove_reductions, normalize_to_theta1, reduce_to_fundamental, theta_from_c_type_b,
    AffineElement, Permutation, ReductionResult, ThetaPoint,
};
use crate::cores_quotients::{enumerate_multipartitions, tau, Multipartition};
use crate::error::{Error, Result};
use crate::partitions::{j_heart, Partition, TypeJ};
use crate::scalar::Scalar;

/// `(w . mp)_i = mp_{w^{-1}(i)}`.
pub fn permute_components(w: &Permutation, mp: &Multipartition) -> Multipartition {
    assert_eq!(
        w.len(),
        mp.level(),
        "permutation and multipartition levels differ"
    );
    let mut components = vec![Partition::empty(); mp.level()];
    for (k, part) in mp.components().iter().enumerate() {
        components[w.apply(k)] = part.clone();
    }
    Multipartition::new(components).expect("level is positive")
}

/// `tau_s(w . mp)` for the pair `(s, w)`.
pub fn transport(element: &AffineElement, mp: &Multipartition) -> Result<Partition> {
    tau(
        element.translation(),
        &permute_components(element.permutation(), mp),
    )
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Block {
    pub heart: Partition,
    pub members: Vec<Multipartition>,
}

/// A set partition of `P(l,n)` into heart-labelled blocks.
///
/// Members of a block follow the canonical multipartition order; blocks are
/// ordered by their first member.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockPartition {
    pub ell: usize,
    pub n: usize,
    pub blocks: Vec<Block>,
}

impl BlockPartition {
    /// The underlying set partition, without labels.
    pub fn set_partition(&self) -> BTreeSet<BTreeSet<Multipartition>> {
        self.blocks
            .iter()
            .map(|b| b.members.iter().cloned().collect())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.iter().all(|b| b.members.len() == 1)
    }

    pub fn block_of(&self, mp: &Multipartition) -> Option<&Block> {
        self.blocks.iter().find(|b| b.members.contains(mp))
    }
}

/// The point, its size, and the chosen reduction.
#[derive(Clone, Debug)]
pub struct BlockContext<T> {
    pub ell: usize,
    pub n: usize,
    pub theta: ThetaPoint<T>,
    pub reduction: ReductionResult<T>,
}

impl<T: Scalar> BlockContext<T> {
    pub fn new(n: usize, theta: ThetaPoint<T>) -> Result<Self> {
        let reduction = reduce_to_fundamental(&theta)?;
        Ok(Self {
            ell: theta.ell(),
            n,
            theta,
            reduction,
        })
    }

    pub fn partition(&self) -> Result<BlockPartition> {
        partition_from_data(
            self.ell,
            self.n,
            &self.reduction.element,
            &self.reduction.type_j,
        )
    }
}

/// Groups `P(l,n)` by the `J`-heart of `tau_s(w . mp)`.
pub fn partition_from_data(
    ell: usize,
    n: usize,
    element: &AffineElement,
    types: &TypeJ,
) -> Result<BlockPartition> {
    if element.ell() != ell || types.modulus() != ell {
        return Err(Error::InvalidParameter(format!(
            "group element and type must have level {ell}"
        )));
    }
    let members = enumerate_multipartitions(ell, n)?;
    let hearts: Vec<Partition> = members
        .par_iter()
        .map(|mp| transport(element, mp).map(|lambda| j_heart(&lambda, types)))
        .collect::<Result<_>>()?;
    let mut index: HashMap<Partition, usize> = HashMap::new();
    let mut blocks: Vec<Block> = Vec::new();
    for (mp, heart) in members.into_iter().zip(hearts) {
        let slot = *index.entry(heart.clone()).or_insert_with(|| {
            blocks.push(Block {
                heart,
                members: Vec::new(),
            });
            blocks.len() - 1
        });
        blocks[slot].members.push(mp);
    }
    Ok(BlockPartition { ell, n, blocks })
}

/// The CM partition of `P(l,n)` for a point of `Theta_1`.
pub fn cm_partition<T: Scalar>(
    ell: usize,
    n: usize,
    theta: &ThetaPoint<T>,
) -> Result<BlockPartition> {
    if theta.ell() != ell {
        return Err(Error::InvalidParameter(format!(
            "point has {} coordinates, expected {ell}",
            theta.ell()
        )));
    }
    BlockContext::new(n, theta.clone())?.partition()
}

/// One partition per alcove adjacent to `theta`; all should coincide.
pub fn cm_partitions_for_all_adjacent<T: Scalar>(
    n: usize,
    theta: &ThetaPoint<T>,
) -> Result<Vec<(ReductionResult<T>, BlockPartition)>> {
    adjacent_alcove_reductions(theta)?
        .into_iter()
        .map(|red| {
            let bp = partition_from_data(theta.ell(), n, &red.element, &red.type_j)?;
            Ok((red, bp))
        })
        .collect()
}

/// Type B entry point: signs of `c_s`, `c_t` are dropped, the point
/// `(-c_s + c_t, -c_t)` is rescaled onto `Theta_1` and reduced.
pub fn cm_partition_from_c_type_b<T: Scalar>(
    c_s: T,
    c_t: T,
    n: usize,
) -> Result<(BlockContext<T>, BlockPartition)> {
    if c_s.is_zero() || c_t.is_zero() {
        return Err(Error::InvalidParameter(
            "c_s and c_t must be non-zero".into(),
        ));
    }
    let theta = normalize_to_theta1(&theta_from_c_type_b(c_s.abs(), c_t.abs()))?;
    let context = BlockContext::new(n, theta)?;
    let partition = context.partition()?;
    Ok((context, partition))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BlockStatistics {
    pub blocks: usize,
    pub total: usize,
    /// Block sizes, largest first.
    pub sizes: Vec<usize>,
    /// size -> number of blocks of that size
    pub size_counts: BTreeMap<usize, usize>,
}

pub fn block_statistics(bp: &BlockPartition) -> BlockStatistics {
    let mut sizes: Vec<usize> = bp.blocks.iter().map(|b| b.members.len()).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let mut size_counts = BTreeMap::new();
    for &s in &sizes {
        *size_counts.entry(s).or_insert(0) += 1;
    }
    BlockStatistics {
        blocks: sizes.len(),
        total: sizes.iter().sum(),
        sizes,
        size_counts,
    }
}
