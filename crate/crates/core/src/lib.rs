//! Calogero-Moser block partitions for the wreath products `G(l,1,n)` and
//! rank-`r` domino cells in type `B_n`.
//!
//! The block side maps a parameter point to its fundamental-alcove data
//! `(s, w, J)` and groups `l`-multipartitions by the `J`-heart of
//! `tau_s(w . mp)`. The cell side (`l = 2`) builds the graph on `P_r(n)`
//! whose edges are shape changes obtained by moving domino tableaux through
//! rim-ribbon cycles. [`verify`] compares the two.

pub mod alcoves;
pub mod cm_blocks;
pub mod cores_quotients;
pub mod domino_cells;
pub mod error;
pub mod partitions;
pub mod report;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};

/// Exact rationals with machine-word numerators.
pub type Rational = num_rational::Ratio<i64>;
/// Exact rationals with arbitrary precision.
pub type BigRational = num_rational::BigRational;

pub type Theta = alcoves::ThetaPoint<Rational>;
pub type Reduction = alcoves::ReductionResult<Rational>;
pub type Blocks = cm_blocks::BlockPartition;

pub use alcoves::{AffineElement, Permutation, ThetaPoint};
pub use cores_quotients::{Charge, Multipartition};
pub use partitions::{Partition, ResidueClass, TypeJ};
