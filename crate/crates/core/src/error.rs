use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("enumeration limit exceeded: {what} = {requested} > bound {bound}")]
    EnumerationLimit {
        what: &'static str,
        requested: usize,
        bound: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("cannot normalize a parameter point whose coordinates sum to zero")]
    NotNormalizable,

    #[error("core mismatch: partition has core {found}, charge expects core {expected}")]
    WrongCore {
        expected: Partition,
        found: Partition,
    },

    #[error("shape {shape} is not in P_{rank}({size})")]
    InvalidShape {
        shape: Partition,
        rank: usize,
        size: usize,
    },

    #[error("no path: {from} and {to} have different hearts")]
    NoPath { from: Partition, to: Partition },

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
