//! Scalar abstraction for parameter-space arithmetic.
//!
//! The alcove machinery only needs ring operations, sign tests and an
//! ordering, so it is written against [`Scalar`]. Exact computations use
//! [`Rational`](crate::Rational) (or [`BigRational`](crate::BigRational) when
//! numerators may grow); `f64` is accepted for exploratory use only.

use std::fmt::Debug;

use num_traits::{Num, Signed};

use crate::error::{Error, Result};
use crate::Rational;

pub trait Scalar: Num + Signed + PartialOrd + Clone + Debug {
    fn from_i64(value: i64) -> Self;
}

impl<T> Scalar for T
where
    T: Num + Signed + PartialOrd + Clone + Debug + num_traits::FromPrimitive,
{
    fn from_i64(value: i64) -> Self {
        T::from_i64(value).expect("integer representable in scalar type")
    }
}

/// Parses `"p/q"` or `"p"`. Decimal and exponent notation are rejected so
/// that every input stays exact.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed.contains(['.', 'e', 'E']) {
        return Err(Error::InvalidParameter(format!(
            "expected a rational of the form p/q or p, got {text:?}"
        )));
    }
    trimmed
        .parse::<Rational>()
        .map_err(|e| Error::InvalidParameter(format!("cannot parse rational {text:?}: {e}")))
}

/// Parses a comma-separated list of rationals, e.g. `"1/3,1/3,1/3"`.
pub fn parse_rational_list(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}
