//! Scalar fields the algebraic layer is generic over.
//!
//! Only exact fields are admitted: `Ratio<i64>`, `Ratio<i128>` and
//! `BigRational`. Floating point types deliberately do not implement
//! [`ExactField`].

use std::fmt;
use std::ops::Neg;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// An exact field of characteristic zero.
pub trait ExactField:
    Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + FromPrimitive + Send + Sync
{
    /// Embeds a machine integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer embeds into every exact field")
    }

    /// `1/k!` style reciprocal of a nonzero machine integer.
    fn recip_int(v: i64) -> Self {
        assert!(v != 0, "reciprocal of zero");
        Self::one() / Self::from_int(v)
    }
}

impl<T> ExactField for Ratio<T>
where
    T: Clone + Integer + Signed + fmt::Debug + fmt::Display + Send + Sync,
    Ratio<T>: FromPrimitive,
{
}
