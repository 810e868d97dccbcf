//! Exact Hilbert polynomials of the first and second secant varieties of a
//! sufficiently positive embedding, and the cohomology tables of symmetric
//! powers of tautological bundles on Hilbert schemes of two and three points.
//!
//! The algebraic layer ([`exactring`], [`poly`], [`KClass`]) is generic over
//! any [`ExactField`]; the geometric layer works over [`Rational`].

pub mod error;
pub mod eulerdata;
pub mod exactring;
mod memo;
pub mod poly;
pub mod scalar;
pub mod secantpoly;
pub mod tautcoh;

pub use error::{Error, Result};
pub use eulerdata::{
    validate_positivity, EulerData, Gate, HodgeVector, KClass, Positivity, SecantIndex,
    VarietySpec,
};
pub use exactring::{GradedClass, RingSpec};
pub use poly::{lagrange_interpolate, Polynomial};
pub use scalar::ExactField;
pub use secantpoly::{HilbertPolynomial, SecantEngine, SecantReport};
pub use tautcoh::{euler_check, hodge_ox2, table_k2, table_k3, CohomologyTable, Points, TableRow};

/// Arbitrary-precision rationals; the scalar used by every geometric computation.
pub type Rational = num_rational::BigRational;
/// Machine-word rationals, adequate for small ring computations.
pub type Rational64 = num_rational::Rational64;

pub type RationalClass = GradedClass<Rational>;
pub type RationalKClass = KClass<Rational>;
pub type RationalPolynomial = Polynomial<Rational>;
pub type Class64 = GradedClass<Rational64>;
pub type Polynomial64 = Polynomial<Rational64>;
