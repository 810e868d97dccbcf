//! The truncated cohomology ring of a product of projective spaces.
//!
//! For `P^{n_1} x ... x P^{n_k}` the ring is `Q[h_1, ..., h_k] / (h_i^{n_i + 1})`.
//! Elements are stored sparsely, keyed by exponent vector, in lexicographic
//! order so that iteration (and anything serialized from it) is reproducible.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Dimensions `(n_1, ..., n_k)` of the projective-space factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct RingSpec {
    dims: Vec<u32>,
}

impl RingSpec {
    pub fn new(dims: Vec<u32>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::input("a product of projective spaces needs at least one factor"));
        }
        if dims.contains(&0) {
            return Err(Error::input(format!("factor dimensions must be positive, got {dims:?}")));
        }
        Ok(Self { dims })
    }

    /// Single factor `P^n`.
    pub fn projective(n: u32) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn dims(&self) -> &[u32] {
        &self.dims
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }

    pub fn total_dim(&self) -> u32 {
        self.dims.iter().sum()
    }

    fn fits(&self, exps: &[u32]) -> bool {
        exps.len() == self.dims.len() && exps.iter().zip(&self.dims).all(|(e, n)| e <= n)
    }

    fn ensure_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.dims.clone(),
                right: other.dims.clone(),
            })
        }
    }
}

impl TryFrom<Vec<u32>> for RingSpec {
    type Error = Error;

    fn try_from(dims: Vec<u32>) -> Result<Self> {
        RingSpec::new(dims)
    }
}

impl From<RingSpec> for Vec<u32> {
    fn from(spec: RingSpec) -> Self {
        spec.dims
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|n| format!("P^{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// An element of the truncated ring over the scalar field `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedClass<T> {
    spec: RingSpec,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: ExactField> GradedClass<T> {
    pub fn zero(spec: &RingSpec) -> Self {
        Self {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(spec: &RingSpec) -> Self {
        Self::constant(spec, T::one())
    }

    pub fn constant(spec: &RingSpec, c: T) -> Self {
        let mut out = Self::zero(spec);
        out.insert(vec![0; spec.factors()], c);
        out
    }

    /// `c * h^exps`. Exponents beyond a factor's dimension give zero.
    pub fn monomial(spec: &RingSpec, exps: Vec<u32>, c: T) -> Result<Self> {
        if exps.len() != spec.factors() {
            return Err(Error::input(format!(
                "exponent vector {exps:?} has wrong arity for {spec}"
            )));
        }
        let mut out = Self::zero(spec);
        if spec.fits(&exps) {
            out.insert(exps, c);
        }
        Ok(out)
    }

    /// The hyperplane class `h_i` of the `i`-th factor.
    pub fn generator(spec: &RingSpec, i: usize) -> Result<Self> {
        if i >= spec.factors() {
            return Err(Error::input(format!("generator index {i} out of range for {spec}")));
        }
        let mut exps = vec![0; spec.factors()];
        exps[i] = 1;
        Self::monomial(spec, exps, T::one())
    }

    /// `sum_i c_i h_i`.
    pub fn linear(spec: &RingSpec, coeffs: &[T]) -> Result<Self> {
        if coeffs.len() != spec.factors() {
            return Err(Error::input(format!(
                "{} linear coefficients given for {spec}",
                coeffs.len()
            )));
        }
        let mut out = Self::zero(spec);
        for (i, c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; spec.factors()];
            exps[i] = 1;
            out.insert(exps, c.clone());
        }
        Ok(out)
    }

    fn insert(&mut self, exps: Vec<u32>, c: T) {
        debug_assert!(self.spec.fits(&exps));
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> T {
        self.terms.get(exps).cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeff(&vec![0; self.spec.factors()])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.spec.ensure_same(&other.spec)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-T::one())
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(&self.spec);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Convolution product; monomials exceeding a factor dimension vanish.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.spec.ensure_same(&other.spec)?;
        let mut out = Self::zero(&self.spec);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if self.spec.fits(&exps) {
                    out.insert(exps, ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.spec);
        for _ in 0..k {
            out = out.mul(self).expect("same spec");
        }
        out
    }

    /// Degree map: the coefficient of `h_1^{n_1} ... h_k^{n_k}`.
    pub fn integrate(&self) -> T {
        self.coeff(self.spec.dims())
    }

    /// Truncated exponential `sum_j a^j / j!`. The argument must be nilpotent.
    pub fn exp_series(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::input(
                "exponential of a class with nonzero constant term does not truncate",
            ));
        }
        let mut out = Self::one(&self.spec);
        let mut power = Self::one(&self.spec);
        for j in 1..=self.spec.total_dim() {
            power = power.mul(self)?.scale(&T::recip_int(i64::from(j)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Multiplicative inverse of a class with invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::input("class with zero constant term is not a unit"));
        }
        let inv_c0 = T::one() / c0;
        // a = c0 (1 + x), x nilpotent, so a^{-1} = c0^{-1} sum_j (-x)^j.
        let neg_x = self
            .scale(&inv_c0)
            .sub(&Self::one(&self.spec))?
            .neg();
        let mut out = Self::one(&self.spec);
        let mut power = Self::one(&self.spec);
        for _ in 1..=self.spec.total_dim() {
            power = power.mul(&neg_x)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out.scale(&inv_c0))
    }
}

impl<T: ExactField> fmt::Display for GradedClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exps, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, e) in exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "h{}", i + 1)?,
                    _ => write!(f, "h{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}
