//! Virtual bundles on a product of projective spaces, written as finite
//! combinations of line-bundle classes `[O(e_1, ..., e_k)]`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactring::RingSpec;
use crate::scalar::ExactField;

#[derive(Clone, Debug, PartialEq)]
pub struct KClass<T> {
    spec: RingSpec,
    terms: BTreeMap<Vec<i64>, T>,
}

impl<T: ExactField> KClass<T> {
    pub fn zero(spec: &RingSpec) -> Self {
        Self {
            spec: spec.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The structure sheaf `[O]`.
    pub fn trivial(spec: &RingSpec) -> Self {
        let mut out = Self::zero(spec);
        out.insert(vec![0; spec.factors()], T::one());
        out
    }

    /// `c [O(e)]`.
    pub fn line(spec: &RingSpec, e: Vec<i64>, c: T) -> Result<Self> {
        if e.len() != spec.factors() {
            return Err(Error::input(format!(
                "multidegree {e:?} has wrong arity for {spec}"
            )));
        }
        let mut out = Self::zero(spec);
        out.insert(e, c);
        Ok(out)
    }

    fn insert(&mut self, e: Vec<i64>, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
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

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &T)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, e: &[i64]) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Virtual rank: the sum of the coefficients.
    pub fn rank(&self) -> T {
        self.terms.values().fold(T::zero(), |acc, c| acc + c.clone())
    }

    /// First Chern class as a multidegree: `sum_e c_e e`.
    pub fn first_chern(&self) -> Vec<T> {
        let mut out = vec![T::zero(); self.spec.factors()];
        for (e, c) in &self.terms {
            for (slot, ei) in out.iter_mut().zip(e) {
                *slot = slot.clone() + c.clone() * T::from_int(*ei);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(&self.spec);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Tensor product: multidegrees add.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_spec(other)?;
        let mut out = Self::zero(&self.spec);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert(e, ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    /// Tensor with `O(shift)`.
    pub fn twist(&self, shift: &[i64]) -> Result<Self> {
        if shift.len() != self.spec.factors() {
            return Err(Error::input(format!("twist {shift:?} has wrong arity for {}", self.spec)));
        }
        let mut out = Self::zero(&self.spec);
        for (e, c) in &self.terms {
            out.insert(e.iter().zip(shift).map(|(x, y)| x + y).collect(), c.clone());
        }
        Ok(out)
    }

    fn same_spec(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.spec.dims().to_vec(),
                right: other.spec.dims().to_vec(),
            })
        }
    }
}

impl<T: ExactField> fmt::Display for KClass<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e: Vec<String> = e.iter().map(i64::to_string).collect();
                format!("({c})[O({})]", e.join(","))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `C(top, k)` for `top ≥ 0`.
fn binomial<T: ExactField>(top: i64, k: i64) -> T {
    if k < 0 || top < k {
        return T::zero();
    }
    let mut acc = T::one();
    for i in 0..k {
        acc = acc * T::from_int(top - i) / T::from_int(i + 1);
    }
    acc
}

/// `[S^j Ω]` on a single `P^n`, from the Euler sequence read through `σ_t`:
/// `C(j+n, n) [O(-j)] - C(j+n-1, n) [O(-j+1)]`.
fn sym_omega_factor<T: ExactField>(n: u32, j: u32) -> Vec<(i64, T)> {
    if j == 0 {
        return vec![(0, T::one())];
    }
    let (n, j) = (i64::from(n), i64::from(j));
    vec![(-j, binomial(j + n, n)), (1 - j, -binomial::<T>(j + n - 1, n))]
}

/// Weak compositions of `total` into `parts` pieces, lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=total {
            prefix.push(first);
            go(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// `[S^j Ω_X]` for `X = ∏ P^{n_i}`, using `Ω_X = ⊕ pr_i^* Ω_i` and
/// `S^j(⊕ F_i) = ⊕_{j_1 + ... + j_k = j} ⊗ S^{j_i} F_i`.
pub fn sym_omega<T: ExactField>(spec: &RingSpec, j: u32) -> KClass<T> {
    let mut out = KClass::zero(spec);
    for comp in compositions(j, spec.factors()) {
        let mut partial: Vec<(Vec<i64>, T)> = vec![(Vec::with_capacity(spec.factors()), T::one())];
        for (&n, &ji) in spec.dims().iter().zip(&comp) {
            let factor = sym_omega_factor::<T>(n, ji);
            partial = partial
                .iter()
                .flat_map(|(e, c)| {
                    factor.iter().map(move |(fe, fc)| {
                        let mut e = e.clone();
                        e.push(*fe);
                        (e, c.clone() * fc.clone())
                    })
                })
                .collect();
        }
        for (e, c) in partial {
            out.insert(e, c);
        }
    }
    out
}
