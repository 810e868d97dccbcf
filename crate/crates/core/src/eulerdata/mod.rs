//! Euler characteristics of twisted symmetric powers of the cotangent bundle.
//!
//! Everything the secant-variety formulas need from `(X, L)` reduces to
//!
//! * `l(a) = χ(L^a)`,
//! * `s1(a, b) = χ(S^a Ω ⊗ L^b)`,
//! * `s2(a, b, c) = χ(S^a Ω ⊗ S^b Ω ⊗ L^c)`,
//! * the Hodge numbers `h^i(X, O_X)` and `Γ = Σ_{i ≥ 1} (-1)^i h^i(X, O_X)`.
//!
//! On products of projective spaces these are computed by reducing `S^j Ω`
//! to line bundles (the K-theoretic route) and can be cross-checked against
//! `∫ ch · td` (the cohomological route, [`EulerData::chi_hrr`]).

mod hrr;
mod kclass;
mod variety;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use hrr::{chern_character_line, chi_by_integration, todd_class};
pub use kclass::{sym_omega, KClass};
pub use variety::{validate_positivity, Gate, Positivity, SecantIndex, VarietySpec};

use crate::error::{Error, Result};
use crate::exactring::{GradedClass, RingSpec};
use crate::memo::Memo;
use crate::Rational;

/// `h^i(X, O_X)` for `i = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeVector {
    dims: Vec<u64>,
}

impl HodgeVector {
    pub fn new(dims: Vec<u64>) -> Result<Self> {
        if dims.first() != Some(&1) {
            return Err(Error::input(format!("h^0(O_X) must be 1 for connected X, got {dims:?}")));
        }
        Ok(Self { dims })
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    /// Dimension `n` of the variety.
    pub fn n(&self) -> usize {
        self.dims.len() - 1
    }

    /// `h^i`, zero outside `0..=n`.
    pub fn get(&self, i: usize) -> u64 {
        self.dims.get(i).copied().unwrap_or(0)
    }
}

/// `C(x, k)` as a polynomial in `x`, valid for every integer `x`.
fn binomial_poly(x: i64, k: u32) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..i64::from(k) {
        num *= x - i;
        den *= i + 1;
    }
    Rational::new(num, den)
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn nonnegative(name: &str, v: i64) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::input(format!("{name} must be a nonnegative integer, got {v}")))
}

/// Euler-characteristic oracle for one `(X, L)`, with write-once memo tables.
#[derive(Debug)]
pub struct EulerData {
    variety: VarietySpec,
    l_memo: Memo<i64, Rational>,
    s1_memo: Memo<(u32, i64), Rational>,
    s2_memo: Memo<(u32, u32, i64), Rational>,
    sym_memo: Memo<u32, Arc<KClass<Rational>>>,
    product_memo: Memo<(u32, u32), Arc<KClass<Rational>>>,
    todd: OnceLock<GradedClass<Rational>>,
}

impl EulerData {
    pub fn new(variety: VarietySpec) -> Self {
        Self {
            variety,
            l_memo: Memo::new(),
            s1_memo: Memo::new(),
            s2_memo: Memo::new(),
            sym_memo: Memo::new(),
            product_memo: Memo::new(),
            todd: OnceLock::new(),
        }
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn dim(&self) -> u32 {
        self.variety.dim()
    }

    fn ring(&self) -> Result<(&RingSpec, &[u32])> {
        match &self.variety {
            VarietySpec::ProductProj { spec, degrees } => Ok((spec, degrees)),
            VarietySpec::Curve { .. } => Err(Error::input(
                "line-bundle expansions are only available on products of projective spaces",
            )),
        }
    }

    /// `χ(O(e))`. For a curve `e` is a single degree `D` and the value is
    /// `D + 1 - g`; on `∏ P^{n_i}` it is `∏ C(e_i + n_i, n_i)`.
    pub fn chi_line(&self, e: &[i64]) -> Result<Rational> {
        match &self.variety {
            VarietySpec::Curve { genus, .. } => match e {
                [deg] => Ok(int(deg + 1 - i64::from(*genus))),
                _ => Err(Error::input(format!("a curve takes one degree, got {e:?}"))),
            },
            VarietySpec::ProductProj { spec, .. } => {
                if e.len() != spec.factors() {
                    return Err(Error::input(format!(
                        "multidegree {e:?} has wrong arity for {spec}"
                    )));
                }
                Ok(e.iter()
                    .zip(spec.dims())
                    .map(|(&ei, &n)| binomial_poly(ei + i64::from(n), n))
                    .fold(Rational::one(), |acc, x| acc * x))
            }
        }
    }

    fn multidegree(&self, a: i64) -> Result<Vec<i64>> {
        let (_, degrees) = self.ring()?;
        Ok(degrees.iter().map(|&d| a * i64::from(d)).collect())
    }

    /// `l(a) = χ(L^a)`.
    pub fn l(&self, a: i64) -> Rational {
        self.l_memo
            .get_or_try_insert(a, || -> Result<Rational> {
                match &self.variety {
                    VarietySpec::Curve { genus, degree } => {
                        Ok(int(a * i64::from(*degree) + 1 - i64::from(*genus)))
                    }
                    VarietySpec::ProductProj { .. } => self.chi_line(&self.multidegree(a)?),
                }
            })
            .expect("l is total")
    }

    /// `[S^j Ω_X]` as a combination of line bundles.
    pub fn sym_omega_class(&self, j: i64) -> Result<Arc<KClass<Rational>>> {
        let j = nonnegative("symmetric power", j)?;
        let (spec, _) = self.ring()?;
        self.sym_memo
            .get_or_try_insert(j, || Ok(Arc::new(sym_omega(spec, j))))
    }

    fn sym_product_class(&self, a: u32, b: u32) -> Result<Arc<KClass<Rational>>> {
        let key = (a.min(b), a.max(b));
        self.product_memo.get_or_try_insert(key, || {
            let x = self.sym_omega_class(i64::from(key.0))?;
            let y = self.sym_omega_class(i64::from(key.1))?;
            Ok(Arc::new(x.tensor(&y)?))
        })
    }

    /// K-theoretic `χ(K ⊗ L^twist)`: sum of `chi_line` over the terms of `K`.
    pub fn chi_kclass(&self, k: &KClass<Rational>, twist: i64) -> Result<Rational> {
        let (spec, _) = self.ring()?;
        if k.spec() != spec {
            return Err(Error::SpecMismatch {
                left: k.spec().dims().to_vec(),
                right: spec.dims().to_vec(),
            });
        }
        let shift = self.multidegree(twist)?;
        let mut total = Rational::zero();
        for (e, c) in k.terms() {
            let e: Vec<i64> = e.iter().zip(&shift).map(|(x, y)| x + y).collect();
            total += c * self.chi_line(&e)?;
        }
        Ok(total)
    }

    /// Cohomological `χ(K ⊗ L^twist) = ∫ ch(K ⊗ L^twist) td(X)`.
    pub fn chi_hrr(&self, k: &KClass<Rational>, twist: i64) -> Result<Rational> {
        let (spec, _) = self.ring()?;
        if k.spec() != spec {
            return Err(Error::SpecMismatch {
                left: k.spec().dims().to_vec(),
                right: spec.dims().to_vec(),
            });
        }
        let todd = match self.todd.get() {
            Some(td) => td,
            None => {
                let td = todd_class(spec)?;
                self.todd.get_or_init(|| td)
            }
        };
        chi_by_integration(k, &self.multidegree(twist)?, todd)
    }

    /// `s1(a, b) = χ(S^a Ω ⊗ L^b)`.
    pub fn s1(&self, a: i64, b: i64) -> Result<Rational> {
        let a = nonnegative("s1 symmetric power", a)?;
        self.s1_memo.get_or_try_insert((a, b), || match &self.variety {
            VarietySpec::Curve { genus, degree } => {
                let g = i64::from(*genus);
                Ok(int(i64::from(a) * (2 * g - 2) + b * i64::from(*degree) + 1 - g))
            }
            VarietySpec::ProductProj { .. } => {
                self.chi_kclass(&*self.sym_omega_class(i64::from(a))?, b)
            }
        })
    }

    /// `s2(a, b, c) = χ(S^a Ω ⊗ S^b Ω ⊗ L^c)`.
    pub fn s2(&self, a: i64, b: i64, c: i64) -> Result<Rational> {
        let a = nonnegative("s2 first symmetric power", a)?;
        let b = nonnegative("s2 second symmetric power", b)?;
        let key = (a.min(b), a.max(b), c);
        self.s2_memo.get_or_try_insert(key, || match &self.variety {
            VarietySpec::Curve { genus, degree } => {
                let g = i64::from(*genus);
                Ok(int(i64::from(a + b) * (2 * g - 2) + c * i64::from(*degree) + 1 - g))
            }
            VarietySpec::ProductProj { .. } => self.chi_kclass(&*self.sym_product_class(a, b)?, c),
        })
    }

    /// `l` through the cohomological route (products of projective spaces only).
    pub fn l_hrr(&self, a: i64) -> Result<Rational> {
        let (spec, _) = self.ring()?;
        self.chi_hrr(&KClass::trivial(spec), a)
    }

    pub fn s1_hrr(&self, a: i64, b: i64) -> Result<Rational> {
        self.chi_hrr(&*self.sym_omega_class(a)?, b)
    }

    pub fn s2_hrr(&self, a: i64, b: i64, c: i64) -> Result<Rational> {
        let a = nonnegative("s2 first symmetric power", a)?;
        let b = nonnegative("s2 second symmetric power", b)?;
        self.chi_hrr(&*self.sym_product_class(a, b)?, c)
    }

    pub fn hodge_vector(&self) -> HodgeVector {
        let dims = match &self.variety {
            VarietySpec::Curve { genus, .. } => vec![1, u64::from(*genus)],
            VarietySpec::ProductProj { spec, .. } => {
                let mut v = vec![0; spec.total_dim() as usize + 1];
                v[0] = 1;
                v
            }
        };
        HodgeVector { dims }
    }

    /// `Γ = Σ_{i=1}^{n} (-1)^i h^i(X, O_X) = χ(O_X) - 1`.
    pub fn gamma(&self) -> Rational {
        let h = self.hodge_vector();
        let mut total: i64 = 0;
        for (i, &hi) in h.dims().iter().enumerate().skip(1) {
            let hi = i64::try_from(hi).expect("Hodge number fits in i64");
            total += if i % 2 == 0 { hi } else { -hi };
        }
        int(total)
    }

    /// Number of cached `s2` values, for diagnostics.
    pub fn s2_cache_len(&self) -> usize {
        self.s2_memo.len()
    }
}
