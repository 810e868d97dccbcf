//! Hilbert polynomials of the secant varieties `Σ₁` and `Σ₂`.
//!
//! `P_{Σ₁}` is known at the odd nodes `ℓ = 2m + 1` and `P_{Σ₂}` at the nodes
//! `ℓ = 3m + 2` through closed sums of `l`, `s1`, `s2` values; the full
//! polynomials are recovered by Lagrange interpolation on `2n + 2` resp.
//! `3n + 3` nodes.
//!
//! `P_{Σ₂}(3m + 2)` has two evaluation routes. [`SecantEngine::sigma2_node`]
//! evaluates the fully expanded multi-sum; [`SecantEngine::sigma2_node_alt`]
//! assembles the same value from the intermediate Euler characteristics
//! [`SecantEngine::chi_sym_e2_twist`] and [`SecantEngine::chi_sym_n_twist`].

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::eulerdata::{
    sym_omega, validate_positivity, EulerData, KClass, Positivity, SecantIndex, VarietySpec,
};
use crate::poly::{lagrange_interpolate, Polynomial};
use crate::Rational;

/// Hilbert polynomial of a secant variety together with its expected dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertPolynomial {
    poly: Polynomial<Rational>,
    expected_dim: u32,
}

impl HilbertPolynomial {
    pub fn new(poly: Polynomial<Rational>, expected_dim: u32) -> Self {
        Self { poly, expected_dim }
    }

    pub fn polynomial(&self) -> &Polynomial<Rational> {
        &self.poly
    }

    pub fn expected_dim(&self) -> u32 {
        self.expected_dim
    }

    /// Ascending coefficients, padded with zeros to `expected_dim + 1` entries.
    pub fn coefficients(&self) -> Vec<Rational> {
        let len = (self.expected_dim as usize + 1).max(self.poly.coeffs().len());
        (0..len).map(|k| self.poly.coeff(k)).collect()
    }

    pub fn eval(&self, ell: i64) -> Rational {
        self.poly.eval_int(ell)
    }

    /// Actual degree of the polynomial, i.e. the dimension of the variety.
    pub fn dimension(&self) -> u32 {
        self.poly.degree().unwrap_or(0) as u32
    }

    /// `leading coefficient × dim!`.
    pub fn degree(&self) -> Rational {
        let mut fact = Rational::one();
        for k in 2..=i64::from(self.dimension()) {
            fact *= Rational::from_integer(k.into());
        }
        self.poly.leading() * fact
    }

    pub fn render(&self) -> String {
        self.poly.render("ℓ")
    }
}

/// Everything reported for one `(X, L)` and one secant index.
#[derive(Clone, Debug, PartialEq)]
pub struct SecantReport {
    pub variety: VarietySpec,
    pub secant: SecantIndex,
    pub polynomial: HilbertPolynomial,
    pub dimension: u32,
    pub degree: Rational,
    pub node_values: Vec<(i64, Rational)>,
    pub positivity: Positivity,
    /// `Σ` is the whole ambient `P^r`, `r = h⁰(L) - 1`.
    pub fills_ambient: bool,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Computes and caches everything about the secant varieties of one `(X, L)`.
#[derive(Debug)]
pub struct SecantEngine {
    data: EulerData,
    sigma1: OnceLock<HilbertPolynomial>,
    sigma2: OnceLock<HilbertPolynomial>,
}

impl SecantEngine {
    pub fn new(variety: VarietySpec) -> Self {
        Self {
            data: EulerData::new(variety),
            sigma1: OnceLock::new(),
            sigma2: OnceLock::new(),
        }
    }

    pub fn data(&self) -> &EulerData {
        &self.data
    }

    pub fn variety(&self) -> &VarietySpec {
        self.data.variety()
    }

    fn n(&self) -> i64 {
        i64::from(self.data.dim())
    }

    /// `l(a)` for an argument produced by one of the summation ranges; a
    /// negative value means a bound was transcribed wrongly.
    fn l(&self, a: i64) -> Result<Rational> {
        if a < 0 {
            return Err(Error::consistency(format!("summation produced l({a})")));
        }
        Ok(self.data.l(a))
    }

    fn s1(&self, a: i64, b: i64) -> Result<Rational> {
        if a < 0 || b < 0 {
            return Err(Error::consistency(format!("summation produced s1({a}, {b})")));
        }
        self.data.s1(a, b)
    }

    fn s2(&self, a: i64, b: i64, c: i64) -> Result<Rational> {
        if a < 0 || b < 0 || c < 0 {
            return Err(Error::consistency(format!("summation produced s2({a}, {b}, {c})")));
        }
        self.data.s2(a, b, c)
    }

    /// `P_{Σ₁}(2m+1) = l(2m+1) + Σ_{i=1}^{m} ( l(2m+1-i) l(i) - Σ_{j=0}^{2i-1} s1(j, 2m+1) )`.
    pub fn sigma1_node(&self, m: i64) -> Result<Rational> {
        if m < 0 {
            return Err(Error::input(format!("node index must be nonnegative, got {m}")));
        }
        let ell = 2 * m + 1;
        let mut total = self.l(ell)?;
        for i in 1..=m {
            total += self.l(ell - i)? * self.l(i)?;
            for j in 0..2 * i {
                total -= self.s1(j, ell)?;
            }
        }
        Ok(total)
    }

    /// `(2m+1, P_{Σ₁}(2m+1))` for `m = 0..=2n+1`.
    pub fn sigma1_nodes(&self) -> Result<Vec<(i64, Rational)>> {
        (0..=2 * self.n() + 1)
            .into_par_iter()
            .map(|m| Ok((2 * m + 1, self.sigma1_node(m)?)))
            .collect()
    }

    pub fn sigma1_polynomial(&self) -> Result<&HilbertPolynomial> {
        if let Some(p) = self.sigma1.get() {
            return Ok(p);
        }
        let poly = lagrange_interpolate(&self.sigma1_nodes()?)?;
        let expected = SecantIndex::First.expected_dim(self.data.dim());
        Ok(self.sigma1.get_or_init(|| HilbertPolynomial::new(poly, expected)))
    }

    fn p1(&self, ell: i64) -> Result<Rational> {
        Ok(self.sigma1_polynomial()?.eval(ell))
    }

    fn chi_twisted(&self, f: Option<&KClass<Rational>>, twist: i64) -> Result<Rational> {
        match f {
            None => self.l(twist),
            Some(k) => self.data.chi_kclass(k, twist),
        }
    }

    /// Euler characteristic of `(τ*(L^a ⊗ F) ⊗ res*(L^b ⊗ G))(-cF₁)` on the
    /// blow-up of `X × X` along the diagonal:
    /// `χ(L^a⊗F) χ(L^b⊗G) - Σ_{i=0}^{c-1} χ(S^iΩ ⊗ F ⊗ G ⊗ L^{a+b})`.
    ///
    /// `None` stands for the trivial bundle. Nontrivial `F`, `G` need a
    /// product of projective spaces.
    pub fn chi_blowup_product(
        &self,
        f: Option<&KClass<Rational>>,
        g: Option<&KClass<Rational>>,
        a: i64,
        b: i64,
        c: i64,
    ) -> Result<Rational> {
        if a < 0 || b < 0 || c < 0 {
            return Err(Error::input(format!(
                "blow-up twists must be nonnegative, got ({a}, {b}, {c})"
            )));
        }
        let mut total = self.chi_twisted(f, a)? * self.chi_twisted(g, b)?;
        for i in 0..c {
            total -= match (f, g) {
                (None, None) => self.s1(i, a + b)?,
                _ => {
                    let spec = match self.variety() {
                        VarietySpec::ProductProj { spec, .. } => spec,
                        VarietySpec::Curve { .. } => {
                            return Err(Error::input("bundle arguments need a product of projective spaces"))
                        }
                    };
                    let mut k = sym_omega::<Rational>(spec, i as u32);
                    for extra in [f, g].into_iter().flatten() {
                        k = k.tensor(extra)?;
                    }
                    self.data.chi_kclass(&k, a + b)?
                }
            };
        }
        Ok(total)
    }

    /// `χ(S^a E_{2,L} ⊗ A_{2,L}^b)` on `X^[2]`:
    /// `P_{Σ₁}(a+2b) + Γ l(a+2b) - Σ_{i=1}^{b} ( l(b-i) l(a+b+i) - Σ_{j=0}^{2(b-i)-1} s1(j, a+2b) )`.
    pub fn chi_sym_e2_twist(&self, a: i64, b: i64) -> Result<Rational> {
        if a < 0 || b < 0 {
            return Err(Error::input(format!("chi_sym_e2_twist needs a, b ≥ 0, got ({a}, {b})")));
        }
        let top = a + 2 * b;
        let mut total = self.p1(top)? + self.data.gamma() * self.l(top)?;
        for i in 1..=b {
            total -= self.l(b - i)? * self.l(a + b + i)?;
            for j in 0..2 * (b - i) {
                total += self.s1(j, top)?;
            }
        }
        Ok(total)
    }

    /// `χ(S^a N^∨ ⊗ (τ*L^b ⊗ res*L^c)(-dF₁))` on `X^[1,2]`:
    /// `s1(a, c) l(b) - Σ_{i=1}^{d} s2(a, d-i, b+c) - Σ_{j=1}^{a} s2(a-j, d+2j-1, b+c)`.
    pub fn chi_sym_n_twist(&self, a: i64, b: i64, c: i64, d: i64) -> Result<Rational> {
        if a < 0 || b < 0 || c < 0 || d < 0 {
            return Err(Error::input(format!(
                "chi_sym_n_twist needs nonnegative arguments, got ({a}, {b}, {c}, {d})"
            )));
        }
        let mut total = self.s1(a, c)? * self.l(b)?;
        for i in 1..=d {
            total -= self.s2(a, d - i, b + c)?;
        }
        for j in 1..=a {
            total -= self.s2(a - j, d + 2 * j - 1, b + c)?;
        }
        Ok(total)
    }

    /// `P_{Σ₂}(3m+2)` from the fully expanded multi-sum.
    pub fn sigma2_node(&self, m: i64) -> Result<Rational> {
        if m < 0 {
            return Err(Error::input(format!("node index must be nonnegative, got {m}")));
        }
        let gamma = self.data.gamma();
        let ell = 3 * m + 2;
        let mut total = self.p1(ell)?;

        for i in 1..=m {
            // χ(S^{3m-3i} E ⊗ A^{i+1}) · l(i)
            let arg = 3 * m - i + 2;
            let mut bracket = self.p1(arg)? + gamma.clone() * self.l(arg)?;
            for p in 1..=i + 1 {
                bracket -= self.l(i + 1 - p)? * self.l(3 * m - 2 * i + 1 + p)?;
                for q in 0..=2 * i - 2 * p + 1 {
                    bracket += self.s1(q, arg)?;
                }
            }
            total += bracket * self.l(i)?;

            // χ(A^i) · l(3m-2i+2)
            let mut bracket = self.p1(2 * i)? + gamma.clone() * self.l(2 * i)?;
            for p in 1..=i {
                bracket -= self.l(i - p)? * self.l(i + p)?;
                for q in 0..2 * i - 2 * p {
                    bracket += self.s1(q, 2 * i)?;
                }
            }
            total += bracket * self.l(3 * m - 2 * i + 2)?;
        }

        for i in 1..=m {
            for j in 0..2 * i {
                for p in 1..=2 * i {
                    total += self.s2(j, 2 * i - p, ell)?;
                }
                for p in 1..=j {
                    total += self.s2(j - p, 2 * i + 2 * p - 1, ell)?;
                }
                for k in 0..=3 * m - 3 * i {
                    for p in 1..=k + 2 * i + 2 {
                        total += self.s2(j, k + 2 * i - p + 2, ell)?;
                    }
                    for p in 1..=j {
                        total += self.s2(j - p, k + 2 * i + 2 * p + 1, ell)?;
                    }
                }
            }
        }

        for i in 1..=m {
            let li = self.l(i)?;
            for j in 0..2 * i {
                total -= self.s1(j, 3 * m - i + 2)? * li.clone();
                for k in 0..=3 * m - 3 * i {
                    total -= self.s1(j, 3 * m - i - k + 1)? * self.l(k + i + 1)?;
                }
            }
        }
        Ok(total)
    }

    /// `P_{Σ₂}(3m+2)` assembled from [`Self::chi_sym_e2_twist`] and
    /// [`Self::chi_sym_n_twist`] along the filtration of the exceptional locus.
    pub fn sigma2_node_alt(&self, m: i64) -> Result<Rational> {
        if m < 0 {
            return Err(Error::input(format!("node index must be nonnegative, got {m}")));
        }
        let mut total = self.p1(3 * m + 2)?;
        for i in 1..=m {
            total += self.chi_sym_e2_twist(3 * m - 3 * i, i + 1)? * self.l(i)?;
            total += self.chi_sym_e2_twist(0, i)? * self.l(3 * m - 2 * i + 2)?;
        }
        for i in 1..=m {
            for j in 0..2 * i {
                total -= self.chi_sym_n_twist(j, i, 3 * m - i + 2, 2 * i)?;
                for k in 0..=3 * m - 3 * i {
                    total -= self.chi_sym_n_twist(j, k + i + 1, 3 * m - i - k + 1, k + 2 * i + 2)?;
                }
            }
        }
        Ok(total)
    }

    /// `(3m+2, P_{Σ₂}(3m+2))` for `m = 0..=3n+2`.
    pub fn sigma2_nodes(&self) -> Result<Vec<(i64, Rational)>> {
        self.sigma1_polynomial()?;
        (0..=3 * self.n() + 2)
            .into_par_iter()
            .map(|m| Ok((3 * m + 2, self.sigma2_node(m)?)))
            .collect()
    }

    pub fn sigma2_polynomial(&self) -> Result<&HilbertPolynomial> {
        if let Some(p) = self.sigma2.get() {
            return Ok(p);
        }
        let poly = lagrange_interpolate(&self.sigma2_nodes()?)?;
        let expected = SecantIndex::Second.expected_dim(self.data.dim());
        Ok(self.sigma2.get_or_init(|| HilbertPolynomial::new(poly, expected)))
    }

    pub fn polynomial(&self, secant: SecantIndex) -> Result<&HilbertPolynomial> {
        match secant {
            SecantIndex::First => self.sigma1_polynomial(),
            SecantIndex::Second => self.sigma2_polynomial(),
        }
    }

    pub fn nodes(&self, secant: SecantIndex) -> Result<Vec<(i64, Rational)>> {
        match secant {
            SecantIndex::First => self.sigma1_nodes(),
            SecantIndex::Second => self.sigma2_nodes(),
        }
    }

    pub fn report(&self, secant: SecantIndex) -> Result<SecantReport> {
        let positivity = validate_positivity(self.variety(), secant);
        let polynomial = self.polynomial(secant)?.clone();
        let node_values = self.nodes(secant)?;
        let dimension = polynomial.dimension();
        let degree = polynomial.degree();
        if positivity.is_ok() && !(degree.is_integer() && degree.is_positive()) {
            return Err(Error::consistency(format!(
                "degree {degree} of secant variety {} of {} is not a positive integer",
                secant.as_u8(),
                self.variety()
            )));
        }
        let ambient = self.data.l(1) - Rational::one();
        let fills_ambient = ambient == int(i64::from(dimension));
        Ok(SecantReport {
            variety: self.variety().clone(),
            secant,
            polynomial,
            dimension,
            degree,
            node_values,
            positivity,
            fills_ambient,
        })
    }
}

/// `lcm_m ∏_{t ≠ m} |x_m - x_t|` over the abscissae: every interpolated
/// coefficient's denominator divides this (given integer node values).
pub fn lagrange_denominator_bound(abscissae: &[i64]) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::one();
    for (i, xi) in abscissae.iter().enumerate() {
        let mut prod = num_bigint::BigInt::one();
        for (j, xj) in abscissae.iter().enumerate() {
            if i != j {
                prod *= (xi - xj).abs();
            }
        }
        acc = acc.lcm(&prod);
    }
    if acc.is_zero() {
        num_bigint::BigInt::one()
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine_curve(g: u32, d: u32) -> SecantEngine {
        SecantEngine::new(VarietySpec::curve(g, d).unwrap())
    }

    #[test]
    fn sigma1_node_examples() {
        let e = engine_curve(0, 4);
        assert_eq!(e.sigma1_node(0).unwrap(), int(5));
        assert_eq!(e.sigma1_node(1).unwrap(), int(34));
        assert_eq!(e.sigma1_node(2).unwrap(), int(111));
        assert_eq!(engine_curve(0, 3).sigma1_node(1).unwrap(), int(20));
        assert!(e.sigma1_node(-1).is_err());
        let p2 = SecantEngine::new(VarietySpec::projective(2, 3).unwrap());
        assert_eq!(p2.sigma1_node(0).unwrap(), p2.data().l(1));
    }

    #[test]
    fn blowup_product_examples() {
        let e = engine_curve(0, 4);
        assert_eq!(e.chi_blowup_product(None, None, 3, 4, 0).unwrap(), int(13 * 17));
        assert_eq!(e.chi_blowup_product(None, None, 1, 2, 2).unwrap(), int(21));
        let c = engine_curve(3, 10);
        let l0 = c.data().l(0);
        assert_eq!(
            c.chi_blowup_product(None, None, 0, 0, 1).unwrap(),
            l0.clone() * l0.clone() - l0
        );
        assert!(e.chi_blowup_product(None, None, -1, 0, 0).is_err());
    }

    #[test]
    fn blowup_product_with_bundles() {
        // F = O(1) on P^2 with L = O(1): χ(L^a ⊗ F) = χ(O(a+1)).
        let v = VarietySpec::projective(2, 1).unwrap();
        let e = SecantEngine::new(v);
        let spec = crate::RingSpec::projective(2).unwrap();
        let f = KClass::line(&spec, vec![1], int(1)).unwrap();
        let trivial = KClass::trivial(&spec);
        let with_trivial = e.chi_blowup_product(Some(&trivial), Some(&trivial), 2, 1, 3).unwrap();
        assert_eq!(with_trivial, e.chi_blowup_product(None, None, 2, 1, 3).unwrap());
        let got = e.chi_blowup_product(Some(&f), None, 1, 1, 1).unwrap();
        // χ(O(2)) χ(O(1)) - χ(O(3)) = 6*3 - 10
        assert_eq!(got, int(8));
        assert!(engine_curve(0, 4).chi_blowup_product(Some(&f), None, 1, 1, 1).is_err());
    }

    #[test]
    fn e2_twist_examples() {
        let e = engine_curve(0, 4);
        assert_eq!(e.chi_sym_e2_twist(1, 0).unwrap(), int(5));
        assert_eq!(e.chi_sym_e2_twist(3, 0).unwrap(), int(34));
        let c = engine_curve(2, 9);
        for a in 0..5 {
            let expected = c.sigma1_polynomial().unwrap().eval(a) + c.data().gamma() * c.data().l(a);
            assert_eq!(c.chi_sym_e2_twist(a, 0).unwrap(), expected);
        }
    }

    #[test]
    fn n_twist_examples() {
        let e = engine_curve(0, 4);
        assert_eq!(e.chi_sym_n_twist(0, 2, 3, 0).unwrap(), e.data().l(3) * e.data().l(2));
        assert_eq!(e.chi_sym_n_twist(1, 1, 2, 1).unwrap(), int(15));
        assert!(e.chi_sym_n_twist(0, 0, 0, -1).is_err());
    }

    #[test]
    fn n_twist_degenerates_to_blowup_product() {
        for v in [
            VarietySpec::curve(1, 8).unwrap(),
            VarietySpec::product(vec![1, 1], vec![2, 3]).unwrap(),
        ] {
            let e = SecantEngine::new(v);
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..5 {
                        assert_eq!(
                            e.chi_sym_n_twist(0, b, c, d).unwrap(),
                            e.chi_blowup_product(None, None, b, c, d).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sigma2_node_at_zero() {
        for v in [VarietySpec::curve(2, 9).unwrap(), VarietySpec::projective(2, 8).unwrap()] {
            let e = SecantEngine::new(v);
            let p1_at_2 = e.sigma1_polynomial().unwrap().eval(2);
            assert_eq!(e.sigma2_node(0).unwrap(), p1_at_2);
            assert_eq!(e.sigma2_node_alt(0).unwrap(), p1_at_2);
        }
    }

    #[test]
    fn report_for_quartic_curve() {
        let r = engine_curve(0, 4).report(SecantIndex::First).unwrap();
        assert_eq!(r.dimension, 3);
        assert_eq!(r.degree, int(3));
        assert!(r.positivity.is_ok());
        assert!(!r.fills_ambient);
        assert_eq!(r.node_values.len(), 4);

        let r = engine_curve(0, 3).report(SecantIndex::First).unwrap();
        assert!(r.fills_ambient);
        assert_eq!(r.degree, int(1));
    }

    #[test]
    fn padded_coefficients() {
        // Σ₂ of the twisted cubic is P^3: degree 3, padded to 6 coefficients.
        let e = engine_curve(0, 3);
        let p = e.sigma2_polynomial().unwrap();
        assert_eq!(p.dimension(), 3);
        assert_eq!(p.coefficients().len(), 6);
    }

    #[test]
    fn denominator_bound() {
        assert_eq!(lagrange_denominator_bound(&[1, 3, 5]), num_bigint::BigInt::from(8));
        assert_eq!(lagrange_denominator_bound(&[1]), num_bigint::BigInt::from(1));
    }
}
