//! Cohomological route to Euler characteristics: `χ(F) = ∫ ch(F) td(X)`.

use crate::error::Result;
use crate::exactring::{GradedClass, RingSpec};
use crate::scalar::ExactField;

use super::kclass::KClass;

/// `x / (1 - e^{-x})` in the truncated ring of `P^n`, written in `h`.
fn todd_series_factor<T: ExactField>(spec: &RingSpec, i: usize) -> Result<GradedClass<T>> {
    let h = GradedClass::<T>::generator(spec, i)?;
    let n = spec.dims()[i];
    // (1 - e^{-x}) / x = sum_j (-1)^j x^j / (j+1)!
    let mut quotient = GradedClass::zero(spec);
    let mut power = GradedClass::one(spec);
    let mut fact = T::one();
    for j in 0..=n {
        fact = fact * T::from_int(i64::from(j) + 1);
        let sign = if j % 2 == 0 { T::one() } else { -T::one() };
        quotient = quotient.add(&power.scale(&(sign / fact.clone())))?;
        power = power.mul(&h)?;
    }
    quotient.inverse()
}

/// Todd class of `∏ P^{n_i}`: `∏_i (h_i / (1 - e^{-h_i}))^{n_i + 1}`.
pub fn todd_class<T: ExactField>(spec: &RingSpec) -> Result<GradedClass<T>> {
    let mut td = GradedClass::one(spec);
    for (i, &n) in spec.dims().iter().enumerate() {
        td = td.mul(&todd_series_factor(spec, i)?.pow(n + 1))?;
    }
    Ok(td)
}

/// Chern character of the line bundle `O(e)`.
pub fn chern_character_line<T: ExactField>(spec: &RingSpec, e: &[i64]) -> Result<GradedClass<T>> {
    let coeffs: Vec<T> = e.iter().map(|&x| T::from_int(x)).collect();
    GradedClass::linear(spec, &coeffs)?.exp_series()
}

/// `∫ ch(K ⊗ O(shift)) td` summed over the line-bundle terms of `K`.
pub fn chi_by_integration<T: ExactField>(
    k: &KClass<T>,
    shift: &[i64],
    todd: &GradedClass<T>,
) -> Result<T> {
    let spec = k.spec();
    let mut total = T::zero();
    for (e, c) in k.twist(shift)?.terms() {
        let ch = chern_character_line::<T>(spec, e)?;
        total = total + c.clone() * ch.mul(todd)?.integrate();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn todd_of_p1() {
        let spec = RingSpec::projective(1).unwrap();
        let td = todd_class::<Rational>(&spec).unwrap();
        assert_eq!(td.constant_term(), q(1, 1));
        assert_eq!(td.coeff(&[1]), q(1, 1));
        assert_eq!(td.terms().count(), 2);
    }

    #[test]
    fn todd_of_p2() {
        let spec = RingSpec::projective(2).unwrap();
        let td = todd_class::<Rational>(&spec).unwrap();
        assert_eq!(td.constant_term(), q(1, 1));
        assert_eq!(td.coeff(&[1]), q(3, 2));
        assert_eq!(td.coeff(&[2]), q(1, 1));
    }

    #[test]
    fn todd_series_matches_bernoulli_expansion() {
        // x/(1-e^{-x}) = 1 + x/2 + x^2/12 - x^4/720 + ...
        let spec = RingSpec::projective(4).unwrap();
        let f = todd_series_factor::<Rational>(&spec, 0).unwrap();
        assert_eq!(f.coeff(&[1]), q(1, 2));
        assert_eq!(f.coeff(&[2]), q(1, 12));
        assert_eq!(f.coeff(&[3]), q(0, 1));
        assert_eq!(f.coeff(&[4]), q(-1, 720));
    }

    #[test]
    fn top_degree_of_todd_is_one() {
        // ∫ td = χ(O) = 1 for every product of projective spaces.
        for dims in [vec![1], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
            let spec = RingSpec::new(dims).unwrap();
            assert_eq!(todd_class::<Rational>(&spec).unwrap().integrate(), q(1, 1));
        }
    }
}
