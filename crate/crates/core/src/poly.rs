//! Dense univariate polynomials over an exact field and Lagrange interpolation.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::scalar::ExactField;

/// Dense polynomial with ascending coefficients; trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: ExactField> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![-root, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_int(&self, x: i64) -> T {
        self.eval(&T::from_int(x))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Monomial-basis rendering with exact fractions, e.g. `(1/2)ℓ³ + 2ℓ - 1`.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let text = abs.to_string();
            let is_unit = abs.is_one();
            if k == 0 || !is_unit {
                if text.contains('/') {
                    let _ = write!(out, "({text})");
                } else {
                    out.push_str(&text);
                }
            }
            if k >= 1 {
                out.push_str(var);
            }
            if k >= 2 {
                out.push_str(&superscript(k));
            }
        }
        out
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .chars()
        .map(|d| DIGITS[d.to_digit(10).unwrap() as usize])
        .collect()
}

/// Unique polynomial of degree `< nodes.len()` through the given points.
///
/// Classical Lagrange form over the exact field; abscissae must be distinct.
pub fn lagrange_interpolate<T: ExactField>(nodes: &[(i64, T)]) -> Result<Polynomial<T>> {
    for (i, (xi, _)) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::input(format!("duplicate interpolation abscissa {xi}")));
        }
    }
    let mut acc = Polynomial::zero();
    for (i, (xi, yi)) in nodes.iter().enumerate() {
        let mut basis = Polynomial::constant(T::one());
        let mut denom = T::one();
        for (j, (xj, _)) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&Polynomial::linear_root(T::from_int(*xj)));
            denom = denom * T::from_int(xi - xj);
        }
        acc = acc.add(&basis.scale(&(yi.clone() / denom)));
    }
    Ok(acc)
}
