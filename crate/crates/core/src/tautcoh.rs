//! Cohomology dimensions `h^i(X^[k], S^ℓ E_{k,L})` for `k = 2, 3`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::eulerdata::{validate_positivity, HodgeVector, Positivity, SecantIndex, VarietySpec};
use crate::secantpoly::SecantEngine;
use crate::Rational;

/// Number of points of the Hilbert scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Points {
    Two,
    Three,
}

impl Points {
    pub fn as_u8(self) -> u8 {
        match self {
            Points::Two => 2,
            Points::Three => 3,
        }
    }

    /// Secant variety whose Hilbert function gives `H^0`.
    pub fn secant(self) -> SecantIndex {
        match self {
            Points::Two => SecantIndex::First,
            Points::Three => SecantIndex::Second,
        }
    }
}

impl TryFrom<u8> for Points {
    type Error = Error;

    fn try_from(k: u8) -> Result<Self> {
        match k {
            2 => Ok(Points::Two),
            3 => Ok(Points::Three),
            _ => Err(Error::input(format!("tables exist for k = 2 or 3, got {k}"))),
        }
    }
}

fn choose2(h: u64) -> u64 {
    h * h.saturating_sub(1) / 2
}

/// `h^i(X^[2], O)` for `i = 0..=2n` from the Hodge numbers of `O_X`.
///
/// Mixed Künneth pieces `H^p ⊗ H^q` with `p < q` survive once; the diagonal
/// piece `H^{i/2} ⊗ H^{i/2}` contributes its symmetric square when `i/2` is
/// even and its exterior square when `i/2` is odd.
pub fn hodge_ox2(h: &HodgeVector) -> Vec<u64> {
    let n = h.n();
    (0..=2 * n)
        .map(|i| {
            let mut total: u64 = (0..=i / 2)
                .filter(|&p| p < i - p)
                .map(|p| h.get(p) * h.get(i - p))
                .sum();
            if i % 2 == 0 {
                let half = h.get(i / 2);
                total += if (i / 2) % 2 == 0 { choose2(half + 1) } else { choose2(half) };
            }
            total
        })
        .collect()
}

fn int(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn check_ell(ell: i64) -> Result<()> {
    if ell <= 0 {
        return Err(Error::input(format!("twist ℓ must be positive, got {ell}")));
    }
    Ok(())
}

/// Column `(h^0, ..., h^n)` of `h^i(X^[2], S^ℓ E_{2,L})`; higher rows vanish.
pub fn table_k2(engine: &SecantEngine, ell: i64) -> Result<Vec<Rational>> {
    check_ell(ell)?;
    let h = engine.data().hodge_vector();
    let l = engine.data().l(ell);
    let mut col = vec![engine.sigma1_polynomial()?.eval(ell)];
    col.extend((1..=h.n()).map(|i| int(h.get(i)) * l.clone()));
    Ok(col)
}

/// Column `(h^0, ..., h^{2n})` of `h^i(X^[3], S^ℓ E_{3,L})`; higher rows vanish.
pub fn table_k3(engine: &SecantEngine, ell: i64) -> Result<Vec<Rational>> {
    check_ell(ell)?;
    let h = engine.data().hodge_vector();
    let h2 = hodge_ox2(&h);
    let n = h.n();
    let l = engine.data().l(ell);
    let p1 = engine.sigma1_polynomial()?.eval(ell);
    let mut col = vec![engine.sigma2_polynomial()?.eval(ell)];
    for i in 1..=n {
        let quotient = h2[i].checked_sub(h.get(i)).ok_or_else(|| {
            Error::consistency(format!("h^{i}(O_X) exceeds h^{i}(O_X[2])"))
        })?;
        col.push(int(h.get(i)) * p1.clone() + int(quotient) * l.clone());
    }
    for hi in h2.iter().take(2 * n + 1).skip(n + 1) {
        col.push(int(*hi) * l.clone());
    }
    Ok(col)
}

/// One `(i, ℓ, dim)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub i: usize,
    pub ell: i64,
    pub dim: Rational,
}

/// Dense table over `0 ≤ i ≤ (k-1) n` and the requested twists.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyTable {
    points: Points,
    variety: VarietySpec,
    cells: BTreeMap<(i64, usize), Rational>,
    positivity: Positivity,
}

impl CohomologyTable {
    pub fn build(engine: &SecantEngine, points: Points, ells: &[i64]) -> Result<Self> {
        let mut cells = BTreeMap::new();
        for &ell in ells {
            let col = match points {
                Points::Two => table_k2(engine, ell)?,
                Points::Three => table_k3(engine, ell)?,
            };
            for (i, dim) in col.into_iter().enumerate() {
                cells.insert((ell, i), dim);
            }
        }
        Ok(Self {
            points,
            variety: engine.variety().clone(),
            cells,
            positivity: validate_positivity(engine.variety(), points.secant()),
        })
    }

    pub fn points(&self) -> Points {
        self.points
    }

    pub fn variety(&self) -> &VarietySpec {
        &self.variety
    }

    pub fn positivity(&self) -> &Positivity {
        &self.positivity
    }

    /// Highest degree that can be nonzero: `(k-1) n`.
    pub fn top_degree(&self) -> usize {
        (usize::from(self.points.as_u8()) - 1) * self.variety.dim() as usize
    }

    /// `h^i` at twist `ℓ`; zero above the top degree or outside the window.
    pub fn get(&self, i: usize, ell: i64) -> Rational {
        self.cells.get(&(ell, i)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Rows ordered by `(ℓ, i)`.
    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        self.cells.iter().map(|(&(ell, i), dim)| TableRow {
            i,
            ell,
            dim: dim.clone(),
        })
    }

    /// Every cell must be a nonnegative integer.
    pub fn check_entries(&self) -> Result<()> {
        for row in self.rows() {
            if !row.dim.is_integer() || row.dim.is_negative() {
                return Err(Error::consistency(format!(
                    "h^{}(X^[{}], S^{} E) = {} is not a nonnegative integer",
                    row.i,
                    self.points.as_u8(),
                    row.ell,
                    row.dim
                )));
            }
        }
        Ok(())
    }
}

/// Alternating sum of a table column. For `k = 2` it must reproduce
/// `χ(S^ℓ E_{2,L}) = P_{Σ₁}(ℓ) + Γ l(ℓ)`; a mismatch is an error.
pub fn euler_check(engine: &SecantEngine, points: Points, ell: i64) -> Result<Rational> {
    let col = match points {
        Points::Two => table_k2(engine, ell)?,
        Points::Three => table_k3(engine, ell)?,
    };
    let mut total = Rational::zero();
    for (i, v) in col.into_iter().enumerate() {
        if i % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    if points == Points::Two {
        let expected = engine.chi_sym_e2_twist(ell, 0)?;
        if expected != total {
            return Err(Error::consistency(format!(
                "Euler characteristic of S^{ell} E_2 on {}: table gives {total}, Riemann-Roch side gives {expected}",
                engine.variety()
            )));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: i64) -> Rational {
        Rational::from_integer(v.into())
    }

    fn curve(g: u32, d: u32) -> SecantEngine {
        SecantEngine::new(VarietySpec::curve(g, d).unwrap())
    }

    #[test]
    fn hodge_ox2_examples() {
        assert_eq!(hodge_ox2(&HodgeVector::new(vec![1, 0]).unwrap()), vec![1, 0, 0]);
        assert_eq!(hodge_ox2(&HodgeVector::new(vec![1, 3]).unwrap()), vec![1, 3, 3]);
        assert_eq!(hodge_ox2(&HodgeVector::new(vec![1, 0, 0]).unwrap()), vec![1, 0, 0, 0, 0]);
        // Abelian surface: h = (1, 2, 1).
        assert_eq!(hodge_ox2(&HodgeVector::new(vec![1, 2, 1]).unwrap()), vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn k2_examples() {
        assert_eq!(table_k2(&curve(0, 4), 3).unwrap(), vec![r(34), r(0)]);
        let c = curve(2, 9);
        for ell in 1..5 {
            let col = table_k2(&c, ell).unwrap();
            assert_eq!(col[1], r(2 * (ell * 9 + 1 - 2)));
        }
        let p2 = SecantEngine::new(VarietySpec::projective(2, 8).unwrap());
        let col = table_k2(&p2, 2).unwrap();
        assert_eq!(&col[1..], &[r(0), r(0)]);
        assert!(matches!(table_k2(&c, 0), Err(Error::Input(_))));
    }

    #[test]
    fn k3_examples() {
        let c = curve(4, 14);
        for ell in 1..4 {
            let col = table_k3(&c, ell).unwrap();
            assert_eq!(col.len(), 3);
            assert_eq!(col[2], r(6 * (ell * 14 + 1 - 4)));
        }
        assert_eq!(table_k3(&curve(0, 6), 1).unwrap(), vec![r(7), r(0), r(0)]);
        assert!(table_k3(&c, -2).is_err());
    }

    #[test]
    fn euler_check_examples() {
        let c = curve(2, 9);
        let p1 = c.sigma1_polynomial().unwrap().eval(2);
        assert_eq!(euler_check(&c, Points::Two, 2).unwrap(), p1 - r(2) * c.data().l(2));
        assert_eq!(euler_check(&curve(0, 4), Points::Two, 3).unwrap(), r(34));
    }

    #[test]
    fn table_rows_sorted_and_dense() {
        let c = curve(1, 7);
        let t = CohomologyTable::build(&c, Points::Three, &[2, 1]).unwrap();
        let order: Vec<(i64, usize)> = t.rows().map(|r| (r.ell, r.i)).collect();
        assert_eq!(order, vec![(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2)]);
        assert_eq!(t.top_degree(), 2);
        assert!(t.get(3, 1).is_zero());
        t.check_entries().unwrap();
    }

    #[test]
    fn points_parse() {
        assert!(Points::try_from(4).is_err());
        assert_eq!(Points::try_from(3).unwrap().secant(), SecantIndex::Second);
    }
}
