use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactring::RingSpec;

/// Which secant variety is being asked about: `Σ₁` (lines) or `Σ₂` (planes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum SecantIndex {
    First,
    Second,
}

impl SecantIndex {
    pub fn as_u8(self) -> u8 {
        match self {
            SecantIndex::First => 1,
            SecantIndex::Second => 2,
        }
    }

    /// Expected dimension `k n + k - 1` of `Σ_k` for an `n`-dimensional variety.
    pub fn expected_dim(self, n: u32) -> u32 {
        let k = u32::from(self.as_u8());
        (k + 1) * n + k
    }
}

impl TryFrom<u8> for SecantIndex {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        match v {
            1 => Ok(SecantIndex::First),
            2 => Ok(SecantIndex::Second),
            _ => Err(Error::input(format!("secant index must be 1 or 2, got {v}"))),
        }
    }
}

impl From<SecantIndex> for u8 {
    fn from(s: SecantIndex) -> u8 {
        s.as_u8()
    }
}

/// A smooth projective variety together with its embedding line bundle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawVariety", into = "RawVariety")]
pub enum VarietySpec {
    /// Abstract curve of genus `genus` with a line bundle of degree `degree`.
    Curve { genus: u32, degree: u32 },
    /// `P^{n_1} x ... x P^{n_k}` with `O(d_1, ..., d_k)`.
    ProductProj { spec: RingSpec, degrees: Vec<u32> },
}

impl VarietySpec {
    pub fn curve(genus: u32, degree: u32) -> Result<Self> {
        if degree == 0 {
            return Err(Error::input("curve embedding degree must be positive"));
        }
        Ok(VarietySpec::Curve { genus, degree })
    }

    pub fn product(dims: Vec<u32>, degrees: Vec<u32>) -> Result<Self> {
        let spec = RingSpec::new(dims)?;
        if degrees.len() != spec.factors() {
            return Err(Error::input(format!(
                "{} line-bundle degrees given for {} factors",
                degrees.len(),
                spec.factors()
            )));
        }
        if degrees.contains(&0) {
            return Err(Error::input("line-bundle multidegree must be positive"));
        }
        Ok(VarietySpec::ProductProj { spec, degrees })
    }

    /// `P^n` embedded by `O(d)`.
    pub fn projective(n: u32, d: u32) -> Result<Self> {
        Self::product(vec![n], vec![d])
    }

    pub fn dim(&self) -> u32 {
        match self {
            VarietySpec::Curve { .. } => 1,
            VarietySpec::ProductProj { spec, .. } => spec.total_dim(),
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            VarietySpec::Curve { genus, .. } => *genus,
            VarietySpec::ProductProj { .. } => 0,
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Curve { genus, degree } => write!(f, "curve(g={genus},d={degree})"),
            VarietySpec::ProductProj { spec, degrees } => {
                let degs: Vec<String> = degrees.iter().map(u32::to_string).collect();
                write!(f, "{spec} O({})", degs.join(","))
            }
        }
    }
}

/// Serialized shape of [`VarietySpec`]; validated on the way in.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "space", rename_all = "lowercase", deny_unknown_fields)]
enum RawVariety {
    Curve { genus: u32, degree: u32 },
    Pps { dims: Vec<u32>, degrees: Vec<u32> },
}

impl TryFrom<RawVariety> for VarietySpec {
    type Error = Error;

    fn try_from(raw: RawVariety) -> Result<Self> {
        match raw {
            RawVariety::Curve { genus, degree } => VarietySpec::curve(genus, degree),
            RawVariety::Pps { dims, degrees } => VarietySpec::product(dims, degrees),
        }
    }
}

impl From<VarietySpec> for RawVariety {
    fn from(v: VarietySpec) -> Self {
        match v {
            VarietySpec::Curve { genus, degree } => RawVariety::Curve { genus, degree },
            VarietySpec::ProductProj { spec, degrees } => RawVariety::Pps {
                dims: spec.into(),
                degrees,
            },
        }
    }
}

/// Which positivity gate flagged a variety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Gate {
    /// `L = ω ⊗ A^m ⊗ B` with `m ≥ 2n+2` (first secant) or `m ≥ 3n+3` (second).
    Adjoint,
    /// Curves only: `d ≥ 2g + 2k + 1`.
    CurveLiterature,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Positivity {
    Ok,
    Warning { gates: Vec<Gate>, message: String },
}

impl Positivity {
    pub fn is_ok(&self) -> bool {
        matches!(self, Positivity::Ok)
    }
}

/// Checks the embedding against the sufficient-positivity thresholds.
///
/// Never fails; callers decide whether a warning is fatal.
pub fn validate_positivity(v: &VarietySpec, secant: SecantIndex) -> Positivity {
    let n = v.dim();
    let m_needed = match secant {
        SecantIndex::First => 2 * n + 2,
        SecantIndex::Second => 3 * n + 3,
    };
    let mut gates = Vec::new();
    let mut reasons = Vec::new();
    match v {
        VarietySpec::Curve { genus, degree } => {
            // deg ω = 2g - 2 and A a point: need d ≥ 2g - 2 + m.
            let adjoint = i64::from(2 * genus) - 2 + i64::from(m_needed);
            if i64::from(*degree) < adjoint {
                gates.push(Gate::Adjoint);
                reasons.push(format!("degree {degree} < 2g-2+{m_needed} = {adjoint}"));
            }
            let literature = 2 * genus + 2 * u32::from(secant.as_u8()) + 1;
            if *degree < literature {
                gates.push(Gate::CurveLiterature);
                reasons.push(format!("degree {degree} < 2g+2k+1 = {literature}"));
            }
        }
        VarietySpec::ProductProj { spec, degrees } => {
            // ω = O(-n_i - 1), A = O(1, ..., 1): m is the smallest d_i + n_i + 1.
            let m = degrees
                .iter()
                .zip(spec.dims())
                .map(|(d, n)| d + n + 1)
                .min()
                .unwrap_or(0);
            if m < m_needed {
                gates.push(Gate::Adjoint);
                reasons.push(format!("min(d_i + n_i + 1) = {m} < {m_needed}"));
            }
        }
    }
    if gates.is_empty() {
        Positivity::Ok
    } else {
        Positivity::Warning {
            gates,
            message: format!(
                "{v} may not be sufficiently positive for secant index {}: {}",
                secant.as_u8(),
                reasons.join("; ")
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(VarietySpec::curve(1, 0).is_err());
        assert!(VarietySpec::product(vec![1, 1], vec![4]).is_err());
        assert!(VarietySpec::product(vec![2], vec![0]).is_err());
        assert_eq!(VarietySpec::product(vec![1, 2], vec![3, 3]).unwrap().dim(), 3);
        assert_eq!(VarietySpec::curve(5, 20).unwrap().dim(), 1);
    }

    #[test]
    fn positivity_examples() {
        let v = VarietySpec::curve(0, 4).unwrap();
        assert!(validate_positivity(&v, SecantIndex::First).is_ok());

        let v = VarietySpec::curve(0, 3).unwrap();
        match validate_positivity(&v, SecantIndex::Second) {
            Positivity::Warning { gates, .. } => {
                assert_eq!(gates, vec![Gate::Adjoint, Gate::CurveLiterature]);
            }
            Positivity::Ok => panic!("twisted cubic is not positive enough for Σ₂"),
        }

        let v = VarietySpec::projective(2, 8).unwrap();
        assert!(validate_positivity(&v, SecantIndex::First).is_ok());
        assert!(validate_positivity(&v, SecantIndex::Second).is_ok());

        let v = VarietySpec::projective(2, 1).unwrap();
        assert!(!validate_positivity(&v, SecantIndex::Second).is_ok());
    }

    #[test]
    fn literature_gate_alone() {
        // d = 2g + 2 passes the adjoint gate for Σ₁ but not d ≥ 2g + 3.
        let v = VarietySpec::curve(2, 6).unwrap();
        match validate_positivity(&v, SecantIndex::First) {
            Positivity::Warning { gates, .. } => assert_eq!(gates, vec![Gate::CurveLiterature]),
            Positivity::Ok => panic!("expected literature gate"),
        }
    }

    #[test]
    fn expected_dims() {
        assert_eq!(SecantIndex::First.expected_dim(1), 3);
        assert_eq!(SecantIndex::Second.expected_dim(1), 5);
        assert_eq!(SecantIndex::Second.expected_dim(2), 8);
        assert!(SecantIndex::try_from(3).is_err());
    }

    #[test]
    fn serde_shape() {
        let v = VarietySpec::product(vec![1, 1], vec![4, 4]).unwrap();
        let text = serde_json_like(&v);
        assert_eq!(text, "pps [1, 1] [4, 4]");
    }

    fn serde_json_like(v: &VarietySpec) -> String {
        match RawVariety::from(v.clone()) {
            RawVariety::Curve { genus, degree } => format!("curve {genus} {degree}"),
            RawVariety::Pps { dims, degrees } => format!("pps {dims:?} {degrees:?}"),
        }
    }
}
