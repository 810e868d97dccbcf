//! JSON result envelopes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use secant_core::{Positivity, Rational, SecantIndex, VarietySpec};

pub const TOOL_VERSION: &str = concat!("secant ", env!("CARGO_PKG_VERSION"));

/// Exact rational written as `"num/den"` (the denominator is always present).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frac(pub Rational);

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Frac {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Frac(Rational::new(n, d)))
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Inclusive twist range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EllRange {
    pub start: i64,
    pub end: i64,
}

impl EllRange {
    pub fn values(&self) -> Vec<i64> {
        (self.start..=self.end).collect()
    }
}

impl Default for EllRange {
    fn default() -> Self {
        Self { start: 1, end: 6 }
    }
}

impl fmt::Display for EllRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

impl FromStr for EllRange {
    type Err = String;

    /// `A..B` or a single `A`; every value must be positive.
    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once("..").unwrap_or((s, s));
        let start: i64 = a.trim().parse().map_err(|_| format!("bad ℓ range {s:?}"))?;
        let end: i64 = b.trim().parse().map_err(|_| format!("bad ℓ range {s:?}"))?;
        if start > end {
            return Err(format!("empty ℓ range {s:?}"));
        }
        if start <= 0 {
            return Err(format!("ℓ must be positive, range {s:?} starts at {start}"));
        }
        Ok(Self { start, end })
    }
}

impl Serialize for EllRange {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EllRange {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What was computed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "lowercase", deny_unknown_fields)]
pub enum Computation {
    Poly1,
    Poly2,
    Table2 { ell: EllRange },
    Table3 { ell: EllRange },
    Degree { secant: SecantIndex },
    Nodes { secant: SecantIndex },
}

impl Computation {
    pub fn name(&self) -> &'static str {
        match self {
            Computation::Poly1 => "poly1",
            Computation::Poly2 => "poly2",
            Computation::Table2 { .. } => "table2",
            Computation::Table3 { .. } => "table3",
            Computation::Degree { .. } => "degree",
            Computation::Nodes { .. } => "nodes",
        }
    }

    pub fn secant(&self) -> SecantIndex {
        match self {
            Computation::Poly1 | Computation::Table2 { .. } => SecantIndex::First,
            Computation::Poly2 | Computation::Table3 { .. } => SecantIndex::Second,
            Computation::Degree { secant } | Computation::Nodes { secant } => *secant,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeValue {
    pub ell: i64,
    pub value: Frac,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub i: usize,
    pub ell: i64,
    pub dim: Frac,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", rename_all_fields = "camelCase")]
pub enum Payload {
    Polynomial {
        expected_dimension: u32,
        dimension: u32,
        degree: Frac,
        fills_ambient: bool,
        /// Ascending powers of ℓ.
        coefficients: Vec<Frac>,
        nodes: Vec<NodeValue>,
    },
    Table {
        k: u8,
        rows: Vec<Row>,
    },
    Degree {
        dimension: u32,
        degree: Frac,
        ambient_dimension: Frac,
        fills_ambient: bool,
    },
    Nodes {
        nodes: Vec<NodeValue>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ResultEnvelope {
    pub tool_version: String,
    pub variety: VarietySpec,
    pub computation: Computation,
    pub payload: Payload,
    pub positivity: Positivity,
}

impl ResultEnvelope {
    /// Pretty JSON with a trailing newline; the byte form written to disk.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelope serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
