//! Turns a `(variety, computation)` pair into an envelope.

use num_traits::One;
use secant_core::{
    validate_positivity, CohomologyTable, Points, Rational, SecantEngine, VarietySpec,
};

use crate::envelope::{Computation, Frac, NodeValue, Payload, ResultEnvelope, Row, TOOL_VERSION};

fn nodes(values: Vec<(i64, Rational)>) -> Vec<NodeValue> {
    values
        .into_iter()
        .map(|(ell, v)| NodeValue { ell, value: Frac(v) })
        .collect()
}

pub fn compute(engine: &SecantEngine, computation: &Computation) -> secant_core::Result<ResultEnvelope> {
    let variety = engine.variety().clone();
    let positivity = validate_positivity(&variety, computation.secant());
    let payload = match computation {
        Computation::Poly1 | Computation::Poly2 => {
            let r = engine.report(computation.secant())?;
            Payload::Polynomial {
                expected_dimension: r.polynomial.expected_dim(),
                dimension: r.dimension,
                degree: Frac(r.degree),
                fills_ambient: r.fills_ambient,
                coefficients: r.polynomial.coefficients().into_iter().map(Frac).collect(),
                nodes: nodes(r.node_values),
            }
        }
        Computation::Table2 { ell } | Computation::Table3 { ell } => {
            let points = if matches!(computation, Computation::Table2 { .. }) {
                Points::Two
            } else {
                Points::Three
            };
            let table = CohomologyTable::build(engine, points, &ell.values())?;
            Payload::Table {
                k: points.as_u8(),
                rows: table
                    .rows()
                    .map(|r| Row { i: r.i, ell: r.ell, dim: Frac(r.dim) })
                    .collect(),
            }
        }
        Computation::Degree { secant } => {
            let r = engine.report(*secant)?;
            Payload::Degree {
                dimension: r.dimension,
                degree: Frac(r.degree),
                ambient_dimension: Frac(engine.data().l(1) - Rational::one()),
                fills_ambient: r.fills_ambient,
            }
        }
        Computation::Nodes { secant } => Payload::Nodes { nodes: nodes(engine.nodes(*secant)?) },
    };
    Ok(ResultEnvelope {
        tool_version: TOOL_VERSION.to_string(),
        variety,
        computation: computation.clone(),
        payload,
        positivity,
    })
}

/// Convenience wrapper building a fresh engine.
pub fn compute_fresh(variety: &VarietySpec, computation: &Computation) -> secant_core::Result<ResultEnvelope> {
    compute(&SecantEngine::new(variety.clone()), computation)
}
