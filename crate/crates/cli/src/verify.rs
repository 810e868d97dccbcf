//! Self-verification suites.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use secant_core::{
    euler_check, CohomologyTable, Points, Rational, SecantEngine, SecantIndex, VarietySpec,
};

use crate::compute::compute;
use crate::envelope::ResultEnvelope;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Default,
    Extended,
}

/// Outcome of one named check: number of cases passed, or the first
/// counterexample.
#[derive(Debug)]
pub struct CheckResult {
    pub name: String,
    pub outcome: Result<usize, String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }

    pub fn line(&self) -> String {
        match &self.outcome {
            Ok(n) => format!("PASS {} ({n} cases)", self.name),
            Err(e) => format!("FAIL {}: {e}", self.name),
        }
    }
}

type Outcome = Result<usize, String>;

fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn curve(g: u32, d: u32) -> VarietySpec {
    VarietySpec::curve(g, d).expect("valid curve")
}

fn pps(dims: &[u32], degs: &[u32]) -> VarietySpec {
    VarietySpec::product(dims.to_vec(), degs.to_vec()).expect("valid product")
}

/// Varieties exercised by the default suite.
pub fn default_corpus() -> Vec<VarietySpec> {
    vec![
        curve(0, 6),
        curve(1, 8),
        curve(2, 9),
        pps(&[1], &[6]),
        pps(&[2], &[8]),
        pps(&[1, 1], &[4, 4]),
    ]
}

fn extended_corpus() -> Vec<VarietySpec> {
    let mut v = default_corpus();
    v.extend([curve(3, 12), curve(4, 14), pps(&[1], &[9]), pps(&[1, 1], &[5, 6]), pps(&[3], &[9])]);
    v
}

fn err(what: String, left: &Rational, right: &Rational) -> String {
    format!("{what}: {left} != {right}")
}

fn eq(what: impl FnOnce() -> String, left: Rational, right: Rational) -> Result<(), String> {
    if left == right {
        Ok(())
    } else {
        Err(err(what(), &left, &right))
    }
}

fn core<T>(r: secant_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn first_failure(results: Vec<Outcome>) -> Outcome {
    let mut total = 0;
    for r in results {
        total += r?;
    }
    Ok(total)
}

/// K-theoretic `l`, `s1`, `s2` against `∫ ch · td` on a twist grid.
fn path_equivalence(engine: &SecantEngine, max_sym: i64, twists: std::ops::RangeInclusive<i64>) -> Outcome {
    let d = engine.data();
    let v = engine.variety();
    let mut n = 0;
    for c in twists.clone() {
        eq(|| format!("{v}: l({c}) K-theory vs HRR"), d.l(c), core(d.l_hrr(c))?)?;
        n += 1;
    }
    for a in 0..=max_sym {
        for c in twists.clone() {
            eq(|| format!("{v}: s1({a}, {c}) K-theory vs HRR"), core(d.s1(a, c))?, core(d.s1_hrr(a, c))?)?;
            n += 1;
            for b in a..=max_sym {
                eq(
                    || format!("{v}: s2({a}, {b}, {c}) K-theory vs HRR"),
                    core(d.s2(a, b, c))?,
                    core(d.s2_hrr(a, b, c))?,
                )?;
                n += 1;
            }
        }
    }
    Ok(n)
}

/// A rational curve of degree `d` and `P¹` with `O(d)` must agree.
fn curve_consistency(deg: u32, max_sym: i64, twists: std::ops::RangeInclusive<i64>) -> Outcome {
    let c = SecantEngine::new(curve(0, deg));
    let p = SecantEngine::new(pps(&[1], &[deg]));
    let (c, p) = (c.data(), p.data());
    let mut n = 0;
    for t in twists {
        eq(|| format!("l({t}) on curve(0,{deg}) vs P^1 O({deg})"), c.l(t), p.l(t))?;
        for a in 0..=max_sym {
            eq(|| format!("s1({a}, {t}) on curve vs P^1"), core(c.s1(a, t))?, core(p.s1(a, t))?)?;
            for b in 0..=max_sym {
                eq(|| format!("s2({a}, {b}, {t}) on curve vs P^1"), core(c.s2(a, b, t))?, core(p.s2(a, b, t))?)?;
                n += 1;
            }
        }
    }
    Ok(n)
}

fn dual_path(engine: &SecantEngine) -> Outcome {
    let n = i64::from(engine.variety().dim());
    let v = engine.variety();
    for m in 0..=3 * n + 2 {
        eq(
            || format!("{v}: sigma2 node m={m} expanded vs assembled"),
            core(engine.sigma2_node(m))?,
            core(engine.sigma2_node_alt(m))?,
        )?;
    }
    Ok(3 * n as usize + 3)
}

fn beyond_nodes(engine: &SecantEngine) -> Outcome {
    let n = i64::from(engine.variety().dim());
    let v = engine.variety();
    let p1 = core(engine.sigma1_polynomial())?;
    for m in [2 * n + 2, 2 * n + 3] {
        eq(
            || format!("{v}: sigma1 node m={m} vs polynomial at ℓ={}", 2 * m + 1),
            core(engine.sigma1_node(m))?,
            p1.eval(2 * m + 1),
        )?;
    }
    let p2 = core(engine.sigma2_polynomial())?;
    let m = 3 * n + 3;
    eq(
        || format!("{v}: sigma2 node m={m} vs polynomial at ℓ={}", 3 * m + 2),
        core(engine.sigma2_node(m))?,
        p2.eval(3 * m + 2),
    )?;
    Ok(3)
}

fn binom(x: i64, k: i64) -> Rational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= x - i;
        den *= i + 1;
    }
    Rational::new(num, den)
}

/// Rational normal curves: Hilbert polynomials of catalecticant varieties.
fn oracles() -> Outcome {
    type Oracle = fn(i64) -> Rational;
    let cases: [(u32, SecantIndex, Oracle); 4] = [
        (3, SecantIndex::First, |l| binom(l + 3, 3)),
        (4, SecantIndex::First, |l| binom(l + 4, 4) - binom(l + 1, 4)),
        (5, SecantIndex::Second, |l| binom(l + 5, 5)),
        (6, SecantIndex::Second, |l| binom(l + 6, 6) - binom(l + 2, 6)),
    ];
    let mut n = 0;
    for (d, secant, oracle) in cases {
        let e = SecantEngine::new(curve(0, d));
        let p = core(e.polynomial(secant))?;
        // More points than the degree, so agreement is polynomial identity.
        for ell in 0..=12 {
            eq(
                || format!("curve(0,{d}) secant {} at ℓ={ell} vs catalecticant", secant.as_u8()),
                p.eval(ell),
                oracle(ell),
            )?;
            n += 1;
        }
    }
    Ok(n)
}

fn anchors(engine: &SecantEngine) -> Outcome {
    let v = engine.variety();
    let l1 = engine.data().l(1);
    eq(|| format!("{v}: P_1(1) vs l(1)"), core(engine.sigma1_polynomial())?.eval(1), l1.clone())?;
    eq(|| format!("{v}: P_2(1) vs l(1)"), core(engine.sigma2_polynomial())?.eval(1), l1)?;
    Ok(2)
}

fn euler(engine: &SecantEngine) -> Outcome {
    for ell in 1..=6 {
        core(euler_check(engine, Points::Two, ell))?;
    }
    Ok(6)
}

fn table_structure(engine: &SecantEngine) -> Outcome {
    let v = engine.variety();
    let ells: Vec<i64> = (1..=6).collect();
    let mut n = 0;
    for points in [Points::Two, Points::Three] {
        let t = core(CohomologyTable::build(engine, points, &ells))?;
        core(t.check_entries())?;
        let top = t.top_degree();
        for ell in 1..=6 {
            for i in top + 1..=top + 3 {
                if !t.get(i, ell).is_zero() {
                    return Err(format!("{v}: h^{i} nonzero above top degree {top} at ℓ={ell}"));
                }
            }
            if let VarietySpec::Curve { genus, degree } = v {
                let g = i64::from(*genus);
                let l = q(ell * i64::from(*degree) + 1 - g);
                let (row, coeff) = match points {
                    Points::Two => (1, g),
                    Points::Three => (2, g * (g - 1) / 2),
                };
                eq(
                    || format!("{v}: k={} row {row} at ℓ={ell}", points.as_u8()),
                    t.get(row, ell),
                    q(coeff) * l,
                )?;
            }
            n += 1;
        }
    }
    Ok(n)
}

fn degree_law(max_genus: u32, span: u32) -> Outcome {
    let mut n = 0;
    for g in 0..=max_genus {
        for d in 2 * g + 4..=2 * g + 4 + span {
            let e = SecantEngine::new(curve(g, d));
            let r = core(e.report(SecantIndex::First))?;
            if !r.positivity.is_ok() {
                continue;
            }
            eq(
                || format!("curve(g={g},d={d}): deg Σ₁ vs C(d-1,2)-g"),
                r.degree,
                binom(i64::from(d) - 1, 2) - q(i64::from(g)),
            )?;
            n += 1;
        }
    }
    Ok(n)
}

/// Recomputes every envelope in a cache directory and compares payloads.
pub fn audit_cache(dir: &Path) -> Outcome {
    let mut paths: Vec<_> = match fs::read_dir(dir) {
        Ok(rd) => rd
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect(),
        Err(e) => return Err(format!("reading cache {}: {e}", dir.display())),
    };
    paths.sort();
    let results: Vec<Outcome> = paths
        .par_iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let stored = ResultEnvelope::from_json(&text)
                .map_err(|e| format!("{}: unreadable envelope: {e}", p.display()))?;
            let engine = SecantEngine::new(stored.variety.clone());
            let fresh = core(compute(&engine, &stored.computation))?;
            if fresh.payload != stored.payload || fresh.positivity != stored.positivity {
                return Err(format!(
                    "{}: {} {} stored {} but recomputed {}",
                    p.display(),
                    stored.variety,
                    stored.computation.name(),
                    serde_json::to_string(&stored.payload).unwrap_or_default(),
                    serde_json::to_string(&fresh.payload).unwrap_or_default(),
                ));
            }
            Ok(1)
        })
        .collect();
    first_failure(results)
}

fn over<F>(engines: &[SecantEngine], f: F) -> Outcome
where
    F: Fn(&SecantEngine) -> Outcome + Sync + Send,
{
    first_failure(engines.par_iter().map(f).collect())
}

/// Runs a suite; `cache` adds a recomputation audit of that directory.
pub fn run(suite: Suite, cache: Option<&Path>) -> Vec<CheckResult> {
    let (corpus, max_sym, genus, span) = match suite {
        Suite::Default => (default_corpus(), 6, 3, 5),
        Suite::Extended => (extended_corpus(), 8, 5, 8),
    };
    let engines: Vec<SecantEngine> = corpus.into_iter().map(SecantEngine::new).collect();
    let products: Vec<&SecantEngine> = engines
        .iter()
        .filter(|e| matches!(e.variety(), VarietySpec::ProductProj { .. }))
        .collect();
    let mut checks: Vec<(&str, Outcome)> = vec![
        (
            "path-equivalence",
            first_failure(products.par_iter().map(|e| path_equivalence(e, max_sym, -3..=8)).collect()),
        ),
        ("curve-consistency", curve_consistency(6, max_sym, -3..=8)),
        ("dual-path", over(&engines, dual_path)),
        ("polynomiality-beyond-nodes", over(&engines, beyond_nodes)),
        ("oracle", oracles()),
        ("anchors", over(&engines, anchors)),
        ("euler-check", over(&engines, euler)),
        ("table-structure", over(&engines, table_structure)),
        ("degree-law", degree_law(genus, span)),
    ];
    if let Some(dir) = cache {
        if dir.is_dir() {
            checks.push(("cache-audit", audit_cache(dir)));
        }
    }
    checks
        .into_iter()
        .map(|(name, outcome)| CheckResult { name: name.to_string(), outcome })
        .collect()
}
