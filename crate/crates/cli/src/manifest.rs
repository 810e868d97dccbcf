//! Batch manifests.
//!
//! ```text
//! # comment
//! [entry]
//! space = curve
//! genus = 0
//! degree = 4
//! computations = poly1, table2
//! ell = 1..6
//! ```
//!
//! `pps` entries use `dims = 1,1` and `degrees = 4,4`. `secant = 1|2` selects
//! the secant index for `degree` (default 1). `ell` defaults to `1..6`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use secant_core::{SecantIndex, VarietySpec};

use crate::envelope::{Computation, EllRange};

#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub line: usize,
    pub variety: VarietySpec,
    pub computations: Vec<Computation>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Manifest {
    pub entries: Vec<Entry>,
}

const KEYS: &[&str] = &[
    "space",
    "genus",
    "degree",
    "dims",
    "degrees",
    "computations",
    "ell",
    "secant",
];

pub fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().with_context(|| format!("bad integer {x:?}")))
        .collect()
}

fn build(line: usize, kv: &BTreeMap<String, String>) -> Result<Entry> {
    let get = |k: &str| kv.get(k).map(String::as_str).ok_or_else(|| anyhow!("missing key `{k}`"));
    let variety = match get("space")? {
        "curve" => VarietySpec::curve(get("genus")?.parse()?, get("degree")?.parse()?)?,
        "pps" => VarietySpec::product(parse_list(get("dims")?)?, parse_list(get("degrees")?)?)?,
        other => bail!("unknown space `{other}`"),
    };
    let ell: EllRange = match kv.get("ell") {
        Some(s) => s.parse().map_err(|e: String| anyhow!(e))?,
        None => EllRange::default(),
    };
    let secant = match kv.get("secant") {
        Some(s) => SecantIndex::try_from(s.parse::<u8>()?)?,
        None => SecantIndex::First,
    };
    let mut computations = Vec::new();
    for name in get("computations")?.split(',').map(str::trim) {
        computations.push(match name {
            "poly1" => Computation::Poly1,
            "poly2" => Computation::Poly2,
            "table2" => Computation::Table2 { ell },
            "table3" => Computation::Table3 { ell },
            "degree" => Computation::Degree { secant },
            other => bail!("unknown computation `{other}`"),
        });
    }
    Ok(Entry { line, variety, computations })
}

pub fn parse(text: &str) -> Result<Manifest> {
    let mut entries = Vec::new();
    let mut current: Option<(usize, BTreeMap<String, String>)> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[entry]" {
            if let Some((start, kv)) = current.take() {
                entries.push(build(start, &kv).with_context(|| format!("entry at line {start}"))?);
            }
            current = Some((lineno, BTreeMap::new()));
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| anyhow!("line {lineno}: expected `key = value`"))?;
        let (k, v) = (k.trim(), v.trim());
        if !KEYS.contains(&k) {
            bail!("line {lineno}: unknown key `{k}`");
        }
        let (_, kv) = current
            .as_mut()
            .ok_or_else(|| anyhow!("line {lineno}: key outside an [entry] block"))?;
        if kv.insert(k.to_string(), v.to_string()).is_some() {
            bail!("line {lineno}: duplicate key `{k}`");
        }
    }
    if let Some((start, kv)) = current {
        entries.push(build(start, &kv).with_context(|| format!("entry at line {start}"))?);
    }
    Ok(Manifest { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_blocks() {
        let m = parse(
            "# sweep\n[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1, table2\nell = 2..3\n\n[entry]\nspace = pps\ndims = 1,1\ndegrees = 4,4\ncomputations = degree\nsecant = 2\n",
        )
        .unwrap();
        assert_eq!(m.entries.len(), 2);
        assert_eq!(
            m.entries[0].computations,
            vec![Computation::Poly1, Computation::Table2 { ell: EllRange { start: 2, end: 3 } }]
        );
        assert_eq!(
            m.entries[1].computations,
            vec![Computation::Degree { secant: SecantIndex::Second }]
        );
    }

    #[test]
    fn empty_and_comment_only() {
        assert!(parse("").unwrap().entries.is_empty());
        assert!(parse("# nothing\n\n").unwrap().entries.is_empty());
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("space = curve\n").is_err());
        assert!(parse("[entry]\nspace = curve\ngenus = 0\n").is_err());
        assert!(parse("[entry]\nfoo = 1\n").is_err());
        assert!(parse("[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly9\n").is_err());
        assert!(parse("[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = table2\nell = 0..3\n").is_err());
        assert!(parse("[entry]\nnot a pair\n").is_err());
    }
}
