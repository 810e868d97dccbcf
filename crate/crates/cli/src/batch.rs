//! Manifest-driven batch runs with an optional on-disk cache.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use secant_core::{SecantEngine, VarietySpec};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::compute::compute;
use crate::envelope::{Computation, ResultEnvelope, TOOL_VERSION};
use crate::manifest::Manifest;

fn digest<T: Serialize>(value: &T) -> String {
    let canonical = serde_json::to_string(value).expect("key serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Output file name: computation id plus a hash of `(variety, computation)`.
pub fn output_name(variety: &VarietySpec, computation: &Computation) -> String {
    let h = digest(&(variety, computation));
    format!("{}-{}.json", computation.name(), &h[..16])
}

/// Cache file name; includes the tool version so a new build never reads
/// results written by an older one.
pub fn cache_name(variety: &VarietySpec, computation: &Computation) -> String {
    format!("{}.json", digest(&(TOOL_VERSION, variety, computation)))
}

#[derive(Debug)]
pub enum Status {
    Computed(PathBuf),
    Cached(PathBuf),
    Failed(String),
}

#[derive(Debug)]
pub struct JobReport {
    pub variety: VarietySpec,
    pub computation: Computation,
    pub status: Status,
}

fn read_cache(path: &Path, variety: &VarietySpec, computation: &Computation) -> Option<String> {
    let text = fs::read_to_string(path).ok()?;
    let env = ResultEnvelope::from_json(&text).ok()?;
    let hit = env.tool_version == TOOL_VERSION
        && &env.variety == variety
        && &env.computation == computation;
    hit.then(|| env.to_json())
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn write_atomic(path: &Path, bytes: &str) -> std::io::Result<()> {
    let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
    let tmp = path.with_extension(format!("tmp{}-{n}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

fn run_job(
    engine: &SecantEngine,
    computation: &Computation,
    out_dir: &Path,
    cache: Option<&Path>,
) -> Status {
    let variety = engine.variety();
    let out = out_dir.join(output_name(variety, computation));
    let cache_path = cache.map(|c| c.join(cache_name(variety, computation)));
    if let Some(cp) = &cache_path {
        if let Some(bytes) = read_cache(cp, variety, computation) {
            return match write_atomic(&out, &bytes) {
                Ok(()) => Status::Cached(out),
                Err(e) => Status::Failed(format!("writing {}: {e}", out.display())),
            };
        }
    }
    let env = match compute(engine, computation) {
        Ok(env) => env,
        Err(e) => return Status::Failed(e.to_string()),
    };
    let bytes = env.to_json();
    if let Err(e) = write_atomic(&out, &bytes) {
        return Status::Failed(format!("writing {}: {e}", out.display()));
    }
    if let Some(cp) = &cache_path {
        if let Err(e) = write_atomic(cp, &bytes) {
            return Status::Failed(format!("writing cache {}: {e}", cp.display()));
        }
    }
    Status::Computed(out)
}

/// Runs every `(entry, computation)` job. Entries run in parallel; the
/// returned reports follow manifest order.
pub fn run(manifest: &Manifest, out_dir: &Path, cache: Option<&Path>) -> std::io::Result<Vec<JobReport>> {
    fs::create_dir_all(out_dir)?;
    if let Some(c) = cache {
        fs::create_dir_all(c)?;
    }
    let per_entry: Vec<Vec<JobReport>> = manifest
        .entries
        .par_iter()
        .map(|entry| {
            let engine = SecantEngine::new(entry.variety.clone());
            entry
                .computations
                .iter()
                .map(|c| JobReport {
                    variety: entry.variety.clone(),
                    computation: c.clone(),
                    status: run_job(&engine, c, out_dir, cache),
                })
                .collect()
        })
        .collect();
    Ok(per_entry.into_iter().flatten().collect())
}
