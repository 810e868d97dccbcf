use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use secant_cli::batch::output_name;
use secant_cli::envelope::{Computation, Payload, ResultEnvelope};
use secant_cli::manifest;
use secant_core::{SecantIndex, VarietySpec};

fn secant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_secant"))
        .args(args)
        .env_remove("SECANT_CACHE")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_manifest(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("m.manifest");
    fs::write(&p, text).unwrap();
    p
}

fn batch(manifest: &Path, out: &Path, cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_secant"));
    cmd.arg("batch").arg(manifest).arg("--out").arg(out).env_remove("SECANT_CACHE");
    if let Some(c) = cache {
        cmd.arg("--cache").arg(c);
    }
    cmd.output().unwrap()
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

#[test]
fn poly_text_quartic_curve() {
    let o = secant(&["poly", "--space", "curve", "--genus", "0", "--degree", "4", "--secant", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "dim 3, degree 3, P(ℓ) = (1/2)ℓ³ + (3/2)ℓ² + 2ℓ + 1");
}

#[test]
fn poly_json_twisted_cubic() {
    let o = secant(&["poly", "--space", "curve", "--genus", "0", "--degree", "3", "--secant", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let env = ResultEnvelope::from_json(&stdout(&o)).unwrap();
    match env.payload {
        Payload::Polynomial { coefficients, fills_ambient, .. } => {
            let c: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
            assert_eq!(c, ["1/1", "11/6", "1/1", "1/6"]);
            assert!(fills_ambient);
        }
        other => panic!("unexpected payload {other:?}"),
    }
}

#[test]
fn strict_positivity_exit_2() {
    let o = secant(&["poly", "--space", "pps", "--dims", "2", "--degrees", "1", "--secant", "2", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    // Without --strict it is only a warning.
    let o = secant(&["poly", "--space", "pps", "--dims", "2", "--degrees", "1", "--secant", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}

#[test]
fn invalid_flags_exit_1() {
    for args in [
        &["poly", "--bogus"][..],
        &["poly", "--space", "curve", "--genus", "0"],
        &["poly", "--space", "curve", "--genus", "0", "--degree", "4", "--secant", "3"],
        &["poly", "--space", "pps", "--dims", "1,1", "--degrees", "4"],
        &["poly", "--space", "torus", "--genus", "1", "--degree", "4"],
        &["table", "--space", "curve", "--genus", "0", "--degree", "4", "--k", "4", "--ell", "1..2"],
    ] {
        assert_eq!(secant(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn table_rows() {
    let o = secant(&["table", "--space", "curve", "--genus", "0", "--degree", "4", "--k", "2", "--ell", "3..3"]);
    assert_eq!(stdout(&o), "i,ell,dim\n0,3,34\n1,3,0\n");
    let o = secant(&["table", "--space", "curve", "--genus", "2", "--degree", "9", "--k", "2", "--ell", "1..2"]);
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines[..3], ["i,ell,dim", "0,1,8", "1,1,16"]);
    assert_eq!(lines.len(), 5);
    let o = secant(&["table", "--space", "pps", "--dims", "1,1", "--degrees", "4,4", "--k", "3", "--ell", "1..3"]);
    let rows: Vec<Vec<String>> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    for ell in 1..=3 {
        let nonzero = rows.iter().filter(|r| r[1] == ell.to_string() && r[2] != "0").count();
        assert_eq!(nonzero, 1);
    }
}

#[test]
fn table_nonpositive_ell_exit_1() {
    for ell in ["0..3", "-2..1", "0"] {
        let o = secant(&["table", "--space", "curve", "--genus", "0", "--degree", "4", "--k", "2", "--ell", ell]);
        assert_eq!(o.status.code(), Some(1), "{ell}");
    }
}

#[test]
fn degree_and_nodes() {
    let o = secant(&["degree", "--space", "curve", "--genus", "0", "--degree", "6", "--secant", "2", "--format", "text"]);
    assert_eq!(stdout(&o).trim(), "dim 5, degree 4");
    let o = secant(&["nodes", "--space", "curve", "--genus", "0", "--degree", "4", "--format", "text"]);
    assert_eq!(stdout(&o), "ell,value\n1,5\n3,34\n5,111\n7,260\n");
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["poly", "--space", "pps", "--dims", "2", "--degrees", "8", "--secant", "2"];
    let one = secant(&[&["--threads", "1"][..], &args].concat());
    let four = secant(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn batch_oracle_files_and_warm_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(
        tmp.path(),
        "[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1\n\n[entry]\nspace = curve\ngenus = 0\ndegree = 6\ncomputations = poly2\n",
    );
    let cache = tmp.path().join("cache");
    let out1 = tmp.path().join("out1");
    let o = batch(&m, &out1, Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("2 computed, 0 from cache"));
    let files = read_dir_sorted(&out1);
    assert_eq!(files.len(), 2);

    let quartic = VarietySpec::curve(0, 4).unwrap();
    let text = fs::read_to_string(out1.join(output_name(&quartic, &Computation::Poly1))).unwrap();
    let env = ResultEnvelope::from_json(&text).unwrap();
    let Payload::Polynomial { coefficients, .. } = env.payload else { panic!() };
    let c: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
    assert_eq!(c, ["1/1", "2/1", "3/2", "1/2"]);

    let sextic = VarietySpec::curve(0, 6).unwrap();
    let text = fs::read_to_string(out1.join(output_name(&sextic, &Computation::Poly2))).unwrap();
    let Payload::Polynomial { coefficients, degree, .. } = ResultEnvelope::from_json(&text).unwrap().payload else {
        panic!()
    };
    assert_eq!(degree.to_string(), "4/1");
    assert_eq!(coefficients.len(), 6);

    let out2 = tmp.path().join("out2");
    let o = batch(&m, &out2, Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 computed, 2 from cache"));
    assert_eq!(files, read_dir_sorted(&out2));
}

#[test]
fn batch_uses_env_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(tmp.path(), "[entry]\nspace = curve\ngenus = 1\ndegree = 8\ncomputations = table2\nell = 1..2\n");
    let cache = tmp.path().join("envcache");
    let o = Command::new(env!("CARGO_BIN_EXE_secant"))
        .arg("batch")
        .arg(&m)
        .arg("--out")
        .arg(tmp.path().join("out"))
        .env("SECANT_CACHE", &cache)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(&cache).unwrap().count(), 1);
}

#[test]
fn batch_empty_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(tmp.path(), "# nothing to do\n");
    let out = tmp.path().join("out");
    let o = batch(&m, &out, None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(&out).unwrap().count(), 0);
}

#[test]
fn batch_unparseable_manifest_exit_1() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(tmp.path(), "[entry]\nspace = curve\ngenus = zero\n");
    assert_eq!(batch(&m, &tmp.path().join("out"), None).status.code(), Some(1));
    let missing = tmp.path().join("absent.manifest");
    assert_eq!(batch(&missing, &tmp.path().join("out"), None).status.code(), Some(1));
}

#[test]
fn batch_partial_failure_exit_4() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(
        tmp.path(),
        "[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1, poly2\n",
    );
    let out = tmp.path().join("out");
    // Occupy one target file name with a directory so that write fails.
    let v = VarietySpec::curve(0, 4).unwrap();
    fs::create_dir_all(out.join(output_name(&v, &Computation::Poly2))).unwrap();
    let o = batch(&m, &out, None);
    assert_eq!(o.status.code(), Some(4));
    let s = stdout(&o);
    assert!(s.contains("computed curve(g=0,d=4) poly1"));
    assert!(s.contains("failed curve(g=0,d=4) poly2"));
}

#[test]
fn verify_detects_corrupted_cache() {
    let tmp = tempfile::tempdir().unwrap();
    let m = write_manifest(tmp.path(), "[entry]\nspace = curve\ngenus = 0\ndegree = 4\ncomputations = poly1, degree\n");
    let cache = tmp.path().join("cache");
    assert_eq!(batch(&m, &tmp.path().join("out"), Some(&cache)).status.code(), Some(0));

    let cache_arg = cache.to_str().unwrap();
    let clean = secant(&["verify", "--cache", cache_arg]);
    assert_eq!(clean.status.code(), Some(0), "{}", stdout(&clean));
    assert!(stdout(&clean).contains("PASS cache-audit"));

    let entry = fs::read_dir(&cache)
        .unwrap()
        .map(|e| e.unwrap().path())
        .find(|p| fs::read_to_string(p).unwrap().contains("\"poly1\""))
        .unwrap();
    let text = fs::read_to_string(&entry).unwrap().replacen("\"3/2\"", "\"5/2\"", 1);
    fs::write(&entry, text).unwrap();
    let o = secant(&["verify", "--cache", cache_arg]);
    assert_eq!(o.status.code(), Some(3));
    let s = stdout(&o);
    assert!(s.contains("FAIL cache-audit"));
    assert!(s.contains("\"5/2\"") && s.contains("\"3/2\""));
}

#[test]
fn envelope_round_trip() {
    let fixtures = [
        (VarietySpec::curve(0, 4).unwrap(), Computation::Poly1),
        (VarietySpec::curve(2, 9).unwrap(), Computation::Poly2),
        (VarietySpec::curve(1, 8).unwrap(), Computation::Table3 { ell: "1..4".parse().unwrap() }),
        (VarietySpec::product(vec![2], vec![8]).unwrap(), Computation::Table2 { ell: "2..3".parse().unwrap() }),
        (VarietySpec::product(vec![1, 1], vec![4, 4]).unwrap(), Computation::Degree { secant: SecantIndex::Second }),
        (VarietySpec::product(vec![2], vec![1]).unwrap(), Computation::Nodes { secant: SecantIndex::Second }),
    ];
    for (v, c) in fixtures {
        let env = secant_cli::compute_fresh(&v, &c).unwrap();
        let json = env.to_json();
        let back = ResultEnvelope::from_json(&json).unwrap();
        assert_eq!(back, env);
        assert_eq!(back.to_json(), json);
    }
}

#[test]
fn shipped_manifest_parses() {
    let text = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("manifests/corpus.manifest")).unwrap();
    let m = manifest::parse(&text).unwrap();
    assert_eq!(m.entries.len(), 9);
}
