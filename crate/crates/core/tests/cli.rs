use std::path::PathBuf;

use serde_json::Value;
use twisted_degree::cli::{run, CACHE_ENV};

fn twdeg(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("twdeg").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

/// Compare with a stored report; `UPDATE_GOLDEN=1` rewrites it.
fn check_golden(name: &str, text: &str) {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("{} missing; run with UPDATE_GOLDEN=1", path.display()));
    assert!(want == text, "{name} differs from the stored report");
}

#[test]
fn disk_reports_match_golden_files() {
    for (preset, file) in [
        ("single", "disk-single.json"),
        ("coupled", "disk-coupled.json"),
    ] {
        let (code, out, err) = twdeg(&["disk-example", "--preset", preset]);
        assert_eq!(code, 0, "{err}");
        check_golden(file, &out);
    }
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["disk-example", "--preset", "coupled"][..],
        &["mode-classes", "--gamma1", "d4xz2", "--mode", "1"],
        &["group", "--spec", "d4xz2"],
    ] {
        let first = twdeg(args);
        let second = twdeg(args);
        assert_eq!(first.0, 0);
        assert!(first == second, "{args:?}");
    }
}

#[test]
fn fresh_reports_validate_and_tampered_ones_do_not() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = twdeg(&["disk-example", "--output", p]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = twdeg(&["validate", p]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["valid"], true);

    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let t = doc["result"]["centers"][0]["crossing"].as_i64().unwrap();
    doc["result"]["centers"][0]["crossing"] = (t + 1).into();
    std::fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
    let (code, out, _) = twdeg(&["validate", p]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["valid"], false);
    assert!(v["result"]["failures"][0]
        .as_str()
        .unwrap()
        .starts_with("/result/centers/0"));
}

#[test]
fn errors_are_json_with_exit_codes() {
    let (code, out, err) = twdeg(&["no-such-command"]);
    assert_eq!((code, out.as_str()), (2, ""));
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["error"]["kind"], "usage");

    let (code, _, err) = twdeg(&["basic-degree", "--spec", "d4xz2", "--irrep", "nope"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&err).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("nope"));

    assert_eq!(twdeg(&["--help"]).0, 0);
}

#[test]
fn group_and_mode_counts() {
    let (_, out, _) = twdeg(&[
        "mode-classes",
        "--gamma1",
        "d4xz2",
        "--mode",
        "0",
        "--count",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["result"]["count"], 118);
    let (_, out, _) = twdeg(&["group", "--spec", "d4xz2", "--classes"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "group");
    assert_eq!(v["result"]["classes"].as_array().unwrap().len(), 27);
}

#[test]
fn zero_tables_are_cached() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var(CACHE_ENV, dir.path());
    let first = twdeg(&["disk-example", "--alpha-max", "3"]);
    let cached: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    let second = twdeg(&["disk-example", "--alpha-max", "3"]);
    std::env::remove_var(CACHE_ENV);
    assert_eq!(first.0, 0);
    assert!(
        cached
            .iter()
            .any(|f| f.to_string_lossy().starts_with("bessel-")),
        "{cached:?}"
    );
    assert!(first == second);
}
