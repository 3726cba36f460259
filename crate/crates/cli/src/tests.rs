use super::run;
use serde_json::Value;
use std::path::Path;

fn pinlab(dir: &Path, args: &[&str]) -> (u8, String) {
    let mut argv = vec![
        "pinlab".to_string(),
        "--out".into(),
        dir.to_string_lossy().into_owned(),
    ];
    argv.extend(args.iter().map(|s| s.to_string()));
    let (code, msg) = run(argv);
    (code, msg.unwrap_or_default())
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn one_dimension_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let (code, msg) = pinlab(dir.path(), &["identity", "--d", "1", "--f", "gaussian"]);
    assert_eq!(code, 2);
    assert!(msg.contains("d ≥ 2 required"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(pinlab(d, &["pinned", "--measure", "triangle"]).0, 2);
    assert_eq!(pinlab(d, &["pinned", "--measure", "disk:m=3"]).0, 2);
    assert_eq!(pinlab(d, &["identity", "--f", "cosine"]).0, 2);
    assert_eq!(pinlab(d, &["identity", "--no-such-flag"]).0, 2);
    assert_eq!(pinlab(d, &["decay", "--window", "2"]).0, 2);
    let cfg = d.join("bad.json");
    std::fs::write(&cfg, r#"{"bandwith": 0.1}"#).unwrap();
    let (code, msg) = pinlab(d, &["--config", cfg.to_str().unwrap(), "pinned"]);
    assert_eq!(code, 2);
    assert!(msg.contains("bandwith"));
}

#[test]
fn precondition_failure_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let (code, msg) = pinlab(
        dir.path(),
        &[
            "pinned",
            "--measure",
            "cantor:d=2,ratio=0.25,depth=3",
            "--bandwidth",
            "0.0001",
        ],
    );
    assert_eq!(code, 3);
    assert!(msg.contains("minimum valid value"));
}

#[test]
fn tolerance_failure_exits_one_and_still_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _) = pinlab(
        dir.path(),
        &[
            "mattila",
            "--measure",
            "cantor:d=2,ratio=0.25,depth=3",
            "--rmax",
            "2",
            "--expect",
            "0",
            "--tol",
            "1e-9",
        ],
    );
    assert_eq!(code, 1);
    assert_eq!(
        json(&dir.path().join("mattila.json"))["pass"],
        Value::Bool(false)
    );
}

#[test]
fn flags_override_config_and_config_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"pinned": {"measure": "circle:n=1024", "bandwidth": 0.05}, "thresholds": {"d": 5}}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    assert_eq!(
        pinlab(
            dir.path(),
            &["--config", c, "pinned", "--bandwidth", "0.03"]
        )
        .0,
        0
    );
    let r = json(&dir.path().join("pinned.json"));
    assert_eq!(r["config"]["measure"], "circle:n=1024");
    assert_eq!(r["config"]["bandwidth"], 0.03);
    assert_eq!(pinlab(dir.path(), &["--config", c, "thresholds"]).0, 0);
    assert_eq!(json(&dir.path().join("thresholds.json"))["config"]["d"], 5);
}

#[test]
fn outputs_carry_hash_and_versions() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        pinlab(
            dir.path(),
            &["pinned", "--measure", "circle:n=512", "--bandwidth", "0.05"]
        )
        .0,
        0
    );
    let r = json(&dir.path().join("pinned.json"));
    let hash = r["config_hash"].as_str().unwrap().to_string();
    assert_eq!(hash.len(), 64);
    assert_eq!(r["constants_version"], pinlab::constants::CONSTANTS_VERSION);
    assert_eq!(r["artifact_version"], env!("CARGO_PKG_VERSION"));
    let csv = std::fs::read_to_string(dir.path().join("pinned.csv")).unwrap();
    assert!(!csv.contains('\r'));
    assert!(csv.contains(&format!("# config_hash: {hash}")));
    assert!(csv.contains("# constants_version: "));
    assert_eq!(
        csv.lines().find(|l| !l.starts_with('#')).unwrap(),
        "r,value"
    );

    let other = tempfile::tempdir().unwrap();
    pinlab(
        other.path(),
        &["pinned", "--measure", "circle:n=512", "--bandwidth", "0.06"],
    );
    assert_ne!(
        json(&other.path().join("pinned.json"))["config_hash"]
            .as_str()
            .unwrap(),
        hash
    );
}

#[test]
fn output_directory_comes_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    std::env::set_var("PINLAB_OUT", dir.path());
    let (code, _) = run(["pinlab", "thresholds", "--d", "3"]);
    std::env::remove_var("PINLAB_OUT");
    assert_eq!(code, 0);
    let r = json(&dir.path().join("thresholds.json"));
    assert!((r["result"]["pinned"].as_f64().unwrap() - (1.5 + 1.0 / 3.0)).abs() < 1e-12);
}

#[test]
fn identity_examples() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(
        pinlab(
            d,
            &["identity", "--d", "3", "--f", "gaussian", "--x", "0,0,0.7", "--rmax", "6"]
        )
        .0,
        0
    );
    let r = json(&d.join("identity.json"));
    assert!(r["result"]["cases"][0]["rel_err"].as_f64().unwrap() <= 1e-6);
    assert!(d.join("identity_profile.csv").exists());

    assert_eq!(pinlab(d, &["identity", "--d", "2", "--f", "two-bump"]).0, 0);
    let r = json(&d.join("identity.json"));
    assert!(r["result"]["cases"][0]["rel_err"].as_f64().unwrap() <= 1e-5);
}

#[test]
fn frostman_and_chains_run() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(pinlab(d, &["frostman", "--max-constant", "4"]).0, 0);
    assert_eq!(json(&d.join("frostman.json"))["result"]["report"]["s"], 1.0);
    let args = [
        "chains",
        "--measure",
        "cantor:d=2,ratio=0.25,depth=4",
        "--k",
        "1",
        "--samples",
        "1000,20000",
    ];
    assert_eq!(pinlab(d, &args).0, 0);
    let csv = std::fs::read_to_string(d.join("chains.csv")).unwrap();
    assert_eq!(csv.lines().filter(|l| !l.starts_with('#')).count(), 3);
}

#[test]
fn help_is_not_an_error() {
    assert_eq!(run(["pinlab", "--help"]).0, 0);
}
