use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circuit-growth"))
}

fn configs() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/configs"))
}

#[test]
fn validate_reports_findings_as_json() {
    let out = bin()
        .args(["validate", "--config"])
        .arg(configs().join("invalid_gate_set.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    let findings = err["findings"].as_array().unwrap();
    assert!(findings
        .iter()
        .any(|f| f.as_str().unwrap().contains("not inverse-closed")));

    let out = bin()
        .args(["validate", "--config"])
        .arg(configs().join("invalid_architecture.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("slot indices must differ"));

    let out = bin()
        .args(["validate", "--config"])
        .arg(configs().join("growth_brickwork3.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn run_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = bin()
        .args(["dimension-curve", "--config"])
        .arg(configs().join("dimension_single2.json"))
        .arg("--out")
        .arg(dir.path())
        .args(["--threads", "2"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(dir.path().join("curve.csv")).unwrap();
    assert!(csv.starts_with("# circuit-growth dimension-curve config_hash="));
    assert!(csv.contains("\n1,15,5,0,true,1\n"));
    let verdict = std::fs::read_to_string(dir.path().join("verdict.txt")).unwrap();
    assert!(verdict.contains("PASS eq2_pass"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("summary.json")).unwrap())
            .unwrap();
    for field in [
        "eq2_pass",
        "monotone_pass",
        "subadditive_pass",
        "saturation_k",
        "c2_fit",
    ] {
        assert!(summary.get(field).is_some(), "missing {field}");
    }
}

#[test]
fn seed_override_changes_output() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for (dir, seed) in [(&a, "11"), (&b, "12")] {
        let out = bin()
            .args(["walk-complexity", "--config"])
            .arg(configs().join("walk_lattice2.json"))
            .arg("--out")
            .arg(dir.path())
            .args(["--seed", seed])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
    }
    let read = |d: &tempfile::TempDir| std::fs::read_to_string(d.path().join("walk.csv")).unwrap();
    assert_ne!(read(&a), read(&b));
}

#[test]
fn censoring_above_threshold_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(
        &cfg,
        r#"{"kind": "walk-complexity", "backend": "lattice", "lattice_dim": 1,
            "k_list": [40], "trials": 20, "radius_cap": 1, "seed": 1}"#,
    )
    .unwrap();
    let out = bin()
        .args(["walk-complexity", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let csv = std::fs::read_to_string(dir.path().join("out/walk.csv")).unwrap();
    assert!(csv.contains(",,true,"));
}

#[test]
fn kind_mismatch_is_a_config_error() {
    let out = bin()
        .args(["return-prob", "--config"])
        .arg(configs().join("walk_lattice2.json"))
        .arg("--out")
        .arg(tempfile::tempdir().unwrap().path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
