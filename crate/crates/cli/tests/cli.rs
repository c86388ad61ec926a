use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn lapbie(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lapbie")).args(args).output().unwrap()
}

/// A copy of a shipped config with a smaller node count.
fn scaled(dir: &Path, name: &str, nodes: usize) -> PathBuf {
    let text = std::fs::read_to_string(configs().join(name)).unwrap();
    let mut value: serde_json::Value = serde_json::from_str(&text).unwrap();
    value["nodes_per_component"] = nodes.into();
    let path = dir.join(name);
    std::fs::write(&path, value.to_string()).unwrap();
    path
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_passes_and_prints_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scaled(dir.path(), "annulus_robin.json", 64);
    let out = lapbie(&["solve", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    assert_eq!(r["verb"], "solve");
    assert_eq!(r["path"], "regular");
}

#[test]
fn every_verb_on_every_config() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "annulus_robin.json",
        "annulus_neumann.json",
        "annulus_dirichlet.json",
        "exceptional_robin.json",
    ] {
        let cfg = scaled(dir.path(), name, 64);
        let cfg = cfg.to_str().unwrap();
        for args in [
            vec!["solve", cfg],
            vec!["identities", cfg],
            vec!["detect-exceptional", cfg],
            vec!["oracle", cfg],
            vec!["convergence", cfg, "--nodes", "16,32,64"],
        ] {
            let out = lapbie(&args);
            assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

#[test]
fn exceptional_detection_output() {
    let out = lapbie(&["detect-exceptional", configs().join("exceptional_robin.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert!(r["metrics"]["robin_constant"].as_f64().unwrap().abs() < 1e-10);
    let out = lapbie(&["detect-exceptional", configs().join("annulus_robin.json").to_str().unwrap()]);
    let r = report(&out);
    assert!((r["metrics"]["robin_constant"].as_f64().unwrap() - 0.1103178).abs() < 1e-7);
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scaled(dir.path(), "annulus_robin.json", 16);
    let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cfg).unwrap()).unwrap();
    value["tolerances"] = serde_json::json!({"interior_error": 1e-300});
    std::fs::write(&cfg, value.to_string()).unwrap();
    let out = lapbie(&["--quiet", "solve", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().any(|l| l.starts_with("FAIL interior_max_error")));
    assert!(String::from_utf8_lossy(&out.stderr).contains("interior_max_error"));
}

#[test]
fn errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    let text = std::fs::read_to_string(configs().join("annulus_robin.json")).unwrap();
    std::fs::write(&bad, text.replace("\"radius\": 0.5", "\"radius\": 2.5")).unwrap();
    let out = lapbie(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));

    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(lapbie(&["solve", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lapbie(&["solve", "/nonexistent/config.json"]).status.code(), Some(2));
    assert_ne!(lapbie(&["frobnicate"]).status.code(), Some(0));
}

#[test]
fn report_and_csv_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = scaled(dir.path(), "annulus_dirichlet.json", 32);
    let mut value: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cfg).unwrap()).unwrap();
    let csv = dir.path().join("csv");
    value["output"] = serde_json::json!({"csv_dir": csv});
    std::fs::write(&cfg, value.to_string()).unwrap();
    let path = dir.path().join("out/report.json");
    std::fs::create_dir_all(path.parent().unwrap()).unwrap();
    let out = lapbie(&["solve", cfg.to_str().unwrap(), "--report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let written: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(written, report(&out));
    for name in ["nodes.csv", "density.csv", "probes.csv"] {
        let text = std::fs::read_to_string(csv.join(name)).unwrap();
        assert_eq!(text.lines().next(), Some("x1,x2,value"), "{name}");
        assert!(text.lines().count() > 1);
    }
}

#[test]
fn convergence_table() {
    let out = lapbie(&[
        "convergence",
        configs().join("annulus_robin.json").to_str().unwrap(),
        "--nodes",
        "16,32,64",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows = report(&out)["convergence"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[2]["nodes_per_component"], 64);
}
