use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn caloric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_caloric")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn spectrum_of_k2() {
    let o = caloric(&["spectrum", data("k2.graph").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<f64> = stdout(&o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(rows, vec![0.0, -2.0]);
}

#[test]
fn dirichlet_constants_of_k2() {
    let o = caloric(&["dirichlet", data("k2.graph").to_str().unwrap(), "--subset", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["lambda1"], 2.0);
    assert_eq!(v["poincare_constant"], 0.5);
    assert_eq!(v["epsilon_threshold"], 0.0625);
}

#[test]
fn parse_errors_name_the_line_and_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "graph 3\nedge 0 1 1\nedge 1 2 -1\n").unwrap();
    let o = caloric(&["spectrum", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(caloric(&[]).status.code(), Some(2));
    assert_eq!(caloric(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(caloric(&["spectrum", "/nonexistent/graph"]).status.code(), Some(2));
    let o = caloric(&["dirichlet", data("k2.graph").to_str().unwrap(), "--subset", "0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn finite_reports_growth_and_harmonic_part() {
    let k2 = data("k2.graph");
    let o = caloric(&["finite", k2.to_str().unwrap(), "--modes", "0:1,1:1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["class"], "exponential");
    for h in v["harmonic_part"].as_array().unwrap() {
        assert!((h.as_f64().unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }
    let o = caloric(&["finite", k2.to_str().unwrap(), "--modes", "0:2"]);
    assert_eq!(json(&o)["class"], "polynomial");
}

#[test]
fn verify_greens_passes() {
    let o = caloric(&["verify", "greens", "--count", "20", "--max-n", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let certs = json(&o);
    assert_eq!(certs.as_array().unwrap().len(), 20);
}

#[test]
fn impossible_tolerance_fails_with_exit_1() {
    let o = caloric(&["verify", "greens", "--count", "5", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_directory_receives_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let o = caloric(&[
        "frequency",
        data("p3.graph").to_str().unwrap(),
        "--grid",
        "0:1:50",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert!(!names.is_empty());
    assert!(names.iter().all(|n| !n.ends_with(".tmp")), "{names:?}");
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_caloric"))
            .args(["verify", "poincare", "--count", "30", "--seed", "5"])
            .env("CALORIC_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn strip_from_config() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("strip.json");
    let cfg = serde_json::json!({
        "graph": data("k2.graph"),
        "w0": [0],
        "radius": 8,
        "horizon": 16.0,
        "samples": 3,
    });
    std::fs::write(&config, cfg.to_string()).unwrap();
    let out = dir.path().join("out");
    let o = caloric(&["strip", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for name in ["q_table.csv", "dichotomy.json", "certificates.json"] {
        assert!(out.join(name).exists(), "{name}");
    }
    let certs: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.join("certificates.json")).unwrap()).unwrap();
    assert!(certs.as_array().unwrap().iter().all(|c| c["passed"] == true));
}
