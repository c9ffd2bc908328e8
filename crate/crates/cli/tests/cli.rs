use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_robin-bounds"))
}

fn run_config(dir: &Path, name: &str, body: &str) -> Output {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    bin().args(["run", "--config"]).arg(&path).env_remove("ROBIN_BOUNDS_CACHE").output().unwrap()
}

fn data_rows(csv: &str) -> Vec<&str> {
    csv.lines().skip(2).collect()
}

#[test]
fn fine_polygon_config_holds() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(
        dir.path(),
        "c.json",
        r#"{"shapes": [{"spec": "regular:256", "name": "disk-256gon"}], "p_grid": [2.0],
            "beta_grid": [-1.0, 1.0], "checks": ["T1", "T2"], "output": "out"}"#,
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/rows.csv")).unwrap();
    assert!(csv.starts_with("# robin-bounds sweep rows, schema v1\nshape,check,"));
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.ends_with(",holds,v_min^p |B| / ||v||_p^p") || r.ends_with(",holds,v_max^p |B| / ||v||_p^p")), "{csv}");
}

#[test]
fn square_and_hexagon_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_config(
        dir.path(),
        "c.json",
        r#"{"shapes": ["regular:4", "regular:6"], "p_grid": [1.5, 2.0, 3.0],
            "beta_grid": [-2.0, -1.0, 1.0, 2.0], "checks": ["T1", "T2"], "output": "out"}"#,
    );
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("out/rows.csv")).unwrap();
    let rows = data_rows(&csv);
    assert_eq!(rows.len(), 24);
    // twelve significant digits everywhere
    assert!(rows[0].contains(",2,1.50000000000e0,-2.00000000000e0,"));
    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/summary.json")).unwrap()).unwrap();
    assert_eq!(summary["rows"], 24);
    assert_eq!(summary["violations"].as_array().unwrap().len(), 0);
    assert!(summary["empirical"]["t2_constant"]["min"].as_f64().unwrap() > 0.0);
}

#[test]
fn corrupted_polygon_file_fails_with_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{\"vertices\": [[0, 0], [1, 0],\n [1, 1] [0, 1]]}").unwrap();
    let out = run_config(
        dir.path(),
        "c.json",
        r#"{"shapes": ["bad.json"], "p_grid": [2.0], "beta_grid": [1.0], "checks": ["T1"], "output": "out"}"#,
    );
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("parsing polygon file") && err.contains("line 2"), "{err}");

    // well-formed JSON, clockwise vertices
    std::fs::write(dir.path().join("cw.json"), r#"{"vertices": [[0, 0], [0, 1], [1, 1], [1, 0]]}"#).unwrap();
    let out = run_config(
        dir.path(),
        "c2.json",
        r#"{"shapes": ["cw.json"], "p_grid": [2.0], "beta_grid": [1.0], "checks": ["T1"], "output": "out"}"#,
    );
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("clockwise"));
}

#[test]
fn invalid_config_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for body in [
        r#"{"shapes": ["regular:4"], "p_grid": [1.0], "beta_grid": [1.0], "checks": ["T1"]}"#,
        r#"{"shapes": ["regular:4"], "p_grid": [2.0], "beta_grid": [0.0], "checks": ["T1"]}"#,
        r#"{"shapes": ["regular:4"], "p_grid": [2.0], "beta_grid": [1.0], "checks": ["T9"]}"#,
        r#"{"shapes": ["regular:4"], "p_grid": [2.0], "beta_grid": [1.0], "checks": ["T1"], "typo": 1}"#,
    ] {
        let out = run_config(dir.path(), "c.json", body);
        assert_eq!(out.status.code(), Some(2), "{body}");
    }
}

#[test]
fn reruns_are_byte_identical_and_shapes_are_isolated() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = |shapes: &str, out: &str| {
        format!(
            r#"{{"shapes": [{shapes}], "p_grid": [2.0, 3.0], "beta_grid": [-1.0, 1.0],
                "checks": ["T1", "T2", "T3", "lemmas"], "fem_level": 2, "output": "{out}"}}"#
        )
    };
    let both = r#""regular:5", "random:6:9""#;
    assert!(run_config(dir.path(), "a.json", &cfg(both, "a")).status.success());
    assert!(run_config(dir.path(), "b.json", &cfg(both, "b")).status.success());
    for f in ["rows.csv", "report.json", "summary.json"] {
        let a = std::fs::read(dir.path().join("a").join(f)).unwrap();
        let b = std::fs::read(dir.path().join("b").join(f)).unwrap();
        assert!(a == b, "{f} differs between runs");
    }
    assert!(run_config(dir.path(), "c.json", &cfg(r#""regular:5""#, "c")).status.success());
    let full = std::fs::read_to_string(dir.path().join("a/rows.csv")).unwrap();
    let single = std::fs::read_to_string(dir.path().join("c/rows.csv")).unwrap();
    let kept: Vec<&str> = data_rows(&full).into_iter().filter(|r| r.starts_with("regular:5,")).collect();
    let bernoulli: Vec<&str> = data_rows(&full).into_iter().filter(|r| r.starts_with("-,")).collect();
    let mut expect = kept.clone();
    expect.extend(bernoulli);
    assert_eq!(data_rows(&single), expect);
}

#[test]
fn shape_file_round_trip_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let poly = dir.path().join("hex.json");
    let out = bin().args(["shape", "--spec", "regular:6", "--out"]).arg(&poly).output().unwrap();
    assert!(out.status.success());
    let info: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(info["vertices"], 6);
    assert_eq!(info["area"], "2.59807621135e0");

    let out = run_config(
        dir.path(),
        "c.json",
        r#"{"shapes": ["hex.json"], "p_grid": [2.0], "beta_grid": [-1.0], "checks": ["T2", "weak_remark"], "output": "out"}"#,
    );
    assert!(out.status.success());
    let csv = std::fs::read_to_string(dir.path().join("out/rows.csv")).unwrap();
    assert!(data_rows(&csv).iter().all(|r| r.starts_with("regular:6,")));
    let printed = bin().args(["report", "--format", "csv", "--input"]).arg(dir.path().join("out")).output().unwrap();
    assert_eq!(String::from_utf8(printed.stdout).unwrap(), csv);
    let printed = bin().args(["report", "--format", "json", "--input"]).arg(dir.path().join("out")).output().unwrap();
    let rows: serde_json::Value = serde_json::from_slice(&printed.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
}

#[test]
fn radial_command_uses_the_cache() {
    let dir = tempfile::tempdir().unwrap();
    let call = || {
        bin()
            .args(["radial", "--n", "2", "--p", "2", "--beta", "-1", "--R", "1"])
            .env("ROBIN_BOUNDS_CACHE", dir.path())
            .output()
            .unwrap()
    };
    let first = call();
    assert!(first.status.success(), "{}", String::from_utf8_lossy(&first.stderr));
    let v: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    let lam: f64 = v["lambda"].as_str().unwrap().parse().unwrap();
    assert!((lam - robin_bounds_testkit::bessel::robin_disk_lambda(-1.0)).abs() < 1e-9);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    assert_eq!(call().stdout, first.stdout);

    let dirichlet = bin().args(["radial"]).env_remove("ROBIN_BOUNDS_CACHE").output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&dirichlet.stdout).unwrap();
    assert!(v["beta"].is_null());
}
