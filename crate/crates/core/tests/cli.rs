use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn curvehull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvehull"))
        .args(args)
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn edge_json_for_quartic() {
    let spec = data("quartic.json");
    let o = curvehull(&[
        "edge",
        spec.to_str().unwrap(),
        "--json",
        "--route",
        "direct",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let comps = v["components"].as_array().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0]["degree"], 6);
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn degrees_json_and_bad_profile() {
    let o = curvehull(&["degrees", "-d", "6", "-g", "0", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["tritangent_count"], 8);
    assert_eq!(v["edge_degree"], 30);
    assert_eq!(
        curvehull(&["degrees", "-d", "3", "-g", "0"]).status.code(),
        Some(3)
    );
}

#[test]
fn output_file_and_missing_input() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.txt");
    let spec = data("quartic.json");
    let o = curvehull(&["phi", spec.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.lines().any(|l| l.starts_with("phi = ")));
    assert_eq!(text.lines().count(), 7);
    assert_eq!(
        curvehull(&["phi", "/nonexistent/spec.json"]).status.code(),
        Some(3)
    );
}

#[test]
fn sample_sphere_points_lie_near_the_surface() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("sphere.txt");
    std::fs::write(&f, "x^2+y^2+z^2-1").unwrap();
    let o = curvehull(&[
        "sample",
        f.to_str().unwrap(),
        "--bbox",
        "-1.5,1.5",
        "--resolution",
        "20",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,z"));
    let pts: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|t| t.parse().unwrap()).collect())
        .collect();
    assert!(pts.len() > 100);
    let cell = 3.0 / 20.0;
    for p in &pts {
        let r = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
        assert!((r - 1.0).abs() < cell, "{p:?}");
    }
}

#[test]
fn pencil_command_rejects_parametric_spec() {
    let spec = data("quartic.json");
    assert_eq!(
        curvehull(&["pencil", spec.to_str().unwrap()]).status.code(),
        Some(3)
    );
    let spec = data("pencil.json");
    let o = curvehull(&["pencil", spec.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["degree"], 8);
}
