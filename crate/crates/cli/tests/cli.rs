use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ymgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ymgraph")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(
        out.status.code() == Some(0) || out.status.code() == Some(1),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K3: &str = "0 1\n1 2\n0 2\n";
const K4: &str = "# complete graph\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

fn floats(v: &Value) -> Vec<f64> {
    v.as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect()
}

#[test]
fn clique_census() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let v = json_of(&ymgraph(&["cliques", "--graph", s(&k4)]));
    assert_eq!(v["counts"], serde_json::json!([4, 6, 4, 1]));
    let path = write(&dir, "path.txt", "0 1\n1 2\n");
    let v = json_of(&ymgraph(&["cliques", "--graph", s(&path)]));
    assert_eq!(v["counts"], serde_json::json!([3, 2]));
    let capped = json_of(&ymgraph(&["cliques", "--graph", s(&k4), "--max-k", "3"]));
    assert_eq!(capped["counts"], serde_json::json!([4, 6, 4]));
    assert_eq!(capped["truncated"], Value::Bool(true));
}

#[test]
fn cyclic_orientation_is_a_validation_error() {
    let dir = TempDir::new().unwrap();
    let cyc = write(&dir, "cyc.txt", K3.replace("0 2", "2 0").as_str());
    let out = ymgraph(&["cliques", "--graph", s(&cyc)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("directed cycle 0 -> 1 -> 2 -> 0"), "{err}");
    let natural = ymgraph(&["cliques", "--graph", s(&cyc), "--order", "natural"]);
    assert_eq!(natural.status.code(), Some(0));
    let bad = write(&dir, "bad.txt", "0 1\n1 two\n");
    let out = ymgraph(&["cliques", "--graph", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn spectra_of_small_graphs() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let v = json_of(&ymgraph(&["spectrum", "--graph", s(&k3), "-k", "0"]));
    let ev = floats(&v["eigenvalues"]);
    assert!(ev[0].abs() < 1e-12 && (ev[1] - 3.0).abs() < 1e-12 && (ev[2] - 3.0).abs() < 1e-12);
    let v = json_of(&ymgraph(&["spectrum", "--graph", s(&k3), "-k", "1"]));
    assert!(floats(&v["eigenvalues"]).iter().all(|e| (e - 3.0).abs() < 1e-12));
    assert_eq!(v["basis"], serde_json::json!([[0, 1], [0, 2], [1, 2]]));
    let empty = write(&dir, "empty.txt", "vertices 3\n");
    let v = json_of(&ymgraph(&["spectrum", "--graph", s(&empty)]));
    assert_eq!(floats(&v["eigenvalues"]), vec![0.0; 3]);
}

#[test]
fn betti_and_curvature() {
    let dir = TempDir::new().unwrap();
    let two = write(&dir, "two.txt", "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n");
    let v = json_of(&ymgraph(&["betti", "--graph", s(&two)]));
    assert_eq!(v["betti"], serde_json::json!([2, 0, 0]));
    let k3 = write(&dir, "k3.txt", K3);
    let v = json_of(&ymgraph(&["curvature", "--graph", s(&k3), "-k", "1"]));
    let rows = v["degrees"][0]["values"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["curvature"] == 3));
}

#[test]
fn identity_battery() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = ymgraph(&["check", "--graph", s(&k4), "--random", "--group", "un", "--n", "2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["all_pass"], Value::Bool(true));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["error"].as_f64().unwrap() < 1e-10));

    let trivial = write(
        &dir,
        "trivial.json",
        r#"{"group":"U1","n":1,"edges":[{"u":0,"v":1,"theta":0},{"u":0,"v":2,"theta":0},{"u":0,"v":3,"theta":0},{"u":1,"v":2,"theta":0},{"u":1,"v":3,"theta":0},{"u":2,"v":3,"theta":0}]}"#,
    );
    let v = json_of(&ymgraph(&["check", "--graph", s(&k4), "--connection", s(&trivial)]));
    assert_eq!(v["curvature_max_abs"], 0);

    let corrupt = write(&dir, "corrupt.json", &std::fs::read_to_string(&trivial).unwrap().replacen(
        r#""theta":0}"#,
        r#""matrix":[[[1.5,0]]]}"#,
        1,
    ));
    let out = ymgraph(&["check", "--graph", s(&k4), "--connection", s(&corrupt)]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn yang_mills_extremes() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let v = json_of(&ymgraph(&["ym", "minimize", "--graph", s(&k3), "--starts", "4"]));
    assert_eq!(v["converged"], Value::Bool(true));
    assert!(v["value"].as_f64().unwrap() < 1e-12);
    let k4 = write(&dir, "k4.txt", K4);
    let out = ymgraph(&["ym", "maximize", "--graph", s(&k4), "--starts", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!((v["value"].as_f64().unwrap() - 8.0).abs() < 1e-10);
    assert_eq!(v["holonomy_traces"].as_array().unwrap().len(), 4);
}

#[test]
fn non_convergence_exit_code() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let out = ymgraph(&["ym", "minimize", "--graph", s(&k4), "--group", "un", "--starts", "1", "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["converged"], Value::Bool(false));
}

#[test]
fn k4_grid_assigns_every_pass() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let v = json_of(&ymgraph(&["ym", "grid", "--graph", s(&k4), "--resolution", "60"]));
    assert_eq!(v["unassigned"], 0);
    let passes = v["passes"].as_array().unwrap();
    assert!(passes.iter().any(|p| p["indices"] == serde_json::json!([15, 45, 15])));
    assert!(passes.iter().any(|p| p["indices"] == serde_json::json!([45, 15, 45])));
}

#[test]
fn connections_round_trip_through_reports() {
    let dir = TempDir::new().unwrap();
    let k4 = write(&dir, "k4.txt", K4);
    let first = ymgraph(&["ym", "eval", "--graph", s(&k4), "--random", "--group", "un", "--n", "2", "--seed", "9"]);
    let again = ymgraph(&["ym", "eval", "--graph", s(&k4), "--random", "--group", "un", "--n", "2", "--seed", "9"]);
    assert_eq!(first.stdout, again.stdout, "runs are byte-identical");
    let v = json_of(&first);
    let conn = write(&dir, "conn.json", &v["connection"].to_string());
    let w = json_of(&ymgraph(&["ym", "eval", "--graph", s(&k4), "--connection", s(&conn)]));
    assert_eq!(v["value"], w["value"]);
    assert_eq!(v["connection"], w["connection"]);

    let fixed = json_of(&ymgraph(&["gauge-fix", "--graph", s(&k4), "--connection", s(&conn)]));
    assert!((fixed["value"].as_f64().unwrap() - v["value"].as_f64().unwrap()).abs() < 1e-12);
    let fixed_conn = write(&dir, "fixed.json", &fixed["connection"].to_string());
    let r = json_of(&ymgraph(&["ym", "residual", "--graph", s(&k4), "--connection", s(&fixed_conn)]));
    assert_eq!(r["residual_matrices"].as_array().unwrap().len(), 6);
}

#[test]
fn higgs_commands() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let conn = write(
        &dir,
        "c.json",
        r#"{"group":"U1","n":1,"edges":[{"u":0,"v":1,"theta":0},{"u":1,"v":2,"theta":0},{"u":0,"v":2,"theta":0}]}"#,
    );
    let higgs = write(
        &dir,
        "h.json",
        r#"{"n":1,"vertices":[{"v":0,"value":[[1,0]]},{"v":1,"value":[[1,0]]},{"v":2,"value":[[0,0]]}]}"#,
    );
    let v = json_of(&ymgraph(&["ymh", "eval", "--graph", s(&k3), "--connection", s(&conn), "--higgs", s(&higgs)]));
    assert_eq!(v["value"], 1.0);
    let v = json_of(&ymgraph(&["ymh", "residual", "--graph", s(&k3), "--connection", s(&conn), "--higgs", s(&higgs)]));
    assert_eq!(v["vertex_residuals"].as_array().unwrap().len(), 3);
    let out = ymgraph(&[
        "ymh", "eval", "--graph", s(&k3), "--connection", s(&conn), "--higgs", s(&higgs), "--potential", "quartic",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.txt", K3);
    let out_path = dir.path().join("report.json");
    let out = ymgraph(&["betti", "--graph", s(&k3), "--out", s(&out_path)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(out_path).unwrap()).unwrap();
    assert_eq!(v["betti"], serde_json::json!([1, 0, 0]));
}
