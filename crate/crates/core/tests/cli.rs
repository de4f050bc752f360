// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_bloch-eff");
const GOLDEN_TOL: f64 = 1e-12;

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn same_json(got: &Value, want: &Value, path: &str) -> Result<(), String> {
    match (got, want) {
        (Value::Number(g), Value::Number(w)) => {
            let (g, w) = (g.as_f64().unwrap(), w.as_f64().unwrap());
            if (g - w).abs() <= GOLDEN_TOL {
                Ok(())
            } else {
                Err(format!("{path}: {g} vs {w}"))
            }
        }
        (Value::Array(g), Value::Array(w)) if g.len() == w.len() => {
            g.iter().zip(w).enumerate().try_for_each(|(i, (g, w))| same_json(g, w, &format!("{path}[{i}]")))
        }
        (Value::Object(g), Value::Object(w)) => {
            let (gk, wk): (Vec<_>, Vec<_>) = (g.keys().collect(), w.keys().collect());
            if gk != wk {
                return Err(format!("{path}: keys {gk:?} vs {wk:?}"));
            }
            w.iter().try_for_each(|(k, w)| same_json(&g[k], w, &format!("{path}.{k}")))
        }
        _ if got == want => Ok(()),
        _ => Err(format!("{path}: {got} vs {want}")),
    }
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn example_reports_match_golden() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dir = tempfile::tempdir().unwrap();
    for n in 1..=4 {
        let out = run(&["example", &n.to_string(), "--out", dir.path().to_str().unwrap()]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let name = format!("example{n}_report.json");
        let got = read_json(&dir.path().join(&name));
        same_json(&got, &read_json(&golden.join(&name)), &name).unwrap();
        for kind in ["trajectory", "efficiency", "curvature"] {
            assert!(dir.path().join(format!("example{n}_{kind}.csv")).is_file());
        }
        let row: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(row["classification"], got["classification"]);
    }
}

#[test]
fn runs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert!(run(&["example", "3", "--out", d.path().to_str().unwrap()]).status.success());
    }
    for file in ["example3_report.json", "example3_trajectory.csv", "example3_efficiency.csv", "example3_curvature.csv"]
    {
        assert_eq!(fs::read(a.path().join(file)).unwrap(), fs::read(b.path().join(file)).unwrap(), "{file}");
    }
}

#[test]
fn config_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for (i, body) in [
        r#"{"scenario": "example1", "bogus": 1}"#,
        r#"{"scenario": "nope"}"#,
        r#"{"scenario": "example3", "parameters": {"omega0": 1.0}}"#,
        r#"{"scenario": "suboptimal_family", "parameters": {"alpha": 1.0}}"#,
        "not json",
    ]
    .iter()
    .enumerate()
    {
        let path = dir.path().join(format!("c{i}.json"));
        fs::write(&path, body).unwrap();
        let out = run(&["report", "--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{body}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(run(&["example", "9"]).status.code(), Some(2));
}

#[test]
fn numerical_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    fs::write(&path, r#"{"scenario": "example3", "parameters": {"gamma": 0.0}}"#).unwrap();
    let out = run(&["report", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn custom_config_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("custom.json");
    fs::write(
        &path,
        r#"{"scenario": "custom", "name": "tilted", "t_span": [0, 1], "n_steps": 400,
            "field_table": [[0, 0, 1, 0, 0], [1, 0, 1, 0, 0]], "initial_bloch": [0, 0, 1],
            "outputs": ["report"]}"#,
    )
    .unwrap();
    let out = run(&["report", "--config", path.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = read_json(&dir.path().join("tilted_report.json"));
    assert_eq!(doc["classification"], "GeodesicUnwasteful");
    assert!(!dir.path().join("tilted_trajectory.csv").exists());
}

fn header(out: &Output) -> String {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    stdout(out).lines().next().unwrap().to_string()
}

#[test]
fn sweep_headers() {
    assert_eq!(
        header(&run(&["sweep-alpha", "--theta-ab", "1.0", "--points", "5"])),
        "alpha,s,t_ab,delta_e,eta_ge,eta_se"
    );
    assert_eq!(
        header(&run(&["phase-profiles", "--profile", "exp", "--phi0", "1", "--phidot0", "0.5", "--omega0", "1"])),
        "t,phi,phidot,eta_se_trace_zero,eta_se_trace_nonzero"
    );
    assert_eq!(header(&run(&["phidot-sweep"])), "phidot,eta_se_trace_zero,eta_se_trace_nonzero");
    let rows = stdout(&run(&["sweep-alpha", "--theta-ab", "1.0", "--points", "5"])).lines().count();
    assert_eq!(rows, 6);
}

#[test]
fn sweep_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phidot.csv");
    let out = run(&["phidot-sweep", "--points", "11", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), 12);
}

#[test]
fn table2_lists_all_examples() {
    let out = run(&["table2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for n in 1..=4 {
        assert!(text.contains(&format!("example{n}")));
    }
    assert!(text.contains("MoreWastefulThanNongeodesic"));
}
