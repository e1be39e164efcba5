//! End-to-end tests of the `graph-energy` binary: report shape, exit codes,
//! and byte determinism. Reports are parsed back with serde_json to confirm
//! the emitted documents are valid JSON.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graph-energy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(args: &[&str]) -> (Value, Output) {
    let output = run(args);
    let value = serde_json::from_slice(&output.stdout).unwrap_or_else(|err| {
        panic!(
            "invalid JSON ({err}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    });
    (value, output)
}

fn energies(report: &Value, method: &str) -> Vec<f64> {
    report["result"]["energies"][method]
        .as_array()
        .expect("energy array")
        .iter()
        .map(|x| x.as_f64().expect("number"))
        .collect()
}

#[test]
fn energy_star_all_methods() {
    let (doc, output) = report(&[
        "energy", "--gen", "star:4", "--kind", "laplacian", "--method", "all",
    ]);
    assert!(output.status.success());
    let spectral = energies(&doc, "spectral");
    assert!((spectral[0] - 2.25).abs() < 1e-9);
    for &leaf in &spectral[1..4] {
        assert!((leaf - 11.0 / 12.0).abs() < 1e-9);
    }
    assert!(doc["result"]["max_deviation"].as_f64().unwrap() < 1e-6);
    let methods: Vec<&str> = doc["result"]["methods"]
        .as_array()
        .unwrap()
        .iter()
        .map(|m| m.as_str().unwrap())
        .collect();
    assert_eq!(methods, ["spectral", "coulson", "closed_form"]);
}

#[test]
fn energy_from_edge_list_file() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# K_2\n2\n0 1").unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let (doc, output) = report(&["energy", "--graph", &path, "--kind", "normalized"]);
    assert!(output.status.success());
    let values = energies(&doc, "spectral");
    assert!((values[0] - 1.0).abs() < 1e-9 && (values[1] - 1.0).abs() < 1e-9);
    assert_eq!(doc["graph"]["source"], "file");
    assert!(doc["graph"]["content_hash"]
        .as_str()
        .unwrap()
        .starts_with("fnv1a64:"));
}

#[test]
fn energy_coulson_matches_spectral_through_the_cli() {
    let (doc, output) = report(&[
        "energy", "--gen", "path:3", "--kind", "laplacian", "--method", "all",
    ]);
    assert!(output.status.success());
    let spectral = energies(&doc, "spectral");
    let coulson = energies(&doc, "coulson");
    for (a, b) in spectral.iter().zip(&coulson) {
        assert!((a - b).abs() < 1e-6);
    }
}

#[test]
fn verify_star_nle_equality_case() {
    let (doc, output) = report(&["verify", "--gen", "star:6", "--suite", "nle"]);
    assert!(output.status.success());
    let certificates = doc["result"]["graphs"][0]["certificates"]
        .as_array()
        .unwrap();
    let center_upper = certificates
        .iter()
        .find(|c| c["theorem"] == "nle_upper" && c["scope"]["v"] == 0)
        .expect("center certificate");
    assert!(center_upper["slack"].as_f64().unwrap().abs() <= 1e-8);
    assert_eq!(center_upper["equality_predicate"], Value::Bool(true));
    assert_eq!(doc["result"]["summary"]["failures"], 0);
}

#[test]
fn verify_triangle_geometry_is_tight_for_curvature() {
    let (doc, output) = report(&["verify", "--gen", "complete:3", "--suite", "geometry"]);
    assert!(output.status.success());
    let certificates = doc["result"]["graphs"][0]["certificates"]
        .as_array()
        .unwrap();
    let curvature_certs: Vec<_> = certificates
        .iter()
        .filter(|c| c["theorem"] == "curvature_energy")
        .collect();
    assert_eq!(curvature_certs.len(), 3);
    for cert in curvature_certs {
        assert!(cert["slack"].as_f64().unwrap().abs() <= 1e-8);
        assert_eq!(cert["pass"], Value::Bool(true));
    }
}

#[test]
fn curvature_reports_exact_rationals() {
    let (doc, output) = report(&["curvature", "--gen", "complete:3"]);
    assert!(output.status.success());
    assert_eq!(doc["result"]["cheeger"]["num"], 1);
    assert_eq!(doc["result"]["cheeger"]["den"], 1);
    assert_eq!(doc["result"]["dual_cheeger"]["num"], 2);
    assert_eq!(doc["result"]["dual_cheeger"]["den"], 3);
    for edge in doc["result"]["curvature"]["edges"].as_array().unwrap() {
        assert_eq!(edge["kappa"]["num"], 1);
        assert_eq!(edge["kappa"]["den"], 2);
    }

    let (doc, _) = report(&["curvature", "--gen", "cycle:4"]);
    assert_eq!(doc["result"]["cheeger"]["num"], 1);
    assert_eq!(doc["result"]["cheeger"]["den"], 2);
    assert_eq!(doc["result"]["dual_cheeger"]["num"], 1);
    assert_eq!(doc["result"]["dual_cheeger"]["den"], 1);

    let (doc, _) = report(&["curvature", "--gen", "star:4"]);
    assert_eq!(doc["result"]["cheeger"]["num"], 1);
    assert_eq!(doc["result"]["cheeger"]["den"], 1);
    assert_eq!(doc["result"]["dual_cheeger"]["num"], 1);
    assert_eq!(doc["result"]["dual_cheeger"]["den"], 1);
}

#[test]
fn scan_reports_are_byte_deterministic() {
    let args = ["scan", "--n", "2..6", "--count", "50", "--seed", "1"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success() && second.status.success());
    let strip = |bytes: &[u8]| {
        String::from_utf8(bytes.to_vec())
            .unwrap()
            .lines()
            .filter(|line| !line.contains("wall_time_ms"))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(strip(&first.stdout), strip(&second.stdout));

    let doc: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(doc["result"]["summary"]["count"], 50);
    // violated records must carry their reproduction edge list
    for record in doc["result"]["records"].as_array().unwrap() {
        if record["verdict"] != "holds" {
            assert!(record["edges"].as_array().is_some_and(|e| !e.is_empty()));
        }
    }
}

#[test]
fn exit_codes() {
    // usage: unknown flag / missing source
    assert_eq!(run(&["energy", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["energy"]).status.code(), Some(2));
    // input: bad generator params, unparseable file, oversized geometry
    assert_eq!(run(&["energy", "--gen", "star:1"]).status.code(), Some(3));
    assert_eq!(
        run(&["energy", "--graph", "/no/such/file.edges"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["curvature", "--gen", "cycle:30"]).status.code(),
        Some(3)
    );
    // success
    assert_eq!(
        run(&["energy", "--gen", "cycle:5", "--kind", "adjacency"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let output = run(&[
        "energy",
        "--gen",
        "star:4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["graph"]["spec"], "star:4");
}
