//! End-to-end checks of the command-line interface: exit codes, JSON
//! stability, and the full pipeline on the bundled models.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../crnparam/tests/fixtures")
        .join(name);
    path.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_crnparam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn analyze_reports_structure() {
    let out = run(&["analyze", &fixture("example22.gcrn")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("deficiency:            1"), "{text}");
    assert!(text.contains("effective deficiency:  0"), "{text}");
    assert!(text.contains("weakly reversible:     true"), "{text}");
}

#[test]
fn analyze_json_is_byte_stable() {
    let a = run(&["analyze", &fixture("envz.mas"), "--json"]);
    let b = run(&["analyze", &fixture("envz.mas"), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["deficiency"], 2);
    assert_eq!(doc["vertex_count"], 13);
    assert_eq!(doc["weakly_reversible"], false);
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = std::env::temp_dir().join("crnparam-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.mas");
    std::fs::write(&bad, "@mas\nX -> ; k1\n").unwrap();
    let out = run(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["analyze", bad.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["error"]["kind"], "parse");
    assert!(doc["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn refusal_exits_with_one() {
    // Not weakly reversible without a translation scheme.
    let out = run(&["parametrize", &fixture("histidine.mas")]);
    assert_eq!(out.status.code(), Some(1));

    let out = run(&["parametrize", &fixture("histidine.mas"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["error"]["kind"], "not_weakly_reversible");
}

#[test]
fn parametrize_pipeline_on_two_component_system() {
    let out = run(&[
        "parametrize",
        &fixture("histidine.mas"),
        "--scheme",
        &fixture("histidine.scheme"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["x_equals_zbar"], true);
    assert_eq!(doc["structure"]["deficiency"], 1);
    assert_eq!(doc["structure"]["kinetic_deficiency"], 0);
    assert_eq!(doc["structure"]["effective_deficiency"], 0);
    assert_eq!(doc["vstar"], serde_json::json!([1, 2, 3]));
    let components = doc["parametrization"]["components"].as_array().unwrap();
    assert_eq!(components.len(), 4);
    assert_eq!(components[2]["species"], "Y");
    assert_eq!(
        components[2]["coefficient"]["value"]["display"],
        "1"
    );
}

#[test]
fn parametrize_reports_robust_species() {
    let out = run(&[
        "parametrize",
        &fixture("envz.mas"),
        "--scheme",
        &fixture("envz.scheme"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let robust: Vec<&str> = doc["acr"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["robust"] == true)
        .map(|e| e["species"].as_str().unwrap())
        .collect();
    assert_eq!(robust, vec!["Yp"]);
    let solved = doc["parametrization"]["solved_phantoms"].as_array().unwrap();
    assert_eq!(solved.len(), 1);
    assert_eq!(solved[0]["symbol"], "phi1");
}

#[test]
fn translate_emits_certificate() {
    let out = run(&[
        "translate",
        &fixture("envz.mas"),
        "--scheme",
        &fixture("envz.scheme"),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["certificate"]["valid"], true);
    assert_eq!(doc["certificate"]["ode_difference_zero"], true);
}

#[test]
fn redirect_output_reparses() {
    let out = run(&["redirect", &fixture("example22.gcrn"), "--vstar", "1,2,4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let network: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let dir = std::env::temp_dir().join("crnparam-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("redirected.gcrn");
    std::fs::write(&path, network).unwrap();
    let out = run(&["analyze", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["weakly_reversible"], true);
    assert_eq!(doc["phantom_edge_count"], 1);
}

#[test]
fn verify_passes_on_fixture_and_is_deterministic() {
    let args = [
        "verify",
        &fixture("wnt.gcrn"),
        "--samples",
        "25",
        "--seed",
        "42",
        "--json",
    ];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    let b = run(&args);
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["pass"], true);
    assert_eq!(doc["samples"], 25);
    assert_eq!(doc["seed"], 42);
}

#[test]
fn verify_with_scheme_runs_full_pipeline() {
    let out = run(&[
        "verify",
        &fixture("wnt.mas"),
        "--scheme",
        &fixture("wnt.scheme"),
        "--samples",
        "10",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("pass:                    true"));
}

#[test]
fn invalid_vstar_is_rejected() {
    let out = run(&["redirect", &fixture("example22.gcrn"), "--vstar", "3,4", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["error"]["kind"], "invalid_vstar");
}

#[test]
fn latex_output_contains_display_math() {
    let out = run(&[
        "parametrize",
        &fixture("histidine.mas"),
        "--scheme",
        &fixture("histidine.scheme"),
        "--latex",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\\frac{"), "{text}");
    assert!(text.contains("\\varphi_{1}"), "{text}");
}
