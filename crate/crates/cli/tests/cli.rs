use std::path::PathBuf;
use std::process::{Command, Output};

fn games_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../games")
}

fn game(name: &str) -> String {
    games_dir().join(name).to_string_lossy().into_owned()
}

fn tuvals(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tuvals"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_game(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("tuvals-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn values_prints_the_ksed_row() {
    let out = tuvals(&["values", &game("v0.json"), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k-SED(2): 9, 6, 3"), "{text}");
    assert!(text.contains("Shapley: 11, 5, 2"));
    assert!(text.contains("routes agree: closed-form, permutations, truncation, split, basis"));
}

#[test]
fn values_prints_fractions_and_decimals() {
    let out = tuvals(&[
        "values",
        &game("v0.json"),
        "--alpha",
        "1/2,1/4,1/4",
        "--p",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("alpha-SED: 37/4, 11/2, 13/4  [9.25, 5.5, 3.25]"),
        "{text}"
    );
    assert!(text.contains("Sol^0: 6, 6, 6"));
}

#[test]
fn json_output_is_exact_and_versioned() {
    let out = tuvals(&["--json", "values", &game("v2.json"), "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "tuvals.values.v1");
    let ksed = doc["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == "ksed")
        .unwrap();
    assert_eq!(ksed["payoffs"], serde_json::json!(["1", "0"]));
}

#[test]
fn reports_are_deterministic() {
    let args = [
        "--json",
        "axioms",
        "--functional",
        "psi7",
        "--k",
        "2",
        "--n",
        "3",
        "--games",
        "20",
    ];
    assert_eq!(tuvals(&args).stdout, tuvals(&args).stdout);
}

#[test]
fn ksed_passes_its_axioms() {
    let out = tuvals(&[
        "axioms",
        "--functional",
        "ksed",
        "--k",
        "2",
        "--games",
        "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for label in [
        "eff+sym+lin+knnpp",
        "eff+sym+kcse",
        "eff+sym+kpmon+kpm",
        "eff+knnpp+f",
        "eff+knnpp+dm",
    ] {
        assert!(text.contains(&format!("{label}: pass")), "{label}\n{text}");
    }
    assert!(!text.contains("violated"));
}

#[test]
fn counterexamples_show_witnesses() {
    let out = tuvals(&[
        "axioms",
        "--functional",
        "phi1",
        "--k",
        "2",
        "--axiom",
        "eff",
        "--games",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("violated"));
    assert!(text.contains("witness:"));
}

#[test]
fn independence_catalogue_runs() {
    let out = tuvals(&[
        "axioms",
        "--independence",
        "--k",
        "2",
        "--n",
        "3",
        "--games",
        "30",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(!stdout(&out).contains("UNEXPECTED"));
}

#[test]
fn dual_mechanism_matches_ksed() {
    let out = tuvals(&[
        "mechanism",
        &game("v0.json"),
        "--alpha",
        "0,1,0",
        "--interp",
        "dual-beal",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("H2 target (9, 6, 3): match"), "{text}");
    assert!(!text.contains("profitable"));
}

#[test]
fn literal_mechanism_reports_the_mismatch() {
    let out = tuvals(&["--json", "mechanism", &game("v2.json"), "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], "tuvals.mechanism.v1");
    assert_eq!(doc["expected"], serde_json::json!(["1/2", "1/2"]));
    assert_eq!(doc["alpha_sed"], serde_json::json!(["1", "0"]));
    assert_eq!(doc["implements_alpha_sed"], "mismatch");
    assert_eq!(doc["hypothesis"], "H1");
    assert_eq!(doc["hypothesis_verdict"], "match");
    assert_eq!(doc["deviations"]["profitable"], false);
}

#[test]
fn bases_lists_dividends() {
    let out = tuvals(&["bases", &game("v0.json"), "--k", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("{1,2}: 6"));
    assert!(text.contains("{1,2,3}: 6"));
    assert!(text.contains("hybrid basis coordinates (k = 2):"));
}

#[test]
fn convert_detects_thresholds() {
    let out = tuvals(&["convert", "--coefficients", "0,0,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k-SED threshold: 2"));
    assert!(text.contains("solidarity weights: none"));

    let out = tuvals(&["convert", "--functional", "shapley", "--n", "3"]);
    let text = stdout(&out);
    assert!(text.contains("k-SED threshold: 1"), "{text}");
    assert!(text.contains("solidarity weights (p = 0..n-1): 0, 0, 1"));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(tuvals(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        tuvals(&["values", &game("v0.json"), "--k", "4"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        tuvals(&["values", "/nonexistent/game.json"]).status.code(),
        Some(1)
    );
    assert_eq!(
        tuvals(&["mechanism", &game("v0.json"), "--alpha", "1/2,1/2,1/2"])
            .status
            .code(),
        Some(1)
    );
    let reversed = temp_game("reversed.json", r#"{"n": 3, "worths": {"3,1": "2"}}"#);
    let out = tuvals(&["values", &reversed]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn empty_worths_give_the_null_game() {
    let null = temp_game("null.json", r#"{"n": 2, "worths": {}}"#);
    let out = tuvals(&["values", &null]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Shapley: 0, 0"));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_tuvals"))
        .args(["values", &game("v0.json"), "--k", "2"])
        .env("TUVALS_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_tuvals"))
        .args(["values", &game("v0.json")])
        .env("TUVALS_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}
