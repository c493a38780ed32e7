//! CLI behaviour: exit codes, schema rejection with pointer paths,
//! format switching, and the error paths of each subcommand.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_brumer")
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("brumer-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn exit_codes_follow_verdicts() {
    // pass: Brumer on the quadratic corpus datum
    let out = Command::new(bin())
        .args(["check", "--mode", "brumer", "--prime", "3"])
        .arg(corpus("qsqrt-23.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));

    // fail: plain theta is non-integral
    let out = Command::new(bin())
        .args(["stickelberger", "--no-t"])
        .arg(corpus("qsqrt-23.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // input error: missing file
    let out = Command::new(bin())
        .args(["chartable", "does-not-exist.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn schema_violations_rejected_with_pointer_paths() {
    let bad = write_temp(
        "bad-extension.json",
        r#"{
        "name": "bad",
        "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
        "base_field": "Q",
        "mu_order": 5,
        "infinite_places": 1,
        "places": [
            {"label": "x", "norm": 12, "frobenius": "()", "in_s": true}
        ]
    }"#,
    );
    let out = Command::new(bin())
        .args(["stickelberger"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("/places/0/norm"), "{stdout}");
    assert!(stdout.contains("/mu_order"), "{stdout}");
}

#[test]
fn missing_lvalue_is_actionable() {
    let nolv = write_temp(
        "no-lvalue.json",
        r#"{
        "name": "no-lvalue",
        "group": {"degree": 2, "generators": ["(1 2)"], "j": "(1 2)"},
        "base_field": "Q",
        "mu_order": 2,
        "infinite_places": 1,
        "places": [
            {"label": "23", "norm": 23, "frobenius": "()", "inertia": ["(1 2)"], "in_s": true}
        ]
    }"#,
    );
    let out = Command::new(bin())
        .args(["stickelberger"])
        .arg(&nolv)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("missing L-value"), "{stdout}");
    assert!(stdout.contains("supply"), "{stdout}");
}

#[test]
fn formats_render_both_ways() {
    let json = Command::new(bin())
        .args(["chartable", "--format", "json"])
        .arg(corpus("s3.json"))
        .output()
        .unwrap();
    assert_eq!(json.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_slice(&json.stdout).expect("valid JSON envelope");
    assert_eq!(parsed["command"], "chartable");
    assert_eq!(parsed["config"]["precision"], 20);

    let text = Command::new(bin())
        .args(["chartable", "--format", "text"])
        .arg(corpus("s3.json"))
        .output()
        .unwrap();
    assert_eq!(text.status.code(), Some(0));
    let s = String::from_utf8_lossy(&text.stdout);
    assert!(s.contains("degrees: [1, 1, 2]"), "{s}");
}

#[test]
fn classify_and_hybrid_roundtrip() {
    let assume = write_temp("assume-q.json", r#"{"base_field_q": true}"#);
    let out = Command::new(bin())
        .args(["classify", "--prime", "7", "--format", "text"])
        .arg(corpus("s3.json"))
        .arg("--assume")
        .arg(&assume)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("CoprimeOrder"));

    // hybrid rejection carries exit code 1
    let out = Command::new(bin())
        .args(["hybrid", "--prime", "3", "--kernel", "(1 2 3)"])
        .arg(corpus("s3.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn dual_sbs_through_cli() {
    let out = Command::new(bin())
        .args([
            "check", "--mode", "dual-sbs", "--prime", "3", "--format", "text",
        ])
        .arg(corpus("qsqrt-23.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("Pass"));
}

#[test]
fn bs_check_requires_ideal_data() {
    // without --assume: not checkable -> input error for missing data
    let out = Command::new(bin())
        .args(["check", "--mode", "bs", "--prime", "3"])
        .arg(corpus("qsqrt-23.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let assume = write_temp(
        "bs-ideal.json",
        r#"{"bs_ideal": {"ideal_class": [1], "alpha": {"label": "alpha", "anti_unit_asserted": true}}}"#,
    );
    let out = Command::new(bin())
        .args(["check", "--mode", "bs", "--prime", "3"])
        .arg(corpus("qsqrt-23.json"))
        .arg("--assume")
        .arg(&assume)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let s = String::from_utf8_lossy(&out.stdout);
    assert!(s.contains("class_killed"));
}

#[test]
fn p_adic_identity_on_monomial_corpus() {
    // both corpus data sets have monomial plus parts and a p-place in S,
    // so the p-adic element coincides with the complex one
    use brumer_core::extension::{ExtensionDatum, ExtensionInput};
    use brumer_core::lvalues::{p_adic_stickelberger, stickelberger};
    for (file, p) in [("qzeta3.json", 3u64), ("s3-sextic-cm.json", 3u64)] {
        let text = std::fs::read_to_string(corpus(file)).unwrap();
        let input: ExtensionInput = serde_json::from_str(&text).unwrap();
        let datum = ExtensionDatum::resolve(&input).unwrap();
        let padic = p_adic_stickelberger(&datum, p, 300).unwrap();
        let complex = stickelberger(&datum, true).unwrap();
        assert_eq!(padic.theta, complex.theta, "{file}");
        assert!(padic.provenance.contains("identity"), "{file}");
    }
}

#[test]
fn class_bound_guard_is_honest() {
    use brumer_core::chartab::{character_table_bounded, CharError};
    let g = brumer_core::group::cyclic(100);
    match character_table_bounded(&g, 64) {
        Err(CharError::ClassBoundExceeded(100, 64)) => {}
        other => panic!("expected bound error, got {other:?}"),
    }
}

#[test]
fn sextic_corpus_exercises_certificates() {
    let out = Command::new(bin())
        .args(["stickelberger", "--format", "json"])
        .arg(corpus("s3-sextic-cm.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let comps = parsed["results"][0]["result"]["components"]
        .as_array()
        .unwrap();
    let provs: Vec<String> = comps
        .iter()
        .map(|c| c["provenance"].as_str().unwrap_or("").to_string())
        .collect();
    assert!(provs.iter().any(|p| p.contains("Bernoulli")));
    assert!(provs.iter().any(|p| p.contains("ingested")));
}
