use std::process::Command;

use theta_relations::report::RelationDoc;

const BIN: &str = env!("CARGO_BIN_EXE_theta-rel");

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).env_remove("THETA_MAX_RADIUS").output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn squash(s: &str) -> String {
    let s: String = s.chars().filter(|c| !c.is_whitespace() && *c != '&').collect();
    s.replace("\\\\", "").replace("\\qquad", "@").replace("\\quad", "").replace('@', "\\qquad")
}

const NINE_TERM: &str = r"
3\cdot\binom{0}{0}&=
\binom{0}{0}'+\binom{0}{\frac{1}{3}}'+\binom{0}{\frac{2}{3}}'
+\binom{\frac{1}{3}}{0}'+\omega^2 \binom{\frac{1}{3}}{\frac{1}{3}}'+\omega\binom{\frac{1}{3}}{\frac{2}{3}}'\\
&\quad+\binom{\frac{2}{3}}{0}'+\omega \binom{\frac{2}{3}}{\frac{1}{3}}'+\omega^2\binom{\frac{2}{3}}{\frac{2}{3}}',
\qquad (\omega=e^{2\pi i/3})
";

#[test]
fn emit_latex_matches_reference_form() {
    let (code, out, _) = run(&["emit", "--n", "3", "--g", "1"]);
    assert_eq!(code, 0);
    assert_eq!(squash(&out), squash(NINE_TERM));
}

#[test]
fn emit_json_nine_terms_and_round_trip() {
    let (code, out, _) = run(&["emit", "--n", "3", "--g", "1", "--format", "json"]);
    assert_eq!(code, 0);
    let doc = RelationDoc::from_json(&out).unwrap();
    assert_eq!(doc.terms.len(), 9);
    assert_eq!(doc.spec.lambda, 3);
    assert_eq!(doc.to_json(), out);
    let (_, again, _) = run(&["emit", "--n", "3", "--g", "1", "--format", "json"]);
    assert_eq!(again, out);
}

#[test]
fn emit_smith_exponents() {
    let (_, out, _) = run(&["emit", "--n", "4", "--format", "json"]);
    let doc = RelationDoc::from_json(&out).unwrap();
    let e: Vec<String> = doc.terms.iter().map(|t| t.exponent.to_string()).collect();
    assert_eq!(e, ["0", "0", "0", "1/2"]);
}

#[test]
fn emit_genus_two_has_81_terms() {
    let (_, out, _) = run(&["emit", "--n", "3", "--g", "2", "--format", "json"]);
    assert_eq!(RelationDoc::from_json(&out).unwrap().terms.len(), 81);
    let (_, tex, _) = run(&["emit", "--n", "3", "--g", "2"]);
    assert!(tex.starts_with("3^{2}\\cdot"));
}

#[test]
fn emit_with_explicit_characteristics() {
    let (code, out, _) = run(&[
        "emit", "--n", "3", "--mu", "1/3;0", "--mu", "1/3;0", "--mu", "1/3;0", "--format", "text",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("n=3 g=1 lambda=3 mode=modified terms=9\n"));
}

#[test]
fn verify_exit_codes() {
    let (code, out, _) = run(&["verify", "--n", "4", "--trials", "5"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("verdict=pass\n"));
    let (code, _, _) = run(&["verify", "--n", "4", "--trials", "5", "--mode", "naive"]);
    assert_eq!(code, 1);
    let (code, _, _) = run(&["verify", "--n", "5", "--trials", "5", "--mode", "corrected"]);
    assert_eq!(code, 0);
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "--n", "3", "--trials", "3", "--mode", "corrected", "--format", "json"];
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["trials"].as_array().unwrap().len(), 3);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["trials"][0]["lhs"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_fixed_tau() {
    let (code, out, _) = run(&["verify", "--n", "2", "--trials", "2", "--tau", "0.3+1.1i", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trials"][1]["tau"][0][0][1].as_f64().unwrap(), 1.1);
}

#[test]
fn eval_failure_exit_code() {
    let out = Command::new(BIN)
        .args(["verify", "--n", "3", "--trials", "2"])
        .env("THETA_MAX_RADIUS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn falsify_even_n() {
    let (code, out, _) = run(&["falsify", "--n", "4", "--trials", "10"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("falsified=true"));
}

#[test]
fn usage_errors_exit_64() {
    let (code, _, err) = run(&["emit", "--n", "3", "--mu", "0;0", "--mu", "1/x;0", "--mu", "0;0"]);
    assert_eq!(code, 64);
    assert!(err.contains("1/x;0"));
    assert_eq!(run(&["frobnicate"]).0, 64);
    assert_eq!(run(&["emit", "--mode", "strange"]).0, 64);
    assert_eq!(run(&["emit", "--n", "1"]).0, 64);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn table_default_range() {
    let (code, out, _) = run(&["table", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let got: Vec<(u64, u64)> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["n"].as_u64().unwrap(), r["lambda"].as_u64().unwrap()))
        .collect();
    assert_eq!(got, [(3, 3), (4, 2), (5, 5), (6, 3), (7, 7), (8, 4), (9, 9), (10, 5)]);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rel.tex");
    let (code, stdout, _) = run(&["emit", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("3\\cdot"));
}
