//! Stable JSON, LaTeX and plain-text renderings.
//!
//! Floats are written with 17 significant digits (`{:.16e}`) through raw JSON
//! values, so identical inputs always produce identical bytes.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::charalg::Characteristic;
use crate::error::{Result, ThetaError};
use crate::identity_suite::{CaseVerdict, SuiteReport};
use crate::rational::Rational;
use crate::relation_engine::{RelationSpec, RelationTerm, VerificationOutcome, VerificationReport};
use crate::sn_transform::ArgTuple;
use crate::theta_eval::PeriodMatrix;

pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(text: String) -> Box<RawValue> {
    RawValue::from_string(text).expect("generated JSON is well formed")
}

fn complex_json(c: Complex64) -> String {
    format!("[{},{}]", format_f64(c.re), format_f64(c.im))
}

fn tau_json(tau: &PeriodMatrix) -> String {
    let rows: Vec<String> = tau
        .rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| complex_json(*c)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn args_json(z: &ArgTuple) -> String {
    let rows: Vec<String> = z
        .0
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|c| complex_json(*c)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpecDoc {
    pub n: usize,
    pub g: usize,
    pub lambda: u32,
    pub mode: String,
    pub mu: Vec<Characteristic>,
}

impl SpecDoc {
    pub fn from_spec(spec: &RelationSpec) -> Self {
        SpecDoc {
            n: spec.n(),
            g: spec.genus(),
            lambda: spec.lambda(),
            mode: spec.mode().to_string(),
            mu: spec.mu().to_vec(),
        }
    }
}

/// Output of `emit --format json`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RelationDoc {
    pub spec: SpecDoc,
    pub terms: Vec<RelationTerm>,
}

impl RelationDoc {
    pub fn new(spec: &RelationSpec, terms: &[RelationTerm]) -> Self {
        RelationDoc {
            spec: SpecDoc::from_spec(spec),
            terms: terms.to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("relation documents serialise") + "\n"
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ThetaError::Parse {
            what: "relation JSON",
            token: e.to_string(),
        })
    }
}

#[derive(Serialize)]
struct TrialDoc {
    seed_index: u64,
    tau: Box<RawValue>,
    z: Box<RawValue>,
    lhs: Box<RawValue>,
    rhs: Box<RawValue>,
    abs_error: Box<RawValue>,
    rel_error: Box<RawValue>,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    message: Option<String>,
}

impl TrialDoc {
    fn new(r: &VerificationReport) -> Self {
        let opt = |c: Option<Complex64>| c.map(complex_json).unwrap_or_else(|| "null".into());
        TrialDoc {
            seed_index: r.seed_index,
            tau: raw(tau_json(&r.tau)),
            z: raw(args_json(&r.z)),
            lhs: raw(opt(r.lhs)),
            rhs: raw(opt(r.rhs)),
            abs_error: raw(format_f64(r.abs_error)),
            rel_error: raw(format_f64(r.rel_error)),
            status: serde_json::to_value(&r.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            message: r.message.clone(),
        }
    }
}

#[derive(Serialize)]
struct VerifyDoc<'a> {
    spec: SpecDoc,
    terms: &'a [RelationTerm],
    trials: Vec<TrialDoc>,
    verdict: String,
}

pub fn verification_json(spec: &RelationSpec, terms: &[RelationTerm], outcome: &VerificationOutcome) -> String {
    let doc = VerifyDoc {
        spec: SpecDoc::from_spec(spec),
        terms,
        trials: outcome.reports.iter().map(TrialDoc::new).collect(),
        verdict: serde_json::to_value(outcome.verdict())
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default(),
    };
    serde_json::to_string_pretty(&doc).expect("verification documents serialise") + "\n"
}

fn verdict_str(v: CaseVerdict) -> &'static str {
    match v {
        CaseVerdict::Pass => "pass",
        CaseVerdict::Fail => "fail",
        CaseVerdict::Error => "error",
    }
}

#[derive(Serialize)]
struct CaseDoc {
    name: String,
    samples: usize,
    max_rel_error: Box<RawValue>,
    verdict: &'static str,
}

#[derive(Serialize)]
struct SuiteDoc {
    cases: Vec<CaseDoc>,
    verdict: &'static str,
}

pub fn suite_json(report: &SuiteReport) -> String {
    let doc = SuiteDoc {
        cases: report
            .cases
            .iter()
            .map(|c| CaseDoc {
                name: c.name.clone(),
                samples: c.samples,
                max_rel_error: raw(format_f64(c.max_rel_error)),
                verdict: verdict_str(c.verdict),
            })
            .collect(),
        verdict: verdict_str(report.verdict),
    };
    serde_json::to_string_pretty(&doc).expect("suite documents serialise") + "\n"
}

pub fn suite_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    for c in &report.cases {
        out.push_str(&format!(
            "{:<22} samples={:<3} max_rel_error={:.3e} verdict={}\n",
            c.name,
            c.samples,
            c.max_rel_error,
            verdict_str(c.verdict)
        ));
    }
    out.push_str(&format!("verdict={}\n", verdict_str(report.verdict)));
    out
}

fn latex_rational(x: Rational) -> String {
    if x.is_integer() {
        x.to_string()
    } else if x.numer() < 0 {
        format!("-\\frac{{{}}}{{{}}}", -x.numer(), x.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", x.numer(), x.denom())
    }
}

fn latex_row(row: &[Rational]) -> String {
    row.iter().map(|x| latex_rational(*x)).collect::<Vec<_>>().join("\\,")
}

pub fn latex_binom(c: &Characteristic) -> String {
    format!("\\binom{{{}}}{{{}}}", latex_row(c.top()), latex_row(c.bottom()))
}

fn latex_coefficient(exponent: Rational, lambda: u32) -> String {
    if exponent.is_zero() {
        String::new()
    } else if lambda == 3 && 3 % exponent.denom() == 0 {
        match (exponent * Rational::integer(3)).numer() {
            1 => "\\omega".to_string(),
            _ => "\\omega^2".to_string(),
        }
    } else {
        format!("\\mathbf{{e}}\\left({}\\right)", latex_rational(exponent))
    }
}

/// Products of equal characteristics use the abbreviation; primes mark the `w` side.
fn latex_product(chars: &[Characteristic], var: &str, primed: bool) -> String {
    let prime = if primed { "'" } else { "" };
    if chars.windows(2).all(|w| w[0] == w[1]) {
        format!("{}{prime}", latex_binom(&chars[0]))
    } else {
        chars
            .iter()
            .enumerate()
            .map(|(j, c)| format!("\\vartheta{}({var}_{})", latex_binom(c), j + 1))
            .collect()
    }
}

/// Standalone math fragment for the relation.
pub fn relation_latex(spec: &RelationSpec, terms: &[RelationTerm]) -> String {
    let lambda = spec.lambda();
    let mut out = String::new();
    match spec.genus() {
        _ if lambda == 1 => {}
        1 => out.push_str(&format!("{lambda}\\cdot")),
        g => out.push_str(&format!("{lambda}^{{{g}}}\\cdot")),
    }
    out.push_str(&latex_product(spec.mu(), "z", false));
    out.push('=');
    for (i, t) in terms.iter().enumerate() {
        if i > 0 {
            out.push('+');
        }
        out.push_str(&latex_coefficient(t.exponent, lambda));
        out.push_str(&latex_product(&t.nu_shifted, "w", true));
    }
    if lambda == 3 {
        out.push_str(",\\qquad (\\omega=e^{2\\pi i/3})");
    }
    out.push('\n');
    out
}

pub fn relation_text(spec: &RelationSpec, terms: &[RelationTerm]) -> String {
    let mut out = format!(
        "n={} g={} lambda={} mode={} terms={}\n",
        spec.n(),
        spec.genus(),
        spec.lambda(),
        spec.mode(),
        terms.len()
    );
    for t in terms {
        let nu: Vec<String> = t.nu_shifted.iter().map(|c| format!("[{c}]")).collect();
        out.push_str(&format!("e[{}] shift=[{}] {}\n", t.exponent, t.shift, nu.join(" ")));
    }
    out
}

pub fn verification_text(spec: &RelationSpec, terms: &[RelationTerm], outcome: &VerificationOutcome) -> String {
    let mut out = format!(
        "verify n={} g={} lambda={} mode={} terms={} trials={} tol={:e}\n",
        spec.n(),
        spec.genus(),
        spec.lambda(),
        spec.mode(),
        terms.len(),
        outcome.reports.len(),
        outcome.tolerance
    );
    for r in &outcome.reports {
        out.push_str(&format!(
            "trial {:>4}: rel_error={:.3e} status={}\n",
            r.seed_index,
            r.rel_error,
            serde_json::to_value(&r.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default()
        ));
    }
    out.push_str(&format!(
        "max_rel_error={:.3e} identity_failures={} eval_failures={}\nverdict={}\n",
        outcome.max_rel_error(),
        outcome.identity_failures(),
        outcome.eval_failures(),
        if outcome.exit_code() == 0 { "pass" } else { "fail" }
    ));
    out
}
