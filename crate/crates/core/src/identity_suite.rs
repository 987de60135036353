//! Curated specialisations: addition-formula collapse, theta-constant
//! identities and the classical four-term relations.
//!
//! Relation-derived cases (`collapse-args-equal`, `constants-zero`,
//! `ternary-cube`, `ternary-constants`) take their coefficients from
//! [`build_relation`] under the chosen [`CoefficientMode`]. The Smith and Jacobi
//! cases use fixed coefficients and are cross-checked against the engine.

use num_complex::Complex64;
use serde::Serialize;

use crate::charalg::Characteristic;
use crate::error::{Result, ThetaError};
use crate::rational::Rational;
use crate::relation_engine::{
    build_relation, four_term_relation, lhs_value, rhs_value, verify_jacobi_a, CoefficientMode,
    RelationSpec, RelationTerm, SideValue, TrialSampler, TrialStatus, VerificationReport,
};
use crate::sn_transform::{s_matrix, ArgTuple};
use crate::theta_eval::{
    e_rational, theta, theta_constant, EvalSettings, PeriodMatrix, ThetaValue,
};

pub const IDENTITY_TOLERANCE: f64 = 1e-10;
/// Symmetry equalities must agree within this multiple of the reported error bounds.
pub const SYMMETRY_BOUND_FACTOR: f64 = 10.0;
pub const ODD_CONSTANT_CEILING: f64 = 1e-11;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Recipe {
    CollapseArgsEqual,
    ConstantsZero,
    JacobiQuartic,
    SmithRelation,
    JacobiARelation,
    TernaryCube,
    TernaryConstants,
    ConstantSymmetries,
}

#[derive(Clone, PartialEq, Debug)]
pub struct IdentityCase {
    pub name: &'static str,
    pub n: usize,
    pub g: usize,
    pub recipe: Recipe,
    pub tolerance: f64,
}

/// The suite, ordered by name.
pub fn cases() -> Vec<IdentityCase> {
    let case = |name, n, recipe| IdentityCase {
        name,
        n,
        g: 1,
        recipe,
        tolerance: IDENTITY_TOLERANCE,
    };
    let mut v = vec![
        case("collapse-args-equal", 3, Recipe::CollapseArgsEqual),
        case("constant-symmetries", 3, Recipe::ConstantSymmetries),
        case("constants-zero", 3, Recipe::ConstantsZero),
        case("jacobi-a-relation", 4, Recipe::JacobiARelation),
        case("jacobi-quartic", 4, Recipe::JacobiQuartic),
        case("smith-relation", 4, Recipe::SmithRelation),
        case("ternary-constants", 3, Recipe::TernaryConstants),
        case("ternary-cube", 3, Recipe::TernaryCube),
    ];
    v.sort_by_key(|c| c.name);
    v
}

/// One labelled sub-check of an identity.
#[derive(Clone, Debug)]
pub struct LabeledReport {
    pub label: String,
    pub report: VerificationReport,
    /// Checked against an absolute ceiling; left out of the relative maximum.
    pub absolute: bool,
}

#[derive(Clone, Debug, Default)]
pub struct CheckResult {
    pub parts: Vec<LabeledReport>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.report.status.is_pass())
    }

    pub fn max_rel_error(&self) -> f64 {
        self.parts
            .iter()
            .filter(|p| !p.absolute && p.report.is_scored())
            .map(|p| p.report.rel_error)
            .fold(0.0, f64::max)
    }

    pub fn part(&self, label: &str) -> Option<&VerificationReport> {
        self.parts.iter().find(|p| p.label == label).map(|p| &p.report)
    }

    fn push_rel(&mut self, label: impl Into<String>, ctx: &Ctx, lhs: SideValue, rhs: SideValue, tol: f64) {
        let report = VerificationReport::from_sides(0, ctx.tau.clone(), ctx.z.clone(), lhs, rhs, tol, ctx.settings);
        self.parts.push(LabeledReport {
            label: label.into(),
            report,
            absolute: false,
        });
    }

    /// Pass iff `|lhs − rhs| ≤ ceiling`.
    fn push_abs(&mut self, label: impl Into<String>, ctx: &Ctx, lhs: SideValue, rhs: SideValue, ceiling: f64) {
        let mut report =
            VerificationReport::from_sides(0, ctx.tau.clone(), ctx.z.clone(), lhs, rhs, f64::INFINITY, ctx.settings);
        report.status = if report.abs_error <= ceiling {
            TrialStatus::Pass
        } else {
            TrialStatus::Fail
        };
        self.parts.push(LabeledReport {
            label: label.into(),
            report,
            absolute: true,
        });
    }
}

struct Ctx {
    tau: PeriodMatrix,
    z: ArgTuple,
    settings: EvalSettings,
}

fn side(v: ThetaValue) -> SideValue {
    SideValue {
        value: v.value,
        error_bound: v.error_bound(),
    }
}

fn power(v: &ThetaValue, k: i32) -> SideValue {
    let m = v.value.norm();
    SideValue {
        value: v.value.powi(k),
        error_bound: (m + v.error_bound()).powi(k) - m.powi(k) + 4.0 * f64::EPSILON * m.powi(k),
    }
}

fn sum(parts: impl IntoIterator<Item = (Complex64, SideValue)>) -> SideValue {
    parts.into_iter().fold(
        SideValue {
            value: Complex64::new(0.0, 0.0),
            error_bound: 0.0,
        },
        |acc, (c, s)| SideValue {
            value: acc.value + c * s.value,
            error_bound: acc.error_bound + s.error_bound,
        },
    )
}

fn ch(top: (i64, i64), bottom: (i64, i64)) -> Characteristic {
    Characteristic::g1(
        Rational::new(top.0, top.1).expect("nonzero"),
        Rational::new(bottom.0, bottom.1).expect("nonzero"),
    )
}

fn require_g1(tau: &PeriodMatrix) -> Result<()> {
    if tau.genus() != 1 {
        return Err(ThetaError::Dimension("identity check needs a genus-1 τ".into()));
    }
    Ok(())
}

fn ternary_terms(mode: CoefficientMode) -> Result<Vec<RelationTerm>> {
    build_relation(&RelationSpec::zero(3, 1, mode)?)
}

/// Five 1's, two ω and two ω², ω = e[1/3].
pub fn ternary_multiset_ok(terms: &[RelationTerm]) -> bool {
    let mut counts = [0usize; 3];
    for t in terms {
        let e = t.exponent;
        if 3 % e.denom() != 0 {
            return false;
        }
        counts[(e * Rational::integer(3)).numer() as usize] += 1;
    }
    terms.len() == 9 && counts == [5, 2, 2]
}

/// `3·θ(0;0)³(x) = Σ_a e[x_a]·θ_a³(x)`, all nine terms kept.
pub fn ternary_cube_check(
    tau: &PeriodMatrix,
    x: Complex64,
    settings: &EvalSettings,
    mode: CoefficientMode,
    tol: f64,
) -> Result<CheckResult> {
    require_g1(tau)?;
    let terms = ternary_terms(mode)?;
    let z = [x];
    let lhs = power(&theta(&Characteristic::zero(1), &z, tau, settings)?, 3);
    let lhs = SideValue {
        value: 3.0 * lhs.value,
        error_bound: 3.0 * lhs.error_bound,
    };
    let rhs = sum(terms
        .iter()
        .map(|t| Ok((t.coefficient(), power(&theta(&t.shift, &z, tau, settings)?, 3))))
        .collect::<Result<Vec<_>>>()?);
    let ctx = Ctx {
        tau: tau.clone(),
        z: ArgTuple::scalars(&[x; 3]),
        settings: *settings,
    };
    let mut out = CheckResult::default();
    out.push_rel("cube", &ctx, lhs, rhs, tol);
    Ok(out)
}

/// Effective coefficient of the term whose shift reduces to `target` mod 1, with
/// the phase of the cube moved onto the coefficient.
fn reduced_coefficient(terms: &[RelationTerm], target: &Characteristic, power: i64) -> Result<Complex64> {
    for t in terms {
        let top = t.shift.top()[0];
        let bottom = t.shift.bottom()[0];
        if top.fract() == target.top()[0] && bottom.fract() == target.bottom()[0] {
            let k_top = top - top.fract();
            let k_bottom = bottom - bottom.fract();
            // θ_{(α+j; β+k)} = e[αk]·θ_{(α; β)}
            debug_assert!(k_top.is_integer());
            let phase = target.top()[0].checked_mul_int(k_bottom.numer() * power);
            return Ok(e_rational((t.exponent + phase).fract()));
        }
    }
    Err(ThetaError::Domain(format!("no term with shift {target}")))
}

/// `[0;0]³ = [0;⅓]³ + [⅓;0]³ + c₁[⅓;⅔]³ + c₂[⅓;⅓]³` plus the pairing equalities used
/// to fold the nine-term constant relation onto four terms.
pub fn ternary_constants_check(
    tau: &PeriodMatrix,
    settings: &EvalSettings,
    mode: CoefficientMode,
    tol: f64,
) -> Result<CheckResult> {
    require_g1(tau)?;
    let terms = ternary_terms(mode)?;
    let coef = |t: (i64, i64), b: (i64, i64)| reduced_coefficient(&terms, &ch(t, b), 3);
    let one = Complex64::new(1.0, 0.0);
    for (a, b) in [
        (((0, 1), (1, 3)), ((0, 1), (2, 3))),
        (((1, 3), (0, 1)), ((2, 3), (0, 1))),
        (((1, 3), (2, 3)), ((2, 3), (1, 3))),
        (((1, 3), (1, 3)), ((2, 3), (2, 3))),
    ] {
        if (coef(a.0, a.1)? - coef(b.0, b.1)?).norm() > 1e-15 {
            return Err(ThetaError::Domain("paired terms carry different coefficients".into()));
        }
    }
    if (coef((0, 1), (1, 3))? - one).norm() > 1e-15 || (coef((1, 3), (0, 1))? - one).norm() > 1e-15 {
        return Err(ThetaError::Domain("untwisted terms must have coefficient 1".into()));
    }

    let cube = |t: (i64, i64), b: (i64, i64)| -> Result<ThetaValue> { theta_constant(&ch(t, b), tau, settings) };
    let c00 = cube((0, 1), (0, 1))?;
    let c0a = cube((0, 1), (1, 3))?;
    let c0b = cube((0, 1), (2, 3))?;
    let ca0 = cube((1, 3), (0, 1))?;
    let cb0 = cube((2, 3), (0, 1))?;
    let caa = cube((1, 3), (1, 3))?;
    let cab = cube((1, 3), (2, 3))?;
    let cba = cube((2, 3), (1, 3))?;
    let cbb = cube((2, 3), (2, 3))?;

    let ctx = Ctx {
        tau: tau.clone(),
        z: ArgTuple::zeros(3, 1),
        settings: *settings,
    };
    let mut out = CheckResult::default();
    let rhs = sum([
        (one, power(&c0a, 3)),
        (one, power(&ca0, 3)),
        (coef((1, 3), (2, 3))?, power(&cab, 3)),
        (coef((1, 3), (1, 3))?, power(&caa, 3)),
    ]);
    out.push_rel("constants", &ctx, power(&c00, 3), rhs, tol);
    out.push_rel("[1/3;0]^3=[2/3;0]^3", &ctx, power(&ca0, 3), power(&cb0, 3), tol);
    out.push_rel("[0;1/3]^3=[0;2/3]^3", &ctx, power(&c0a, 3), power(&c0b, 3), tol);
    out.push_rel("[1/3;1/3]^3=[2/3;2/3]^3", &ctx, power(&caa, 3), power(&cbb, 3), tol);
    out.push_rel("[2/3;1/3]^3=[1/3;2/3]^3", &ctx, power(&cba, 3), power(&cab, 3), tol);
    Ok(out)
}

fn jacobi(alpha: i64, beta: i64) -> Characteristic {
    ch((alpha, 2), (beta, 2))
}

/// `ϑ00⁴ + ϑ11⁴ = ϑ01⁴ + ϑ10⁴` at `x` and at `0`, plus `|ϑ11(0)| < 1e-11`.
pub fn jacobi_quartic_check(
    tau: &PeriodMatrix,
    x: Complex64,
    settings: &EvalSettings,
    tol: f64,
) -> Result<CheckResult> {
    require_g1(tau)?;
    let mut out = CheckResult::default();
    for (label, arg) in [("quartic", x), ("quartic-constants", Complex64::new(0.0, 0.0))] {
        let z = [arg];
        let t = |a, b| theta(&jacobi(a, b), &z, tau, settings);
        let (t00, t01, t10, t11) = (t(0, 0)?, t(0, 1)?, t(1, 0)?, t(1, 1)?);
        let one = Complex64::new(1.0, 0.0);
        let ctx = Ctx {
            tau: tau.clone(),
            z: ArgTuple::scalars(&[arg; 4]),
            settings: *settings,
        };
        let lhs = sum([(one, power(&t00, 4)), (one, power(&t11, 4))]);
        let rhs = sum([(one, power(&t01, 4)), (one, power(&t10, 4))]);
        out.push_rel(label, &ctx, lhs, rhs, tol);
        if arg == Complex64::new(0.0, 0.0) {
            let zero = SideValue {
                value: Complex64::new(0.0, 0.0),
                error_bound: 0.0,
            };
            out.push_abs("theta11(0)", &ctx, side(t11), zero, ODD_CONSTANT_CEILING);
        }
    }
    Ok(out)
}

/// `e(−αβ/2)` for `α, β ∈ {0, 1}`, in the order 00, 01, 10, 11.
pub fn smith_coefficients() -> [Complex64; 4] {
    let mut c = [Complex64::new(0.0, 0.0); 4];
    for (idx, slot) in c.iter_mut().enumerate() {
        let (alpha, beta) = ((idx / 2) as i64, (idx % 2) as i64);
        *slot = e_rational(Rational::new(-alpha * beta, 2).expect("nonzero"));
    }
    c
}

/// The engine's `n = 4` term list carries exactly the Smith coefficients.
pub fn smith_matches_engine() -> Result<bool> {
    let terms = build_relation(&RelationSpec::zero(4, 1, CoefficientMode::Modified)?)?;
    let expected = smith_coefficients();
    Ok(terms.len() == 4
        && terms.iter().enumerate().all(|(idx, t)| {
            t.shift == jacobi((idx / 2) as i64, (idx % 2) as i64) && (t.coefficient() - expected[idx]).norm() == 0.0
        }))
}

/// `2(00) = (00)′ + (01)′ + (10)′ − (11)′` with `w = z·S`.
pub fn smith_relation_check(
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
    tol: f64,
) -> Result<CheckResult> {
    let (lhs, rhs) = four_term_relation(&s_matrix(4)?, smith_coefficients(), z, tau, settings)?;
    let ctx = Ctx {
        tau: tau.clone(),
        z: z.clone(),
        settings: *settings,
    };
    let mut out = CheckResult::default();
    out.push_rel("smith", &ctx, lhs, rhs, tol);
    Ok(out)
}

pub fn jacobi_a_check(z: &ArgTuple, tau: &PeriodMatrix, settings: &EvalSettings, tol: f64) -> Result<CheckResult> {
    Ok(CheckResult {
        parts: vec![LabeledReport {
            label: "jacobi-a".into(),
            report: verify_jacobi_a(z, tau, settings, tol)?,
            absolute: false,
        }],
    })
}

/// `[1−α;0] = [α;0]`, `[0;1−β] = [0;β]`, `[1−α;β] = e^{−2πiα}[α;1−β]`.
pub fn constant_symmetries_check(tau: &PeriodMatrix, settings: &EvalSettings) -> Result<CheckResult> {
    require_g1(tau)?;
    let ctx = Ctx {
        tau: tau.clone(),
        z: ArgTuple::zeros(1, 1),
        settings: *settings,
    };
    let fractions = [(1, 3), (2, 3), (1, 4), (1, 5), (3, 7)];
    let mut out = CheckResult::default();
    let one = Rational::ONE;
    for &(p, q) in &fractions {
        let a = Rational::new(p, q)?;
        let c = |t: Rational, b: Rational| theta_constant(&Characteristic::g1(t, b), tau, settings);
        let push = |out: &mut CheckResult, label: String, l: ThetaValue, r: SideValue| {
            let l = side(l);
            let ceiling = SYMMETRY_BOUND_FACTOR * (l.error_bound + r.error_bound);
            out.push_abs(label, &ctx, l, r, ceiling);
        };
        push(&mut out, format!("[1-{a};0]=[{a};0]"), c(one - a, Rational::ZERO)?, side(c(a, Rational::ZERO)?));
        push(&mut out, format!("[0;1-{a}]=[0;{a}]"), c(Rational::ZERO, one - a)?, side(c(Rational::ZERO, a)?));
        for &(pb, qb) in &fractions {
            let b = Rational::new(pb, qb)?;
            let right = c(a, one - b)?;
            let phase = e_rational(-a);
            let r = SideValue {
                value: phase * right.value,
                error_bound: right.error_bound(),
            };
            push(&mut out, format!("[1-{a};{b}]=e(-{a})[{a};1-{b}]"), c(one - a, b)?, r);
        }
    }
    Ok(out)
}

/// The general relation with every argument equal, for `n = 3` and `n = 4`.
pub fn collapse_args_equal_check(
    tau: &PeriodMatrix,
    x: Complex64,
    settings: &EvalSettings,
    mode: CoefficientMode,
    tol: f64,
) -> Result<CheckResult> {
    general_at(tau, x, settings, mode, tol, "collapse")
}

/// The general relation at `z = 0`, for `n = 3` and `n = 4`.
pub fn constants_zero_check(
    tau: &PeriodMatrix,
    settings: &EvalSettings,
    mode: CoefficientMode,
    tol: f64,
) -> Result<CheckResult> {
    general_at(tau, Complex64::new(0.0, 0.0), settings, mode, tol, "constants")
}

fn general_at(
    tau: &PeriodMatrix,
    x: Complex64,
    settings: &EvalSettings,
    mode: CoefficientMode,
    tol: f64,
    label: &str,
) -> Result<CheckResult> {
    require_g1(tau)?;
    let mut out = CheckResult::default();
    for n in [3, 4] {
        let spec = RelationSpec::zero(n, 1, mode)?;
        let z = ArgTuple::scalars(&vec![x; n]);
        let lhs = lhs_value(&spec, &z, tau, settings)?;
        let rhs = rhs_value(&spec, &z, tau, settings)?;
        let ctx = Ctx {
            tau: tau.clone(),
            z,
            settings: *settings,
        };
        out.push_rel(format!("{label}-n{n}"), &ctx, lhs, rhs, tol);
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseVerdict {
    Pass,
    Fail,
    /// At least one sample could not be evaluated, and no identity failed.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub name: String,
    pub samples: usize,
    pub max_rel_error: f64,
    pub verdict: CaseVerdict,
    #[serde(skip)]
    pub eval_failures: usize,
    #[serde(skip)]
    pub identity_failures: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub cases: Vec<CaseReport>,
    pub verdict: CaseVerdict,
}

impl SuiteReport {
    pub fn case(&self, name: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            CaseVerdict::Pass => 0,
            CaseVerdict::Fail => 1,
            CaseVerdict::Error => 2,
        }
    }
}

fn run_case(case: &IdentityCase, sampler: &TrialSampler, index: u64, settings: &EvalSettings, mode: CoefficientMode) -> Result<CheckResult> {
    let (tau, z) = sampler.sample(4, 1, index, 0);
    let x = z.0[0][0];
    let tol = case.tolerance;
    match case.recipe {
        Recipe::CollapseArgsEqual => collapse_args_equal_check(&tau, x, settings, mode, tol),
        Recipe::ConstantsZero => constants_zero_check(&tau, settings, mode, tol),
        Recipe::JacobiQuartic => jacobi_quartic_check(&tau, x, settings, tol),
        Recipe::SmithRelation => smith_relation_check(&z, &tau, settings, tol),
        Recipe::JacobiARelation => jacobi_a_check(&z, &tau, settings, tol),
        Recipe::TernaryCube => ternary_cube_check(&tau, x, settings, mode, tol),
        Recipe::TernaryConstants => ternary_constants_check(&tau, settings, mode, tol),
        Recipe::ConstantSymmetries => constant_symmetries_check(&tau, settings),
    }
}

/// Run every case over `samples` seeded `(τ, x, z)` draws.
pub fn run_suite(samples: usize, seed: u64, settings: &EvalSettings, mode: CoefficientMode) -> SuiteReport {
    let sampler = TrialSampler::new(seed);
    let cases: Vec<CaseReport> = cases()
        .iter()
        .map(|case| {
            let mut max_rel_error: f64 = 0.0;
            let mut eval_failures = 0;
            let mut identity_failures = 0;
            for index in 0..samples as u64 {
                match run_case(case, &sampler, index, settings, mode) {
                    Ok(res) => {
                        max_rel_error = max_rel_error.max(res.max_rel_error());
                        if !res.passed() {
                            identity_failures += 1;
                        }
                    }
                    Err(ThetaError::Truncation { .. }) => eval_failures += 1,
                    Err(_) => identity_failures += 1,
                }
            }
            let verdict = if identity_failures > 0 {
                CaseVerdict::Fail
            } else if eval_failures > 0 {
                CaseVerdict::Error
            } else {
                CaseVerdict::Pass
            };
            CaseReport {
                name: case.name.to_string(),
                samples,
                max_rel_error,
                verdict,
                eval_failures,
                identity_failures,
            }
        })
        .collect();
    let verdict = if cases.iter().any(|c| c.verdict == CaseVerdict::Fail) {
        CaseVerdict::Fail
    } else if cases.iter().any(|c| c.verdict == CaseVerdict::Error) {
        CaseVerdict::Error
    } else {
        CaseVerdict::Pass
    };
    SuiteReport { cases, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eight_unique_cases() {
        let cs = cases();
        assert_eq!(cs.len(), 8);
        let mut names: Vec<_> = cs.iter().map(|c| c.name).collect();
        names.dedup();
        assert_eq!(names.len(), 8);
    }

    #[test]
    fn multisets() {
        for mode in [CoefficientMode::Modified, CoefficientMode::Corrected] {
            assert!(ternary_multiset_ok(&ternary_terms(mode).unwrap()));
        }
        let four = build_relation(&RelationSpec::zero(4, 1, CoefficientMode::Modified).unwrap()).unwrap();
        assert!(!ternary_multiset_ok(&four));
    }

    #[test]
    fn smith_engine_agreement() {
        assert!(smith_matches_engine().unwrap());
        let coeffs = smith_coefficients();
        assert_eq!(coeffs[3], c(-1.0, 0.0));
        assert_eq!(coeffs[0], c(1.0, 0.0));
    }

    #[test]
    fn reduced_coefficients_follow_the_mode() {
        let omega = e_rational(Rational::new(1, 3).unwrap());
        let m = ternary_terms(CoefficientMode::Modified).unwrap();
        assert!((reduced_coefficient(&m, &ch((1, 3), (2, 3)), 3).unwrap() - omega).norm() < 1e-15);
        let k = ternary_terms(CoefficientMode::Corrected).unwrap();
        assert!((reduced_coefficient(&k, &ch((1, 3), (1, 3)), 3).unwrap() - omega).norm() < 1e-15);
        assert!((reduced_coefficient(&k, &ch((1, 3), (2, 3)), 3).unwrap() - omega * omega).norm() < 1e-15);
    }

    #[test]
    fn quartic_and_smith_hold() {
        let s = EvalSettings::default();
        let tau = PeriodMatrix::g1(c(0.0, 1.0)).unwrap();
        let q = jacobi_quartic_check(&tau, c(0.2, 0.0), &s, 1e-10).unwrap();
        assert!(q.passed(), "{:?}", q);
        let z = ArgTuple::scalars(&[c(0.1, 0.2), c(-0.3, 0.05), c(0.2, -0.1), c(0.0, 0.3)]);
        let tau = PeriodMatrix::g1(c(0.1, 1.1)).unwrap();
        assert!(smith_relation_check(&z, &tau, &s, 1e-10).unwrap().passed());
    }

    #[test]
    fn non_genus_one_rejected() {
        let tau = PeriodMatrix::new(vec![vec![c(0.0, 1.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]).unwrap();
        assert!(ternary_constants_check(&tau, &EvalSettings::default(), CoefficientMode::Modified, 1e-10).is_err());
    }
}
