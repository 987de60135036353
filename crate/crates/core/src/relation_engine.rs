//! Term lists and numerical checks for
//!
//! ```text
//! λ^g · Π_j θ_{μ_j}(z_j, τ) = Σ_a e[x_a] · Π_j θ_{ν_j + a}(w_j, τ),   w = z·S_n,  ν = μ·S_n
//! ```
//!
//! Three coefficient rules are available:
//!
//! * [`CoefficientMode::Modified`]: `x_a = −(Σμ′_j + λa′)·a″`, shift `a = (a′; a″)`.
//! * [`CoefficientMode::Naive`]: `x_a = −(Σμ′_j + n a′)·a″`, same shifts. Wrong for even `n`.
//! * [`CoefficientMode::Corrected`]: shift `(a′; c″)` with `c″ = (2λ/n)a″` and
//!   `x_a = −(Σμ′_j + (n/2)a′)·c″`. Identical to `Modified` for even `n`. For odd
//!   `n` the bottom shift is doubled; this is the form the character sum over
//!   `L/L_1` actually produces, and the only one of the three that holds
//!   numerically for odd `n`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charalg::{cycle_number, enumerate_shifts, Characteristic};
use crate::error::{Result, ThetaError};
use crate::rational::Rational;
use crate::sn_transform::{a_matrix, s_matrix, ArgTuple, TransformMatrix};
use crate::theta_eval::{e_rational, theta, EvalSettings, PeriodMatrix, ThetaValue};

pub const DEFAULT_SEED: u64 = 0xA11CE;
pub const DEGENERATE_FLOOR: f64 = 1e-12;
pub const GENERIC_THRESHOLD: f64 = 1e-6;
pub const MAX_RESAMPLES: u32 = 20;
const REL_ERROR_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    Modified,
    Naive,
    Corrected,
}

impl CoefficientMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            CoefficientMode::Modified => "modified",
            CoefficientMode::Naive => "naive",
            CoefficientMode::Corrected => "corrected",
        }
    }
}

impl fmt::Display for CoefficientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoefficientMode {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modified" => Ok(CoefficientMode::Modified),
            "naive" => Ok(CoefficientMode::Naive),
            "corrected" => Ok(CoefficientMode::Corrected),
            _ => Err(ThetaError::Parse {
                what: "coefficient mode",
                token: s.to_string(),
            }),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct RelationSpec {
    n: usize,
    genus: usize,
    lambda: u32,
    mu: Vec<Characteristic>,
    mode: CoefficientMode,
}

impl RelationSpec {
    pub fn new(n: usize, genus: usize, mu: Vec<Characteristic>, mode: CoefficientMode) -> Result<Self> {
        let lambda = cycle_number(n as u32)?;
        if genus == 0 {
            return Err(ThetaError::Domain("genus must be >= 1".into()));
        }
        if mu.len() != n {
            return Err(ThetaError::Dimension(format!("{} characteristics for n = {n}", mu.len())));
        }
        if let Some(bad) = mu.iter().find(|m| m.genus() != genus) {
            return Err(ThetaError::Dimension(format!(
                "characteristic {bad} has genus {}, expected {genus}",
                bad.genus()
            )));
        }
        Ok(RelationSpec {
            n,
            genus,
            lambda,
            mu,
            mode,
        })
    }

    /// All `μ_j = (0; 0)`.
    pub fn zero(n: usize, genus: usize, mode: CoefficientMode) -> Result<Self> {
        Self::new(n, genus, vec![Characteristic::zero(genus); n], mode)
    }

    pub fn with_mode(&self, mode: CoefficientMode) -> Self {
        RelationSpec { mode, ..self.clone() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn mu(&self) -> &[Characteristic] {
        &self.mu
    }

    pub fn mode(&self) -> CoefficientMode {
        self.mode
    }

    pub fn matrix(&self) -> TransformMatrix {
        s_matrix(self.n).expect("n >= 2 checked at construction")
    }

    /// `ν = μ·S_n`.
    pub fn nu(&self) -> Vec<Characteristic> {
        self.matrix()
            .apply_to_chars(&self.mu)
            .expect("dimensions checked at construction")
    }

    pub fn top_sum(&self) -> Vec<Rational> {
        (0..self.genus)
            .map(|a| self.mu.iter().map(|m| m.top()[a]).sum())
            .collect()
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RelationTerm {
    /// The characteristic added to every `ν_j`.
    pub shift: Characteristic,
    /// Coefficient is `e[exponent]`; reduced to `[0, 1)`.
    pub exponent: Rational,
    pub nu_shifted: Vec<Characteristic>,
}

impl RelationTerm {
    pub fn coefficient(&self) -> Complex64 {
        e_rational(self.exponent)
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| *x * *y).sum()
}

pub fn build_relation(spec: &RelationSpec) -> Result<Vec<RelationTerm>> {
    let n = spec.n as i64;
    let lambda = spec.lambda as i64;
    let nu = spec.nu();
    let top_sum = spec.top_sum();
    let shifts = enumerate_shifts(spec.genus, spec.lambda)?;
    let (kappa, bottom_scale) = match spec.mode {
        CoefficientMode::Modified => (Rational::integer(lambda), Rational::ONE),
        CoefficientMode::Naive => (Rational::integer(n), Rational::ONE),
        CoefficientMode::Corrected => (Rational::new(n, 2)?, Rational::new(2 * lambda, n)?),
    };
    shifts
        .into_iter()
        .map(|a| {
            let bottom: Vec<Rational> = a.bottom().iter().map(|b| bottom_scale * *b).collect();
            let shift = Characteristic::new(a.top().to_vec(), bottom)?;
            let weight: Vec<Rational> = top_sum
                .iter()
                .zip(shift.top())
                .map(|(s, t)| *s + kappa * *t)
                .collect();
            let exponent = (-dot(&weight, shift.bottom())).fract();
            let nu_shifted = nu.iter().map(|v| v.add(&shift)).collect::<Result<Vec<_>>>()?;
            Ok(RelationTerm {
                shift,
                exponent,
                nu_shifted,
            })
        })
        .collect()
}

/// A computed side of a relation with its propagated error bound.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SideValue {
    pub value: Complex64,
    pub error_bound: f64,
}

fn product(values: &[ThetaValue]) -> SideValue {
    let mut value = Complex64::new(1.0, 0.0);
    let mut upper = 1.0;
    let mut modulus = 1.0;
    for v in values {
        value *= v.value;
        upper *= v.value.norm() + v.error_bound();
        modulus *= v.value.norm();
    }
    SideValue {
        value,
        error_bound: (upper - modulus) + 2.0 * values.len() as f64 * f64::EPSILON * modulus,
    }
}

fn check_args(n: usize, genus: usize, z: &ArgTuple, tau: &PeriodMatrix) -> Result<()> {
    if z.len() != n || z.genus() != genus || tau.genus() != genus {
        return Err(ThetaError::Dimension(format!(
            "expected {n} arguments of genus {genus}, got {} of genus {} with genus-{} τ",
            z.len(),
            z.genus(),
            tau.genus()
        )));
    }
    Ok(())
}

/// `Π_j θ_{chars[j]}(args[j], τ)`.
pub fn theta_product(
    chars: &[Characteristic],
    args: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<SideValue> {
    let values = chars
        .iter()
        .zip(&args.0)
        .map(|(c, z)| theta(c, z, tau, settings))
        .collect::<Result<Vec<_>>>()?;
    Ok(product(&values))
}

pub fn lhs_value(
    spec: &RelationSpec,
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<SideValue> {
    check_args(spec.n, spec.genus, z, tau)?;
    let p = theta_product(&spec.mu, z, tau, settings)?;
    let scale = (spec.lambda as f64).powi(spec.genus as i32);
    Ok(SideValue {
        value: p.value * scale,
        error_bound: p.error_bound * scale,
    })
}

/// Sum of `e[x_a]·Π θ_{ν_j+a}(w_j)` over a prepared term list.
pub fn rhs_from_terms(
    terms: &[RelationTerm],
    w: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<SideValue> {
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_bound = 0.0;
    for t in terms {
        let p = theta_product(&t.nu_shifted, w, tau, settings)?;
        value += t.coefficient() * p.value;
        error_bound += p.error_bound + 2.0 * f64::EPSILON * p.value.norm();
    }
    Ok(SideValue { value, error_bound })
}

pub fn rhs_value(
    spec: &RelationSpec,
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<SideValue> {
    check_args(spec.n, spec.genus, z, tau)?;
    let w = spec.matrix().apply_to_args(z)?;
    rhs_from_terms(&build_relation(spec)?, &w, tau, settings)
}

/// Seeded source of `(τ, z)` trial points.
///
/// Each trial index draws from its own ChaCha stream, so a trial's inputs do
/// not depend on which other trials ran or in what order.
#[derive(Clone, Debug)]
pub struct TrialSampler {
    seed: u64,
    fixed_tau: Option<PeriodMatrix>,
}

impl Default for TrialSampler {
    fn default() -> Self {
        TrialSampler::new(DEFAULT_SEED)
    }
}

impl TrialSampler {
    pub fn new(seed: u64) -> Self {
        TrialSampler {
            seed,
            fixed_tau: None,
        }
    }

    /// Pin `τ` and sample only the arguments.
    pub fn with_fixed_tau(mut self, tau: PeriodMatrix) -> Self {
        self.fixed_tau = Some(tau);
        self
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    fn rng(&self, index: u64, attempt: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((index << 8) | attempt as u64);
        rng
    }

    #[allow(clippy::needless_range_loop)]
    fn sample_tau(rng: &mut ChaCha8Rng, genus: usize) -> PeriodMatrix {
        if genus == 1 {
            let tau = Complex64::new(rng.gen_range(-0.5..=0.5), rng.gen_range(0.8..=1.6));
            return PeriodMatrix::g1(tau).expect("Im τ >= 0.8");
        }
        loop {
            let mut rows = vec![vec![Complex64::new(0.0, 0.0); genus]; genus];
            for i in 0..genus {
                let d = rng.gen_range(0.9..=1.4);
                for j in i..genus {
                    let w = 0.2 * rng.gen_range(-1.0..=1.0);
                    let re = rng.gen_range(-0.3..=0.3);
                    let im = if i == j { d + w } else { w };
                    rows[i][j] = Complex64::new(re, im);
                    rows[j][i] = rows[i][j];
                }
            }
            if let Ok(tau) = PeriodMatrix::new(rows) {
                return tau;
            }
        }
    }

    fn sample_args(rng: &mut ChaCha8Rng, n: usize, genus: usize) -> ArgTuple {
        ArgTuple(
            (0..n)
                .map(|_| {
                    (0..genus)
                        .map(|_| Complex64::new(rng.gen_range(-0.4..=0.4), rng.gen_range(-0.4..=0.4)))
                        .collect()
                })
                .collect(),
        )
    }

    /// Trial point number `index`; `attempt > 0` gives the resamples used to avoid
    /// accidental agreement in falsification runs.
    pub fn sample(&self, n: usize, genus: usize, index: u64, attempt: u32) -> (PeriodMatrix, ArgTuple) {
        let mut rng = self.rng(index, attempt);
        let tau = match &self.fixed_tau {
            Some(t) => t.clone(),
            None => Self::sample_tau(&mut rng, genus),
        };
        let z = Self::sample_args(&mut rng, n, genus);
        (tau, z)
    }

    pub fn sample_tau_only(&self, genus: usize, index: u64) -> PeriodMatrix {
        self.sample(1, genus, index, 0).0
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrialStatus {
    Pass,
    Fail,
    /// Both sides below `1e-12`; excluded from the maximum error.
    DegeneratePass,
    /// The naive relation agreed at every resample; nothing was falsified.
    NonGeneric,
    EvalFailure,
}

impl TrialStatus {
    pub fn is_pass(&self) -> bool {
        matches!(
            self,
            TrialStatus::Pass | TrialStatus::DegeneratePass | TrialStatus::NonGeneric
        )
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub seed_index: u64,
    pub tau: PeriodMatrix,
    pub z: ArgTuple,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub abs_error: f64,
    pub rel_error: f64,
    /// Sum of the two sides' propagated error bounds.
    pub error_bound: f64,
    pub status: TrialStatus,
    pub resamples: u32,
    pub settings: EvalSettings,
    pub message: Option<String>,
}

impl VerificationReport {
    pub fn from_sides(
        seed_index: u64,
        tau: PeriodMatrix,
        z: ArgTuple,
        lhs: SideValue,
        rhs: SideValue,
        tol: f64,
        settings: EvalSettings,
    ) -> Self {
        let abs_error = (lhs.value - rhs.value).norm();
        let denom = lhs.value.norm().max(rhs.value.norm()).max(REL_ERROR_FLOOR);
        let rel_error = abs_error / denom;
        let status = if lhs.value.norm() < DEGENERATE_FLOOR && rhs.value.norm() < DEGENERATE_FLOOR {
            TrialStatus::DegeneratePass
        } else if rel_error <= tol {
            TrialStatus::Pass
        } else {
            TrialStatus::Fail
        };
        VerificationReport {
            seed_index,
            tau,
            z,
            lhs: Some(lhs.value),
            rhs: Some(rhs.value),
            abs_error,
            rel_error,
            error_bound: lhs.error_bound + rhs.error_bound,
            status,
            resamples: 0,
            settings,
            message: None,
        }
    }

    pub fn eval_failure(seed_index: u64, tau: PeriodMatrix, z: ArgTuple, err: &ThetaError, settings: EvalSettings) -> Self {
        VerificationReport {
            seed_index,
            tau,
            z,
            lhs: None,
            rhs: None,
            abs_error: f64::NAN,
            rel_error: f64::NAN,
            error_bound: f64::NAN,
            status: TrialStatus::EvalFailure,
            resamples: 0,
            settings,
            message: Some(err.to_string()),
        }
    }

    /// Counts toward the maximum relative error.
    pub fn is_scored(&self) -> bool {
        matches!(self.status, TrialStatus::Pass | TrialStatus::Fail)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug)]
pub struct VerificationOutcome {
    pub reports: Vec<VerificationReport>,
    pub tolerance: f64,
}

impl VerificationOutcome {
    pub fn max_rel_error(&self) -> f64 {
        self.reports
            .iter()
            .filter(|r| r.is_scored())
            .map(|r| r.rel_error)
            .fold(0.0, f64::max)
    }

    pub fn identity_failures(&self) -> usize {
        self.reports.iter().filter(|r| r.status == TrialStatus::Fail).count()
    }

    pub fn eval_failures(&self) -> usize {
        self.reports
            .iter()
            .filter(|r| r.status == TrialStatus::EvalFailure)
            .count()
    }

    pub fn verdict(&self) -> Verdict {
        if self.reports.iter().all(|r| r.status.is_pass()) {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// 0 pass, 1 identity failure, 2 evaluation failure only.
    pub fn exit_code(&self) -> i32 {
        if self.identity_failures() > 0 {
            1
        } else if self.eval_failures() > 0 {
            2
        } else {
            0
        }
    }
}

fn evaluate_point(
    spec: &RelationSpec,
    terms: &[RelationTerm],
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<(SideValue, SideValue)> {
    let lhs = lhs_value(spec, z, tau, settings)?;
    let w = spec.matrix().apply_to_args(z)?;
    let rhs = rhs_from_terms(terms, &w, tau, settings)?;
    Ok((lhs, rhs))
}

pub fn verify(
    spec: &RelationSpec,
    trials: usize,
    tol: f64,
    sampler: &TrialSampler,
    settings: &EvalSettings,
) -> Result<VerificationOutcome> {
    if trials == 0 {
        return Err(ThetaError::Domain("trials must be >= 1".into()));
    }
    let terms = build_relation(spec)?;
    // Resampling only makes sense when the naive list actually differs.
    let falsifying = spec.mode == CoefficientMode::Naive
        && terms != build_relation(&spec.with_mode(CoefficientMode::Modified))?;

    let reports = (0..trials as u64)
        .into_par_iter()
        .map(|index| {
            let mut attempt = 0;
            loop {
                let (tau, z) = sampler.sample(spec.n, spec.genus, index, attempt);
                let (lhs, rhs) = match evaluate_point(spec, &terms, &z, &tau, settings) {
                    Ok(v) => v,
                    Err(e) => {
                        let mut r = VerificationReport::eval_failure(index, tau, z, &e, *settings);
                        r.resamples = attempt;
                        return r;
                    }
                };
                let generic = (lhs.value - rhs.value).norm() >= GENERIC_THRESHOLD * lhs.value.norm();
                if falsifying && !generic && attempt < MAX_RESAMPLES {
                    attempt += 1;
                    continue;
                }
                let mut r = VerificationReport::from_sides(index, tau, z, lhs, rhs, tol, *settings);
                r.resamples = attempt;
                if falsifying && !generic {
                    r.status = TrialStatus::NonGeneric;
                }
                return r;
            }
        })
        .collect();
    Ok(VerificationOutcome {
        reports,
        tolerance: tol,
    })
}

/// `Σ_{α,β ∈ {0,1}} c_{αβ} Π_j θ_{(α/2; β/2)}(w_j)`, `w = z·m`, against `2 Π_j θ_{00}(z_j)`.
pub fn four_term_relation(
    m: &TransformMatrix,
    coefficients: [Complex64; 4],
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
) -> Result<(SideValue, SideValue)> {
    check_args(4, 1, z, tau)?;
    let zero = vec![Characteristic::zero(1); 4];
    let p = theta_product(&zero, z, tau, settings)?;
    let lhs = SideValue {
        value: 2.0 * p.value,
        error_bound: 2.0 * p.error_bound,
    };
    let w = m.apply_to_args(z)?;
    let half = |k: i64| Rational::new(k, 2).expect("nonzero denominator");
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_bound = 0.0;
    for (idx, c) in coefficients.iter().enumerate() {
        let (alpha, beta) = ((idx / 2) as i64, (idx % 2) as i64);
        let ch = Characteristic::g1(half(alpha), half(beta));
        let p = theta_product(&vec![ch; 4], &w, tau, settings)?;
        value += c * p.value;
        error_bound += p.error_bound;
    }
    Ok((lhs, SideValue { value, error_bound }))
}

/// `2(00) = (00)′ + (01)′ + (10)′ + (11)′` with `w = z·A`.
pub fn verify_jacobi_a(
    z: &ArgTuple,
    tau: &PeriodMatrix,
    settings: &EvalSettings,
    tol: f64,
) -> Result<VerificationReport> {
    let one = Complex64::new(1.0, 0.0);
    let (lhs, rhs) = four_term_relation(&a_matrix(), [one; 4], z, tau, settings)?;
    Ok(VerificationReport::from_sides(0, tau.clone(), z.clone(), lhs, rhs, tol, *settings))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn nine_terms_with_printed_coefficients() {
        let spec = RelationSpec::zero(3, 1, CoefficientMode::Modified).unwrap();
        let terms = build_relation(&spec).unwrap();
        assert_eq!(terms.len(), 9);
        let exps: Vec<String> = terms.iter().map(|t| t.exponent.to_string()).collect();
        // order (0;0) (0;1/3) (0;2/3) (1/3;0) (1/3;1/3) (1/3;2/3) (2/3;0) (2/3;1/3) (2/3;2/3)
        assert_eq!(exps, ["0", "0", "0", "0", "2/3", "1/3", "0", "1/3", "2/3"]);
        for t in &terms {
            assert!(t.nu_shifted.iter().all(|c| c == &t.shift));
        }
    }

    #[test]
    fn smith_signs() {
        let spec = RelationSpec::zero(4, 1, CoefficientMode::Modified).unwrap();
        let terms = build_relation(&spec).unwrap();
        let exps: Vec<String> = terms.iter().map(|t| t.exponent.to_string()).collect();
        assert_eq!(exps, ["0", "0", "0", "1/2"]);
        assert_eq!(terms[3].shift.to_string(), "1/2;1/2");
        let naive = build_relation(&spec.with_mode(CoefficientMode::Naive)).unwrap();
        assert!(naive.iter().all(|t| t.exponent.is_zero()));
    }

    #[test]
    fn odd_n_naive_equals_modified() {
        for n in [3, 5, 7] {
            let spec = RelationSpec::zero(n, 1, CoefficientMode::Modified).unwrap();
            assert_eq!(
                build_relation(&spec).unwrap(),
                build_relation(&spec.with_mode(CoefficientMode::Naive)).unwrap()
            );
        }
    }

    #[test]
    fn corrected_matches_modified_for_even_n() {
        let mu: Vec<Characteristic> = ["1/3;0", "0;2/3", "1/3;1/3", "0;0", "2/3;0", "1/3;2/3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let spec = RelationSpec::new(6, 1, mu, CoefficientMode::Modified).unwrap();
        assert_eq!(
            build_relation(&spec).unwrap(),
            build_relation(&spec.with_mode(CoefficientMode::Corrected)).unwrap()
        );
    }

    #[test]
    fn corrected_doubles_bottom_shift_for_odd_n() {
        let spec = RelationSpec::zero(3, 1, CoefficientMode::Corrected).unwrap();
        let terms = build_relation(&spec).unwrap();
        assert_eq!(terms[4].shift, Characteristic::g1(r(1, 3), r(2, 3)));
        assert_eq!(terms[5].shift, Characteristic::g1(r(1, 3), r(4, 3)));
        // e[−(3/2)(1/3)(2/3)] = e[−1/3]
        assert_eq!(terms[4].exponent, r(2, 3));
    }

    #[test]
    fn spec_validation() {
        assert!(RelationSpec::zero(1, 1, CoefficientMode::Modified).is_err());
        assert!(RelationSpec::zero(3, 0, CoefficientMode::Modified).is_err());
        assert!(RelationSpec::new(3, 1, vec![Characteristic::zero(1); 2], CoefficientMode::Modified).is_err());
        assert!(RelationSpec::new(2, 1, vec![Characteristic::zero(1), Characteristic::zero(2)], CoefficientMode::Modified)
            .is_err());
        assert!("bogus".parse::<CoefficientMode>().is_err());
        assert_eq!("corrected".parse::<CoefficientMode>().unwrap(), CoefficientMode::Corrected);
    }

    #[test]
    fn lhs_golden_value() {
        // Independent mpmath summation (radius 40, 40 digits):
        // 3.2252980417466267924 + 0.33199781079925511909i
        let spec = RelationSpec::zero(3, 1, CoefficientMode::Modified).unwrap();
        let tau = PeriodMatrix::g1(c(0.3, 1.1)).unwrap();
        let z = ArgTuple::scalars(&[c(0.1, 0.0), c(0.2, 0.0), c(-0.05, 0.0)]);
        let v = lhs_value(&spec, &z, &tau, &EvalSettings::default()).unwrap();
        assert!((v.value - c(3.225_298_041_746_626_8, 0.331_997_810_799_255_1)).norm() < 1e-13);
    }

    #[test]
    fn lhs_vanishes_with_odd_characteristic_at_zero() {
        let mu: Vec<Characteristic> = ["1/2;1/2", "0;0", "1/3;0"].iter().map(|s| s.parse().unwrap()).collect();
        let spec = RelationSpec::new(3, 1, mu, CoefficientMode::Modified).unwrap();
        let tau = PeriodMatrix::g1(c(0.1, 1.2)).unwrap();
        let z = ArgTuple::scalars(&[c(0.0, 0.0), c(0.2, 0.1), c(-0.1, 0.3)]);
        assert!(lhs_value(&spec, &z, &tau, &EvalSettings::default()).unwrap().value.norm() < 1e-13);
    }

    #[test]
    fn wrong_argument_shapes() {
        let spec = RelationSpec::zero(3, 1, CoefficientMode::Modified).unwrap();
        let tau = PeriodMatrix::g1(c(0.0, 1.0)).unwrap();
        assert!(lhs_value(&spec, &ArgTuple::zeros(2, 1), &tau, &EvalSettings::default()).is_err());
        assert!(rhs_value(&spec, &ArgTuple::zeros(3, 2), &tau, &EvalSettings::default()).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_in_range() {
        let s = TrialSampler::default();
        let (t1, z1) = s.sample(3, 1, 7, 0);
        let (t2, z2) = s.sample(3, 1, 7, 0);
        assert_eq!(t1, t2);
        assert_eq!(z1, z2);
        let tau = t1.get(0, 0);
        assert!((-0.5..=0.5).contains(&tau.re) && (0.8..=1.6).contains(&tau.im));
        assert!(z1.0.iter().flatten().all(|z| z.re.abs() <= 0.4 && z.im.abs() <= 0.4));
        assert_ne!(s.sample(3, 1, 8, 0).1, z1);
        let (t, _) = s.sample(3, 2, 0, 0);
        assert_eq!(t.genus(), 2);
        assert!(t.lambda_min() > 0.3);
    }

    #[test]
    fn verify_smoke() {
        let spec = RelationSpec::zero(4, 1, CoefficientMode::Modified).unwrap();
        let out = verify(&spec, 5, 1e-10, &TrialSampler::default(), &EvalSettings::default()).unwrap();
        assert_eq!(out.verdict(), Verdict::Pass);
        assert_eq!(out.exit_code(), 0);
        let idx: Vec<u64> = out.reports.iter().map(|r| r.seed_index).collect();
        assert_eq!(idx, [0, 1, 2, 3, 4]);
        assert!(verify(&spec, 0, 1e-10, &TrialSampler::default(), &EvalSettings::default()).is_err());
    }

    #[test]
    fn eval_failures_get_exit_code_two() {
        let spec = RelationSpec::zero(4, 1, CoefficientMode::Modified).unwrap();
        let s = EvalSettings::new(1e-14, 1).unwrap();
        let out = verify(&spec, 3, 1e-10, &TrialSampler::default(), &s).unwrap();
        assert_eq!(out.eval_failures(), 3);
        assert_eq!(out.verdict(), Verdict::Fail);
        assert_eq!(out.exit_code(), 2);
    }

    #[test]
    fn degenerate_trials_are_flagged() {
        let tau = PeriodMatrix::g1(c(0.0, 1.0)).unwrap();
        let tiny = SideValue { value: c(1e-14, 0.0), error_bound: 0.0 };
        let zero = SideValue { value: c(0.0, 0.0), error_bound: 0.0 };
        let rep = VerificationReport::from_sides(0, tau, ArgTuple::zeros(1, 1), tiny, zero, 1e-9, EvalSettings::default());
        assert_eq!(rep.status, TrialStatus::DegeneratePass);
        assert!(!rep.is_scored());
    }
}
