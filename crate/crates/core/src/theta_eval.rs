//! Truncated lattice sums for `θ_μ(z, τ)` with rational characteristics.
//!
//! ```text
//! θ_μ(z, τ) = Σ_{ξ ∈ Z^g} e[ ½ (ξ+μ′) τ ᵗ(ξ+μ′) + (ξ+μ′) ᵗ(z+μ″) ],   e[x] = exp(2πi x)
//! ```
//!
//! The sum runs over the box `‖ξ+μ′‖_∞ ≤ R`. The omitted part is bounded shell
//! by shell: the shell `r ≤ ‖x‖_∞ < r+1` holds at most `2g(2r+2)^(g−1)` lattice
//! points, and each has modulus at most `exp(−π λ_min r² + 2π ‖Im z‖ r)` once
//! `r ≥ ‖Im z‖ / λ_min`. The shell series is summed directly for a few shells and
//! closed with a geometric envelope.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::charalg::Characteristic;
use crate::error::{Result, ThetaError};
use crate::rational::Rational;

pub const MIN_TARGET_ABS_ERROR: f64 = 1e-14;
pub const MAX_RADIUS_CAP: u32 = 64;
pub const INITIAL_RADIUS: u32 = 4;
pub const RADIUS_STEP: u32 = 2;
pub const MAX_RADIUS_ENV: &str = "THETA_MAX_RADIUS";

const LAMBDA_MIN_MARGIN: f64 = 0.99;
const POWER_ITERATIONS: usize = 12;
const EXPLICIT_SHELLS: u32 = 8;

/// Symmetric `g×g` complex matrix with positive-definite imaginary part.
#[derive(Clone, PartialEq, Debug)]
pub struct PeriodMatrix {
    genus: usize,
    entries: Vec<Complex64>,
    lambda_min: f64,
}

impl PeriodMatrix {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let g = rows.len();
        if g == 0 || rows.iter().any(|r| r.len() != g) {
            return Err(ThetaError::Dimension("period matrix must be square and non-empty".into()));
        }
        let asym = (0..g).flat_map(|i| (0..i).map(move |j| (i, j))).find(|&(i, j)| rows[i][j] != rows[j][i]);
        if let Some((i, j)) = asym {
            return Err(ThetaError::Domain(format!("period matrix not symmetric at ({i},{j})")));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        let imag: Vec<f64> = entries.iter().map(|c| c.im).collect();
        let chol = cholesky(&imag, g).ok_or_else(|| {
            ThetaError::Domain("imaginary part of period matrix is not positive definite".into())
        })?;
        let lambda_min = smallest_eigenvalue(&imag, &chol, g);
        Ok(PeriodMatrix {
            genus: g,
            entries,
            lambda_min,
        })
    }

    pub fn g1(tau: Complex64) -> Result<Self> {
        Self::new(vec![vec![tau]])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.genus + j]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.genus).map(<[_]>::to_vec).collect()
    }

    /// Lower estimate of the smallest eigenvalue of `Im τ` (1% margin applied).
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }
}

fn cholesky(a: &[f64], g: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; g * g];
    for i in 0..g {
        for j in 0..=i {
            let mut s = a[i * g + j];
            for k in 0..j {
                s -= l[i * g + k] * l[j * g + k];
            }
            if i == j {
                if s <= 0.0 || !s.is_finite() {
                    return None;
                }
                l[i * g + i] = s.sqrt();
            } else {
                l[i * g + j] = s / l[j * g + j];
            }
        }
    }
    Some(l)
}

fn cholesky_solve(l: &[f64], g: usize, b: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; g];
    for i in 0..g {
        let s: f64 = (0..i).map(|k| l[i * g + k] * y[k]).sum();
        y[i] = (b[i] - s) / l[i * g + i];
    }
    let mut x = vec![0.0; g];
    for i in (0..g).rev() {
        let s: f64 = (i + 1..g).map(|k| l[k * g + i] * x[k]).sum();
        x[i] = (y[i] - s) / l[i * g + i];
    }
    x
}

/// Inverse power iteration, finished with a Rayleigh quotient.
fn rayleigh_after_inverse_iteration(a: &[f64], chol: &[f64], g: usize, seed: Vec<f64>) -> f64 {
    let mut x = seed;
    for _ in 0..POWER_ITERATIONS {
        let y = cholesky_solve(chol, g, &x);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        x = y.into_iter().map(|v| v / norm).collect();
    }
    (0..g)
        .map(|i| x[i] * (0..g).map(|j| a[i * g + j] * x[j]).sum::<f64>())
        .sum()
}

/// Certified lower estimate of the smallest eigenvalue.
///
/// The seed `(1,…,1)/√g` is an eigenvector whenever the rows have equal sums, so
/// two more seeds are tried and the smallest Rayleigh quotient kept. The margined
/// estimate `c` is then accepted only if `A − cE` still factorises; otherwise `c`
/// is halved until it does.
fn smallest_eigenvalue(a: &[f64], chol: &[f64], g: usize) -> f64 {
    let norm = |v: Vec<f64>| {
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / n).collect::<Vec<_>>()
    };
    let seeds = [
        vec![1.0; g],
        (0..g).map(|i| if i % 2 == 0 { 1.0 } else { -1.0 }).collect(),
        (0..g).map(|i| 1.0 / (i + 1) as f64).collect(),
    ];
    let estimate = seeds
        .into_iter()
        .map(|s| rayleigh_after_inverse_iteration(a, chol, g, norm(s)))
        .fold(f64::INFINITY, f64::min);
    let mut c = LAMBDA_MIN_MARGIN * estimate;
    loop {
        let mut shifted = a.to_vec();
        for i in 0..g {
            shifted[i * g + i] -= c;
        }
        if cholesky(&shifted, g).is_some() {
            return c;
        }
        c *= 0.5;
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EvalSettings {
    target_abs_error: f64,
    max_radius: u32,
}

impl EvalSettings {
    pub fn new(target_abs_error: f64, max_radius: u32) -> Result<Self> {
        if !target_abs_error.is_finite() || target_abs_error < MIN_TARGET_ABS_ERROR {
            return Err(ThetaError::Domain(format!(
                "target_abs_error must be >= {MIN_TARGET_ABS_ERROR:e}, got {target_abs_error:e}"
            )));
        }
        if max_radius == 0 || max_radius > MAX_RADIUS_CAP {
            return Err(ThetaError::Domain(format!(
                "max_radius must lie in 1..={MAX_RADIUS_CAP}, got {max_radius}"
            )));
        }
        Ok(EvalSettings {
            target_abs_error,
            max_radius,
        })
    }

    /// Defaults with `THETA_MAX_RADIUS` applied when set.
    pub fn from_env() -> Result<Self> {
        let mut s = Self::default();
        if let Ok(v) = std::env::var(MAX_RADIUS_ENV) {
            let r: u32 = v.trim().parse().map_err(|_| ThetaError::Parse {
                what: MAX_RADIUS_ENV,
                token: v.clone(),
            })?;
            s = Self::new(s.target_abs_error, r)?;
        }
        Ok(s)
    }

    pub fn target_abs_error(&self) -> f64 {
        self.target_abs_error
    }

    pub fn max_radius(&self) -> u32 {
        self.max_radius
    }
}

impl Default for EvalSettings {
    fn default() -> Self {
        EvalSettings {
            target_abs_error: MIN_TARGET_ABS_ERROR,
            max_radius: 32,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ThetaValue {
    pub value: Complex64,
    pub truncation_radius: u32,
    /// Bound on the omitted lattice terms.
    pub tail_bound: f64,
    /// Envelope for floating-point error in the terms that were summed.
    pub rounding_bound: f64,
}

impl ThetaValue {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.rounding_bound
    }
}

/// `e[x]` for exact rational `x`; quarter turns are returned exactly.
pub fn e_rational(x: Rational) -> Complex64 {
    let f = x.fract();
    match (f.numer(), f.denom()) {
        (0, _) => Complex64::new(1.0, 0.0),
        (1, 2) => Complex64::new(-1.0, 0.0),
        (1, 4) => Complex64::new(0.0, 1.0),
        (3, 4) => Complex64::new(0.0, -1.0),
        (p, q) => Complex64::from_polar(1.0, 2.0 * PI * p as f64 / q as f64),
    }
}

/// `e[μ′·k″]`, the factor picked up by `θ` when `μ″` moves by the integer vector `k″`.
pub fn char_shift_phase(mu: &Characteristic, k: &[i64]) -> Result<Complex64> {
    if k.len() != mu.genus() {
        return Err(ThetaError::Dimension("shift vector genus mismatch".into()));
    }
    let dot: Rational = mu
        .top()
        .iter()
        .zip(k)
        .map(|(m, &ki)| m.checked_mul_int(ki))
        .sum();
    Ok(e_rational(dot))
}

/// Upper bound on the lattice terms with `‖ξ+μ′‖_∞ > radius`.
pub fn tail_bound(genus: usize, lambda_min: f64, im_z_norm: f64, radius: u32) -> f64 {
    let r0 = radius as f64;
    if lambda_min <= 0.0 || r0 < im_z_norm / lambda_min {
        return f64::INFINITY;
    }
    let g = genus as f64;
    let shell = |r: f64| {
        let count = 2.0 * g * (2.0 * r + 2.0).powi(genus as i32 - 1);
        count * (-PI * lambda_min * r * r + 2.0 * PI * im_z_norm * r).exp()
    };
    let mut total = 0.0;
    for k in 0..EXPLICIT_SHELLS {
        total += shell(r0 + k as f64);
    }
    let last = shell(r0 + EXPLICIT_SHELLS as f64 - 1.0);
    let next = shell(r0 + EXPLICIT_SHELLS as f64);
    if last > 0.0 {
        let q = next / last;
        if q >= 1.0 {
            return f64::INFINITY;
        }
        total += next / (1.0 - q);
    }
    total
}

fn check_dims(mu: &Characteristic, z: &[Complex64], tau: &PeriodMatrix) -> Result<()> {
    if mu.genus() != tau.genus() || z.len() != tau.genus() {
        return Err(ThetaError::Dimension(format!(
            "genus mismatch: characteristic {}, argument {}, period matrix {}",
            mu.genus(),
            z.len(),
            tau.genus()
        )));
    }
    Ok(())
}

fn im_norm(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.im * c.im).sum::<f64>().sqrt()
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Evaluate at a fixed truncation radius.
pub fn theta_at_radius(
    mu: &Characteristic,
    z: &[Complex64],
    tau: &PeriodMatrix,
    radius: u32,
) -> Result<ThetaValue> {
    check_dims(mu, z, tau)?;
    let g = tau.genus();
    let r = Rational::integer(radius as i64);
    // Per axis: ξ_i with |ξ_i + μ′_i| ≤ R, kept as exact offsets x_i = ξ_i + μ′_i.
    let axes: Vec<Vec<Rational>> = mu
        .top()
        .iter()
        .map(|&m| {
            let lo = (-r - m).ceil();
            let hi = (r - m).floor();
            (lo..=hi).map(|xi| Rational::integer(xi) + m).collect()
        })
        .collect();

    let mut re = Compensated::default();
    let mut im = Compensated::default();
    let mut abs_sum = 0.0;
    let mut weighted_abs = 0.0;
    let mut idx = vec![0usize; g];
    let mut x = vec![0.0; g];
    let mut exact = vec![Rational::ZERO; g];
    'outer: loop {
        for a in 0..g {
            exact[a] = axes[a][idx[a]];
            x[a] = exact[a].to_f64();
        }
        // Quadratic and linear parts in floating point; x·μ″ exactly mod 1.
        let mut phase = Complex64::new(0.0, 0.0);
        let mut scale = 0.0;
        for a in 0..g {
            for b in 0..g {
                let t = 0.5 * x[a] * x[b] * tau.get(a, b);
                phase += t;
                scale += t.norm();
            }
            let lin = x[a] * z[a];
            phase += lin;
            scale += lin.norm();
        }
        let exact_part: Rational = (0..g).map(|a| exact[a] * mu.bottom()[a]).sum();
        let turn = (phase.re - phase.re.round()) + exact_part.fract().to_f64();
        let modulus = (-2.0 * PI * phase.im).exp();
        let term = Complex64::from_polar(modulus, 2.0 * PI * turn);
        re.add(term.re);
        im.add(term.im);
        abs_sum += modulus;
        weighted_abs += modulus * (2.0 + 2.0 * PI * scale);

        for a in (0..g).rev() {
            idx[a] += 1;
            if idx[a] < axes[a].len() {
                continue 'outer;
            }
            idx[a] = 0;
        }
        break;
    }
    let value = Complex64::new(re.total(), im.total());
    let rounding_bound = 4.0 * f64::EPSILON * weighted_abs + 2.0 * f64::EPSILON * abs_sum;
    Ok(ThetaValue {
        value,
        truncation_radius: radius,
        tail_bound: tail_bound(g, tau.lambda_min(), im_norm(z), radius),
        rounding_bound,
    })
}

/// Smallest radius in `4, 6, 8, …` (capped at `max_radius`) whose tail bound meets the target.
pub fn select_radius(genus: usize, lambda_min: f64, im_z_norm: f64, s: &EvalSettings) -> Result<u32> {
    let mut radius = INITIAL_RADIUS.min(s.max_radius());
    let mut best = f64::INFINITY;
    loop {
        let bound = tail_bound(genus, lambda_min, im_z_norm, radius);
        if bound <= s.target_abs_error() {
            return Ok(radius);
        }
        best = best.min(bound);
        if radius >= s.max_radius() {
            return Err(ThetaError::Truncation {
                best_bound: best,
                radius,
                target: s.target_abs_error(),
            });
        }
        radius = (radius + RADIUS_STEP).min(s.max_radius());
    }
}

pub fn theta(
    mu: &Characteristic,
    z: &[Complex64],
    tau: &PeriodMatrix,
    s: &EvalSettings,
) -> Result<ThetaValue> {
    check_dims(mu, z, tau)?;
    let radius = select_radius(tau.genus(), tau.lambda_min(), im_norm(z), s)?;
    theta_at_radius(mu, z, tau, radius)
}

pub fn theta_constant(mu: &Characteristic, tau: &PeriodMatrix, s: &EvalSettings) -> Result<ThetaValue> {
    let z = vec![Complex64::new(0.0, 0.0); tau.genus()];
    theta(mu, &z, tau, s)
}
