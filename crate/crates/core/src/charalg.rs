//! Rational theta characteristics, the cycle number and residue classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, ThetaError};
use crate::rational::Rational;

/// A characteristic `(μ′; μ″)` of genus `g`.
///
/// Entries are kept exactly as given, never reduced mod 1: shifted
/// characteristics such as `ν_j + a` routinely leave `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Characteristic {
    top: Vec<Rational>,
    bottom: Vec<Rational>,
}

impl Characteristic {
    pub fn new(top: Vec<Rational>, bottom: Vec<Rational>) -> Result<Self> {
        if top.is_empty() || top.len() != bottom.len() {
            return Err(ThetaError::Dimension(format!(
                "characteristic rows have lengths {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        Ok(Characteristic { top, bottom })
    }

    pub fn zero(genus: usize) -> Self {
        Characteristic {
            top: vec![Rational::ZERO; genus],
            bottom: vec![Rational::ZERO; genus],
        }
    }

    /// Genus-1 shorthand.
    pub fn g1(top: Rational, bottom: Rational) -> Self {
        Characteristic {
            top: vec![top],
            bottom: vec![bottom],
        }
    }

    pub fn genus(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[Rational] {
        &self.top
    }

    pub fn bottom(&self) -> &[Rational] {
        &self.bottom
    }

    pub fn is_zero(&self) -> bool {
        self.top.iter().chain(&self.bottom).all(Rational::is_zero)
    }

    pub fn add(&self, other: &Characteristic) -> Result<Characteristic> {
        char_linear_combine(&[Rational::ONE, Rational::ONE], &[self.clone(), other.clone()])
    }
}

fn write_row(f: &mut fmt::Formatter<'_>, row: &[Rational]) -> fmt::Result {
    for (i, x) in row.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

/// Text form `top;bottom`, coordinates comma separated: `1/3,2/3;1/3,0`.
impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_row(f, &self.top)?;
        f.write_str(";")?;
        write_row(f, &self.bottom)
    }
}

impl FromStr for Characteristic {
    type Err = ThetaError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || ThetaError::Parse {
            what: "characteristic",
            token: s.to_string(),
        };
        let (top, bottom) = s.split_once(';').ok_or_else(bad)?;
        let row = |r: &str| -> Result<Vec<Rational>> {
            r.split(',').map(|t| t.parse::<Rational>()).collect()
        };
        let top = row(top)?;
        let bottom = row(bottom)?;
        Characteristic::new(top, bottom).map_err(|_| bad())
    }
}

impl Serialize for Characteristic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Characteristic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The residue class `Z + ℓ/λ`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CycleClass {
    ell: u32,
    lambda: u32,
}

impl CycleClass {
    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }
}

/// `n` for odd `n`, `n/2` for even `n`.
pub fn cycle_number(n: u32) -> Result<u32> {
    if n < 2 {
        return Err(ThetaError::Domain(format!("cycle number needs n >= 2, got {n}")));
    }
    Ok(if n % 2 == 1 { n } else { n / 2 })
}

/// Common class `[ℓ]_λ` of values that pairwise differ by integers.
pub fn class_of(values: &[Rational], lambda: u32) -> Result<CycleClass> {
    if lambda == 0 {
        return Err(ThetaError::Domain("lambda must be positive".into()));
    }
    let first = *values
        .first()
        .ok_or_else(|| ThetaError::Domain("class_of on empty vector".into()))?;
    for v in &values[1..] {
        if !(*v - first).is_integer() {
            return Err(ThetaError::MixedClasses {
                a: first.to_string(),
                b: v.to_string(),
            });
        }
    }
    let scaled = first.fract().checked_mul_int(lambda as i64);
    if !scaled.is_integer() {
        return Err(ThetaError::Domain(format!(
            "{first} is not of the form Z + l/{lambda}"
        )));
    }
    Ok(CycleClass {
        ell: scaled.numer() as u32,
        lambda,
    })
}

fn enumerate_vectors(g: usize, lambda: u32) -> Vec<Vec<Rational>> {
    let total = (lambda as usize).pow(g as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![Rational::ZERO; g];
            for slot in v.iter_mut().rev() {
                let m = (idx % lambda as usize) as i64;
                idx /= lambda as usize;
                *slot = Rational::new(m, lambda as i64).expect("lambda > 0");
            }
            v
        })
        .collect()
}

/// All `λ^(2g)` shifts `a = (a′; a″)` with entries in `{0, 1/λ, …, (λ−1)/λ}`,
/// lexicographic with `a′` major.
pub fn enumerate_shifts(g: usize, lambda: u32) -> Result<Vec<Characteristic>> {
    if g == 0 || lambda == 0 {
        return Err(ThetaError::Domain(format!(
            "enumerate_shifts needs g >= 1 and lambda >= 1 (got g={g}, lambda={lambda})"
        )));
    }
    let vectors = enumerate_vectors(g, lambda);
    let mut out = Vec::with_capacity(vectors.len() * vectors.len());
    for top in &vectors {
        for bottom in &vectors {
            out.push(Characteristic {
                top: top.clone(),
                bottom: bottom.clone(),
            });
        }
    }
    Ok(out)
}

/// Exact `Σ_j coeffs[j] · chars[j]`, componentwise.
pub fn char_linear_combine(coeffs: &[Rational], chars: &[Characteristic]) -> Result<Characteristic> {
    if coeffs.len() != chars.len() || chars.is_empty() {
        return Err(ThetaError::Dimension(format!(
            "{} coefficients for {} characteristics",
            coeffs.len(),
            chars.len()
        )));
    }
    let g = chars[0].genus();
    if chars.iter().any(|c| c.genus() != g) {
        return Err(ThetaError::Dimension("characteristics of mixed genus".into()));
    }
    let mut out = Characteristic::zero(g);
    for (c, ch) in coeffs.iter().zip(chars) {
        for i in 0..g {
            out.top[i] += *c * ch.top[i];
            out.bottom[i] += *c * ch.bottom[i];
        }
    }
    Ok(out)
}
