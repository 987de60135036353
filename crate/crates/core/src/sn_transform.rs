//! The Jacobi matrix `A` and the Smith family `S_n = (2/n)Λ − E`.
//!
//! Every matrix acts on row vectors from the right: `w_k = Σ_j z_j · m[j][k]`.

use std::fmt;

use num_complex::Complex64;

use crate::charalg::Characteristic;
use crate::error::{Result, ThetaError};
use crate::rational::Rational;

/// Marker for the global action convention. Tests pin it so a transposed
/// implementation cannot slip in unnoticed.
pub const ROW_VECTOR_TIMES_MATRIX: bool = true;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatrixKind {
    JacobiA,
    SmithS,
    /// Only used to build test fixtures.
    General,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TransformMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
    kind: MatrixKind,
}

/// `n` complex `g`-vectors.
#[derive(Clone, PartialEq, Debug)]
pub struct ArgTuple(pub Vec<Vec<Complex64>>);

impl ArgTuple {
    pub fn new(entries: Vec<Vec<Complex64>>) -> Result<Self> {
        let g = entries.first().map(Vec::len).unwrap_or(0);
        if g == 0 || entries.iter().any(|e| e.len() != g) {
            return Err(ThetaError::Dimension("argument tuple entries must share a positive genus".into()));
        }
        Ok(ArgTuple(entries))
    }

    /// Genus-1 tuple from scalars.
    pub fn scalars(zs: &[Complex64]) -> Self {
        ArgTuple(zs.iter().map(|z| vec![*z]).collect())
    }

    pub fn zeros(n: usize, g: usize) -> Self {
        ArgTuple(vec![vec![Complex64::new(0.0, 0.0); g]; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn genus(&self) -> usize {
        self.0.first().map(Vec::len).unwrap_or(0)
    }
}

pub fn s_matrix(n: usize) -> Result<TransformMatrix> {
    if n < 2 {
        return Err(ThetaError::Domain(format!("S_n needs n >= 2, got {n}")));
    }
    let off = Rational::new(2, n as i64)?;
    let diag = off - Rational::ONE;
    let entries = (0..n)
        .map(|j| (0..n).map(|k| if j == k { diag } else { off }).collect())
        .collect();
    Ok(TransformMatrix {
        n,
        entries,
        kind: MatrixKind::SmithS,
    })
}

pub fn a_matrix() -> TransformMatrix {
    let signs = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
    let entries = signs
        .iter()
        .map(|row| row.iter().map(|&s| Rational::new(s, 2).unwrap()).collect())
        .collect();
    TransformMatrix {
        n: 4,
        entries,
        kind: MatrixKind::JacobiA,
    }
}

impl TransformMatrix {
    pub fn from_rows(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(ThetaError::Dimension("matrix must be square and non-empty".into()));
        }
        Ok(TransformMatrix {
            n,
            entries,
            kind: MatrixKind::General,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// Column `k`, i.e. the coefficients producing output slot `k`.
    pub fn column(&self, k: usize) -> Vec<Rational> {
        self.entries.iter().map(|row| row[k]).collect()
    }

    pub fn mul(&self, other: &TransformMatrix) -> Result<TransformMatrix> {
        if self.n != other.n {
            return Err(ThetaError::Dimension("matrix sizes differ".into()));
        }
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| (0..n).map(|j| self.entries[i][j] * other.entries[j][k]).sum())
                    .collect()
            })
            .collect();
        Ok(TransformMatrix {
            n,
            entries,
            kind: MatrixKind::General,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, x)| *x == if i == j { Rational::ONE } else { Rational::ZERO })
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(ThetaError::Dimension(format!(
                "tuple of length {len} for a {n}x{n} matrix",
                n = self.n
            )));
        }
        Ok(())
    }

    /// Exact action on a tuple of rational vectors.
    pub fn apply_rational(&self, rows: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
        self.check_len(rows.len())?;
        let g = rows[0].len();
        if rows.iter().any(|r| r.len() != g) {
            return Err(ThetaError::Dimension("rows of mixed length".into()));
        }
        Ok((0..self.n)
            .map(|k| {
                (0..g)
                    .map(|a| (0..self.n).map(|j| rows[j][a] * self.entries[j][k]).sum())
                    .collect()
            })
            .collect())
    }

    pub fn apply_to_args(&self, z: &ArgTuple) -> Result<ArgTuple> {
        self.check_len(z.len())?;
        let g = z.genus();
        let out = (0..self.n)
            .map(|k| {
                (0..g)
                    .map(|a| {
                        (0..self.n)
                            .map(|j| z.0[j][a] * self.entries[j][k].to_f64())
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(ArgTuple(out))
    }

    pub fn apply_to_chars(&self, mu: &[Characteristic]) -> Result<Vec<Characteristic>> {
        self.check_len(mu.len())?;
        let g = mu[0].genus();
        if mu.iter().any(|m| m.genus() != g) {
            return Err(ThetaError::Dimension("characteristics of mixed genus".into()));
        }
        let tops: Vec<Vec<Rational>> = mu.iter().map(|m| m.top().to_vec()).collect();
        let bottoms: Vec<Vec<Rational>> = mu.iter().map(|m| m.bottom().to_vec()).collect();
        let tops = self.apply_rational(&tops)?;
        let bottoms = self.apply_rational(&bottoms)?;
        tops.into_iter()
            .zip(bottoms)
            .map(|(t, b)| Characteristic::new(t, b))
            .collect()
    }
}

/// Prints the matrix with exact fractions, one row per line.
impl fmt::Display for TransformMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>5}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charalg::class_of;
    use crate::charalg::cycle_number;
    use proptest::prelude::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q).unwrap()
    }

    #[test]
    fn s3_and_s4_entries() {
        let s3 = s_matrix(3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                assert_eq!(s3.entry(j, k), if j == k { r(-1, 3) } else { r(2, 3) });
            }
        }
        let s4 = s_matrix(4).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(s4.entry(j, k), if j == k { r(-1, 2) } else { r(1, 2) });
            }
        }
        let s2 = s_matrix(2).unwrap();
        assert_eq!(s2.rows(), &[vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]]);
        assert!(s_matrix(1).is_err());
    }

    #[test]
    fn involutions() {
        for n in 2..=9 {
            let s = s_matrix(n).unwrap();
            assert!(s.mul(&s).unwrap().is_identity(), "S_{n}^2 != E");
        }
        let a = a_matrix();
        assert!(a.mul(&a).unwrap().is_identity());
        let row_sum: Rational = a.rows()[0].iter().copied().sum();
        assert_eq!(row_sum, r(2, 1));
        assert_eq!(a.entry(1, 2), r(-1, 2));
    }

    #[test]
    fn row_vector_convention() {
        const { assert!(ROW_VECTOR_TIMES_MATRIX) };
        // Non-symmetric fixture: (1, 0) · [[1, 2], [3, 4]] = (1, 2), the first row.
        let m = TransformMatrix::from_rows(vec![vec![r(1, 1), r(2, 1)], vec![r(3, 1), r(4, 1)]]).unwrap();
        let out = m.apply_rational(&[vec![r(1, 1)], vec![r(0, 1)]]).unwrap();
        assert_eq!(out, vec![vec![r(1, 1)], vec![r(2, 1)]]);
        let z = ArgTuple::scalars(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let w = m.apply_to_args(&z).unwrap();
        assert_eq!(w.0[1][0], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn s3_explicit_action() {
        let s3 = s_matrix(3).unwrap();
        let x = [Complex64::new(0.1, 0.2), Complex64::new(-0.3, 0.05), Complex64::new(0.25, -0.1)];
        let y = s3.apply_to_args(&ArgTuple::scalars(&x)).unwrap();
        let expect = [
            (-x[0] + 2.0 * x[1] + 2.0 * x[2]) / 3.0,
            (2.0 * x[0] - x[1] + 2.0 * x[2]) / 3.0,
            (2.0 * x[0] + 2.0 * x[1] - x[2]) / 3.0,
        ];
        for (got, want) in y.0.iter().zip(expect) {
            assert!((got[0] - want).norm() < 1e-15);
        }
        let same = ArgTuple::scalars(&[x[0]; 3]);
        let w = s3.apply_to_args(&same).unwrap();
        for k in 0..3 {
            assert!((w.0[k][0] - x[0]).norm() < 1e-16);
        }
        assert!(s3.apply_to_args(&ArgTuple::scalars(&x[..2])).is_err());
    }

    #[test]
    fn chars_fixed_points_and_example() {
        let s4 = s_matrix(4).unwrap();
        let zero = vec![Characteristic::zero(1); 4];
        assert_eq!(s4.apply_to_chars(&zero).unwrap(), zero);

        let c = Characteristic::g1(r(1, 3), r(2, 5));
        let all_c = vec![c.clone(); 4];
        assert_eq!(s4.apply_to_chars(&all_c).unwrap(), all_c);

        let mut mu = vec![Characteristic::zero(1); 4];
        mu[0] = Characteristic::g1(r(1, 2), r(0, 1));
        let nu = s4.apply_to_chars(&mu).unwrap();
        // ν_j = (2/n)Σμ − μ_j
        let tops: Vec<Rational> = nu.iter().map(|c| c.top()[0]).collect();
        assert_eq!(tops, vec![r(-1, 4), r(1, 4), r(1, 4), r(1, 4)]);
        let sum: Rational = mu.iter().map(|m| m.top()[0]).sum();
        for (j, t) in tops.iter().enumerate() {
            assert_eq!(*t, r(2, 4) * sum - mu[j].top()[0]);
        }
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-12i64..=12, 1i64..=6).prop_map(|(p, q)| r(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn exact_involution_and_conservation(n in 2usize..=8, v in proptest::collection::vec(small_rational(), 8)) {
            let s = s_matrix(n).unwrap();
            let z: Vec<Vec<Rational>> = v[..n].iter().map(|x| vec![*x]).collect();
            let w = s.apply_rational(&z).unwrap();
            prop_assert_eq!(&s.apply_rational(&w).unwrap(), &z);
            let sum = |t: &[Vec<Rational>]| t.iter().map(|x| x[0]).sum::<Rational>();
            let sq = |t: &[Vec<Rational>]| t.iter().map(|x| x[0] * x[0]).sum::<Rational>();
            prop_assert_eq!(sum(&w), sum(&z));
            prop_assert_eq!(sq(&w), sq(&z));
        }

        #[test]
        fn jacobi_a_preserves_squares(v in proptest::collection::vec(small_rational(), 4)) {
            let a = a_matrix();
            let z: Vec<Vec<Rational>> = v.iter().map(|x| vec![*x]).collect();
            let w = a.apply_rational(&z).unwrap();
            let sq = |t: &[Vec<Rational>]| t.iter().map(|x| x[0] * x[0]).sum::<Rational>();
            prop_assert_eq!(sq(&w), sq(&z));
            prop_assert_eq!(&a.apply_rational(&w).unwrap(), &z);
        }

        #[test]
        fn integer_images_share_a_class(n in 2usize..=9, xi in proptest::collection::vec(-20i64..=20, 9)) {
            let s = s_matrix(n).unwrap();
            let lambda = cycle_number(n as u32).unwrap();
            let z: Vec<Vec<Rational>> = xi[..n].iter().map(|x| vec![Rational::integer(*x)]).collect();
            let eta: Vec<Rational> = s.apply_rational(&z).unwrap().into_iter().map(|v| v[0]).collect();
            prop_assert!(class_of(&eta, lambda).is_ok());
        }

        #[test]
        fn char_denominators_divide_lambda_n(n in 2usize..=8, tops in proptest::collection::vec(-6i64..=6, 8), bots in proptest::collection::vec(-6i64..=6, 8)) {
            let lambda = cycle_number(n as u32).unwrap() as i64;
            let mu: Vec<Characteristic> = (0..n)
                .map(|j| Characteristic::g1(r(tops[j], lambda), r(bots[j], lambda)))
                .collect();
            let s = s_matrix(n).unwrap();
            let nu = s.apply_to_chars(&mu).unwrap();
            let sum = |c: &[Characteristic], top: bool| c.iter().map(|x| if top { x.top()[0] } else { x.bottom()[0] }).sum::<Rational>();
            prop_assert_eq!(sum(&nu, true), sum(&mu, true));
            prop_assert_eq!(sum(&nu, false), sum(&mu, false));
            for c in &nu {
                prop_assert_eq!((lambda * n as i64) % c.top()[0].denom(), 0);
                prop_assert_eq!((lambda * n as i64) % c.bottom()[0].denom(), 0);
            }
        }

        #[test]
        fn float_involution(n in 2usize..=8, re in proptest::collection::vec(-1.0f64..1.0, 8), im in proptest::collection::vec(-1.0f64..1.0, 8)) {
            let s = s_matrix(n).unwrap();
            let z = ArgTuple::scalars(&(0..n).map(|j| Complex64::new(re[j], im[j])).collect::<Vec<_>>());
            let back = s.apply_to_args(&s.apply_to_args(&z).unwrap()).unwrap();
            for j in 0..n {
                prop_assert!((back.0[j][0] - z.0[j][0]).norm() <= 8.0 * n as f64 * f64::EPSILON);
            }
        }
    }
}
