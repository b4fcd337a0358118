//! Closed-form complexity formulas, abelianization matrices, lengths of the
//! pentagon's bispecial families and the constant beta.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactfield::RationalInterval;
use crate::substlang::{family_descriptors, FamilyKind, FamilyShape, SigmaSeed};
use crate::wordcomb::{Language, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("{what}: {numerator} is not divisible by {divisor}")]
    DivisibilityViolation { what: String, numerator: i128, divisor: i128 },
    #[error("unknown matrix {0:?}")]
    UnknownMatrix(String),
    #[error("eps must be positive")]
    NonPositiveEps,
}

pub fn p_square(n: u64) -> u64 {
    (n + 2) * (n + 2) / 2 / 2
}

pub fn p_hexagon(n: u64) -> u64 {
    (5 * n * n + 16 * n + 15) / 12
}

pub const TRIANGLE_F: [i64; 12] = [24, 29, 24, 9, 8, 21, 24, 17, 0, -3, 8, 9];

/// (5n^2 + 14n + f(n mod 12)) / 24 with the tabulated f.
pub fn p_triangle(n: u64) -> Result<i64, ClosedFormError> {
    let n = n as i128;
    let numerator = 5 * n * n + 14 * n + TRIANGLE_F[(n % 12) as usize] as i128;
    exact_div("triangle complexity", numerator, 24).map(|v| v as i64)
}

/// Quadratic-per-residue form fitted to the base values p(0..=12):
/// p(12q + r) = 30 q^2 + (p(12) - p(0) - 30 + 5 r) q + p(r).
pub fn p_triangle_from_base(n: u64, base: &[i64; 13]) -> i64 {
    let (q, r) = ((n / 12) as i64, (n % 12) as usize);
    let s = base[12] - base[0];
    30 * q * q + (s - 30 + 5 * r as i64) * q + base[r]
}

fn exact_div(what: &str, numerator: i128, divisor: i128) -> Result<i128, ClosedFormError> {
    if numerator % divisor != 0 {
        return Err(ClosedFormError::DivisibilityViolation { what: what.to_string(), numerator, divisor });
    }
    Ok(numerator / divisor)
}

fn sign(n: u32) -> i128 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub type Vec3 = [i128; 3];
pub type Mat3 = [[i128; 3]; 3];

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|t| a[i][t] * b[t][j]).sum();
        }
    }
    out
}

pub fn mat_vec(a: &Mat3, v: &Vec3) -> Vec3 {
    [0, 1, 2].map(|i| (0..3).map(|t| a[i][t] * v[t]).sum())
}

pub fn mat_pow(a: &Mat3, k: u32) -> Mat3 {
    (0..k).fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, _| mat_mul(&acc, a))
}

/// An abelianization matrix, 2x2 or 3x3 (or a 1-row length vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianMatrix {
    pub name: &'static str,
    pub entries: Vec<Vec<i128>>,
}

impl AbelianMatrix {
    /// The 3x3 form; panics on the non-square matrices.
    pub fn square3(&self) -> Mat3 {
        assert_eq!(self.entries.len(), 3, "{} is not 3x3", self.name);
        [0, 1, 2].map(|i| [0, 1, 2].map(|j| self.entries[i][j]))
    }
}

pub const MATRIX_NAMES: [&str; 9] = ["A", "A_hat", "B", "B_hat", "C", "C_hat", "L", "L_hat", "M"];

pub fn matrix(name: &str) -> Result<AbelianMatrix, ClosedFormError> {
    let (name, entries): (&'static str, Vec<Vec<i128>>) = match name {
        "A" => ("A", vec![vec![1, 0], vec![1, 1]]),
        "A_hat" => ("A_hat", vec![vec![1, 0, 0], vec![1, 1, 1], vec![0, 0, 1]]),
        "B" => ("B", vec![vec![3, 1], vec![2, 1]]),
        "B_hat" => ("B_hat", vec![vec![3, 1, 3], vec![2, 1, 2], vec![0, 0, 1]]),
        "C" => ("C", vec![vec![3, 1], vec![1, 0]]),
        "C_hat" => ("C_hat", vec![vec![3, 1, 3], vec![1, 0, 0], vec![0, 0, 1]]),
        "L" => ("L", vec![vec![1, 2, 0]]),
        "L_hat" => ("L_hat", vec![vec![1, 2, 1]]),
        "M" => ("M", vec![vec![5, 3, 4], vec![2, 0, 0], vec![0, 0, 1]]),
        other => return Err(ClosedFormError::UnknownMatrix(other.to_string())),
    };
    Ok(AbelianMatrix { name, entries })
}

const L_HAT: Vec3 = [1, 2, 1];

fn m3(name: &str) -> Mat3 {
    matrix(name).expect("known matrix").square3()
}

/// (count of `first`, count of `second`, 1).
pub fn abelianize(w: &[Letter], first: Letter, second: Letter) -> Vec3 {
    let count = |l| w.iter().filter(|&&x| x == l).count() as i128;
    [count(first), count(second), 1]
}

/// X_n, Y_n, Z_n, T_n in that order.
pub fn xyzt_vectors(n: u32) -> Result<[Vec3; 4], ClosedFormError> {
    let p = 6i128.pow(n);
    let s = sign(n);
    let rows: [(i128, i128, i128, i128); 4] = [(54, -5, 18, 10), (144, 10, 48, -20), (144, -25, 48, 50), (234, 25, 78, -50)];
    let mut out = [[0; 3]; 4];
    for (i, &(a6, a1, b6, b1)) in rows.iter().enumerate() {
        out[i] = [
            exact_div("first coordinate", a6 * p + a1 * s - 14, 35)?,
            exact_div("second coordinate", b6 * p + b1 * s - 28, 35)?,
            1,
        ];
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IterShape {
    Plain,
    ViaB,
    ViaC,
}

/// Length after k lifts of a seed with abelianization (a, b, 1).
pub fn iterated_length(shape: IterShape, a: i128, b: i128, k: i128) -> i128 {
    match shape {
        IterShape::Plain => k * (2 * a + 2) + 2 * b + a + 1,
        IterShape::ViaB => k * (6 * a + 2 * b + 8) + 7 * a + 3 * b + 8,
        IterShape::ViaC => k * (6 * a + 2 * b + 8) + 5 * a + b + 4,
    }
}

/// The same length by matrix products L_hat A_hat^k (seed | B_hat seed | C_hat seed).
pub fn iterated_length_by_matrices(shape: IterShape, a: i128, b: i128, k: u32) -> i128 {
    let seed = [a, b, 1];
    let v = match shape {
        IterShape::Plain => seed,
        IterShape::ViaB => mat_vec(&m3("B_hat"), &seed),
        IterShape::ViaC => mat_vec(&m3("C_hat"), &seed),
    };
    let v = mat_vec(&mat_pow(&m3("A_hat"), k), &v);
    (0..3).map(|i| L_HAT[i] * v[i]).sum()
}

/// (6^n (a k + b) + c k + d + (-1)^n (e k + f)) / divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LengthFormula {
    pub family: usize,
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
    pub e: i128,
    pub f: i128,
    pub divisor: i128,
}

impl LengthFormula {
    const fn linear(family: usize, c: i128, d: i128) -> Self {
        LengthFormula { family, a: 0, b: 0, c, d, e: 0, f: 0, divisor: 1 }
    }

    const fn over35(family: usize, [a, b, c, d, e, f]: [i128; 6]) -> Self {
        LengthFormula { family, a, b, c, d, e, f, divisor: 35 }
    }

    pub fn depends_on_n(&self) -> bool {
        self.a != 0 || self.b != 0 || self.e != 0 || self.f != 0
    }

    pub fn depends_on_k(&self) -> bool {
        self.a != 0 || self.c != 0 || self.e != 0
    }

    pub fn numerator(&self, k: u32, n: u32) -> i128 {
        let (k, p, s) = (k as i128, 6i128.pow(n), sign(n));
        p * (self.a * k + self.b) + self.c * k + self.d + s * (self.e * k + self.f)
    }

    pub fn value(&self, k: u32, n: u32) -> Result<i128, ClosedFormError> {
        exact_div(&format!("length of family {}", self.family), self.numerator(k, n), self.divisor)
    }

    /// Coefficient of k, the spacing between consecutive members.
    pub fn k_step(&self, n: u32) -> BigRational {
        let v = 6i128.pow(n) * self.a + self.c + sign(n) * self.e;
        BigRational::new(BigInt::from(v), BigInt::from(self.divisor))
    }
}

/// Length formulas in the order of `family_descriptors`.
pub fn length_formulas() -> Vec<LengthFormula> {
    use LengthFormula as F;
    vec![
        F::linear(0, 0, 0),
        F::linear(1, 0, 1),
        F::linear(2, 10, 5),
        F::linear(3, 10, 7),
        F::linear(4, 10, 9),
        F::linear(5, 10, 11),
        F::over35(6, [960, 768, 140, 42, -50, -75]),
        F::over35(7, [1560, 1248, 140, 42, 50, 75]),
        F::over35(8, [960, 1152, 140, 98, -50, -25]),
        F::over35(9, [1560, 1872, 140, 98, 50, 25]),
        F::over35(10, [0, 192, 0, -42, 0, 25]),
        F::over35(11, [0, 312, 0, -42, 0, -25]),
        F::linear(12, 4, 2),
        F::linear(13, 6, 3),
        F::linear(14, 8, 4),
        F::linear(15, 6, 5),
        F::linear(16, 8, 8),
        F::linear(17, 2, 3),
        F::over35(18, [360, 288, 140, 42, -10, -15]),
        F::over35(19, [960, 768, 140, 42, 20, 30]),
        F::over35(20, [360, 432, 140, 98, -10, -5]),
        F::over35(21, [960, 1152, 140, 98, 20, 10]),
        F::over35(22, [0, 72, 0, -42, 0, 5]),
        F::over35(23, [0, 192, 0, -42, 0, -10]),
    ]
}

/// Family length computed from abelianizations and matrices, independent of the table above.
pub fn family_length_by_matrices(family: usize, k: u32, n: u32) -> Result<i128, ClosedFormError> {
    let desc = &family_descriptors()[family];
    let xyzt = |s: SigmaSeed| -> Result<Vec3, ClosedFormError> {
        let v = xyzt_vectors(n)?;
        Ok(match s {
            SigmaSeed::X => v[0],
            SigmaSeed::Y => v[1],
            SigmaSeed::Z => v[2],
            SigmaSeed::T => v[3],
        })
    };
    Ok(match &desc.shape {
        FamilyShape::Single(w) => w.len() as i128,
        FamilyShape::Lifted(w) => {
            let [a, b, _] = abelianize(w, 2, 3);
            iterated_length_by_matrices(IterShape::Plain, a, b, k)
        }
        FamilyShape::LiftedXi(s) => {
            let [a, b, _] = xyzt(*s)?;
            iterated_length_by_matrices(IterShape::ViaC, a, b, k)
        }
        FamilyShape::LiftedBeta(s) => {
            let [a, b, _] = xyzt(*s)?;
            iterated_length_by_matrices(IterShape::ViaB, a, b, k)
        }
        FamilyShape::Sigma(s) => {
            let [a, b, _] = xyzt(*s)?;
            a + b
        }
    })
}

/// (strong, weak) numbers of family members of length at most `max_len`;
/// the empty word counts as strong, the neutral word 2 is left out.
pub fn count_bispecials_upto(max_len: u64) -> (u64, u64) {
    let descs = family_descriptors();
    let max_len = max_len as i128;
    let mut strong = 0;
    let mut weak = 0;
    for (desc, formula) in descs.iter().zip(length_formulas()) {
        let bucket = match desc.kind {
            FamilyKind::Strong => &mut strong,
            FamilyKind::Weak => &mut weak,
            FamilyKind::Neutral => continue,
        };
        let n_top = if formula.depends_on_n() { u32::MAX } else { 0 };
        for n in 0..=n_top {
            let first = formula.value(0, n).expect("integral length");
            if first > max_len {
                break;
            }
            if !formula.depends_on_k() {
                *bucket += 1;
                continue;
            }
            let num0 = formula.numerator(0, n);
            let step = formula.numerator(1, n) - num0;
            let count = (max_len * formula.divisor - num0) / step + 1;
            *bucket += count as u64;
        }
    }
    (strong, weak)
}

fn beta_term(a: i64, e: i64, n: u32) -> BigRational {
    let six = BigInt::from(6).pow(n);
    let s = if n.is_multiple_of(2) { e } else { -e };
    let den = six * BigInt::from(2 * a) + BigInt::from(14 + s);
    BigRational::new(BigInt::from(7), den)
}

const BETA_PLUS: [(i64, i64); 2] = [(48, 2), (18, -1)];
const BETA_MINUS: [(i64, i64); 2] = [(78, 5), (48, -5)];

/// Partial sum of the series for beta over n = 0..=m.
pub fn beta_partial(m: u32) -> BigRational {
    let mut total = BigRational::new(BigInt::from(14), BigInt::from(15));
    for n in 0..=m {
        for (a, e) in BETA_PLUS {
            total += beta_term(a, e, n);
        }
        for (a, e) in BETA_MINUS {
            total -= beta_term(a, e, n);
        }
    }
    total
}

/// Upper bound on the tail n > m of one series with leading coefficient a.
fn beta_tail(a: i64, m: u32) -> BigRational {
    BigRational::new(BigInt::from(7), BigInt::from(10 * a) * BigInt::from(6).pow(m))
}

/// An interval of width below `eps` containing beta.
pub fn beta(eps: &BigRational) -> Result<RationalInterval, ClosedFormError> {
    if *eps <= BigRational::zero() {
        return Err(ClosedFormError::NonPositiveEps);
    }
    let mut m = 0;
    loop {
        let s = beta_partial(m);
        let up: BigRational = BETA_PLUS.iter().map(|&(a, _)| beta_tail(a, m)).fold(BigRational::zero(), |x, y| x + y);
        let down: BigRational = BETA_MINUS.iter().map(|&(a, _)| beta_tail(a, m)).fold(BigRational::zero(), |x, y| x + y);
        if &up + &down < *eps {
            return Ok(RationalInterval::new(s.clone() - down, s + up));
        }
        m += 1;
    }
}

/// p(n) / n^2 at the top of a language, a rough estimate of a quadratic rate.
pub fn empirical_quadratic_rate(lang: &Language) -> BigRational {
    let n = lang.n_max().max(1);
    let p = lang.complexity(n).unwrap_or(0);
    BigRational::new(BigInt::from(p), BigInt::from(n * n))
}

pub fn one_half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_complexities() {
        assert_eq!((0..3).map(p_square).collect::<Vec<_>>(), vec![1, 2, 4]);
        assert_eq!(p_hexagon(12), 77);
        assert_eq!(p_triangle(0).unwrap(), 1);
    }

    #[test]
    fn first_vectors() {
        let v = xyzt_vectors(0).unwrap();
        assert_eq!(v[0], [1, 0, 1]);
        assert_eq!(v[3], [7, 0, 1]);
    }

    #[test]
    fn a_hat_powers_are_linear() {
        let a = m3("A_hat");
        for k in 1..=20 {
            let lhs = mat_pow(&a, k);
            let id = mat_pow(&a, 0);
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(lhs[i][j], k as i128 * a[i][j] - (k as i128 - 1) * id[i][j]);
                }
            }
        }
    }

    #[test]
    fn iterated_lengths_match_worked_examples() {
        for k in 0..10 {
            assert_eq!(iterated_length(IterShape::Plain, 4, 0, k), 10 * k + 5);
            assert_eq!(iterated_length(IterShape::Plain, 1, 0, k), 4 * k + 2);
        }
    }

    #[test]
    fn beta_is_near_one_point_zero_six() {
        let eps = BigRational::new(BigInt::one(), BigInt::from(100));
        let iv = beta(&eps).unwrap();
        assert!(iv.width() < eps);
        assert!(iv.contains_f64(1.06));
        assert!(matches!(beta(&BigRational::zero()), Err(ClosedFormError::NonPositiveEps)));
    }

    #[test]
    fn tiny_counts() {
        assert_eq!(count_bispecials_upto(0), (1, 0));
        let (s1, w1) = count_bispecials_upto(1);
        assert_eq!((s1, w1), (2, 0));
        let (s3, _) = count_bispecials_upto(3);
        assert!(s3 > s1);
    }

    #[test]
    fn unknown_matrix() {
        assert!(matrix("Q").is_err());
        assert_eq!(matrix("C_hat").unwrap().entries[0], vec![3, 1, 3]);
    }
}
