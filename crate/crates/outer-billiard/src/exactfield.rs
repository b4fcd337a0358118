//! Exact arithmetic in the cyclotomic fields Q(zeta_N).
//!
//! An element is a polynomial in `zeta_N = exp(2 pi i / N)` with rational
//! coefficients, reduced modulo the N-th cyclotomic polynomial, so two
//! elements are equal exactly when their coefficient vectors are equal.
//! Signs of real parts are decided by refining dyadic enclosures of the
//! complex embedding until zero is excluded; zero itself is always decided
//! symbolically.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Orders of the roots of unity we support.
pub const SUPPORTED_ROOTS: [u32; 5] = [4, 6, 10, 12, 20];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unsupported cyclotomic field Q(zeta_{0})")]
    UnsupportedField(u32),
    #[error("element is not real")]
    NonRealInput,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    IncompatibleFields { from: u32, to: u32 },
}

/// Rational scalars usable as coordinates of a [`FieldElement`].
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Eq + Hash + Num + Neg<Output = Self> + Signed + FromPrimitive + Send + Sync + 'static
{
    fn to_big(&self) -> BigRational;
    fn from_big(value: &BigRational) -> Option<Self>;
}

impl Coefficient for BigRational {
    fn to_big(&self) -> BigRational {
        self.clone()
    }

    fn from_big(value: &BigRational) -> Option<Self> {
        Some(value.clone())
    }
}

impl Coefficient for Rational64 {
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }

    fn from_big(value: &BigRational) -> Option<Self> {
        Some(Rational64::new(value.numer().to_i64()?, value.denom().to_i64()?))
    }
}

/// A closed interval with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        RationalInterval { lo, hi }
    }

    pub fn point(value: BigRational) -> Self {
        RationalInterval { lo: value.clone(), hi: value }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        match BigRational::from_float(x) {
            Some(q) => self.contains(&q),
            None => false,
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.lo.to_f64().unwrap_or(f64::NAN), self.hi.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64();
        write!(f, "[{lo:.12}, {hi:.12}]")
    }
}

struct FieldTables {
    n: u32,
    degree: usize,
    /// `powers[e]` holds zeta^e in the power basis, for 0 <= e < n.
    powers: Vec<Vec<i64>>,
}

fn cyclotomic_polynomial(n: u32) -> Option<&'static [i64]> {
    match n {
        4 => Some(&[1, 0, 1]),
        6 => Some(&[1, -1, 1]),
        10 => Some(&[1, -1, 1, -1, 1]),
        12 => Some(&[1, 0, -1, 0, 1]),
        20 => Some(&[1, 0, -1, 0, 1, 0, -1, 0, 1]),
        _ => None,
    }
}

fn tables(n: u32) -> Result<&'static FieldTables, FieldError> {
    static TABLES: [OnceLock<FieldTables>; 5] = [const { OnceLock::new() }; 5];
    let slot = SUPPORTED_ROOTS.iter().position(|&m| m == n).ok_or(FieldError::UnsupportedField(n))?;
    Ok(TABLES[slot].get_or_init(|| {
        let poly = cyclotomic_polynomial(n).expect("supported root");
        let degree = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..n {
            powers.push(current.clone());
            let carry = current[degree - 1];
            let mut next = vec![0i64; degree];
            for i in (1..degree).rev() {
                next[i] = current[i - 1];
            }
            for (i, c) in next.iter_mut().enumerate() {
                *c -= carry * poly[i];
            }
            current = next;
        }
        FieldTables { n, degree, powers }
    }))
}

/// Degree of Q(zeta_n) over Q, i.e. Euler's totient of `n`.
pub fn field_degree(n_root: u32) -> Result<usize, FieldError> {
    Ok(tables(n_root)?.degree)
}

fn add_scaled<Q: Coefficient>(acc: &mut Q, value: &Q, factor: i64) {
    match factor {
        0 => {}
        1 => *acc = acc.clone() + value.clone(),
        -1 => *acc = acc.clone() - value.clone(),
        f => *acc = acc.clone() + value.clone() * Q::from_i64(f).expect("small integer"),
    }
}

/// An element of Q(zeta_N) in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement<Q> {
    n_root: u32,
    coeffs: Vec<Q>,
}

/// Builds the element sum(coeffs[i] * zeta_N^i), reducing longer inputs.
pub fn make_element<Q: Coefficient>(n_root: u32, coeffs: Vec<Q>) -> Result<FieldElement<Q>, FieldError> {
    FieldElement::new(n_root, coeffs)
}

impl<Q: Coefficient> FieldElement<Q> {
    pub fn new(n_root: u32, coeffs: Vec<Q>) -> Result<Self, FieldError> {
        let t = tables(n_root)?;
        if coeffs.len() <= t.degree {
            let mut coeffs = coeffs;
            coeffs.resize(t.degree, Q::zero());
            return Ok(FieldElement { n_root, coeffs });
        }
        let mut out = vec![Q::zero(); t.degree];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, &f) in t.powers[e % t.n as usize].iter().enumerate() {
                add_scaled(&mut out[m], c, f);
            }
        }
        Ok(FieldElement { n_root, coeffs: out })
    }

    pub fn from_ints(n_root: u32, coeffs: &[i64]) -> Result<Self, FieldError> {
        Self::new(n_root, coeffs.iter().map(|&c| Q::from_i64(c).expect("integer coefficient")).collect())
    }

    pub fn zero(n_root: u32) -> Result<Self, FieldError> {
        Self::new(n_root, vec![])
    }

    pub fn one(n_root: u32) -> Result<Self, FieldError> {
        Self::new(n_root, vec![Q::one()])
    }

    pub fn from_rational(n_root: u32, value: Q) -> Result<Self, FieldError> {
        Self::new(n_root, vec![value])
    }

    pub fn from_int(n_root: u32, value: i64) -> Result<Self, FieldError> {
        Self::from_ints(n_root, &[value])
    }

    /// zeta_N^e for any integer exponent.
    pub fn zeta_pow(n_root: u32, e: i64) -> Result<Self, FieldError> {
        let t = tables(n_root)?;
        let idx = e.rem_euclid(t.n as i64) as usize;
        Ok(FieldElement {
            n_root,
            coeffs: t.powers[idx].iter().map(|&c| Q::from_i64(c).expect("small integer")).collect(),
        })
    }

    pub fn zeta(n_root: u32) -> Result<Self, FieldError> {
        Self::zeta_pow(n_root, 1)
    }

    pub fn n_root(&self) -> u32 {
        self.n_root
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    fn table(&self) -> &'static FieldTables {
        tables(self.n_root).expect("element of a supported field")
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.n_root, other.n_root, "field mismatch: Q(zeta_{}) vs Q(zeta_{})", self.n_root, other.n_root);
    }

    pub fn scale(&self, q: &Q) -> Self {
        FieldElement { n_root: self.n_root, coeffs: self.coeffs.iter().map(|c| c.clone() * q.clone()).collect() }
    }

    /// Complex conjugation, the automorphism zeta -> zeta^-1.
    pub fn conjugate(&self) -> Self {
        let t = self.table();
        let n = t.n as usize;
        let mut out = vec![Q::zero(); t.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (m, &f) in t.powers[(n - i) % n].iter().enumerate() {
                add_scaled(&mut out[m], c, f);
            }
        }
        FieldElement { n_root: self.n_root, coeffs: out }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Squared modulus z * conj(z), a real element.
    pub fn norm_squared(&self) -> Self {
        self * &self.conjugate()
    }

    pub fn real_part(&self) -> Self {
        let half = Q::one() / Q::from_i64(2).expect("two");
        (self + &self.conjugate()).scale(&half)
    }

    pub fn inverse(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let d = self.coeffs.len();
        // Column j of the multiplication matrix is self * zeta^j.
        let mut columns = Vec::with_capacity(d);
        let mut basis = Self::one(self.n_root)?;
        let zeta = Self::zeta(self.n_root)?;
        for _ in 0..d {
            columns.push((self * &basis).coeffs);
            basis = &basis * &zeta;
        }
        let mut rows: Vec<Vec<Q>> = (0..d)
            .map(|r| {
                let mut row: Vec<Q> = (0..d).map(|c| columns[c][r].clone()).collect();
                row.push(if r == 0 { Q::one() } else { Q::zero() });
                row
            })
            .collect();
        let solution = solve_in_place(&mut rows).ok_or(FieldError::DivisionByZero)?;
        Self::new(self.n_root, solution)
    }

    pub fn pow(&self, e: i64) -> Result<Self, FieldError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.n_root)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The same number viewed in Q(zeta_target), which must contain Q(zeta_N).
    pub fn promote(&self, target: u32) -> Result<Self, FieldError> {
        if !target.is_multiple_of(self.n_root) {
            return Err(FieldError::IncompatibleFields { from: self.n_root, to: target });
        }
        let t = tables(target)?;
        let step = (target / self.n_root) as usize;
        let mut out = vec![Q::zero(); t.degree];
        for (i, c) in self.coeffs.iter().enumerate() {
            for (m, &f) in t.powers[(i * step) % t.n as usize].iter().enumerate() {
                add_scaled(&mut out[m], c, f);
            }
        }
        Ok(FieldElement { n_root: target, coeffs: out })
    }

    pub fn map_coeffs<R: Coefficient>(&self) -> Option<FieldElement<R>> {
        let coeffs = self.coeffs.iter().map(|c| R::from_big(&c.to_big())).collect::<Option<Vec<R>>>()?;
        Some(FieldElement { n_root: self.n_root, coeffs })
    }

    /// Sign of a real element: zero is decided exactly, anything else by interval refinement.
    pub fn sign_real(&self) -> Result<Ordering, FieldError> {
        if !self.is_real() {
            return Err(FieldError::NonRealInput);
        }
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        Ok(self.sign_of_part(Part::Re))
    }

    /// Sign of the real part of any element.
    pub fn sign_re(&self) -> Ordering {
        if (self + &self.conjugate()).is_zero() {
            return Ordering::Equal;
        }
        self.sign_of_part(Part::Re)
    }

    /// Sign of the imaginary part of any element.
    pub fn sign_im(&self) -> Ordering {
        if self.is_real() {
            return Ordering::Equal;
        }
        self.sign_of_part(Part::Im)
    }

    fn sign_of_part(&self, part: Part) -> Ordering {
        let coeffs = big_coeffs(self);
        let mut bits = 64;
        loop {
            let enc = enclose(self.n_root, &coeffs, bits, part);
            if enc.center > enc.radius {
                return Ordering::Greater;
            }
            if -&enc.center > enc.radius {
                return Ordering::Less;
            }
            bits *= 2;
        }
    }

    /// Enclosures of the real and imaginary parts, each narrower than `eps`.
    pub fn approximate(&self, eps: &BigRational) -> (RationalInterval, RationalInterval) {
        assert!(eps.is_positive(), "eps must be positive");
        if self.is_zero() {
            let z = BigRational::zero();
            return (RationalInterval::point(z.clone()), RationalInterval::point(z));
        }
        let coeffs = big_coeffs(self);
        let mut bits = 64;
        loop {
            let re = enclose(self.n_root, &coeffs, bits, Part::Re);
            let im = enclose(self.n_root, &coeffs, bits, Part::Im);
            let (re, im) = (re.interval(), im.interval());
            if &re.width() < eps && &im.width() < eps {
                return (re, im);
            }
            bits *= 2;
        }
    }

    /// Display-only decimal approximation of the embedding.
    pub fn to_f64(&self) -> (f64, f64) {
        let coeffs = big_coeffs(self);
        let re = enclose(self.n_root, &coeffs, 64, Part::Re).center_f64();
        let im = enclose(self.n_root, &coeffs, 64, Part::Im).center_f64();
        (re, im)
    }

    /// Exact comparison of two real elements.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering, FieldError> {
        (self - other).sign_real()
    }
}

/// The golden ratio (1 + sqrt 5) / 2 = zeta_10 + zeta_10^-1.
pub fn golden_ratio<Q: Coefficient>() -> FieldElement<Q> {
    let z = FieldElement::<Q>::zeta(10).expect("Q(zeta_10)");
    &z + &z.conjugate()
}

fn solve_in_place<Q: Coefficient>(rows: &mut [Vec<Q>]) -> Option<Vec<Q>> {
    let d = rows.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for c in col..=d {
            rows[col][c] = rows[col][c].clone() / p.clone();
        }
        for r in 0..d {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..=d {
                    let v = rows[col][c].clone() * f.clone();
                    rows[r][c] = rows[r][c].clone() - v;
                }
            }
        }
    }
    Some(rows.iter().map(|row| row[d].clone()).collect())
}

impl<Q: Coefficient> fmt::Debug for FieldElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<Q: Coefficient> fmt::Display for FieldElement<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.n_root)?;
                    } else {
                        write!(f, "z{}^{i}", self.n_root)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, Q: Coefficient> $tr<&'a FieldElement<Q>> for &'a FieldElement<Q> {
            type Output = FieldElement<Q>;
            fn $method(self, rhs: &'a FieldElement<Q>) -> FieldElement<Q> {
                self.check_same(rhs);
                $body(self, rhs)
            }
        }
        impl<Q: Coefficient> $tr<FieldElement<Q>> for FieldElement<Q> {
            type Output = FieldElement<Q>;
            fn $method(self, rhs: FieldElement<Q>) -> FieldElement<Q> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, Q: Coefficient> $tr<&'a FieldElement<Q>> for FieldElement<Q> {
            type Output = FieldElement<Q>;
            fn $method(self, rhs: &'a FieldElement<Q>) -> FieldElement<Q> {
                (&self).$method(rhs)
            }
        }
        impl<'a, Q: Coefficient> $tr<FieldElement<Q>> for &'a FieldElement<Q> {
            type Output = FieldElement<Q>;
            fn $method(self, rhs: FieldElement<Q>) -> FieldElement<Q> {
                self.$method(&rhs)
            }
        }
    };
}

fn add_impl<Q: Coefficient>(a: &FieldElement<Q>, b: &FieldElement<Q>) -> FieldElement<Q> {
    FieldElement {
        n_root: a.n_root,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.clone() + y.clone()).collect(),
    }
}

fn sub_impl<Q: Coefficient>(a: &FieldElement<Q>, b: &FieldElement<Q>) -> FieldElement<Q> {
    FieldElement {
        n_root: a.n_root,
        coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x.clone() - y.clone()).collect(),
    }
}

fn mul_impl<Q: Coefficient>(a: &FieldElement<Q>, b: &FieldElement<Q>) -> FieldElement<Q> {
    let t = a.table();
    let d = t.degree;
    let mut raw = vec![Q::zero(); 2 * d - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] = raw[i + j].clone() + x.clone() * y.clone();
            }
        }
    }
    let mut out: Vec<Q> = raw[..d].to_vec();
    for (e, c) in raw.iter().enumerate().skip(d) {
        if c.is_zero() {
            continue;
        }
        for (m, &f) in t.powers[e].iter().enumerate() {
            add_scaled(&mut out[m], c, f);
        }
    }
    FieldElement { n_root: a.n_root, coeffs: out }
}

fn div_impl<Q: Coefficient>(a: &FieldElement<Q>, b: &FieldElement<Q>) -> FieldElement<Q> {
    mul_impl(a, &b.inverse().expect("division by zero field element"))
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, div_impl);

impl<Q: Coefficient> Neg for FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn neg(self) -> FieldElement<Q> {
        -&self
    }
}

impl<Q: Coefficient> Neg for &FieldElement<Q> {
    type Output = FieldElement<Q>;
    fn neg(self) -> FieldElement<Q> {
        FieldElement { n_root: self.n_root, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

// ---------------------------------------------------------------------------
// Dyadic enclosures of the embedding zeta_N = exp(2 pi i / N).

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Re,
    Im,
}

/// `value in [center - radius, center + radius] / 2^bits`.
struct Enclosure {
    center: BigInt,
    radius: BigInt,
    bits: u32,
}

impl Enclosure {
    fn interval(&self) -> RationalInterval {
        let scale = BigInt::one() << self.bits;
        RationalInterval::new(
            BigRational::new(&self.center - &self.radius, scale.clone()),
            BigRational::new(&self.center + &self.radius, scale),
        )
    }

    fn center_f64(&self) -> f64 {
        let shift = self.bits.saturating_sub(60);
        let c = (&self.center >> shift).to_f64().unwrap_or(f64::NAN);
        c / 2f64.powi((self.bits - shift) as i32)
    }
}

fn big_coeffs<Q: Coefficient>(z: &FieldElement<Q>) -> Vec<BigRational> {
    z.coeffs.iter().map(Coefficient::to_big).collect()
}

fn enclose(n_root: u32, coeffs: &[BigRational], bits: u32, part: Part) -> Enclosure {
    let trig = trig_table(n_root, bits);
    let mut center = BigInt::zero();
    let mut radius = BigInt::zero();
    for (c, (cos, sin)) in coeffs.iter().zip(trig.iter()) {
        if c.is_zero() {
            continue;
        }
        let m = if part == Part::Re { cos } else { sin };
        // Each table entry is within one unit of the true value.
        center += (c.numer() * m).div_floor(c.denom());
        radius += c.numer().abs().div_ceil(c.denom()) + 1;
    }
    Enclosure { center, radius, bits }
}

type TrigTable = Arc<Vec<(BigInt, BigInt)>>;

/// cos and sin of 2 pi e / N for the power-basis exponents, as integers
/// scaled by 2^bits and accurate to within one unit.
fn trig_table(n_root: u32, bits: u32) -> TrigTable {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), TrigTable>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("trig cache").get(&(n_root, bits)) {
        return t.clone();
    }
    let degree = field_degree(n_root).expect("supported field");
    let guard = 32;
    let w = bits + guard;
    let pi = pi_fixed(w);
    let half_unit = BigInt::one() << (guard - 1);
    let entries: Vec<(BigInt, BigInt)> = (0..degree)
        .map(|e| {
            let theta = (&pi * BigInt::from(2 * e as u64)) / BigInt::from(n_root);
            let (c, s) = cos_sin_fixed(&theta, w);
            ((c + &half_unit) >> guard, (s + &half_unit) >> guard)
        })
        .collect();
    let table = Arc::new(entries);
    cache.lock().expect("trig cache").insert((n_root, bits), table.clone());
    table
}

fn arctan_inverse_fixed(x: u64, w: u32) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = (BigInt::one() << w) / &x;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &x2;
        if power.is_zero() {
            return sum;
        }
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
}

/// pi * 2^w by Machin's formula, with an error of a few units.
fn pi_fixed(w: u32) -> BigInt {
    arctan_inverse_fixed(5, w) * 16 - arctan_inverse_fixed(239, w) * 4
}

/// Taylor series for 0 <= theta <= pi, all quantities scaled by 2^w.
fn cos_sin_fixed(theta: &BigInt, w: u32) -> (BigInt, BigInt) {
    let one = BigInt::one() << w;
    let t2 = (theta * theta) >> w;
    let series = |start: BigInt, offset: u64| {
        let mut term = start.clone();
        let mut sum = start;
        let mut k: u64 = 1;
        loop {
            term = ((&term * &t2) >> w) / BigInt::from((2 * k - 1 + offset) * (2 * k + offset));
            if term.is_zero() {
                return sum;
            }
            if k % 2 == 1 {
                sum -= &term;
            } else {
                sum += &term;
            }
            k += 1;
        }
    };
    (series(one, 0), series(theta.clone(), 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = FieldElement<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn zeta_powers_wrap_around() {
        for n in SUPPORTED_ROOTS {
            let z = F::zeta(n).unwrap();
            assert!(z.pow(n as i64).unwrap().is_one());
            assert_eq!(z.pow(-1).unwrap(), F::zeta_pow(n, n as i64 - 1).unwrap());
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = make_element(4, vec![q(0, 1), q(1, 1)]).unwrap();
        assert_eq!(&i * &i, F::from_int(4, -1).unwrap());
        assert_eq!(i.conjugate(), -&i);
    }

    #[test]
    fn golden_ratio_identities() {
        let phi = golden_ratio::<BigRational>();
        let one = F::one(10).unwrap();
        assert!(phi.is_real());
        assert_eq!(&phi * &phi, &phi + &one);
        assert_eq!((&phi - &one).sign_real().unwrap(), Ordering::Greater);
        // cos(2 pi / 5) = (phi - 1) / 2
        let z = F::zeta(10).unwrap();
        let cos_2pi_5 = (z.pow(2).unwrap() + z.pow(-2).unwrap()).scale(&q(1, 2));
        let diff = (&phi - &one).scale(&q(1, 2)) - cos_2pi_5;
        assert_eq!(diff.sign_real().unwrap(), Ordering::Equal);
    }

    #[test]
    fn conjugation_of_generators() {
        let z = F::zeta(10).unwrap();
        assert_eq!(z.conjugate(), F::zeta_pow(10, 9).unwrap());
        assert_eq!(z.conjugate().conjugate(), z);
    }

    #[test]
    fn sign_rejects_non_real() {
        assert_eq!(F::zeta(6).unwrap().sign_real(), Err(FieldError::NonRealInput));
    }

    #[test]
    fn unsupported_field() {
        assert_eq!(F::zero(7).unwrap_err(), FieldError::UnsupportedField(7));
    }

    #[test]
    fn approximate_phi() {
        let phi = golden_ratio::<BigRational>();
        let (re, im) = phi.approximate(&q(1, 1_000_000));
        assert!(re.lo >= q(16180339, 10_000_000) && re.hi <= q(16180340, 10_000_000));
        assert!(re.width() < q(1, 1_000_000));
        assert!(im.contains(&q(0, 1)));
        let (re, im) = F::zeta(4).unwrap().approximate(&q(1, 1000));
        assert!(re.contains(&q(0, 1)) && im.contains(&q(1, 1)));
    }

    #[test]
    fn promotion_preserves_value() {
        let z10 = F::zeta(10).unwrap();
        let z20 = F::zeta(20).unwrap();
        assert_eq!(z10.promote(20).unwrap(), z20.pow(2).unwrap());
        assert!(z10.promote(12).is_err());
    }

    #[test]
    fn small_rationals_agree_with_big() {
        let a = FieldElement::<Rational64>::from_ints(10, &[1, 2, -1, 3]).unwrap();
        let b = FieldElement::<Rational64>::from_ints(10, &[0, 1, 1, -2]).unwrap();
        let big = (&a * &b.inverse().unwrap()).map_coeffs::<BigRational>().unwrap();
        let expected = a.map_coeffs::<BigRational>().unwrap() / b.map_coeffs::<BigRational>().unwrap();
        assert_eq!(big, expected);
    }
}
