//! Exact plane geometry over a cyclotomic field.
//!
//! Points are complex numbers of the field. Maps come in three shapes:
//! isometries `z -> a z + b` with `|a| = 1`, anti-affine maps
//! `z -> c conj(z) + d`, and general direct similarities `z -> a z + b`
//! (needed for changes of frame and for products of two anti-affine maps).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::exactfield::{Coefficient, FieldElement};

/// A point of the plane, identified with its affix.
pub type PlanePoint<Q> = FieldElement<Q>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("multiplier does not have modulus one")]
    NotAnIsometry,
    #[error("map is a translation, not a rotation")]
    NotARotation,
    #[error("rotations have different angles")]
    AngleMismatch,
    #[error("similarity with zero multiplier")]
    Degenerate,
}

/// Applying a map to a point.
pub trait PlaneMap<Q: Coefficient> {
    fn apply(&self, p: &PlanePoint<Q>) -> PlanePoint<Q>;
}

/// `self.compose(inner)` is the map `x -> self(inner(x))`.
pub trait Compose<Rhs> {
    type Output;
    fn compose(&self, inner: &Rhs) -> Self::Output;
}

/// Free-function form of [`Compose`]: `compose(m2, m1) = m2 o m1`.
pub fn compose<A: Compose<B>, B>(outer: &A, inner: &B) -> A::Output {
    outer.compose(inner)
}

/// z -> a z + b with a conj(a) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlaneIsometry<Q> {
    a: FieldElement<Q>,
    b: FieldElement<Q>,
}

impl<Q: Coefficient> PlaneIsometry<Q> {
    pub fn new(a: FieldElement<Q>, b: FieldElement<Q>) -> Result<Self, GeometryError> {
        if !a.norm_squared().is_one() {
            return Err(GeometryError::NotAnIsometry);
        }
        Ok(PlaneIsometry { a, b })
    }

    pub fn identity(n_root: u32) -> Self {
        let one = FieldElement::one(n_root).expect("supported field");
        PlaneIsometry { b: FieldElement::zero(n_root).expect("supported field"), a: one }
    }

    pub fn translation(v: FieldElement<Q>) -> Self {
        PlaneIsometry { a: FieldElement::one(v.n_root()).expect("supported field"), b: v }
    }

    /// Rotation with multiplier `a` fixing `center`.
    pub fn rotation(a: FieldElement<Q>, center: &PlanePoint<Q>) -> Result<Self, GeometryError> {
        let one = FieldElement::one(a.n_root()).expect("supported field");
        let b = (&one - &a) * center;
        Self::new(a, b)
    }

    /// Point reflection z -> 2p - z.
    pub fn central_symmetry(p: &PlanePoint<Q>) -> Self {
        let two = Q::one() + Q::one();
        PlaneIsometry { a: -FieldElement::one(p.n_root()).expect("supported field"), b: p.scale(&two) }
    }

    pub fn multiplier(&self) -> &FieldElement<Q> {
        &self.a
    }

    pub fn offset(&self) -> &FieldElement<Q> {
        &self.b
    }

    pub fn is_translation(&self) -> bool {
        self.a.is_one()
    }

    pub fn inverse(&self) -> Self {
        // |a| = 1, so a^-1 = conj(a).
        let inv = self.a.conjugate();
        PlaneIsometry { b: -(&inv * &self.b), a: inv }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PlaneIsometry::identity(self.a.n_root());
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// The fixed point b / (1 - a).
    pub fn rotation_center(&self) -> Result<PlanePoint<Q>, GeometryError> {
        if self.is_translation() {
            return Err(GeometryError::NotARotation);
        }
        let one = FieldElement::one(self.a.n_root()).expect("supported field");
        Ok(&self.b / &(&one - &self.a))
    }

    pub fn to_similarity(&self) -> Similarity<Q> {
        Similarity { a: self.a.clone(), b: self.b.clone() }
    }
}

/// The translation t with `r1 o t = t o r2`, i.e. by center(r1) - center(r2).
pub fn conjugating_translation<Q: Coefficient>(
    r1: &PlaneIsometry<Q>,
    r2: &PlaneIsometry<Q>,
) -> Result<PlaneIsometry<Q>, GeometryError> {
    if r1.a != r2.a {
        return Err(GeometryError::AngleMismatch);
    }
    let t = PlaneIsometry::translation(r1.rotation_center()? - r2.rotation_center()?);
    debug_assert!(r1.compose(&t) == t.compose(r2));
    Ok(t)
}

impl<Q: Coefficient> PlaneMap<Q> for PlaneIsometry<Q> {
    fn apply(&self, p: &PlanePoint<Q>) -> PlanePoint<Q> {
        &self.a * p + &self.b
    }
}

impl<Q: Coefficient> Compose<PlaneIsometry<Q>> for PlaneIsometry<Q> {
    type Output = PlaneIsometry<Q>;
    fn compose(&self, inner: &PlaneIsometry<Q>) -> PlaneIsometry<Q> {
        PlaneIsometry { a: &self.a * &inner.a, b: &self.a * &inner.b + &self.b }
    }
}

impl<Q: Coefficient> Compose<AntiAffineMap<Q>> for PlaneIsometry<Q> {
    type Output = AntiAffineMap<Q>;
    fn compose(&self, inner: &AntiAffineMap<Q>) -> AntiAffineMap<Q> {
        AntiAffineMap { c: &self.a * &inner.c, d: &self.a * &inner.d + &self.b }
    }
}

impl<Q: Coefficient> fmt::Debug for PlaneIsometry<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> ({}) z + ({})", self.a, self.b)
    }
}

/// z -> c conj(z) + d.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AntiAffineMap<Q> {
    c: FieldElement<Q>,
    d: FieldElement<Q>,
}

impl<Q: Coefficient> AntiAffineMap<Q> {
    pub fn new(c: FieldElement<Q>, d: FieldElement<Q>) -> Result<Self, GeometryError> {
        if c.is_zero() {
            return Err(GeometryError::Degenerate);
        }
        Ok(AntiAffineMap { c, d })
    }

    pub fn multiplier(&self) -> &FieldElement<Q> {
        &self.c
    }

    pub fn offset(&self) -> &FieldElement<Q> {
        &self.d
    }
}

impl<Q: Coefficient> PlaneMap<Q> for AntiAffineMap<Q> {
    fn apply(&self, p: &PlanePoint<Q>) -> PlanePoint<Q> {
        &self.c * &p.conjugate() + &self.d
    }
}

impl<Q: Coefficient> Compose<PlaneIsometry<Q>> for AntiAffineMap<Q> {
    type Output = AntiAffineMap<Q>;
    fn compose(&self, inner: &PlaneIsometry<Q>) -> AntiAffineMap<Q> {
        AntiAffineMap { c: &self.c * &inner.a.conjugate(), d: &self.c * &inner.b.conjugate() + &self.d }
    }
}

impl<Q: Coefficient> Compose<AntiAffineMap<Q>> for AntiAffineMap<Q> {
    type Output = Similarity<Q>;
    fn compose(&self, inner: &AntiAffineMap<Q>) -> Similarity<Q> {
        Similarity { a: &self.c * &inner.c.conjugate(), b: &self.c * &inner.d.conjugate() + &self.d }
    }
}

impl<Q: Coefficient> fmt::Debug for AntiAffineMap<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> ({}) conj(z) + ({})", self.c, self.d)
    }
}

/// z -> a z + b with a != 0.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Similarity<Q> {
    a: FieldElement<Q>,
    b: FieldElement<Q>,
}

impl<Q: Coefficient> Similarity<Q> {
    pub fn new(a: FieldElement<Q>, b: FieldElement<Q>) -> Result<Self, GeometryError> {
        if a.is_zero() {
            return Err(GeometryError::Degenerate);
        }
        Ok(Similarity { a, b })
    }

    /// The similarity sending `p` to 0 and `q` to 1.
    pub fn normalizing(p: &PlanePoint<Q>, q: &PlanePoint<Q>) -> Result<Self, GeometryError> {
        let scale = (q - p).inverse().map_err(|_| GeometryError::Degenerate)?;
        Ok(Similarity { b: -(&scale * p), a: scale })
    }

    pub fn multiplier(&self) -> &FieldElement<Q> {
        &self.a
    }

    pub fn offset(&self) -> &FieldElement<Q> {
        &self.b
    }

    pub fn inverse(&self) -> Self {
        let inv = self.a.inverse().expect("nonzero multiplier");
        Similarity { b: -(&inv * &self.b), a: inv }
    }

    /// `self o m o self^-1`, which is again an isometry.
    pub fn conjugate_isometry(&self, m: &PlaneIsometry<Q>) -> PlaneIsometry<Q> {
        let s = self.compose(&m.to_similarity()).compose(&self.inverse());
        PlaneIsometry { a: s.a, b: s.b }
    }

    pub fn to_isometry(&self) -> Result<PlaneIsometry<Q>, GeometryError> {
        PlaneIsometry::new(self.a.clone(), self.b.clone())
    }
}

impl<Q: Coefficient> PlaneMap<Q> for Similarity<Q> {
    fn apply(&self, p: &PlanePoint<Q>) -> PlanePoint<Q> {
        &self.a * p + &self.b
    }
}

impl<Q: Coefficient> Compose<Similarity<Q>> for Similarity<Q> {
    type Output = Similarity<Q>;
    fn compose(&self, inner: &Similarity<Q>) -> Similarity<Q> {
        Similarity { a: &self.a * &inner.a, b: &self.a * &inner.b + &self.b }
    }
}

impl<Q: Coefficient> fmt::Debug for Similarity<Q> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z -> ({}) z + ({})", self.a, self.b)
    }
}

/// Sign of the cross product of `u` and `v`, i.e. of Im(conj(u) v).
pub fn orientation<Q: Coefficient>(u: &PlanePoint<Q>, v: &PlanePoint<Q>) -> Ordering {
    (&u.conjugate() * v).sign_im()
}

/// Whether `p` lies in the closed triangle `abc` (either orientation).
pub fn in_closed_triangle<Q: Coefficient>(p: &PlanePoint<Q>, tri: [&PlanePoint<Q>; 3]) -> bool {
    let signs: Vec<Ordering> = (0..3).map(|i| orientation(&(tri[(i + 1) % 3] - tri[i]), &(p - tri[i]))).collect();
    signs.iter().all(|&s| s != Ordering::Less) || signs.iter().all(|&s| s != Ordering::Greater)
}

/// Whether `p` lies in the open triangle `abc` (either orientation).
pub fn in_open_triangle<Q: Coefficient>(p: &PlanePoint<Q>, tri: [&PlanePoint<Q>; 3]) -> bool {
    let signs: Vec<Ordering> = (0..3).map(|i| orientation(&(tri[(i + 1) % 3] - tri[i]), &(p - tri[i]))).collect();
    signs.iter().all(|&s| s == Ordering::Greater) || signs.iter().all(|&s| s == Ordering::Less)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type F = FieldElement<BigRational>;

    fn int(v: i64) -> F {
        F::from_int(10, v).unwrap()
    }

    #[test]
    fn isometry_rejects_non_unit_multiplier() {
        assert_eq!(PlaneIsometry::new(int(2), int(0)).unwrap_err(), GeometryError::NotAnIsometry);
    }

    #[test]
    fn central_symmetry_is_involution() {
        let p = F::from_ints(10, &[1, 2, 0, -1]).unwrap();
        let s = PlaneIsometry::central_symmetry(&p);
        assert_eq!(compose(&s, &s), PlaneIsometry::identity(10));
    }

    #[test]
    fn rotation_center_is_fixed() {
        let z = F::zeta(10).unwrap();
        let c = F::from_ints(10, &[3, 0, 1]).unwrap();
        let r = PlaneIsometry::rotation(z, &c).unwrap();
        assert_eq!(r.rotation_center().unwrap(), c);
        assert_eq!(r.apply(&c), c);
        assert_eq!(PlaneIsometry::translation(int(1)).rotation_center(), Err(GeometryError::NotARotation));
    }

    #[test]
    fn self_conjugation_is_trivial() {
        let r = PlaneIsometry::rotation(F::zeta(10).unwrap(), &int(4)).unwrap();
        assert_eq!(conjugating_translation(&r, &r).unwrap(), PlaneIsometry::identity(10));
        let s = PlaneIsometry::rotation(F::zeta_pow(10, 2).unwrap(), &int(4)).unwrap();
        assert_eq!(conjugating_translation(&r, &s).unwrap_err(), GeometryError::AngleMismatch);
    }

    #[test]
    fn anti_affine_products() {
        let z = F::zeta(10).unwrap();
        let d = AntiAffineMap::new(z.scale(&BigRational::new(1.into(), 3.into())), int(1)).unwrap();
        let e = AntiAffineMap::new(z.pow(3).unwrap(), z.clone()).unwrap();
        let s = compose(&d, &e);
        let p = F::from_ints(10, &[1, -1, 2, 0]).unwrap();
        assert_eq!(s.apply(&p), d.apply(&e.apply(&p)));
        let r = PlaneIsometry::rotation(z.clone(), &int(2)).unwrap();
        assert_eq!(compose(&d, &r).apply(&p), d.apply(&r.apply(&p)));
        assert_eq!(compose(&r, &d).apply(&p), r.apply(&d.apply(&p)));
    }

    #[test]
    fn normalizing_frame() {
        let p = F::from_ints(10, &[1, 1]).unwrap();
        let q = F::from_ints(10, &[0, 0, 2]).unwrap();
        let s = Similarity::normalizing(&p, &q).unwrap();
        assert!(s.apply(&p).is_zero());
        assert!(s.apply(&q).is_one());
        assert_eq!(s.inverse().apply(&int(1)), q);
    }

    #[test]
    fn triangle_membership() {
        let a = int(0);
        let b = int(4);
        let c = F::from_ints(10, &[0, 4]).unwrap();
        assert!(in_open_triangle(&F::from_ints(10, &[1, 1]).unwrap(), [&a, &b, &c]));
        assert!(in_closed_triangle(&int(2), [&a, &b, &c]));
        assert!(!in_open_triangle(&int(2), [&a, &b, &c]));
        assert!(!in_closed_triangle(&int(5), [&a, &c, &b]));
    }
}
