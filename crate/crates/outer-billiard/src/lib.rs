//! Exact outer billiard dynamics outside regular polygons.

pub mod billiard;
pub mod closedform;
pub mod exactfield;
pub mod planegeom;
pub mod substlang;
pub mod wordcomb;

use num_rational::{BigRational, Rational64};

/// Cyclotomic numbers with arbitrary precision rational coordinates.
pub type Field = exactfield::FieldElement<BigRational>;
/// Cyclotomic numbers with 64-bit rational coordinates; overflow panics.
pub type SmallField = exactfield::FieldElement<Rational64>;
pub type Point = planegeom::PlanePoint<BigRational>;
pub type Isometry = planegeom::PlaneIsometry<BigRational>;
pub type Table = billiard::PolygonTable<BigRational>;
