//! The outer billiard map outside a regular polygon, its folded form on the
//! first sector, codings, first returns, and the two special systems used for
//! the pentagon and the decagon.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactfield::{golden_ratio, Coefficient, FieldElement, FieldError};
use crate::planegeom::{
    in_closed_triangle, in_open_triangle, orientation, AntiAffineMap, Compose, GeometryError, PlaneIsometry, PlaneMap,
    PlanePoint, Similarity,
};

pub const SUPPORTED_POLYGONS: [usize; 5] = [3, 4, 5, 6, 10];

/// Return-step bound used when none is given.
pub const DEFAULT_RETURN_BOUND: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BilliardError {
    #[error("unsupported polygon with {0} sides")]
    UnsupportedPolygon(usize),
    #[error("point lies on a singular line")]
    OnSingularLine,
    #[error("point lies inside the polygon")]
    InsidePolygon,
    #[error("point is not in the open sector V_0")]
    NotInSector,
    #[error("orbit is singular at step {0}")]
    SingularAtStep(usize),
    #[error("orbit enters the polygon at step {0}")]
    InsideAtStep(usize),
    #[error("no return within {0} steps")]
    NoReturnWithinBound(usize),
    #[error("point is not in the requested region")]
    NotInRegion,
    #[error("folded map produced label {0} outside 1..=j")]
    LabelOutOfRange(usize),
    #[error("no conjugating similarity: {0}")]
    NoConjugacy(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which tangent is used. `Flipped` exists only to show that the cell checks
/// detect the wrong convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Standard,
    Flipped,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLine<Q: Coefficient> {
    pub origin: PlanePoint<Q>,
    pub direction: FieldElement<Q>,
}

/// Cone V_i: apex vertex i, bounded by the half-lines d_i and d_{i+1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cone {
    pub index: usize,
    pub right: usize,
    pub left: usize,
}

/// Smallest cyclotomic field holding the vertices and rotations of a k-gon.
pub fn field_for_polygon(k: usize) -> Result<u32, BilliardError> {
    match k {
        4 => Ok(4),
        3 | 6 => Ok(6),
        5 | 10 => Ok(10),
        _ => Err(BilliardError::UnsupportedPolygon(k)),
    }
}

/// The regular k-gon with unit circumradius and vertices P_m = exp(2 pi i m / k).
#[derive(Clone, Debug)]
pub struct PolygonTable<Q: Coefficient> {
    k: usize,
    n_root: u32,
    orientation: Orientation,
    zeta: FieldElement<Q>,
    vertices: Vec<PlanePoint<Q>>,
    edges: Vec<FieldElement<Q>>,
    halflines: Vec<HalfLine<Q>>,
    cones: Vec<Cone>,
    rotation: PlaneIsometry<Q>,
}

pub fn build_table<Q: Coefficient>(k: usize) -> Result<PolygonTable<Q>, BilliardError> {
    PolygonTable::new(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    Rho,
    Eta,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCoding<Q: Coefficient> {
    pub start: PlanePoint<Q>,
    pub letters: Vec<usize>,
    pub flavor: Flavor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord<Q: Coefficient> {
    pub step: usize,
    pub point: PlanePoint<Q>,
    pub cone: usize,
}

/// One piece of the folded map: on the points whose image under T lies in
/// V_label, it acts as `isometry = R^label o T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatCell<Q: Coefficient> {
    pub label: usize,
    pub isometry: PlaneIsometry<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatCellSet<Q: Coefficient> {
    pub j: usize,
    pub cells: Vec<HatCell<Q>>,
}

/// Regions of V_0 used for inducing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Points whose next folded letter is the given one.
    Cell(usize),
}

/// Brute-force tangency oracle over an arbitrary counterclockwise convex
/// polygon: the vertex v with every other vertex weakly to the left of the
/// directed line M -> v and exactly one vertex on it.
pub fn tangent_vertex_of<Q: Coefficient>(
    vertices: &[PlanePoint<Q>],
    m: &PlanePoint<Q>,
    orientation_kind: Orientation,
) -> Result<usize, BilliardError> {
    let k = vertices.len();
    let inside = (0..k).all(|i| orientation(&(&vertices[(i + 1) % k] - &vertices[i]), &(m - &vertices[i])) != Ordering::Less);
    if inside {
        return Err(BilliardError::InsidePolygon);
    }
    let wanted = match orientation_kind {
        Orientation::Standard => Ordering::Greater,
        Orientation::Flipped => Ordering::Less,
    };
    let mut found = None;
    for (i, v) in vertices.iter().enumerate() {
        let dir = v - m;
        let signs: Vec<Ordering> =
            vertices.iter().enumerate().filter(|&(q, _)| q != i).map(|(_, q)| orientation(&dir, &(q - m))).collect();
        if signs.iter().all(|&s| s == wanted) {
            found = Some(i);
        } else if signs.iter().all(|&s| s == wanted || s == Ordering::Equal) {
            return Err(BilliardError::OnSingularLine);
        }
    }
    found.ok_or(BilliardError::OnSingularLine)
}

impl<Q: Coefficient> PolygonTable<Q> {
    pub fn new(k: usize) -> Result<Self, BilliardError> {
        Self::with_orientation(k, Orientation::Standard)
    }

    pub fn with_orientation(k: usize, orientation_kind: Orientation) -> Result<Self, BilliardError> {
        let n_root = field_for_polygon(k)?;
        let zeta = FieldElement::zeta_pow(n_root, (n_root as usize / k) as i64)?;
        let vertices: Vec<PlanePoint<Q>> = (0..k).map(|m| zeta.pow(m as i64)).collect::<Result<_, _>>()?;
        let edges = (0..k).map(|m| &vertices[(m + 1) % k] - &vertices[m]).collect::<Vec<_>>();
        let halflines = (0..k)
            .map(|i| {
                let prev = &vertices[(i + k - 1) % k];
                HalfLine { origin: prev.clone(), direction: prev - &vertices[i] }
            })
            .collect();
        let cones = (0..k).map(|i| Cone { index: i, right: i, left: (i + 1) % k }).collect();
        let rotation = PlaneIsometry::new(zeta.inverse()?, FieldElement::zero(n_root)?)?;
        Ok(PolygonTable { k, n_root, orientation: orientation_kind, zeta, vertices, edges, halflines, cones, rotation })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of folded letters, floor((k + 1) / 2).
    pub fn j(&self) -> usize {
        self.k.div_ceil(2)
    }

    pub fn n_root(&self) -> u32 {
        self.n_root
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn vertices(&self) -> &[PlanePoint<Q>] {
        &self.vertices
    }

    /// Vertex P_m with the index taken mod k.
    pub fn vertex(&self, m: i64) -> &PlanePoint<Q> {
        &self.vertices[m.rem_euclid(self.k as i64) as usize]
    }

    pub fn halflines(&self) -> &[HalfLine<Q>] {
        &self.halflines
    }

    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    /// R, the rotation by -2 pi / k about the center.
    pub fn rotation(&self) -> &PlaneIsometry<Q> {
        &self.rotation
    }

    pub fn zeta(&self) -> &FieldElement<Q> {
        &self.zeta
    }

    fn edge_sign(&self, m: usize, p: &PlanePoint<Q>) -> Ordering {
        orientation(&self.edges[m], &(p - &self.vertices[m]))
    }

    /// Index of the tangency vertex A+ for a point outside the polygon, which
    /// is also the index of the open cone containing the point.
    pub fn tangent_vertex(&self, p: &PlanePoint<Q>) -> Result<usize, BilliardError> {
        let k = self.k;
        let signs: Vec<Ordering> = (0..k).map(|m| self.edge_sign(m, p)).collect();
        let (before, after) = match self.orientation {
            Orientation::Standard => (Ordering::Less, Ordering::Greater),
            Orientation::Flipped => (Ordering::Greater, Ordering::Less),
        };
        if let Some(i) = (0..k).find(|&i| signs[(i + k - 1) % k] == before && signs[i] == after) {
            return Ok(i);
        }
        if signs.iter().all(|&s| s != Ordering::Less) {
            Err(BilliardError::InsidePolygon)
        } else {
            Err(BilliardError::OnSingularLine)
        }
    }

    /// T(M) = 2 A+ - M.
    pub fn step_t(&self, p: &PlanePoint<Q>) -> Result<PlanePoint<Q>, BilliardError> {
        let i = self.tangent_vertex(p)?;
        Ok(PlaneIsometry::central_symmetry(&self.vertices[i]).apply(p))
    }

    pub fn in_sector(&self, x: &PlanePoint<Q>) -> bool {
        matches!(self.tangent_vertex(x), Ok(0))
    }

    /// The isometry R^n o T restricted to the sector: z -> zeta^-n (2 P_0 - z).
    pub fn cell_map(&self, n: usize) -> PlaneIsometry<Q> {
        let rn = self.rotation.pow(n as u32);
        rn.compose(&PlaneIsometry::central_symmetry(&self.vertices[0]))
    }

    /// One step of the folded map on V_0, with its letter.
    pub fn step_hat_t(&self, x: &PlanePoint<Q>) -> Result<(PlanePoint<Q>, usize), BilliardError> {
        match self.tangent_vertex(x) {
            Ok(0) => {}
            Ok(_) => return Err(BilliardError::NotInSector),
            Err(e) => return Err(e),
        }
        let y = PlaneIsometry::central_symmetry(&self.vertices[0]).apply(x);
        let n = self.tangent_vertex(&y)?;
        if n == 0 || n > self.j() {
            return Err(BilliardError::LabelOutOfRange(n));
        }
        let r = self.rotation.pow(n as u32);
        Ok((r.apply(&y), n))
    }

    pub fn hat_cells(&self) -> HatCellSet<Q> {
        HatCellSet { j: self.j(), cells: (1..=self.j()).map(|n| HatCell { label: n, isometry: self.cell_map(n) }).collect() }
    }

    /// F(v) = F(v_{n-1}) o ... o F(v_0) in the table frame.
    pub fn word_map(&self, word: &[usize]) -> PlaneIsometry<Q> {
        word.iter().fold(PlaneIsometry::identity(self.n_root), |acc, &n| self.cell_map(n).compose(&acc))
    }

    /// The `steps + 1` points M, TM, ..., T^steps M with their cones.
    pub fn orbit(&self, start: &PlanePoint<Q>, steps: usize) -> Result<Vec<OrbitRecord<Q>>, BilliardError> {
        let mut out = Vec::with_capacity(steps + 1);
        let mut p = start.clone();
        for step in 0..=steps {
            let cone = self.tangent_vertex(&p).map_err(|e| step_error(e, step))?;
            let next = PlaneIsometry::central_symmetry(&self.vertices[cone]).apply(&p);
            out.push(OrbitRecord { step, point: p, cone });
            p = next;
        }
        Ok(out)
    }

    /// rho: cone indices of T^i M; eta: folded letters starting from V_0.
    pub fn code_orbit(&self, start: &PlanePoint<Q>, length: usize, flavor: Flavor) -> Result<OrbitCoding<Q>, BilliardError> {
        let letters = match flavor {
            Flavor::Rho => {
                let records = if length == 0 { vec![] } else { self.orbit(start, length - 1)? };
                records.into_iter().map(|r| r.cone).collect()
            }
            Flavor::Eta => {
                if !self.in_sector(start) {
                    return Err(match self.tangent_vertex(start) {
                        Err(e) => step_error(e, 0),
                        Ok(_) => BilliardError::NotInSector,
                    });
                }
                let mut letters = Vec::with_capacity(length);
                let mut x = start.clone();
                for step in 0..length {
                    let (next, n) = self.step_hat_t(&x).map_err(|e| step_error(e, step))?;
                    letters.push(n);
                    x = next;
                }
                letters
            }
        };
        Ok(OrbitCoding { start: start.clone(), letters, flavor })
    }

    fn region_contains(&self, region: Region, x: &PlanePoint<Q>) -> Result<bool, BilliardError> {
        match region {
            Region::Cell(n) => Ok(self.step_hat_t(x)?.1 == n),
        }
    }

    /// First return of the folded map to `region`, with the letters read on the way.
    pub fn first_return(&self, region: Region, x: &PlanePoint<Q>, bound: usize) -> Result<(PlanePoint<Q>, Vec<usize>), BilliardError> {
        if !self.region_contains(region, x).map_err(|e| step_error(e, 0))? {
            return Err(BilliardError::NotInRegion);
        }
        let mut word = Vec::new();
        let mut y = x.clone();
        for step in 0..bound {
            let (next, n) = self.step_hat_t(&y).map_err(|e| step_error(e, step))?;
            word.push(n);
            y = next;
            if self.region_contains(region, &y).map_err(|e| step_error(e, step + 1))? {
                return Ok((y, word));
            }
        }
        Err(BilliardError::NoReturnWithinBound(bound))
    }

    /// P_0 + a (P_{-1} - P_0) + b (P_0 - P_1), in V_0 whenever a, b > 0.
    pub fn sector_point(&self, a: &Q, b: &Q) -> PlanePoint<Q> {
        let p0 = &self.vertices[0];
        let u = self.vertex(-1) - p0;
        let v = p0 - &self.vertices[1];
        p0 + &u.scale(a) + v.scale(b)
    }

    /// Deterministic pseudo-random sector points with coordinates
    /// `a, b = i / 997`, `0 < a, b < radius`.
    pub fn sample_sector_points(&self, count: usize, radius: u32, seed: u64) -> Vec<PlanePoint<Q>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let den: i64 = 997;
        let top = den * radius as i64;
        (0..count)
            .map(|_| {
                let a = Q::from_i64(rng.gen_range(1..top)).unwrap() / Q::from_i64(den).unwrap();
                let b = Q::from_i64(rng.gen_range(1..top)).unwrap() / Q::from_i64(den).unwrap();
                self.sector_point(&a, &b)
            })
            .collect()
    }
}

fn step_error(e: BilliardError, step: usize) -> BilliardError {
    match e {
        BilliardError::OnSingularLine => BilliardError::SingularAtStep(step),
        BilliardError::InsidePolygon => BilliardError::InsideAtStep(step),
        other => other,
    }
}

/// The coding law v_n = u_{n+1} - u_n mod k between the two codings of one point.
pub fn coding_law_holds(rho: &[usize], eta: &[usize], k: usize) -> bool {
    rho.len() == eta.len() + 1 && eta.iter().enumerate().all(|(n, &v)| (rho[n + 1] + k - rho[n]) % k == v)
}

/// Solves for the similarity u with `target_maps[n] o u = u o source_maps[n]`
/// for every piece; at least one source piece must be a translation.
pub fn conjugating_similarity<Q: Coefficient>(
    source_maps: &[PlaneIsometry<Q>],
    target_maps: &[PlaneIsometry<Q>],
) -> Result<Similarity<Q>, BilliardError> {
    if source_maps.len() != target_maps.len() {
        return Err(BilliardError::NoConjugacy("piece counts differ".into()));
    }
    for (s, t) in source_maps.iter().zip(target_maps) {
        if s.multiplier() != t.multiplier() {
            return Err(BilliardError::NoConjugacy("rotation angles differ".into()));
        }
    }
    let (ts, tt) = source_maps
        .iter()
        .zip(target_maps)
        .find(|(s, _)| s.is_translation() && !s.offset().is_zero())
        .ok_or_else(|| BilliardError::NoConjugacy("no translation piece".into()))?;
    let lambda = tt.offset() / ts.offset();
    let (rs, rt) = source_maps
        .iter()
        .zip(target_maps)
        .find(|(s, _)| !s.is_translation())
        .ok_or_else(|| BilliardError::NoConjugacy("no rotation piece".into()))?;
    let one = FieldElement::one(lambda.n_root())?;
    let c = (&lambda * rs.offset() - rt.offset()) / (rs.multiplier() - &one);
    let u = Similarity::new(lambda, c)?;
    for (s, t) in source_maps.iter().zip(target_maps) {
        if t.to_similarity().compose(&u) != u.compose(&s.to_similarity()) {
            return Err(BilliardError::NoConjugacy("pieces disagree".into()));
        }
    }
    Ok(u)
}

/// Checks, on sample points of the source sector, that `u` carries the
/// folded source dynamics onto the first return of the target to `cell`,
/// with return word `words[n - 1]` for the source letter n. Returns the
/// number of points checked; singular samples are skipped.
pub fn check_induction_on_samples<Q: Coefficient>(
    source: &PolygonTable<Q>,
    target: &PolygonTable<Q>,
    u: &Similarity<Q>,
    cell: usize,
    words: &[Vec<usize>],
    points: &[PlanePoint<Q>],
) -> Result<usize, String> {
    let mut checked = 0;
    for x in points {
        let Ok((fx, n)) = source.step_hat_t(x) else { continue };
        let y = u.apply(x);
        let (ry, w) = match target.first_return(Region::Cell(cell), &y, DEFAULT_RETURN_BOUND) {
            Ok(r) => r,
            Err(BilliardError::SingularAtStep(_)) => continue,
            Err(e) => return Err(format!("image of sample {checked} not in the induced cell: {e}")),
        };
        if w != words[n - 1] {
            return Err(format!("letter {n} returned with word {w:?}, expected {:?}", words[n - 1]));
        }
        if ry != u.apply(&fx) {
            return Err(format!("return point of letter {n} differs from the conjugated image"));
        }
        checked += 1;
    }
    Ok(checked)
}

// ---------------------------------------------------------------------------
// Pentagon

/// The pentagon's folded map seen in the frame where the sector apex A is 0
/// and the adjacent vertex F is 1.
#[derive(Clone, Debug)]
pub struct PentagonSystem<Q: Coefficient> {
    pub table: PolygonTable<Q>,
    /// Table frame to the normalized frame.
    pub frame: Similarity<Q>,
    pub points: BTreeMap<char, PlanePoint<Q>>,
    /// F(1), F(2), F(3) in the normalized frame.
    pub maps: [PlaneIsometry<Q>; 3],
}

/// Tabachnikov's two-triangle system and its renormalization D.
#[derive(Clone, Debug)]
pub struct TabachnikovSystem<Q: Coefficient> {
    /// Triangles A F C and H F E.
    pub triangles: [[PlanePoint<Q>; 3]; 2],
    /// Rotation on AFC.
    pub a: PlaneIsometry<Q>,
    /// Rotation on HFE.
    pub b: PlaneIsometry<Q>,
    pub d: AntiAffineMap<Q>,
}

impl<Q: Coefficient> TabachnikovSystem<Q> {
    /// G on the open triangles, `None` elsewhere.
    pub fn apply_g(&self, x: &PlanePoint<Q>) -> Option<PlanePoint<Q>> {
        let [t1, t2] = &self.triangles;
        if in_open_triangle(x, [&t1[0], &t1[1], &t1[2]]) {
            Some(self.a.apply(x))
        } else if in_open_triangle(x, [&t2[0], &t2[1], &t2[2]]) {
            Some(self.b.apply(x))
        } else {
            None
        }
    }

    /// The isometry a^.. b^.. for a word over {'a', 'b'}, rightmost letter applied first.
    pub fn word(&self, w: &str) -> PlaneIsometry<Q> {
        w.chars().rev().fold(PlaneIsometry::identity(self.a.multiplier().n_root()), |acc, ch| {
            let m = if ch == 'a' { &self.a } else { &self.b };
            m.compose(&acc)
        })
    }
}

fn c_int<Q: Coefficient>(n_root: u32, v: i64) -> FieldElement<Q> {
    FieldElement::from_int(n_root, v).expect("supported field")
}

impl<Q: Coefficient> PentagonSystem<Q> {
    pub fn new() -> Result<Self, BilliardError> {
        Self::from_table(PolygonTable::new(5)?)
    }

    pub fn from_table(table: PolygonTable<Q>) -> Result<Self, BilliardError> {
        let frame = Similarity::normalizing(table.vertex(0), table.vertex(-1))?;
        let maps = [1, 2, 3].map(|n| frame.conjugate_isometry(&table.cell_map(n)));
        let phi = golden_ratio::<Q>();
        let one = c_int::<Q>(10, 1);
        let e2 = FieldElement::zeta_pow(10, 2)?;
        let f2_inv = maps[1].inverse();
        let mut points = BTreeMap::new();
        points.insert('A', c_int(10, 0));
        points.insert('F', one.clone());
        points.insert('C', &phi * &e2);
        points.insert('I', (&phi + &one) * &e2);
        points.insert('G', &phi + &one);
        points.insert('E', f2_inv.apply(&(&phi + &one)));
        points.insert('B', f2_inv.apply(&one));
        points.insert('H', maps[1].apply(&(&phi * &e2)));
        Ok(PentagonSystem { table, frame, points, maps })
    }

    pub fn point(&self, name: char) -> &PlanePoint<Q> {
        &self.points[&name]
    }

    /// F(v) for a word with signed letters (negative = inverse), in the normalized frame.
    pub fn word_map(&self, word: &[i8]) -> PlaneIsometry<Q> {
        word.iter().fold(PlaneIsometry::identity(10), |acc, &l| {
            let m = &self.maps[l.unsigned_abs() as usize - 1];
            let m = if l < 0 { m.inverse() } else { m.clone() };
            m.compose(&acc)
        })
    }

    /// Center Z_v of F(v).
    pub fn center(&self, word: &[i8]) -> Result<PlanePoint<Q>, BilliardError> {
        Ok(self.word_map(word).rotation_center()?)
    }

    /// The translation by 2(1 + phi).
    pub fn translation_t(&self) -> PlaneIsometry<Q> {
        let phi = golden_ratio::<Q>();
        PlaneIsometry::translation((phi + c_int(10, 1)).scale(&Q::from_i64(2).unwrap()))
    }

    pub fn to_table(&self, z: &PlanePoint<Q>) -> PlanePoint<Q> {
        self.frame.inverse().apply(z)
    }

    pub fn from_table_frame(&self, z: &PlanePoint<Q>) -> PlanePoint<Q> {
        self.frame.apply(z)
    }

    /// Folded step computed in the table frame and reported in the normalized frame.
    pub fn step(&self, z: &PlanePoint<Q>) -> Result<(PlanePoint<Q>, usize), BilliardError> {
        let (y, n) = self.table.step_hat_t(&self.to_table(z))?;
        Ok((self.from_table_frame(&y), n))
    }

    pub fn triangle(&self, names: &str) -> [PlanePoint<Q>; 3] {
        let v: Vec<char> = names.chars().collect();
        [self.point(v[0]).clone(), self.point(v[1]).clone(), self.point(v[2]).clone()]
    }

    /// Closed membership in the invariant set Z = ACF u HFE.
    pub fn in_invariant_set(&self, z: &PlanePoint<Q>) -> bool {
        let [a, c, f] = self.triangle("ACF");
        let [h, f2, e] = self.triangle("HFE");
        in_closed_triangle(z, [&a, &c, &f]) || in_closed_triangle(z, [&h, &f2, &e])
    }

    pub fn tabachnikov_system(&self) -> Result<TabachnikovSystem<Q>, BilliardError> {
        let a = self.maps[0].inverse();
        let b = self.maps[1].inverse();
        let z1 = a.rotation_center()?;
        let z2 = b.rotation_center()?;
        let lambda = &z1 / &z2;
        let c = &lambda * &FieldElement::zeta_pow(10, 2)?;
        let d = AntiAffineMap::new(c, c_int(10, 0))?;
        Ok(TabachnikovSystem { triangles: [self.triangle("AFC"), self.triangle("HFE")], a, b, d })
    }

    pub fn hat_cells(&self) -> HatCellSet<Q> {
        HatCellSet { j: 3, cells: (1..=3).map(|n| HatCell { label: n, isometry: self.maps[n - 1].clone() }).collect() }
    }
}

// ---------------------------------------------------------------------------
// Decagon

/// Pentagon words coding the first return to U_3 for each decagon letter.
pub const THETA: [&[usize]; 5] = [&[3, 2, 2, 2, 2, 2], &[3, 2, 2, 2, 2], &[3, 2, 2, 2], &[3, 2, 2], &[3, 2]];

pub fn theta_expand(word: &[usize]) -> Vec<usize> {
    word.iter().flat_map(|&l| THETA[l - 1].iter().copied()).collect()
}

#[derive(Clone, Debug)]
pub struct DecagonSystem<Q: Coefficient> {
    pub table: PolygonTable<Q>,
    /// Table frame to the normalized decagon frame (side length 1, apex at 0).
    pub frame: Similarity<Q>,
    /// The five folded pieces in the normalized frame.
    pub maps: [PlaneIsometry<Q>; 5],
    /// Translation from the decagon frame into the pentagon's normalized frame.
    pub s: PlaneIsometry<Q>,
}

impl<Q: Coefficient> DecagonSystem<Q> {
    pub fn new(pentagon: &PentagonSystem<Q>) -> Result<Self, BilliardError> {
        let table = PolygonTable::new(10)?;
        let normal = Similarity::normalizing(table.vertex(0), table.vertex(-1))?;
        let turn = Similarity::new(FieldElement::zeta(10)?, c_int(10, 0))?;
        let frame = turn.compose(&normal);
        let maps = [1, 2, 3, 4, 5].map(|n| frame.conjugate_isometry(&table.cell_map(n)));
        let s = PlaneIsometry::translation(pentagon.point('I').clone());
        Ok(DecagonSystem { table, frame, maps, s })
    }

    /// Pentagon point corresponding to a decagon table point.
    pub fn to_pentagon(&self, pentagon: &PentagonSystem<Q>, x: &PlanePoint<Q>) -> PlanePoint<Q> {
        pentagon.to_table(&self.s.apply(&self.frame.apply(x)))
    }
}

impl PentagonSystem<BigRational> {
    /// Exact center of the periodic cell coded by `word`, as a table point.
    pub fn periodic_point(&self, word: &[usize]) -> Result<PlanePoint<BigRational>, BilliardError> {
        let w: Vec<i8> = word.iter().map(|&l| l as i8).collect();
        Ok(self.to_table(&self.center(&w)?))
    }
}

/// Rational helper used by callers that build points from small fractions.
pub fn ratio<Q: Coefficient>(num: i64, den: i64) -> Q {
    Q::from_i64(num).unwrap() / Q::from_i64(den).unwrap()
}

impl<Q: Coefficient> HatCellSet<Q> {
    pub fn labels(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.label).collect()
    }
}
