//! Exact triangular-lattice substrate.
//!
//! Points are stored in the Eisenstein basis `e1 = (1, 0)`, `e2 = (1/2, √3/2)`
//! scaled by three, so that lattice vertices and triangle centroids are both
//! integral. Every predicate in this module is integer arithmetic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("polyiamond size {0} is outside the supported range 1..=9")]
    SizeOutOfRange(usize),
    #[error("torus basis is degenerate (determinant 0)")]
    DegenerateBasis,
    #[error("isometry shift ({0}, {1}) is not a lattice translation")]
    NonLatticeShift(i64, i64),
    #[error("outline of an empty region")]
    EmptyRegion,
    #[error("region is disconnected")]
    Disconnected,
    #[error("region has {0} holes")]
    Holed(usize),
    #[error("region boundary touches itself at a vertex")]
    Pinched,
    #[error("degenerate polygon")]
    DegeneratePolygon,
}

/// A point in thirds of the Eisenstein basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EPoint {
    pub tp: i64,
    pub tq: i64,
}

impl EPoint {
    pub const fn new(tp: i64, tq: i64) -> Self {
        EPoint { tp, tq }
    }

    /// The lattice vertex with Eisenstein coordinates `(p, q)`.
    pub const fn vertex(p: i64, q: i64) -> Self {
        EPoint { tp: 3 * p, tq: 3 * q }
    }

    pub fn is_lattice_vertex(self) -> bool {
        self.tp.rem_euclid(3) == 0 && self.tq.rem_euclid(3) == 0
    }

    pub fn is_centroid(self) -> bool {
        let r = self.tp.rem_euclid(3);
        r != 0 && r == self.tq.rem_euclid(3)
    }

    /// Counterclockwise rotation by 60° about the origin.
    pub fn rot60(self) -> Self {
        EPoint::new(-self.tq, self.tp + self.tq)
    }

    /// Mirror across the x-axis.
    pub fn mirror(self) -> Self {
        EPoint::new(self.tp + self.tq, -self.tq)
    }

    /// Nine times the squared Euclidean length.
    pub fn norm9(self) -> i64 {
        self.tp * self.tp + self.tp * self.tq + self.tq * self.tq
    }

    /// Cross product in units of `√3/18`; the sign is the orientation.
    pub fn cross(self, other: EPoint) -> i64 {
        self.tp * other.tq - self.tq * other.tp
    }

    /// Eighteen times the Euclidean dot product.
    pub fn dot18(self, other: EPoint) -> i64 {
        2 * self.tp * other.tp + self.tp * other.tq + self.tq * other.tp + 2 * self.tq * other.tq
    }

    /// Multiplication by `1 + ζ`: rotation by 30° combined with scaling by √3.
    pub fn rot30_scaled(self) -> Self {
        EPoint::new(self.tp - self.tq, self.tp + 2 * self.tq)
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        let p = self.tp as f64 / 3.0;
        let q = self.tq as f64 / 3.0;
        (p + q / 2.0, q * 3f64.sqrt() / 2.0)
    }
}

impl Add for EPoint {
    type Output = EPoint;
    fn add(self, o: EPoint) -> EPoint {
        EPoint::new(self.tp + o.tp, self.tq + o.tq)
    }
}

impl Sub for EPoint {
    type Output = EPoint;
    fn sub(self, o: EPoint) -> EPoint {
        EPoint::new(self.tp - o.tp, self.tq - o.tq)
    }
}

impl Neg for EPoint {
    type Output = EPoint;
    fn neg(self) -> EPoint {
        EPoint::new(-self.tp, -self.tq)
    }
}

impl fmt::Display for EPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tp, self.tq)
    }
}

/// Nine times the squared distance between two points.
pub fn dist9(a: EPoint, b: EPoint) -> i64 {
    (a - b).norm9()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orient {
    U,
    D,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::U => Orient::D,
            Orient::D => Orient::U,
        }
    }
}

impl fmt::Display for Orient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orient::U => "U",
            Orient::D => "D",
        })
    }
}

/// A unit lattice triangle.
///
/// `U` at `(x, y)` has corners `(x, y)`, `(x+1, y)`, `(x, y+1)`; `D` at
/// `(x, y)` has corners `(x+1, y+1)`, `(x, y+1)`, `(x+1, y)`, which is the
/// `U` corner list under the half-turn about the shared edge midpoint.
/// Edge `i` runs from corner `i` to corner `i+1`; for `U` that is
/// base, right, left; for `D` top, left, right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tri {
    pub x: i32,
    pub y: i32,
    pub orient: Orient,
}

impl Tri {
    pub const fn new(x: i32, y: i32, orient: Orient) -> Self {
        Tri { x, y, orient }
    }

    pub const fn up(x: i32, y: i32) -> Self {
        Tri::new(x, y, Orient::U)
    }

    pub const fn down(x: i32, y: i32) -> Self {
        Tri::new(x, y, Orient::D)
    }

    /// Corners in counterclockwise order.
    pub fn vertices(self) -> [EPoint; 3] {
        let (x, y) = (self.x as i64, self.y as i64);
        match self.orient {
            Orient::U => [EPoint::vertex(x, y), EPoint::vertex(x + 1, y), EPoint::vertex(x, y + 1)],
            Orient::D => [EPoint::vertex(x + 1, y + 1), EPoint::vertex(x, y + 1), EPoint::vertex(x + 1, y)],
        }
    }

    pub fn centroid(self) -> EPoint {
        let (x, y) = (3 * self.x as i64, 3 * self.y as i64);
        match self.orient {
            Orient::U => EPoint::new(x + 1, y + 1),
            Orient::D => EPoint::new(x + 2, y + 2),
        }
    }

    /// The triangle whose centroid is `c`, if `c` is a centroid.
    pub fn from_centroid(c: EPoint) -> Option<Tri> {
        match (c.tp.rem_euclid(3), c.tq.rem_euclid(3)) {
            (1, 1) => Some(Tri::up(((c.tp - 1) / 3) as i32, ((c.tq - 1) / 3) as i32)),
            (2, 2) => Some(Tri::down(((c.tp - 2) / 3) as i32, ((c.tq - 2) / 3) as i32)),
            _ => None,
        }
    }

    /// The triangle across `edge`. The shared edge carries the same index
    /// in both triangles.
    pub fn neighbor(self, edge: u8) -> Tri {
        let Tri { x, y, orient } = self;
        match (orient, edge % 3) {
            (Orient::U, 0) => Tri::down(x, y - 1),
            (Orient::U, 1) => Tri::down(x, y),
            (Orient::U, _) => Tri::down(x - 1, y),
            (Orient::D, 0) => Tri::up(x, y + 1),
            (Orient::D, 1) => Tri::up(x, y),
            (Orient::D, _) => Tri::up(x + 1, y),
        }
    }

    pub fn neighbors(self) -> [Tri; 3] {
        [self.neighbor(0), self.neighbor(1), self.neighbor(2)]
    }

    pub fn edge(self, edge: u8) -> (EPoint, EPoint) {
        let v = self.vertices();
        let e = (edge % 3) as usize;
        (v[e], v[(e + 1) % 3])
    }

    pub fn wedges(self) -> [Wedge; 3] {
        [Wedge::new(self, 0), Wedge::new(self, 1), Wedge::new(self, 2)]
    }

    pub fn translated(self, dx: i32, dy: i32) -> Tri {
        Tri::new(self.x + dx, self.y + dy, self.orient)
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.x, self.y, self.orient)
    }
}

/// The third of a triangle spanned by one of its edges and its centroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wedge {
    pub tri: Tri,
    pub edge: u8,
}

impl Wedge {
    pub fn new(tri: Tri, edge: u8) -> Self {
        debug_assert!(edge < 3);
        Wedge { tri, edge }
    }

    /// Counterclockwise corners: the two edge endpoints, then the centroid.
    pub fn vertices(self) -> [EPoint; 3] {
        let (a, b) = self.tri.edge(self.edge);
        [a, b, self.tri.centroid()]
    }

    pub fn translated(self, dx: i32, dy: i32) -> Wedge {
        Wedge::new(self.tri.translated(dx, dy), self.edge)
    }
}

/// A lattice-preserving isometry `x ↦ R^rot · M^reflect · x + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Isometry {
    rot: u8,
    reflect: bool,
    shift: EPoint,
}

impl Default for Isometry {
    fn default() -> Self {
        Isometry::identity()
    }
}

impl Isometry {
    pub const fn identity() -> Self {
        Isometry { rot: 0, reflect: false, shift: EPoint::new(0, 0) }
    }

    pub fn new(rot: u8, reflect: bool, shift: EPoint) -> Result<Self, LatticeError> {
        if !shift.is_lattice_vertex() {
            return Err(LatticeError::NonLatticeShift(shift.tp, shift.tq));
        }
        Ok(Isometry { rot: rot % 6, reflect, shift })
    }

    /// Pure point-group element fixing the origin.
    pub fn linear(rot: u8, reflect: bool) -> Self {
        Isometry { rot: rot % 6, reflect, shift: EPoint::default() }
    }

    /// Translation by the lattice vector `(dx, dy)`.
    pub fn translation(dx: i32, dy: i32) -> Self {
        Isometry { rot: 0, reflect: false, shift: EPoint::vertex(dx as i64, dy as i64) }
    }

    /// Rotation by `k·60°` about `center`, when that is lattice preserving.
    pub fn rotation_about(center: EPoint, k: u8) -> Option<Isometry> {
        let lin = Isometry::linear(k, false);
        Isometry::new(k, false, center - lin.apply_point(center)).ok()
    }

    /// The 12 point-group elements (6 rotations, then 6 reflections).
    pub fn point_group() -> [Isometry; 12] {
        let mut out = [Isometry::identity(); 12];
        for (i, g) in out.iter_mut().enumerate() {
            *g = Isometry::linear((i % 6) as u8, i >= 6);
        }
        out
    }

    pub fn rotations() -> [Isometry; 6] {
        let mut out = [Isometry::identity(); 6];
        for (i, g) in out.iter_mut().enumerate() {
            *g = Isometry::linear(i as u8, false);
        }
        out
    }

    pub fn rot(&self) -> u8 {
        self.rot
    }

    pub fn reflects(&self) -> bool {
        self.reflect
    }

    pub fn shift(&self) -> EPoint {
        self.shift
    }

    pub fn is_identity(&self) -> bool {
        *self == Isometry::identity()
    }

    fn apply_linear(&self, mut p: EPoint) -> EPoint {
        if self.reflect {
            p = p.mirror();
        }
        for _ in 0..self.rot {
            p = p.rot60();
        }
        p
    }

    pub fn apply_point(&self, p: EPoint) -> EPoint {
        self.apply_linear(p) + self.shift
    }

    /// Image of a lattice translation vector given in triangle coordinates.
    pub fn apply_vector(&self, v: (i32, i32)) -> (i32, i32) {
        let w = self.apply_linear(EPoint::vertex(v.0 as i64, v.1 as i64));
        ((w.tp / 3) as i32, (w.tq / 3) as i32)
    }

    pub fn apply_tri(&self, t: Tri) -> Tri {
        Tri::from_centroid(self.apply_point(t.centroid())).expect("lattice isometries map centroids to centroids")
    }

    pub fn apply_wedge(&self, w: Wedge) -> Wedge {
        let (a, b) = w.tri.edge(w.edge);
        let (a, b) = (self.apply_point(a), self.apply_point(b));
        let tri = self.apply_tri(w.tri);
        let v = tri.vertices();
        let edge = (0..3u8)
            .find(|&e| {
                let (p, q) = (v[e as usize], v[(e as usize + 1) % 3]);
                (p == a && q == b) || (p == b && q == a)
            })
            .expect("edge image is an edge of the image triangle");
        Wedge::new(tri, edge)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let rot = if self.reflect { (self.rot + 6 - other.rot) % 6 } else { (self.rot + other.rot) % 6 };
        Isometry { rot, reflect: self.reflect ^ other.reflect, shift: self.apply_point(other.shift) }
    }

    pub fn inverse(&self) -> Isometry {
        let lin =
            if self.reflect { Isometry::linear(self.rot, true) } else { Isometry::linear((6 - self.rot) % 6, false) };
        Isometry { shift: -lin.apply_point(self.shift), ..lin }
    }

    /// Same linear part, with the shift replaced.
    pub fn with_shift(&self, shift: EPoint) -> Result<Isometry, LatticeError> {
        Isometry::new(self.rot, self.reflect, shift)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rot={} reflect={} shift=({},{})", self.rot, self.reflect as u8, self.shift.tp / 3, self.shift.tq / 3)
    }
}

/// Anything that lives on the lattice and moves under isometries.
pub trait Placed: Clone + Ord {
    fn transformed(&self, g: &Isometry) -> Self;
    /// A representative triangle used to normalize translations.
    fn anchor(&self) -> Tri;
    fn translated(&self, dx: i32, dy: i32) -> Self;
}

impl Placed for Tri {
    fn transformed(&self, g: &Isometry) -> Self {
        g.apply_tri(*self)
    }
    fn anchor(&self) -> Tri {
        *self
    }
    fn translated(&self, dx: i32, dy: i32) -> Self {
        Tri::translated(*self, dx, dy)
    }
}

impl Placed for Wedge {
    fn transformed(&self, g: &Isometry) -> Self {
        g.apply_wedge(*self)
    }
    fn anchor(&self) -> Tri {
        self.tri
    }
    fn translated(&self, dx: i32, dy: i32) -> Self {
        Wedge::translated(*self, dx, dy)
    }
}

/// Sorted items translated so the least anchor sits at `(0, 0)`.
pub fn normalize_translation<T: Placed>(items: &[T]) -> Vec<T> {
    let Some(min) = items.iter().map(Placed::anchor).min() else {
        return Vec::new();
    };
    let mut out: Vec<T> = items.iter().map(|i| i.translated(-min.x, -min.y)).collect();
    out.sort();
    out
}

/// Lexicographically least translation-normalized image over `ops`.
pub fn canonical_form<T: Placed>(items: &[T], ops: &[Isometry]) -> Vec<T> {
    ops.iter()
        .map(|g| {
            let img: Vec<T> = items.iter().map(|i| i.transformed(g)).collect();
            normalize_translation(&img)
        })
        .min()
        .unwrap_or_default()
}

/// Canonical key of a shape of triangles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShapeKey(pub Vec<Tri>);

impl fmt::Display for ShapeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// A finite set of triangles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Region(BTreeSet<Tri>);

impl FromIterator<Tri> for Region {
    fn from_iter<I: IntoIterator<Item = Tri>>(iter: I) -> Self {
        Region(iter.into_iter().collect())
    }
}

impl Region {
    pub fn new() -> Self {
        Region::default()
    }

    pub fn tris(&self) -> &BTreeSet<Tri> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, t: &Tri) -> bool {
        self.0.contains(t)
    }

    pub fn insert(&mut self, t: Tri) -> bool {
        self.0.insert(t)
    }

    pub fn remove(&mut self, t: &Tri) -> bool {
        self.0.remove(t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Tri> + '_ {
        self.0.iter()
    }

    pub fn wedges(&self) -> BTreeSet<Wedge> {
        self.0.iter().flat_map(|t| t.wedges()).collect()
    }

    pub fn transformed(&self, g: &Isometry) -> Region {
        self.0.iter().map(|t| g.apply_tri(*t)).collect()
    }

    pub fn translated(&self, dx: i32, dy: i32) -> Region {
        self.0.iter().map(|t| t.translated(dx, dy)).collect()
    }

    /// Edge-connectivity of the triangles.
    /// The region plus every triangle within `steps` edge-crossings of it.
    pub fn grown(&self, steps: usize) -> Region {
        let mut out = self.0.clone();
        let mut frontier: Vec<Tri> = self.0.iter().copied().collect();
        for _ in 0..steps {
            let mut next = Vec::new();
            for t in frontier {
                for n in t.neighbors() {
                    if out.insert(n) {
                        next.push(n);
                    }
                }
            }
            frontier = next;
        }
        Region(out)
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.0.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for n in t.neighbors() {
                if self.0.contains(&n) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        seen.len() == self.0.len()
    }

    pub fn outline(&self) -> Result<Vec<EPoint>, LatticeError> {
        wedge_outline(&self.wedges())
    }
}

/// One-sided canonical key: equal exactly for regions related by a
/// rotation and translation. Mirror images get distinct keys unless the
/// shape is achiral.
pub fn canonical_region(r: &Region) -> ShapeKey {
    let items: Vec<Tri> = r.0.iter().copied().collect();
    ShapeKey(canonical_form(&items, &Isometry::rotations()))
}

/// Free canonical key: equal for regions related by any lattice isometry,
/// reflections included.
pub fn canonical_region_achiral(r: &Region) -> ShapeKey {
    let items: Vec<Tri> = r.0.iter().copied().collect();
    ShapeKey(canonical_form(&items, &Isometry::point_group()))
}

/// Free polyiamonds with `n` triangles, each generated once from its
/// canonical parent.
pub fn enumerate_polyiamonds(n: usize) -> Result<BTreeSet<ShapeKey>, LatticeError> {
    if !(1..=9).contains(&n) {
        return Err(LatticeError::SizeOutOfRange(n));
    }
    let mut level: BTreeSet<ShapeKey> = BTreeSet::from([canonical_region_achiral(&Region::from_iter([Tri::up(0, 0)]))]);
    for _ in 1..n {
        let mut next = BTreeSet::new();
        for parent in &level {
            for child in grow_children(parent) {
                next.insert(child);
            }
        }
        level = next;
    }
    Ok(level)
}

/// The least key among connected one-triangle deletions.
fn canonical_parent(child: &Region) -> Option<ShapeKey> {
    child
        .iter()
        .filter_map(|t| {
            let mut r = child.clone();
            r.remove(t);
            r.is_connected().then(|| canonical_region_achiral(&r))
        })
        .min()
}

fn grow_children(parent: &ShapeKey) -> Vec<ShapeKey> {
    let region: Region = parent.0.iter().copied().collect();
    let mut tried = BTreeSet::new();
    let mut out = Vec::new();
    for t in region.iter() {
        for n in t.neighbors() {
            if region.contains(&n) {
                continue;
            }
            let mut child = region.clone();
            child.insert(n);
            let key = canonical_region_achiral(&child);
            if !tried.insert(key.clone()) {
                continue;
            }
            if canonical_parent(&child).as_ref() == Some(parent) {
                out.push(key);
            }
        }
    }
    out
}

/// Boundary of a union of wedges as a counterclockwise polygon with
/// collinear points removed, starting at the least vertex.
pub fn wedge_outline(wedges: &BTreeSet<Wedge>) -> Result<Vec<EPoint>, LatticeError> {
    if wedges.is_empty() {
        return Err(LatticeError::EmptyRegion);
    }
    let mut boundary: BTreeSet<(EPoint, EPoint)> = BTreeSet::new();
    for w in wedges {
        let v = w.vertices();
        for i in 0..3 {
            let (a, b) = (v[i], v[(i + 1) % 3]);
            if !boundary.remove(&(b, a)) {
                boundary.insert((a, b));
            }
        }
    }
    let mut next: BTreeMap<EPoint, EPoint> = BTreeMap::new();
    let mut pinched = false;
    for &(a, b) in &boundary {
        if next.insert(a, b).is_some() {
            pinched = true;
        }
    }
    if !wedges_connected(wedges) {
        return Err(LatticeError::Disconnected);
    }
    if pinched {
        return Err(LatticeError::Pinched);
    }
    let start = *next.keys().next().expect("nonempty boundary");
    let mut cycle = vec![start];
    let mut cur = next[&start];
    while cur != start {
        cycle.push(cur);
        cur = next[&cur];
    }
    if cycle.len() != next.len() {
        let cycles = count_cycles(&next);
        return Err(LatticeError::Holed(cycles - 1));
    }
    Ok(elide_collinear(&cycle))
}

fn count_cycles(next: &BTreeMap<EPoint, EPoint>) -> usize {
    let mut seen = BTreeSet::new();
    let mut cycles = 0;
    for &s in next.keys() {
        if seen.contains(&s) {
            continue;
        }
        cycles += 1;
        let mut cur = s;
        while seen.insert(cur) {
            cur = next[&cur];
        }
    }
    cycles
}

fn wedges_connected(wedges: &BTreeSet<Wedge>) -> bool {
    let mut by_edge: BTreeMap<(EPoint, EPoint), Vec<Wedge>> = BTreeMap::new();
    for w in wedges {
        let v = w.vertices();
        for i in 0..3 {
            let (a, b) = (v[i], v[(i + 1) % 3]);
            by_edge.entry((a.min(b), a.max(b))).or_default().push(*w);
        }
    }
    let start = *wedges.iter().next().expect("nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        let v = w.vertices();
        for i in 0..3 {
            let (a, b) = (v[i], v[(i + 1) % 3]);
            for &n in &by_edge[&(a.min(b), a.max(b))] {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    seen.len() == wedges.len()
}

/// Drops vertices whose neighbors are collinear with them.
pub fn elide_collinear(poly: &[EPoint]) -> Vec<EPoint> {
    let n = poly.len();
    if n < 3 {
        return poly.to_vec();
    }
    (0..n)
        .filter(|&i| {
            let (a, b, c) = (poly[(i + n - 1) % n], poly[i], poly[(i + 1) % n]);
            (b - a).cross(c - b) != 0
        })
        .map(|i| poly[i])
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convexity {
    pub convex: bool,
    /// Corners with a nonzero turn.
    pub vertices: usize,
}

pub fn is_convex(poly: &[EPoint]) -> Result<Convexity, LatticeError> {
    let strict = elide_collinear(poly);
    if strict.len() < 3 || twice_area(poly) == 0 {
        return Err(LatticeError::DegeneratePolygon);
    }
    let n = strict.len();
    let turns: Vec<i64> = (0..n)
        .map(|i| {
            let (a, b, c) = (strict[(i + n - 1) % n], strict[i], strict[(i + 1) % n]);
            (b - a).cross(c - b).signum()
        })
        .collect();
    let convex = turns.iter().all(|&s| s > 0) || turns.iter().all(|&s| s < 0);
    Ok(Convexity { convex, vertices: n })
}

/// Shoelace sum in thirds coordinates. One wedge has twice-area 3 and one
/// triangle 9.
pub fn twice_area(poly: &[EPoint]) -> i64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum()
}

/// Lower-triangular Hermite basis `(a, 0), (b, c)` with `0 ≤ b < a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hermite {
    pub a: i32,
    pub b: i32,
    pub c: i32,
}

/// Translation lattice of a periodic tiling, in triangle coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusBasis {
    v1: (i32, i32),
    v2: (i32, i32),
    hnf: Hermite,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

impl TorusBasis {
    pub fn new(v1: (i32, i32), v2: (i32, i32)) -> Result<Self, LatticeError> {
        let det = v1.0 as i64 * v2.1 as i64 - v1.1 as i64 * v2.0 as i64;
        if det == 0 {
            return Err(LatticeError::DegenerateBasis);
        }
        let (y1, y2) = (v1.1 as i64, v2.1 as i64);
        let (g, s, t) = ext_gcd(y1, y2);
        let a = det.abs() / g;
        let bx = s * v1.0 as i64 + t * v2.0 as i64;
        let hnf = Hermite { a: a as i32, b: bx.rem_euclid(a) as i32, c: g as i32 };
        Ok(TorusBasis { v1, v2, hnf })
    }

    /// Every Hermite basis of the given positive determinant.
    pub fn all_with_det(det: i32) -> Vec<TorusBasis> {
        let mut out = Vec::new();
        for a in 1..=det {
            if det % a != 0 {
                continue;
            }
            for b in 0..a {
                out.push(TorusBasis::new((a, 0), (b, det / a)).expect("nonzero det"));
            }
        }
        out
    }

    pub fn v1(&self) -> (i32, i32) {
        self.v1
    }

    pub fn v2(&self) -> (i32, i32) {
        self.v2
    }

    pub fn hermite(&self) -> Hermite {
        self.hnf
    }

    pub fn det(&self) -> i64 {
        self.v1.0 as i64 * self.v2.1 as i64 - self.v1.1 as i64 * self.v2.0 as i64
    }

    pub fn cell_count(&self) -> usize {
        2 * self.det().unsigned_abs() as usize
    }

    /// The same lattice in Hermite form.
    pub fn to_hermite(&self) -> TorusBasis {
        let h = self.hnf;
        TorusBasis::new((h.a, 0), (h.b, h.c)).expect("nondegenerate")
    }

    pub fn same_lattice(&self, other: &TorusBasis) -> bool {
        self.hnf == other.hnf
    }

    pub fn reduce_vector(&self, v: (i32, i32)) -> (i32, i32) {
        let Hermite { a, b, c } = self.hnf;
        let k = v.1.div_euclid(c);
        let y = v.1 - k * c;
        let x = (v.0 - k * b).rem_euclid(a);
        (x, y)
    }

    pub fn contains_vector(&self, v: (i32, i32)) -> bool {
        self.reduce_vector(v) == (0, 0)
    }

    pub fn reduce(&self, t: Tri) -> Tri {
        let (x, y) = self.reduce_vector((t.x, t.y));
        Tri::new(x, y, t.orient)
    }

    pub fn reduce_wedge(&self, w: Wedge) -> Wedge {
        Wedge::new(self.reduce(w.tri), w.edge)
    }

    /// The fundamental set of `2·|det|` triangles picked by `reduce`.
    pub fn cells(&self) -> Vec<Tri> {
        let Hermite { a, c, .. } = self.hnf;
        let mut out = Vec::with_capacity(self.cell_count());
        for x in 0..a {
            for y in 0..c {
                out.push(Tri::up(x, y));
                out.push(Tri::down(x, y));
            }
        }
        out.sort();
        out
    }

    pub fn wedges(&self) -> Vec<Wedge> {
        self.cells().into_iter().flat_map(|t| t.wedges()).collect()
    }

    /// Lagrange-reduced basis of the same lattice (shortest vectors under
    /// the triangular metric), positively oriented.
    pub fn reduced(&self) -> ((i32, i32), (i32, i32)) {
        let norm = |v: (i64, i64)| v.0 * v.0 + v.0 * v.1 + v.1 * v.1;
        let dot2 = |u: (i64, i64), v: (i64, i64)| 2 * u.0 * v.0 + u.0 * v.1 + u.1 * v.0 + 2 * u.1 * v.1;
        let h = self.hnf;
        let mut u = (h.a as i64, 0i64);
        let mut v = (h.b as i64, h.c as i64);
        loop {
            if norm(v) < norm(u) {
                std::mem::swap(&mut u, &mut v);
            }
            let mu = (dot2(u, v) as f64 / (2 * norm(u)) as f64).round() as i64;
            v = (v.0 - mu * u.0, v.1 - mu * u.1);
            if norm(v) >= norm(u) {
                break;
            }
        }
        if u.0 * v.1 - u.1 * v.0 < 0 {
            v = (-v.0, -v.1);
        }
        ((u.0 as i32, u.1 as i32), (v.0 as i32, v.1 as i32))
    }

    /// Whether the linear part of `g` maps the translation lattice onto itself.
    pub fn preserved_by(&self, g: &Isometry) -> bool {
        self.contains_vector(g.apply_vector(self.v1)) && self.contains_vector(g.apply_vector(self.v2))
    }
}

impl fmt::Display for TorusBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.v1.0, self.v1.1, self.v2.0, self.v2.1)
    }
}
