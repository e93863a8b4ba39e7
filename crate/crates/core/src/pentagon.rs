//! The TH-pentagon as a third of a heptiamond, and the windmill and ship
//! units built from three of them around one triangle.
//!
//! A pentagon is placed by a central triangle, one edge of it, and a lean.
//! It covers the central triangle's wedge on that edge plus two whole
//! "blade" triangles: the neighbor across the edge, and one further
//! neighbor of that blade chosen by the lean. Its 120° corner sits on the
//! central centroid, so three pentagons on the three edges of one triangle
//! close up a full turn there.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lattice::{
    canonical_region, canonical_region_achiral, EPoint, Isometry, Orient, Placed, Region, ShapeKey, Tri, Wedge,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lean {
    L,
    R,
}

impl Lean {
    pub fn flip(self) -> Lean {
        match self {
            Lean::L => Lean::R,
            Lean::R => Lean::L,
        }
    }

    pub fn chirality(self) -> Chirality {
        match self {
            Lean::L => Chirality::Anterior,
            Lean::R => Chirality::Posterior,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chirality {
    Anterior,
    Posterior,
}

impl Chirality {
    pub fn lean(self) -> Lean {
        match self {
            Chirality::Anterior => Lean::L,
            Chirality::Posterior => Lean::R,
        }
    }

    pub fn mirror(self) -> Chirality {
        self.lean().flip().chirality()
    }

    pub fn letter(self) -> char {
        match self {
            Chirality::Anterior => 'A',
            Chirality::Posterior => 'P',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UnitKind {
    Windmill,
    Ship,
}

impl UnitKind {
    pub fn name(self) -> &'static str {
        match self {
            UnitKind::Windmill => "windmill",
            UnitKind::Ship => "ship",
        }
    }
}

impl fmt::Display for UnitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PentagonPlacement {
    pub central: Tri,
    pub edge: u8,
    pub lean: Lean,
}

impl PentagonPlacement {
    pub fn new(central: Tri, edge: u8, lean: Lean) -> Self {
        debug_assert!(edge < 3);
        PentagonPlacement { central, edge, lean }
    }

    pub fn chirality(&self) -> Chirality {
        self.lean.chirality()
    }

    fn far_edge(&self) -> u8 {
        match self.lean {
            Lean::R => (self.edge + 2) % 3,
            Lean::L => (self.edge + 1) % 3,
        }
    }

    pub fn blades(&self) -> [Tri; 2] {
        let first = self.central.neighbor(self.edge);
        [first, first.neighbor(self.far_edge())]
    }

    /// Counterclockwise corners starting at the 120° corner on the central
    /// centroid.
    pub fn vertices(&self) -> [EPoint; 5] {
        let c = self.central.centroid();
        let (a, b) = self.central.edge(self.edge);
        let blade = self.central.neighbor(self.edge).vertices();
        let m = blade[(self.edge as usize + 2) % 3];
        match self.lean {
            Lean::R => [c, a, m, m + b - a, b],
            Lean::L => [c, a, a + m - b, m, b],
        }
    }

    pub fn wedges(&self) -> [Wedge; 7] {
        let [b1, b2] = self.blades();
        let [w1, w2, w3] = b1.wedges();
        let [w4, w5, w6] = b2.wedges();
        [Wedge::new(self.central, self.edge), w1, w2, w3, w4, w5, w6]
    }

    pub fn transformed(&self, g: &Isometry) -> PentagonPlacement {
        let central = g.apply_tri(self.central);
        let [b1, b2] = self.blades().map(|t| g.apply_tri(t));
        let edge = (0..3u8).find(|&e| central.neighbor(e) == b1).expect("isometries preserve adjacency");
        let lean = if b1.neighbor((edge + 2) % 3) == b2 { Lean::R } else { Lean::L };
        PentagonPlacement::new(central, edge, lean)
    }

    pub fn mirrored_lean(&self) -> PentagonPlacement {
        PentagonPlacement { lean: self.lean.flip(), ..*self }
    }
}

impl Placed for PentagonPlacement {
    fn transformed(&self, g: &Isometry) -> Self {
        PentagonPlacement::transformed(self, g)
    }
    fn anchor(&self) -> Tri {
        self.central
    }
    fn translated(&self, dx: i32, dy: i32) -> Self {
        PentagonPlacement { central: self.central.translated(dx, dy), ..*self }
    }
}

/// Interior angles, in degrees, of a counterclockwise lattice polygon whose
/// edge directions are multiples of 30°.
///
/// Returns `None` for a corner whose angle is not such a multiple.
pub fn interior_angles(poly: &[EPoint]) -> Option<Vec<u32>> {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let v = poly[i];
            let to_next = poly[(i + 1) % n] - v;
            let to_prev = poly[(i + n - 1) % n] - v;
            let mut probe = to_next;
            for k in 0..12u32 {
                if probe.cross(to_prev) == 0 && probe.dot18(to_prev) > 0 {
                    return Some(30 * k);
                }
                probe = probe.rot30_scaled();
            }
            None
        })
        .collect()
}

/// Angles and side lengths of the constructed pentagon, in corner order
/// starting at the centroid corner.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct THPentagonSpec {
    pub angles: [u32; 5],
    /// Nine times the squared length of the side leaving each corner.
    pub side_len9: [i64; 5],
}

impl THPentagonSpec {
    /// The angle at the centroid corner.
    pub fn e(&self) -> u32 {
        self.angles[0]
    }

    pub fn angle_sum(&self) -> u32 {
        self.angles.iter().sum()
    }

    pub fn angle_multiset(&self) -> [u32; 5] {
        let mut a = self.angles;
        a.sort_unstable();
        a
    }

    pub fn side_multiset(&self) -> [i64; 5] {
        let mut s = self.side_len9;
        s.sort_unstable();
        s
    }

    pub fn three_e_full_turn(&self) -> bool {
        3 * self.e() == 360
    }

    /// Every `(A, D)` among the other corners with `A + D + E = 360`.
    pub fn ade_labelings(&self) -> Vec<(u32, u32)> {
        let rest = &self.angles[1..];
        let mut out = Vec::new();
        for (i, &a) in rest.iter().enumerate() {
            for (j, &d) in rest.iter().enumerate() {
                if i != j && a + d + self.e() == 360 {
                    out.push((a, d));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

pub fn pentagon_angles() -> THPentagonSpec {
    measure_pentagon(&PentagonPlacement::new(Tri::up(0, 0), 0, Lean::R))
}

pub fn measure_pentagon(p: &PentagonPlacement) -> THPentagonSpec {
    let v = p.vertices();
    let angles = interior_angles(&v).expect("pentagon corners are multiples of 30°");
    let mut side_len9 = [0; 5];
    for i in 0..5 {
        side_len9[i] = (v[(i + 1) % 5] - v[i]).norm9();
    }
    THPentagonSpec { angles: angles.try_into().expect("five corners"), side_len9 }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnitError {
    #[error("ship placement requires a spin")]
    MissingSpin,
    #[error("windmill placement takes no spin")]
    UnexpectedSpin,
    #[error("spin {0} out of range 0..=2")]
    BadSpin(u8),
    #[error("rotation {rot} does not match a {kind} anchored on a {orient} triangle (expected {expected})")]
    RotMismatch { kind: UnitKind, orient: Orient, rot: u8, expected: String },
}

/// Three pentagons on the three edges of one anchor triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnitPlacement {
    anchor: Tri,
    leans: [Lean; 3],
}

impl UnitPlacement {
    /// Any of the 8 lean configurations gives a disjoint assembly.
    pub fn assemble(anchor: Tri, leans: [Lean; 3]) -> Self {
        UnitPlacement { anchor, leans }
    }

    pub fn windmill(anchor: Tri, chirality: Chirality) -> Self {
        UnitPlacement::assemble(anchor, [chirality.lean(); 3])
    }

    /// A ship whose odd pentagon sits on edge `spin` of the anchor.
    pub fn ship(anchor: Tri, chirality: Chirality, spin: u8) -> Self {
        let mut leans = [chirality.lean(); 3];
        leans[(spin % 3) as usize] = chirality.lean().flip();
        UnitPlacement::assemble(anchor, leans)
    }

    /// Builds a placement from its file fields, checking that `rot` and
    /// `spin` agree with each other and with the anchor orientation.
    pub fn from_fields(
        kind: UnitKind,
        chirality: Chirality,
        anchor: Tri,
        rot: u8,
        spin: Option<u8>,
    ) -> Result<Self, UnitError> {
        let unit = match (kind, spin) {
            (UnitKind::Windmill, None) => UnitPlacement::windmill(anchor, chirality),
            (UnitKind::Windmill, Some(_)) => return Err(UnitError::UnexpectedSpin),
            (UnitKind::Ship, None) => return Err(UnitError::MissingSpin),
            (UnitKind::Ship, Some(s)) if s > 2 => return Err(UnitError::BadSpin(s)),
            (UnitKind::Ship, Some(s)) => UnitPlacement::ship(anchor, chirality, s),
        };
        let ok = match kind {
            // three-fold symmetric: only the parity is meaningful
            UnitKind::Windmill => rot < 6 && rot % 2 == unit.rot() % 2,
            UnitKind::Ship => rot == unit.rot(),
        };
        if !ok {
            let expected = match kind {
                UnitKind::Windmill if anchor.orient == Orient::U => "0, 2 or 4".to_string(),
                UnitKind::Windmill => "1, 3 or 5".to_string(),
                UnitKind::Ship => unit.rot().to_string(),
            };
            return Err(UnitError::RotMismatch { kind, orient: anchor.orient, rot, expected });
        }
        Ok(unit)
    }

    pub fn anchor(&self) -> Tri {
        self.anchor
    }

    pub fn leans(&self) -> [Lean; 3] {
        self.leans
    }

    pub fn kind(&self) -> UnitKind {
        if self.leans[0] == self.leans[1] && self.leans[1] == self.leans[2] {
            UnitKind::Windmill
        } else {
            UnitKind::Ship
        }
    }

    /// Majority lean.
    pub fn chirality(&self) -> Chirality {
        let left = self.leans.iter().filter(|&&l| l == Lean::L).count();
        if left >= 2 {
            Chirality::Anterior
        } else {
            Chirality::Posterior
        }
    }

    /// Edge carrying the minority lean, for ships.
    pub fn spin(&self) -> Option<u8> {
        let major = self.chirality().lean();
        (0..3u8).find(|&e| self.leans[e as usize] != major)
    }

    /// Multiple of 60° taking the reference unit of the same kind and
    /// chirality (anchored on an up triangle, spin 0) onto this one. For a
    /// windmill the least such multiple is reported.
    pub fn rot(&self) -> u8 {
        let spin = self.spin().unwrap_or(0);
        match self.anchor.orient {
            Orient::U => 2 * spin,
            Orient::D => (2 * spin + 3) % 6,
        }
    }

    pub fn pentagons(&self) -> [PentagonPlacement; 3] {
        [0u8, 1, 2].map(|e| PentagonPlacement::new(self.anchor, e, self.leans[e as usize]))
    }

    /// The anchor followed by the six blade triangles.
    pub fn tris(&self) -> [Tri; 7] {
        let mut out = [self.anchor; 7];
        for (i, p) in self.pentagons().iter().enumerate() {
            let [b1, b2] = p.blades();
            out[1 + 2 * i] = b1;
            out[2 + 2 * i] = b2;
        }
        out
    }

    pub fn outline(&self) -> Region {
        self.tris().into_iter().collect()
    }

    pub fn wedges(&self) -> Vec<Wedge> {
        self.pentagons().iter().flat_map(|p| p.wedges()).collect()
    }

    pub fn transformed(&self, g: &Isometry) -> UnitPlacement {
        let mut leans = self.leans;
        let mut anchor = self.anchor;
        for p in self.pentagons() {
            let q = p.transformed(g);
            anchor = q.central;
            leans[q.edge as usize] = q.lean;
        }
        UnitPlacement { anchor, leans }
    }

    pub fn translated(&self, dx: i32, dy: i32) -> UnitPlacement {
        UnitPlacement { anchor: self.anchor.translated(dx, dy), ..*self }
    }

    pub fn with_anchor(&self, anchor: Tri) -> UnitPlacement {
        debug_assert_eq!(anchor.orient, self.anchor.orient);
        UnitPlacement { anchor, ..*self }
    }
}

impl Placed for UnitPlacement {
    fn transformed(&self, g: &Isometry) -> Self {
        UnitPlacement::transformed(self, g)
    }
    fn anchor(&self) -> Tri {
        self.anchor
    }
    fn translated(&self, dx: i32, dy: i32) -> Self {
        UnitPlacement::translated(self, dx, dy)
    }
}

impl fmt::Display for UnitPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {}",
            self.kind(),
            self.chirality().letter(),
            self.anchor.x,
            self.anchor.y,
            self.anchor.orient,
            self.rot()
        )?;
        if let Some(s) = self.spin() {
            write!(f, " {s}")?;
        }
        Ok(())
    }
}

/// Regroups pentagons into units by their shared central triangle.
///
/// Returns `None` unless every central triangle carries exactly one
/// pentagon on each of its three edges.
pub fn group_pentagons(pentagons: &[PentagonPlacement]) -> Option<Vec<UnitPlacement>> {
    let mut by_anchor: BTreeMap<Tri, [Option<Lean>; 3]> = BTreeMap::new();
    for p in pentagons {
        let slot = &mut by_anchor.entry(p.central).or_default()[p.edge as usize];
        if slot.replace(p.lean).is_some() {
            return None;
        }
    }
    by_anchor
        .into_iter()
        .map(|(anchor, leans)| Some(UnitPlacement::assemble(anchor, [leans[0]?, leans[1]?, leans[2]?])))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeptUnitShape {
    /// One-sided key of the seven-triangle outline.
    pub key: ShapeKey,
    pub kind: UnitKind,
    pub chirality: Chirality,
}

/// Every lean configuration on one anchor.
pub fn all_lean_configs() -> [[Lean; 3]; 8] {
    let mut out = [[Lean::L; 3]; 8];
    for (i, c) in out.iter_mut().enumerate() {
        for (e, l) in c.iter_mut().enumerate() {
            if i >> e & 1 == 1 {
                *l = Lean::R;
            }
        }
    }
    out
}

/// The distinct outline shapes produced by the 8 lean configurations.
pub fn unit_shapes() -> Vec<HeptUnitShape> {
    let mut out: Vec<HeptUnitShape> = Vec::new();
    for leans in all_lean_configs() {
        let u = UnitPlacement::assemble(Tri::up(0, 0), leans);
        let key = canonical_region(&u.outline());
        if out.iter().all(|s| s.key != key) {
            out.push(HeptUnitShape { key, kind: u.kind(), chirality: u.chirality() });
        }
    }
    out.sort_by_key(|s| (s.kind, s.chirality));
    out
}

/// Free key of a unit's outline.
pub fn unit_free_key(u: &UnitPlacement) -> ShapeKey {
    canonical_region_achiral(&u.outline())
}
