//! Tilings, exact verification and statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;

use thiserror::Error;

use crate::lattice::{EPoint, Isometry, Region, TorusBasis, Tri, Wedge};
use crate::pentagon::{Chirality, UnitKind, UnitPlacement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TilingError {
    #[error("isometry ({0}) does not map the torus lattice to itself")]
    IncompatibleIsometry(Isometry),
    #[error("operation needs a torus domain")]
    NotTorus,
    #[error("operation needs a finite domain")]
    NotFinite,
    #[error("lift size must be at least 1x1")]
    EmptyLift,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    Finite(Region),
    Torus(TorusBasis),
}

impl Domain {
    /// Domain wedges in lexicographic order (torus: the fundamental set).
    pub fn wedges(&self) -> Vec<Wedge> {
        match self {
            Domain::Finite(r) => r.wedges().into_iter().collect(),
            Domain::Torus(b) => b.wedges(),
        }
    }

    pub fn wedge_count(&self) -> usize {
        match self {
            Domain::Finite(r) => 3 * r.len(),
            Domain::Torus(b) => 3 * b.cell_count(),
        }
    }

    /// Where a wedge lands in the domain, or `None` if outside a finite one.
    pub fn locate(&self, w: Wedge) -> Option<Wedge> {
        match self {
            Domain::Finite(r) => r.contains(&w.tri).then_some(w),
            Domain::Torus(b) => Some(b.reduce_wedge(w)),
        }
    }

    pub fn locate_tri(&self, t: Tri) -> Option<Tri> {
        match self {
            Domain::Finite(r) => r.contains(&t).then_some(t),
            Domain::Torus(b) => Some(b.reduce(t)),
        }
    }

    pub fn is_torus(&self) -> bool {
        matches!(self, Domain::Torus(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tiling {
    pub domain: Domain,
    pub units: Vec<UnitPlacement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    OutOfDomain { unit: usize },
    Overlap { wedge: Wedge, first: usize, second: usize },
    Gap { wedge: Wedge },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violations(Vec<Violation>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn violations(&self) -> &[Violation] {
        match self {
            Verdict::Valid => &[],
            Verdict::Violations(v) => v,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TilingStats {
    pub units: BTreeMap<(UnitKind, Chirality), usize>,
    pub anterior_pentagons: usize,
    pub posterior_pentagons: usize,
    pub domain_wedges: usize,
}

impl TilingStats {
    pub fn unit_count(&self) -> usize {
        self.units.values().sum()
    }

    pub fn count(&self, kind: UnitKind, chirality: Chirality) -> usize {
        self.units.get(&(kind, chirality)).copied().unwrap_or(0)
    }

    pub fn kind_count(&self, kind: UnitKind) -> usize {
        self.count(kind, Chirality::Anterior) + self.count(kind, Chirality::Posterior)
    }

    pub fn pentagon_count(&self) -> usize {
        self.anterior_pentagons + self.posterior_pentagons
    }
}

impl Tiling {
    pub fn new(domain: Domain, units: Vec<UnitPlacement>) -> Self {
        Tiling { domain, units }
    }

    /// Checks that every domain wedge is covered by exactly one pentagon.
    pub fn verify(&self) -> Verdict {
        let mut out = Vec::new();
        let mut owner: BTreeMap<Wedge, usize> = BTreeMap::new();
        for (i, u) in self.units.iter().enumerate() {
            let mut outside = false;
            for w in u.wedges() {
                match self.domain.locate(w) {
                    None => outside = true,
                    Some(w) => {
                        if let Some(&first) = owner.get(&w) {
                            out.push(Violation::Overlap { wedge: w, first, second: i });
                        } else {
                            owner.insert(w, i);
                        }
                    }
                }
            }
            if outside {
                out.push(Violation::OutOfDomain { unit: i });
            }
        }
        for w in self.domain.wedges() {
            if !owner.contains_key(&w) {
                out.push(Violation::Gap { wedge: w });
            }
        }
        if out.is_empty() {
            Verdict::Valid
        } else {
            out.sort();
            Verdict::Violations(out)
        }
    }

    pub fn stats(&self) -> TilingStats {
        let mut s = TilingStats { domain_wedges: self.domain.wedge_count(), ..Default::default() };
        for u in &self.units {
            *s.units.entry((u.kind(), u.chirality())).or_default() += 1;
            for p in u.pentagons() {
                match p.chirality() {
                    Chirality::Anterior => s.anterior_pentagons += 1,
                    Chirality::Posterior => s.posterior_pentagons += 1,
                }
            }
        }
        s
    }

    /// Units with torus anchors reduced into the fundamental set.
    fn reduced_units(&self, units: impl Iterator<Item = UnitPlacement>) -> Vec<UnitPlacement> {
        match &self.domain {
            Domain::Torus(b) => units.map(|u| u.with_anchor(b.reduce(u.anchor()))).collect(),
            Domain::Finite(_) => units.collect(),
        }
    }

    pub fn transform(&self, g: &Isometry) -> Result<Tiling, TilingError> {
        let domain = match &self.domain {
            Domain::Finite(r) => Domain::Finite(r.transformed(g)),
            Domain::Torus(b) => {
                if !b.preserved_by(g) {
                    return Err(TilingError::IncompatibleIsometry(*g));
                }
                Domain::Torus(*b)
            }
        };
        let units = self.reduced_units(self.units.iter().map(|u| u.transformed(g)));
        Ok(Tiling { domain, units })
    }

    /// Sorted units; on a torus additionally the least image over all
    /// translations of the torus, so tilings that differ by a translation
    /// compare equal.
    pub fn canonical(&self) -> Tiling {
        match &self.domain {
            Domain::Finite(_) => {
                let mut units = self.units.clone();
                units.sort();
                Tiling { domain: self.domain.clone(), units }
            }
            Domain::Torus(b) => {
                let h = b.hermite();
                let mut best: Option<Vec<UnitPlacement>> = None;
                for dx in 0..h.a {
                    for dy in 0..h.c {
                        let mut units = self.reduced_units(self.units.iter().map(|u| u.translated(dx, dy)));
                        units.sort();
                        if best.as_ref().is_none_or(|b| units < *b) {
                            best = Some(units);
                        }
                    }
                }
                Tiling { domain: Domain::Torus(b.to_hermite()), units: best.unwrap_or_default() }
            }
        }
    }

    /// Canonical form over the given point operations as well as
    /// translations. Torus operations that do not preserve the lattice are
    /// skipped.
    pub fn canonical_up_to(&self, ops: &[Isometry]) -> Tiling {
        ops.iter()
            .filter_map(|g| self.transform(g).ok())
            .map(|t| t.canonical())
            .min_by(|a, b| a.units.cmp(&b.units))
            .unwrap_or_else(|| self.canonical())
    }

    /// Unrolls a torus tiling into an `m × n` block of reduced-basis
    /// parallelograms.
    ///
    /// A unit is kept, whole, when its anchor's lattice point lies in the
    /// block, so the block holds `m·n` copies of every unit. The finite
    /// domain is the union of their footprints.
    pub fn lift(&self, m: i32, n: i32) -> Result<Tiling, TilingError> {
        let Domain::Torus(b) = &self.domain else {
            return Err(TilingError::NotTorus);
        };
        if m < 1 || n < 1 {
            return Err(TilingError::EmptyLift);
        }
        let mut by_point: BTreeMap<(i32, i32), Vec<UnitPlacement>> = BTreeMap::new();
        for u in &self.units {
            let a = b.reduce(u.anchor());
            by_point.entry((a.x, a.y)).or_default().push(u.with_anchor(a));
        }
        let mut units = Vec::new();
        for (x, y) in block_points(b, 0..m, 0..n) {
            if let Some(us) = by_point.get(&b.reduce_vector((x, y))) {
                for u in us {
                    let a = u.anchor();
                    units.push(u.translated(x - a.x, y - a.y));
                }
            }
        }
        units.sort();
        let region: Region = units.iter().flat_map(|u| u.tris()).collect();
        Ok(Tiling { domain: Domain::Finite(region), units })
    }

    pub fn pentagon_count(&self) -> usize {
        3 * self.units.len()
    }
}

/// Lattice points `s·v1 + t·v2` of the reduced basis with `s` in `si` and
/// `t` in `ti` (half-open), in sorted order.
fn block_points(b: &TorusBasis, si: Range<i32>, ti: Range<i32>) -> Vec<(i32, i32)> {
    let (v1, v2) = b.reduced();
    let det = (v1.0 * v2.1 - v1.1 * v2.0) as i64;
    let corners = [(si.start, ti.start), (si.end, ti.start), (si.start, ti.end), (si.end, ti.end)]
        .map(|(s, t)| (s * v1.0 + t * v2.0, s * v1.1 + t * v2.1));
    let (x0, x1) = (corners.iter().map(|c| c.0).min().unwrap(), corners.iter().map(|c| c.0).max().unwrap());
    let (y0, y1) = (corners.iter().map(|c| c.1).min().unwrap(), corners.iter().map(|c| c.1).max().unwrap());
    let mut out = Vec::new();
    for x in x0..=x1 {
        for y in y0..=y1 {
            // p = (s·v1 + t·v2) with s = cross(p, v2) / det and t = cross(v1, p) / det
            let s = x as i64 * v2.1 as i64 - y as i64 * v2.0 as i64;
            let t = v1.0 as i64 * y as i64 - v1.1 as i64 * x as i64;
            if (si.start as i64 * det..si.end as i64 * det).contains(&s)
                && (ti.start as i64 * det..ti.end as i64 * det).contains(&t)
            {
                out.push((x, y));
            }
        }
    }
    out
}

/// Triangles of the block parallelogram at position `(i, j)`: a
/// fundamental set of the torus.
pub fn lifted_cell(b: &TorusBasis, i: i32, j: i32) -> BTreeSet<Tri> {
    block_points(b, i..i + 1, j..j + 1).into_iter().flat_map(|(x, y)| [Tri::up(x, y), Tri::down(x, y)]).collect()
}

/// Corners of the reduced-basis parallelogram at block position `(i, j)`.
pub fn cell_parallelogram(b: &TorusBasis, i: i32, j: i32) -> [EPoint; 4] {
    let (v1, v2) = b.reduced();
    let at = |s: i32, t: i32| EPoint::vertex((s * v1.0 + t * v2.0) as i64, (s * v1.1 + t * v2.1) as i64);
    [at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)]
}
