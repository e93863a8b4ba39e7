//! Reversible regions and their flips.
//!
//! A reversible region is a patch of a tiling whose wedge set is carried
//! onto itself by an orientation-reversing isometry `σ` that does not fix
//! its filling. Replacing the filling by its `σ`-image keeps every wedge
//! covered exactly once. Two cases are detected: the convex nonagon made
//! of three same-lean pentagons from three different units (flipping it
//! toggles those leans and changes the kinds of the units involved), and
//! connected clusters of whole units.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::lattice::{
    canonical_form, is_convex, normalize_translation, wedge_outline, EPoint, Isometry, Orient, Region, Tri, Wedge,
};
use crate::pentagon::{group_pentagons, Chirality, Lean, PentagonPlacement, UnitKind, UnitPlacement};
use crate::solver::{surround, PieceSet};
use crate::tiling::{Domain, Tiling};

/// Default cluster size for detection in tilings.
pub const DEFAULT_MAX_UNITS: usize = 6;

/// Default unit bound for the free-standing pattern search.
pub const DEFAULT_PATTERN_UNITS: usize = 4;

/// Largest pentagon assembly examined when looking for nonagons.
pub const MAX_NONAGON_PENTAGONS: usize = 6;

/// A pattern must extend to a tiling of every triangle within this many
/// edge-crossings of its units.
pub const SURROUND_STEPS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnError {
    #[error("reversible regions are detected on finite tilings; lift the torus first")]
    NotFinite,
    #[error("tiling is invalid ({0} violations)")]
    InvalidTiling(usize),
    #[error("region does not belong to this tiling")]
    Stale,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RegionKind {
    ConvexNonagon,
    UnitCluster,
}

impl RegionKind {
    pub fn name(self) -> &'static str {
        match self {
            RegionKind::ConvexNonagon => "nonagon",
            RegionKind::UnitCluster => "cluster",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibleRegion {
    pub kind: RegionKind,
    /// Indices of the units the flip replaces, ascending.
    pub units: Vec<usize>,
    /// Pentagons of the region before the flip.
    pub pentagons: Vec<PentagonPlacement>,
    pub outline: Vec<EPoint>,
    pub sigma: Isometry,
    /// The units at `units`, in the same order.
    pub original: Vec<UnitPlacement>,
    /// Replacements for `original`, in the same order.
    pub flipped: Vec<UnitPlacement>,
}

impl ReversibleRegion {
    pub fn wedges(&self) -> BTreeSet<Wedge> {
        self.pentagons.iter().flat_map(|p| p.wedges()).collect()
    }

    pub fn flipped_pentagons(&self) -> Vec<PentagonPlacement> {
        let mut out: Vec<PentagonPlacement> = self.pentagons.iter().map(|p| p.transformed(&self.sigma)).collect();
        out.sort();
        out
    }

    /// The same region as seen in the flipped tiling.
    pub fn reversed(&self) -> ReversibleRegion {
        ReversibleRegion {
            pentagons: self.flipped_pentagons(),
            original: self.flipped.clone(),
            flipped: self.original.clone(),
            ..self.clone()
        }
    }
}

impl fmt::Display for ReversibleRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let units: Vec<String> = self.units.iter().map(|u| u.to_string()).collect();
        write!(f, "{} units [{}] sigma {}", self.kind.name(), units.join(","), self.sigma)
    }
}

/// Orientation-reversing isometries carrying the wedge set onto itself.
pub fn mirror_symmetries(wedges: &BTreeSet<Wedge>) -> Vec<Isometry> {
    let Some(&first) = wedges.iter().next() else { return Vec::new() };
    Isometry::point_group()
        .into_iter()
        .filter(|g| g.reflects())
        .filter_map(|g| {
            let image: BTreeSet<Wedge> = wedges.iter().map(|w| g.apply_wedge(*w)).collect();
            let low = *image.iter().next()?;
            if low.tri.orient != first.tri.orient || low.edge != first.edge {
                return None;
            }
            let (dx, dy) = (first.tri.x - low.tri.x, first.tri.y - low.tri.y);
            image
                .iter()
                .all(|w| wedges.contains(&w.translated(dx, dy)))
                .then(|| Isometry::translation(dx, dy).compose(&g))
        })
        .collect()
}

/// A free convex-nonagon pentagon assembly with a reversing symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonagonShape {
    pub pentagons: Vec<PentagonPlacement>,
    pub outline: Vec<EPoint>,
    pub sigma: Isometry,
}

fn wedge_neighbors(w: Wedge) -> [Wedge; 3] {
    [
        Wedge::new(w.tri, (w.edge + 1) % 3),
        Wedge::new(w.tri, (w.edge + 2) % 3),
        Wedge::new(w.tri.neighbor(w.edge), w.edge),
    ]
}

fn pentagons_by_wedge(radius: i32) -> BTreeMap<Wedge, Vec<PentagonPlacement>> {
    let mut out: BTreeMap<Wedge, Vec<PentagonPlacement>> = BTreeMap::new();
    for x in -radius..=radius {
        for y in -radius..=radius {
            for o in [Orient::U, Orient::D] {
                for e in 0..3 {
                    for l in [Lean::L, Lean::R] {
                        let p = PentagonPlacement::new(Tri::new(x, y, o), e, l);
                        for w in p.wedges() {
                            out.entry(w).or_default().push(p);
                        }
                    }
                }
            }
        }
    }
    out
}

fn reversing_sigma(pentagons: &[PentagonPlacement], wedges: &BTreeSet<Wedge>) -> Option<Isometry> {
    let own: BTreeSet<PentagonPlacement> = pentagons.iter().copied().collect();
    mirror_symmetries(wedges).into_iter().find(|g| {
        let image: BTreeSet<PentagonPlacement> = pentagons.iter().map(|p| p.transformed(g)).collect();
        image != own
    })
}

fn as_reversible_nonagon(pentagons: &[PentagonPlacement]) -> Option<NonagonShape> {
    let wedges: BTreeSet<Wedge> = pentagons.iter().flat_map(|p| p.wedges()).collect();
    let outline = wedge_outline(&wedges).ok()?;
    let c = is_convex(&outline).ok()?;
    if !c.convex || c.vertices != 9 {
        return None;
    }
    let sigma = reversing_sigma(pentagons, &wedges)?;
    Some(NonagonShape { pentagons: pentagons.to_vec(), outline, sigma })
}

/// Free classes of edge-connected pentagon assemblies that form a convex
/// nonagon admitting a reversing symmetry, at the smallest assembly size
/// (up to `max_pentagons`) where any exist.
pub fn reversible_nonagons(max_pentagons: usize) -> Vec<NonagonShape> {
    let index = pentagons_by_wedge(3 * max_pentagons as i32 + 3);
    let ops = Isometry::point_group();
    let mut level = vec![vec![PentagonPlacement::new(Tri::up(0, 0), 0, Lean::R)]];
    for size in 1..=max_pentagons {
        let found: Vec<NonagonShape> = level.iter().filter_map(|ps| as_reversible_nonagon(ps)).collect();
        if !found.is_empty() || size == max_pentagons {
            return found;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for ps in &level {
            let cover: BTreeSet<Wedge> = ps.iter().flat_map(|p| p.wedges()).collect();
            let touching: BTreeSet<PentagonPlacement> = cover
                .iter()
                .flat_map(|w| wedge_neighbors(*w))
                .filter(|w| !cover.contains(w))
                .flat_map(|w| index.get(&w).into_iter().flatten().copied())
                .collect();
            for q in touching {
                if q.wedges().iter().any(|w| cover.contains(w)) {
                    continue;
                }
                let mut grown = ps.clone();
                grown.push(q);
                let key = canonical_form(&grown, &ops);
                if seen.insert(key.clone()) {
                    next.push(key);
                }
            }
        }
        next.sort();
        level = next;
    }
    Vec::new()
}

/// The convex-nonagon unit: the smallest reversible convex-nonagon
/// pentagon assembly, in its anterior filling.
pub fn cn_template() -> &'static NonagonShape {
    static TEMPLATE: OnceLock<NonagonShape> = OnceLock::new();
    TEMPLATE.get_or_init(|| {
        let shapes = reversible_nonagons(MAX_NONAGON_PENTAGONS);
        let shape = shapes.into_iter().next().expect("a reversible nonagon exists");
        if shape.pentagons.iter().all(|p| p.chirality() == Chirality::Anterior) {
            shape
        } else {
            let flipped: Vec<PentagonPlacement> = shape.pentagons.iter().map(|p| p.transformed(&shape.sigma)).collect();
            as_reversible_nonagon(&flipped).expect("mirror of a reversible nonagon")
        }
    })
}

fn check_finite(t: &Tiling) -> Result<(), CnError> {
    if t.domain.is_torus() {
        return Err(CnError::NotFinite);
    }
    let v = t.verify();
    if !v.is_valid() {
        return Err(CnError::InvalidTiling(v.violations().len()));
    }
    Ok(())
}

/// Every placement of the nonagon template (all isometric images).
fn template_images() -> Vec<Vec<PentagonPlacement>> {
    let shape = cn_template();
    let mut out: Vec<Vec<PentagonPlacement>> = Isometry::point_group()
        .iter()
        .map(|g| {
            let mut img = normalize_translation(&shape.pentagons.iter().map(|p| p.transformed(g)).collect::<Vec<_>>());
            img.sort();
            img
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn nonagon_regions(t: &Tiling, max_units: usize) -> Vec<ReversibleRegion> {
    let owner: BTreeMap<PentagonPlacement, usize> =
        t.units.iter().enumerate().flat_map(|(i, u)| u.pentagons().map(|p| (p, i))).collect();
    let mut found = BTreeSet::new();
    for image in template_images() {
        let head = image[0];
        for p in owner.keys() {
            if p.edge != head.edge || p.lean != head.lean || p.central.orient != head.central.orient {
                continue;
            }
            let (dx, dy) = (p.central.x - head.central.x, p.central.y - head.central.y);
            let placed: Vec<PentagonPlacement> =
                image.iter().map(|q| PentagonPlacement { central: q.central.translated(dx, dy), ..*q }).collect();
            if placed.iter().all(|q| owner.contains_key(q)) {
                found.insert(placed);
            }
        }
    }
    found
        .into_iter()
        .filter_map(|pentagons| {
            let units: BTreeSet<usize> = pentagons.iter().map(|p| owner[p]).collect();
            if units.len() > max_units {
                return None;
            }
            let wedges: BTreeSet<Wedge> = pentagons.iter().flat_map(|p| p.wedges()).collect();
            let sigma = reversing_sigma(&pentagons, &wedges)?;
            let units: Vec<usize> = units.into_iter().collect();
            let original: Vec<UnitPlacement> = units.iter().map(|&i| t.units[i]).collect();
            let replaced: BTreeSet<PentagonPlacement> = pentagons.iter().copied().collect();
            let mut all: Vec<PentagonPlacement> =
                original.iter().flat_map(|u| u.pentagons()).filter(|p| !replaced.contains(p)).collect();
            all.extend(pentagons.iter().map(|p| p.transformed(&sigma)));
            let regrouped = group_pentagons(&all)?;
            let by_anchor: BTreeMap<Tri, UnitPlacement> = regrouped.into_iter().map(|u| (u.anchor(), u)).collect();
            let flipped: Option<Vec<UnitPlacement>> =
                original.iter().map(|u| by_anchor.get(&u.anchor()).cloned()).collect();
            Some(ReversibleRegion {
                kind: RegionKind::ConvexNonagon,
                units,
                outline: wedge_outline(&wedges).ok()?,
                pentagons,
                sigma,
                original,
                flipped: flipped?,
            })
        })
        .collect()
}

/// Connected vertex subsets of size `1..=k`, each listed once, ascending.
fn connected_subsets(adj: &[BTreeSet<usize>], k: usize) -> Vec<Vec<usize>> {
    fn extend(
        adj: &[BTreeSet<usize>],
        k: usize,
        root: usize,
        current: &mut Vec<usize>,
        extension: BTreeSet<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let mut sorted = current.clone();
        sorted.sort_unstable();
        out.push(sorted);
        if current.len() == k {
            return;
        }
        let mut ext = extension;
        while let Some(w) = ext.pop_first() {
            let mut next = ext.clone();
            for &u in &adj[w] {
                if u > root && !current.contains(&u) && !current.iter().any(|&c| adj[c].contains(&u)) {
                    next.insert(u);
                }
            }
            current.push(w);
            extend(adj, k, root, current, next, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for v in 0..adj.len() {
        let ext: BTreeSet<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
        extend(adj, k, v, &mut vec![v], ext, &mut out);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn unit_adjacency(units: &[UnitPlacement]) -> Vec<BTreeSet<usize>> {
    let owner: BTreeMap<Tri, usize> =
        units.iter().enumerate().flat_map(|(i, u)| u.tris().into_iter().map(move |t| (t, i))).collect();
    let mut adj = vec![BTreeSet::new(); units.len()];
    for (i, u) in units.iter().enumerate() {
        for t in u.tris() {
            for n in t.neighbors() {
                if let Some(&j) = owner.get(&n) {
                    if j != i {
                        adj[i].insert(j);
                    }
                }
            }
        }
    }
    adj
}

fn cluster_region(t: &Tiling, subset: &[usize]) -> Option<ReversibleRegion> {
    let original: Vec<UnitPlacement> = subset.iter().map(|&i| t.units[i]).collect();
    let wedges: BTreeSet<Wedge> = original.iter().flat_map(|u| u.wedges()).collect();
    let own: BTreeSet<&UnitPlacement> = original.iter().collect();
    let sigma = mirror_symmetries(&wedges).into_iter().find(|g| {
        let image: Vec<UnitPlacement> = original.iter().map(|u| u.transformed(g)).collect();
        image.iter().collect::<BTreeSet<_>>() != own
    })?;
    let pentagons: Vec<PentagonPlacement> = {
        let mut p: Vec<PentagonPlacement> = original.iter().flat_map(|u| u.pentagons()).collect();
        p.sort();
        p
    };
    Some(ReversibleRegion {
        kind: RegionKind::UnitCluster,
        units: subset.to_vec(),
        outline: wedge_outline(&wedges).ok()?,
        pentagons,
        sigma,
        flipped: original.iter().map(|u| u.transformed(&sigma)).collect(),
        original,
    })
}

/// Reversible regions of a finite tiling: nonagon units touching at most
/// `max_units` units, then connected unit clusters of at most `max_units`
/// units.
pub fn find_reversible(t: &Tiling, max_units: usize) -> Result<Vec<ReversibleRegion>, CnError> {
    check_finite(t)?;
    let mut out = nonagon_regions(t, max_units);
    let adj = unit_adjacency(&t.units);
    let clusters: Vec<ReversibleRegion> = connected_subsets(&adj, max_units)
        .into_par_iter()
        .filter(|s| s.len() > 1)
        .filter_map(|s| cluster_region(t, &s))
        .collect();
    out.extend(clusters);
    Ok(out)
}

/// Replaces the region's units by their flipped counterparts; every other
/// unit keeps its index and value.
pub fn flip(t: &Tiling, r: &ReversibleRegion) -> Result<Tiling, CnError> {
    let fresh =
        r.units.len() == r.original.len() && r.units.iter().zip(&r.original).all(|(&i, u)| t.units.get(i) == Some(u));
    if !fresh {
        return Err(CnError::Stale);
    }
    let mut units = t.units.clone();
    for (&i, u) in r.units.iter().zip(&r.flipped) {
        units[i] = *u;
    }
    Ok(Tiling::new(t.domain.clone(), units))
}

fn sorted_units(t: &Tiling) -> Vec<UnitPlacement> {
    let mut u = t.units.clone();
    u.sort();
    u
}

/// Seeded self-avoiding walk of flips: each step re-detects regions and
/// flips one chosen uniformly among those leading to a tiling not yet
/// visited. Stops early when no such region remains.
pub fn flip_walk(t: &Tiling, steps: usize, seed: u64, max_units: usize) -> Result<Vec<Tiling>, CnError> {
    check_finite(t)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::from([sorted_units(t)]);
    let mut walk = vec![t.clone()];
    for _ in 0..steps {
        let cur = walk.last().expect("walk is nonempty");
        let options: Vec<Tiling> = find_reversible(cur, max_units)?
            .iter()
            .map(|r| flip(cur, r))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|n| !seen.contains(&sorted_units(n)))
            .collect();
        if options.is_empty() {
            break;
        }
        let next = options[rng.gen_range(0..options.len())].clone();
        seen.insert(sorted_units(&next));
        walk.push(next);
    }
    Ok(walk)
}

/// Windmill and ship counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Census {
    pub windmills: usize,
    pub ships: usize,
}

impl Census {
    pub fn of(units: &[UnitPlacement]) -> Census {
        let windmills = units.iter().filter(|u| u.kind() == UnitKind::Windmill).count();
        Census { windmills, ships: units.len() - windmills }
    }
}

impl fmt::Display for Census {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}S{}", self.windmills, self.ships)
    }
}

/// A nonagon unit together with the units it touches, in both fillings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnPattern {
    /// `N1`, `N2`, … in key order.
    pub label: String,
    /// Least canonical form of the two unit fillings.
    pub key: Vec<UnitPlacement>,
    pub outline: Vec<EPoint>,
    pub sigma: Isometry,
    /// Nonagon pentagons anterior.
    pub anterior_pentagons: Vec<PentagonPlacement>,
    pub posterior_pentagons: Vec<PentagonPlacement>,
    pub anterior_units: Vec<UnitPlacement>,
    pub posterior_units: Vec<UnitPlacement>,
    pub anterior_census: Census,
    pub posterior_census: Census,
    /// Units completing a tiling around the anterior filling.
    pub surround: Vec<UnitPlacement>,
}

impl CnPattern {
    pub fn ship_only(&self) -> bool {
        self.anterior_census.windmills == 0 && self.posterior_census.windmills == 0
    }

    pub fn key_string(&self) -> String {
        self.key.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(";")
    }

    /// One line of the pattern index.
    pub fn index_line(&self) -> String {
        format!(
            "{} acn={} pcn={} ship_only={} key={}",
            self.label,
            self.anterior_census,
            self.posterior_census,
            self.ship_only(),
            self.key_string()
        )
    }

    /// The filling with the surrounding units as a finite tiling.
    pub fn tiling(&self, anterior: bool) -> Tiling {
        let mut units = if anterior { self.anterior_units.clone() } else { self.posterior_units.clone() };
        units.extend(self.surround.iter().cloned());
        units.sort();
        let region: Region = units.iter().flat_map(|u| u.tris()).collect();
        Tiling::new(Domain::Finite(region), units)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnCatalog {
    pub max_units: usize,
    /// Locally consistent fillings before the surround test, up to
    /// isometry and pairing.
    pub local_classes: usize,
    pub patterns: Vec<CnPattern>,
}

impl CnCatalog {
    pub fn ship_only(&self) -> usize {
        self.patterns.iter().filter(|p| p.ship_only()).count()
    }
}

/// Key shared by a filling and its flip: the least canonical form.
pub fn pattern_key(a: &[UnitPlacement], b: &[UnitPlacement]) -> Vec<UnitPlacement> {
    let ops = Isometry::point_group();
    canonical_form(a, &ops).min(canonical_form(b, &ops))
}

fn toggle(units: &[UnitPlacement], pentagons: &[PentagonPlacement]) -> Vec<UnitPlacement> {
    units
        .iter()
        .map(|u| {
            let mut leans = u.leans();
            for p in pentagons.iter().filter(|p| p.central == u.anchor()) {
                leans[p.edge as usize] = leans[p.edge as usize].flip();
            }
            UnitPlacement::assemble(u.anchor(), leans)
        })
        .collect()
}

/// Free-standing census of nonagon units with the units they touch.
///
/// Every way of completing the touched units (at most `max_units`) without
/// overlap is paired with its flip, the pair is reduced up to isometry, and
/// pairs whose anterior filling cannot be surrounded out to
/// `surround_steps` edge-crossings are dropped.
pub fn enumerate_cn_patterns(max_units: usize, surround_steps: usize) -> CnCatalog {
    let shape = cn_template();
    let anchors: BTreeSet<Tri> = shape.pentagons.iter().map(|p| p.central).collect();
    if anchors.len() > max_units {
        return CnCatalog { max_units, local_classes: 0, patterns: Vec::new() };
    }
    let anchors: Vec<Tri> = anchors.into_iter().collect();
    let fixed: BTreeMap<(Tri, u8), Lean> = shape.pentagons.iter().map(|p| ((p.central, p.edge), p.lean)).collect();
    let slots: Vec<(Tri, u8)> =
        anchors.iter().flat_map(|&a| (0..3).map(move |e| (a, e))).filter(|s| !fixed.contains_key(s)).collect();
    let mut classes: BTreeMap<Vec<UnitPlacement>, Vec<UnitPlacement>> = BTreeMap::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut leans: BTreeMap<Tri, [Lean; 3]> = anchors.iter().map(|&a| (a, [Lean::L; 3])).collect();
        for (&(a, e), &l) in &fixed {
            leans.get_mut(&a).expect("anchor")[e as usize] = l;
        }
        for (i, &(a, e)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                leans.get_mut(&a).expect("anchor")[e as usize] = Lean::R;
            }
        }
        let units: Vec<UnitPlacement> = leans.into_iter().map(|(a, l)| UnitPlacement::assemble(a, l)).collect();
        let wedges: Vec<Wedge> = units.iter().flat_map(|u| u.wedges()).collect();
        if wedges.iter().collect::<BTreeSet<_>>().len() != wedges.len() {
            continue;
        }
        let key = pattern_key(&units, &toggle(&units, &shape.pentagons));
        classes.entry(key).or_insert(units);
    }
    let local_classes = classes.len();
    let anterior_pentagons = shape.pentagons.clone();
    let posterior_pentagons: Vec<PentagonPlacement> = {
        let mut p: Vec<PentagonPlacement> = shape.pentagons.iter().map(|p| p.transformed(&shape.sigma)).collect();
        p.sort();
        p
    };
    let candidates: Vec<(Vec<UnitPlacement>, Vec<UnitPlacement>)> = classes.into_iter().collect();
    let kept: Vec<Option<CnPattern>> = candidates
        .into_par_iter()
        .map(|(key, units)| {
            let must: Region = units.iter().flat_map(|u| u.tris()).collect::<Region>().grown(surround_steps);
            let extra = surround(&units, &must, &PieceSet::all())?;
            let posterior = toggle(&units, &shape.pentagons);
            Some(CnPattern {
                label: String::new(),
                key,
                outline: shape.outline.clone(),
                sigma: shape.sigma,
                anterior_pentagons: anterior_pentagons.clone(),
                posterior_pentagons: posterior_pentagons.clone(),
                anterior_census: Census::of(&units),
                posterior_census: Census::of(&posterior),
                anterior_units: units,
                posterior_units: posterior,
                surround: extra,
            })
        })
        .collect();
    let patterns =
        kept.into_iter().flatten().enumerate().map(|(i, p)| CnPattern { label: format!("N{}", i + 1), ..p }).collect();
    CnCatalog { max_units, local_classes, patterns }
}

/// The catalog pattern a nonagon region of a tiling realizes.
pub fn classify_nonagon<'a>(r: &ReversibleRegion, catalog: &'a CnCatalog) -> Option<&'a CnPattern> {
    if r.kind != RegionKind::ConvexNonagon {
        return None;
    }
    let key = pattern_key(&r.original, &r.flipped);
    catalog.patterns.iter().find(|p| p.key == key)
}
