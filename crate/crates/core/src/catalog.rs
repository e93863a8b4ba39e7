//! Search-driven census of periodic tilings, two-ship pair classes,
//! symmetric six-unit flowers and a small registry of stored witnesses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::format::{self, ParseError};
use crate::lattice::{canonical_form, dist9, EPoint, Isometry, Region, TorusBasis, Tri};
use crate::pentagon::{all_lean_configs, Chirality, UnitKind, UnitPlacement};
use crate::solver::{build_instance, patch_instance, PieceSet};
use crate::tiling::{Domain, Tiling, TilingStats};

/// Largest determinant any sweep accepts.
pub const MAX_SWEEP_DET: i32 = 84;

/// Anchors of flower units lie within this distance of the center
/// (nine times the squared edge length).
pub const FLOWER_RADIUS9: i64 = 36;

/// Determinant bound for checking whether a flower tiles by translation.
pub const FLOWER_TILING_DET: i32 = 42;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("determinant bound {0} is outside 1..={MAX_SWEEP_DET}")]
    BoundExceeded(i32),
    #[error("unknown preset `{0}` (known: {known})", known = PRESET_NAMES.join(", "))]
    UnknownPreset(String),
    #[error("stored preset is corrupt: {0}")]
    CorruptPreset(#[from] ParseError),
    #[error("search found no witness for `{0}`")]
    NoWitness(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyTag {
    WindmillOnly,
    ShipOnly,
    Mixed,
    FlowerTiling,
    PairStripe,
    Rice1995Like,
}

impl FamilyTag {
    /// Composition label of a tiling.
    pub fn from_stats(s: &TilingStats) -> FamilyTag {
        match (s.kind_count(UnitKind::Windmill), s.kind_count(UnitKind::Ship)) {
            (_, 0) => FamilyTag::WindmillOnly,
            (0, _) => FamilyTag::ShipOnly,
            _ => FamilyTag::Mixed,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::WindmillOnly => "windmill-only",
            FamilyTag::ShipOnly => "ship-only",
            FamilyTag::Mixed => "mixed",
            FamilyTag::FlowerTiling => "flower-tiling",
            FamilyTag::PairStripe => "pair-stripe",
            FamilyTag::Rice1995Like => "rice1995-like",
        }
    }

    pub fn note(self) -> &'static str {
        match self {
            FamilyTag::WindmillOnly => "only windmill units",
            FamilyTag::ShipOnly => "only ship units",
            FamilyTag::Mixed => "both unit kinds",
            FamilyTag::FlowerTiling => "translates of one six-unit flower",
            FamilyTag::PairStripe => "ship-only, built from one two-ship patch class",
            FamilyTag::Rice1995Like => "ship-only cell of three rotational pairs; family resemblance only",
        }
    }

    pub fn consistent_with(self, s: &TilingStats) -> bool {
        let (w, sh) = (s.kind_count(UnitKind::Windmill), s.kind_count(UnitKind::Ship));
        match self {
            FamilyTag::WindmillOnly => sh == 0 && w > 0,
            FamilyTag::ShipOnly | FamilyTag::PairStripe => w == 0 && sh > 0,
            FamilyTag::Mixed => w > 0 && sh > 0,
            FamilyTag::FlowerTiling => s.unit_count() > 0 && s.unit_count().is_multiple_of(6),
            FamilyTag::Rice1995Like => w == 0 && sh == 6,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn check_bound(max_abs_det: i32) -> Result<(), CatalogError> {
    if (1..=MAX_SWEEP_DET).contains(&max_abs_det) {
        Ok(())
    } else {
        Err(CatalogError::BoundExceeded(max_abs_det))
    }
}

/// Hermite-reduced bases in ascending determinant whose wedge count can
/// hold whole units (multiples of 7).
fn sweep_bases(max_abs_det: i32) -> Vec<TorusBasis> {
    (7..=max_abs_det).step_by(7).flat_map(TorusBasis::all_with_det).collect()
}

/// How one unit maps onto another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairSymmetry {
    /// A half-turn carries each unit onto the other.
    Rotational,
    /// An orientation-reversing isometry carries one onto the other.
    Crooked,
    Other,
}

impl PairSymmetry {
    pub fn name(self) -> &'static str {
        match self {
            PairSymmetry::Rotational => "rotational",
            PairSymmetry::Crooked => "crooked",
            PairSymmetry::Other => "other",
        }
    }
}

/// The isometry `g` with `g(a) = b`, found among the point operations
/// followed by a lattice translation.
pub fn relating_isometry(a: &UnitPlacement, b: &UnitPlacement) -> Option<Isometry> {
    Isometry::point_group().into_iter().find_map(|g| {
        let img = a.transformed(&g);
        let (ia, ba) = (img.anchor(), b.anchor());
        if ia.orient != ba.orient {
            return None;
        }
        let (dx, dy) = (ba.x - ia.x, ba.y - ia.y);
        (img.translated(dx, dy) == *b).then(|| Isometry::translation(dx, dy).compose(&g))
    })
}

pub fn pair_symmetry(a: &UnitPlacement, b: &UnitPlacement) -> PairSymmetry {
    match relating_isometry(a, b) {
        Some(g) if g.reflects() => PairSymmetry::Crooked,
        Some(g) if g.rot() == 3 => PairSymmetry::Rotational,
        _ => PairSymmetry::Other,
    }
}

/// Whether the two units share a triangle edge.
pub fn adjacent(a: &UnitPlacement, b: &UnitPlacement) -> bool {
    let ta: BTreeSet<Tri> = a.tris().into_iter().collect();
    b.tris().iter().any(|t| !ta.contains(t) && t.neighbors().iter().any(|n| ta.contains(n)))
}

/// Adjacent unit pairs `(i, j)`, `i < j`, of a finite tiling.
fn adjacent_pairs(units: &[UnitPlacement]) -> Vec<(usize, usize)> {
    let mut owner: BTreeMap<Tri, usize> = BTreeMap::new();
    for (i, u) in units.iter().enumerate() {
        for t in u.tris() {
            owner.insert(t, i);
        }
    }
    let mut out = BTreeSet::new();
    for (i, u) in units.iter().enumerate() {
        for t in u.tris() {
            for n in t.neighbors() {
                if let Some(&j) = owner.get(&n) {
                    if j != i {
                        out.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Whether some two adjacent units of the tiling form a rotational pair.
/// Torus tilings are checked on a 3×3 lift so pairs across the cell
/// boundary count.
pub fn has_rotational_pair(t: &Tiling) -> bool {
    let units = match t.domain {
        Domain::Torus(_) => t.lift(3, 3).map(|l| l.units).unwrap_or_default(),
        Domain::Finite(_) => t.units.clone(),
    };
    adjacent_pairs(&units).into_iter().any(|(i, j)| pair_symmetry(&units[i], &units[j]) == PairSymmetry::Rotational)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PeriodicFilters {
    /// Keep only tilings whose units all share one chirality.
    pub chirality_uniform: bool,
    /// Keep only tilings containing an adjacent rotational pair.
    pub rotational_pair: bool,
}

impl PeriodicFilters {
    fn accepts(&self, t: &Tiling) -> bool {
        let uniform = t.units.windows(2).all(|w| w[0].chirality() == w[1].chirality());
        (!self.chirality_uniform || uniform) && (!self.rotational_pair || has_rotational_pair(t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicTiling {
    pub basis: TorusBasis,
    pub tiling: Tiling,
    pub tag: FamilyTag,
}

/// Torus automorphisms: point operations preserving the lattice.
fn automorphisms(b: &TorusBasis) -> Vec<Isometry> {
    Isometry::point_group().into_iter().filter(|g| b.preserved_by(g)).collect()
}

/// Every tiling of every Hermite basis up to `max_abs_det`, one per class
/// under translations and lattice-preserving point operations.
pub fn enumerate_periodic(
    pieces: &PieceSet,
    max_abs_det: i32,
    filters: &PeriodicFilters,
) -> Result<Vec<PeriodicTiling>, CatalogError> {
    check_bound(max_abs_det)?;
    let per_basis: Vec<Vec<PeriodicTiling>> = sweep_bases(max_abs_det)
        .par_iter()
        .map(|b| {
            let domain = Domain::Torus(*b);
            let inst = build_instance(&domain, pieces, &[]).expect("no fixed placements");
            let ops = automorphisms(b);
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for t in inst.enumerate(usize::MAX).tilings {
                let c = t.canonical_up_to(&ops);
                if seen.insert(c.units.clone()) && filters.accepts(&c) {
                    let tag = FamilyTag::from_stats(&c.stats());
                    out.push(PeriodicTiling { basis: *b, tiling: c, tag });
                }
            }
            out
        })
        .collect();
    Ok(per_basis.into_iter().flatten().collect())
}

/// The first tiling found in ascending determinant order.
pub fn first_periodic(pieces: &PieceSet, max_abs_det: i32) -> Result<Option<PeriodicTiling>, CatalogError> {
    check_bound(max_abs_det)?;
    for b in sweep_bases(max_abs_det) {
        let inst = build_instance(&Domain::Torus(b), pieces, &[]).expect("no fixed placements");
        if let Some(t) = inst.solve_first() {
            let tiling = t.canonical();
            let tag = FamilyTag::from_stats(&tiling.stats());
            return Ok(Some(PeriodicTiling { basis: b, tiling, tag }));
        }
    }
    Ok(None)
}

fn ships_at(anchor: Tri) -> impl Iterator<Item = UnitPlacement> {
    all_lean_configs()
        .into_iter()
        .map(move |l| UnitPlacement::assemble(anchor, l))
        .filter(|u| u.kind() == UnitKind::Ship)
}

/// Every edge-connected, non-overlapping two-ship patch, as canonical
/// keys under all isometries, sorted.
pub fn two_ship_patches() -> Vec<Vec<UnitPlacement>> {
    let ops = Isometry::point_group();
    let mut keys = BTreeSet::new();
    for first in [Tri::up(0, 0), Tri::down(0, 0)].into_iter().flat_map(ships_at) {
        let own: BTreeSet<Tri> = first.tris().into_iter().collect();
        for x in -5..=5 {
            for y in -5..=5 {
                for second in [Tri::up(x, y), Tri::down(x, y)].into_iter().flat_map(ships_at) {
                    if second.tris().iter().any(|t| own.contains(t)) || !adjacent(&first, &second) {
                        continue;
                    }
                    keys.insert(canonical_form(&[first, second], &ops));
                }
            }
        }
    }
    keys.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClass {
    /// `P1`, `P2`, … in key order.
    pub label: String,
    pub key: Vec<UnitPlacement>,
    pub symmetry: PairSymmetry,
    /// A ship-only torus tiling containing the patch.
    pub witness: Tiling,
    /// A torus tiling by translates of the patch alone, if one exists.
    pub alone: Option<Tiling>,
}

impl PairClass {
    pub fn tiles_alone(&self) -> bool {
        self.alone.is_some()
    }
}

/// A patch with its witness tiling and its lone tiling, if any.
type Found = (Vec<UnitPlacement>, Tiling, Option<Tiling>);

/// Two-ship patch classes that occur in some ship-only torus tiling with
/// determinant at most `max_abs_det`.
pub fn find_pair_classes(max_abs_det: i32) -> Result<Vec<PairClass>, CatalogError> {
    check_bound(max_abs_det)?;
    let bases = sweep_bases(max_abs_det);
    let ships = PieceSet::kind(UnitKind::Ship);
    let found: Vec<Option<Found>> = two_ship_patches()
        .into_par_iter()
        .map(|key| {
            let witness =
                bases.iter().find_map(|b| build_instance(&Domain::Torus(*b), &ships, &key).ok()?.solve_first())?;
            let alone = bases
                .iter()
                .find_map(|b| patch_instance(&Domain::Torus(*b), &key).ok()?.solve_first())
                .map(|t| t.canonical());
            Some((key, witness.canonical(), alone))
        })
        .collect();
    Ok(found
        .into_iter()
        .flatten()
        .enumerate()
        .map(|(i, (key, witness, alone))| PairClass {
            label: format!("P{}", i + 1),
            symmetry: pair_symmetry(&key[0], &key[1]),
            key,
            witness,
            alone,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FlowerSymmetry {
    C2,
    C3,
    C6,
}

impl FlowerSymmetry {
    pub fn order(self) -> u8 {
        match self {
            FlowerSymmetry::C2 => 2,
            FlowerSymmetry::C3 => 3,
            FlowerSymmetry::C6 => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FlowerSymmetry::C2 => "C2",
            FlowerSymmetry::C3 => "C3",
            FlowerSymmetry::C6 => "C6",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowerAssembly {
    pub units: Vec<UnitPlacement>,
    pub center: EPoint,
    /// Full rotational symmetry about the center.
    pub symmetry: FlowerSymmetry,
    pub outline: Region,
    /// A lattice on which translates of the flower tile the plane.
    pub lattice: Option<TorusBasis>,
}

impl FlowerAssembly {
    pub fn kind(&self) -> UnitKind {
        self.units[0].kind()
    }

    /// The flower as a finite tiling of its own outline.
    pub fn tiling(&self) -> Tiling {
        Tiling::new(Domain::Finite(self.outline.clone()), self.units.clone())
    }

    /// The periodic tiling by translates of the flower, if any.
    pub fn lattice_tiling(&self) -> Option<Tiling> {
        let b = self.lattice?;
        patch_instance(&Domain::Torus(b), &self.units).ok()?.solve_first().map(|t| t.canonical())
    }
}

fn rotation(k: u8) -> Isometry {
    Isometry::rotation_about(EPoint::new(0, 0), k).expect("origin is a lattice vertex")
}

/// Largest `k` in {6, 3, 2} such that rotating by `360/k` degrees about
/// the origin permutes the units.
fn rotational_order(units: &BTreeSet<UnitPlacement>) -> Option<FlowerSymmetry> {
    let maps = |k: u8| units.iter().all(|u| units.contains(&u.transformed(&rotation(k))));
    if maps(1) {
        Some(FlowerSymmetry::C6)
    } else if maps(2) {
        Some(FlowerSymmetry::C3)
    } else if maps(3) {
        Some(FlowerSymmetry::C2)
    } else {
        None
    }
}

/// Six distinct, disjoint units forming a connected region without holes.
fn assembly_region(units: &BTreeSet<UnitPlacement>) -> Option<Region> {
    if units.len() != 6 {
        return None;
    }
    let mut region = Region::new();
    for u in units {
        for t in u.tris() {
            if !region.insert(t) {
                return None;
            }
        }
    }
    region.outline().ok()?;
    Some(region)
}

/// Units of `kind` near the origin, one representative per orbit of the
/// rotation group of order `order`.
fn orbit_representatives(kind: UnitKind, order: u8) -> Vec<UnitPlacement> {
    let step = 6 / order;
    let mut out = Vec::new();
    for x in -4..=4 {
        for y in -4..=4 {
            for t in [Tri::up(x, y), Tri::down(x, y)] {
                if dist9(t.centroid(), EPoint::new(0, 0)) > FLOWER_RADIUS9 {
                    continue;
                }
                for l in all_lean_configs() {
                    let u = UnitPlacement::assemble(t, l);
                    let orbit_min = (0..order).map(|i| u.transformed(&rotation(i * step))).min();
                    if u.kind() == kind && orbit_min.as_ref() == Some(&u) {
                        out.push(u);
                    }
                }
            }
        }
    }
    out
}

fn orbit(reps: &[&UnitPlacement], order: u8) -> BTreeSet<UnitPlacement> {
    let step = 6 / order;
    reps.iter().flat_map(|u| (0..order).map(move |i| u.transformed(&rotation(i * step)))).collect()
}

fn overlaps(a: &BTreeSet<UnitPlacement>) -> bool {
    let mut seen = BTreeSet::new();
    !a.iter().flat_map(|u| u.tris()).all(|t| seen.insert(t))
}

/// Six-unit assemblies of one kind with C6, C3 or C2 rotational symmetry
/// about a lattice vertex, without holes, one per isometry class.
pub fn find_flowers(kind: UnitKind) -> Vec<FlowerAssembly> {
    let mut candidates: Vec<BTreeSet<UnitPlacement>> = Vec::new();
    for u in orbit_representatives(kind, 6) {
        candidates.push(orbit(&[&u], 6));
    }
    let reps3 = orbit_representatives(kind, 3);
    for (i, a) in reps3.iter().enumerate() {
        for b in &reps3[i + 1..] {
            candidates.push(orbit(&[a, b], 3));
        }
    }
    let reps2 = orbit_representatives(kind, 2);
    for (i, a) in reps2.iter().enumerate() {
        let oa = orbit(&[a], 2);
        if oa.len() != 2 || overlaps(&oa) {
            continue;
        }
        for (j, b) in reps2.iter().enumerate().skip(i + 1) {
            let oab = orbit(&[a, b], 2);
            if oab.len() != 4 || overlaps(&oab) {
                continue;
            }
            for c in &reps2[j + 1..] {
                candidates.push(orbit(&[a, b, c], 2));
            }
        }
    }
    let ops = Isometry::point_group();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for units in candidates {
        let Some(outline) = assembly_region(&units) else { continue };
        let Some(symmetry) = rotational_order(&units) else { continue };
        let list: Vec<UnitPlacement> = units.into_iter().collect();
        if !seen.insert(canonical_form(&list, &ops)) {
            continue;
        }
        out.push((symmetry, list, outline));
    }
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    let bases: Vec<TorusBasis> = (21..=FLOWER_TILING_DET).step_by(21).flat_map(TorusBasis::all_with_det).collect();
    out.into_par_iter()
        .map(|(symmetry, units, outline)| {
            let lattice = bases
                .iter()
                .copied()
                .find(|b| patch_instance(&Domain::Torus(*b), &units).is_ok_and(|i| i.solve_first().is_some()));
            FlowerAssembly { units, center: EPoint::new(0, 0), symmetry, outline, lattice }
        })
        .collect()
}

pub const PRESET_NAMES: [&str; 3] = ["rice1995-like", "flower-lattice", "windmill-min"];

const RICE1995_LIKE: &str = include_str!("../presets/rice1995-like.ptt");
const FLOWER_LATTICE: &str = include_str!("../presets/flower-lattice.ptt");
const WINDMILL_MIN: &str = include_str!("../presets/windmill-min.ptt");

/// Stored witness text of a preset.
pub fn preset_text(name: &str) -> Result<&'static str, CatalogError> {
    match name {
        "rice1995-like" => Ok(RICE1995_LIKE),
        "flower-lattice" => Ok(FLOWER_LATTICE),
        "windmill-min" => Ok(WINDMILL_MIN),
        _ => Err(CatalogError::UnknownPreset(name.to_string())),
    }
}

pub fn preset(name: &str) -> Result<Tiling, CatalogError> {
    Ok(format::parse(preset_text(name)?)?)
}

pub fn preset_tag(name: &str) -> Result<FamilyTag, CatalogError> {
    match name {
        "rice1995-like" => Ok(FamilyTag::Rice1995Like),
        "flower-lattice" => Ok(FamilyTag::FlowerTiling),
        "windmill-min" => Ok(FamilyTag::WindmillOnly),
        _ => Err(CatalogError::UnknownPreset(name.to_string())),
    }
}

/// Whether the units of a torus tiling split into adjacent rotational
/// pairs (adjacency and pairing taken across the cell boundary).
pub fn splits_into_rotational_pairs(t: &Tiling) -> bool {
    let Domain::Torus(b) = &t.domain else { return false };
    let n = t.units.len();
    if n % 2 == 1 {
        return false;
    }
    let base: BTreeMap<UnitPlacement, usize> =
        t.units.iter().enumerate().map(|(i, u)| (u.with_anchor(b.reduce(u.anchor())), i)).collect();
    let Ok(lifted) = t.lift(3, 3) else { return false };
    let index = |u: &UnitPlacement| base[&u.with_anchor(b.reduce(u.anchor()))];
    let mut partners = vec![BTreeSet::new(); n];
    for (i, j) in adjacent_pairs(&lifted.units) {
        let (a, c) = (&lifted.units[i], &lifted.units[j]);
        if pair_symmetry(a, c) == PairSymmetry::Rotational {
            let (x, y) = (index(a), index(c));
            if x != y {
                partners[x].insert(y);
                partners[y].insert(x);
            }
        }
    }
    fn matching(partners: &[BTreeSet<usize>], used: &mut Vec<bool>) -> bool {
        let Some(i) = used.iter().position(|u| !u) else { return true };
        used[i] = true;
        for &j in &partners[i] {
            if !used[j] {
                used[j] = true;
                if matching(partners, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        used[i] = false;
        false
    }
    matching(&partners, &mut vec![false; n])
}

/// Regenerates a preset by search.
///
/// `rice1995-like` is the first ship-only tiling of a determinant-21 cell
/// whose six ships split into three rotational pairs; `flower-lattice`
/// tiles by translates of the first C6 ship flower; `windmill-min` is the
/// first windmill-only tiling in ascending determinant.
pub fn generate_preset(name: &str) -> Result<Tiling, CatalogError> {
    let none = || CatalogError::NoWitness(name.to_string());
    match name {
        "rice1995-like" => {
            let ships = PieceSet::kind(UnitKind::Ship);
            TorusBasis::all_with_det(21)
                .into_iter()
                .find_map(|b| {
                    let inst = build_instance(&Domain::Torus(b), &ships, &[]).ok()?;
                    inst.enumerate(usize::MAX)
                        .tilings
                        .into_iter()
                        .map(|t| t.canonical())
                        .find(splits_into_rotational_pairs)
                })
                .ok_or_else(none)
        }
        "flower-lattice" => find_flowers(UnitKind::Ship)
            .into_iter()
            .filter(|f| f.symmetry == FlowerSymmetry::C6)
            .find_map(|f| f.lattice_tiling())
            .ok_or_else(none),
        "windmill-min" => {
            let windmills = PieceSet::kind(UnitKind::Windmill);
            Ok(first_periodic(&windmills, MAX_SWEEP_DET)?.ok_or_else(none)?.tiling)
        }
        _ => Err(CatalogError::UnknownPreset(name.to_string())),
    }
}

/// Chirality census `(anterior units, posterior units)`.
pub fn chirality_census(t: &Tiling) -> (usize, usize) {
    let a = t.units.iter().filter(|u| u.chirality() == Chirality::Anterior).count();
    (a, t.units.len() - a)
}
