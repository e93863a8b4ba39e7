//! Exact-cover search for unit tilings of finite regions and tori.
//!
//! Columns are domain wedges in lexicographic order and rows are candidate
//! placements in lexicographic order. Parallel runs split the search at
//! the first branching column and merge the branches back in row order, so
//! every mode returns the same result for any thread count.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::dlx::Dlx;
use crate::lattice::{Region, Tri, Wedge};
use crate::pentagon::{all_lean_configs, Chirality, UnitKind, UnitPlacement};
use crate::tiling::{Domain, Tiling};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("fixed placement {0} leaves the domain")]
    FixedOutside(String),
    #[error("fixed placements {0} and {1} overlap")]
    FixedConflict(String, String),
    #[error("invalid piece `{0}` (expected windmill:A, windmill:P, ship:A or ship:P)")]
    BadPiece(String),
    #[error("empty patch")]
    EmptyPatch,
}

/// Allowed `(kind, chirality)` combinations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PieceSet(BTreeSet<(UnitKind, Chirality)>);

impl PieceSet {
    pub fn all() -> Self {
        [UnitKind::Windmill, UnitKind::Ship]
            .into_iter()
            .flat_map(|k| [(k, Chirality::Anterior), (k, Chirality::Posterior)])
            .collect()
    }

    pub fn kind(kind: UnitKind) -> Self {
        [(kind, Chirality::Anterior), (kind, Chirality::Posterior)].into_iter().collect()
    }

    pub fn single(kind: UnitKind, chirality: Chirality) -> Self {
        [(kind, chirality)].into_iter().collect()
    }

    pub fn allows(&self, u: &UnitPlacement) -> bool {
        self.0.contains(&(u.kind(), u.chirality()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(UnitKind, Chirality)> {
        self.0.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(UnitKind, Chirality)> for PieceSet {
    fn from_iter<I: IntoIterator<Item = (UnitKind, Chirality)>>(iter: I) -> Self {
        PieceSet(iter.into_iter().collect())
    }
}

impl FromStr for PieceSet {
    type Err = SolverError;

    /// Comma-separated `kind:chirality` items, e.g. `ship:A,ship:P`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                let (k, c) = p.split_once(':').ok_or_else(|| SolverError::BadPiece(p.into()))?;
                let kind = match k {
                    "windmill" => UnitKind::Windmill,
                    "ship" => UnitKind::Ship,
                    _ => return Err(SolverError::BadPiece(p.into())),
                };
                let chir = match c {
                    "A" => Chirality::Anterior,
                    "P" => Chirality::Posterior,
                    _ => return Err(SolverError::BadPiece(p.into())),
                };
                Ok((kind, chir))
            })
            .collect()
    }
}

impl fmt::Display for PieceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, c)| format!("{}:{}", k.name(), c.letter())).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Restrict the least column to its least candidate row. Counts then
    /// report the solutions that contain that placement.
    pub symmetry_break: bool,
    /// Report unsatisfiable immediately when the wedge count is not a
    /// multiple of 21.
    pub fast_fail: bool,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { symmetry_break: false, fast_fail: false, threads: 1 }
    }
}

/// One selectable option: a placement (or a rigid group of placements)
/// and the wedge columns it covers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverRow {
    pub units: Vec<UnitPlacement>,
    pub cols: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct CoverInstance {
    pub domain: Domain,
    pub columns: Vec<Wedge>,
    pub rows: Vec<CoverRow>,
    pub fixed: Vec<UnitPlacement>,
    /// Whether the free wedge count is a multiple of 21.
    pub area_ok: bool,
    pub options: SolveOptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumStop {
    /// Every solution was produced.
    Exhausted,
    /// The limit was reached; more solutions may exist.
    LimitReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub tilings: Vec<Tiling>,
    pub stop: EnumStop,
}

/// Located wedges of a group of placements, or `None` if any wedge falls
/// outside the domain or is covered twice.
fn support(domain: &Domain, units: &[UnitPlacement]) -> Option<Vec<Wedge>> {
    let mut seen = BTreeSet::new();
    for u in units {
        for w in u.wedges() {
            if !seen.insert(domain.locate(w)?) {
                return None;
            }
        }
    }
    Some(seen.into_iter().collect())
}

/// Every placement of an allowed piece whose support lies in the domain
/// without self-overlap. Torus anchors are taken from the fundamental set.
pub fn candidate_placements(domain: &Domain, pieces: &PieceSet) -> Vec<UnitPlacement> {
    let anchors: Vec<Tri> = match domain {
        Domain::Finite(r) => r.iter().copied().collect(),
        Domain::Torus(b) => b.cells(),
    };
    let mut out: Vec<UnitPlacement> = anchors
        .into_iter()
        .flat_map(|a| all_lean_configs().into_iter().map(move |l| UnitPlacement::assemble(a, l)))
        .filter(|u| pieces.allows(u) && support(domain, std::slice::from_ref(u)).is_some())
        .collect();
    out.sort();
    out
}

fn assemble(
    domain: &Domain,
    groups: Vec<Vec<UnitPlacement>>,
    fixed: Vec<UnitPlacement>,
) -> Result<CoverInstance, SolverError> {
    let mut blocked = BTreeSet::new();
    for (i, f) in fixed.iter().enumerate() {
        let sup = support(domain, std::slice::from_ref(f)).ok_or_else(|| SolverError::FixedOutside(f.to_string()))?;
        for w in sup {
            if !blocked.insert(w) {
                let other = fixed[..i]
                    .iter()
                    .find(|g| support(domain, std::slice::from_ref(g)).is_some_and(|s| s.contains(&w)))
                    .expect("some earlier placement covers the wedge");
                return Err(SolverError::FixedConflict(other.to_string(), f.to_string()));
            }
        }
    }
    let columns: Vec<Wedge> = domain.wedges().into_iter().filter(|w| !blocked.contains(w)).collect();
    let index: BTreeMap<Wedge, u32> = columns.iter().enumerate().map(|(i, w)| (*w, i as u32)).collect();
    let mut rows = Vec::new();
    for units in groups {
        let Some(sup) = support(domain, &units) else { continue };
        let Some(cols) = sup.iter().map(|w| index.get(w).copied()).collect::<Option<Vec<u32>>>() else {
            continue;
        };
        rows.push(CoverRow { units, cols });
    }
    let area_ok = columns.len().is_multiple_of(21);
    Ok(CoverInstance { domain: domain.clone(), columns, rows, fixed, area_ok, options: SolveOptions::default() })
}

/// Builds the cover instance for tiling `domain` with `pieces`, with the
/// `fixed` placements forced into every solution.
pub fn build_instance(
    domain: &Domain,
    pieces: &PieceSet,
    fixed: &[UnitPlacement],
) -> Result<CoverInstance, SolverError> {
    let groups = candidate_placements(domain, pieces).into_iter().map(|u| vec![u]).collect();
    let fixed = match domain {
        Domain::Torus(b) => fixed.iter().map(|u| u.with_anchor(b.reduce(u.anchor()))).collect(),
        Domain::Finite(_) => fixed.to_vec(),
    };
    assemble(domain, groups, fixed)
}

/// Instance whose rows are the translates of a rigid patch, for testing
/// whether the patch alone tiles the domain by translation.
pub fn patch_instance(domain: &Domain, patch: &[UnitPlacement]) -> Result<CoverInstance, SolverError> {
    let base = patch.iter().map(|u| u.anchor()).min().ok_or(SolverError::EmptyPatch)?;
    let targets: Vec<Tri> = match domain {
        Domain::Finite(r) => r.iter().copied().filter(|t| t.orient == base.orient).collect(),
        Domain::Torus(b) => b.cells().into_iter().filter(|t| t.orient == base.orient).collect(),
    };
    let groups = targets
        .into_iter()
        .map(|t| {
            let (dx, dy) = (t.x - base.x, t.y - base.y);
            let mut units: Vec<UnitPlacement> = patch.iter().map(|u| u.translated(dx, dy)).collect();
            if let Domain::Torus(b) = domain {
                units = units.into_iter().map(|u| u.with_anchor(b.reduce(u.anchor()))).collect();
            }
            units.sort();
            units
        })
        .collect();
    assemble(domain, groups, Vec::new())
}

impl CoverInstance {
    pub fn with_options(mut self, options: SolveOptions) -> Self {
        self.options = options;
        self
    }

    fn matrix(&self) -> Dlx {
        let rows: Vec<Vec<u32>> = self.rows.iter().map(|r| r.cols.clone()).collect();
        Dlx::new(self.columns.len(), &rows)
    }

    fn trivially_unsat(&self) -> bool {
        self.options.fast_fail && !self.area_ok
    }

    fn tiling(&self, rows: &[usize]) -> Tiling {
        let mut units = self.fixed.clone();
        for &r in rows {
            units.extend_from_slice(&self.rows[r].units);
        }
        units.sort();
        Tiling::new(self.domain.clone(), units)
    }

    /// The matrix after symmetry breaking, plus the first-level branches
    /// (`None` means the root has no branching column: zero or one
    /// solution decided at the root).
    fn root(&self) -> Option<(Dlx, Vec<usize>, Option<Vec<usize>>)> {
        let mut m = self.matrix();
        let mut pinned = Vec::new();
        if self.options.symmetry_break {
            if let Some(least) = m.rows_of_least_column() {
                let &row = least.first()?;
                m.select(row);
                pinned.push(row);
            }
        }
        let branches = m.first_branch();
        Some((m, pinned, branches))
    }

    fn pool(&self) -> Option<rayon::ThreadPool> {
        (self.options.threads > 1)
            .then(|| rayon::ThreadPoolBuilder::new().num_threads(self.options.threads).build().ok())
            .flatten()
    }

    fn branch(m: &Dlx, row: usize) -> Dlx {
        let mut sub = m.clone();
        sub.select(row);
        sub
    }

    pub fn count(&self) -> u64 {
        if self.trivially_unsat() {
            return 0;
        }
        let Some((mut m, _, branches)) = self.root() else { return 0 };
        let Some(branches) = branches else { return m.count() };
        match self.pool() {
            Some(pool) => pool.install(|| branches.par_iter().map(|&r| Self::branch(&m, r).count()).sum()),
            None => m.count(),
        }
    }

    fn first_rows(m: &mut Dlx) -> Option<Vec<usize>> {
        let mut found = None;
        let _ = m.search(&mut |rows: &[usize]| {
            found = Some(rows.to_vec());
            ControlFlow::Break(())
        });
        found
    }

    pub fn solve_first(&self) -> Option<Tiling> {
        if self.trivially_unsat() {
            return None;
        }
        let (mut m, pinned, branches) = self.root()?;
        let rows = match (branches, self.pool()) {
            (Some(branches), Some(pool)) => pool.install(|| {
                branches.par_iter().find_map_first(|&r| {
                    Self::first_rows(&mut Self::branch(&m, r)).map(|mut rows| {
                        rows.insert(0, r);
                        rows
                    })
                })
            }),
            _ => Self::first_rows(&mut m),
        }?;
        Some(self.tiling(&[pinned, rows].concat()))
    }

    fn collect(m: &mut Dlx, limit: usize) -> (Vec<Vec<usize>>, bool) {
        let mut out = Vec::new();
        let flow = m.search(&mut |rows: &[usize]| {
            if out.len() == limit {
                return ControlFlow::Break(());
            }
            out.push(rows.to_vec());
            ControlFlow::Continue(())
        });
        (out, flow.is_continue())
    }

    /// Up to `limit` solutions in search order.
    pub fn enumerate(&self, limit: usize) -> Enumeration {
        let done = |tilings| Enumeration { tilings, stop: EnumStop::Exhausted };
        if self.trivially_unsat() {
            return done(Vec::new());
        }
        let Some((mut m, pinned, branches)) = self.root() else { return done(Vec::new()) };
        let (solutions, complete) = match (branches, self.pool()) {
            (Some(branches), Some(pool)) => {
                let parts: Vec<(Vec<Vec<usize>>, bool)> = pool.install(|| {
                    branches
                        .par_iter()
                        .map(|&r| {
                            let (sols, complete) = Self::collect(&mut Self::branch(&m, r), limit);
                            let sols = sols.into_iter().map(|s| [vec![r], s].concat()).collect();
                            (sols, complete)
                        })
                        .collect()
                });
                let mut all = Vec::new();
                let mut complete = true;
                for (sols, c) in parts {
                    all.extend(sols);
                    complete &= c;
                }
                if all.len() > limit {
                    all.truncate(limit);
                    complete = false;
                }
                (all, complete)
            }
            _ => Self::collect(&mut m, limit),
        };
        let tilings = solutions.iter().map(|s| self.tiling(&[pinned.clone(), s.clone()].concat())).collect();
        Enumeration { tilings, stop: if complete { EnumStop::Exhausted } else { EnumStop::LimitReached } }
    }
}

/// Largest edge-crossing distance between two triangles of one unit.
pub const UNIT_REACH: usize = 4;

/// Extends a fixed patch so that every triangle of `must` is covered,
/// letting pieces overhang into a margin. Returns the added placements of
/// the first extension found, or `None` if the patch cannot be surrounded.
pub fn surround(fixed: &[UnitPlacement], must: &Region, pieces: &PieceSet) -> Option<Vec<UnitPlacement>> {
    let taken: BTreeSet<Wedge> = fixed.iter().flat_map(|u| u.wedges()).collect();
    let window = must.grown(UNIT_REACH);
    let required: Vec<Wedge> = must.wedges().into_iter().filter(|w| !taken.contains(w)).collect();
    let optional: Vec<Wedge> =
        window.wedges().into_iter().filter(|w| !taken.contains(w) && !must.contains(&w.tri)).collect();
    let index: BTreeMap<Wedge, u32> =
        required.iter().chain(&optional).enumerate().map(|(i, w)| (*w, i as u32)).collect();
    let mut placements = Vec::new();
    let mut rows = Vec::new();
    for &anchor in window.iter() {
        for leans in all_lean_configs() {
            let u = UnitPlacement::assemble(anchor, leans);
            if !pieces.allows(&u) {
                continue;
            }
            let Some(mut cols) = u.wedges().iter().map(|w| index.get(w).copied()).collect::<Option<Vec<u32>>>() else {
                continue;
            };
            if cols.iter().all(|&c| c as usize >= required.len()) {
                continue;
            }
            cols.sort_unstable();
            placements.push(u);
            rows.push(cols);
        }
    }
    let mut m = Dlx::with_secondary(required.len(), index.len(), &rows);
    let mut found = None;
    let _ = m.search(&mut |sol: &[usize]| {
        let mut units: Vec<UnitPlacement> = sol.iter().map(|&r| placements[r]).collect();
        units.sort();
        found = Some(units);
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Region, TorusBasis};

    fn windmill_a() -> UnitPlacement {
        UnitPlacement::windmill(Tri::up(0, 0), Chirality::Anterior)
    }

    #[test]
    fn piece_parsing() {
        let p: PieceSet = "ship:A, windmill:P".parse().unwrap();
        assert!(p.allows(&UnitPlacement::ship(Tri::up(0, 0), Chirality::Anterior, 0)));
        assert!(!p.allows(&windmill_a()));
        assert_eq!(p.to_string(), "windmill:P,ship:A");
        assert!("boat:A".parse::<PieceSet>().is_err());
        assert!("ship".parse::<PieceSet>().is_err());
    }

    #[test]
    fn windmill_outline_has_only_the_identity_cover() {
        let d = Domain::Finite(windmill_a().outline());
        let inst = build_instance(&d, &PieceSet::single(UnitKind::Windmill, Chirality::Anterior), &[]).unwrap();
        assert!(inst.rows.iter().any(|r| r.units == vec![windmill_a()]));
        assert!(inst.rows.iter().all(|r| r.cols.len() == 21));
        assert_eq!(inst.count(), 1);
        assert_eq!(inst.solve_first().unwrap().units, vec![windmill_a()]);
        let ships = build_instance(&d, &PieceSet::kind(UnitKind::Ship), &[]).unwrap();
        assert_eq!(ships.count(), 0);
        assert!(ships.solve_first().is_none());
    }

    #[test]
    fn straight_bar_is_unsatisfiable() {
        let bar: Region = (0..4).flat_map(|x| [Tri::up(x, 0), Tri::down(x, 0)]).take(7).collect();
        let inst = build_instance(&Domain::Finite(bar), &PieceSet::all(), &[]).unwrap();
        assert!(inst.rows.is_empty());
        assert!(inst.solve_first().is_none());
    }

    #[test]
    fn fixed_placements() {
        let d = Domain::Finite(windmill_a().outline());
        let inst = build_instance(&d, &PieceSet::all(), &[windmill_a()]).unwrap();
        assert!(inst.columns.is_empty());
        assert_eq!(inst.count(), 1);
        let err = build_instance(&d, &PieceSet::all(), &[windmill_a(), windmill_a()]).unwrap_err();
        assert!(matches!(err, SolverError::FixedConflict(..)));
        let far = windmill_a().translated(5, 5);
        assert!(matches!(build_instance(&d, &PieceSet::all(), &[far]), Err(SolverError::FixedOutside(_))));
    }

    #[test]
    fn surround_a_single_unit() {
        let w = windmill_a();
        let must = w.outline().grown(2);
        let extra = surround(&[w], &must, &PieceSet::all()).unwrap();
        let covered: BTreeSet<Tri> = extra.iter().chain([&w]).flat_map(|u| u.tris()).collect();
        assert!(must.iter().all(|t| covered.contains(t)));
        let wedges: Vec<Wedge> = extra.iter().chain([&w]).flat_map(|u| u.wedges()).collect();
        assert_eq!(wedges.iter().collect::<BTreeSet<_>>().len(), wedges.len());
        assert!(surround(&[w], &must, &PieceSet::default()).is_none());
        assert_eq!(surround(&[w], &w.outline(), &PieceSet::default()), Some(vec![]));
    }

    #[test]
    fn fast_fail_on_area() {
        let r: Region = [Tri::up(0, 0), Tri::down(0, 0)].into_iter().collect();
        let inst = build_instance(&Domain::Finite(r), &PieceSet::all(), &[]).unwrap();
        assert!(!inst.area_ok);
        let inst = inst.with_options(SolveOptions { fast_fail: true, ..Default::default() });
        assert_eq!(inst.count(), 0);
    }

    #[test]
    fn enumeration_limit_is_signalled() {
        let b = TorusBasis::new((7, 0), (1, 1)).unwrap();
        let inst = build_instance(&Domain::Torus(b), &PieceSet::all(), &[]).unwrap();
        let total = inst.count() as usize;
        assert_eq!(total, 14);
        let all = inst.enumerate(total + 5);
        assert_eq!(all.stop, EnumStop::Exhausted);
        assert_eq!(all.tilings.len(), total);
        let some = inst.enumerate(1);
        assert_eq!(some.stop, EnumStop::LimitReached);
        assert_eq!(some.tilings[0], all.tilings[0]);
        assert!(all.tilings.iter().all(|t| t.verify().is_valid()));
    }

    #[test]
    fn threads_do_not_change_results() {
        let b = TorusBasis::new((7, 0), (3, 2)).unwrap();
        let inst = build_instance(&Domain::Torus(b), &PieceSet::all(), &[]).unwrap();
        let par = inst.clone().with_options(SolveOptions { threads: 4, ..Default::default() });
        assert_eq!(inst.count(), par.count());
        assert_eq!(inst.solve_first(), par.solve_first());
        assert_eq!(inst.enumerate(7), par.enumerate(7));
    }
}
