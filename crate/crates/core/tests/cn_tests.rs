use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;

use pentatile::catalog::{find_flowers, find_pair_classes, preset, FLOWER_TILING_DET, PRESET_NAMES};
use pentatile::cn::{
    classify_nonagon, cn_template, enumerate_cn_patterns, find_reversible, flip, flip_walk, mirror_symmetries,
    CnCatalog, RegionKind, DEFAULT_MAX_UNITS, DEFAULT_PATTERN_UNITS, SURROUND_STEPS,
};
use pentatile::format::serialize;
use pentatile::lattice::{is_convex, Tri, Wedge};
use pentatile::pentagon::{Chirality, PentagonPlacement, UnitKind, UnitPlacement};
use pentatile::tiling::{Domain, Tiling};

fn catalog() -> &'static CnCatalog {
    static C: OnceLock<CnCatalog> = OnceLock::new();
    C.get_or_init(|| enumerate_cn_patterns(DEFAULT_PATTERN_UNITS, SURROUND_STEPS))
}

/// Every finite witness the catalog produces: preset lifts, pattern
/// neighbourhoods, flowers and pair witnesses.
fn witnesses() -> &'static Vec<Tiling> {
    static W: OnceLock<Vec<Tiling>> = OnceLock::new();
    W.get_or_init(|| {
        let mut out: Vec<Tiling> = PRESET_NAMES.iter().map(|n| preset(n).unwrap().lift(3, 3).unwrap()).collect();
        for p in &catalog().patterns {
            out.push(p.tiling(true));
            out.push(p.tiling(false));
        }
        for k in [UnitKind::Windmill, UnitKind::Ship] {
            out.extend(find_flowers(k).iter().map(|f| f.tiling()));
        }
        for c in find_pair_classes(FLOWER_TILING_DET).unwrap().iter().take(4) {
            out.push(c.witness.lift(3, 3).unwrap());
        }
        out
    })
}

#[test]
fn nonagon_unit_is_three_same_lean_pentagons() {
    let s = cn_template();
    assert_eq!(s.pentagons.len(), 3);
    assert!(s.pentagons.iter().all(|p| p.chirality() == Chirality::Anterior));
    let c = is_convex(&s.outline).unwrap();
    assert!(c.convex);
    assert_eq!(c.vertices, 9);
    let wedges: BTreeSet<Wedge> = s.pentagons.iter().flat_map(|p| p.wedges()).collect();
    assert_eq!(wedges.len(), 21);
    assert_eq!(mirror_symmetries(&wedges).len(), 3);
}

#[test]
fn pattern_census() {
    assert!(enumerate_cn_patterns(2, SURROUND_STEPS).patterns.is_empty());
    let c = catalog();
    assert_eq!(c.local_classes, 16);
    assert_eq!(c.patterns.len(), 7);
    assert_eq!(c.ship_only(), 2);
    let labels: Vec<&str> = c.patterns.iter().map(|p| p.label.as_str()).collect();
    assert_eq!(labels, ["N1", "N2", "N3", "N4", "N5", "N6", "N7"]);
    // one more step of surround changes nothing
    let wider = enumerate_cn_patterns(DEFAULT_PATTERN_UNITS, SURROUND_STEPS + 1);
    let keys = |c: &CnCatalog| c.patterns.iter().map(|p| p.key.clone()).collect::<Vec<_>>();
    assert_eq!(keys(&wider), keys(c));
}

#[test]
fn pattern_pairing() {
    for p in &catalog().patterns {
        let c = is_convex(&p.outline).unwrap();
        assert!(c.convex && c.vertices == 9);
        let image: BTreeSet<PentagonPlacement> = p.anterior_pentagons.iter().map(|q| q.transformed(&p.sigma)).collect();
        assert_eq!(image, p.posterior_pentagons.iter().copied().collect());
        assert!(p.anterior_pentagons.iter().all(|q| q.chirality() == Chirality::Anterior));
        assert!(p.posterior_pentagons.iter().all(|q| q.chirality() == Chirality::Posterior));
        assert_ne!(p.anterior_units, p.posterior_units);
        assert_eq!(p.anterior_units.len(), p.posterior_units.len());
        let cover = |us: &[UnitPlacement]| us.iter().flat_map(|u| u.wedges()).collect::<BTreeSet<_>>();
        assert_eq!(cover(&p.anterior_units), cover(&p.posterior_units));
        assert!(p.tiling(true).verify().is_valid(), "{}", p.label);
        assert!(p.tiling(false).verify().is_valid(), "{}", p.label);
        assert!(p.index_line().starts_with(&p.label));
    }
}

#[test]
fn flowers_and_single_units() {
    let windmill = &find_flowers(UnitKind::Windmill)[0];
    let regions = find_reversible(&windmill.tiling(), 6).unwrap();
    assert_eq!(regions.len(), 1);
    assert_eq!(regions[0].units, vec![0, 1, 2, 3, 4, 5]);
    let ship = &find_flowers(UnitKind::Ship)[0];
    assert!(find_reversible(&ship.tiling(), 6).unwrap().is_empty());
    let w = UnitPlacement::windmill(Tri::up(0, 0), Chirality::Anterior);
    let single = Tiling::new(Domain::Finite(w.outline()), vec![w]);
    assert!(find_reversible(&single, 6).unwrap().is_empty());
}

#[test]
fn nonagons_in_the_presets() {
    let c = catalog();
    let count = |name: &str| {
        let t = preset(name).unwrap().lift(3, 3).unwrap();
        let rs = find_reversible(&t, DEFAULT_MAX_UNITS).unwrap();
        let nonagons: Vec<_> = rs.iter().filter(|r| r.kind == RegionKind::ConvexNonagon).collect();
        let labels: BTreeSet<String> =
            nonagons.iter().filter_map(|r| classify_nonagon(r, c)).map(|p| p.label.clone()).collect();
        (nonagons.len(), labels)
    };
    assert_eq!(count("rice1995-like"), (0, BTreeSet::new()));
    assert_eq!(count("flower-lattice"), (10, BTreeSet::from(["N1".to_string()])));
    assert_eq!(count("windmill-min").0, 0);
}

#[test]
fn walks_are_reproducible_and_self_avoiding() {
    let t = preset("flower-lattice").unwrap().lift(3, 3).unwrap();
    let a = flip_walk(&t, 8, 42, 3).unwrap();
    let b = flip_walk(&t, 8, 42, 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.len(), 9);
    let distinct: BTreeSet<String> = a.iter().map(|t| serialize(&t.canonical())).collect();
    assert_eq!(distinct.len(), a.len());
    assert!(a.iter().all(|t| t.verify().is_valid()));
    assert_eq!(flip_walk(&t, 0, 1, 3).unwrap(), vec![t]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn flips_are_valid_local_involutions(w in 0usize..64, pick in any::<prop::sample::Index>()) {
        let t = &witnesses()[w % witnesses().len()];
        let regions = find_reversible(t, 4).unwrap();
        prop_assume!(!regions.is_empty());
        let r = pick.get(&regions);
        let f = flip(t, r).unwrap();
        prop_assert!(f.verify().is_valid());
        prop_assert_ne!(&f, t);
        for (i, (a, b)) in t.units.iter().zip(&f.units).enumerate() {
            if !r.units.contains(&i) {
                prop_assert_eq!(a, b);
            }
        }
        let anterior = |ps: &[PentagonPlacement]| ps.iter().filter(|p| p.chirality() == Chirality::Anterior).count();
        let after = r.flipped_pentagons();
        prop_assert!(r.sigma.reflects());
        prop_assert_eq!(anterior(&r.pentagons), r.pentagons.len() - anterior(&after));
        let back = r.reversed();
        prop_assert!(find_reversible(&f, 4).unwrap().contains(&back));
        prop_assert_eq!(&flip(&f, &back).unwrap(), t);
    }
}
