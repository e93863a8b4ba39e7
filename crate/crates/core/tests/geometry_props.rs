use std::collections::BTreeSet;

use proptest::prelude::*;

use pentatile::lattice::{
    canonical_region, canonical_region_achiral, dist9, enumerate_polyiamonds, twice_area, EPoint, Isometry, Orient,
    Region, Tri,
};
use pentatile::pentagon::{interior_angles, Chirality, Lean, UnitKind, UnitPlacement};

fn isometry() -> impl Strategy<Value = Isometry> {
    (0u8..6, any::<bool>(), -20i32..20, -20i32..20)
        .prop_map(|(r, m, dx, dy)| Isometry::translation(dx, dy).compose(&Isometry::linear(r, m)))
}

fn point() -> impl Strategy<Value = EPoint> {
    (-60i64..60, -60i64..60).prop_map(|(p, q)| EPoint::new(p, q))
}

fn tri() -> impl Strategy<Value = Tri> {
    (-10i32..10, -10i32..10, any::<bool>()).prop_map(|(x, y, u)| Tri::new(x, y, if u { Orient::U } else { Orient::D }))
}

fn leans() -> impl Strategy<Value = [Lean; 3]> {
    (0u8..8).prop_map(|m| [0, 1, 2].map(|e| if m >> e & 1 == 1 { Lean::R } else { Lean::L }))
}

fn unit() -> impl Strategy<Value = UnitPlacement> {
    (tri(), leans()).prop_map(|(t, l)| UnitPlacement::assemble(t, l))
}

/// A connected region grown from the origin by a sequence of neighbour picks.
fn region() -> impl Strategy<Value = Region> {
    prop::collection::vec((any::<prop::sample::Index>(), 0u8..3), 0..14).prop_map(|steps| {
        let mut tris = vec![Tri::up(0, 0)];
        for (i, e) in steps {
            let n = i.get(&tris).neighbor(e);
            if !tris.contains(&n) {
                tris.push(n);
            }
        }
        tris.into_iter().collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn composition_and_inverse(g in isometry(), h in isometry(), x in point()) {
        prop_assert_eq!(g.apply_point(h.apply_point(x)), g.compose(&h).apply_point(x));
        prop_assert_eq!(g.inverse().apply_point(g.apply_point(x)), x);
    }

    #[test]
    fn distances_are_preserved(g in isometry(), a in point(), b in point()) {
        prop_assert_eq!(dist9(g.apply_point(a), g.apply_point(b)), dist9(a, b));
    }
}

proptest! {
    #[test]
    fn wedges_partition_their_triangle(t in tri()) {
        let total: i64 = t.wedges().iter().map(|w| twice_area(&w.vertices())).sum();
        prop_assert_eq!(total, twice_area(&t.vertices()));
        prop_assert!(t.wedges().iter().all(|w| twice_area(&w.vertices()) > 0));
    }

    #[test]
    fn canonical_keys_are_isometry_invariant(r in region(), g in isometry()) {
        let image = r.transformed(&g);
        prop_assert_eq!(canonical_region_achiral(&image), canonical_region_achiral(&r));
        if !g.reflects() {
            prop_assert_eq!(canonical_region(&image), canonical_region(&r));
        }
    }

    #[test]
    fn unit_pentagons_meet_in_a_full_turn(u in unit()) {
        let centre = u.anchor().centroid();
        let mut turn = 0;
        for p in u.pentagons() {
            let v = p.vertices();
            prop_assert_eq!(v[0], centre);
            let angles = interior_angles(&v).expect("multiples of 30");
            prop_assert_eq!(angles[0], 120);
            turn += angles[0];
        }
        prop_assert_eq!(turn, 360);
    }

    #[test]
    fn pentagon_area_is_seven_wedges(u in unit()) {
        for p in u.pentagons() {
            let wedge = twice_area(&p.wedges()[0].vertices());
            prop_assert_eq!(twice_area(&p.vertices()), 7 * wedge);
            prop_assert!(p.wedges().iter().all(|w| twice_area(&w.vertices()) == wedge));
        }
    }

    #[test]
    fn only_windmills_have_threefold_outlines(u in unit()) {
        let turn = Isometry::rotation_about(u.anchor().centroid(), 2).expect("a centroid is a 3-fold centre");
        let symmetric = u.outline().transformed(&turn) == u.outline();
        prop_assert_eq!(symmetric, u.kind() == UnitKind::Windmill);
    }

    #[test]
    fn reflections_swap_chirality(u in unit(), g in isometry()) {
        let image = u.transformed(&g);
        let expected = if g.reflects() { u.chirality().mirror() } else { u.chirality() };
        prop_assert_eq!(image.chirality(), expected);
        prop_assert_eq!(image.kind(), u.kind());
        prop_assert_eq!(canonical_region_achiral(&image.outline()), canonical_region_achiral(&u.outline()));
    }
}

#[test]
fn polyiamond_growth_loses_nothing() {
    let mut previous = enumerate_polyiamonds(1).unwrap();
    for n in 2..=7 {
        let current = enumerate_polyiamonds(n).unwrap();
        for key in &previous {
            let tris: BTreeSet<Tri> = key.0.iter().copied().collect();
            let extends = tris.iter().flat_map(|t| t.neighbors()).filter(|t| !tris.contains(t)).any(|t| {
                let grown: Region = tris.iter().copied().chain([t]).collect();
                current.contains(&canonical_region_achiral(&grown))
            });
            assert!(extends, "{n}: {key} has no extension");
        }
        previous = current;
    }
}

#[test]
fn anterior_windmill_mirrors_to_posterior() {
    let a = UnitPlacement::windmill(Tri::up(0, 0), Chirality::Anterior);
    let p = a.transformed(&Isometry::linear(0, true));
    assert_eq!(p.chirality(), Chirality::Posterior);
    assert_eq!(p.kind(), UnitKind::Windmill);
}
