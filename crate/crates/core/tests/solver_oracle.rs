#[path = "support/naive.rs"]
mod naive;

use std::collections::BTreeSet;

use proptest::prelude::*;

use pentatile::lattice::{Region, TorusBasis, Tri};
use pentatile::pentagon::{Chirality, UnitKind};
use pentatile::solver::{build_instance, PieceSet, SolveOptions};
use pentatile::tiling::Domain;

use naive::{fuzz_corpus, naive_count};

fn finite(tris: &BTreeSet<Tri>) -> Domain {
    Domain::Finite(tris.iter().copied().collect::<Region>())
}

fn piece_sets() -> Vec<PieceSet> {
    vec![
        PieceSet::all(),
        PieceSet::kind(UnitKind::Ship),
        PieceSet::kind(UnitKind::Windmill),
        PieceSet::single(UnitKind::Ship, Chirality::Posterior),
    ]
}

#[test]
fn counts_match_the_naive_counter() {
    let corpus = fuzz_corpus(7, 240);
    let mut nonzero = 0;
    for (i, tris) in corpus.iter().enumerate() {
        let pieces = &piece_sets()[i % 4];
        let expected = naive_count(tris, pieces);
        let got = build_instance(&finite(tris), pieces, &[]).unwrap().count();
        assert_eq!(got, expected, "domain {i} ({} tris, pieces {pieces})", tris.len());
        nonzero += usize::from(expected > 0);
    }
    // the corpus must exercise satisfiable instances, not just empty ones
    assert!(nonzero >= 60, "only {nonzero} satisfiable domains");
}

#[test]
fn emitted_tilings_verify() {
    for tris in fuzz_corpus(11, 60) {
        let inst = build_instance(&finite(&tris), &PieceSet::all(), &[]).unwrap();
        let e = inst.enumerate(50);
        for t in &e.tilings {
            assert!(t.verify().is_valid());
        }
        if let Some(t) = inst.solve_first() {
            assert_eq!(Some(&t), e.tilings.first());
        }
    }
}

#[test]
fn enumeration_order_ignores_thread_count() {
    for (a, b, c, d) in [(7, 0, 1, 1), (7, 0, 3, 2), (1, 0, 3, 7)] {
        let domain = Domain::Torus(TorusBasis::new((a, b), (c, d)).unwrap());
        let inst = build_instance(&domain, &PieceSet::all(), &[]).unwrap();
        let one = inst.clone().with_options(SolveOptions { threads: 1, ..Default::default() });
        let four = inst.with_options(SolveOptions { threads: 4, ..Default::default() });
        assert_eq!(one.enumerate(usize::MAX), four.enumerate(usize::MAX));
        assert_eq!(one.count(), four.count());
        assert_eq!(one.solve_first(), four.solve_first());
    }
}

#[test]
fn torus_solutions_lift_to_valid_blocks() {
    for det in [7, 14] {
        for b in TorusBasis::all_with_det(det) {
            let inst = build_instance(&Domain::Torus(b), &PieceSet::all(), &[]).unwrap();
            for t in inst.enumerate(20).tilings {
                assert!(t.verify().is_valid());
                assert_eq!(21 * t.units.len() as i64, 6 * b.det().abs());
                let lifted = t.lift(3, 3).unwrap();
                assert_eq!(lifted.units.len(), 9 * t.units.len());
                assert!(lifted.verify().is_valid(), "lift of {b}");
            }
        }
    }
}

#[test]
fn symmetry_break_pins_the_least_placement() {
    let domain = Domain::Torus(TorusBasis::new((7, 0), (1, 1)).unwrap());
    let inst = build_instance(&domain, &PieceSet::all(), &[]).unwrap();
    let pinned = inst.clone().with_options(SolveOptions { symmetry_break: true, ..Default::default() });
    let all = inst.enumerate(usize::MAX).tilings;
    let kept = pinned.enumerate(usize::MAX).tilings;
    assert_eq!(pinned.count() as usize, kept.len());
    assert!(!kept.is_empty() && kept.len() < all.len());
    assert!(kept.iter().all(|t| all.contains(t)));
    let empty = build_instance(&Domain::Finite(Region::new()), &PieceSet::all(), &[]).unwrap();
    assert_eq!(empty.with_options(SolveOptions { symmetry_break: true, ..Default::default() }).count(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fast_fail_agrees_with_search(seed in 0u64..10_000) {
        let tris = &fuzz_corpus(seed, 1)[0];
        let inst = build_instance(&finite(tris), &PieceSet::all(), &[]).unwrap();
        let fast = inst.clone().with_options(SolveOptions { fast_fail: true, ..Default::default() });
        prop_assert_eq!(fast.count(), inst.count());
        prop_assert_eq!(inst.count(), naive_count(tris, &PieceSet::all()));
    }
}
