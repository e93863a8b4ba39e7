use std::collections::BTreeSet;

use proptest::prelude::*;

use pentatile::catalog::{preset, PRESET_NAMES};
use pentatile::format::{parse, serialize};
use pentatile::lattice::{EPoint, Region, Tri};
use pentatile::pentagon::{Lean, UnitPlacement};
use pentatile::tiling::{Domain, Tiling};

/// Validity by sampling: every wedge interior point near the tiling is
/// located in the pentagons by exact point-in-polygon tests, and must be
/// covered once inside the domain and never outside it.
fn rasterized_valid(t: &Tiling) -> bool {
    let Domain::Finite(domain) = &t.domain else { panic!("finite only") };
    let polys: Vec<[EPoint; 5]> = t.units.iter().flat_map(|u| u.pentagons()).map(|p| p.vertices()).collect();
    let mut window: Region = domain.iter().copied().chain(t.units.iter().flat_map(|u| u.tris())).collect();
    window = window.grown(1);
    for tri in window.iter() {
        for w in tri.wedges() {
            let [a, b, c] = w.vertices();
            // three times the wedge centroid, compared against tripled corners
            let p = a + b + c;
            let hits = polys
                .iter()
                .filter(|poly| {
                    (0..5).all(|i| {
                        let (s, e) = (poly[i], poly[(i + 1) % 5]);
                        let (s3, e3) = (s + s + s, e + e + e);
                        (e3 - s3).cross(p - s3) > 0
                    })
                })
                .count();
            let inside = domain.contains(tri);
            if hits != usize::from(inside) {
                return false;
            }
        }
    }
    true
}

fn bases() -> Vec<Tiling> {
    PRESET_NAMES.iter().map(|n| preset(n).unwrap().lift(2, 2).unwrap()).collect()
}

#[derive(Debug, Clone)]
enum Mutation {
    Keep,
    Remove(prop::sample::Index),
    Add(i32, i32, bool, u8),
    Shift(prop::sample::Index, i32, i32),
    Relean(prop::sample::Index, u8),
}

fn mutation() -> impl Strategy<Value = Mutation> {
    prop_oneof![
        Just(Mutation::Keep),
        any::<prop::sample::Index>().prop_map(Mutation::Remove),
        (-4i32..20, -4i32..20, any::<bool>(), 0u8..8).prop_map(|(x, y, u, l)| Mutation::Add(x, y, u, l)),
        (any::<prop::sample::Index>(), -2i32..3, -2i32..3).prop_map(|(i, x, y)| Mutation::Shift(i, x, y)),
        (any::<prop::sample::Index>(), 0u8..8).prop_map(|(i, l)| Mutation::Relean(i, l)),
    ]
}

fn leans(m: u8) -> [Lean; 3] {
    [0, 1, 2].map(|e| if m >> e & 1 == 1 { Lean::R } else { Lean::L })
}

fn apply(t: &Tiling, ms: &[Mutation]) -> Tiling {
    let mut units = t.units.clone();
    for m in ms {
        match m {
            Mutation::Keep => {}
            Mutation::Remove(i) => {
                units.remove(i.index(units.len()));
            }
            Mutation::Add(x, y, u, l) => {
                let anchor = if *u { Tri::up(*x, *y) } else { Tri::down(*x, *y) };
                units.push(UnitPlacement::assemble(anchor, leans(*l)));
            }
            Mutation::Shift(i, dx, dy) => {
                let k = i.index(units.len());
                units[k] = units[k].translated(*dx, *dy);
            }
            Mutation::Relean(i, l) => {
                let k = i.index(units.len());
                units[k] = UnitPlacement::assemble(units[k].anchor(), leans(*l));
            }
        }
    }
    Tiling::new(t.domain.clone(), units)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verify_matches_the_rasterizer(base in 0usize..3, ms in prop::collection::vec(mutation(), 0..3)) {
        let t = apply(&bases()[base], &ms);
        prop_assert_eq!(t.verify().is_valid(), rasterized_valid(&t));
    }

    #[test]
    fn serialization_round_trips(base in 0usize..3, ms in prop::collection::vec(mutation(), 0..3), torus in any::<bool>(), rot in 0usize..50) {
        let t = if torus {
            let p = preset(PRESET_NAMES[base]).unwrap();
            let units = p.units.clone();
            Tiling::new(p.domain, units)
        } else {
            apply(&bases()[base], &ms)
        };
        let text = serialize(&t);
        let back = parse(&text).unwrap();
        let sorted = |t: &Tiling| t.units.iter().cloned().collect::<BTreeSet<_>>();
        prop_assert_eq!(&back.domain, &t.domain);
        prop_assert_eq!(sorted(&back), sorted(&t));
        let mut shuffled = t.clone();
        let n = shuffled.units.len().max(1);
        shuffled.units.rotate_left(rot % n);
        prop_assert_eq!(serialize(&shuffled), text);
    }
}

#[test]
fn deleting_a_unit_opens_21_gaps() {
    for name in PRESET_NAMES {
        let mut t = preset(name).unwrap();
        t.units.pop();
        assert_eq!(t.verify().violations().len(), 21, "{name}");
    }
}

#[test]
fn torus_area_identity_on_presets() {
    for name in PRESET_NAMES {
        let t = preset(name).unwrap();
        let Domain::Torus(b) = t.domain else { panic!() };
        assert_eq!(21 * t.units.len() as i64, 6 * b.det().abs());
        assert_eq!(b.det().abs() % 7, 0);
    }
}
