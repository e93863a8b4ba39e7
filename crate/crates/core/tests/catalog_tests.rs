use std::collections::BTreeSet;

use pentatile::catalog::{
    find_flowers, find_pair_classes, first_periodic, generate_preset, preset, preset_tag, preset_text,
    splits_into_rotational_pairs, two_ship_patches, FamilyTag, FlowerSymmetry, PairSymmetry, FLOWER_TILING_DET,
    PRESET_NAMES,
};
use pentatile::format::serialize;
use pentatile::lattice::{Isometry, TorusBasis};
use pentatile::pentagon::{UnitKind, UnitPlacement};
use pentatile::solver::PieceSet;
use pentatile::tiling::{Domain, Tiling};

fn same_shape_translate(a: &UnitPlacement, b: &UnitPlacement) -> bool {
    a.leans() == b.leans() && a.anchor().orient == b.anchor().orient
}

/// Whether some translate of `patch` sits in the 3×3 lift of `t`.
fn contains_translate(t: &Tiling, patch: &[UnitPlacement]) -> bool {
    let lifted = t.lift(3, 3).unwrap();
    let units: BTreeSet<&UnitPlacement> = lifted.units.iter().collect();
    lifted.units.iter().filter(|u| same_shape_translate(u, &patch[0])).any(|u| {
        let (dx, dy) = (u.anchor().x - patch[0].anchor().x, u.anchor().y - patch[0].anchor().y);
        patch.iter().all(|p| units.contains(&p.translated(dx, dy)))
    })
}

#[test]
fn presets_are_valid_and_tagged() {
    for name in PRESET_NAMES {
        let t = preset(name).unwrap();
        assert!(t.verify().is_valid(), "{name}");
        let tag = preset_tag(name).unwrap();
        assert!(tag.consistent_with(&t.stats()), "{name}: {tag}");
    }
    let windmill = preset("windmill-min").unwrap();
    assert_eq!(FamilyTag::from_stats(&windmill.stats()), FamilyTag::WindmillOnly);
    let rice = preset("rice1995-like").unwrap();
    assert_eq!(rice.stats().kind_count(UnitKind::Windmill), 0);
    assert_eq!(rice.units.len(), 6);
    assert!(splits_into_rotational_pairs(&rice));
}

#[test]
fn presets_regenerate_byte_for_byte() {
    for name in PRESET_NAMES {
        let fresh = generate_preset(name).unwrap();
        assert_eq!(serialize(&fresh), preset_text(name).unwrap(), "{name}");
    }
}

#[test]
fn smallest_windmill_only_tiling_has_two_units() {
    let found = first_periodic(&PieceSet::kind(UnitKind::Windmill), 84).unwrap().unwrap();
    assert_eq!(found.basis.det().abs(), 7);
    assert_eq!(found.tiling.units.len(), 2);
    assert_eq!(found.tag, FamilyTag::WindmillOnly);
    assert!(found.tiling.verify().is_valid());
    let ships = first_periodic(&PieceSet::kind(UnitKind::Ship), 84).unwrap().unwrap();
    assert_eq!(ships.tag, FamilyTag::ShipOnly);
    assert!(ships.tiling.verify().is_valid());
}

#[test]
fn two_ship_pair_census() {
    assert_eq!(two_ship_patches().len(), 47);
    let classes = find_pair_classes(FLOWER_TILING_DET).unwrap();
    assert_eq!(classes.len(), 32);
    let count =
        |s: PairSymmetry, alone: bool| classes.iter().filter(|c| c.symmetry == s && c.tiles_alone() == alone).count();
    assert_eq!((count(PairSymmetry::Rotational, true), count(PairSymmetry::Rotational, false)), (6, 2));
    assert_eq!((count(PairSymmetry::Crooked, true), count(PairSymmetry::Crooked, false)), (0, 15));
    assert_eq!((count(PairSymmetry::Other, true), count(PairSymmetry::Other, false)), (0, 9));
    for c in &classes {
        assert!(c.witness.verify().is_valid(), "{}", c.label);
        assert_eq!(c.witness.stats().kind_count(UnitKind::Windmill), 0);
        assert!(contains_translate(&c.witness, &c.key), "{}", c.label);
        if let Some(t) = &c.alone {
            assert!(t.verify().is_valid());
            let n0 = t.units.iter().filter(|u| same_shape_translate(u, &c.key[0])).count();
            let n1 = t.units.iter().filter(|u| same_shape_translate(u, &c.key[1])).count();
            if same_shape_translate(&c.key[0], &c.key[1]) {
                assert_eq!(n0, t.units.len());
            } else {
                assert_eq!((n0, n1), (t.units.len() / 2, t.units.len() / 2));
            }
        }
    }
}

#[test]
fn compact_flowers_are_sixfold() {
    for (kind, lattice) in [(UnitKind::Ship, ((21, 0), (16, 1))), (UnitKind::Windmill, ((21, 0), (4, 1)))] {
        let flowers = find_flowers(kind);
        assert_eq!(flowers.len(), 1, "{kind}");
        let f = &flowers[0];
        assert_eq!(f.symmetry, FlowerSymmetry::C6);
        assert!(f.tiling().verify().is_valid());
        let units: BTreeSet<&UnitPlacement> = f.units.iter().collect();
        let turn = Isometry::rotation_about(f.center, 1).unwrap();
        let turned: Vec<UnitPlacement> = f.units.iter().map(|u| u.transformed(&turn)).collect();
        assert_eq!(turned.iter().collect::<BTreeSet<_>>(), units);
        assert!(f.units.iter().all(|u| u.kind() == kind));
        let b = f.lattice.expect("the flower tiles by translation");
        assert!(b.same_lattice(&TorusBasis::new(lattice.0, lattice.1).unwrap()));
        let t = f.lattice_tiling().unwrap();
        assert!(t.verify().is_valid());
        assert!(contains_translate(&t, &f.units));
        // translates of the flower alone: the single copy is a fundamental domain
        let copy = Tiling::new(Domain::Torus(b), f.units.clone());
        assert!(copy.verify().is_valid());
    }
}

#[test]
fn flower_lattice_preset_holds_the_ship_flower() {
    let f = &find_flowers(UnitKind::Ship)[0];
    assert!(contains_translate(&preset("flower-lattice").unwrap(), &f.units));
}
