//! Reference tiling counter: plain backtracking over whole triangles, no
//! wedges, no dancing links and no column heuristics.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pentatile::lattice::Tri;
use pentatile::pentagon::{Lean, UnitPlacement};
use pentatile::solver::PieceSet;

fn lean_configs() -> Vec<[Lean; 3]> {
    (0..8u8).map(|m| [0, 1, 2].map(|e| if m >> e & 1 == 1 { Lean::R } else { Lean::L })).collect()
}

pub fn naive_count(domain: &BTreeSet<Tri>, pieces: &PieceSet) -> u64 {
    let mut by_tri: BTreeMap<Tri, Vec<[Tri; 7]>> = BTreeMap::new();
    for &anchor in domain {
        for leans in lean_configs() {
            let u = UnitPlacement::assemble(anchor, leans);
            if !pieces.allows(&u) {
                continue;
            }
            let tris = u.tris();
            if tris.iter().all(|t| domain.contains(t)) {
                for t in tris {
                    by_tri.entry(t).or_default().push(tris);
                }
            }
        }
    }
    fn go(free: &mut BTreeSet<Tri>, by_tri: &BTreeMap<Tri, Vec<[Tri; 7]>>) -> u64 {
        let Some(&first) = free.iter().next() else { return 1 };
        let mut total = 0;
        for tris in by_tri.get(&first).into_iter().flatten() {
            if tris.iter().all(|t| free.contains(t)) {
                for t in tris {
                    free.remove(t);
                }
                total += go(free, by_tri);
                free.extend(tris.iter().copied());
            }
        }
        total
    }
    let mut free = domain.clone();
    go(&mut free, &by_tri)
}

/// Seeded corpus of small finite domains (at most 28 triangles): random
/// connected blobs alternating with unions of non-overlapping units.
pub fn fuzz_corpus(seed: u64, n: usize) -> Vec<BTreeSet<Tri>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs = lean_configs();
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        if out.len() % 2 == 0 {
            let size = rng.gen_range(1..=28);
            let mut tris = vec![Tri::up(0, 0)];
            while tris.len() < size {
                let t = tris[rng.gen_range(0..tris.len())].neighbor(rng.gen_range(0..3));
                if !tris.contains(&t) {
                    tris.push(t);
                }
            }
            out.push(tris.into_iter().collect());
        } else {
            let units = rng.gen_range(1..=4);
            let mut region: BTreeSet<Tri> =
                UnitPlacement::assemble(Tri::up(0, 0), configs[rng.gen_range(0..8)]).tris().into_iter().collect();
            let mut tries = 0;
            while region.len() < 7 * units && tries < 200 {
                tries += 1;
                let near: Vec<Tri> =
                    region.iter().flat_map(|t| t.neighbors()).filter(|t| !region.contains(t)).collect();
                let anchor = near[rng.gen_range(0..near.len())];
                let tris = UnitPlacement::assemble(anchor, configs[rng.gen_range(0..8)]).tris();
                if tris.iter().all(|t| !region.contains(t)) {
                    region.extend(tris);
                }
            }
            out.push(region);
        }
    }
    out
}
