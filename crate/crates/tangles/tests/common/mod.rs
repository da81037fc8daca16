//! Corpus builders shared by the integration suites: a seeded RNG,
//! exhaustive small-graph enumeration, and random submodular systems.

#![allow(dead_code)]

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::Arc;
use tangles::instances::bipartition::bipartition_universe;
use tangles::instances::circle::{circle_system, CyclicOrder};
use tangles::instances::graph::{clique_system, Graph};
use tangles::instances::order::triple_count_order;
use tangles::{Orientation, SepId, SeparationSystem, Subset, Universe};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One representative per isomorphism class of all non-complete graphs on
/// exactly `n` vertices, disconnected ones included.
pub fn noncomplete_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(u32, u32)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if edges.len() == pairs.len() {
            continue;
        }
        let g = Graph::new(n, &edges).unwrap();
        if seen.insert(g.canonical_code()) {
            out.push(g);
        }
    }
    out
}

/// One representative per isomorphism class of the connected non-complete
/// graphs on exactly `n` vertices.
pub fn connected_noncomplete_graphs(n: usize) -> Vec<Graph> {
    noncomplete_graphs(n)
        .into_iter()
        .filter(|g| g.is_connected())
        .collect()
}

/// Every connected non-complete graph on three to six vertices up to
/// isomorphism, plus two hundred random seven-vertex ones.
pub fn graph_corpus() -> Vec<Graph> {
    let mut out: Vec<Graph> = (3..=6).flat_map(connected_noncomplete_graphs).collect();
    let mut r = rng(0x6a71);
    for _ in 0..200 {
        out.push(random_connected_noncomplete_graph(&mut r, 7));
    }
    out
}

pub fn random_connected_noncomplete_graph(r: &mut ChaCha8Rng, n: usize) -> Graph {
    loop {
        let mut edges = Vec::new();
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                if r.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let g = Graph::new(n, &edges).unwrap();
        if g.is_connected() && !g.is_complete() && clique_system(&g).is_ok() {
            return g;
        }
    }
}

/// A random inversion-closed subsystem, patched up to submodularity by
/// inserting a corner for each violating pair. Terminates because the
/// member set grows strictly within a finite universe.
pub fn random_submodular_system(r: &mut ChaCha8Rng, u: &Arc<Universe>) -> SeparationSystem {
    let seed: Vec<SepId> = u.reps().iter().copied().filter(|_| r.gen_bool(0.4)).collect();
    let mut sys = SeparationSystem::new(u.clone(), seed).unwrap();
    while let Some((s, t)) = sys.submodular_violation() {
        let add = if r.gen_bool(0.5) { u.join(s, t) } else { u.meet(s, t) };
        let mut ids = sys.members().to_vec();
        ids.push(add);
        sys = SeparationSystem::new(u.clone(), ids).unwrap();
    }
    sys
}

pub fn random_submodular_systems(n: usize, count: usize, seed: u64) -> Vec<SeparationSystem> {
    let u = bipartition_universe(n).unwrap();
    let mut r = rng(seed);
    (0..count).map(|_| random_submodular_system(&mut r, &u)).collect()
}

/// A random subset of the universe, not inversion-closed, patched up to
/// submodularity as a plain lattice subset.
pub fn random_submodular_lattice_subset(r: &mut ChaCha8Rng, u: &Universe) -> Vec<SepId> {
    let mut m: BTreeSet<SepId> = u.ids().filter(|_| r.gen_bool(0.5)).collect();
    loop {
        let list: Vec<SepId> = m.iter().copied().collect();
        let mut bad = None;
        'scan: for (i, &x) in list.iter().enumerate() {
            for &y in &list[i..] {
                if !m.contains(&u.join(x, y)) && !m.contains(&u.meet(x, y)) {
                    bad = Some((x, y));
                    break 'scan;
                }
            }
        }
        match bad {
            Some((x, y)) => {
                m.insert(if r.gen_bool(0.5) { u.join(x, y) } else { u.meet(x, y) });
            }
            None => return m.into_iter().collect(),
        }
    }
}

pub fn random_criteria(r: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Subset> {
    (0..count)
        .map(|_| Subset::from_elems((0..n as u32).filter(|_| r.gen_bool(0.5))))
        .collect()
}

pub fn random_cycle(r: &mut ChaCha8Rng, n: usize) -> CyclicOrder {
    let mut seq: Vec<u32> = (0..n as u32).collect();
    seq.shuffle(r);
    CyclicOrder::new(seq).unwrap()
}

/// Fifty circle systems on four to six points: random cyclic orders,
/// random triple-count order functions, and a random integer threshold
/// from one up to just past the maximum order.
pub fn circle_corpus() -> Vec<(Arc<Universe>, SeparationSystem)> {
    let mut r = rng(0xc17c);
    let mut out = Vec::new();
    for (n, count) in [(4usize, 17usize), (5, 17), (6, 16)] {
        let u = bipartition_universe(n).unwrap();
        for _ in 0..count {
            let cyc = random_cycle(&mut r, n);
            let crit_count = r.gen_range(1..=4);
            let crit = random_criteria(&mut r, n, crit_count);
            let ord = triple_count_order(&u, &crit).unwrap();
            let k = r.gen_range(1..=ord.max_value() as i64 + 1) as f64;
            out.push((u.clone(), circle_system(&u, &cyc, &ord, k).unwrap()));
        }
    }
    out
}

/// Orientations as a canonical sorted set, for comparing enumerations.
pub fn orientation_set(mut v: Vec<Orientation>) -> Vec<Orientation> {
    v.sort();
    v.dedup();
    v
}
