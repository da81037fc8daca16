//! Shared fixtures for the benchmark suite.

use std::sync::Arc;
use tangles::instances::bipartition::bipartition_universe;
use tangles::instances::circle::{circle_system, CyclicOrder};
use tangles::instances::graph::Graph;
use tangles::instances::order::triple_count_order;
use tangles::{SeparationSystem, Subset, Universe};

/// The n-cycle; the smallest graphs whose clique system has a tangle.
pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|v| (v, (v + 1) % n as u32)).collect();
    Graph::new(n, &edges).expect("cycle")
}

/// A fan: a path plus a hub adjacent to everything. Chordal and far from
/// complete, so the duality search walks the tree branch.
pub fn fan_graph(n: usize) -> Graph {
    let mut edges: Vec<(u32, u32)> = (1..n as u32 - 1).map(|v| (v, v + 1)).collect();
    edges.extend((1..n as u32).map(|v| (0, v)));
    Graph::new(n, &edges).expect("fan")
}

/// A circle system over the identity cycle with singleton criteria.
pub fn circle_fixture(n: usize, k: f64) -> (Arc<Universe>, SeparationSystem) {
    let u = bipartition_universe(n).expect("universe");
    let cycle = CyclicOrder::new((0..n as u32).collect()).expect("cycle");
    let criteria: Vec<Subset> = (0..n as u32).map(Subset::singleton).collect();
    let ord = triple_count_order(&u, &criteria).expect("order");
    let sys = circle_system(&u, &cycle, &ord, k).expect("system");
    (u, sys)
}
