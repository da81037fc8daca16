//! Concrete separation universes and systems: bipartitions of a set,
//! separations of a graph with clique systems and hole analysis,
//! connectivity systems of graphs and matroids, order functions with
//! their threshold slices, and circle separations.

pub mod bipartition;
pub mod circle;
pub mod connectivity;
pub mod graph;
pub mod order;
