//! Finite abstract separation systems: universes with order-reversing
//! involutions, structurally submodular systems, orientations and
//! tangles, trees of tangles, and tangle-tree duality, together with the
//! concrete instances the theory speaks about.

pub mod duality;
pub mod error;
pub mod family;
pub mod instances;
pub mod nested;
pub mod orientation;
pub mod sets;
pub mod stree;
pub mod system;
pub mod tangle_tree;
pub mod universe;

pub use duality::{
    abstract_tangle_duality, duality_decide, enumerate_tangles, is_closed_under_shifting,
    is_separable, uncross_to_star, Assume, DualityOutcome,
};
pub use error::{Error, Result};
pub use family::Family;
pub use nested::{DistinguishReport, NestedSet, TreeSetViolation};
pub use orientation::{Orientation, OrientationFlags};
pub use sets::{BitMatrix, IdSet, SidePair, Subset};
pub use stree::STree;
pub use system::{SepFlags, SeparationSystem};
pub use tangle_tree::{reduce_to_minimal, tree_of_tangles};
pub use universe::{Relation, SepId, Universe, ValidationReport, ValidationRule, Violation};
