//! Tangle-tree duality: a consistent orientation avoiding a star family, or
//! a tree over the family, but never both.

mod search;
mod shifting;
mod uncross;

pub use search::enumerate_tangles;
pub use shifting::{
    emulates, find_lift_push, is_closed_under_shifting, is_separable, lifts, pushes,
    separability_violation, shift_star, shifting_violation, ShiftViolation,
};
pub use uncross::uncross_to_star;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::orientation::Orientation;
use crate::stree::STree;
use crate::system::SeparationSystem;
use crate::universe::SepId;

pub(crate) fn check_family_system(family: &Family, system: &SeparationSystem) -> Result<()> {
    if Arc::ptr_eq(family.universe(), system.universe()) {
        Ok(())
    } else {
        Err(Error::Mismatch)
    }
}

/// What deciding duality produced.
#[derive(Clone, Debug)]
pub enum DualityOutcome {
    /// A consistent orientation of the whole system with no subset in the
    /// family.
    Tangle(Orientation),
    /// A tree over the family.
    Tree(STree),
    /// Neither witness; the message names the precondition the input turned
    /// out to miss.
    Inconclusive(String),
}

impl DualityOutcome {
    pub fn tangle(&self) -> Option<&Orientation> {
        match self {
            DualityOutcome::Tangle(o) => Some(o),
            _ => None,
        }
    }

    pub fn tree(&self) -> Option<&STree> {
        match self {
            DualityOutcome::Tree(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_tangle(&self) -> bool {
        matches!(self, DualityOutcome::Tangle(_))
    }

    pub fn is_tree(&self) -> bool {
        matches!(self, DualityOutcome::Tree(_))
    }
}

/// Preconditions the caller vouches for, skipping their re-verification.
#[derive(Clone, Copy, Debug, Default)]
pub struct Assume {
    /// The family is known to be closed under shifting.
    pub separable_checked: bool,
    /// The family is known to be standard for the system.
    pub standard_checked: bool,
}

/// Decide duality for a star family over a submodular system: exactly one
/// of a tangle or a tree over the family exists once the preconditions
/// hold, and they are re-verified here unless `assume` waives them.
pub fn duality_decide(
    system: &SeparationSystem,
    family: &Family,
    assume: Assume,
) -> Result<DualityOutcome> {
    check_family_system(family, system)?;
    if !family.is_star_family() {
        return Err(Error::Precondition(
            "duality needs a family of stars".into(),
        ));
    }
    if !assume.standard_checked {
        if let Some(s) = family.standardness_violation(system) {
            return Err(Error::Precondition(format!(
                "family is not standard for the system: \
                 trivial member {s} lacks its forced singleton"
            )));
        }
    }
    if let Some((a, b)) = system.submodular_violation() {
        return Err(Error::NotSubmodular(a, b));
    }
    if !assume.separable_checked {
        if let Some(v) = shifting_violation(family, system)? {
            return Err(Error::Precondition(format!(
                "family is not closed under shifting: \
                 {:?} shifts along {} (emulating {}) to {:?}",
                v.sigma, v.s, v.r, v.shifted
            )));
        }
    }
    if family.contains(&[]) {
        // The empty star is a member, so no orientation can avoid the
        // family; a single node carries it.
        let tree = STree::new(system.clone(), 1, Vec::new())?;
        return Ok(DualityOutcome::Tree(tree));
    }
    if let Some(o) = search::find_tangle(system, family) {
        return Ok(DualityOutcome::Tangle(o));
    }
    match search::build_stree(system, family)? {
        search::StreeSearch::Found(tree) => {
            if let Some((node, star)) = tree.violating_node(family) {
                return Err(Error::Internal(format!(
                    "constructed tree carries {star:?} at node {node}, \
                     which is outside the family"
                )));
            }
            Ok(DualityOutcome::Tree(tree))
        }
        search::StreeSearch::NoAnchor => Ok(DualityOutcome::Inconclusive(
            "no tangle was found, yet no separation has tree branches in \
             both directions; some precondition of duality must fail"
                .into(),
        )),
        search::StreeSearch::Overflow => Ok(DualityOutcome::Inconclusive(
            "tree construction exceeded its node budget".into(),
        )),
    }
}

/// Duality for abstract tangles extending a down-closed `q`: either such a
/// tangle or a tree over the stars with co-small join plus the singletons
/// forced by `q`. Needs a distributive universe and a submodular system
/// without degenerate separations.
pub fn abstract_tangle_duality(
    system: &SeparationSystem,
    q: &[SepId],
) -> Result<DualityOutcome> {
    let u = system.universe();
    if !u.is_distributive() {
        return Err(Error::Precondition(
            "abstract tangle duality needs a distributive universe".into(),
        ));
    }
    if system.has_degenerate() {
        return Err(Error::Precondition(
            "abstract tangle duality needs a system without degenerate \
             separations"
                .into(),
        ));
    }
    if let Some((a, b)) = system.submodular_violation() {
        return Err(Error::NotSubmodular(a, b));
    }
    for &s in q {
        u.check_id(s)?;
    }
    let family = Family::tangles_extending(u.clone(), q)?;
    // Down-closed q over a distributive universe makes the family closed
    // under shifting, and submodularity was just verified; trivial members
    // are small, so their inverses are co-small singletons of the family
    // and standardness holds. Only the latter is cheap enough to re-check.
    let assume = Assume { separable_checked: true, standard_checked: false };
    let outcome = duality_decide(system, &family, assume)?;
    if let DualityOutcome::Tangle(o) = &outcome {
        if !o.is_abstract_tangle() {
            return Err(Error::Internal(
                "search returned an orientation that is not an abstract \
                 tangle"
                    .into(),
            ));
        }
        if q.iter().any(|&s| system.contains(s) && !o.contains(s)) {
            return Err(Error::Internal(
                "search returned a tangle that does not extend q".into(),
            ));
        }
    }
    Ok(outcome)
}
