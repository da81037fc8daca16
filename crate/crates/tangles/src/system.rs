//! Separation systems: inversion-closed subsets of a universe.

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::sets::IdSet;
use crate::universe::{SepId, Universe};
use std::fmt;
use std::sync::Arc;

struct SysInner {
    universe: Arc<Universe>,
    members: IdSet,
    /// All oriented members, ascending.
    member_list: Vec<SepId>,
    /// Reference orientations of the unoriented members, ascending.
    reps: Vec<SepId>,
}

/// An inversion-closed set of oriented separations within a universe.
/// Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct SeparationSystem {
    inner: Arc<SysInner>,
}

impl SeparationSystem {
    /// Build a system from any set of ids; the inversion closure is taken
    /// automatically.
    pub fn new<I: IntoIterator<Item = SepId>>(
        universe: Arc<Universe>,
        ids: I,
    ) -> Result<SeparationSystem> {
        let mut members = IdSet::new(universe.len());
        for s in ids {
            universe.check_id(s)?;
            members.insert(s.index());
            members.insert(universe.inv(s).index());
        }
        let member_list: Vec<SepId> = universe.ids().filter(|s| members.contains(s.index())).collect();
        let mut reps: Vec<SepId> = member_list.iter().map(|&s| universe.reference(s)).collect();
        reps.sort();
        reps.dedup();
        Ok(SeparationSystem {
            inner: Arc::new(SysInner { universe, members, member_list, reps }),
        })
    }

    /// The whole universe as a system.
    pub fn full(universe: Arc<Universe>) -> SeparationSystem {
        let all: Vec<SepId> = universe.ids().collect();
        SeparationSystem::new(universe, all).expect("universe ids are in range")
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.inner.universe
    }

    pub fn contains(&self, s: SepId) -> bool {
        s.index() < self.inner.universe.len() && self.inner.members.contains(s.index())
    }

    pub fn check_member(&self, s: SepId) -> Result<()> {
        self.inner.universe.check_id(s)?;
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::NotAMember(s))
        }
    }

    /// All oriented members, ascending by id.
    pub fn members(&self) -> &[SepId] {
        &self.inner.member_list
    }

    /// One reference orientation per unoriented member, ascending by id.
    pub fn reps(&self) -> &[SepId] {
        &self.inner.reps
    }

    pub fn oriented_len(&self) -> usize {
        self.inner.member_list.len()
    }

    pub fn unoriented_len(&self) -> usize {
        self.inner.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.member_list.is_empty()
    }

    pub fn same_system(&self, other: &SeparationSystem) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (Arc::ptr_eq(&self.inner.universe, &other.inner.universe)
                && self.inner.members == other.inner.members)
    }

    /// Index of an unoriented member among `reps`, by either orientation.
    pub fn rep_index(&self, s: SepId) -> Option<usize> {
        let r = self.inner.universe.reference(s);
        self.inner.reps.binary_search(&r).ok()
    }

    pub fn classify(&self, s: SepId) -> Result<SepFlags> {
        self.check_member(s)?;
        let u = &self.inner.universe;
        let flags = SepFlags {
            small: u.is_small(s),
            cosmall: u.is_cosmall(s),
            degenerate: u.is_degenerate(s),
            trivial: self.triviality_witness(s).is_some(),
            cotrivial: self.triviality_witness(u.inv(s)).is_some(),
        };
        if flags.trivial {
            assert!(flags.small, "trivial separation {s} must be small");
        }
        Ok(flags)
    }

    /// A member `t` of this system with `s < t` and `s < t*`, if any.
    pub fn triviality_witness(&self, s: SepId) -> Option<SepId> {
        triviality_witness_in(&self.inner.universe, &self.inner.reps, s)
    }

    pub fn is_trivial(&self, s: SepId) -> bool {
        self.triviality_witness(s).is_some()
    }

    /// First pair of members (in id order) with neither join nor meet in the
    /// system; `None` means the system is submodular.
    pub fn submodular_violation(&self) -> Option<(SepId, SepId)> {
        let u = &self.inner.universe;
        for &s in &self.inner.member_list {
            for &t in &self.inner.member_list {
                if !self.contains(u.join(s, t)) && !self.contains(u.meet(s, t)) {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_submodular(&self) -> bool {
        self.submodular_violation().is_none()
    }

    pub fn has_degenerate(&self) -> bool {
        let u = &self.inner.universe;
        self.inner.reps.iter().any(|&s| u.is_degenerate(s))
    }

    /// Can `b` be added to an orientation already containing all of `chosen`
    /// without creating an inconsistency? All ids must orient distinct
    /// members.
    pub(crate) fn consistent_with(&self, chosen: &[SepId], b: SepId) -> bool {
        let u = &self.inner.universe;
        chosen.iter().all(|&a| !u.le(u.inv(a), b) && !u.le(u.inv(b), a))
    }

    /// All consistent orientations, enumerated by orienting the members in
    /// rep order, reference orientation first.
    pub fn consistent_orientations(&self) -> Vec<Orientation> {
        let mut out = Vec::new();
        self.for_each_consistent_orientation(&mut |o| {
            out.push(o);
            true
        });
        out
    }

    /// Depth-first enumeration with an early-exit visitor: return `false`
    /// from the visitor to stop.
    pub(crate) fn for_each_consistent_orientation<F: FnMut(Orientation) -> bool>(
        &self,
        visit: &mut F,
    ) {
        let mut chosen: Vec<SepId> = Vec::with_capacity(self.inner.reps.len());
        self.enumerate_stop_rec(&mut chosen, visit);
    }

    fn enumerate_stop_rec<F: FnMut(Orientation) -> bool>(
        &self,
        chosen: &mut Vec<SepId>,
        visit: &mut F,
    ) -> bool {
        let i = chosen.len();
        if i == self.inner.reps.len() {
            return visit(Orientation::from_choice_unchecked(self.clone(), chosen.clone()));
        }
        let rep = self.inner.reps[i];
        let inv = self.inner.universe.inv(rep);
        let candidates = if rep == inv { &[rep][..] } else { &[rep, inv][..] };
        for &c in candidates {
            if self.consistent_with(chosen, c) {
                chosen.push(c);
                let keep_going = self.enumerate_stop_rec(chosen, visit);
                chosen.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for SeparationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SeparationSystem")
            .field("oriented", &self.oriented_len())
            .field("unoriented", &self.unoriented_len())
            .finish()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SepFlags {
    pub small: bool,
    pub cosmall: bool,
    pub degenerate: bool,
    pub trivial: bool,
    pub cotrivial: bool,
}

/// A witness `t` among `reps` with `s < t` and `s < t*`, searched in rep
/// order. Triviality is always relative to a collection of separations;
/// callers pass the reps of the relevant one.
pub(crate) fn triviality_witness_in(
    u: &Universe,
    reps: &[SepId],
    s: SepId,
) -> Option<SepId> {
    reps.iter()
        .copied()
        .find(|&t| u.lt(s, t) && u.lt(s, u.inv(t)))
}
