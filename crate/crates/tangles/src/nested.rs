//! Nested sets of separations and what they distinguish.

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::system::{triviality_witness_in, SeparationSystem};
use crate::universe::SepId;

/// A nested set of unoriented separations from a system, stored through
/// reference orientations.
#[derive(Clone, Debug)]
pub struct NestedSet {
    system: SeparationSystem,
    reps: Vec<SepId>,
}

/// Why a nested set fails to be a tree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeSetViolation {
    Degenerate(SepId),
    /// The member's orientation is trivial in the set, with a witness.
    Trivial { member: SepId, witness: SepId },
}

/// Which profile pairs a nested set distinguishes, with witnesses.
#[derive(Clone, Debug)]
pub struct DistinguishReport {
    /// One entry per pair i < j, in lexicographic pair order.
    pub pairs: Vec<(usize, usize, Option<SepId>)>,
}

impl DistinguishReport {
    pub fn all_distinguished(&self) -> bool {
        self.pairs.iter().all(|(_, _, w)| w.is_some())
    }

    pub fn first_undistinguished(&self) -> Option<(usize, usize)> {
        self.pairs
            .iter()
            .find(|(_, _, w)| w.is_none())
            .map(|&(i, j, _)| (i, j))
    }
}

impl NestedSet {
    /// Build from any selection of member ids; orientations collapse to
    /// their reference representative. Rejects crossing pairs.
    pub fn new(system: SeparationSystem, ids: &[SepId]) -> Result<NestedSet> {
        let u = system.universe();
        let mut reps: Vec<SepId> = Vec::with_capacity(ids.len());
        for &s in ids {
            system.check_member(s)?;
            reps.push(u.reference(s));
        }
        reps.sort();
        reps.dedup();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                if !u.nested(a, b) {
                    return Err(Error::NotNested(a, b));
                }
            }
        }
        Ok(NestedSet { system, reps })
    }

    pub fn empty(system: SeparationSystem) -> NestedSet {
        NestedSet { system, reps: Vec::new() }
    }

    pub fn system(&self) -> &SeparationSystem {
        &self.system
    }

    /// Reference orientations of the members, ascending.
    pub fn members(&self) -> &[SepId] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn contains(&self, s: SepId) -> bool {
        self.reps
            .binary_search(&self.system.universe().reference(s))
            .is_ok()
    }

    /// First reason this set is not a tree set: a degenerate member, or a
    /// member orientation trivial relative to the set itself.
    pub fn tree_set_violation(&self) -> Option<TreeSetViolation> {
        let u = self.system.universe();
        for &s in &self.reps {
            if u.is_degenerate(s) {
                return Some(TreeSetViolation::Degenerate(s));
            }
            for cand in [s, u.inv(s)] {
                if let Some(witness) = triviality_witness_in(u, &self.reps, cand) {
                    return Some(TreeSetViolation::Trivial { member: cand, witness });
                }
            }
        }
        None
    }

    pub fn is_tree_set(&self) -> bool {
        self.tree_set_violation().is_none()
    }

    /// For every pair of the given orientations, the first member on which
    /// they disagree. Orientations must belong to this set's system.
    pub fn distinguishes(&self, oris: &[Orientation]) -> Result<DistinguishReport> {
        for o in oris {
            if !o.system().same_system(&self.system) {
                return Err(Error::Mismatch);
            }
        }
        let mut pairs = Vec::with_capacity(oris.len() * oris.len().saturating_sub(1) / 2);
        for i in 0..oris.len() {
            for j in i + 1..oris.len() {
                let witness = self.reps.iter().copied().find(|&s| {
                    oris[i].orients(s) != oris[j].orients(s)
                });
                pairs.push((i, j, witness));
            }
        }
        Ok(DistinguishReport { pairs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::bipartition::{bipartition_universe, side_id};
    use crate::sets::Subset;

    #[test]
    fn crossing_pairs_are_rejected() {
        let u = bipartition_universe(4).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let a = side_id(&u, Subset::from_elems([0, 1]));
        let b = side_id(&u, Subset::from_elems([1, 2]));
        assert!(matches!(
            NestedSet::new(sys.clone(), &[a, b]),
            Err(Error::NotNested(_, _))
        ));
        let c = side_id(&u, Subset::from_elems([0, 1, 2]));
        let n = NestedSet::new(sys, &[a, c]).unwrap();
        assert!(n.is_tree_set());
    }

    #[test]
    fn trivial_member_spoils_a_tree_set() {
        let u = bipartition_universe(3).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let bottom = side_id(&u, Subset::EMPTY);
        let single = side_id(&u, Subset::singleton(0));
        let n = NestedSet::new(sys.clone(), &[bottom, single]).unwrap();
        // (∅, V) sits strictly below both orientations of the other member.
        assert_eq!(
            n.tree_set_violation(),
            Some(TreeSetViolation::Trivial { member: bottom, witness: single })
        );

        let pair = NestedSet::new(
            sys,
            &[single, side_id(&u, Subset::singleton(1))],
        )
        .unwrap();
        assert!(pair.is_tree_set());
    }

    #[test]
    fn distinguishing_reports_the_first_separating_member() {
        let u = bipartition_universe(2).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let bottom = side_id(&u, Subset::EMPTY);
        let s01 = side_id(&u, Subset::singleton(0));
        let s10 = side_id(&u, Subset::singleton(1));
        let o1 = Orientation::from_ids(sys.clone(), [bottom, s01]).unwrap();
        let o2 = Orientation::from_ids(sys.clone(), [bottom, s10]).unwrap();

        let n = NestedSet::new(sys.clone(), &[s01]).unwrap();
        let report = n.distinguishes(&[o1.clone(), o2.clone()]).unwrap();
        assert_eq!(report.pairs, vec![(0, 1, Some(u.reference(s01)))]);
        assert!(report.all_distinguished());

        let only_bottom = NestedSet::new(sys, &[bottom]).unwrap();
        let report = only_bottom.distinguishes(&[o1, o2]).unwrap();
        assert_eq!(report.first_undistinguished(), Some((0, 1)));
    }
}
