//! Orientations of a separation system: one choice per unoriented member.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::sets::IdSet;
use crate::system::SeparationSystem;
use crate::universe::SepId;
use std::fmt;

/// A choice, for every unoriented member of a system, of one of its two
/// orientations. Stored in rep order, so comparing and hashing orientations
/// of the same system is well defined.
#[derive(Clone)]
pub struct Orientation {
    system: SeparationSystem,
    choice: Vec<SepId>,
    chosen: IdSet,
}

impl Orientation {
    /// Build from an arbitrary collection of oriented ids, which must orient
    /// every member of the system exactly once.
    pub fn from_ids<I: IntoIterator<Item = SepId>>(
        system: SeparationSystem,
        ids: I,
    ) -> Result<Orientation> {
        let mut choice: Vec<Option<SepId>> = vec![None; system.unoriented_len()];
        for s in ids {
            system.check_member(s)?;
            let i = system.rep_index(s).expect("member has a rep");
            match choice[i] {
                None => choice[i] = Some(s),
                Some(prev) if prev == s => {}
                Some(_) => {
                    return Err(Error::InvalidParams(format!(
                        "both orientations of a separation supplied ({s})"
                    )))
                }
            }
        }
        let missing = choice.iter().position(|c| c.is_none());
        if let Some(i) = missing {
            return Err(Error::InvalidParams(format!(
                "no orientation supplied for member {}",
                system.reps()[i]
            )));
        }
        let choice: Vec<SepId> = choice.into_iter().map(|c| c.unwrap()).collect();
        Ok(Orientation::from_choice_unchecked(system, choice))
    }

    pub(crate) fn from_choice_unchecked(
        system: SeparationSystem,
        choice: Vec<SepId>,
    ) -> Orientation {
        let mut chosen = IdSet::new(system.universe().len());
        for &s in &choice {
            chosen.insert(s.index());
        }
        Orientation { system, choice, chosen }
    }

    pub fn system(&self) -> &SeparationSystem {
        &self.system
    }

    /// The chosen orientations in rep order.
    pub fn ids(&self) -> &[SepId] {
        &self.choice
    }

    pub fn contains(&self, s: SepId) -> bool {
        s.index() < self.chosen.capacity() && self.chosen.contains(s.index())
    }

    /// The orientation this choice gives to the member behind `s`.
    pub fn orients(&self, s: SepId) -> Option<SepId> {
        self.system.rep_index(s).map(|i| self.choice[i])
    }

    /// Whether the two orientations pick opposite orientations of `s`.
    pub fn differs_on(&self, other: &Orientation, s: SepId) -> bool {
        match (self.orients(s), other.orients(s)) {
            (Some(a), Some(b)) => a != b,
            _ => false,
        }
    }

    /// First member (in rep order) oriented differently, if any.
    pub fn first_difference(&self, other: &Orientation) -> Option<SepId> {
        self.choice
            .iter()
            .zip(other.choice.iter())
            .find(|(a, b)| a != b)
            .map(|(&a, _)| self.system.universe().reference(a))
    }

    /// A pair `(a, b)` of distinct members with `a* <= b` chosen, if any.
    pub fn consistency_violation(&self) -> Option<(SepId, SepId)> {
        let u = self.system.universe();
        for (i, &a) in self.choice.iter().enumerate() {
            for &b in &self.choice[i + 1..] {
                if u.le(u.inv(a), b) {
                    return Some((a, b));
                }
                if u.le(u.inv(b), a) {
                    return Some((b, a));
                }
            }
        }
        None
    }

    pub fn is_consistent(&self) -> bool {
        self.consistency_violation().is_none()
    }

    /// A pair `s, t` chosen with `(s ∨ t)*` also chosen, if any.
    pub fn profile_violation(&self) -> Option<(SepId, SepId)> {
        let u = self.system.universe();
        for &s in &self.choice {
            for &t in &self.choice {
                if self.contains(u.inv(u.join(s, t))) {
                    return Some((s, t));
                }
            }
        }
        None
    }

    pub fn is_profile(&self) -> bool {
        self.is_consistent() && self.profile_violation().is_none()
    }

    /// Up to three chosen separations whose join is co-small, if any.
    pub fn cosmall_join_violation(&self) -> Option<Vec<SepId>> {
        let u = self.system.universe();
        let n = self.choice.len();
        for i in 0..n {
            let a = self.choice[i];
            if u.is_cosmall(a) {
                return Some(vec![a]);
            }
            for j in i + 1..n {
                let ab = u.join(a, self.choice[j]);
                if u.is_cosmall(ab) {
                    return Some(vec![a, self.choice[j]]);
                }
                for k in j + 1..n {
                    if u.is_cosmall(u.join(ab, self.choice[k])) {
                        return Some(vec![a, self.choice[j], self.choice[k]]);
                    }
                }
            }
        }
        None
    }

    pub fn is_abstract_tangle(&self) -> bool {
        self.is_consistent() && self.cosmall_join_violation().is_none()
    }

    /// Contains every small member of the system.
    pub fn is_regular(&self) -> bool {
        let u = self.system.universe();
        self.system
            .members()
            .iter()
            .all(|&s| !u.is_small(s) || self.contains(s))
    }

    pub fn avoids(&self, family: &Family) -> bool {
        family.violation_in(&self.choice).is_none()
    }

    pub fn is_tangle_for(&self, family: &Family) -> bool {
        self.is_consistent() && self.avoids(family)
    }

    pub fn classify(&self, family: &Family) -> OrientationFlags {
        let consistent = self.is_consistent();
        let avoids_family = self.avoids(family);
        OrientationFlags {
            consistent,
            avoids_family,
            family_tangle: consistent && avoids_family,
            profile: consistent && self.profile_violation().is_none(),
            abstract_tangle: consistent && self.cosmall_join_violation().is_none(),
            regular: self.is_regular(),
        }
    }
}

impl PartialEq for Orientation {
    fn eq(&self, other: &Self) -> bool {
        self.choice == other.choice
    }
}

impl Eq for Orientation {}

impl std::hash::Hash for Orientation {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.choice.hash(state);
    }
}

impl PartialOrd for Orientation {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Orientation {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.choice.cmp(&other.choice)
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Orientation{:?}", self.choice)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrientationFlags {
    pub consistent: bool,
    pub avoids_family: bool,
    pub family_tangle: bool,
    pub profile: bool,
    pub abstract_tangle: bool,
    pub regular: bool,
}
