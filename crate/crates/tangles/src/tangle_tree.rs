//! Trees of tangles: a nested subset of a submodular system distinguishing
//! a given family of profiles, built by corner exchanges.

use crate::error::{Error, Result};
use crate::nested::NestedSet;
use crate::orientation::Orientation;
use crate::system::SeparationSystem;
use crate::universe::{SepId, Universe};

/// The measure driving the exchange argument: how many members of `set`
/// cross `s`.
fn crossings(u: &Universe, set: &[SepId], s: SepId) -> usize {
    set.iter().filter(|&&t| !u.nested(s, t)).count()
}

/// First pair (by index) of orientations no member of `set` distinguishes.
fn undistinguished(set: &[SepId], oris: &[Orientation]) -> Option<(usize, usize)> {
    for i in 0..oris.len() {
        for j in i + 1..oris.len() {
            if !set.iter().any(|&m| oris[i].differs_on(&oris[j], m)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Greedy minimisation: scan members in ascending id order and drop each
/// one whose removal keeps every pair of `oris` distinguished. Every member
/// of the result is then necessary, since dropping others first only makes
/// the survivors more so.
fn reduce_ids(mut set: Vec<SepId>, oris: &[Orientation]) -> Vec<SepId> {
    let mut i = 0;
    while i < set.len() {
        let m = set.remove(i);
        if undistinguished(&set, oris).is_none() {
            continue;
        }
        set.insert(i, m);
        i += 1;
    }
    set
}

/// Shrink a nested set to an inclusion-minimal subset that still
/// distinguishes `oris` pairwise. For consistent orientations the result
/// is automatically a tree set, since trivial and degenerate members
/// never distinguish them.
pub fn reduce_to_minimal(nested: &NestedSet, oris: &[Orientation]) -> Result<NestedSet> {
    let system = nested.system().clone();
    for (i, o) in oris.iter().enumerate() {
        if !o.system().same_system(&system) {
            return Err(Error::Mismatch);
        }
        if !o.is_consistent() {
            return Err(Error::NotConsistent(i));
        }
    }
    if undistinguished(nested.members(), oris).is_some() {
        return Err(Error::DoesNotDistinguish);
    }
    let reduced = reduce_ids(nested.members().to_vec(), oris);
    let out = NestedSet::new(system, &reduced)?;
    if let Some(v) = out.tree_set_violation() {
        return Err(Error::Internal(format!(
            "minimal distinguishing set is not a tree set: {v:?}"
        )));
    }
    Ok(out)
}

/// The profile in `olds` that `set` fails to tell apart from `p`, if any.
/// While `set` distinguishes `olds` pairwise there can be at most one.
fn undistinguished_partner(
    set: &[SepId],
    olds: &[Orientation],
    p: &Orientation,
) -> Result<Option<usize>> {
    let mut found = None;
    for (i, o) in olds.iter().enumerate() {
        if !set.iter().any(|&m| p.differs_on(o, m)) {
            if found.is_some() {
                return Err(Error::Internal(
                    "two profiles left undistinguished from the new one".into(),
                ));
            }
            found = Some(i);
        }
    }
    Ok(found)
}

/// The unique pair of `oris` distinguished by `t` and by no other member
/// of `set`; requires `set` inclusion-minimal for `oris`.
fn private_pair(set: &[SepId], t: SepId, oris: &[Orientation]) -> Result<(usize, usize)> {
    let mut found: Option<(usize, usize)> = None;
    for i in 0..oris.len() {
        for j in i + 1..oris.len() {
            if oris[i].differs_on(&oris[j], t)
                && !set
                    .iter()
                    .any(|&m| m != t && oris[i].differs_on(&oris[j], m))
            {
                if found.is_some() {
                    return Err(Error::Internal(
                        "member of a minimal set owns two private pairs".into(),
                    ));
                }
                found = Some((i, j));
            }
        }
    }
    found.ok_or_else(|| {
        Error::Internal("member of a minimal set owns no private pair".into())
    })
}

/// Extend `set`, which distinguishes `olds` pairwise, so that it also
/// distinguishes `p` from each of them. The returned set may be
/// non-minimal; callers reduce when they need to.
fn link_profile(
    system: &SeparationSystem,
    set: Vec<SepId>,
    olds: &[Orientation],
    p: &Orientation,
) -> Result<Vec<SepId>> {
    let u = system.universe().clone();
    let Some(pi) = undistinguished_partner(&set, olds, p)? else {
        return Ok(set);
    };
    // Minimality is needed below for the private-pair extraction. It cannot
    // repair the missing pair, so the partner stays the same.
    let mut set = reduce_ids(set, olds);
    let pp = &olds[pi];

    // Initial candidate: the distinguisher of (p, pp) crossing as little of
    // the current set as possible, ties by member index.
    let mut s_id: Option<SepId> = None;
    let mut d_cur = usize::MAX;
    for &rep in system.reps() {
        if p.differs_on(pp, rep) {
            let d = crossings(&u, &set, rep);
            if d < d_cur {
                d_cur = d;
                s_id = Some(rep);
            }
        }
    }
    let mut s_id = s_id.ok_or_else(|| {
        Error::Internal("distinct profiles with no distinguishing member".into())
    })?;

    while d_cur > 0 {
        // Every member of the set is oriented the same way by p and pp;
        // among those crossing s, take one with minimal such orientation.
        let mut best: Option<(SepId, SepId)> = None;
        for &t in &set {
            if u.nested(s_id, t) {
                continue;
            }
            let fwd = p.orients(t).expect("set members belong to the system");
            match best {
                Some((_, bf)) if !u.lt(fwd, bf) => {}
                _ => best = Some((t, fwd)),
            }
        }
        let (t_rep, t_fwd) = best.ok_or_else(|| {
            Error::Internal("positive crossing count but no crossing member".into())
        })?;
        if pp.orients(t_rep) != Some(t_fwd) {
            return Err(Error::Internal(
                "undistinguished profiles orient a member differently".into(),
            ));
        }

        let (i1, i2) = private_pair(&set, t_rep, olds)?;
        let (p1, p2) = if olds[i2].contains(t_fwd) {
            (&olds[i1], &olds[i2])
        } else {
            (&olds[i2], &olds[i1])
        };
        // Relabel the orientations of s so that p1 holds the backward one.
        let s_fwd = u.inv(p1.orients(s_id).expect("candidate is a member"));

        let r1 = u.join(s_fwd, t_fwd);
        if system.contains(r1) {
            // Corner replaces the candidate: both p and pp hold the corner
            // exactly when they hold s, so it still distinguishes them.
            for q in [p, pp] {
                if q.contains(r1) != q.contains(s_fwd) {
                    return Err(Error::Internal(
                        "corner does not follow the profile it was built from".into(),
                    ));
                }
            }
            let d_new = crossings(&u, &set, r1);
            if d_new >= d_cur {
                return Err(Error::Internal(
                    "corner replacement failed to decrease the crossing measure".into(),
                ));
            }
            s_id = r1;
            d_cur = d_new;
        } else {
            // Corner exchange inside the set: swap t for the meet corner,
            // which takes over t's private pair.
            let r2 = u.meet(s_fwd, t_fwd);
            if !system.contains(r2) {
                return Err(Error::Internal(
                    "submodular system is missing both corners".into(),
                ));
            }
            if !p2.contains(r2) || !p1.contains(u.inv(r2)) {
                return Err(Error::Internal(
                    "exchanged corner does not distinguish its private pair".into(),
                ));
            }
            set.retain(|&m| m != t_rep);
            set.push(u.reference(r2));
            set.sort();
            set.dedup();
            for (i, &a) in set.iter().enumerate() {
                for &b in &set[i + 1..] {
                    if !u.nested(a, b) {
                        return Err(Error::Internal(
                            "corner exchange broke nestedness".into(),
                        ));
                    }
                }
            }
            if undistinguished(&set, olds).is_some() {
                return Err(Error::Internal(
                    "corner exchange stopped distinguishing the older profiles".into(),
                ));
            }
            let d_new = crossings(&u, &set, s_id);
            if d_new >= d_cur {
                return Err(Error::Internal(
                    "corner exchange failed to decrease the crossing measure".into(),
                ));
            }
            set = reduce_ids(set, olds);
            d_cur = crossings(&u, &set, s_id);
        }
    }

    set.push(u.reference(s_id));
    set.sort();
    set.dedup();
    Ok(set)
}

/// A tree set inside a submodular system distinguishing every pair of the
/// given profiles, grown one profile at a time by corner exchanges.
pub fn tree_of_tangles(
    system: &SeparationSystem,
    profiles: &[Orientation],
) -> Result<NestedSet> {
    if let Some((s, t)) = system.submodular_violation() {
        return Err(Error::NotSubmodular(s, t));
    }
    for (i, o) in profiles.iter().enumerate() {
        if !o.system().same_system(system) {
            return Err(Error::Mismatch);
        }
        if !o.is_consistent() {
            return Err(Error::NotConsistent(i));
        }
        if o.profile_violation().is_some() {
            return Err(Error::NotAProfile(i));
        }
    }
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            if profiles[i] == profiles[j] {
                return Err(Error::DuplicateOrientations(i, j));
            }
        }
    }

    let mut set: Vec<SepId> = Vec::new();
    for k in 1..profiles.len() {
        set = link_profile(system, set, &profiles[..k], &profiles[k])?;
    }
    let set = reduce_ids(set, profiles);

    let out = NestedSet::new(system.clone(), &set)?;
    if let Some(v) = out.tree_set_violation() {
        return Err(Error::Internal(format!(
            "distinguishing set is not a tree set: {v:?}"
        )));
    }
    if undistinguished(out.members(), profiles).is_some() {
        return Err(Error::Internal(
            "constructed set fails to distinguish the profiles".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::bipartition::{bipartition_universe, principal_orientation, side_id};
    use crate::sets::Subset;

    fn full3() -> SeparationSystem {
        SeparationSystem::full(bipartition_universe(3).unwrap())
    }

    fn principals(sys: &SeparationSystem, n: u32) -> Vec<Orientation> {
        (0..n).map(|v| principal_orientation(sys, v).unwrap()).collect()
    }

    #[test]
    fn three_principal_profiles_need_two_separations() {
        let sys = full3();
        let pis = principals(&sys, 3);
        let tree = tree_of_tangles(&sys, &pis).unwrap();
        assert!(tree.is_tree_set());
        assert!(tree.distinguishes(&pis).unwrap().all_distinguished());
        assert!(tree.members().iter().all(|&m| sys.contains(m)));
        // One member covers at most the pairs split by its two sides, so a
        // single member cannot split three profiles pairwise.
        assert_eq!(tree.len(), 2);
    }

    #[test]
    fn principals_are_the_only_profiles_of_the_full_system() {
        let sys = full3();
        let profiles: Vec<Orientation> = sys
            .consistent_orientations()
            .into_iter()
            .filter(|o| o.is_profile())
            .collect();
        assert_eq!(profiles.len(), 3);
        let tree = tree_of_tangles(&sys, &profiles).unwrap();
        assert!(tree.distinguishes(&profiles).unwrap().all_distinguished());
        // Each member of a minimal distinguishing set owns exactly one pair.
        for &t in tree.members() {
            let mut private = 0;
            for i in 0..profiles.len() {
                for j in i + 1..profiles.len() {
                    if profiles[i].differs_on(&profiles[j], t)
                        && !tree
                            .members()
                            .iter()
                            .any(|&m| m != t && profiles[i].differs_on(&profiles[j], m))
                    {
                        private += 1;
                    }
                }
            }
            assert_eq!(private, 1);
        }
    }

    #[test]
    fn few_profiles_need_nothing() {
        let sys = full3();
        assert!(tree_of_tangles(&sys, &[]).unwrap().is_empty());
        let pis = principals(&sys, 1);
        assert!(tree_of_tangles(&sys, &pis).unwrap().is_empty());
    }

    #[test]
    fn preconditions_are_reported() {
        let u = bipartition_universe(3).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let pis = principals(&sys, 2);

        let a = side_id(&u, Subset::singleton(0));
        let b = side_id(&u, Subset::singleton(1));
        let bad = SeparationSystem::new(u.clone(), [a, b]).unwrap();
        assert!(matches!(
            tree_of_tangles(&bad, &[]),
            Err(Error::NotSubmodular(_, _))
        ));

        // Reversing the forced (∅,V) member breaks consistency.
        let top = u.inv(side_id(&u, Subset::EMPTY));
        let c = side_id(&u, Subset::singleton(2));
        let upside_down = Orientation::from_ids(sys.clone(), [top, a, b, c]).unwrap();
        assert!(matches!(
            tree_of_tangles(&sys, &[upside_down]),
            Err(Error::NotConsistent(0))
        ));

        // Orienting every side outward is consistent but no profile: two of
        // the chosen sides join to the inverse of the third.
        let bottom = side_id(&u, Subset::EMPTY);
        let outward = Orientation::from_ids(sys.clone(), [bottom, a, b, c]).unwrap();
        assert!(outward.is_consistent());
        assert!(matches!(
            tree_of_tangles(&sys, &[outward]),
            Err(Error::NotAProfile(0))
        ));

        assert!(matches!(
            tree_of_tangles(&sys, &[pis[0].clone(), pis[0].clone()]),
            Err(Error::DuplicateOrientations(0, 1))
        ));
    }

    #[test]
    fn reduction_drops_the_redundant_member() {
        let u = bipartition_universe(3).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let pis = principals(&sys, 2);
        let m0 = side_id(&u, Subset::singleton(0));
        let m1 = side_id(&u, Subset::singleton(1));
        let nested = NestedSet::new(sys.clone(), &[m0, m1]).unwrap();
        // Both members split τ0 from τ1; the ascending pass drops the first.
        let reduced = reduce_to_minimal(&nested, &pis).unwrap();
        assert_eq!(reduced.members(), &[side_id(&u, Subset::from_elems([0, 2]))]);

        // A single orientation leaves nothing to distinguish.
        let lonely = reduce_to_minimal(&nested, &pis[..1]).unwrap();
        assert!(lonely.is_empty());

        let empty = NestedSet::empty(sys.clone());
        assert!(matches!(
            reduce_to_minimal(&empty, &pis),
            Err(Error::DoesNotDistinguish)
        ));
    }
}
