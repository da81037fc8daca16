//! Uncrossing a family member inside an orientation into a star.

use crate::error::{Error, Result};
use crate::family::{Family, UncrossRule};
use crate::orientation::Orientation;
use crate::universe::{canon_set, is_star, SepId};

/// Turn `subset`, a member of the family apart from possibly not being a
/// star, into a member star inside the same orientation. Comparable pairs
/// lose their smaller element; crossing pairs are resolved by the family's
/// rule, which keeps the defining property intact, so the loop ends in a
/// genuine member.
pub fn uncross_to_star(
    orientation: &Orientation,
    subset: &[SepId],
    family: &Family,
) -> Result<Vec<SepId>> {
    let system = orientation.system();
    super::check_family_system(family, system)?;
    let rule = family
        .uncross_rule()
        .ok_or_else(|| Error::InvalidParams("this family has no uncrossing rule".into()))?;
    let u = system.universe();
    if !u.is_distributive() {
        return Err(Error::Precondition(
            "uncrossing needs a distributive universe".into(),
        ));
    }
    let mut sigma = canon_set(subset);
    for &s in &sigma {
        u.check_id(s)?;
        if !orientation.contains(s) {
            return Err(Error::InvalidParams(format!(
                "{s} is not chosen by the orientation"
            )));
        }
    }
    if let Some((a, b)) = orientation.consistency_violation() {
        return Err(Error::Precondition(format!(
            "orientation is inconsistent at ({a}, {b})"
        )));
    }
    if let Some(&d) = sigma.iter().find(|&&s| u.is_degenerate(s)) {
        return Err(Error::Precondition(format!(
            "{d} is degenerate and can lie in no star"
        )));
    }
    if !family.member_ignoring_stars(&sigma) {
        return Err(Error::Precondition(
            "the set does not satisfy the family's membership rule".into(),
        ));
    }
    if rule == UncrossRule::Intersection {
        for &s in &sigma {
            let p = u
                .payload(s)
                .ok_or_else(|| Error::Precondition("universe has no payloads".into()))?;
            if !p.a.inter(p.b).is_empty() {
                return Err(Error::Precondition(
                    "the intersection rule needs separations with disjoint sides".into(),
                ));
            }
        }
    }
    let budget = 4 * sigma.len().pow(3) + 16;
    for _ in 0..budget {
        if is_star(u, &sigma) {
            debug_assert!(family.contains_canon(&sigma));
            return Ok(sigma);
        }
        let next = step(orientation, rule, &sigma)?;
        debug_assert!(
            rule == UncrossRule::CosmallJoin || family.j_of(&next) == family.j_of(&sigma)
        );
        if !family.member_ignoring_stars(&next) {
            return Err(Error::Internal(
                "uncrossing left the family's membership rule".into(),
            ));
        }
        sigma = next;
    }
    Err(Error::Internal("uncrossing exceeded its step budget".into()))
}

/// One uncrossing step on a non-star set: drop the smaller half of the
/// first comparable pair, else resolve the first crossing pair. In a
/// consistent orientation inverse-comparable pairs cannot occur, so on an
/// antichain the failed star condition is a genuine crossing.
fn step(
    orientation: &Orientation,
    rule: UncrossRule,
    sigma: &[SepId],
) -> Result<Vec<SepId>> {
    let u = orientation.system().universe();
    for (i, &a) in sigma.iter().enumerate() {
        for &b in &sigma[i + 1..] {
            if u.le(a, b) {
                return Ok(drop_one(sigma, a));
            }
            if u.le(b, a) {
                return Ok(drop_one(sigma, b));
            }
        }
    }
    for (i, &a) in sigma.iter().enumerate() {
        for &b in &sigma[i + 1..] {
            if !u.le(a, u.inv(b)) {
                return uncross_pair(orientation, rule, sigma, a, b);
            }
        }
    }
    Err(Error::Internal(
        "set is not a star yet has no comparable or crossing pair".into(),
    ))
}

fn uncross_pair(
    orientation: &Orientation,
    rule: UncrossRule,
    sigma: &[SepId],
    a: SepId,
    b: SepId,
) -> Result<Vec<SepId>> {
    let system = orientation.system();
    let u = system.universe();
    match rule {
        UncrossRule::CosmallJoin | UncrossRule::Intersection => {
            let c1 = u.meet(a, u.inv(b));
            if system.contains(c1) {
                ensure_chosen(orientation, c1)?;
                return Ok(swap_one(sigma, a, c1));
            }
            let c2 = u.meet(b, u.inv(a));
            if system.contains(c2) {
                ensure_chosen(orientation, c2)?;
                return Ok(swap_one(sigma, b, c2));
            }
            Err(Error::NotSubmodular(a, u.inv(b)))
        }
        UncrossRule::Clique => {
            let j = u.join(a, b);
            if system.contains(j) {
                if !orientation.contains(j) {
                    return Err(Error::Precondition("orientation is not a profile".into()));
                }
                let mut out: Vec<SepId> =
                    sigma.iter().copied().filter(|&z| z != a && z != b).collect();
                out.push(j);
                return Ok(canon_set(&out));
            }
            let c = u.meet(a, u.inv(b));
            if !system.contains(c) {
                return Err(Error::Precondition(
                    "a corner is missing; clique uncrossing needs the full clique system"
                        .into(),
                ));
            }
            ensure_chosen(orientation, c)?;
            Ok(swap_one(sigma, a, c))
        }
    }
}

fn ensure_chosen(orientation: &Orientation, corner: SepId) -> Result<()> {
    if orientation.contains(corner) {
        Ok(())
    } else {
        Err(Error::Internal(format!(
            "corner {corner} of a consistent orientation is not chosen"
        )))
    }
}

fn drop_one(sigma: &[SepId], x: SepId) -> Vec<SepId> {
    sigma.iter().copied().filter(|&z| z != x).collect()
}

fn swap_one(sigma: &[SepId], old: SepId, new: SepId) -> Vec<SepId> {
    let mut out = drop_one(sigma, old);
    out.push(new);
    canon_set(&out)
}
