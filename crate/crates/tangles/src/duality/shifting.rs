//! Emulation and shifting, and the separability checks built from them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::sets::{IdSet, Subset};
use crate::system::SeparationSystem;
use crate::universe::{canon_set, is_star, SepId, Universe};

/// Witness that a family is not closed under shifting: the member `sigma`
/// shifts at its element `x` along `s`, which emulates `r`, to a set
/// outside the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftViolation {
    pub r: SepId,
    pub s: SepId,
    pub x: SepId,
    pub sigma: Vec<SepId>,
    pub shifted: Vec<SepId>,
}

/// Shift the star `sigma` onto `s` at its element `x`: `x` becomes `x ∨ s`
/// and every other element `y` becomes `y ∧ s*`. Fails with `ShiftNotStar`
/// when the image leaves the system or is not a star; that cannot happen
/// when `s` emulates some nontrivial `r ≤ x` avoided by `sigma`.
pub fn shift_star(
    system: &SeparationSystem,
    sigma: &[SepId],
    x: SepId,
    s: SepId,
) -> Result<Vec<SepId>> {
    for &y in sigma {
        system.check_member(y)?;
    }
    system.check_member(x)?;
    system.check_member(s)?;
    let u = system.universe();
    let sigma = canon_set(sigma);
    if sigma.binary_search(&x).is_err() {
        return Err(Error::InvalidParams("shift_star needs x in sigma".into()));
    }
    if !is_star(u, &sigma) {
        return Err(Error::InvalidParams("shift_star needs a star".into()));
    }
    let shifted = shifted_image(u, &sigma, x, s);
    if shifted.iter().any(|&z| !system.contains(z)) || !is_star(u, &shifted) {
        return Err(Error::ShiftNotStar);
    }
    Ok(shifted)
}

fn shifted_image(u: &Universe, sigma: &[SepId], x: SepId, s: SepId) -> Vec<SepId> {
    let is = u.inv(s);
    let image: Vec<SepId> = sigma
        .iter()
        .map(|&y| if y == x { u.join(x, s) } else { u.meet(y, is) })
        .collect();
    canon_set(&image)
}

/// Does `s` emulate `r` in the system? Plainly: `r ≤ s` and `s ∨ t` is a
/// member for every member `t ≥ r` other than `r*`. With a family: the
/// image of every family star `σ ⊆ S∖{r*}` shifted at any `x ∈ σ` with
/// `x ≥ r` must stay in the family.
pub fn emulates(
    system: &SeparationSystem,
    s: SepId,
    r: SepId,
    family: Option<&Family>,
) -> Result<bool> {
    system.check_member(s)?;
    system.check_member(r)?;
    if let Some(f) = family {
        super::check_family_system(f, system)?;
    }
    if !emulates_plain(system, s, r) {
        return Ok(false);
    }
    match family {
        None => Ok(true),
        Some(f) => Ok(star_shift_violation(system, f, r, s)?.is_none()),
    }
}

fn emulates_plain(system: &SeparationSystem, s: SepId, r: SepId) -> bool {
    let u = system.universe();
    if !u.le(r, s) {
        return false;
    }
    let ir = u.inv(r);
    system
        .members()
        .iter()
        .all(|&t| t == ir || !u.le(r, t) || system.contains(u.join(s, t)))
}

/// Exhaustive check of the family half of emulation for one pair `(r, s)`.
fn star_shift_violation(
    system: &SeparationSystem,
    family: &Family,
    r: SepId,
    s: SepId,
) -> Result<Option<ShiftViolation>> {
    let u = system.universe();
    let ir = u.inv(r);
    match (family.max_member_size(), family.is_j_determined()) {
        (Some(k), _) => {
            let mut cur = Vec::with_capacity(k);
            Ok(bounded_fixed_rec(system, family, r, s, 0, k, &mut cur))
        }
        (None, true) => {
            for &x in system.members() {
                if x == ir || u.is_degenerate(x) || !u.le(r, x) {
                    continue;
                }
                if let Some(v) = jdet_violation_at(system, family, r, s, x) {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        }
        (None, false) => Err(Error::Internal(
            "family with unbounded members lacks a membership test by \
             right-side intersection"
                .into(),
        )),
    }
}

/// Enumerate the stars inside `S∖{r*}` up to the family's size bound in
/// ascending id order; every member met on the way is shifted at each of
/// its elements above `r`.
fn bounded_fixed_rec(
    system: &SeparationSystem,
    family: &Family,
    r: SepId,
    s: SepId,
    from: usize,
    k: usize,
    cur: &mut Vec<SepId>,
) -> Option<ShiftViolation> {
    let u = system.universe();
    if !cur.is_empty() && family.contains_canon(cur) {
        for &x in cur.iter() {
            if !u.le(r, x) {
                continue;
            }
            let shifted = shifted_image(u, cur, x, s);
            if !family.contains_canon(&shifted) {
                return Some(ShiftViolation { r, s, x, sigma: cur.clone(), shifted });
            }
        }
    }
    if cur.len() == k {
        return None;
    }
    let ir = u.inv(r);
    let members = system.members();
    for (i, &y) in members.iter().enumerate().skip(from) {
        if y == ir || u.is_degenerate(y) {
            continue;
        }
        if !cur.iter().all(|&z| u.le(y, u.inv(z))) {
            continue;
        }
        cur.push(y);
        if let Some(v) = bounded_fixed_rec(system, family, r, s, i + 1, k, cur) {
            return Some(v);
        }
        cur.pop();
    }
    None
}

/// Search the stars anchored at `x` for a member whose shift leaves the
/// family, for a family whose membership depends only on the right-side
/// intersection (and the size, which shifting never grows).
///
/// Partners are added in ascending id order and must strictly shrink the
/// intersection of the partner right sides; every achievable value is
/// reached that way, and both membership tests at a node depend on that
/// value alone. A node whose shifted value is already a member prunes its
/// branch: deeper values are subsets and membership is closed downwards.
fn jdet_violation_at(
    system: &SeparationSystem,
    family: &Family,
    r: SepId,
    s: SepId,
    x: SepId,
) -> Option<ShiftViolation> {
    let u = system.universe();
    let bx = u.payload(x).expect("payload-backed universe").b;
    let ps = u.payload(s).expect("payload-backed universe");
    let w = bx.inter(ps.b);
    let cu = w.inter(ps.a);
    let ir = u.inv(r);
    let ix = u.inv(x);
    let partners: Vec<(SepId, Subset)> = system
        .members()
        .iter()
        .copied()
        .filter(|&y| y != x && y != ir && !u.is_degenerate(y) && u.le(y, ix))
        .map(|y| (y, u.payload(y).expect("payload-backed universe").b))
        .collect();
    let mut chosen = Vec::new();
    let full = Subset::full(u.ground_size());
    jdet_rec(u, family, r, s, x, bx, w, cu, &partners, 0, &mut chosen, full)
}

#[allow(clippy::too_many_arguments)]
fn jdet_rec(
    u: &Universe,
    family: &Family,
    r: SepId,
    s: SepId,
    x: SepId,
    bx: Subset,
    w: Subset,
    cu: Subset,
    partners: &[(SepId, Subset)],
    from: usize,
    chosen: &mut Vec<SepId>,
    j_rest: Subset,
) -> Option<ShiftViolation> {
    let size = chosen.len() + 1;
    if family.j_size_member(w.inter(j_rest).union(cu), size) {
        return None;
    }
    if family.j_size_member(bx.inter(j_rest), size) {
        let mut sigma = chosen.clone();
        sigma.push(x);
        let sigma = canon_set(&sigma);
        let shifted = shifted_image(u, &sigma, x, s);
        debug_assert!(!family.contains_canon(&shifted));
        return Some(ShiftViolation { r, s, x, sigma, shifted });
    }
    for i in from..partners.len() {
        let (y, by) = partners[i];
        let j2 = j_rest.inter(by);
        if j2 == j_rest {
            continue;
        }
        if !chosen.iter().all(|&z| u.le(y, u.inv(z))) || !u.le(y, u.inv(x)) {
            continue;
        }
        chosen.push(y);
        if let Some(v) =
            jdet_rec(u, family, r, s, x, bx, w, cu, partners, i + 1, chosen, j2)
        {
            return Some(v);
        }
        chosen.pop();
    }
    None
}

/// First failure of closure under shifting, if any: a family member that
/// shifts outside the family along an `s` emulating some eligible `r`,
/// meaning nontrivial, nondegenerate and with `{r*}` not in the family.
pub fn shifting_violation(
    family: &Family,
    system: &SeparationSystem,
) -> Result<Option<ShiftViolation>> {
    super::check_family_system(family, system)?;
    if !family.is_star_family() {
        return Err(Error::Precondition(
            "closure under shifting is about families of stars".into(),
        ));
    }
    let u = system.universe();
    let eligible: Vec<SepId> = system
        .members()
        .iter()
        .copied()
        .filter(|&r| {
            !u.is_degenerate(r) && !system.is_trivial(r) && !family.contains(&[u.inv(r)])
        })
        .collect();
    if eligible.is_empty() {
        return Ok(None);
    }
    let table = EmulationTable::new(system);
    let rows: Vec<IdSet> = eligible.iter().map(|&r| table.row(r)).collect();
    match (family.max_member_size(), family.is_j_determined()) {
        (Some(k), _) => {
            let mut cur = Vec::with_capacity(k);
            Ok(bounded_closure_rec(system, family, &eligible, &rows, k, 0, &mut cur))
        }
        (None, true) => Ok(jdet_closure(system, family, &eligible, &rows)),
        (None, false) => Err(Error::Internal(
            "family with unbounded members lacks a membership test by \
             right-side intersection"
                .into(),
        )),
    }
}

pub fn is_closed_under_shifting(
    family: &Family,
    system: &SeparationSystem,
) -> Result<bool> {
    Ok(shifting_violation(family, system)?.is_none())
}

fn bounded_closure_rec(
    system: &SeparationSystem,
    family: &Family,
    eligible: &[SepId],
    rows: &[IdSet],
    k: usize,
    from: usize,
    cur: &mut Vec<SepId>,
) -> Option<ShiftViolation> {
    if !cur.is_empty() && family.contains_canon(cur) {
        if let Some(v) = star_violation(system, family, eligible, rows, cur) {
            return Some(v);
        }
    }
    if cur.len() == k {
        return None;
    }
    let u = system.universe();
    let members = system.members();
    for (i, &y) in members.iter().enumerate().skip(from) {
        if u.is_degenerate(y) {
            continue;
        }
        if !cur.iter().all(|&z| u.le(y, u.inv(z))) {
            continue;
        }
        cur.push(y);
        if let Some(v) = bounded_closure_rec(system, family, eligible, rows, k, i + 1, cur)
        {
            return Some(v);
        }
        cur.pop();
    }
    None
}

/// Try all shifts of one family star: for every element, every eligible
/// `r` below it whose inverse the star avoids, and every `s` emulating
/// that `r`, the image must stay in the family. The image depends on the
/// element and `s` alone, so the `s` candidates are pooled across `r`.
fn star_violation(
    system: &SeparationSystem,
    family: &Family,
    eligible: &[SepId],
    rows: &[IdSet],
    sigma: &[SepId],
) -> Option<ShiftViolation> {
    let u = system.universe();
    let members = system.members();
    for &x in sigma {
        let applicable: Vec<usize> = (0..eligible.len())
            .filter(|&ei| {
                u.le(eligible[ei], x) && sigma.binary_search(&u.inv(eligible[ei])).is_err()
            })
            .collect();
        if applicable.is_empty() {
            continue;
        }
        let mut pooled = IdSet::new(members.len());
        for &ei in &applicable {
            pooled.union_with(&rows[ei]);
        }
        for si in pooled.iter() {
            let s = members[si];
            let shifted = shifted_image(u, sigma, x, s);
            if family.contains_canon(&shifted) {
                continue;
            }
            let &ei = applicable
                .iter()
                .find(|&&ei| rows[ei].contains(si))
                .expect("s was pooled from an applicable row");
            return Some(ShiftViolation {
                r: eligible[ei],
                s,
                x,
                sigma: sigma.to_vec(),
                shifted,
            });
        }
    }
    None
}

fn jdet_closure(
    system: &SeparationSystem,
    family: &Family,
    eligible: &[SepId],
    rows: &[IdSet],
) -> Option<ShiftViolation> {
    let u = system.universe();
    let members = system.members();
    for &x in members {
        if u.is_degenerate(x) {
            continue;
        }
        let applicable: Vec<usize> = (0..eligible.len())
            .filter(|&ei| u.le(eligible[ei], x) && u.inv(eligible[ei]) != x)
            .collect();
        if applicable.is_empty() {
            continue;
        }
        let bx = u.payload(x).expect("payload-backed universe").b;
        let mut pooled = IdSet::new(members.len());
        for &ei in &applicable {
            pooled.union_with(&rows[ei]);
        }
        for si in pooled.iter() {
            let s = members[si];
            let bs = u.payload(s).expect("payload-backed universe").b;
            // Every image of a star anchored at x lands inside this value;
            // membership is closed downwards, so a good value rules out
            // violations for this (x, s) under any r.
            if family.j_size_member(bx.inter(bs), 1) {
                continue;
            }
            for &ei in &applicable {
                if !rows[ei].contains(si) {
                    continue;
                }
                if let Some(v) = jdet_violation_at(system, family, eligible[ei], s, x) {
                    return Some(v);
                }
            }
        }
    }
    None
}

/// Pairwise emulation over the members of one system. The quantifier over
/// joins becomes one bitset intersection per candidate.
struct EmulationTable<'a> {
    system: &'a SeparationSystem,
    bad_join: Vec<IdSet>,
}

impl<'a> EmulationTable<'a> {
    fn new(system: &'a SeparationSystem) -> EmulationTable<'a> {
        let u = system.universe();
        let members = system.members();
        let bad_join = members
            .iter()
            .map(|&s| {
                let mut bad = IdSet::new(members.len());
                for (j, &t) in members.iter().enumerate() {
                    if !system.contains(u.join(s, t)) {
                        bad.insert(j);
                    }
                }
                bad
            })
            .collect();
        EmulationTable { system, bad_join }
    }

    /// Member positions of the separations that plainly emulate `r`.
    fn row(&self, r: SepId) -> IdSet {
        let u = self.system.universe();
        let members = self.system.members();
        let ir = u.inv(r);
        let mut above = IdSet::new(members.len());
        for (j, &t) in members.iter().enumerate() {
            if t != ir && u.le(r, t) {
                above.insert(j);
            }
        }
        let mut row = IdSet::new(members.len());
        for (i, &s) in members.iter().enumerate() {
            if u.le(r, s) && !above.intersects(&self.bad_join[i]) {
                row.insert(i);
            }
        }
        row
    }
}

/// First pair witnessing that the system is not separable: `r1 ≤ r2`, both
/// nontrivial and nondegenerate, with no member `s` such that `s` emulates
/// `r1` and `s*` emulates `r2*`. With a family, pairs one of whose ends is
/// forced are skipped and the emulations must also respect the family.
pub fn separability_violation(
    system: &SeparationSystem,
    family: Option<&Family>,
) -> Result<Option<(SepId, SepId)>> {
    if let Some(f) = family {
        super::check_family_system(f, system)?;
    }
    let u = system.universe();
    let members = system.members();
    let table = EmulationTable::new(system);
    let relevant: Vec<bool> = members
        .iter()
        .map(|&r| !u.is_degenerate(r) && !system.is_trivial(r))
        .collect();
    let rows: Vec<Option<IdSet>> = members
        .iter()
        .enumerate()
        .map(|(i, &r)| relevant[i].then(|| table.row(r)))
        .collect();
    let pos = |s: SepId| {
        members
            .binary_search(&s)
            .expect("members are closed under inversion")
    };
    let mut memo: HashMap<(SepId, SepId), bool> = HashMap::new();
    for (i1, &r1) in members.iter().enumerate() {
        if !relevant[i1] {
            continue;
        }
        if let Some(f) = family {
            if f.contains(&[u.inv(r1)]) {
                continue;
            }
        }
        for &r2 in members.iter() {
            if !u.le(r1, r2) {
                continue;
            }
            let ir2 = u.inv(r2);
            let i2 = pos(ir2);
            if !relevant[i2] {
                continue;
            }
            if let Some(f) = family {
                if f.contains(&[r2]) {
                    continue;
                }
            }
            let row1 = rows[i1].as_ref().expect("relevant position");
            let row2 = rows[i2].as_ref().expect("relevant position");
            let mut found = false;
            for (si, &s) in members.iter().enumerate() {
                if !row1.contains(si) || !row2.contains(pos(u.inv(s))) {
                    continue;
                }
                let ok = match family {
                    None => true,
                    Some(f) => {
                        family_shift_ok(system, f, r1, s, &mut memo)?
                            && family_shift_ok(system, f, ir2, u.inv(s), &mut memo)?
                    }
                };
                if ok {
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(Some((r1, r2)));
            }
        }
    }
    Ok(None)
}

pub fn is_separable(
    system: &SeparationSystem,
    family: Option<&Family>,
) -> Result<bool> {
    Ok(separability_violation(system, family)?.is_none())
}

fn family_shift_ok(
    system: &SeparationSystem,
    family: &Family,
    r: SepId,
    s: SepId,
    memo: &mut HashMap<(SepId, SepId), bool>,
) -> Result<bool> {
    if let Some(&v) = memo.get(&(r, s)) {
        return Ok(v);
    }
    let v = star_shift_violation(system, family, r, s)?.is_none();
    memo.insert((r, s), v);
    Ok(v)
}

/// Does `x` push `y` within the lattice subset `m`: `x ≤ y` and `x ∧ z`
/// stays in `m` for every `z ∈ m` with `z ≤ y`.
pub fn pushes(u: &Universe, m: &[SepId], x: SepId, y: SepId) -> Result<bool> {
    let m = checked_subset(u, m, &[x, y])?;
    Ok(pushes_in(u, &m, x, y))
}

/// Does `x` lift `y`: `x ≥ y` and `x ∨ z` stays in `m` for every `z ∈ m`
/// with `z ≥ y`.
pub fn lifts(u: &Universe, m: &[SepId], x: SepId, y: SepId) -> Result<bool> {
    let m = checked_subset(u, m, &[x, y])?;
    Ok(lifts_in(u, &m, x, y))
}

/// For `x ≤ y` in `m`, the first element (in id order) that lifts `x` and
/// pushes `y`. `None` only happens when `m` is not submodular.
pub fn find_lift_push(
    u: &Universe,
    m: &[SepId],
    x: SepId,
    y: SepId,
) -> Result<Option<SepId>> {
    let m = checked_subset(u, m, &[x, y])?;
    if !u.le(x, y) {
        return Err(Error::InvalidParams("find_lift_push needs x <= y".into()));
    }
    Ok(m.iter()
        .copied()
        .find(|&z| lifts_in(u, &m, z, x) && pushes_in(u, &m, z, y)))
}

fn pushes_in(u: &Universe, m: &[SepId], x: SepId, y: SepId) -> bool {
    u.le(x, y)
        && m.iter()
            .all(|&z| !u.le(z, y) || m.binary_search(&u.meet(x, z)).is_ok())
}

fn lifts_in(u: &Universe, m: &[SepId], x: SepId, y: SepId) -> bool {
    u.le(y, x)
        && m.iter()
            .all(|&z| !u.le(y, z) || m.binary_search(&u.join(x, z)).is_ok())
}

fn checked_subset(u: &Universe, m: &[SepId], required: &[SepId]) -> Result<Vec<SepId>> {
    for &s in m {
        u.check_id(s)?;
    }
    let m = canon_set(m);
    for &s in required {
        if m.binary_search(&s).is_err() {
            return Err(Error::NotAMember(s));
        }
    }
    Ok(m)
}
