//! Families of separation sets and their membership predicates.
//!
//! A family is a set of finite subsets of a universe. Orientations are
//! tested against families ("avoiding"), S-trees are validated over them,
//! and the duality machinery shifts their members. Membership is structural
//! (computed from the defining predicate), never enumerated up front.

use crate::error::{Error, Result};
use crate::instances::graph::Graph;
use crate::sets::{IdSet, Subset};
use crate::system::SeparationSystem;
use crate::universe::{canon_set, is_star, SepId, Universe};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
enum Kind {
    /// Sets of up to three separations whose join is co-small.
    CosmallJoins,
    /// Sets of the form {s, t, (s ∨ t)*}; avoiding them makes a profile.
    Profiles,
    /// Singletons {s*} for non-degenerate s in a fixed down-closed Q.
    Forced { q: Arc<IdSet> },
    /// Stars with co-small join, plus the forced singletons for Q.
    TanglesExtending { q: Arc<IdSet> },
    /// Sets whose right sides intersect in fewer than m points, of size
    /// less than n if n is finite.
    SmallIntersection { m: usize, n: Option<usize> },
    /// Sets whose right sides intersect in a clique of the graph.
    CliqueSeparators { graph: Arc<Graph> },
    /// A finite list of sets, each stored sorted.
    Explicit { sets: Arc<Vec<Vec<SepId>>>, all_stars: bool },
}

/// Replacement rule used when uncrossing a member of a family into a star.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum UncrossRule {
    /// Swap a crossing element for an opposite corner; the join stays
    /// co-small.
    CosmallJoin,
    /// Swap a crossing element for an opposite corner; the right-side
    /// intersection is unchanged.
    Intersection,
    /// Prefer merging both crossing elements into their join, falling back
    /// to an opposite corner; the right-side intersection is unchanged.
    Clique,
}

/// A family of sets of oriented separations with a pure membership
/// predicate, optionally restricted to stars.
#[derive(Clone)]
pub struct Family {
    universe: Arc<Universe>,
    kind: Kind,
    star_only: bool,
}

impl Family {
    /// The family of up to-three-element sets with co-small join. Avoiding
    /// it makes a consistent orientation an abstract tangle.
    pub fn tangles(universe: Arc<Universe>) -> Family {
        Family { universe, kind: Kind::CosmallJoins, star_only: false }
    }

    /// The stars among [`Family::tangles`].
    pub fn tangle_stars(universe: Arc<Universe>) -> Family {
        Family::tangles(universe).stars()
    }

    /// The family whose avoidance makes a consistent orientation a profile.
    pub fn profiles(universe: Arc<Universe>) -> Family {
        Family { universe, kind: Kind::Profiles, star_only: false }
    }

    /// Singletons {s*} for the non-degenerate s ∈ Q; avoiding them forces an
    /// orientation to extend Q. Q must be down-closed in the universe.
    pub fn forced(universe: Arc<Universe>, q: &[SepId]) -> Result<Family> {
        let q = check_down_closed(&universe, q)?;
        Ok(Family { universe, kind: Kind::Forced { q: Arc::new(q) }, star_only: false })
    }

    /// Tangle stars together with the forced singletons for Q; the family
    /// whose tangles are the star-avoiding orientations extending Q.
    pub fn tangles_extending(universe: Arc<Universe>, q: &[SepId]) -> Result<Family> {
        let q = check_down_closed(&universe, q)?;
        Ok(Family {
            universe,
            kind: Kind::TanglesExtending { q: Arc::new(q) },
            star_only: false,
        })
    }

    /// Sets whose right sides have intersection smaller than m, restricted
    /// to sets of size below n when n is finite. Requires side payloads.
    pub fn small_intersection(
        universe: Arc<Universe>,
        m: usize,
        n: Option<usize>,
    ) -> Result<Family> {
        require_payloads(&universe)?;
        if m < 1 {
            return Err(Error::InvalidParams("m must be at least 1".into()));
        }
        if let Some(n) = n {
            if n < 2 {
                return Err(Error::InvalidParams("n must be at least 2".into()));
            }
        }
        Ok(Family { universe, kind: Kind::SmallIntersection { m, n }, star_only: false })
    }

    /// Sets whose right sides intersect in a clique of `graph`. Requires
    /// side payloads over the graph's vertex set.
    pub fn clique_separators(universe: Arc<Universe>, graph: Arc<Graph>) -> Result<Family> {
        require_payloads(&universe)?;
        if universe.ground_size() != graph.vertex_count() {
            return Err(Error::InvalidParams(
                "universe ground set and graph vertex set differ".into(),
            ));
        }
        Ok(Family { universe, kind: Kind::CliqueSeparators { graph }, star_only: false })
    }

    /// An explicit finite list of sets.
    pub fn explicit(universe: Arc<Universe>, sets: Vec<Vec<SepId>>) -> Result<Family> {
        let mut canon: Vec<Vec<SepId>> = Vec::with_capacity(sets.len());
        for set in sets {
            for &s in &set {
                universe.check_id(s)?;
            }
            canon.push(canon_set(&set));
        }
        canon.sort();
        canon.dedup();
        let all_stars = canon.iter().all(|s| is_star(&universe, s));
        Ok(Family {
            universe,
            kind: Kind::Explicit { sets: Arc::new(canon), all_stars },
            star_only: false,
        })
    }

    /// Restrict membership to stars.
    pub fn stars(mut self) -> Family {
        self.star_only = true;
        self
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn is_star_only(&self) -> bool {
        self.star_only
    }

    /// Every member of this family is a star (so the family qualifies for
    /// the duality search, whose trees carry stars at their nodes).
    pub fn is_star_family(&self) -> bool {
        self.star_only
            || match &self.kind {
                Kind::Forced { .. } | Kind::TanglesExtending { .. } => true,
                Kind::Explicit { all_stars, .. } => *all_stars,
                _ => false,
            }
    }

    /// Membership of the set (canonicalized first).
    pub fn contains(&self, set: &[SepId]) -> bool {
        let sigma = canon_set(set);
        self.contains_canon(&sigma)
    }

    pub(crate) fn contains_canon(&self, sigma: &[SepId]) -> bool {
        if self.star_only && !is_star(&self.universe, sigma) {
            return false;
        }
        self.kind_contains(sigma)
    }

    fn kind_contains(&self, sigma: &[SepId]) -> bool {
        let u = &self.universe;
        match &self.kind {
            Kind::CosmallJoins => {
                !sigma.is_empty()
                    && sigma.len() <= 3
                    && u.is_cosmall(u.join_all(sigma.iter().copied()).unwrap())
            }
            Kind::Profiles => sigma.iter().any(|&s| {
                sigma.iter().any(|&t| {
                    canon_set(&[s, t, u.inv(u.join(s, t))]) == sigma
                })
            }),
            Kind::Forced { q } => match sigma {
                [x] => !u.is_degenerate(*x) && q.contains(u.inv(*x).index()),
                _ => false,
            },
            Kind::TanglesExtending { q } => {
                let forced = match sigma {
                    [x] => !u.is_degenerate(*x) && q.contains(u.inv(*x).index()),
                    _ => false,
                };
                forced
                    || (!sigma.is_empty()
                        && sigma.len() <= 3
                        && is_star(u, sigma)
                        && u.is_cosmall(u.join_all(sigma.iter().copied()).unwrap()))
            }
            Kind::SmallIntersection { m, n } => {
                n.is_none_or(|n| sigma.len() < n) && self.j_of(sigma).len() < *m
            }
            Kind::CliqueSeparators { graph } => graph.is_clique(self.j_of(sigma)),
            Kind::Explicit { sets, .. } => sets.binary_search_by(|s| s.as_slice().cmp(sigma)).is_ok(),
        }
    }

    /// Intersection of the right sides of the payloads of `sigma`; the full
    /// ground set for the empty set.
    pub fn j_of(&self, sigma: &[SepId]) -> Subset {
        j_of_ids(&self.universe, sigma)
    }

    /// Find a member of the family inside `pool`, i.e. a subset of `pool`
    /// that lies in the family. `None` means `pool` avoids the family.
    pub fn violation_in(&self, pool: &[SepId]) -> Option<Vec<SepId>> {
        let pool = canon_set(pool);
        let u = &self.universe;
        if self.contains_canon(&[]) {
            return Some(Vec::new());
        }
        match &self.kind {
            Kind::Profiles => {
                let in_pool = |s: SepId| pool.binary_search(&s).is_ok();
                for &s in &pool {
                    for &t in &pool {
                        let r = u.inv(u.join(s, t));
                        if in_pool(r) {
                            let sigma = canon_set(&[s, t, r]);
                            if !self.star_only || is_star(u, &sigma) {
                                return Some(sigma);
                            }
                        }
                    }
                }
                None
            }
            Kind::Forced { q } => self.forced_violation(&pool, q),
            Kind::CosmallJoins => self.bounded_violation(&pool, 3),
            Kind::TanglesExtending { q } => self
                .forced_violation(&pool, q)
                .or_else(|| self.bounded_violation(&pool, 3)),
            Kind::SmallIntersection { m, n } => match n {
                Some(n) => self.bounded_violation(&pool, n - 1),
                None => {
                    if self.star_only {
                        find_star_shrinking(u, &pool, None, &|j, _| j.len() < *m)
                    } else {
                        // Up-closed: a member inside the pool exists exactly
                        // when the pool itself is one.
                        (self.j_of(&pool).len() < *m).then(|| pool.clone())
                    }
                }
            },
            Kind::CliqueSeparators { graph } => {
                if self.star_only {
                    find_star_shrinking(u, &pool, None, &|j, _| graph.is_clique(j))
                } else {
                    graph.is_clique(self.j_of(&pool)).then(|| pool.clone())
                }
            }
            Kind::Explicit { sets, .. } => {
                let in_pool = |s: SepId| pool.binary_search(&s).is_ok();
                sets.iter()
                    .find(|set| {
                        !set.is_empty()
                            && set.iter().all(|&s| in_pool(s))
                            && (!self.star_only || is_star(u, set))
                    })
                    .cloned()
            }
        }
    }

    fn forced_violation(&self, pool: &[SepId], q: &IdSet) -> Option<Vec<SepId>> {
        let u = &self.universe;
        pool.iter()
            .find(|&&x| !u.is_degenerate(x) && q.contains(u.inv(x).index()))
            .map(|&x| vec![x])
    }

    /// Enumerate subsets of the pool by increasing size, then in index
    /// order, so the first hit is a smallest witness. When the family is
    /// star-restricted only star prefixes are extended; that is sound
    /// because every subset of a star is a star.
    fn bounded_violation(&self, pool: &[SepId], k: usize) -> Option<Vec<SepId>> {
        let mut cur: Vec<SepId> = Vec::with_capacity(k);
        (1..=k).find_map(|want| self.sized_rec(pool, 0, want, &mut cur))
    }

    fn sized_rec(
        &self,
        pool: &[SepId],
        from: usize,
        want: usize,
        cur: &mut Vec<SepId>,
    ) -> Option<Vec<SepId>> {
        if cur.len() == want {
            return self.contains_canon(cur).then(|| cur.clone());
        }
        if pool.len() - from < want - cur.len() {
            return None;
        }
        let u = &self.universe;
        for i in from..pool.len() {
            let y = pool[i];
            if self.star_only {
                if u.is_degenerate(y) {
                    continue;
                }
                if !cur.iter().all(|&x| u.le(x, u.inv(y))) {
                    continue;
                }
            }
            cur.push(y);
            if let Some(found) = self.sized_rec(pool, i + 1, want, cur) {
                return Some(found);
            }
            cur.pop();
        }
        None
    }

    /// A member of the family inside `pool ∪ {anchor}` that contains
    /// `anchor`. `None` means adding `anchor` creates no new violation, so a
    /// pool already avoiding the family still avoids it.
    pub(crate) fn violation_with_anchor(
        &self,
        pool: &[SepId],
        anchor: SepId,
    ) -> Option<Vec<SepId>> {
        let u = &self.universe;
        let forced_hit = |q: &IdSet| {
            (!u.is_degenerate(anchor) && q.contains(u.inv(anchor).index()))
                .then(|| vec![anchor])
        };
        match &self.kind {
            Kind::Forced { q } => forced_hit(q),
            Kind::TanglesExtending { q } => {
                forced_hit(q).or_else(|| self.anchored_violation(pool, anchor, 3))
            }
            Kind::CosmallJoins => self.anchored_violation(pool, anchor, 3),
            Kind::Profiles => {
                let mut ext = pool.to_vec();
                ext.push(anchor);
                let ext = canon_set(&ext);
                let in_ext = |s: SepId| ext.binary_search(&s).is_ok();
                for &s in &ext {
                    for &t in &ext {
                        let r = u.inv(u.join(s, t));
                        if !in_ext(r) {
                            continue;
                        }
                        let sigma = canon_set(&[s, t, r]);
                        if sigma.binary_search(&anchor).is_ok() && self.contains_canon(&sigma) {
                            return Some(sigma);
                        }
                    }
                }
                None
            }
            Kind::SmallIntersection { n: Some(n), .. } => {
                self.anchored_violation(pool, anchor, n - 1)
            }
            Kind::SmallIntersection { n: None, .. } | Kind::CliqueSeparators { .. } => {
                if self.star_only {
                    if u.is_degenerate(anchor) {
                        return None;
                    }
                    let partners: Vec<SepId> = pool
                        .iter()
                        .copied()
                        .filter(|&y| {
                            y != anchor && !u.is_degenerate(y) && u.le(y, u.inv(anchor))
                        })
                        .collect();
                    let base = vec![anchor];
                    find_star_shrinking(u, &partners, Some(&base), &|j, size| {
                        self.j_size_member(j, size)
                    })
                } else {
                    // Membership only improves as the intersection shrinks,
                    // so the whole extended pool is the best candidate.
                    let mut ext = pool.to_vec();
                    ext.push(anchor);
                    let ext = canon_set(&ext);
                    self.contains_canon(&ext).then_some(ext)
                }
            }
            Kind::Explicit { sets, .. } => {
                let mut ext = pool.to_vec();
                ext.push(anchor);
                let ext = canon_set(&ext);
                let in_ext = |s: SepId| ext.binary_search(&s).is_ok();
                sets.iter()
                    .find(|set| {
                        set.binary_search(&anchor).is_ok()
                            && set.iter().all(|&s| in_ext(s))
                            && (!self.star_only || is_star(u, set))
                    })
                    .cloned()
            }
        }
    }

    /// Size-ascending search for a member containing `anchor` with all other
    /// elements from `pool`; sizes count the anchor.
    fn anchored_violation(
        &self,
        pool: &[SepId],
        anchor: SepId,
        k: usize,
    ) -> Option<Vec<SepId>> {
        if self.star_only && self.universe.is_degenerate(anchor) {
            return None;
        }
        let mut cur = vec![anchor];
        (1..=k).find_map(|want| self.anchored_sized_rec(pool, 0, want, &mut cur))
    }

    fn anchored_sized_rec(
        &self,
        pool: &[SepId],
        from: usize,
        want: usize,
        cur: &mut Vec<SepId>,
    ) -> Option<Vec<SepId>> {
        if cur.len() == want {
            let sigma = canon_set(cur);
            return self.contains_canon(&sigma).then_some(sigma);
        }
        if pool.len() - from < want - cur.len() {
            return None;
        }
        let u = &self.universe;
        for i in from..pool.len() {
            let y = pool[i];
            if cur.contains(&y) {
                continue;
            }
            if self.star_only {
                if u.is_degenerate(y) {
                    continue;
                }
                if !cur.iter().all(|&x| u.le(x, u.inv(y))) {
                    continue;
                }
            }
            cur.push(y);
            if let Some(found) = self.anchored_sized_rec(pool, i + 1, want, cur) {
                return Some(found);
            }
            cur.pop();
        }
        None
    }

    /// Membership of the kind's predicate alone, ignoring a star
    /// restriction. Uncrossing starts from such raw members.
    pub(crate) fn member_ignoring_stars(&self, set: &[SepId]) -> bool {
        self.kind_contains(&canon_set(set))
    }

    /// How crossing pairs inside a member of this family are resolved.
    pub(crate) fn uncross_rule(&self) -> Option<UncrossRule> {
        match &self.kind {
            Kind::CosmallJoins => Some(UncrossRule::CosmallJoin),
            Kind::SmallIntersection { .. } => Some(UncrossRule::Intersection),
            Kind::CliqueSeparators { .. } => Some(UncrossRule::Clique),
            _ => None,
        }
    }

    /// A star in the family that contains `anchor`, with all other elements
    /// drawn from `allowed`. Deterministic first hit or `None`.
    pub(crate) fn find_star_containing(
        &self,
        anchor: SepId,
        allowed: &[SepId],
    ) -> Option<Vec<SepId>> {
        let u = &self.universe;
        if u.is_degenerate(anchor) {
            return None;
        }
        let partners: Vec<SepId> = allowed
            .iter()
            .copied()
            .filter(|&y| y != anchor && !u.is_degenerate(y) && u.le(y, u.inv(anchor)))
            .collect();
        match (&self.kind, self.max_member_size()) {
            (Kind::Explicit { sets, .. }, _) => {
                let ok = |set: &Vec<SepId>| {
                    set.binary_search(&anchor).is_ok()
                        && set
                            .iter()
                            .all(|&s| s == anchor || partners.binary_search(&s).is_ok())
                        && is_star(u, set)
                };
                sets.iter().find(|s| ok(s)).cloned()
            }
            (_, Some(k)) => {
                let mut cur = vec![anchor];
                self.anchored_rec(&partners, 0, k, &mut cur)
            }
            _ => {
                // Size-unbounded families here have J-determined membership;
                // strictly shrinking extensions reach every achievable value.
                let base = vec![anchor];
                find_star_shrinking(u, &partners, Some(&base), &|j, size| {
                    self.j_size_member(j, size)
                })
            }
        }
    }

    fn anchored_rec(
        &self,
        partners: &[SepId],
        from: usize,
        k: usize,
        cur: &mut Vec<SepId>,
    ) -> Option<Vec<SepId>> {
        if self.contains_canon(&canon_set(cur)) {
            return Some(canon_set(cur));
        }
        if cur.len() == k {
            return None;
        }
        let u = &self.universe;
        for i in from..partners.len() {
            let y = partners[i];
            if !cur.iter().all(|&x| u.le(y, u.inv(x))) {
                continue;
            }
            cur.push(y);
            if let Some(found) = self.anchored_rec(partners, i + 1, k, cur) {
                return Some(found);
            }
            cur.pop();
        }
        None
    }

    /// Membership from the J-value and the set size alone, for the kinds
    /// where that determines it.
    pub(crate) fn j_size_member(&self, j: Subset, size: usize) -> bool {
        match &self.kind {
            Kind::SmallIntersection { m, n } => n.is_none_or(|n| size < n) && j.len() < *m,
            Kind::CliqueSeparators { graph } => graph.is_clique(j),
            _ => unreachable!("not a J-determined family"),
        }
    }

    pub(crate) fn is_j_determined(&self) -> bool {
        matches!(
            self.kind,
            Kind::SmallIntersection { .. } | Kind::CliqueSeparators { .. }
        )
    }

    /// Largest possible member size, when bounded.
    pub(crate) fn max_member_size(&self) -> Option<usize> {
        match &self.kind {
            Kind::CosmallJoins | Kind::Profiles | Kind::TanglesExtending { .. } => Some(3),
            Kind::Forced { .. } => Some(1),
            Kind::SmallIntersection { n: Some(n), .. } => Some(n - 1),
            Kind::SmallIntersection { n: None, .. } | Kind::CliqueSeparators { .. } => None,
            Kind::Explicit { sets, .. } => Some(sets.iter().map(|s| s.len()).max().unwrap_or(0)),
        }
    }

    /// First trivial member of the system whose forced singleton {s*} is
    /// missing from the family; `None` means the family is standard.
    pub fn standardness_violation(&self, system: &SeparationSystem) -> Option<SepId> {
        let u = &self.universe;
        system
            .members()
            .iter()
            .copied()
            .find(|&s| system.is_trivial(s) && !self.contains(&[u.inv(s)]))
    }

    pub fn is_standard_for(&self, system: &SeparationSystem) -> bool {
        self.standardness_violation(system).is_none()
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let star = if self.star_only { "*" } else { "" };
        match &self.kind {
            Kind::CosmallJoins => write!(f, "T{star}"),
            Kind::Profiles => write!(f, "P{star}"),
            Kind::Forced { q } => write!(f, "FQ{star}(|Q|={})", q.count()),
            Kind::TanglesExtending { q } => write!(f, "TQ{star}(|Q|={})", q.count()),
            Kind::SmallIntersection { m, n } => match n {
                Some(n) => write!(f, "F{star}^{n}_{m}"),
                None => write!(f, "F{star}^inf_{m}"),
            },
            Kind::CliqueSeparators { .. } => write!(f, "clique{star}"),
            Kind::Explicit { sets, .. } => write!(f, "explicit{star}({} sets)", sets.len()),
        }
    }
}

/// Intersection of the right payload sides; full ground set for ∅.
pub(crate) fn j_of_ids(u: &Universe, sigma: &[SepId]) -> Subset {
    let mut j = Subset::full(u.ground_size());
    for &s in sigma {
        j = j.inter(u.payload(s).expect("payload-backed universe").b);
    }
    j
}

/// Search for a star within `pool` (appended to the optional fixed `base`
/// star) whose J-value and size satisfy `pred`. Elements are added in index
/// order and each must strictly shrink the running intersection, which
/// reaches every (J, star) value achievable within the pool.
fn find_star_shrinking(
    u: &Universe,
    pool: &[SepId],
    base: Option<&Vec<SepId>>,
    pred: &dyn Fn(Subset, usize) -> bool,
) -> Option<Vec<SepId>> {
    let mut cur: Vec<SepId> = base.cloned().unwrap_or_default();
    let j = j_of_ids(u, &cur);
    star_shrink_rec(u, pool, 0, &mut cur, j, pred)
}

fn star_shrink_rec(
    u: &Universe,
    pool: &[SepId],
    from: usize,
    cur: &mut Vec<SepId>,
    j: Subset,
    pred: &dyn Fn(Subset, usize) -> bool,
) -> Option<Vec<SepId>> {
    // The empty set is the caller's concern; every nonempty node is a
    // candidate.
    if !cur.is_empty() && pred(j, cur.len()) {
        return Some(canon_set(cur));
    }
    for i in from..pool.len() {
        let y = pool[i];
        if u.is_degenerate(y) {
            continue;
        }
        let b = u.payload(y).expect("payload-backed universe").b;
        let j2 = j.inter(b);
        if j2 == j {
            continue;
        }
        if !cur.iter().all(|&x| u.le(y, u.inv(x))) {
            continue;
        }
        cur.push(y);
        if let Some(found) = star_shrink_rec(u, pool, i + 1, cur, j2, pred) {
            return Some(found);
        }
        cur.pop();
    }
    None
}

fn require_payloads(u: &Universe) -> Result<()> {
    if u.is_empty() || u.payload(crate::universe::SepId(0)).is_some() {
        Ok(())
    } else {
        Err(Error::InvalidParams(
            "family needs a universe with concrete side payloads".into(),
        ))
    }
}

fn check_down_closed(u: &Universe, q: &[SepId]) -> Result<IdSet> {
    let mut set = IdSet::new(u.len());
    for &s in q {
        u.check_id(s)?;
        set.insert(s.index());
    }
    for &s in q {
        for r in u.ids() {
            if u.le(r, s) && !set.contains(r.index()) {
                return Err(Error::NotDownClosed(s, r));
            }
        }
    }
    Ok(set)
}
