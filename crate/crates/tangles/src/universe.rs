//! Finite universes of oriented separations.
//!
//! A universe is a finite lattice with an order-reversing involution `*`.
//! Elements are oriented separations addressed by dense ids; the unoriented
//! separation behind an id is the pair `{s, s*}`. All order data (the
//! relation, joins and meets) is materialized into tables at construction,
//! so queries are table lookups.
//!
//! Ids are assigned in payload order where payloads exist, so the reference
//! orientation of an unoriented separation (the one whose payload is
//! lexicographically least) is always the smaller id of the pair.

use crate::error::{Error, Result};
use crate::sets::{BitMatrix, SidePair};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Identifier of an oriented separation within its universe.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SepId(pub(crate) u32);

impl SepId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for SepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for SepId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub struct Universe {
    n: usize,
    ground: usize,
    inv: Vec<SepId>,
    /// `up.get(i, j)` holds exactly when `i <= j`.
    up: BitMatrix,
    join: Vec<u32>,
    meet: Vec<u32>,
    distributive: bool,
    payloads: Option<Vec<SidePair>>,
    payload_ids: HashMap<(u64, u64), SepId>,
    refs: Vec<SepId>,
    reps: Vec<SepId>,
}

impl Universe {
    /// Materialize a universe from closures. The tables are filled verbatim;
    /// use [`Universe::validate`] to audit the result. `ground` is the size
    /// of the underlying point set when payloads are given.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts<FI, FL, FJ, FM>(
        payloads: Option<Vec<SidePair>>,
        ground: usize,
        n: usize,
        inv: FI,
        le: FL,
        join: FJ,
        meet: FM,
        distributive: bool,
    ) -> Arc<Universe>
    where
        FI: Fn(usize) -> usize,
        FL: Fn(usize, usize) -> bool,
        FJ: Fn(usize, usize) -> usize,
        FM: Fn(usize, usize) -> usize,
    {
        if let Some(p) = &payloads {
            assert_eq!(p.len(), n);
        }
        let inv: Vec<SepId> = (0..n).map(|i| SepId(inv(i) as u32)).collect();
        let mut up = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if le(i, j) {
                    up.set(i, j);
                }
            }
        }
        let mut join_t = vec![0u32; n * n];
        let mut meet_t = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                join_t[i * n + j] = join(i, j) as u32;
                meet_t[i * n + j] = meet(i, j) as u32;
            }
        }
        let mut payload_ids = HashMap::new();
        if let Some(p) = &payloads {
            for (i, sp) in p.iter().enumerate() {
                payload_ids.insert((sp.a.0, sp.b.0), SepId(i as u32));
            }
        }
        let mut refs = vec![SepId(0); n];
        for i in 0..n {
            let j = inv[i].index();
            let r = match &payloads {
                Some(p) if i != j => match p[i].lex_cmp(&p[j]) {
                    std::cmp::Ordering::Greater => SepId(j as u32),
                    _ => SepId(i as u32),
                },
                _ => SepId(i.min(j) as u32),
            };
            refs[i] = r;
        }
        let mut reps: Vec<SepId> = (0..n).map(|i| refs[i]).collect();
        reps.sort();
        reps.dedup();
        Arc::new(Universe {
            n,
            ground,
            inv,
            up,
            join: join_t,
            meet: meet_t,
            distributive,
            payloads,
            payload_ids,
            refs,
            reps,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn ids(&self) -> impl Iterator<Item = SepId> {
        (0..self.n as u32).map(SepId)
    }

    pub fn check_id(&self, s: SepId) -> Result<()> {
        if s.index() < self.n {
            Ok(())
        } else {
            Err(Error::UnknownId(s))
        }
    }

    pub fn inv(&self, s: SepId) -> SepId {
        self.inv[s.index()]
    }

    pub fn le(&self, a: SepId, b: SepId) -> bool {
        self.up.get(a.index(), b.index())
    }

    pub fn lt(&self, a: SepId, b: SepId) -> bool {
        a != b && self.le(a, b)
    }

    pub fn join(&self, a: SepId, b: SepId) -> SepId {
        SepId(self.join[a.index() * self.n + b.index()])
    }

    pub fn meet(&self, a: SepId, b: SepId) -> SepId {
        SepId(self.meet[a.index() * self.n + b.index()])
    }

    pub fn join_all<I: IntoIterator<Item = SepId>>(&self, it: I) -> Option<SepId> {
        it.into_iter().fold(None, |acc, s| match acc {
            None => Some(s),
            Some(a) => Some(self.join(a, s)),
        })
    }

    pub fn is_distributive(&self) -> bool {
        self.distributive
    }

    pub fn is_small(&self, s: SepId) -> bool {
        self.le(s, self.inv(s))
    }

    pub fn is_cosmall(&self, s: SepId) -> bool {
        self.le(self.inv(s), s)
    }

    pub fn is_degenerate(&self, s: SepId) -> bool {
        self.inv(s) == s
    }

    /// The reference orientation of the unoriented separation behind `s`.
    pub fn reference(&self, s: SepId) -> SepId {
        self.refs[s.index()]
    }

    /// Reference orientations, one per unoriented separation, ascending.
    pub fn reps(&self) -> &[SepId] {
        &self.reps
    }

    pub fn unoriented_count(&self) -> usize {
        self.reps.len()
    }

    pub fn payload(&self, s: SepId) -> Option<&SidePair> {
        self.payloads.as_ref().map(|p| &p[s.index()])
    }

    pub fn id_of_payload(&self, p: &SidePair) -> Option<SepId> {
        self.payload_ids.get(&(p.a.0, p.b.0)).copied()
    }

    /// Same unoriented separation.
    pub fn same_sep(&self, a: SepId, b: SepId) -> bool {
        a == b || self.inv(a) == b
    }

    /// How two unoriented separations relate: a nesting witness if some
    /// orientations are comparable, plus the comparabilities of the two
    /// orientations as given.
    pub fn relate(&self, s: SepId, t: SepId) -> Relation {
        let si = self.inv(s);
        let ti = self.inv(t);
        let mut nesting = None;
        for (a, b) in [(s, t), (s, ti), (si, t), (si, ti)] {
            if self.le(a, b) {
                nesting = Some((a, b));
                break;
            }
        }
        Relation { nesting, forward_le: self.le(s, t), forward_ge: self.le(t, s) }
    }

    pub fn nested(&self, s: SepId, t: SepId) -> bool {
        self.relate(s, t).nesting.is_some()
    }

    /// The four corners of two unoriented separations: all meets of
    /// orientation pairs, taken from the reference orientations.
    pub fn corners(&self, s: SepId, t: SepId) -> [SepId; 4] {
        let s0 = self.reference(s);
        let t0 = self.reference(t);
        let s1 = self.inv(s0);
        let t1 = self.inv(t0);
        [self.meet(s0, t0), self.meet(s0, t1), self.meet(s1, t0), self.meet(s1, t1)]
    }

    /// Audit every structural law of the universe. An empty report means the
    /// tables really are a lattice with an order-reversing involution (and
    /// distributive if flagged).
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n;
        for i in 0..n {
            let s = SepId(i as u32);
            if self.inv(self.inv(s)) != s {
                report.push(ValidationRule::Involution, vec![s]);
            }
            if !self.le(s, s) {
                report.push(ValidationRule::Reflexive, vec![s]);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let (s, t) = (SepId(i as u32), SepId(j as u32));
                if i != j && self.le(s, t) && self.le(t, s) {
                    report.push(ValidationRule::Antisymmetric, vec![s, t]);
                }
                if self.le(s, t) && !self.le(self.inv(t), self.inv(s)) {
                    report.push(ValidationRule::OrderReversing, vec![s, t]);
                }
                // i <= j forces row(j) within row(i) of upward cones.
                if self.le(s, t) && !self.up.row_subset(t.index(), s.index()) {
                    report.push(ValidationRule::Transitive, vec![s, t]);
                }
                if self.inv(self.join(s, t)) != self.meet(self.inv(s), self.inv(t)) {
                    report.push(ValidationRule::DeMorgan, vec![s, t]);
                }
                let j0 = self.join(s, t);
                if !self.le(s, j0)
                    || !self.le(t, j0)
                    || !(0..n).all(|u| {
                        let u = SepId(u as u32);
                        !(self.le(s, u) && self.le(t, u)) || self.le(j0, u)
                    })
                {
                    report.push(ValidationRule::JoinIsLub, vec![s, t]);
                }
                let m0 = self.meet(s, t);
                if !self.le(m0, s)
                    || !self.le(m0, t)
                    || !(0..n).all(|u| {
                        let u = SepId(u as u32);
                        !(self.le(u, s) && self.le(u, t)) || self.le(u, m0)
                    })
                {
                    report.push(ValidationRule::MeetIsGlb, vec![s, t]);
                }
            }
        }
        if self.distributive {
            'outer: for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let (x, y, z) = (SepId(i as u32), SepId(j as u32), SepId(k as u32));
                        let lhs = self.meet(x, self.join(y, z));
                        let rhs = self.join(self.meet(x, y), self.meet(x, z));
                        if lhs != rhs {
                            report.push(ValidationRule::Distributive, vec![x, y, z]);
                            break 'outer;
                        }
                    }
                }
            }
        }
        report
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Universe")
            .field("n", &self.n)
            .field("ground", &self.ground)
            .field("distributive", &self.distributive)
            .finish()
    }
}

/// Result of [`Universe::relate`].
#[derive(Clone, Copy, Debug)]
pub struct Relation {
    /// A comparable orientation pair `(a, b)` with `a <= b`, or `None` when
    /// the separations cross.
    pub nesting: Option<(SepId, SepId)>,
    pub forward_le: bool,
    pub forward_ge: bool,
}

impl Relation {
    pub fn crossing(&self) -> bool {
        self.nesting.is_none()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ValidationRule {
    Involution,
    Reflexive,
    Antisymmetric,
    Transitive,
    OrderReversing,
    JoinIsLub,
    MeetIsGlb,
    DeMorgan,
    Distributive,
}

impl fmt::Display for ValidationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ValidationRule::Involution => "involution",
            ValidationRule::Reflexive => "reflexivity",
            ValidationRule::Antisymmetric => "antisymmetry",
            ValidationRule::Transitive => "transitivity",
            ValidationRule::OrderReversing => "order-reversing involution",
            ValidationRule::JoinIsLub => "join is least upper bound",
            ValidationRule::MeetIsGlb => "meet is greatest lower bound",
            ValidationRule::DeMorgan => "De Morgan",
            ValidationRule::Distributive => "distributivity",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug)]
pub struct Violation {
    pub rule: ValidationRule,
    pub ids: Vec<SepId>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at", self.rule)?;
        for id in &self.ids {
            write!(f, " {id}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn push(&mut self, rule: ValidationRule, ids: Vec<SepId>) {
        self.violations.push(Violation { rule, ids });
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, rule: ValidationRule) -> bool {
        self.violations.iter().any(|v| v.rule == rule)
    }
}

/// A star: every two distinct elements point towards each other and no
/// element is degenerate.
pub fn is_star(u: &Universe, sigma: &[SepId]) -> bool {
    for (i, &s) in sigma.iter().enumerate() {
        if u.is_degenerate(s) {
            return false;
        }
        for &t in &sigma[i + 1..] {
            if s == t {
                continue;
            }
            if !u.le(s, u.inv(t)) {
                return false;
            }
        }
    }
    true
}

/// Sort and deduplicate a set of ids.
pub(crate) fn canon_set(sigma: &[SepId]) -> Vec<SepId> {
    let mut v = sigma.to_vec();
    v.sort();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::bipartition::bipartition_universe;
    use crate::sets::Subset;

    #[test]
    fn one_point_universe_is_valid() {
        // The single degenerate separation (∅,∅) over an empty ground set.
        let u = Universe::from_parts(
            Some(vec![SidePair::new(Subset::EMPTY, Subset::EMPTY)]),
            0,
            1,
            |i| i,
            |_, _| true,
            |_, _| 0,
            |_, _| 0,
            true,
        );
        assert!(u.validate().is_valid());
        assert!(u.is_degenerate(SepId(0)));
        assert!(u.is_small(SepId(0)) && u.is_cosmall(SepId(0)));
    }

    #[test]
    fn broken_involution_is_reported_with_witness() {
        // Two incomparable elements with inv = identity: inv is an
        // involution but fails to reverse the (trivial) order... so break
        // LUB instead by pointing join at element 0 always.
        let u = Universe::from_parts(
            None,
            0,
            2,
            |i| i,
            |i, j| i == j,
            |_, _| 0,
            |_, _| 0,
            false,
        );
        let report = u.validate();
        assert!(!report.is_valid());
        assert!(report.has(ValidationRule::JoinIsLub));
        let v = report
            .violations
            .iter()
            .find(|v| v.rule == ValidationRule::JoinIsLub)
            .unwrap();
        assert_eq!(v.ids, vec![SepId(0), SepId(1)]);
    }

    #[test]
    fn relate_reports_nesting_and_comparability() {
        let u = bipartition_universe(3).unwrap();
        // ({0}, {1,2}) <= ({0,1}, {2})
        let s = u
            .id_of_payload(&SidePair::new(
                Subset::singleton(0),
                Subset::from_elems([1, 2]),
            ))
            .unwrap();
        let t = u
            .id_of_payload(&SidePair::new(
                Subset::from_elems([0, 1]),
                Subset::singleton(2),
            ))
            .unwrap();
        let rel = u.relate(s, t);
        assert_eq!(rel.nesting, Some((s, t)));
        assert!(rel.forward_le && !rel.forward_ge);

        // ({0}, {1,2}) crosses nothing in a bipartition universe of 3
        // points; every pair of bipartitions of a 3-set is nested.
        for a in u.ids() {
            for b in u.ids() {
                assert!(u.relate(a, b).nesting.is_some());
            }
        }
    }

    #[test]
    fn bipartition_universe_validates() {
        for n in 1..=4 {
            let u = bipartition_universe(n).unwrap();
            assert_eq!(u.len(), 1 << n);
            assert!(u.validate().is_valid(), "n = {n}");
        }
    }

    #[test]
    fn star_accepts_empty_and_rejects_degenerate() {
        let u = Universe::from_parts(
            Some(vec![SidePair::new(Subset::EMPTY, Subset::EMPTY)]),
            0,
            1,
            |i| i,
            |_, _| true,
            |_, _| 0,
            |_, _| 0,
            true,
        );
        assert!(is_star(&u, &[]));
        assert!(!is_star(&u, &[SepId(0)]));
    }
}
