//! Tangle search and the dual search for an S-tree over a family.

use crate::error::Result;
use crate::family::Family;
use crate::orientation::Orientation;
use crate::stree::STree;
use crate::system::SeparationSystem;
use crate::universe::SepId;

/// All consistent orientations of the system avoiding the family, in the
/// order found by orienting the unoriented members ascending, reference
/// orientation first.
pub fn enumerate_tangles(
    system: &SeparationSystem,
    family: &Family,
) -> Result<Vec<Orientation>> {
    super::check_family_system(family, system)?;
    let mut out = Vec::new();
    if family.contains(&[]) {
        return Ok(out);
    }
    let mut choice = Vec::with_capacity(system.unoriented_len());
    dfs(system, family, &mut choice, &mut |o| {
        out.push(o);
        true
    });
    Ok(out)
}

/// First tangle of the family in DFS order, if any.
pub(crate) fn find_tangle(
    system: &SeparationSystem,
    family: &Family,
) -> Option<Orientation> {
    if family.contains(&[]) {
        return None;
    }
    let mut found = None;
    let mut choice = Vec::with_capacity(system.unoriented_len());
    dfs(system, family, &mut choice, &mut |o| {
        found = Some(o);
        false
    });
    found
}

/// Orient members one at a time, pruning inconsistent branches and branches
/// that already swallowed a family member. Any member of the family inside
/// a finished orientation has a last-added element, so the anchored check
/// at that step catches it.
fn dfs<F: FnMut(Orientation) -> bool>(
    system: &SeparationSystem,
    family: &Family,
    choice: &mut Vec<SepId>,
    visit: &mut F,
) -> bool {
    let reps = system.reps();
    let i = choice.len();
    if i == reps.len() {
        return visit(Orientation::from_choice_unchecked(system.clone(), choice.clone()));
    }
    let u = system.universe();
    let rep = reps[i];
    let inv = u.inv(rep);
    let candidates = if rep == inv { &[rep][..] } else { &[rep, inv][..] };
    for &c in candidates {
        if !system.consistent_with(choice, c)
            || family.violation_with_anchor(choice, c).is_some()
        {
            continue;
        }
        choice.push(c);
        let keep_going = dfs(system, family, choice, visit);
        choice.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

pub(crate) enum StreeSearch {
    Found(STree),
    NoAnchor,
    Overflow,
}

/// Build an S-tree over the family, or report why none was found.
///
/// `h(s)` holds when some family star contains `s` and hangs an already
/// justified subtree off each of its other elements; the rounds compute the
/// least such predicate, and each witness only refers to strictly earlier
/// rounds, so gluing two justified halves along a member oriented both ways
/// unfolds into a finite tree. The node cap keeps pathological unfoldings
/// from running away; hitting it is reported, not papered over.
pub(crate) fn build_stree(
    system: &SeparationSystem,
    family: &Family,
) -> Result<StreeSearch> {
    let u = system.universe();
    let fp = h_fixpoint(system, family);
    let root = system
        .reps()
        .iter()
        .copied()
        .find(|&r| fp.h[r.index()] && fp.h[u.inv(r).index()]);
    let root = match root {
        Some(r) => r,
        None => return Ok(StreeSearch::NoAnchor),
    };
    let cap = 64 * (system.unoriented_len() + 1);
    let mut builder = Builder {
        system,
        witness: &fp.witness,
        edges: Vec::new(),
        nodes: 0,
        cap,
    };
    let n1 = match builder.build(root) {
        Some(n) => n,
        None => return Ok(StreeSearch::Overflow),
    };
    let n2 = match builder.build(u.inv(root)) {
        Some(n) => n,
        None => return Ok(StreeSearch::Overflow),
    };
    builder.edges.push((n2, n1, root));
    let tree = STree::new(system.clone(), builder.nodes, builder.edges)?;
    Ok(StreeSearch::Found(tree))
}

struct Fixpoint {
    h: Vec<bool>,
    witness: Vec<Option<Vec<SepId>>>,
}

fn h_fixpoint(system: &SeparationSystem, family: &Family) -> Fixpoint {
    let u = system.universe();
    let mut h = vec![false; u.len()];
    let mut witness: Vec<Option<Vec<SepId>>> = vec![None; u.len()];
    loop {
        let prev = h.clone();
        let allowed: Vec<SepId> = system
            .members()
            .iter()
            .copied()
            .filter(|&y| prev[u.inv(y).index()])
            .collect();
        let mut changed = false;
        for &s in system.members() {
            if h[s.index()] {
                continue;
            }
            if let Some(sigma) = family.find_star_containing(s, &allowed) {
                h[s.index()] = true;
                witness[s.index()] = Some(sigma);
                changed = true;
            }
        }
        if !changed {
            return Fixpoint { h, witness };
        }
    }
}

struct Builder<'a> {
    system: &'a SeparationSystem,
    witness: &'a [Option<Vec<SepId>>],
    edges: Vec<(usize, usize, SepId)>,
    nodes: usize,
    cap: usize,
}

impl Builder<'_> {
    /// One node whose star is the witness of `anchor`, with a subtree built
    /// across every element other than the anchor. `None` on hitting the cap.
    fn build(&mut self, anchor: SepId) -> Option<usize> {
        if self.nodes == self.cap {
            return None;
        }
        let node = self.nodes;
        self.nodes += 1;
        let sigma = self.witness[anchor.index()]
            .as_ref()
            .expect("witnesses exist wherever h holds")
            .clone();
        let u = self.system.universe();
        for y in sigma {
            if y == anchor {
                continue;
            }
            let child = self.build(u.inv(y))?;
            self.edges.push((child, node, y));
        }
        Some(node)
    }
}
