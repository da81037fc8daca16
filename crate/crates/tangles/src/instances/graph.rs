//! Graphs, their separation universes, clique separation systems, hole
//! analysis, and tree-decompositions with their S-tree counterparts.

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::sets::{SidePair, Subset};
use crate::stree::{check_tree_shape, STree};
use crate::system::SeparationSystem;
use crate::universe::{SepId, Universe};
use std::collections::HashMap;
use std::sync::Arc;

/// Hard cap on the number of oriented separations a graph universe may
/// materialize; the order tables are quadratic in this.
const MAX_SEPARATIONS: usize = 4000;

/// An undirected loopless graph on vertices 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Subset>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        if n > 16 {
            return Err(Error::InvalidParams(format!(
                "graph on {n} vertices exceeds the supported maximum of 16"
            )));
        }
        let mut adj = vec![Subset::EMPTY; n];
        for &(a, b) in edges {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({a}, {b}) leaves the vertex range"
                )));
            }
            if a == b {
                return Err(Error::InvalidParams(format!("loop at vertex {a}")));
            }
            adj[a as usize] = adj[a as usize].with(b);
            adj[b as usize] = adj[b as usize].with(a);
        }
        Ok(Graph { n, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn adjacency(&self, v: u32) -> Subset {
        self.adj[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].contains(b)
    }

    /// Edges as sorted pairs (a < b), ascending.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.n as u32 {
            for b in self.adj[a as usize].iter() {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_clique(&self, s: Subset) -> bool {
        s.iter().all(|v| s.minus(Subset::singleton(v)).is_subset_of(self.adj[v as usize]))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        self.reach(Subset::singleton(0), Subset::EMPTY) == self.vertices()
    }

    /// Vertices reachable from `from` without entering `blocked`.
    fn reach(&self, from: Subset, blocked: Subset) -> Subset {
        let mut seen = from.minus(blocked);
        loop {
            let mut next = seen;
            for v in seen.iter() {
                next = next.union(self.adj[v as usize].minus(blocked));
            }
            if next == seen {
                return seen;
            }
            seen = next;
        }
    }

    /// `(A, B)` is a separation: the sides cover V and no edge joins
    /// A∖B to B∖A.
    pub fn is_separation(&self, a: Subset, b: Subset) -> bool {
        a.union(b) == self.vertices()
            && a.minus(b)
                .iter()
                .all(|v| self.adj[v as usize].inter(b.minus(a)).is_empty())
    }

    /// A label-invariant code: the smallest upper-triangle bit encoding of
    /// the adjacency matrix over all vertex permutations. Intended for
    /// deduplicating small test corpora, so it brute-forces permutations.
    pub fn canonical_code(&self) -> u64 {
        let mut perm: Vec<u32> = (0..self.n as u32).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut code = 0u64;
            let mut bit = 0;
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if self.has_edge(p[i], p[j]) {
                        code |= 1 << bit;
                    }
                    bit += 1;
                }
            }
            best = best.min(code);
        });
        best
    }
}

fn permute(p: &mut Vec<u32>, k: usize, visit: &mut impl FnMut(&[u32])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// The universe of all separations of the graph, ordered by (A,B) ≤ (C,D)
/// iff A ⊆ C and B ⊇ D. Joins and meets act componentwise, so the lattice
/// is distributive.
pub fn separation_universe(g: &Graph) -> Result<Arc<Universe>> {
    let full = g.vertices();
    let mut payloads: Vec<SidePair> = Vec::new();
    for a_bits in 0..1u64 << g.n {
        let a = Subset(a_bits);
        let rest = full.minus(a);
        // B ranges over (V ∖ A) ∪ Y for Y ⊆ A.
        let mut y = a.0;
        loop {
            let b = rest.union(Subset(y));
            if g.is_separation(a, b) {
                payloads.push(SidePair::new(a, b));
            }
            if y == 0 {
                break;
            }
            y = (y - 1) & a.0;
        }
    }
    if payloads.len() > MAX_SEPARATIONS {
        return Err(Error::InvalidParams(format!(
            "{} separations exceed the supported maximum of {MAX_SEPARATIONS}",
            payloads.len()
        )));
    }
    payloads.sort_by(|x, y| x.lex_cmp(y));
    let index: HashMap<(u64, u64), usize> = payloads
        .iter()
        .enumerate()
        .map(|(i, p)| ((p.a.0, p.b.0), i))
        .collect();
    let at = move |p: SidePair| -> usize {
        *index
            .get(&(p.a.0, p.b.0))
            .expect("separations of a graph are closed under corners")
    };
    let n = payloads.len();
    let p = payloads.clone();
    Ok(Universe::from_parts(
        Some(payloads),
        g.n,
        n,
        {
            let p = p.clone();
            let at = at.clone();
            move |i| at(p[i].flip())
        },
        {
            let p = p.clone();
            move |i, j| p[i].a.is_subset_of(p[j].a) && p[j].b.is_subset_of(p[i].b)
        },
        {
            let p = p.clone();
            let at = at.clone();
            move |i, j| at(SidePair::new(p[i].a.union(p[j].a), p[i].b.inter(p[j].b)))
        },
        {
            let p = p.clone();
            move |i, j| at(SidePair::new(p[i].a.inter(p[j].a), p[i].b.union(p[j].b)))
        },
        true,
    ))
}

/// The separation universe together with the system of separations whose
/// separator A∩B induces a clique (the empty separator counts).
pub fn clique_system(g: &Graph) -> Result<(Arc<Universe>, SeparationSystem)> {
    if g.is_complete() {
        return Err(Error::InvalidParams(
            "a complete graph has no clique separation system".into(),
        ));
    }
    let u = separation_universe(g)?;
    let ids: Vec<SepId> = u
        .ids()
        .filter(|&s| {
            let p = u.payload(s).expect("graph universes carry payloads");
            g.is_clique(p.a.inter(p.b))
        })
        .collect();
    let sys = SeparationSystem::new(u.clone(), ids)?;
    debug_assert!(!sys.has_degenerate());
    Ok((u, sys))
}

/// Vertex sets inducing a cycle of length at least four, in side order.
pub fn holes(g: &Graph) -> Vec<Subset> {
    let mut out: Vec<Subset> = Vec::new();
    for bits in 0..1u64 << g.vertex_count() {
        let h = Subset(bits);
        if h.len() >= 4 && induces_cycle(g, h) {
            out.push(h);
        }
    }
    out.sort_by(|a, b| a.lex_cmp(*b));
    out
}

fn induces_cycle(g: &Graph, h: Subset) -> bool {
    h.iter().all(|v| g.adjacency(v).inter(h).len() == 2)
        && g.reach(Subset::singleton(h.iter().next().unwrap()), g.vertices().minus(h)) == h
}

/// Inclusion-minimal a-b-separators over all non-adjacent vertex pairs.
pub fn minimal_separators(g: &Graph) -> Vec<Subset> {
    let mut found: Vec<Subset> = Vec::new();
    let n = g.vertex_count() as u32;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            let others = g.vertices().minus(Subset::from_elems([a, b]));
            let mut seps: Vec<Subset> = Vec::new();
            let mut x = others.0;
            loop {
                let cand = Subset(x);
                if !g.reach(Subset::singleton(a), cand).contains(b) {
                    seps.push(cand);
                }
                if x == 0 {
                    break;
                }
                x = (x - 1) & others.0;
            }
            for &s in &seps {
                if !seps.iter().any(|&t| t != s && t.is_subset_of(s)) {
                    found.push(s);
                }
            }
        }
    }
    found.sort_by(|a, b| a.lex_cmp(*b));
    found.dedup();
    found
}

/// Hole-free, cross-checked against the separator criterion: a graph is
/// chordal exactly when every minimal separator induces a clique.
pub fn is_chordal(g: &Graph) -> bool {
    let hole_free = holes(g).is_empty();
    debug_assert_eq!(
        hole_free,
        minimal_separators(g).iter().all(|&s| g.is_clique(s)),
    );
    hole_free
}

/// The orientation O_H of a clique system: every member points at the side
/// containing the hole.
pub fn hole_orientation(system: &SeparationSystem, hole: Subset) -> Result<Orientation> {
    let u = system.universe();
    let mut ids = Vec::with_capacity(system.unoriented_len());
    for &rep in system.reps() {
        let choice = [rep, u.inv(rep)].into_iter().find(|&s| {
            u.payload(s).is_some_and(|p| hole.is_subset_of(p.b))
        });
        match choice {
            Some(s) => ids.push(s),
            None => {
                return Err(Error::Internal(format!(
                    "hole {hole:?} is split by a clique separation"
                )))
            }
        }
    }
    Orientation::from_ids(system.clone(), ids)
}

/// Holes, chordality, minimal separators, and the hole orientations of the
/// clique system (one per hole, aligned with `holes`).
#[derive(Clone, Debug)]
pub struct HoleAnalysis {
    pub holes: Vec<Subset>,
    pub chordal: bool,
    pub minimal_separators: Vec<Subset>,
    pub hole_orientations: Vec<Orientation>,
}

pub fn hole_analysis(g: &Graph) -> Result<HoleAnalysis> {
    let holes = holes(g);
    let chordal = is_chordal(g);
    let minimal_separators = minimal_separators(g);
    let mut hole_orientations = Vec::with_capacity(holes.len());
    if !holes.is_empty() {
        // A hole contains two non-adjacent vertices, so the graph is not
        // complete and the clique system exists.
        let (_, sys) = clique_system(g)?;
        for &h in &holes {
            hole_orientations.push(hole_orientation(&sys, h)?);
        }
    }
    Ok(HoleAnalysis { holes, chordal, minimal_separators, hole_orientations })
}

/// A tree-decomposition: a tree shape with one bag of vertices per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Subset>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Subset>, edges: Vec<(usize, usize)>) -> Result<TreeDecomposition> {
        check_tree_shape(bags.len(), edges.iter().copied())?;
        Ok(TreeDecomposition { bags, edges })
    }

    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn bags(&self) -> &[Subset] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64).max().unwrap_or(0) - 1
    }

    pub fn all_bags_cliques(&self, g: &Graph) -> bool {
        self.bags.iter().all(|&b| g.is_clique(b))
    }

    /// First violated tree-decomposition axiom for `g`: vertex coverage,
    /// edge coverage, or connectivity of each vertex's bag set.
    pub fn violation_for(&self, g: &Graph) -> Option<String> {
        let union = self.bags.iter().fold(Subset::EMPTY, |acc, &b| acc.union(b));
        if union != g.vertices() {
            return Some(format!(
                "vertices {:?} appear in no bag",
                g.vertices().minus(union)
            ));
        }
        for (a, b) in g.edges() {
            let pair = Subset::from_elems([a, b]);
            if !self.bags.iter().any(|bag| pair.is_subset_of(*bag)) {
                return Some(format!("edge ({a}, {b}) is covered by no bag"));
            }
        }
        for v in g.vertices().iter() {
            let holding: Vec<usize> = (0..self.bags.len())
                .filter(|&t| self.bags[t].contains(v))
                .collect();
            let mut seen = vec![false; self.bags.len()];
            let mut stack = vec![holding[0]];
            seen[holding[0]] = true;
            while let Some(t) = stack.pop() {
                for &(x, y) in &self.edges {
                    for (from, to) in [(x, y), (y, x)] {
                        if from == t && !seen[to] && self.bags[to].contains(v) {
                            seen[to] = true;
                            stack.push(to);
                        }
                    }
                }
            }
            if holding.iter().any(|&t| !seen[t]) {
                return Some(format!("bags containing vertex {v} are disconnected"));
            }
        }
        None
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.violation_for(g).is_none()
    }
}

/// Read a tree-decomposition off an S-tree: the bag at a node is the
/// intersection of the second sides of its star. The result is checked
/// against `g`.
pub fn stree_to_tree_decomposition(tree: &STree, g: &Graph) -> Result<TreeDecomposition> {
    let u = tree.system().universe();
    let mut bags = Vec::with_capacity(tree.node_count());
    for t in 0..tree.node_count() {
        let mut bag = g.vertices();
        for s in tree.star_at(t) {
            let p = u
                .payload(s)
                .ok_or_else(|| Error::InvalidParams("universe has no payloads".into()))?;
            bag = bag.inter(p.b);
        }
        bags.push(bag);
    }
    let edges = tree.edges().iter().map(|&(a, b, _)| (a, b)).collect();
    let td = TreeDecomposition::new(bags, edges)?;
    if let Some(why) = td.violation_for(g) {
        return Err(Error::Precondition(format!(
            "S-tree does not induce a tree-decomposition: {why}"
        )));
    }
    Ok(td)
}

/// Turn a tree-decomposition with all-clique bags into an S-tree on the
/// clique system: the edge from s to t carries the separation whose sides
/// are the unions of bags on either side.
pub fn tree_decomposition_to_stree(
    td: &TreeDecomposition,
    g: &Graph,
    system: &SeparationSystem,
) -> Result<STree> {
    if let Some(why) = td.violation_for(g) {
        return Err(Error::Precondition(why));
    }
    if !td.all_bags_cliques(g) {
        return Err(Error::Precondition("a bag is not a clique".into()));
    }
    let u = system.universe();
    let mut edges = Vec::with_capacity(td.edges().len());
    for &(s, t) in td.edges() {
        let side = |start: usize, cut: (usize, usize)| -> Subset {
            let mut seen = vec![false; td.node_count()];
            seen[start] = true;
            let mut stack = vec![start];
            let mut union = Subset::EMPTY;
            while let Some(x) = stack.pop() {
                union = union.union(td.bags()[x]);
                for &(p, q) in td.edges() {
                    if (p, q) == cut || (q, p) == cut {
                        continue;
                    }
                    for (from, to) in [(p, q), (q, p)] {
                        if from == x && !seen[to] {
                            seen[to] = true;
                            stack.push(to);
                        }
                    }
                }
            }
            union
        };
        let a = side(s, (s, t));
        let b = side(t, (s, t));
        let id = u
            .id_of_payload(&SidePair::new(a, b))
            .ok_or_else(|| Error::Internal(format!("({a:?},{b:?}) is not a separation")))?;
        system.check_member(id)?;
        edges.push((s, t, id));
    }
    STree::new(system.clone(), td.node_count(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn diamond() -> Graph {
        Graph::new(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn path_clique_system_contains_the_cut_separation() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let (u, sys) = clique_system(&g).unwrap();
        let id = u
            .id_of_payload(&SidePair::new(Subset::from_elems([0, 1]), Subset::from_elems([1, 2])))
            .unwrap();
        assert!(sys.contains(id));
        assert!(sys.is_submodular());
    }

    #[test]
    fn c4_clique_system_is_the_eighteen_corner_separations() {
        let (u, sys) = clique_system(&c4()).unwrap();
        assert_eq!(sys.oriented_len(), 18);
        // Every member has a full side: only (K, V) and (V, K) shapes occur.
        for &s in sys.members() {
            let p = u.payload(s).unwrap();
            assert!(p.a == Subset::full(4) || p.b == Subset::full(4));
        }
        assert!(sys.is_submodular());
    }

    #[test]
    fn c4_has_one_hole_oriented_outward() {
        let g = c4();
        let analysis = hole_analysis(&g).unwrap();
        assert_eq!(analysis.holes, vec![Subset::full(4)]);
        assert!(!analysis.chordal);
        let o = &analysis.hole_orientations[0];
        assert!(o.is_consistent());
        let u = o.system().universe();
        for &s in o.ids() {
            assert_eq!(u.payload(s).unwrap().b, Subset::full(4));
        }
    }

    #[test]
    fn diamond_is_chordal_with_an_edge_separator() {
        let g = diamond();
        assert!(is_chordal(&g));
        assert!(holes(&g).is_empty());
        assert_eq!(minimal_separators(&g), vec![Subset::from_elems([2, 3])]);
    }

    #[test]
    fn decomposition_round_trip_on_the_diamond() {
        let g = diamond();
        let (_, sys) = clique_system(&g).unwrap();
        let td = TreeDecomposition::new(
            vec![Subset::from_elems([0, 2, 3]), Subset::from_elems([1, 2, 3])],
            vec![(0, 1)],
        )
        .unwrap();
        assert!(td.is_valid_for(&g));
        assert!(td.all_bags_cliques(&g));

        let tree = tree_decomposition_to_stree(&td, &g, &sys).unwrap();
        let u = sys.universe();
        let (_, _, s) = tree.edges()[0];
        assert_eq!(
            *u.payload(s).unwrap(),
            SidePair::new(Subset::from_elems([0, 2, 3]), Subset::from_elems([1, 2, 3]))
        );

        let back = stree_to_tree_decomposition(&tree, &g).unwrap();
        assert_eq!(back.bags(), td.bags());
    }

    #[test]
    fn complete_graphs_have_no_clique_system() {
        let k3 = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(clique_system(&k3).is_err());
    }

    #[test]
    fn canonical_code_identifies_isomorphs() {
        let p3a = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let p3b = Graph::new(3, &[(0, 2), (2, 1)]).unwrap();
        let k3 = Graph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(p3a.canonical_code(), p3b.canonical_code());
        assert_ne!(p3a.canonical_code(), k3.canonical_code());
    }

    #[test]
    fn decomposition_axioms_are_checked() {
        let g = diamond();
        let td = TreeDecomposition::new(
            vec![Subset::from_elems([0, 2, 3]), Subset::from_elems([1, 2])],
            vec![(0, 1)],
        )
        .unwrap();
        assert!(td.violation_for(&g).unwrap().contains("edge"));
    }
}
