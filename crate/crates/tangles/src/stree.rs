//! S-trees: trees whose oriented edges carry oriented separations.

use crate::error::{Error, Result};
use crate::family::Family;
use crate::system::SeparationSystem;
use crate::universe::{canon_set, SepId};

/// A finite tree together with a map from its oriented edges into a
/// separation system; the two directions of an edge carry inverse
/// separations. A single node with no edges is allowed.
#[derive(Clone, Debug)]
pub struct STree {
    system: SeparationSystem,
    node_count: usize,
    /// (a, b, s) encodes α(a→b) = s and α(b→a) = s*.
    edges: Vec<(usize, usize, SepId)>,
}

impl STree {
    pub fn new(
        system: SeparationSystem,
        node_count: usize,
        edges: Vec<(usize, usize, SepId)>,
    ) -> Result<STree> {
        if node_count == 0 {
            return Err(Error::InvalidParams("an S-tree needs at least one node".into()));
        }
        check_tree_shape(node_count, edges.iter().map(|&(a, b, _)| (a, b)))?;
        for &(_, _, s) in &edges {
            system.check_member(s)?;
        }
        Ok(STree { system, node_count, edges })
    }

    pub fn system(&self) -> &SeparationSystem {
        &self.system
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, SepId)] {
        &self.edges
    }

    /// The separations on edges pointing towards `t`, canonicalized. This
    /// is the set whose family membership the duality theorem speaks about.
    pub fn star_at(&self, t: usize) -> Vec<SepId> {
        let u = self.system.universe();
        let mut star: Vec<SepId> = Vec::new();
        for &(a, b, s) in &self.edges {
            if b == t {
                star.push(s);
            } else if a == t {
                star.push(u.inv(s));
            }
        }
        canon_set(&star)
    }

    /// All separations appearing on oriented edges, both directions.
    pub fn oriented_range(&self) -> Vec<SepId> {
        let u = self.system.universe();
        let mut ids: Vec<SepId> = Vec::with_capacity(2 * self.edges.len());
        for &(_, _, s) in &self.edges {
            ids.push(s);
            ids.push(u.inv(s));
        }
        canon_set(&ids)
    }

    /// First node whose star is missing from the family, together with the
    /// star. `None` means the tree is over the family.
    pub fn violating_node(&self, family: &Family) -> Option<(usize, Vec<SepId>)> {
        (0..self.node_count).find_map(|t| {
            let star = self.star_at(t);
            (!family.contains(&star)).then_some((t, star))
        })
    }

    pub fn is_over(&self, family: &Family) -> bool {
        self.violating_node(family).is_none()
    }
}

/// Check that the edges form a tree on `node_count` nodes: right count, no
/// loops, indices in range, acyclic (and hence connected).
pub(crate) fn check_tree_shape(
    node_count: usize,
    edges: impl ExactSizeIterator<Item = (usize, usize)>,
) -> crate::error::Result<()> {
    if edges.len() + 1 != node_count {
        return Err(Error::InvalidParams(format!(
            "{} nodes need {} edges, got {}",
            node_count,
            node_count - 1,
            edges.len()
        )));
    }
    let mut parent: Vec<usize> = (0..node_count).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (a, b) in edges {
        if a >= node_count || b >= node_count {
            return Err(Error::InvalidParams(format!(
                "edge ({a}, {b}) leaves the node range"
            )));
        }
        if a == b {
            return Err(Error::InvalidParams(format!("loop at node {a}")));
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return Err(Error::InvalidParams(format!(
                "edge ({a}, {b}) closes a cycle"
            )));
        }
        parent[ra] = rb;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::bipartition::{bipartition_universe, side_id};
    use crate::sets::Subset;

    #[test]
    fn two_node_tree_carries_inverse_stars() {
        let u = bipartition_universe(2).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let s01 = side_id(&u, Subset::singleton(0));
        let s10 = side_id(&u, Subset::singleton(1));

        let tree = STree::new(sys.clone(), 2, vec![(0, 1, s01)]).unwrap();
        assert_eq!(tree.star_at(1), vec![s01]);
        assert_eq!(tree.star_at(0), vec![s10]);

        let ok = Family::explicit(u.clone(), vec![vec![s01], vec![s10]]).unwrap();
        assert!(tree.is_over(&ok));

        let t_star = Family::tangle_stars(u.clone());
        let (node, star) = tree.violating_node(&t_star).unwrap();
        assert_eq!((node, star), (0, vec![s10]));
    }

    #[test]
    fn single_node_tree_needs_the_empty_set() {
        let u = bipartition_universe(2).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let tree = STree::new(sys, 1, vec![]).unwrap();
        let with_empty = Family::explicit(u.clone(), vec![vec![]]).unwrap();
        assert!(tree.is_over(&with_empty));
        assert!(!tree.is_over(&Family::tangle_stars(u)));
    }

    #[test]
    fn malformed_trees_are_rejected() {
        let u = bipartition_universe(2).unwrap();
        let sys = SeparationSystem::full(u.clone());
        let s01 = side_id(&u, Subset::singleton(0));
        assert!(STree::new(sys.clone(), 0, vec![]).is_err());
        assert!(STree::new(sys.clone(), 2, vec![]).is_err());
        assert!(STree::new(sys.clone(), 1, vec![(0, 0, s01)]).is_err());
        assert!(STree::new(sys.clone(), 3, vec![(0, 1, s01), (1, 0, s01)]).is_err());
        assert!(STree::new(sys, 2, vec![(0, 5, s01)]).is_err());
    }
}
