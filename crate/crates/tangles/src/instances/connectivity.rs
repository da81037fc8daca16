//! Connectivity systems of graphs and matroids, and their S_k slices.

use crate::error::{Error, Result};
use crate::instances::bipartition::bipartition_universe;
use crate::instances::graph::Graph;
use crate::sets::Subset;
use crate::system::SeparationSystem;
use crate::universe::Universe;
use std::sync::Arc;

/// A matroid given by an explicit rank table indexed by subset masks of
/// the ground set 0..ground. The table is validated against the rank
/// axioms on construction.
#[derive(Clone, Debug)]
pub struct Matroid {
    ground: usize,
    rank: Vec<u32>,
}

impl Matroid {
    pub fn new(ground: usize, rank: Vec<u32>) -> Result<Matroid> {
        if ground > 12 {
            return Err(Error::InvalidParams(
                "matroid ground sets beyond 12 elements are unsupported".into(),
            ));
        }
        if rank.len() != 1 << ground {
            return Err(Error::InvalidParams(format!(
                "rank table has {} entries, expected {}",
                rank.len(),
                1u32 << ground
            )));
        }
        if rank[0] != 0 {
            return Err(Error::InvalidParams("rank of the empty set must be 0".into()));
        }
        for mask in 0..rank.len() {
            for x in 0..ground {
                if mask >> x & 1 == 1 {
                    continue;
                }
                let with_x = mask | 1 << x;
                if rank[with_x] < rank[mask] || rank[with_x] > rank[mask] + 1 {
                    return Err(Error::InvalidParams(format!(
                        "rank is not a unit-increase monotone function at {:?} with {x}",
                        Subset(mask as u64)
                    )));
                }
                for y in x + 1..ground {
                    if mask >> y & 1 == 1 {
                        continue;
                    }
                    let with_y = mask | 1 << y;
                    let with_xy = with_x | 1 << y;
                    if rank[with_x] + rank[with_y] < rank[with_xy] + rank[mask] {
                        return Err(Error::InvalidParams(format!(
                            "rank is not submodular at {:?} with {x}, {y}",
                            Subset(mask as u64)
                        )));
                    }
                }
            }
        }
        Ok(Matroid { ground, rank })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn rank(&self, s: Subset) -> u32 {
        self.rank[s.0 as usize]
    }

    /// λ(A) = r(A) + r(X∖A) − r(X).
    pub fn connectivity(&self, a: Subset) -> i64 {
        let full = Subset::full(self.ground);
        self.rank(a) as i64 + self.rank(full.minus(a)) as i64 - self.rank(full) as i64
    }
}

/// A symmetric submodular integer function on the subsets of a finite set,
/// both properties validated on construction.
#[derive(Clone, Debug)]
pub struct ConnectivitySystem {
    x: usize,
    lambda: Vec<i64>,
}

impl ConnectivitySystem {
    pub fn new(x: usize, lambda: Vec<i64>) -> Result<ConnectivitySystem> {
        if x > 12 {
            return Err(Error::InvalidParams(
                "ground sets beyond 12 elements are unsupported".into(),
            ));
        }
        if lambda.len() != 1 << x {
            return Err(Error::InvalidParams(format!(
                "lambda table has {} entries, expected {}",
                lambda.len(),
                1u32 << x
            )));
        }
        let full = (1usize << x) - 1;
        for a in 0..lambda.len() {
            if lambda[a] != lambda[full & !a] {
                return Err(Error::InvalidParams(format!(
                    "lambda is not symmetric at {:?}",
                    Subset(a as u64)
                )));
            }
        }
        for a in 0..lambda.len() {
            for b in 0..lambda.len() {
                if lambda[a | b] + lambda[a & b] > lambda[a] + lambda[b] {
                    return Err(Error::InvalidParams(format!(
                        "lambda is not submodular at {:?}, {:?}",
                        Subset(a as u64),
                        Subset(b as u64)
                    )));
                }
            }
        }
        Ok(ConnectivitySystem { x, lambda })
    }

    /// Edge connectivity of a graph: X is the edge set (indexed as in
    /// `g.edges()`), λ(F) counts the vertices incident with edges on both
    /// sides of the bipartition.
    pub fn from_graph(g: &Graph) -> Result<ConnectivitySystem> {
        let edges = g.edges();
        let m = edges.len();
        if m > 12 {
            return Err(Error::InvalidParams(
                "graphs with more than 12 edges are unsupported here".into(),
            ));
        }
        let mut lambda = vec![0i64; 1 << m];
        for (f, entry) in lambda.iter_mut().enumerate() {
            let mut in_f = Subset::EMPTY;
            let mut out_f = Subset::EMPTY;
            for (i, &(a, b)) in edges.iter().enumerate() {
                let ends = Subset::from_elems([a, b]);
                if f >> i & 1 == 1 {
                    in_f = in_f.union(ends);
                } else {
                    out_f = out_f.union(ends);
                }
            }
            *entry = in_f.inter(out_f).len() as i64;
        }
        ConnectivitySystem::new(m, lambda)
    }

    pub fn from_matroid(m: &Matroid) -> Result<ConnectivitySystem> {
        let lambda = (0..1u64 << m.ground_size())
            .map(|mask| m.connectivity(Subset(mask)))
            .collect();
        ConnectivitySystem::new(m.ground_size(), lambda)
    }

    pub fn ground_size(&self) -> usize {
        self.x
    }

    pub fn value(&self, a: Subset) -> i64 {
        self.lambda[a.0 as usize]
    }

    /// The bipartition universe over X together with the system of all
    /// separations of connectivity below k.
    pub fn sk(&self, k: i64) -> Result<(Arc<Universe>, SeparationSystem)> {
        let u = bipartition_universe(self.x)?;
        let ids = u
            .ids()
            .filter(|&s| self.value(u.payload(s).unwrap().a) < k)
            .collect::<Vec<_>>();
        let sys = SeparationSystem::new(u.clone(), ids)?;
        debug_assert!(sys.is_submodular());
        Ok((u, sys))
    }
}
