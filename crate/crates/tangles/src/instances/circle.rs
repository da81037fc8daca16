//! Circle separations: bipartitions whose sides are arcs of a cyclic order.

use crate::error::{Error, Result};
use crate::instances::order::OrderFunction;
use crate::sets::Subset;
use crate::system::SeparationSystem;
use crate::universe::Universe;
use std::sync::Arc;

/// A cyclic arrangement of the points 0..n, given as a sequence read
/// around the circle; rotations describe the same order.
#[derive(Clone, Debug)]
pub struct CyclicOrder {
    seq: Vec<u32>,
}

impl CyclicOrder {
    pub fn new(seq: Vec<u32>) -> Result<CyclicOrder> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &v in &seq {
            if (v as usize) >= n || seen[v as usize] {
                return Err(Error::InvalidParams(
                    "cycle must list each point exactly once".into(),
                ));
            }
            seen[v as usize] = true;
        }
        Ok(CyclicOrder { seq })
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn sequence(&self) -> &[u32] {
        &self.seq
    }

    /// The same circle read from a different starting point.
    pub fn rotated(&self, shift: usize) -> CyclicOrder {
        let n = self.seq.len();
        CyclicOrder { seq: (0..n).map(|i| self.seq[(i + shift) % n]).collect() }
    }

    /// A set is an arc when its members are circularly consecutive; the
    /// empty set and the full set count as arcs.
    pub fn is_arc(&self, s: Subset) -> bool {
        let n = self.seq.len();
        let boundaries = (0..n)
            .filter(|&i| s.contains(self.seq[i]) != s.contains(self.seq[(i + 1) % n]))
            .count();
        boundaries <= 2
    }
}

/// The system of circle separations of order below k inside a bipartition
/// universe: members are the bipartitions with both sides arcs. The order
/// function must give (∅, V) order zero.
pub fn circle_system(
    u: &Arc<Universe>,
    cyc: &CyclicOrder,
    ord: &OrderFunction,
    k: f64,
) -> Result<SeparationSystem> {
    if cyc.len() != u.ground_size() {
        return Err(Error::InvalidParams(format!(
            "cyclic order on {} points does not fit a ground set of {}",
            cyc.len(),
            u.ground_size()
        )));
    }
    let bottom = u
        .ids()
        .find(|&s| u.payload(s).expect("payload-backed universe").a.is_empty())
        .ok_or_else(|| Error::InvalidParams("universe has no (∅, V) element".into()))?;
    if ord.value(bottom) != 0.0 {
        return Err(Error::Precondition(
            "the order of (∅, V) must be zero for circle systems".into(),
        ));
    }
    let ids: Vec<_> = u
        .ids()
        .filter(|&s| {
            let p = u.payload(s).expect("payload-backed universe");
            cyc.is_arc(p.a) && cyc.is_arc(p.b) && ord.value(s) < k
        })
        .collect();
    let sys = SeparationSystem::new(u.clone(), ids)?;
    debug_assert!(sys.is_submodular());
    Ok(sys)
}
