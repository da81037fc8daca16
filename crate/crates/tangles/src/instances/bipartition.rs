//! The universe of oriented bipartitions of a finite set.

use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::sets::{SidePair, Subset};
use crate::system::SeparationSystem;
use crate::universe::{SepId, Universe};
use std::sync::Arc;

/// Largest supported ground set; the universe has 2^n elements and its
/// order tables grow quadratically in that.
pub const MAX_GROUND: usize = 12;

/// All oriented bipartitions (A, V∖A) of an n-element set V, ordered by
/// inclusion of the first side, with complement swap as involution. The
/// lattice is Boolean, hence distributive.
pub fn bipartition_universe(n: usize) -> Result<Arc<Universe>> {
    if n == 0 {
        return Err(Error::InvalidParams("ground set must be non-empty".into()));
    }
    if n > MAX_GROUND {
        return Err(Error::InvalidParams(format!(
            "ground set of {n} exceeds the supported maximum of {MAX_GROUND}"
        )));
    }
    let count = 1usize << n;
    let mut masks: Vec<u64> = (0..count as u64).collect();
    masks.sort_by(|&x, &y| Subset(x).lex_cmp(Subset(y)));
    let mut id_of_mask = vec![0usize; count];
    for (i, &m) in masks.iter().enumerate() {
        id_of_mask[m as usize] = i;
    }
    let full = Subset::full(n).0;
    let payloads: Vec<SidePair> = masks
        .iter()
        .map(|&m| SidePair::new(Subset(m), Subset(m ^ full)))
        .collect();
    Ok(Universe::from_parts(
        Some(payloads),
        n,
        count,
        |i| id_of_mask[(masks[i] ^ full) as usize],
        |i, j| masks[i] & !masks[j] == 0,
        |i, j| id_of_mask[(masks[i] | masks[j]) as usize],
        |i, j| id_of_mask[(masks[i] & masks[j]) as usize],
        true,
    ))
}

/// The id of the bipartition whose first side is `a`.
///
/// Panics when the universe has no such payload; intended for universes
/// whose payloads pair each side with its complement.
pub fn side_id(u: &Universe, a: Subset) -> SepId {
    let b = a.complement(u.ground_size());
    u.id_of_payload(&SidePair::new(a, b))
        .expect("side is a subset of the universe's ground set")
}

/// The orientation pointing every member towards `v`: of each member the
/// orientation whose second side contains `v`.
pub fn principal_orientation(system: &SeparationSystem, v: u32) -> Result<Orientation> {
    let u = system.universe();
    if v as usize >= u.ground_size() {
        return Err(Error::InvalidParams(format!(
            "point {v} is outside the ground set"
        )));
    }
    let mut ids = Vec::with_capacity(system.unoriented_len());
    for &rep in system.reps() {
        let p = u
            .payload(rep)
            .ok_or_else(|| Error::InvalidParams("universe has no payloads".into()))?;
        if p.b.contains(v) {
            ids.push(rep);
        } else if u.payload(u.inv(rep)).is_some_and(|q| q.b.contains(v)) {
            ids.push(u.inv(rep));
        } else {
            return Err(Error::InvalidParams(format!(
                "point {v} lies on neither side of a member"
            )));
        }
    }
    Orientation::from_ids(system.clone(), ids)
}
