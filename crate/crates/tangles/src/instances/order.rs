//! Order functions on universes and the subsystems they slice out.

use crate::error::{Error, Result};
use crate::sets::Subset;
use crate::system::SeparationSystem;
use crate::universe::{SepId, Universe};
use std::sync::Arc;

/// Nonnegative values per oriented separation, symmetric under the
/// involution and submodular with respect to the lattice; both are
/// verified on construction.
#[derive(Clone, Debug)]
pub struct OrderFunction {
    values: Arc<Vec<f64>>,
}

impl OrderFunction {
    pub fn new(u: &Universe, values: Vec<f64>) -> Result<OrderFunction> {
        if values.len() != u.len() {
            return Err(Error::InvalidParams(format!(
                "{} values for {} separations",
                values.len(),
                u.len()
            )));
        }
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "order of {} is {v}, not a nonnegative real",
                    SepId(i as u32)
                )));
            }
        }
        for s in u.ids() {
            if values[s.index()] != values[u.inv(s).index()] {
                return Err(Error::InvalidParams(format!(
                    "order is not symmetric at {s}"
                )));
            }
        }
        for s in u.ids() {
            for t in u.ids() {
                let lhs = values[u.join(s, t).index()] + values[u.meet(s, t).index()];
                if lhs > values[s.index()] + values[t.index()] {
                    return Err(Error::InvalidParams(format!(
                        "order is not submodular at ({s}, {t})"
                    )));
                }
            }
        }
        Ok(OrderFunction { values: Arc::new(values) })
    }

    pub fn from_fn(u: &Universe, f: impl Fn(SepId) -> f64) -> Result<OrderFunction> {
        OrderFunction::new(u, u.ids().map(f).collect())
    }

    pub fn value(&self, s: SepId) -> f64 {
        self.values[s.index()]
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// The system of all separations of order below `k`; inversion-closed by
/// the symmetry of the order function.
pub fn subsystem_below(
    u: &Arc<Universe>,
    ord: &OrderFunction,
    k: f64,
) -> Result<SeparationSystem> {
    let ids: Vec<SepId> = u.ids().filter(|&s| ord.value(s) < k).collect();
    SeparationSystem::new(u.clone(), ids)
}

/// The similarity order used for circles: for a bipartition {A, B}, the
/// number of triples (a, b, c) with a ∈ A, b ∈ B, and both a, b in the
/// criteria set c. Needs a payload-backed universe.
pub fn triple_count_order(u: &Universe, criteria: &[Subset]) -> Result<OrderFunction> {
    OrderFunction::from_fn(u, |s| {
        let p = u.payload(s).expect("payload-backed universe");
        criteria
            .iter()
            .map(|&c| (p.a.inter(c).len() * p.b.inter(c).len()) as f64)
            .sum()
    })
}
