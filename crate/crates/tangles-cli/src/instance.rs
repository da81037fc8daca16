//! Instance files and what they build: a universe, a separation system,
//! and the context needed to print payloads back out.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;
use tangles::instances::bipartition::bipartition_universe;
use tangles::instances::circle::{circle_system, CyclicOrder};
use tangles::instances::connectivity::{ConnectivitySystem, Matroid};
use tangles::instances::graph::{clique_system, Graph};
use tangles::instances::order::{subsystem_below, triple_count_order};
use tangles::{SeparationSystem, Subset, Universe};

use crate::error::{CliError, Result};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Instance {
    Graph {
        n: usize,
        edges: Vec<(u32, u32)>,
    },
    Set {
        elements: Vec<u32>,
    },
    Circle {
        elements: Vec<u32>,
        cycle: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        criteria: Option<Vec<Vec<u32>>>,
    },
    Criteria {
        elements: Vec<u32>,
        criteria: Vec<Vec<u32>>,
    },
    Matroid {
        ground: Vec<u32>,
        rank: BTreeMap<String, u32>,
    },
}

/// Everything a command needs after loading an instance.
pub struct Built {
    pub universe: Arc<Universe>,
    pub system: SeparationSystem,
    pub graph: Option<Arc<Graph>>,
    /// Ground-point index to display label.
    pub labels: Vec<u32>,
}

fn check_elements(elements: &[u32]) -> Result<()> {
    let n = elements.len();
    let mut seen = vec![false; n];
    for &e in elements {
        if (e as usize) >= n || seen[e as usize] {
            return Err(CliError::Semantics(format!(
                "\"elements\" must list the integers 0..{n} exactly once"
            )));
        }
        seen[e as usize] = true;
    }
    Ok(())
}

fn parse_subsets(sets: &[Vec<u32>], n: usize) -> Result<Vec<Subset>> {
    sets.iter()
        .map(|s| {
            for &e in s {
                if e as usize >= n {
                    return Err(CliError::Semantics(format!(
                        "subset element {e} is outside the ground set 0..{n}"
                    )));
                }
            }
            Ok(Subset::from_elems(s.iter().copied()))
        })
        .collect()
}

fn require_k(k: Option<f64>) -> Result<f64> {
    k.ok_or_else(|| CliError::Semantics("this instance kind needs --k".into()))
}

impl Instance {
    pub fn build(&self, k: Option<f64>) -> Result<Built> {
        match self {
            Instance::Graph { n, edges } => {
                let g = Graph::new(*n, edges)?;
                let (universe, system) = clique_system(&g)?;
                Ok(Built {
                    universe,
                    system,
                    graph: Some(Arc::new(g)),
                    labels: (0..*n as u32).collect(),
                })
            }
            Instance::Set { elements } => {
                check_elements(elements)?;
                let universe = bipartition_universe(elements.len())?;
                let system = SeparationSystem::full(universe.clone());
                Ok(Built {
                    universe,
                    system,
                    graph: None,
                    labels: (0..elements.len() as u32).collect(),
                })
            }
            Instance::Circle {
                elements,
                cycle,
                criteria,
            } => {
                check_elements(elements)?;
                let n = elements.len();
                let universe = bipartition_universe(n)?;
                let cyc = CyclicOrder::new(cycle.clone())?;
                let crit = criteria.as_ref().ok_or_else(|| {
                    CliError::Semantics(
                        "circle instances need \"criteria\" to define the order function".into(),
                    )
                })?;
                let ord = triple_count_order(&universe, &parse_subsets(crit, n)?)?;
                let system = circle_system(&universe, &cyc, &ord, require_k(k)?)?;
                Ok(Built {
                    universe,
                    system,
                    graph: None,
                    labels: (0..n as u32).collect(),
                })
            }
            Instance::Criteria { elements, criteria } => {
                check_elements(elements)?;
                let n = elements.len();
                let universe = bipartition_universe(n)?;
                let ord = triple_count_order(&universe, &parse_subsets(criteria, n)?)?;
                let system = subsystem_below(&universe, &ord, require_k(k)?)?;
                Ok(Built {
                    universe,
                    system,
                    graph: None,
                    labels: (0..n as u32).collect(),
                })
            }
            Instance::Matroid { ground, rank } => {
                let n = ground.len();
                let mut sorted = ground.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != n {
                    return Err(CliError::Semantics(
                        "\"ground\" must list distinct labels".into(),
                    ));
                }
                let mut table = Vec::with_capacity(1 << n);
                for mask in 0..1u64 << n {
                    let mut labs: Vec<u32> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| ground[i])
                        .collect();
                    labs.sort_unstable();
                    let key = labs
                        .iter()
                        .map(|l| l.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    let r = rank.get(&key).ok_or_else(|| {
                        CliError::Semantics(format!(
                            "rank table is missing the subset \"{key}\""
                        ))
                    })?;
                    table.push(*r);
                }
                let m = Matroid::new(n, table)?;
                let cs = ConnectivitySystem::from_matroid(&m)?;
                let k = require_k(k)?;
                if k.fract() != 0.0 {
                    return Err(CliError::Semantics(
                        "matroid connectivity thresholds must be integers".into(),
                    ));
                }
                let (universe, system) = cs.sk(k as i64)?;
                Ok(Built {
                    universe,
                    system,
                    graph: None,
                    labels: ground.clone(),
                })
            }
        }
    }
}
