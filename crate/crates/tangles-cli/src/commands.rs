//! The four subcommands. Each loads an instance, runs the library, re-checks
//! every witness with the library validators, and prints one certificate.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;
use tangles::instances::graph::{stree_to_tree_decomposition, TreeDecomposition};
use tangles::{
    duality_decide, enumerate_tangles, is_separable, reduce_to_minimal, tree_of_tangles, Assume,
    DualityOutcome, Family, SidePair, Subset,
};

use crate::error::{CliError, Result};
use crate::instance::{Built, Instance};
use crate::output::{
    decomposition_json, emit, nested_dot, nested_json, orientation_json, payload_json, stree_dot,
    stree_json, Certificate,
};
use crate::{FamilyKind, GenArgs, RunArgs};

fn read_instance(path: &Path) -> Result<Instance> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn family_name(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Tangles => "T",
        FamilyKind::TangleStars => "Tstar",
        FamilyKind::Extending => "TQ",
        FamilyKind::Profiles => "profiles",
        FamilyKind::Clique => "clique",
        FamilyKind::Fnm => "fnm",
    }
}

fn q_side(side: &[u32], labels: &[u32]) -> Result<Subset> {
    let mut idx = Vec::with_capacity(side.len());
    for &lab in side {
        match labels.iter().position(|&l| l == lab) {
            Some(i) => idx.push(i as u32),
            None => {
                return Err(CliError::Semantics(format!(
                    "Q references an element {lab} outside the instance ground set"
                )))
            }
        }
    }
    Ok(Subset::from_elems(idx))
}

/// `stars` restricts the clique and fnm families to their star members, as
/// the duality theorem needs.
fn build_family(args: &RunArgs, built: &Built, stars: bool) -> Result<Family> {
    let u = built.universe.clone();
    let family = match args.family {
        FamilyKind::Tangles => Family::tangles(u),
        FamilyKind::TangleStars => Family::tangle_stars(u),
        FamilyKind::Profiles => Family::profiles(u),
        FamilyKind::Extending => {
            let path = args
                .q
                .as_ref()
                .ok_or_else(|| CliError::Semantics("--family TQ needs --Q".into()))?;
            let sides: Vec<(Vec<u32>, Vec<u32>)> =
                serde_json::from_str(&std::fs::read_to_string(path)?)?;
            let mut q = Vec::with_capacity(sides.len());
            for (a, b) in &sides {
                let p = SidePair::new(q_side(a, &built.labels)?, q_side(b, &built.labels)?);
                match u.id_of_payload(&p) {
                    Some(s) => q.push(s),
                    None => {
                        return Err(CliError::Semantics(
                            "Q contains a pair that is not a separation of this instance".into(),
                        ))
                    }
                }
            }
            Family::tangles_extending(u, &q)?
        }
        FamilyKind::Clique => {
            let g = built.graph.clone().ok_or_else(|| {
                CliError::Semantics("--family clique needs a graph instance".into())
            })?;
            let f = Family::clique_separators(u, g)?;
            if stars {
                f.stars()
            } else {
                f
            }
        }
        FamilyKind::Fnm => {
            let m = args
                .m
                .ok_or_else(|| CliError::Semantics("--family fnm needs --m".into()))?;
            let f = Family::small_intersection(u, m, args.n)?;
            if stars {
                f.stars()
            } else {
                f
            }
        }
    };
    Ok(family)
}

fn command_echo(name: &str, args: &RunArgs) -> Value {
    json!({
        "name": name,
        "family": family_name(args.family),
        "k": args.k,
        "m": args.m,
        "n": args.n,
        "Q": args.q.as_ref().map(|p| p.display().to_string()),
    })
}

pub fn analyze(args: &RunArgs) -> Result<()> {
    if args.dot.is_some() {
        return Err(CliError::Semantics("analyze produces no DOT output".into()));
    }
    let inst = read_instance(&args.input)?;
    let built = inst.build(args.k)?;
    let family = build_family(args, &built, false)?;
    let tangles = enumerate_tangles(&built.system, &family)?;
    for o in &tangles {
        if !o.is_tangle_for(&family) || o.ids().len() != built.system.unoriented_len() {
            return Err(CliError::Internal(
                "an enumerated orientation failed re-validation".into(),
            ));
        }
    }
    let u = &built.universe;
    let sys = &built.system;
    let witness = json!({
        "ground_size": u.ground_size(),
        "universe_oriented": u.len(),
        "system_oriented": sys.oriented_len(),
        "system_unoriented": sys.unoriented_len(),
        "submodular": sys.is_submodular(),
        "distributive": u.is_distributive(),
        "separable": is_separable(sys, None)?,
        "family": family_name(args.family),
        "count": tangles.len(),
        "tangles": tangles
            .iter()
            .map(|o| orientation_json(o, &built.labels))
            .collect::<Vec<Value>>(),
    });
    let cert = Certificate {
        command: command_echo("analyze", args),
        instance: inst,
        outcome: "ok".into(),
        witness,
        verification: vec![format!(
            "tangles re-validated: {} (consistent, complete, avoiding the family)",
            tangles.len()
        )],
    };
    emit(&cert, args.json.as_deref(), None)
}

pub fn tot(args: &RunArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    let built = inst.build(args.k)?;
    let family = build_family(args, &built, false)?;
    let profiles = enumerate_tangles(&built.system, &family)?;
    let full = tree_of_tangles(&built.system, &profiles)?;
    let tree = reduce_to_minimal(&full, &profiles)?;
    let report = tree.distinguishes(&profiles)?;
    let mut verification = Vec::new();
    if !tree.is_tree_set() {
        return Err(CliError::Internal("output is not a tree set".into()));
    }
    verification.push("tree set re-validated: nested, no trivial or degenerate members".into());
    if tree.members().iter().any(|&s| !built.system.contains(s)) {
        return Err(CliError::Internal("tree set leaves the input system".into()));
    }
    verification.push("every member lies in the input system".into());
    if !report.all_distinguished() {
        return Err(CliError::Internal(
            "a pair of profiles is not distinguished".into(),
        ));
    }
    verification.push(format!(
        "all {} profile pairs distinguished",
        report.pairs.len()
    ));
    let u = &built.universe;
    let witness = json!({
        "family": family_name(args.family),
        "profile_count": profiles.len(),
        "profiles": profiles
            .iter()
            .map(|o| orientation_json(o, &built.labels))
            .collect::<Vec<Value>>(),
        "tree_set": nested_json(&tree, &built.labels),
        "distinguishes": report
            .pairs
            .iter()
            .map(|&(i, j, w)| json!([i, j, w.map(|s| payload_json(u, s, &built.labels))]))
            .collect::<Vec<Value>>(),
    });
    let dot = args
        .dot
        .as_deref()
        .map(|p| (p, nested_dot(&tree, &built.labels)));
    let cert = Certificate {
        command: command_echo("tot", args),
        instance: inst,
        outcome: "ok".into(),
        witness,
        verification,
    };
    emit(&cert, args.json.as_deref(), dot)
}

/// Contract away bags contained in a neighbor; keeps the decomposition
/// valid and leaves the remaining bags untouched.
fn prune_decomposition(td: &TreeDecomposition) -> Result<TreeDecomposition> {
    let mut bags: Vec<Subset> = td.bags().to_vec();
    let mut edges: Vec<(usize, usize)> = td.edges().to_vec();
    loop {
        let found = edges
            .iter()
            .position(|&(a, b)| bags[a].is_subset_of(bags[b]) || bags[b].is_subset_of(bags[a]));
        let Some(pos) = found else { break };
        let (a, b) = edges.remove(pos);
        let (gone, keep) = if bags[a].is_subset_of(bags[b]) {
            (a, b)
        } else {
            (b, a)
        };
        let last = bags.len() - 1;
        bags.swap_remove(gone);
        for e in &mut edges {
            for v in [&mut e.0, &mut e.1] {
                if *v == gone {
                    *v = keep;
                }
            }
            for v in [&mut e.0, &mut e.1] {
                if *v == last {
                    *v = gone;
                }
            }
        }
    }
    TreeDecomposition::new(bags, edges).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn duality(args: &RunArgs) -> Result<()> {
    let inst = read_instance(&args.input)?;
    let built = inst.build(args.k)?;
    let family = build_family(args, &built, true)?;
    let mut verification = Vec::new();
    match duality_decide(&built.system, &family, Assume::default())? {
        DualityOutcome::Tangle(o) => {
            if !o.is_tangle_for(&family) || o.ids().len() != built.system.unoriented_len() {
                return Err(CliError::Internal("tangle failed re-validation".into()));
            }
            verification
                .push("tangle re-validated: consistent, complete, avoiding the family".into());
            let witness = json!({
                "family": family_name(args.family),
                "tangle": orientation_json(&o, &built.labels),
            });
            let cert = Certificate {
                command: command_echo("duality", args),
                instance: inst,
                outcome: "tangle".into(),
                witness,
                verification,
            };
            emit(&cert, args.json.as_deref(), None)
        }
        DualityOutcome::Tree(t) => {
            if !t.is_over(&family) {
                return Err(CliError::Internal("S-tree failed re-validation".into()));
            }
            if t.oriented_range().iter().any(|&s| !built.system.contains(s)) {
                return Err(CliError::Internal("S-tree leaves the input system".into()));
            }
            verification.push(format!(
                "S-tree re-validated: {} node stars in the family, range inside the system",
                t.node_count()
            ));
            let mut witness = json!({
                "family": family_name(args.family),
                "stree": stree_json(&t, &built.labels),
            });
            if args.family == FamilyKind::Clique {
                let g = built.graph.as_ref().expect("clique family implies a graph");
                let td = prune_decomposition(&stree_to_tree_decomposition(&t, g)?)?;
                if !td.is_valid_for(g) || !td.all_bags_cliques(g) {
                    return Err(CliError::Internal(
                        "tree-decomposition failed re-validation".into(),
                    ));
                }
                verification.push(format!(
                    "tree-decomposition re-validated: {} bags, all cliques, width {}",
                    td.bags().len(),
                    td.width()
                ));
                witness["decomposition"] = decomposition_json(&td);
            }
            let dot = args
                .dot
                .as_deref()
                .map(|p| (p, stree_dot(&t, &built.labels)));
            let cert = Certificate {
                command: command_echo("duality", args),
                instance: inst,
                outcome: "stree".into(),
                witness,
                verification,
            };
            emit(&cert, args.json.as_deref(), dot)
        }
        DualityOutcome::Inconclusive(msg) => Err(CliError::Inconclusive(msg)),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Vec<(u32, u32)> {
    loop {
        let mut edges = Vec::new();
        let mut adj = vec![0u32; n];
        for a in 0..n as u32 {
            for b in a + 1..n as u32 {
                if rng.gen_bool(0.5) {
                    edges.push((a, b));
                    adj[a as usize] |= 1 << b;
                    adj[b as usize] |= 1 << a;
                }
            }
        }
        if edges.len() == n * (n - 1) / 2 {
            continue;
        }
        let mut seen = 1u32;
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            let mut rest = adj[v as usize] & !seen;
            while rest != 0 {
                let w = rest.trailing_zeros();
                rest &= rest - 1;
                seen |= 1 << w;
                stack.push(w);
            }
        }
        if seen.count_ones() as usize == n {
            return edges;
        }
    }
}

fn random_subsets(rng: &mut ChaCha8Rng, n: usize, count: usize) -> Vec<Vec<u32>> {
    (0..count)
        .map(|_| (0..n as u32).filter(|_| rng.gen_bool(0.5)).collect())
        .collect()
}

pub fn gen(args: &GenArgs) -> Result<()> {
    let n = args.n;
    if !(3..=8).contains(&n) {
        return Err(CliError::Semantics("gen supports --n between 3 and 8".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let elements: Vec<u32> = (0..n as u32).collect();
    let inst = match args.kind {
        crate::GenKind::Graph => Instance::Graph {
            n,
            edges: random_graph(&mut rng, n),
        },
        crate::GenKind::Set => Instance::Set { elements },
        crate::GenKind::Circle => {
            let mut cycle = elements.clone();
            cycle.shuffle(&mut rng);
            let count = rng.gen_range(1..=3);
            Instance::Circle {
                elements,
                cycle,
                criteria: Some(random_subsets(&mut rng, n, count)),
            }
        }
        crate::GenKind::Criteria => {
            let count = rng.gen_range(1..=3);
            Instance::Criteria {
                elements,
                criteria: random_subsets(&mut rng, n, count),
            }
        }
        crate::GenKind::Matroid => {
            let edges = random_graph(&mut rng, n);
            let m = edges.len().min(8);
            let mut rank = BTreeMap::new();
            for mask in 0u32..1 << m {
                let mut parent: Vec<u32> = (0..n as u32).collect();
                fn root(parent: &mut [u32], v: u32) -> u32 {
                    let p = parent[v as usize];
                    if p == v {
                        v
                    } else {
                        let r = root(parent, p);
                        parent[v as usize] = r;
                        r
                    }
                }
                let mut r = 0;
                let mut labs = Vec::new();
                for (i, &(a, b)) in edges.iter().take(m).enumerate() {
                    if mask >> i & 1 == 0 {
                        continue;
                    }
                    labs.push(i as u32);
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    if ra != rb {
                        parent[ra as usize] = rb;
                        r += 1;
                    }
                }
                let key = labs
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                rank.insert(key, r);
            }
            Instance::Matroid {
                ground: (0..m as u32).collect(),
                rank,
            }
        }
    };
    let text = serde_json::to_string_pretty(&inst).map_err(|e| CliError::Internal(e.to_string()))?;
    println!("{text}");
    if let Some(path) = &args.json {
        std::fs::write(path, format!("{text}\n"))?;
    }
    Ok(())
}
