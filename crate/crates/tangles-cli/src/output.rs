//! Canonical JSON and DOT rendering for certificates and witnesses.

use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use tangles::instances::graph::TreeDecomposition;
use tangles::{NestedSet, Orientation, STree, SepId, Subset, Universe};

use crate::error::{CliError, Result};
use crate::instance::Instance;

/// The one artifact every command emits. Field order is fixed, maps are
/// sorted, so equal inputs give byte-identical output.
#[derive(Serialize)]
pub struct Certificate {
    pub command: Value,
    pub instance: Instance,
    pub outcome: String,
    pub witness: Value,
    pub verification: Vec<String>,
}

fn side_json(side: Subset, labels: &[u32]) -> Value {
    Value::from(side.iter().map(|i| labels[i as usize]).collect::<Vec<u32>>())
}

pub fn payload_json(u: &Universe, s: SepId, labels: &[u32]) -> Value {
    match u.payload(s) {
        Some(p) => json!([side_json(p.a, labels), side_json(p.b, labels)]),
        None => json!(format!("{s}")),
    }
}

pub fn payload_label(u: &Universe, s: SepId, labels: &[u32]) -> String {
    match u.payload(s) {
        Some(p) => {
            let fmt = |side: Subset| {
                side.iter()
                    .map(|i| labels[i as usize].to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!("{{{}}}|{{{}}}", fmt(p.a), fmt(p.b))
        }
        None => format!("{s}"),
    }
}

pub fn orientation_json(o: &Orientation, labels: &[u32]) -> Value {
    let u = o.system().universe();
    Value::from(
        o.ids()
            .iter()
            .map(|&s| payload_json(u, s, labels))
            .collect::<Vec<Value>>(),
    )
}

pub fn nested_json(set: &NestedSet, labels: &[u32]) -> Value {
    let u = set.system().universe();
    Value::from(
        set.members()
            .iter()
            .map(|&s| payload_json(u, s, labels))
            .collect::<Vec<Value>>(),
    )
}

pub fn stree_json(t: &STree, labels: &[u32]) -> Value {
    let u = t.system().universe();
    let nodes: Vec<Value> = (0..t.node_count())
        .map(|i| {
            Value::from(
                t.star_at(i)
                    .iter()
                    .map(|&s| payload_json(u, s, labels))
                    .collect::<Vec<Value>>(),
            )
        })
        .collect();
    let edges: Vec<Value> = t
        .edges()
        .iter()
        .map(|&(a, b, s)| json!([a, b, payload_json(u, s, labels)]))
        .collect();
    json!({ "nodes": nodes, "edges": edges })
}

pub fn decomposition_json(td: &TreeDecomposition) -> Value {
    let bags: Vec<Value> = td
        .bags()
        .iter()
        .map(|b| Value::from(b.iter().collect::<Vec<u32>>()))
        .collect();
    json!({
        "bags": bags,
        "edges": td.edges(),
        "width": td.width(),
    })
}

pub fn stree_dot(t: &STree, labels: &[u32]) -> String {
    let u = t.system().universe();
    let mut out = String::from("graph stree {\n  node [shape=box];\n");
    for i in 0..t.node_count() {
        let star = t
            .star_at(i)
            .iter()
            .map(|&s| payload_label(u, s, labels))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "  t{i} [label=\"{star}\"];");
    }
    for &(a, b, s) in t.edges() {
        let _ = writeln!(out, "  t{a} -- t{b} [label=\"{}\"];", payload_label(u, s, labels));
    }
    out.push_str("}\n");
    out
}

/// DOT for a tree set: one node per member, an edge wherever two members
/// admit orientations s <= t with no third member strictly between.
pub fn nested_dot(set: &NestedSet, labels: &[u32]) -> String {
    let u = set.system().universe();
    let members = set.members();
    let mut out = String::from("graph tree_set {\n  node [shape=box];\n");
    for (i, &m) in members.iter().enumerate() {
        let _ = writeln!(out, "  s{i} [label=\"{}\"];", payload_label(u, m, labels));
    }
    for (i, &a) in members.iter().enumerate() {
        for (j, &b) in members.iter().enumerate().skip(i + 1) {
            let covering = [a, u.inv(a)].into_iter().any(|sa| {
                [b, u.inv(b)].into_iter().any(|sb| {
                    u.le(sa, sb)
                        && !members.iter().enumerate().any(|(k, &c)| {
                            k != i
                                && k != j
                                && [c, u.inv(c)].into_iter().any(|sc| {
                                    u.lt(sa, sc) && u.lt(sc, sb)
                                })
                        })
                })
            });
            if covering {
                let _ = writeln!(out, "  s{i} -- s{j};");
            }
        }
    }
    out.push_str("}\n");
    out
}

pub fn emit(
    cert: &Certificate,
    json_path: Option<&std::path::Path>,
    dot: Option<(&std::path::Path, String)>,
) -> Result<()> {
    let text = serde_json::to_string_pretty(cert)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    println!("{text}");
    if let Some(path) = json_path {
        std::fs::write(path, format!("{text}\n"))?;
    }
    if let Some((path, contents)) = dot {
        std::fs::write(path, contents)?;
    }
    Ok(())
}
