//! End-to-end runs of the binary: certificates, exit codes, determinism.

use serde_json::Value;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tangles"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn certificate(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const C4: &str = r#"{"kind":"graph","n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]}"#;
const C5: &str = r#"{"kind":"graph","n":5,"edges":[[0,1],[1,2],[2,3],[3,4],[4,0]]}"#;
const DIAMOND: &str = r#"{"kind":"graph","n":4,"edges":[[0,1],[0,2],[1,2],[1,3],[2,3]]}"#;
const SET3: &str = r#"{"kind":"set","elements":[0,1,2]}"#;

#[test]
fn analyze_reports_the_single_hole_tangle_of_c4() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "c4.json", C4);
    let out = bin().args(["analyze"]).arg(&inst).args(["--family", "clique"]).output().unwrap();
    let cert = certificate(&out);
    assert_eq!(cert["outcome"], "ok");
    let w = &cert["witness"];
    assert_eq!(w["count"], 1);
    assert_eq!(w["ground_size"], 4);
    assert_eq!(w["submodular"], true);
    assert_eq!(w["separable"], true);
    assert_eq!(w["tangles"].as_array().unwrap().len(), 1);
}

#[test]
fn analyze_lists_the_principal_tangles_of_a_three_set() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "s3.json", SET3);
    let out = bin().args(["analyze"]).arg(&inst).args(["--family", "T"]).output().unwrap();
    let w = certificate(&out)["witness"].clone();
    assert_eq!(w["count"], 3);
    // every bipartition of {0,1,2} is oriented toward one principal element
    for t in w["tangles"].as_array().unwrap() {
        assert_eq!(t.as_array().unwrap().len(), w["system_unoriented"].as_u64().unwrap() as usize);
    }
}

#[test]
fn analyze_reads_the_instance_from_stdin() {
    let mut child = bin()
        .args(["analyze", "-", "--family", "T"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(SET3.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(certificate(&out)["witness"]["count"], 3);
}

#[test]
fn malformed_json_exits_2() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "bad.json", r#"{"kind":"graph","n":3"#);
    let out = bin().args(["analyze"]).arg(&inst).output().unwrap();
    assert_eq!(code(&out), 2);
}

#[test]
fn a_complete_graph_exits_3() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "k3.json", r#"{"kind":"graph","n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let out = bin().args(["tot"]).arg(&inst).args(["--family", "clique"]).output().unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn semantic_flag_gaps_exit_4() {
    let dir = TempDir::new().unwrap();
    let circle = write(
        &dir,
        "c.json",
        r#"{"kind":"circle","elements":[0,1,2,3],"cycle":[0,1,2,3]}"#,
    );
    let out = bin().args(["analyze"]).arg(&circle).args(["--k", "2"]).output().unwrap();
    assert_eq!(code(&out), 4, "circle without criteria");
    let set = write(&dir, "s3.json", SET3);
    let out = bin().args(["duality"]).arg(&set).args(["--family", "fnm"]).output().unwrap();
    assert_eq!(code(&out), 4, "fnm without --m");
    let out = bin().args(["analyze"]).arg(&set).args(["--family", "clique"]).output().unwrap();
    assert_eq!(code(&out), 4, "clique family without a graph");
}

#[test]
fn tot_emits_a_distinguishing_tree_set_for_the_three_set() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "s3.json", SET3);
    let dot = dir.path().join("out.dot");
    let out = bin()
        .args(["tot"])
        .arg(&inst)
        .args(["--family", "profiles", "--dot"])
        .arg(&dot)
        .output()
        .unwrap();
    let w = certificate(&out)["witness"].clone();
    assert_eq!(w["profile_count"], 3);
    let tree = w["tree_set"].as_array().unwrap();
    assert!(!tree.is_empty() && tree.len() <= 3);
    for pair in w["distinguishes"].as_array().unwrap() {
        assert!(!pair[2].is_null());
    }
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph tree_set"));
}

#[test]
fn tot_emits_an_empty_tree_set_when_only_one_tangle_exists() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "c5.json", C5);
    let out = bin().args(["tot"]).arg(&inst).args(["--family", "clique"]).output().unwrap();
    let w = certificate(&out)["witness"].clone();
    assert_eq!(w["profile_count"], 1);
    assert_eq!(w["tree_set"].as_array().unwrap().len(), 0);
}

#[test]
fn duality_on_the_diamond_emits_the_two_bag_clique_decomposition() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "diamond.json", DIAMOND);
    let dot = dir.path().join("stree.dot");
    let out = bin()
        .args(["duality"])
        .arg(&inst)
        .args(["--family", "clique", "--dot"])
        .arg(&dot)
        .output()
        .unwrap();
    let cert = certificate(&out);
    assert_eq!(cert["outcome"], "stree");
    let d = &cert["witness"]["decomposition"];
    let mut bags: Vec<Vec<u64>> = d["bags"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect())
        .collect();
    bags.sort();
    assert_eq!(bags, vec![vec![0, 1, 2], vec![1, 2, 3]]);
    assert_eq!(d["width"], 2);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph stree"));
}

#[test]
fn duality_on_circles_lands_on_a_definitive_branch_either_way() {
    let dir = TempDir::new().unwrap();
    let tangle_side = write(
        &dir,
        "c5.json",
        r#"{"kind":"circle","elements":[0,1,2,3,4],"cycle":[0,1,2,3,4],"criteria":[[0,1],[2,3,4],[1,2]]}"#,
    );
    let out = bin()
        .args(["duality"])
        .arg(&tangle_side)
        .args(["--family", "fnm", "--m", "1", "--n", "4", "--k", "1"])
        .output()
        .unwrap();
    assert_eq!(certificate(&out)["outcome"], "tangle");
    let tree_side = write(
        &dir,
        "c4.json",
        r#"{"kind":"circle","elements":[0,1,2,3],"cycle":[0,1,2,3],"criteria":[[0,1],[2,3]]}"#,
    );
    let out = bin()
        .args(["duality"])
        .arg(&tree_side)
        .args(["--family", "fnm", "--m", "2", "--n", "4", "--k", "4"])
        .output()
        .unwrap();
    assert_eq!(certificate(&out)["outcome"], "stree");
}

#[test]
fn a_q_that_is_not_down_closed_exits_3() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "s3.json", SET3);
    let q = write(&dir, "q.json", r#"[[[0],[1,2]]]"#);
    let out = bin()
        .args(["duality"])
        .arg(&inst)
        .args(["--family", "TQ", "--Q"])
        .arg(&q)
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
}

#[test]
fn a_down_closed_q_is_accepted() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "s3.json", SET3);
    let q = write(&dir, "q.json", r#"[[[],[0,1,2]]]"#);
    let out = bin()
        .args(["duality"])
        .arg(&inst)
        .args(["--family", "TQ", "--Q"])
        .arg(&q)
        .output()
        .unwrap();
    assert_eq!(certificate(&out)["outcome"], "tangle");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "diamond.json", DIAMOND);
    let run = || {
        bin()
            .args(["duality"])
            .arg(&inst)
            .args(["--family", "clique"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn generated_instances_round_trip_through_analyze() {
    let dir = TempDir::new().unwrap();
    for kind in ["graph", "set", "circle", "criteria", "matroid"] {
        let path = dir.path().join(format!("{kind}.json"));
        let out = bin()
            .args(["gen", kind, "--n", "5", "--seed", "11", "--json"])
            .arg(&path)
            .output()
            .unwrap();
        assert!(out.status.success(), "gen {kind}");
        let again = bin()
            .args(["gen", kind, "--n", "5", "--seed", "11"])
            .output()
            .unwrap();
        assert_eq!(out.stdout, again.stdout, "gen {kind} determinism");
        let analyzed = bin()
            .args(["analyze"])
            .arg(&path)
            .args(["--family", "Tstar", "--k", "2"])
            .output()
            .unwrap();
        assert_eq!(code(&analyzed), 0, "analyze of generated {kind}");
    }
}

#[test]
fn the_json_flag_duplicates_stdout_into_a_file() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "c4.json", C4);
    let file = dir.path().join("cert.json");
    let out = bin()
        .args(["analyze"])
        .arg(&inst)
        .args(["--family", "clique", "--json"])
        .arg(&file)
        .output()
        .unwrap();
    let from_stdout = certificate(&out);
    let from_file: Value =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(from_stdout, from_file);
}
