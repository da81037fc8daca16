//! Acceptance suite: one test per claim the crate stakes its correctness
//! on, each ending in a single summary line. Every check is exact set or
//! scalar equality; nothing here has a tolerance to tune.

mod common;

use std::sync::Arc;
use tangles::duality::find_lift_push;
use tangles::instances::bipartition::{bipartition_universe, side_id};
use tangles::instances::connectivity::ConnectivitySystem;
use tangles::instances::graph::{
    clique_system, hole_analysis, is_chordal, stree_to_tree_decomposition, Graph,
};
use tangles::{
    abstract_tangle_duality, duality_decide, enumerate_tangles, is_closed_under_shifting,
    is_separable, reduce_to_minimal, tree_of_tangles, Assume, DualityOutcome, Family, Orientation,
    SepId, Subset,
};

#[test]
fn c01_clique_tangles_are_exactly_the_hole_orientations() {
    let corpus = common::graph_corpus();
    assert_eq!(corpus.len(), 337);
    for g in &corpus {
        let (u, sys) = clique_system(g).unwrap();
        let shared = Arc::new(g.clone());
        let plain = Family::clique_separators(u.clone(), shared.clone()).unwrap();
        let stars = Family::clique_separators(u.clone(), shared).unwrap().stars();
        let star_tangles = common::orientation_set(enumerate_tangles(&sys, &stars).unwrap());
        let plain_tangles = common::orientation_set(enumerate_tangles(&sys, &plain).unwrap());
        let holes = common::orientation_set(hole_analysis(g).unwrap().hole_orientations);
        assert_eq!(
            star_tangles, plain_tangles,
            "star and plain clique tangles differ on {g:?}"
        );
        assert_eq!(
            star_tangles, holes,
            "clique tangles are not the hole orientations on {g:?}"
        );
    }
    println!("criterion 01, holes as tangles: PASS (337 graphs, exact set equality)");
}

#[test]
fn c02_chordality_coincides_with_the_tree_branch() {
    let corpus = common::graph_corpus();
    let mut trees = 0;
    for g in &corpus {
        let (u, sys) = clique_system(g).unwrap();
        let stars = Family::clique_separators(u.clone(), Arc::new(g.clone()))
            .unwrap()
            .stars();
        let assume = Assume {
            separable_checked: true,
            standard_checked: false,
        };
        match duality_decide(&sys, &stars, assume).unwrap() {
            DualityOutcome::Tree(t) => {
                assert!(is_chordal(g), "tree for a non-chordal {g:?}");
                let td = stree_to_tree_decomposition(&t, g).unwrap();
                assert!(td.is_valid_for(g));
                assert!(td.all_bags_cliques(g));
                trees += 1;
            }
            DualityOutcome::Tangle(o) => {
                assert!(!is_chordal(g), "tangle for a chordal {g:?}");
                assert!(o.is_tangle_for(&stars));
            }
            DualityOutcome::Inconclusive(why) => {
                panic!("inconclusive on a conforming input: {why}")
            }
        }
    }
    println!(
        "criterion 02, chordality duality: PASS (337 graphs, {trees} trees, 0 inconclusive, exact)"
    );
}

#[test]
fn c03_strong_separability_of_random_sublattices() {
    let u = bipartition_universe(4).unwrap();
    let mut r = common::rng(0x5377);
    let mut pairs = 0usize;
    for _ in 0..500 {
        let m = common::random_submodular_lattice_subset(&mut r, &u);
        for &a in &m {
            for &b in &m {
                if u.le(a, b) {
                    let z = find_lift_push(&u, &m, a, b).unwrap();
                    assert!(z.is_some(), "no lift-push witness for {a} <= {b}");
                    pairs += 1;
                }
            }
        }
    }
    println!(
        "criterion 03, strong separability: PASS (500 sublattices, {pairs} comparable pairs, exact)"
    );
}

#[test]
fn c04_random_submodular_systems_are_separable() {
    let mut total = 0;
    for (n, seed) in [(4usize, 0x5eb4u64), (5, 0x5eb5)] {
        for sys in common::random_submodular_systems(n, 100, seed) {
            assert!(is_separable(&sys, None).unwrap());
            total += 1;
        }
    }
    assert_eq!(total, 200);
    println!("criterion 04, separability: PASS (200 systems on four and five points, exact)");
}

#[test]
fn c05_trees_of_tangles_distinguish_all_profiles() {
    let mut systems = 0usize;
    let mut largest = 0usize;
    for (n, seed) in [(4usize, 0x5eb4u64), (5, 0x5eb5)] {
        for sys in common::random_submodular_systems(n, 100, seed) {
            let profiles: Vec<Orientation> = sys
                .consistent_orientations()
                .into_iter()
                .filter(|o| o.is_profile())
                .collect();
            largest = largest.max(profiles.len());
            let nested = tree_of_tangles(&sys, &profiles).unwrap();
            assert!(nested.is_tree_set());
            assert!(nested.members().iter().all(|&s| sys.contains(s)));
            assert!(nested.distinguishes(&profiles).unwrap().all_distinguished());

            let minimal = reduce_to_minimal(&nested, &profiles).unwrap();
            assert!(minimal.distinguishes(&profiles).unwrap().all_distinguished());
            let mems = minimal.members();
            for &t in mems {
                let mut sole = 0usize;
                for i in 0..profiles.len() {
                    for j in i + 1..profiles.len() {
                        let witnesses: Vec<SepId> = mems
                            .iter()
                            .copied()
                            .filter(|&s| profiles[i].differs_on(&profiles[j], s))
                            .collect();
                        if witnesses == [t] {
                            sole += 1;
                        }
                    }
                }
                assert_eq!(sole, 1, "{t} is not the sole witness of exactly one pair");
            }
            systems += 1;
        }
    }
    assert_eq!(systems, 200);
    println!(
        "criterion 05, trees of tangles: PASS (200 systems, up to {largest} profiles each, exact)"
    );
}

#[test]
fn c06_circle_duality_decides_exactly_one_branch() {
    let corpus = common::circle_corpus();
    assert_eq!(corpus.len(), 50);
    let mut tangles_seen = 0usize;
    let mut trees_seen = 0usize;
    for (u, sys) in &corpus {
        let all = sys.consistent_orientations();
        for (m, n) in [(1usize, Some(4usize)), (2, Some(4)), (1, None)] {
            let fam = Family::small_intersection(u.clone(), m, n).unwrap().stars();
            let found: Vec<&Orientation> =
                all.iter().filter(|o| o.is_tangle_for(&fam)).collect();
            match duality_decide(sys, &fam, Assume::default()).unwrap() {
                DualityOutcome::Tangle(o) => {
                    assert!(o.is_tangle_for(&fam));
                    assert!(found.contains(&&o), "returned tangle missing from the scan");
                    tangles_seen += 1;
                }
                DualityOutcome::Tree(t) => {
                    assert!(t.is_over(&fam));
                    assert!(t.oriented_range().iter().all(|&s| sys.contains(s)));
                    assert!(found.is_empty(), "a tree and a tangle coexist");
                    trees_seen += 1;
                }
                DualityOutcome::Inconclusive(why) => panic!("inconclusive: {why}"),
            }
        }
    }
    assert_eq!(tangles_seen + trees_seen, 150);
    println!(
        "criterion 06, exactly one branch on circles: PASS (50 systems x 3 families, \
         {tangles_seen} tangles, {trees_seen} trees, exact)"
    );
}

#[test]
fn c07_star_and_plain_tangles_coincide_by_enumeration() {
    let u3 = bipartition_universe(3).unwrap();
    let mut systems = vec![(
        u3.clone(),
        tangles::SeparationSystem::full(u3),
    )];
    let u4 = bipartition_universe(4).unwrap();
    let mut r = common::rng(0xe07);
    for _ in 0..40 {
        systems.push((u4.clone(), common::random_submodular_system(&mut r, &u4)));
    }
    for (u, sys) in &systems {
        assert!(sys.unoriented_len() <= 10);
        let star_tangles = common::orientation_set(
            enumerate_tangles(sys, &Family::tangle_stars(u.clone())).unwrap(),
        );
        let abstract_tangles = common::orientation_set(
            sys.consistent_orientations()
                .into_iter()
                .filter(|o| o.is_abstract_tangle())
                .collect(),
        );
        assert_eq!(star_tangles, abstract_tangles);
        for (m, n) in [(1usize, Some(4usize)), (2, Some(4)), (1, None), (2, None)] {
            let plain = Family::small_intersection(u.clone(), m, n).unwrap();
            let stars = Family::small_intersection(u.clone(), m, n).unwrap().stars();
            let a = common::orientation_set(enumerate_tangles(sys, &plain).unwrap());
            let b = common::orientation_set(enumerate_tangles(sys, &stars).unwrap());
            assert_eq!(a, b, "tangles differ for m = {m}, n = {n:?}");
        }
    }
    println!(
        "criterion 07, star families keep the same tangles: PASS (41 systems, exact set equality)"
    );
}

#[test]
fn c08_the_families_are_closed_under_shifting() {
    let mut cliques = 0usize;
    for g in common::graph_corpus() {
        let (u, sys) = clique_system(&g).unwrap();
        let stars = Family::clique_separators(u.clone(), Arc::new(g)).unwrap().stars();
        assert!(is_closed_under_shifting(&stars, &sys).unwrap());
        cliques += 1;
    }
    let mut circles = 0usize;
    for (u, sys) in common::circle_corpus() {
        for (m, n) in [(1usize, Some(4usize)), (2, Some(4)), (1, None)] {
            let fam = Family::small_intersection(u.clone(), m, n).unwrap().stars();
            assert!(is_closed_under_shifting(&fam, &sys).unwrap());
            circles += 1;
        }
        let mut q = vec![side_id(&u, Subset::EMPTY)];
        for v in 0..u.ground_size() as u32 {
            q.push(side_id(&u, Subset::from_elems([v])));
        }
        let extending = Family::tangles_extending(u.clone(), &q).unwrap();
        assert!(is_closed_under_shifting(&extending, &sys).unwrap());
        circles += 1;
    }
    println!(
        "criterion 08, closed under shifting: PASS ({cliques} clique families, \
         {circles} circle families, exact)"
    );
}

#[test]
fn c09_k4_connectivity_tangles_stop_at_order_three() {
    let g = Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
    let cs = ConnectivitySystem::from_graph(&g).unwrap();
    let mut best = None;
    for k in 1..=5i64 {
        let (u, sys) = cs.sk(k).unwrap();
        let q: Vec<SepId> = u
            .ids()
            .filter(|&s| u.payload(s).unwrap().a.len() <= 1)
            .collect();
        let outcome = abstract_tangle_duality(&sys, &q).unwrap();
        let exists = sys.consistent_orientations().into_iter().any(|o| {
            o.is_abstract_tangle() && q.iter().all(|&s| !sys.contains(s) || o.contains(s))
        });
        assert_eq!(outcome.is_tangle(), exists, "duality disagrees with the scan at k = {k}");
        assert!(outcome.is_tangle() || outcome.is_tree());
        if outcome.is_tangle() {
            best = Some(k);
        }
    }
    assert_eq!(best, Some(3));
    println!("criterion 09, connectivity sanity: PASS (K4 tangles exist up to order 3, exact)");
}

#[test]
fn c10_fish_lemma_and_push_cosmall_hold_at_random() {
    let u = bipartition_universe(5).unwrap();
    let ids: Vec<SepId> = u.ids().collect();
    let mut r = common::rng(0xf15b);
    let pick = |r: &mut rand_chacha::ChaCha8Rng| ids[rand::Rng::gen_range(r, 0..ids.len())];

    let mut fish = 0usize;
    while fish < 10_000 {
        let s = pick(&mut r);
        let t = pick(&mut r);
        if !u.relate(s, t).crossing() {
            continue;
        }
        let w = pick(&mut r);
        if u.nested(w, s) && u.nested(w, t) {
            for corner in u.corners(s, t) {
                assert!(u.nested(w, corner), "{w} nests with {s},{t} but not {corner}");
            }
        }
        fish += 1;
    }

    let mut pushes = 0usize;
    while pushes < 10_000 {
        let a = pick(&mut r);
        let b = pick(&mut r);
        if !u.le(a, b) {
            continue;
        }
        let w = pick(&mut r);
        if !u.is_cosmall(u.join(b, w)) {
            continue;
        }
        assert!(u.is_cosmall(u.join(b, u.meet(w, u.inv(a)))));
        pushes += 1;
    }
    println!(
        "criterion 10, fish and push-co-small: PASS (10000 crossing triples, \
         10000 co-small joins, 0 violations)"
    );
}
