mod common;

use std::collections::BTreeSet;

use common::{double_two_trees, graph, realises, strongly_connected};
use triflow_core::canon::is_isomorphic;
use triflow_core::certify::z3_prove;
use triflow_core::graph::{Orientation, Z3Boundary};
use triflow_core::oracle::{flow_index_lt3, s3_member};
use triflow_core::tritree::{find_two_disjoint_spanning_tritrees, gen_wheel, removable_max};
use triflow_core::twotrees::{certify_s3, partition, strong_mod3_orient};
use triflow_core::{EdgeId, Multigraph};

/// The three ways two edge-disjoint spanning triangle-trees can share four
/// vertices, found by brute force over all unions.
fn four_vertex_fixtures() -> Vec<Multigraph> {
    let doubled = |single: &[(&'static str, &'static str)],
                   twice: &[(&'static str, &'static str)]| {
        let all: Vec<_> = single.iter().chain(twice).chain(twice).copied().collect();
        graph(&all)
    };
    vec![
        doubled(
            &[("0", "1"), ("2", "3")],
            &[("0", "2"), ("0", "3"), ("1", "2"), ("1", "3")],
        ),
        doubled(
            &[("0", "3"), ("2", "3")],
            &[("0", "1"), ("0", "2"), ("1", "2"), ("1", "3")],
        ),
        doubled(
            &[],
            &[("0", "1"), ("0", "2"), ("1", "2"), ("1", "3"), ("0", "3")],
        ),
    ]
}

#[test]
fn four_vertex_distributions_are_exactly_the_fixtures() {
    let found = double_two_trees(4);
    let fixtures = four_vertex_fixtures();
    assert_eq!(found.len(), 3);
    for f in &fixtures {
        assert_eq!(found.iter().filter(|g| is_isomorphic(g, f)).count(), 1);
    }
}

#[test]
fn four_vertex_instances_succeed_on_every_boundary() {
    for g in four_vertex_fixtures() {
        let r = certify_s3(&g).unwrap();
        assert_eq!(r.boundaries_checked, 27);
        assert!(r.all_ok);
        assert!(r.certificate.splits.is_empty());
        assert!(s3_member(&g).unwrap().verdict);
    }
}

#[test]
fn zero_boundary_gives_flow_index_below_three() {
    let g = &four_vertex_fixtures()[0];
    let (t1, t2) = find_two_disjoint_spanning_tritrees(g).unwrap();
    let part = partition(g, &t1, &t2).unwrap().unwrap();
    let zero = Z3Boundary::zero(g);
    let d = strong_mod3_orient(g, &zero, &part).unwrap();
    assert!(realises(g, &d, &zero) && strongly_connected(g, &d));
    assert!(flow_index_lt3(g).unwrap().verdict);
}

#[test]
fn realisable_boundary_is_met() {
    let g = &four_vertex_fixtures()[1];
    let (t1, t2) = find_two_disjoint_spanning_tritrees(g).unwrap();
    let part = partition(g, &t1, &t2).unwrap().unwrap();
    // Every edge from the smaller to the larger id.
    let d = Orientation::from_fn(g, |_| true);
    let beta = triflow_core::graph::boundary_of(g, &d).unwrap();
    let out = strong_mod3_orient(g, &beta, &part).unwrap();
    assert!(realises(g, &out, &beta) && strongly_connected(g, &out));
}

#[test]
fn k4_is_out_of_scope() {
    assert!(certify_s3(&gen_wheel(3).unwrap()).is_none());
}

#[test]
fn two_edge_disjoint_books_on_five_vertices() {
    let mut pairs = vec![("0", "1"), ("2", "3")];
    for x in ["2", "3", "4"] {
        pairs.extend([("0", x), ("1", x)]);
    }
    for x in ["0", "1", "4"] {
        pairs.extend([("2", x), ("3", x)]);
    }
    let g = graph(&pairs);
    let r = certify_s3(&g).unwrap();
    assert_eq!(r.boundaries_checked, 81);
    assert!(r.all_ok);
    assert!(flow_index_lt3(&g).unwrap().verdict);
}

fn has_cycle(g: &Multigraph, edges: &BTreeSet<EdgeId>) -> bool {
    let sub = g.edge_subgraph(edges.iter()).unwrap();
    // A forest has exactly |V| - (components) edges; test each component.
    let mut comps = 0;
    let mut seen = BTreeSet::new();
    for v in sub.vertices() {
        if seen.insert(v.clone()) {
            comps += 1;
            let mut stack = vec![v.clone()];
            while let Some(x) = stack.pop() {
                for y in sub.neighbors(&x) {
                    if seen.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
    }
    sub.edge_count() + comps > sub.vertex_count()
}

#[test]
fn a_cyclic_largest_removable_set_already_yields_a_proof() {
    let mut cyclic = 0;
    for n in 4..=6 {
        for g in double_two_trees(n) {
            let (t1, t2) = find_two_disjoint_spanning_tritrees(&g).unwrap();
            let (r1, r2) = (removable_max(&t1), removable_max(&t2));
            let (r, other) = if r1.len() >= r2.len() {
                (r1, &t2)
            } else {
                (r2, &t1)
            };
            if !has_cycle(&g, &r) {
                continue;
            }
            cyclic += 1;
            let ids: BTreeSet<EdgeId> = other.edge_id_set().union(&r).cloned().collect();
            let sub = g.spanning_subgraph(ids.iter()).unwrap();
            assert!(z3_prove(&sub).is_some(), "{g:?}");
        }
    }
    assert!(cyclic > 0);
}

#[test]
fn certified_instances_have_flow_index_below_three() {
    for n in 4..=5 {
        for g in double_two_trees(n) {
            let r = certify_s3(&g).unwrap();
            assert!(r.all_ok);
            assert!(flow_index_lt3(&g).unwrap().verdict);
        }
    }
}

#[test]
fn partitions_meet_their_invariants() {
    for g in double_two_trees(5) {
        let (t1, t2) = find_two_disjoint_spanning_tritrees(&g).unwrap();
        let part = partition(&g, &t1, &t2).unwrap().unwrap();
        assert!(part.check(&g).is_ok());
        assert!(part.e1.is_disjoint(&part.e2));
        assert_eq!(part.e1.len() + part.e2.len(), g.edge_count());
    }
}
