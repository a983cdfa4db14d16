//! Test-side checkers written against the raw edge list only, so they do
//! not share code with the library routines they judge.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use triflow_core::canon::canonical_form;
use triflow_core::graph::{Orientation, Z3Boundary};
use triflow_core::tritree::enumerate_tritrees;
use triflow_core::{Multigraph, VertexId};

pub fn v(s: &str) -> VertexId {
    VertexId::from(s)
}

pub fn graph(pairs: &[(&str, &str)]) -> Multigraph {
    Multigraph::from_pairs(pairs).unwrap()
}

/// Out-degree minus in-degree at every vertex, or `None` when the
/// orientation misses an edge or reverses an edge onto foreign ends.
pub fn imbalance(g: &Multigraph, d: &Orientation) -> Option<BTreeMap<VertexId, i64>> {
    let mut net: BTreeMap<VertexId, i64> = g.vertices().map(|x| (x.clone(), 0)).collect();
    if d.len() != g.edge_count() {
        return None;
    }
    for (e, a, b) in g.edges() {
        let (t, h) = d.arc(e)?;
        if !((t == a && h == b) || (t == b && h == a)) {
            return None;
        }
        *net.get_mut(t)? += 1;
        *net.get_mut(h)? -= 1;
    }
    Some(net)
}

pub fn realises(g: &Multigraph, d: &Orientation, beta: &Z3Boundary) -> bool {
    imbalance(g, d).is_some_and(|net| {
        net.iter()
            .all(|(x, &k)| beta.get(x) == Some(k.rem_euclid(3) as u8))
    })
}

fn reach(g: &Multigraph, d: &Orientation, from: &VertexId, forward: bool) -> BTreeSet<VertexId> {
    let mut seen = BTreeSet::from([from.clone()]);
    let mut stack = vec![from.clone()];
    while let Some(x) = stack.pop() {
        for e in g.edge_ids() {
            let Some((t, h)) = d.arc(e) else { continue };
            let (s, y) = if forward { (t, h) } else { (h, t) };
            if *s == x && seen.insert(y.clone()) {
                stack.push(y.clone());
            }
        }
    }
    seen
}

pub fn strongly_connected(g: &Multigraph, d: &Orientation) -> bool {
    let Some(root) = g.vertices().next() else {
        return true;
    };
    let n = g.vertex_count();
    reach(g, d, root, true).len() == n && reach(g, d, root, false).len() == n
}

/// Connected and still connected after deleting any single edge.
pub fn bridgeless(g: &Multigraph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let ids: Vec<_> = g.edge_ids().cloned().collect();
    ids.iter().all(|e| {
        let rest: Vec<_> = ids.iter().filter(|f| *f != e).collect();
        g.spanning_subgraph(rest).unwrap().is_connected()
    })
}

pub fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Unions of two triangle-trees on `0..n`, one per isomorphism class.
pub fn double_two_trees(n: usize) -> Vec<Multigraph> {
    let trees = enumerate_tritrees(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in &trees {
        for b in &trees {
            let h = b.to_graph();
            for p in perms(n) {
                let mut g = a.to_graph();
                for (_, x, y) in h.edges() {
                    let m = |z: &VertexId| {
                        VertexId::new(p[z.as_str().parse::<usize>().unwrap()].to_string())
                    };
                    g.add_fresh_edge(m(x), m(y)).unwrap();
                }
                if seen.insert(canonical_form(&g)) {
                    out.push(g);
                }
            }
        }
    }
    out
}
