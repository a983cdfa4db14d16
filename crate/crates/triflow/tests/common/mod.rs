//! Checkers that read only the raw edge list, kept apart from the library
//! routines whose output they judge.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use triflow_core::graph::{FlowAssignment, Orientation, Z3Boundary};
use triflow_core::oracle::Coloring;
use triflow_core::{Multigraph, VertexId};

/// Out-degree minus in-degree per vertex, weighted by `w`, or `None` when
/// some edge is missing or points between foreign ends.
fn net(
    g: &Multigraph,
    d: &Orientation,
    w: impl Fn(&triflow_core::EdgeId) -> Option<i64>,
) -> Option<BTreeMap<VertexId, i64>> {
    if d.len() != g.edge_count() {
        return None;
    }
    let mut out: BTreeMap<VertexId, i64> = g.vertices().map(|x| (x.clone(), 0)).collect();
    for (e, a, b) in g.edges() {
        let (t, h) = d.arc(e)?;
        if !((t == a && h == b) || (t == b && h == a)) {
            return None;
        }
        let x = w(e)?;
        *out.get_mut(t)? += x;
        *out.get_mut(h)? -= x;
    }
    Some(out)
}

pub fn realises(g: &Multigraph, d: &Orientation, beta: &Z3Boundary) -> bool {
    net(g, d, |_| Some(1)).is_some_and(|m| {
        m.iter()
            .all(|(x, &k)| beta.get(x) == Some(k.rem_euclid(3) as u8))
    })
}

pub fn is_mod3(g: &Multigraph, d: &Orientation) -> bool {
    net(g, d, |_| Some(1)).is_some_and(|m| m.values().all(|k| k % 3 == 0))
}

pub fn is_flow(g: &Multigraph, f: &FlowAssignment) -> bool {
    let k = i64::from(f.k);
    let value = |e: &triflow_core::EdgeId| {
        f.values
            .get(e)
            .map(|&x| i64::from(x))
            .filter(|x| (1..k).contains(x))
    };
    f.values.len() == g.edge_count()
        && net(g, &f.orientation, value).is_some_and(|m| m.values().all(|&x| x == 0))
}

pub fn is_proper(g: &Multigraph, c: &Coloring) -> bool {
    g.vertices().all(|x| c.get(x).is_some_and(|&k| k < 3))
        && g.edges().all(|(_, a, b)| c.get(a) != c.get(b))
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

fn connected(vs: &[VertexId], edges: &[(VertexId, VertexId)]) -> bool {
    let Some(first) = vs.first() else { return true };
    let mut seen = BTreeSet::from([first.clone()]);
    let mut stack = vec![first.clone()];
    while let Some(x) = stack.pop() {
        for (a, b) in edges {
            let y = if *a == x {
                b
            } else if *b == x {
                a
            } else {
                continue;
            };
            if seen.insert(y.clone()) {
                stack.push(y.clone());
            }
        }
    }
    seen.len() == vs.len()
}

/// Connected on all of `vs` and still connected after deleting any one
/// edge.
pub fn bridgeless(vs: &[VertexId], edges: &[(VertexId, VertexId)]) -> bool {
    connected(vs, edges)
        && (0..edges.len()).all(|i| {
            let rest: Vec<_> = edges
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, p)| p.clone())
                .collect();
            connected(vs, &rest)
        })
}
