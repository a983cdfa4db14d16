use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Attachment, TriTreeSeq};
use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// One triangle-tree per isomorphism class on `n` vertices, grown from a
/// triangle. Vertices are `0..n` in attachment order and edges `e0, e1, ...`
/// in structural order, so every sequence realises itself.
pub fn enumerate_tritrees(n: usize) -> Vec<TriTreeSeq> {
    if n < 3 {
        return Vec::new();
    }
    let vid = |i: usize| VertexId::new(format!("{i}"));
    let eid = |i: usize| EdgeId::new(format!("e{i}"));
    let base = TriTreeSeq::new(
        [vid(0), vid(1), vid(2)],
        Vec::new(),
        (0..3).map(eid).collect(),
    );
    let mut level = vec![base];
    for k in 3..n {
        let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for (y, z) in t.structural_pairs() {
                let mut attach = t.attachments().to_vec();
                attach.push(Attachment {
                    vertex: vid(k),
                    on: (y, z),
                });
                let ids: Vec<EdgeId> = (0..3 + 2 * attach.len()).map(eid).collect();
                let grown = TriTreeSeq::new(t.base().clone(), attach, ids);
                if seen.insert(canonical_form(&grown.to_graph())) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// The triangle-paths (two leaves) among [`enumerate_tritrees`], `n >= 4`.
pub fn enumerate_triangle_paths(n: usize) -> Vec<TriTreeSeq> {
    if n < 4 {
        return Vec::new();
    }
    enumerate_tritrees(n)
        .into_iter()
        .filter(|t| t.leaves().len() == 2)
        .collect()
}

/// Graphs on `n` vertices with a spanning triangle-tree and at most
/// `max_extra` edges beyond it, one per isomorphism class. Extra edges may
/// be parallel to existing ones.
pub fn enumerate_spanning_tritree_graphs(n: usize, max_extra: usize) -> Vec<Multigraph> {
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    for t in enumerate_tritrees(n) {
        extend(&t.to_graph(), &pairs, 0, max_extra, &mut seen, &mut out);
    }
    out
}

fn extend(
    g: &Multigraph,
    pairs: &[(usize, usize)],
    from: usize,
    left: usize,
    seen: &mut BTreeSet<CanonicalForm>,
    out: &mut Vec<Multigraph>,
) {
    if !seen.insert(canonical_form(g)) {
        return;
    }
    out.push(g.clone());
    if left == 0 {
        return;
    }
    for (k, &(i, j)) in pairs.iter().enumerate().skip(from) {
        let mut h = g.clone();
        h.add_fresh_edge(VertexId::new(format!("{i}")), VertexId::new(format!("{j}")))
            .expect("vertices exist");
        extend(&h, pairs, k, left - 1, seen, out);
    }
}

/// Edge-disjoint unions of two triangle-trees on `0..n`, one per
/// isomorphism class. The second tree is placed under every relabelling.
pub fn enumerate_double_tritrees(n: usize) -> Vec<Multigraph> {
    let trees: Vec<Multigraph> = enumerate_tritrees(n)
        .iter()
        .map(TriTreeSeq::to_graph)
        .collect();
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    let vid = |i: usize| VertexId::new(format!("{i}"));
    loop {
        for a in &trees {
            for b in &trees {
                let mut g = a.clone();
                for (_, x, y) in b.edges() {
                    let m = |z: &VertexId| {
                        vid(perm[z.as_str().parse::<usize>().expect("numeric names")])
                    };
                    g.add_fresh_edge(m(x), m(y)).expect("vertices exist");
                }
                if seen.insert(canonical_form(&g)) {
                    out.push(g);
                }
            }
        }
        if !next_permutation(&mut perm) {
            return out;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
