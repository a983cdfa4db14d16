use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::{Attachment, TriTreeSeq};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, VertexId};

/// A vertex or an edge of a triangle-tree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Element {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// A triangle-tree with exactly two leaves, or a single triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrianglePath(TriTreeSeq);

impl TrianglePath {
    /// Wraps `t` if it has at most two leaves (a bare triangle is allowed).
    pub fn from_seq(t: TriTreeSeq) -> Result<Self> {
        let leaves = t.leaves().len();
        if t.vertex_count() == 3 || leaves == 2 {
            Ok(TrianglePath(t))
        } else {
            Err(Error::InvalidTriTree("not a triangle-path"))
        }
    }

    pub fn as_seq(&self) -> &TriTreeSeq {
        &self.0
    }

    pub fn into_seq(self) -> TriTreeSeq {
        self.0
    }

    pub fn triangle_count(&self) -> usize {
        self.0.vertex_count() - 2
    }
}

fn key(a: &VertexId, b: &VertexId) -> (VertexId, VertexId) {
    if a < b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// The unique minimal sub-triangle-tree of `t` holding `x` and `y` at its
/// two ends. An edge argument sits inside the terminal triangle.
pub fn triangle_path(t: &TriTreeSeq, x: &Element, y: &Element) -> Result<TrianglePath> {
    let tris = t.triangles();
    let pairs = t.structural_pairs();
    let edge_of: BTreeMap<(VertexId, VertexId), usize> = pairs
        .iter()
        .enumerate()
        .map(|(i, (u, v))| (key(u, v), i))
        .collect();
    let nt = tris.len();
    // Bipartite triangle/edge tree: triangle nodes 0..nt, edge nodes nt.. .
    let mut adj = vec![Vec::new(); nt + pairs.len()];
    let mut tri_edges = Vec::with_capacity(nt);
    for (i, [a, b, c]) in tris.iter().enumerate() {
        let es = [
            edge_of[&key(a, b)],
            edge_of[&key(a, c)],
            edge_of[&key(b, c)],
        ];
        for &e in &es {
            adj[i].push(nt + e);
            adj[nt + e].push(i);
        }
        tri_edges.push(es);
    }
    let sources = |el: &Element| -> Result<Vec<usize>> {
        match el {
            Element::Edge(id) => {
                let i = t
                    .edge_ids()
                    .iter()
                    .position(|e| e == id)
                    .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
                Ok(vec![nt + i])
            }
            Element::Vertex(v) => {
                if !t.vertices().any(|w| w == v) {
                    return Err(Error::UnknownVertex(v.clone()));
                }
                let mut s: Vec<usize> = (0..nt).filter(|&i| tris[i].contains(v)).collect();
                s.extend(
                    (0..pairs.len())
                        .filter(|&e| pairs[e].0 == *v || pairs[e].1 == *v)
                        .map(|e| nt + e),
                );
                Ok(s)
            }
        }
    };
    let sx = sources(x)?;
    let sy = sources(y)?;
    if sx.iter().any(|a| sy.contains(a)) {
        return Err(Error::AdjacentElements);
    }

    let mut prev = vec![usize::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::new();
    for &s in &sx {
        seen[s] = true;
        queue.push_back(s);
    }
    let mut hit = None;
    while let Some(a) = queue.pop_front() {
        if sy.contains(&a) {
            hit = Some(a);
            break;
        }
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                prev[b] = a;
                queue.push_back(b);
            }
        }
    }
    let mut node = hit.expect("the triangle/edge structure of a triangle-tree is connected");
    let mut chain = vec![node];
    while prev[node] != usize::MAX {
        node = prev[node];
        chain.push(node);
    }
    chain.reverse();

    // Triangles in chain order, with the edge shared by each consecutive pair.
    let chain_tris: Vec<usize> = chain.iter().copied().filter(|&i| i < nt).collect();
    let shared: Vec<usize> = chain
        .iter()
        .copied()
        .filter(|&i| i >= nt)
        .map(|i| i - nt)
        .collect();
    let shared: Vec<usize> = shared
        .into_iter()
        .filter(|e| {
            chain_tris
                .windows(2)
                .any(|w| tri_edges[w[0]].contains(e) && tri_edges[w[1]].contains(e))
        })
        .collect();

    let apex = |tri: usize, e: usize| -> VertexId {
        let (u, v) = &pairs[e];
        tris[tri]
            .iter()
            .find(|w| *w != u && *w != v)
            .expect("triangle has an apex off each side")
            .clone()
    };
    let id_of = |a: &VertexId, b: &VertexId| t.edge_ids()[edge_of[&key(a, b)]].clone();

    let first = chain_tris[0];
    let base: [VertexId; 3] = if chain_tris.len() == 1 {
        let mut b = tris[first].clone();
        if let Element::Vertex(v) = x {
            let p = b
                .iter()
                .position(|w| w == v)
                .expect("source triangle holds x");
            b.swap(0, p);
        }
        b
    } else {
        let s = shared[0];
        [apex(first, s), pairs[s].0.clone(), pairs[s].1.clone()]
    };
    let mut attach = Vec::new();
    for (k, &tri) in chain_tris.iter().enumerate().skip(1) {
        let s = shared[k - 1];
        attach.push(Attachment {
            vertex: apex(tri, s),
            on: pairs[s].clone(),
        });
    }
    let mut edge_ids = vec![
        id_of(&base[0], &base[1]),
        id_of(&base[0], &base[2]),
        id_of(&base[1], &base[2]),
    ];
    for a in &attach {
        edge_ids.push(id_of(&a.vertex, &a.on.0));
        edge_ids.push(id_of(&a.vertex, &a.on.1));
    }
    TrianglePath::from_seq(TriTreeSeq::new(base, attach, edge_ids))
}
