//! Loop-free multigraphs with stable edge identities.
//!
//! Every operation takes edge ids rather than endpoint pairs so parallel
//! edges stay individually addressable. Values are immutable from the
//! caller's point of view: surgery returns a new graph.

mod indexed;
mod orient;
mod surgery;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

pub use indexed::IndexedGraph;
pub use orient::{
    boundary_of, is_strongly_connected, Boundaries, FlowAssignment, Orientation, Z3Boundary,
};
pub use surgery::Pairing;

macro_rules! string_id {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(String);

        impl $name {
            pub fn new(s: impl Into<String>) -> Self {
                $name(s.into())
            }

            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl From<&str> for $name {
            fn from(s: &str) -> Self {
                $name(String::from(s))
            }
        }

        impl From<String> for $name {
            fn from(s: String) -> Self {
                $name(s)
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }
    };
}

string_id!(
    /// Opaque vertex name. Ordered lexicographically; merges keep the least.
    VertexId
);
string_id!(
    /// Opaque edge name, unique within a graph.
    EdgeId
);

/// A loop-free multigraph.
///
/// Endpoints of each edge are stored in ascending order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

fn ordered(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from endpoint pairs, naming edges `e0, e1, ...` in
    /// input order. Vertices are implied by the pairs.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Self> {
        let mut g = Multigraph::new();
        for (i, (a, b)) in pairs.iter().enumerate() {
            let (a, b) = (VertexId::from(a.as_ref()), VertexId::from(b.as_ref()));
            g.vertices.insert(a.clone());
            g.vertices.insert(b.clone());
            g.add_edge(EdgeId::new(format!("e{i}")), a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from explicit vertices and `(id, u, v)` triples.
    pub fn from_parts<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VertexId>,
        E: IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    {
        let mut g = Multigraph::new();
        for v in vertices {
            g.add_vertex(v)?;
        }
        for (id, u, v) in edges {
            g.add_edge(id, u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.insert(v.clone()) {
            return Err(Error::DuplicateVertex(v));
        }
        Ok(())
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        if u == v {
            return Err(Error::Loop(id));
        }
        for x in [&u, &v] {
            if !self.vertices.contains(x) {
                return Err(Error::UnknownVertex(x.clone()));
            }
        }
        if self.edges.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.edges.insert(id, ordered(u, v));
        Ok(())
    }

    /// Adds an edge under a fresh id and returns that id.
    pub fn add_fresh_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = self.fresh_edge_id();
        self.add_edge(id.clone(), u, v)?;
        Ok(id)
    }

    pub fn remove_edge(&mut self, id: &EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges
            .remove(id)
            .ok_or_else(|| Error::UnknownEdge(id.clone()))
    }

    /// Removes a vertex together with every incident edge.
    pub fn remove_vertex(&mut self, v: &VertexId) -> Result<()> {
        if !self.vertices.remove(v) {
            return Err(Error::UnknownVertex(v.clone()));
        }
        self.edges.retain(|_, (a, b)| a != v && b != v);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.vertices.iter()
    }

    /// Edges in id order as `(id, u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (&EdgeId, &VertexId, &VertexId)> + '_ {
        self.edges.iter().map(|(id, (u, v))| (id, u, v))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &EdgeId> + '_ {
        self.edges.keys()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_edge(&self, id: &EdgeId) -> bool {
        self.edges.contains_key(id)
    }

    pub fn endpoints(&self, id: &EdgeId) -> Result<(&VertexId, &VertexId)> {
        self.edges
            .get(id)
            .map(|(u, v)| (u, v))
            .ok_or_else(|| Error::UnknownEdge(id.clone()))
    }

    /// The endpoint of `id` opposite to `v`.
    pub fn other_end(&self, id: &EdgeId, v: &VertexId) -> Result<&VertexId> {
        let (a, b) = self.endpoints(id)?;
        if a == v {
            Ok(b)
        } else if b == v {
            Ok(a)
        } else {
            Err(Error::NotIncident {
                vertex: v.clone(),
                edge: id.clone(),
            })
        }
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.edges
            .values()
            .filter(|(a, b)| a == v || b == v)
            .count()
    }

    /// Incident edges of `v` with their far endpoints, in edge-id order.
    pub fn incident(&self, v: &VertexId) -> Vec<(EdgeId, VertexId)> {
        self.edges
            .iter()
            .filter_map(|(id, (a, b))| {
                if a == v {
                    Some((id.clone(), b.clone()))
                } else if b == v {
                    Some((id.clone(), a.clone()))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Distinct neighbours of `v`.
    pub fn neighbors(&self, v: &VertexId) -> BTreeSet<VertexId> {
        self.incident(v).into_iter().map(|(_, w)| w).collect()
    }

    /// All edge ids joining `a` and `b`, in id order.
    pub fn edges_between(&self, a: &VertexId, b: &VertexId) -> Vec<EdgeId> {
        let key = ordered(a.clone(), b.clone());
        self.edges
            .iter()
            .filter(|(_, ends)| **ends == key)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn is_adjacent(&self, a: &VertexId, b: &VertexId) -> bool {
        let key = ordered(a.clone(), b.clone());
        self.edges.values().any(|ends| *ends == key)
    }

    /// True if there are no parallel edges.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.values().all(|ends| seen.insert(ends))
    }

    /// The smallest `e{k}`, `k >= |E|`, not yet used as an edge id.
    pub fn fresh_edge_id(&self) -> EdgeId {
        let mut k = self.edges.len();
        loop {
            let id = EdgeId::new(format!("e{k}"));
            if !self.edges.contains_key(&id) {
                return id;
            }
            k += 1;
        }
    }

    /// The smallest `{prefix}{k}`, `k >= 0`, not yet used as a vertex id.
    pub fn fresh_vertex_id(&self, prefix: &str) -> VertexId {
        let mut k = 0usize;
        loop {
            let id = VertexId::new(format!("{prefix}{k}"));
            if !self.vertices.contains(&id) {
                return id;
            }
            k += 1;
        }
    }

    /// Copy with every vertex and edge id prefixed, for building disjoint
    /// operands of a 2-sum.
    pub fn with_prefix(&self, prefix: &str) -> Self {
        let p = |s: &str| format!("{prefix}{s}");
        Multigraph {
            vertices: self
                .vertices
                .iter()
                .map(|v| VertexId::new(p(v.as_str())))
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(id, (u, v))| {
                    (
                        EdgeId::new(p(id.as_str())),
                        ordered(VertexId::new(p(u.as_str())), VertexId::new(p(v.as_str()))),
                    )
                })
                .collect(),
        }
    }

    /// Renames vertices through `map`; unmapped vertices keep their id.
    /// Fails if two vertices end up with the same id.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Self> {
        let f = |v: &VertexId| map.get(v).cloned().unwrap_or_else(|| v.clone());
        let vertices: BTreeSet<VertexId> = self.vertices.iter().map(f).collect();
        if vertices.len() != self.vertices.len() {
            return Err(Error::IdCollision(String::from("relabel target")));
        }
        let edges = self
            .edges
            .iter()
            .map(|(id, (u, v))| (id.clone(), ordered(f(u), f(v))))
            .collect();
        Ok(Multigraph { vertices, edges })
    }

    /// The subgraph formed by `ids` on all of `V(G)`.
    pub fn spanning_subgraph<'a, I>(&self, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut edges = BTreeMap::new();
        for id in ids {
            let ends = self
                .edges
                .get(id)
                .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
            edges.insert(id.clone(), ends.clone());
        }
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges,
        })
    }

    /// The edge-induced subgraph `G[ids]`: only the endpoints are kept.
    pub fn edge_subgraph<'a, I>(&self, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a EdgeId>,
    {
        let mut g = self.spanning_subgraph(ids)?;
        let used: BTreeSet<VertexId> = g
            .edges
            .values()
            .flat_map(|(u, v)| [u.clone(), v.clone()])
            .collect();
        g.vertices = used;
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        IndexedGraph::new(self).is_connected()
    }

    /// Connected, bridgeless, and non-empty. K1 counts as 2-edge-connected.
    pub fn is_2edge_connected(&self) -> bool {
        let ix = IndexedGraph::new(self);
        ix.n() >= 1 && ix.is_connected() && ix.bridges().is_empty()
    }

    /// The cut edges of the graph, in edge-id order.
    pub fn cut_edges(&self) -> Vec<EdgeId> {
        let ix = IndexedGraph::new(self);
        let mut out: Vec<EdgeId> = ix
            .bridges()
            .into_iter()
            .map(|e| ix.edge_id(e).clone())
            .collect();
        out.sort();
        out
    }

    pub fn degree_map(&self) -> BTreeMap<VertexId, usize> {
        let mut d: BTreeMap<VertexId, usize> =
            self.vertices.iter().map(|v| (v.clone(), 0)).collect();
        for (u, v) in self.edges.values() {
            *d.get_mut(u).expect("endpoint is a vertex") += 1;
            *d.get_mut(v).expect("endpoint is a vertex") += 1;
        }
        d
    }
}
