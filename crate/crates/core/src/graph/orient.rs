use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeId, IndexedGraph, Multigraph, VertexId};
use crate::error::{Error, Result};

/// A direction for every edge of some graph, as `edge -> (tail, head)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    arcs: BTreeMap<EdgeId, (VertexId, VertexId)>,
}

impl Orientation {
    pub fn new() -> Self {
        Self::default()
    }

    /// Orients every edge `u -> v` where `(u, v)` are its stored
    /// (ascending) endpoints if `forward(id)` holds, else `v -> u`.
    pub fn from_fn(g: &Multigraph, mut forward: impl FnMut(&EdgeId) -> bool) -> Self {
        let arcs = g
            .edges()
            .map(|(id, u, v)| {
                let arc = if forward(id) {
                    (u.clone(), v.clone())
                } else {
                    (v.clone(), u.clone())
                };
                (id.clone(), arc)
            })
            .collect();
        Orientation { arcs }
    }

    pub fn set(&mut self, edge: EdgeId, tail: VertexId, head: VertexId) {
        self.arcs.insert(edge, (tail, head));
    }

    pub fn arc(&self, edge: &EdgeId) -> Option<(&VertexId, &VertexId)> {
        self.arcs.get(edge).map(|(t, h)| (t, h))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (&EdgeId, &VertexId, &VertexId)> + '_ {
        self.arcs.iter().map(|(e, (t, h))| (e, t, h))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Reverses one arc. Returns false if the edge is not oriented here.
    pub fn reverse(&mut self, edge: &EdgeId) -> bool {
        match self.arcs.get_mut(edge) {
            Some((t, h)) => {
                core::mem::swap(t, h);
                true
            }
            None => false,
        }
    }

    /// Merges two orientations of edge-disjoint graphs.
    pub fn union(&self, other: &Orientation) -> Result<Orientation> {
        let mut arcs = self.arcs.clone();
        for (e, arc) in &other.arcs {
            if arcs.insert(e.clone(), arc.clone()).is_some() {
                return Err(Error::InvalidOrientation("operands share an edge"));
            }
        }
        Ok(Orientation { arcs })
    }

    /// Checks that this orients exactly the edges of `g`, consistently
    /// with their endpoints.
    pub fn validate(&self, g: &Multigraph) -> Result<()> {
        if self.arcs.len() != g.edge_count() {
            return Err(Error::InvalidOrientation("edge sets differ"));
        }
        for (id, u, v) in g.edges() {
            match self.arcs.get(id) {
                Some((t, h)) if (t == u && h == v) || (t == v && h == u) => {}
                Some(_) => {
                    return Err(Error::InvalidOrientation(
                        "arc endpoints disagree with edge",
                    ))
                }
                None => return Err(Error::InvalidOrientation("edge left unoriented")),
            }
        }
        Ok(())
    }

    /// Out-degree minus in-degree at every vertex of `g`.
    pub fn net_outflow(&self, g: &Multigraph) -> Result<BTreeMap<VertexId, i64>> {
        self.validate(g)?;
        let mut net: BTreeMap<VertexId, i64> = g.vertices().map(|v| (v.clone(), 0)).collect();
        for (t, h) in self.arcs.values() {
            *net.get_mut(t).expect("validated") += 1;
            *net.get_mut(h).expect("validated") -= 1;
        }
        Ok(net)
    }
}

/// A map `V(G) -> Z3` whose values sum to 0 mod 3.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Z3Boundary {
    values: BTreeMap<VertexId, u8>,
}

impl Z3Boundary {
    pub fn new(values: BTreeMap<VertexId, u8>) -> Result<Self> {
        if values.values().any(|&x| x > 2) {
            return Err(Error::InvalidBoundary("value outside {0,1,2}"));
        }
        let sum: u32 = values.values().map(|&x| u32::from(x)).sum();
        if !sum.is_multiple_of(3) {
            return Err(Error::InvalidBoundary("values do not sum to 0 mod 3"));
        }
        Ok(Z3Boundary { values })
    }

    /// Like [`Z3Boundary::new`], also requiring the domain to be `V(g)`.
    pub fn for_graph(g: &Multigraph, values: BTreeMap<VertexId, u8>) -> Result<Self> {
        if values.len() != g.vertex_count() || g.vertices().any(|v| !values.contains_key(v)) {
            return Err(Error::InvalidBoundary("domain is not V(G)"));
        }
        Self::new(values)
    }

    pub fn zero(g: &Multigraph) -> Self {
        Z3Boundary {
            values: g.vertices().map(|v| (v.clone(), 0)).collect(),
        }
    }

    pub fn get(&self, v: &VertexId) -> Option<u8> {
        self.values.get(v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, u8)> + '_ {
        self.values.iter().map(|(v, &x)| (v, x))
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise difference mod 3. Both boundaries need the same domain.
    pub fn minus(&self, other: &Z3Boundary) -> Result<Z3Boundary> {
        if self.values.len() != other.values.len() {
            return Err(Error::InvalidBoundary("domains differ"));
        }
        let mut values = BTreeMap::new();
        for (v, &x) in &self.values {
            let y = other
                .get(v)
                .ok_or(Error::InvalidBoundary("domains differ"))?;
            values.insert(v.clone(), (x + 3 - y) % 3);
        }
        Ok(Z3Boundary { values })
    }

    /// All `3^(n-1)` boundaries of `g` in canonical order (see [`Boundaries`]).
    pub fn all(g: &Multigraph) -> Boundaries {
        Boundaries::new(g.vertices().cloned().collect())
    }
}

/// Canonical enumeration of Z3-boundaries.
///
/// Tuples are ordered lexicographically by vertex id; the largest vertex
/// is the reference vertex whose value is forced by the zero-sum rule.
#[derive(Clone, Debug)]
pub struct Boundaries {
    vertices: Vec<VertexId>,
    digits: Vec<u8>,
    done: bool,
}

impl Boundaries {
    fn new(vertices: Vec<VertexId>) -> Self {
        let free = vertices.len().saturating_sub(1);
        Boundaries {
            vertices,
            digits: vec![0; free],
            done: false,
        }
    }

    /// Number of boundaries, `3^(n-1)` (1 for n <= 1).
    pub fn total(n: usize) -> u64 {
        3u64.pow(n.saturating_sub(1) as u32)
    }
}

impl Iterator for Boundaries {
    type Item = Z3Boundary;

    fn next(&mut self) -> Option<Z3Boundary> {
        if self.done {
            return None;
        }
        let mut values = BTreeMap::new();
        let mut sum = 0u32;
        for (v, &d) in self.vertices.iter().zip(&self.digits) {
            values.insert(v.clone(), d);
            sum += u32::from(d);
        }
        if let Some(last) = self.vertices.last() {
            values.insert(last.clone(), ((3 - sum % 3) % 3) as u8);
        }
        // Advance as a base-3 counter, most significant digit first.
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            if *d < 2 {
                *d += 1;
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(Z3Boundary { values })
    }
}

/// Per-vertex `(out - in) mod 3` of an orientation.
pub fn boundary_of(g: &Multigraph, d: &Orientation) -> Result<Z3Boundary> {
    let net = d.net_outflow(g)?;
    let values = net
        .into_iter()
        .map(|(v, x)| (v, x.rem_euclid(3) as u8))
        .collect();
    Z3Boundary::new(values)
}

/// True iff `d` orients `g` and every ordered vertex pair is joined by a
/// directed path. K1 is strongly connected.
pub fn is_strongly_connected(g: &Multigraph, d: &Orientation) -> bool {
    if d.validate(g).is_err() {
        return false;
    }
    let ix = IndexedGraph::new(g);
    let n = ix.n();
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (_, t, h) in d.arcs() {
        let (t, h) = (
            ix.index_of(t).expect("validated"),
            ix.index_of(h).expect("validated"),
        );
        fwd[t].push(h);
        bwd[h].push(t);
    }
    reaches_all(&fwd) && reaches_all(&bwd)
}

fn reaches_all(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == adj.len()
}

/// A nowhere-zero `k`-flow: an orientation plus a magnitude in
/// `1..k` per edge; signs are folded into the orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowAssignment {
    pub k: u32,
    pub orientation: Orientation,
    pub values: BTreeMap<EdgeId, u32>,
}

impl FlowAssignment {
    /// Re-checks range and conservation edge by edge.
    pub fn check(&self, g: &Multigraph) -> bool {
        if self.orientation.validate(g).is_err() || self.values.len() != g.edge_count() {
            return false;
        }
        let mut net: BTreeMap<&VertexId, i64> = g.vertices().map(|v| (v, 0)).collect();
        for (e, t, h) in self.orientation.arcs() {
            let Some(&x) = self.values.get(e) else {
                return false;
            };
            if x == 0 || x >= self.k {
                return false;
            }
            *net.get_mut(t).expect("validated") += i64::from(x);
            *net.get_mut(h).expect("validated") -= i64::from(x);
        }
        net.values().all(|&x| x == 0)
    }
}
