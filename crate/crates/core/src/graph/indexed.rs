use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeId, Multigraph, VertexId};

/// Index-based snapshot of a [`Multigraph`] for the search-heavy code.
///
/// Vertex `i` is the `i`-th smallest vertex id and edge `j` the `j`-th
/// smallest edge id, so every traversal over it is deterministic.
#[derive(Clone, Debug)]
pub struct IndexedGraph {
    vertex_ids: Vec<VertexId>,
    edge_ids: Vec<EdgeId>,
    ends: Vec<(usize, usize)>,
    inc: Vec<Vec<(usize, usize)>>,
}

impl IndexedGraph {
    pub fn new(g: &Multigraph) -> Self {
        let vertex_ids: Vec<VertexId> = g.vertices().cloned().collect();
        let index = |v: &VertexId| vertex_ids.binary_search(v).expect("endpoint is a vertex");
        let mut inc = vec![Vec::new(); vertex_ids.len()];
        let mut ends = Vec::with_capacity(g.edge_count());
        let mut edge_ids = Vec::with_capacity(g.edge_count());
        for (j, (id, u, v)) in g.edges().enumerate() {
            let (a, b) = (index(u), index(v));
            ends.push((a, b));
            edge_ids.push(id.clone());
            inc[a].push((j, b));
            inc[b].push((j, a));
        }
        IndexedGraph {
            vertex_ids,
            edge_ids,
            ends,
            inc,
        }
    }

    pub fn n(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.vertex_ids[i]
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertex_ids
    }

    pub fn edge_id(&self, j: usize) -> &EdgeId {
        &self.edge_ids[j]
    }

    pub fn index_of(&self, v: &VertexId) -> Option<usize> {
        self.vertex_ids.binary_search(v).ok()
    }

    pub fn edge_index(&self, id: &EdgeId) -> Option<usize> {
        self.edge_ids.binary_search(id).ok()
    }

    pub fn ends(&self, j: usize) -> (usize, usize) {
        self.ends[j]
    }

    pub fn all_ends(&self) -> &[(usize, usize)] {
        &self.ends
    }

    /// `(edge, far endpoint)` pairs at `v`.
    pub fn inc(&self, v: usize) -> &[(usize, usize)] {
        &self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.inc[v].len()
    }

    /// Edge multiplicity matrix.
    pub fn multiplicity(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut mult = vec![vec![0u8; n]; n];
        for &(a, b) in &self.ends {
            mult[a][b] = mult[a][b].saturating_add(1);
            mult[b][a] = mult[b][a].saturating_add(1);
        }
        mult
    }

    /// Connected component label per vertex, labels in order of first vertex.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            stack.push(s);
            while let Some(x) = stack.pop() {
                for &(_, y) in &self.inc[x] {
                    if comp[y] == usize::MAX {
                        comp[y] = count;
                        stack.push(y);
                    }
                }
            }
            count += 1;
        }
        (count, comp)
    }

    /// True for graphs with exactly one component (K1 included).
    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.components().0 == 1
    }

    /// Cut edges, as edge indices. Parallel edges are never bridges.
    pub fn bridges(&self) -> Vec<usize> {
        let n = self.n();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut out = Vec::new();
        let mut timer = 0;
        // Iterative DFS: (vertex, edge used to enter, next incidence index).
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();
        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            stack.push((root, usize::MAX, 0));
            while let Some(top) = stack.last_mut() {
                let (x, via, i) = *top;
                if i < self.inc[x].len() {
                    top.2 += 1;
                    let (e, y) = self.inc[x][i];
                    if e == via {
                        continue;
                    }
                    if disc[y] == usize::MAX {
                        disc[y] = timer;
                        low[y] = timer;
                        timer += 1;
                        stack.push((y, e, 0));
                    } else {
                        low[x] = low[x].min(disc[y]);
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _, _)) = stack.last() {
                        low[p] = low[p].min(low[x]);
                        if low[x] > disc[p] {
                            out.push(via);
                        }
                    }
                }
            }
        }
        out
    }
}
