use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::canon::{fingerprint, is_isomorphic};
use crate::graph::{Multigraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CertBase {
    K3,
    K4,
}

impl CertBase {
    pub fn order(self) -> usize {
        match self {
            CertBase::K3 => 3,
            CertBase::K4 => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Adds 3-vertices `u`, `v` on `a`, `b` with common neighbour `w`;
    /// one `ab` edge is consumed when `consume_ab` is set.
    BullGrow {
        a: VertexId,
        b: VertexId,
        w: VertexId,
        u: VertexId,
        v: VertexId,
        consume_ab: bool,
    },
    /// Glues a triangle onto the existing edge `edge` through the new
    /// vertex `apex`; the edge itself stays.
    TwoSumK3 {
        edge: (VertexId, VertexId),
        apex: VertexId,
    },
}

/// A construction of a graph from `K3` or `K4` by triangle 2-sums and
/// bull-growings. Replaying it from `base_vertices` reproduces the
/// certified graph up to isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub base: CertBase,
    pub base_vertices: Vec<VertexId>,
    pub steps: Vec<Step>,
    pub target: u64,
}

impl Certificate {
    /// True for certificates that establish the absence of a 3-flow:
    /// bull-growings from `K4` only.
    pub fn certifies_no_3nzf(&self) -> bool {
        self.base == CertBase::K4
            && self
                .steps
                .iter()
                .all(|s| matches!(s, Step::BullGrow { .. }))
    }

    /// Rebuilds the graph, or `None` if some step's premise fails.
    pub fn replay(&self) -> Option<Multigraph> {
        let k = self.base.order();
        let names: BTreeSet<&VertexId> = self.base_vertices.iter().collect();
        if self.base_vertices.len() != k || names.len() != k {
            return None;
        }
        let mut g = Multigraph::new();
        for v in &self.base_vertices {
            g.add_vertex(v.clone()).ok()?;
        }
        for (i, a) in self.base_vertices.iter().enumerate() {
            for b in &self.base_vertices[i + 1..] {
                g.add_fresh_edge(a.clone(), b.clone()).ok()?;
            }
        }
        replay_steps(g, &self.steps)
    }
}

/// Applies growth steps to `g` in order; `None` if a premise fails.
pub fn replay_steps(mut g: Multigraph, steps: &[Step]) -> Option<Multigraph> {
    for step in steps {
        grow(&mut g, step)?;
    }
    Some(g)
}

fn grow(g: &mut Multigraph, step: &Step) -> Option<()> {
    match step {
        Step::BullGrow {
            a,
            b,
            w,
            u,
            v,
            consume_ab,
        } => {
            if ![a, b, w].iter().all(|x| g.has_vertex(x))
                || g.has_vertex(u)
                || g.has_vertex(v)
                || u == v
            {
                return None;
            }
            match (consume_ab, a == b) {
                (true, false) => {
                    let e = g.edges_between(a, b).into_iter().min()?;
                    g.remove_edge(&e).ok()?;
                }
                (false, true) => {}
                // Keeping ab with a != b, or a loop at a, is not a bull-growing.
                _ => return None,
            }
            g.add_vertex(u.clone()).ok()?;
            g.add_vertex(v.clone()).ok()?;
            for (x, y) in [(u, v), (u, w), (v, w), (u, a), (v, b)] {
                g.add_fresh_edge(x.clone(), y.clone()).ok()?;
            }
            Some(())
        }
        Step::TwoSumK3 { edge: (y, z), apex } => {
            if g.has_vertex(apex) || !g.is_adjacent(y, z) {
                return None;
            }
            g.add_vertex(apex.clone()).ok()?;
            g.add_fresh_edge(apex.clone(), y.clone()).ok()?;
            g.add_fresh_edge(apex.clone(), z.clone()).ok()?;
            Some(())
        }
    }
}

/// Replays `c` and checks the result against `g` and the recorded
/// fingerprint.
pub fn verify_certificate(g: &Multigraph, c: &Certificate) -> bool {
    match c.replay() {
        Some(h) => fingerprint(g) == c.target && is_isomorphic(&h, g),
        None => false,
    }
}
