//! Structural deciders for graphs with a spanning triangle-tree.
//!
//! Every reduction used here keeps a spanning triangle-tree and preserves
//! the property being decided in both directions, so the first reduction
//! that applies (in canonical order) is as good as any other and no
//! backtracking is needed.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::bull::{bull_reduce, bull_variants, BullPair};
use super::cert::{replay_steps, CertBase, Certificate, Step};
use crate::canon::{fingerprint, is_isomorphic};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexId};
use crate::oracle::vertex_3_colorable;
use crate::tritree::{find_spanning_tritree, gen_wheel, Crystal, TriTreeSeq};

fn require_spanning(g: &Multigraph, t: &TriTreeSeq) -> Result<()> {
    t.check(g)?;
    if !t.is_spanning(g) {
        return Err(Error::InvalidTriTree(
            "triangle-tree does not span the graph",
        ));
    }
    Ok(())
}

fn complete(k: usize) -> Multigraph {
    match k {
        3 => Multigraph::from_pairs(&[("0", "1"), ("0", "2"), ("1", "2")]).expect("K3"),
        _ => gen_wheel(3).expect("K4"),
    }
}

/// Bull reductions whose result still has a spanning triangle-tree, one per
/// distinct `(u, v, a, b)`.
fn tree_keeping_reductions(g: &Multigraph) -> impl Iterator<Item = (BullPair, Multigraph)> + '_ {
    let mut seen = BTreeSet::new();
    bull_variants(g).into_iter().filter_map(move |p| {
        if !seen.insert((p.u.clone(), p.v.clone(), p.a.clone(), p.b.clone())) {
            return None;
        }
        let h = bull_reduce(g, &p).ok()?;
        find_spanning_tritree(&h).map(|_| (p, h))
    })
}

fn grow_step(p: &BullPair) -> Step {
    Step::BullGrow {
        a: p.a.clone(),
        b: p.b.clone(),
        w: p.w.clone(),
        u: p.u.clone(),
        v: p.v.clone(),
        consume_ab: p.a != p.b,
    }
}

/// The end point of a decider run: the graph left when no further
/// reduction applies (or a base graph is reached), and the steps that grow
/// it back into the input, in growth order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub residual: Multigraph,
    pub steps: Vec<Step>,
}

impl Trace {
    /// Rebuilds the input graph from the residual.
    pub fn replay(&self) -> Option<Multigraph> {
        replay_steps(self.residual.clone(), &self.steps)
    }
}

fn trace(g: &Multigraph, t: &TriTreeSeq, strip: bool) -> Result<Trace> {
    require_spanning(g, t)?;
    let bases: Vec<Multigraph> = if strip {
        vec![complete(3), complete(4)]
    } else {
        vec![complete(4)]
    };
    let mut cur = g.clone();
    let mut steps = Vec::new();
    loop {
        if bases.iter().any(|b| is_isomorphic(&cur, b)) {
            break;
        }
        if strip {
            if let Some((x, y, z, h)) = strippable_apex(&cur) {
                steps.push(Step::TwoSumK3 {
                    edge: (y, z),
                    apex: x,
                });
                cur = h;
                continue;
            }
        }
        let next = tree_keeping_reductions(&cur).next();
        match next {
            Some((p, h)) => {
                steps.push(grow_step(&p));
                cur = h;
            }
            None => break,
        }
    }
    steps.reverse();
    Ok(Trace {
        residual: cur,
        steps,
    })
}

/// Bull reductions down to `K4` or to a graph where none keeps a spanning
/// triangle-tree.
pub fn trace_3nzf(g: &Multigraph, t: &TriTreeSeq) -> Result<Trace> {
    trace(g, t, false)
}

/// Triangle strips and bull reductions down to `K3`, `K4` or an
/// irreducible graph.
pub fn trace_z3(g: &Multigraph, t: &TriTreeSeq) -> Result<Trace> {
    trace(g, t, true)
}

fn into_certificate(g: &Multigraph, tr: Trace, with_k3: bool) -> Option<Certificate> {
    let base = match tr.residual.vertex_count() {
        3 if with_k3 && is_isomorphic(&tr.residual, &complete(3)) => CertBase::K3,
        4 if is_isomorphic(&tr.residual, &complete(4)) => CertBase::K4,
        _ => return None,
    };
    Some(Certificate {
        base,
        base_vertices: tr.residual.vertices().cloned().collect(),
        steps: tr.steps,
        target: fingerprint(g),
    })
}

/// Does `g` have a nowhere-zero 3-flow? `t` must be a spanning
/// triangle-tree of `g`. A negative answer comes with a certificate
/// growing `g` from `K4` by bull-growings.
pub fn decide_3nzf(g: &Multigraph, t: &TriTreeSeq) -> Result<(bool, Option<Certificate>)> {
    let c = into_certificate(g, trace_3nzf(g, t)?, false);
    Ok((c.is_none(), c))
}

/// A 2-vertex `x` whose neighbours `y < z` are adjacent, so that
/// `g = K3 (+)_2 (g - x)`; `g - x` must keep a spanning triangle-tree.
fn strippable_apex(g: &Multigraph) -> Option<(VertexId, VertexId, VertexId, Multigraph)> {
    if g.vertex_count() < 4 {
        return None;
    }
    for x in g.vertices() {
        if g.degree(x) != 2 {
            continue;
        }
        let ns: Vec<VertexId> = g.neighbors(x).into_iter().collect();
        let [y, z] = ns.as_slice() else { continue };
        if !g.is_adjacent(y, z) {
            continue;
        }
        let mut h = g.clone();
        h.remove_vertex(x).ok()?;
        if find_spanning_tritree(&h).is_some() {
            return Some((x.clone(), y.clone(), z.clone(), h));
        }
    }
    None
}

/// Is `g` Z3-connected? `t` must be a spanning triangle-tree of `g`. A
/// negative answer comes with a certificate building `g` from `K3` or `K4`
/// by triangle 2-sums and bull-growings.
pub fn decide_z3(g: &Multigraph, t: &TriTreeSeq) -> Result<(bool, Option<Certificate>)> {
    let c = into_certificate(g, trace_z3(g, t)?, true);
    Ok((c.is_none(), c))
}

/// With at most three vertices of degree 3 a 3-flow is guaranteed;
/// otherwise no claim is made.
pub fn few_3vertices_shortcut(g: &Multigraph, t: &TriTreeSeq) -> Result<Option<bool>> {
    require_spanning(g, t)?;
    let threes = g.vertices().filter(|v| g.degree(v) == 3).count();
    Ok((threes <= 3).then_some(true))
}

/// A crystal has a 3-flow iff some vertex has even degree.
pub fn crystal_3nzf(c: &Crystal) -> Result<bool> {
    c.check()?;
    let g = c.graph();
    Ok(g.vertices().any(|v| g.degree(v).is_multiple_of(2)))
}

/// A crystal is Z3-connected iff it is vertex-3-colourable.
pub fn crystal_z3(c: &Crystal) -> Result<bool> {
    c.check()?;
    Ok(vertex_3_colorable(c.graph()).is_some())
}
