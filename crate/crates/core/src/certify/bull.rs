use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

/// Two adjacent 3-vertices `u`, `v` with common neighbour `w`; `a` and `b`
/// are the third neighbours of `u` and `v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BullPair {
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    pub a: VertexId,
    pub b: VertexId,
}

impl BullPair {
    /// `a` or `b` coincides with `w`, which needs a parallel edge to `w`.
    pub fn is_flagged(&self) -> bool {
        self.a == self.w || self.b == self.w
    }

    /// Checks every structural condition against `g`.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        let BullPair { u, v, w, a, b } = self;
        for x in [u, v, w, a, b] {
            if !g.has_vertex(x) {
                return Err(Error::UnknownVertex(x.clone()));
            }
        }
        if u == v || w == u || w == v || a == u || a == v || b == u || b == v {
            return Err(Error::InvalidBullPair(
                "roles must be distinct apart from a, b, w",
            ));
        }
        let multiset = |x: &VertexId| -> Vec<VertexId> {
            let mut m: Vec<VertexId> = g.incident(x).into_iter().map(|(_, y)| y).collect();
            m.sort();
            m
        };
        let expect = |xs: [&VertexId; 3]| -> Vec<VertexId> {
            let mut m: Vec<VertexId> = xs.iter().map(|&x| x.clone()).collect();
            m.sort();
            m
        };
        if multiset(u) != expect([v, w, a]) {
            return Err(Error::InvalidBullPair(
                "u must be a 3-vertex joined to v, w and a",
            ));
        }
        if multiset(v) != expect([u, w, b]) {
            return Err(Error::InvalidBullPair(
                "v must be a 3-vertex joined to u, w and b",
            ));
        }
        Ok(())
    }
}

/// Every bull structure of `g` with `u < v`: one entry per admissible
/// common neighbour `w`, in `(u, v, w)` order.
pub fn bull_variants(g: &Multigraph) -> Vec<BullPair> {
    let mut out = Vec::new();
    let threes: Vec<&VertexId> = g.vertices().filter(|x| g.degree(x) == 3).collect();
    for (i, &u) in threes.iter().enumerate() {
        for &v in &threes[i + 1..] {
            let nu: Vec<VertexId> = g.incident(u).into_iter().map(|(_, y)| y).collect();
            let nv: Vec<VertexId> = g.incident(v).into_iter().map(|(_, y)| y).collect();
            if !nu.contains(v) {
                continue;
            }
            let mut common: Vec<&VertexId> =
                nu.iter().filter(|x| *x != v && nv.contains(x)).collect();
            common.sort();
            common.dedup();
            for w in common {
                let third = |ns: &[VertexId], other: &VertexId| -> Option<VertexId> {
                    let mut rest = ns.to_vec();
                    let i = rest.iter().position(|x| x == other)?;
                    rest.remove(i);
                    let j = rest.iter().position(|x| x == w)?;
                    rest.remove(j);
                    rest.pop()
                };
                let (Some(a), Some(b)) = (third(&nu, v), third(&nv, u)) else {
                    continue;
                };
                let p = BullPair {
                    u: u.clone(),
                    v: v.clone(),
                    w: w.clone(),
                    a,
                    b,
                };
                if p.check(g).is_ok() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Canonical bull pairs: each unordered `{u, v}` once (`u < v`), with the
/// least admissible common neighbour as `w`.
pub fn bull_pairs(g: &Multigraph) -> Vec<BullPair> {
    let mut out: Vec<BullPair> = Vec::new();
    for p in bull_variants(g) {
        if out.last().is_some_and(|q| q.u == p.u && q.v == p.v) {
            continue;
        }
        out.push(p);
    }
    out
}

/// `G - u - v + ab`, plus the id of the added edge (none when `a = b`).
pub fn bull_reduce_traced(g: &Multigraph, p: &BullPair) -> Result<(Multigraph, Option<EdgeId>)> {
    p.check(g)?;
    let mut h = g.clone();
    h.remove_vertex(&p.u)?;
    h.remove_vertex(&p.v)?;
    if p.a == p.b {
        return Ok((h, None));
    }
    let id = h.add_fresh_edge(p.a.clone(), p.b.clone())?;
    Ok((h, Some(id)))
}

/// The bull-reduction `G - u - v + ab`; loops are dropped when `a = b`.
pub fn bull_reduce(g: &Multigraph, p: &BullPair) -> Result<Multigraph> {
    bull_reduce_traced(g, p).map(|(h, _)| h)
}

/// Where a bull is grown: on an existing edge (which is consumed) or on a
/// vertex pair (nothing is removed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrowSite {
    Edge(EdgeId),
    Pair(VertexId, VertexId),
}

/// Bull-growing with caller-chosen names for the two new vertices.
pub fn bull_grow_named(
    h: &Multigraph,
    site: &GrowSite,
    w: &VertexId,
    u: VertexId,
    v: VertexId,
) -> Result<(Multigraph, BullPair)> {
    if !h.has_vertex(w) {
        return Err(Error::UnknownVertex(w.clone()));
    }
    let mut g = h.clone();
    let (a, b) = match site {
        GrowSite::Edge(id) => {
            let (a, b) = g.remove_edge(id)?;
            (a, b)
        }
        GrowSite::Pair(a, b) => {
            for x in [a, b] {
                if !h.has_vertex(x) {
                    return Err(Error::UnknownVertex(x.clone()));
                }
            }
            (a.clone(), b.clone())
        }
    };
    if u == v {
        return Err(Error::InvalidBullPair("grown vertices need distinct names"));
    }
    g.add_vertex(u.clone())?;
    g.add_vertex(v.clone())?;
    for (x, y) in [(&u, &v), (&u, w), (&v, w), (&u, &a), (&v, &b)] {
        g.add_fresh_edge(x.clone(), y.clone())?;
    }
    Ok((
        g,
        BullPair {
            u,
            v,
            w: w.clone(),
            a,
            b,
        },
    ))
}

/// Bull-growing: adds fresh vertices `u`, `v` and edges `uv, uw, vw, ua,
/// vb`, deleting the edge when `site` names one.
pub fn bull_grow(h: &Multigraph, site: &GrowSite, w: &VertexId) -> Result<(Multigraph, BullPair)> {
    let u = h.fresh_vertex_id("u");
    let mut tmp = h.clone();
    tmp.add_vertex(u.clone())?;
    let v = tmp.fresh_vertex_id("v");
    bull_grow_named(h, site, w, u, v)
}
