//! Graphs with two edge-disjoint spanning triangle-trees: spanning
//! partitions into a Z3-connected and a 2-edge-connected part, Robbins
//! orientations, and constructive strongly connected mod-3 orientations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::certify::{verify_z3proof, z3_prove, Z3Proof};
use crate::error::{Error, Result};
use crate::graph::{
    boundary_of, is_strongly_connected, EdgeId, IndexedGraph, Multigraph, Orientation, VertexId,
    Z3Boundary,
};
use crate::oracle::Oracle;
use crate::tritree::{
    find_two_disjoint_spanning_tritrees, maximal_removable_sets, removable_max, TriTreeSeq,
};

/// Most maximal removable sets tried per tree before the exhaustive search.
const MAXIMAL_SET_LIMIT: usize = 256;
/// Most candidate 2-edge-connected parts tried by the exhaustive search.
const EXHAUSTIVE_LIMIT: usize = 1 << 16;

/// `E(G) = e1 ⊔ e2` with `(V, e1)` Z3-connected (as `z3_proof` shows) and
/// `(V, e2)` 2-edge-connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningPartition {
    pub e1: BTreeSet<EdgeId>,
    pub e2: BTreeSet<EdgeId>,
    pub z3_proof: Z3Proof,
}

impl SpanningPartition {
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        if self.e1.intersection(&self.e2).next().is_some() {
            return Err(Error::InvalidPartition("parts overlap"));
        }
        let all: BTreeSet<EdgeId> = g.edge_ids().cloned().collect();
        let union: BTreeSet<EdgeId> = self.e1.union(&self.e2).cloned().collect();
        if union != all {
            return Err(Error::InvalidPartition("parts do not cover E(G)"));
        }
        let g2 = g.spanning_subgraph(self.e2.iter())?;
        if !g2.is_2edge_connected() {
            return Err(Error::InvalidPartition(
                "second part is not 2-edge-connected",
            ));
        }
        let g1 = g.spanning_subgraph(self.e1.iter())?;
        if !verify_z3proof(&g1, &self.z3_proof) {
            return Err(Error::InvalidPartition(
                "proof does not verify on the first part",
            ));
        }
        Ok(())
    }

    pub fn is_valid(&self, g: &Multigraph) -> bool {
        self.check(g).is_ok()
    }
}

fn attempt(g: &Multigraph, e2: BTreeSet<EdgeId>) -> Option<SpanningPartition> {
    let e1: BTreeSet<EdgeId> = g.edge_ids().filter(|e| !e2.contains(*e)).cloned().collect();
    if !g.spanning_subgraph(e2.iter()).ok()?.is_2edge_connected() {
        return None;
    }
    let z3_proof = z3_prove(&g.spanning_subgraph(e1.iter()).ok()?)?;
    Some(SpanningPartition { e1, e2, z3_proof })
}

/// A spanning partition built from two edge-disjoint spanning
/// triangle-trees: the 2-edge-connected part is one tree minus a removable
/// set, everything else forms the Z3-connected part. Tries a maximum
/// removable set of either tree, then all maximal ones, then a bounded
/// exhaustive search. `Ok(None)` means the search found nothing.
pub fn partition(
    g: &Multigraph,
    t1: &TriTreeSeq,
    t2: &TriTreeSeq,
) -> Result<Option<SpanningPartition>> {
    if g.vertex_count() < 4 {
        return Err(Error::InvalidParameter("need at least 4 vertices"));
    }
    for t in [t1, t2] {
        if !t.is_spanning(g) {
            return Err(Error::InvalidTriTree(
                "not a spanning triangle-tree of the graph",
            ));
        }
    }
    let (s1, s2) = (t1.edge_id_set(), t2.edge_id_set());
    if s1.intersection(&s2).next().is_some() {
        return Err(Error::InvalidPartition("triangle-trees share an edge"));
    }
    let minus = |t: &BTreeSet<EdgeId>, r: &BTreeSet<EdgeId>| -> BTreeSet<EdgeId> {
        t.difference(r).cloned().collect()
    };
    let (r1, r2) = (removable_max(t1), removable_max(t2));
    // The larger removable set first.
    let order: [(&TriTreeSeq, &BTreeSet<EdgeId>, &BTreeSet<EdgeId>); 2] = if r1.len() >= r2.len() {
        [(t1, &s1, &r1), (t2, &s2, &r2)]
    } else {
        [(t2, &s2, &r2), (t1, &s1, &r1)]
    };
    for (_, s, r) in order {
        if let Some(p) = attempt(g, minus(s, r)) {
            return Ok(Some(p));
        }
    }
    for (t, s, _) in order {
        for r in maximal_removable_sets(t, MAXIMAL_SET_LIMIT) {
            if let Some(p) = attempt(g, minus(s, &r)) {
                return Ok(Some(p));
            }
        }
    }
    Ok(exhaustive(g))
}

/// Every edge subset that could be the 2-edge-connected part, smallest
/// first, up to [`EXHAUSTIVE_LIMIT`] candidates.
fn exhaustive(g: &Multigraph) -> Option<SpanningPartition> {
    let ids: Vec<EdgeId> = g.edge_ids().cloned().collect();
    let (n, m) = (g.vertex_count(), ids.len());
    if m > 40 {
        return None;
    }
    let mut tried = 0usize;
    for size in n..=m.saturating_sub(n) {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            tried += 1;
            if tried > EXHAUSTIVE_LIMIT {
                return None;
            }
            let e2: BTreeSet<EdgeId> = pick.iter().map(|&i| ids[i].clone()).collect();
            if let Some(p) = attempt(g, e2) {
                return Some(p);
            }
            // Next combination in lexicographic order.
            let mut i = size;
            while i > 0 && pick[i - 1] == m - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            for j in i..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    None
}

/// A strongly connected orientation of a 2-edge-connected graph. A DFS from
/// the least vertex orients tree edges away from the root and every other
/// edge back towards the root; the chains of this DFS are an ear
/// decomposition, each ear directed consistently.
pub fn robbins_orient(g: &Multigraph) -> Result<Orientation> {
    if g.vertex_count() < 2 {
        return Err(Error::InvalidParameter("need at least 2 vertices"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(e) = g.cut_edges().into_iter().next() {
        return Err(Error::CutEdge(e));
    }
    let ix = IndexedGraph::new(g);
    let n = ix.n();
    let mut depth = vec![usize::MAX; n];
    let mut used = vec![false; ix.m()];
    let mut d = Orientation::new();
    let orient = |j: usize, t: usize, h: usize, d: &mut Orientation| {
        d.set(
            ix.edge_id(j).clone(),
            ix.vertex(t).clone(),
            ix.vertex(h).clone(),
        );
    };
    // Iterative DFS; neighbours in edge order.
    depth[0] = 0;
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    while let Some(top) = stack.last_mut() {
        let (v, k) = *top;
        let inc = ix.inc(v);
        if k == inc.len() {
            stack.pop();
            continue;
        }
        top.1 += 1;
        let (j, w) = inc[k];
        if used[j] {
            continue;
        }
        used[j] = true;
        // Tree edges point away from the root, back edges towards it.
        orient(j, v, w, &mut d);
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            stack.push((w, 0));
        }
    }
    // In an undirected DFS every non-tree edge joins a vertex to one of its
    // ancestors, and it is first seen from the deeper end.
    debug_assert!(is_strongly_connected(g, &d));
    Ok(d)
}

/// A strongly connected orientation of `g` with boundary `beta`: a Robbins
/// orientation of `(V, e2)` plus a mod-3 orientation of `(V, e1)` for the
/// remaining boundary.
pub fn strong_mod3_orient(
    g: &Multigraph,
    beta: &Z3Boundary,
    part: &SpanningPartition,
) -> Result<Orientation> {
    strong_mod3_orient_with(g, beta, part, &Oracle::default())
}

pub fn strong_mod3_orient_with(
    g: &Multigraph,
    beta: &Z3Boundary,
    part: &SpanningPartition,
    oracle: &Oracle,
) -> Result<Orientation> {
    part.check(g)?;
    let g2 = g.spanning_subgraph(part.e2.iter())?;
    let d2 = robbins_orient(&g2)?;
    let beta2 = boundary_of(&g2, &d2)?;
    let g1 = g.spanning_subgraph(part.e1.iter())?;
    let rest = beta.minus(&beta2)?;
    let d1 = oracle
        .mod3_orient(&g1, &rest)?
        .ok_or(Error::InvalidPartition(
            "first part misses a boundary despite its proof",
        ))?;
    d1.union(&d2)
}

/// Deleting `vertex`, a common leaf of both spanning triangle-trees, and
/// joining its first-tree neighbours by `new_edge`. The edges `via` (to
/// those neighbours, in order) become the path that replaces `new_edge`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafSplit {
    pub vertex: VertexId,
    pub via: [EdgeId; 2],
    pub new_edge: EdgeId,
}

impl LeafSplit {
    pub fn apply(&self, g: &Multigraph) -> Result<Multigraph> {
        if g.degree(&self.vertex) < 4 {
            return Err(Error::InvalidParameter(
                "split vertex needs degree at least 4",
            ));
        }
        let y = g.other_end(&self.via[0], &self.vertex)?.clone();
        let z = g.other_end(&self.via[1], &self.vertex)?.clone();
        if y == z {
            return Err(Error::DegenerateLift);
        }
        let mut h = g.clone();
        h.remove_vertex(&self.vertex)?;
        h.add_edge(self.new_edge.clone(), y, z)?;
        Ok(h)
    }
}

/// Leaf splits down to a graph with a spanning partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Certificate {
    pub splits: Vec<LeafSplit>,
    pub partition: SpanningPartition,
}

impl S3Certificate {
    /// The graph the partition applies to.
    pub fn reduced(&self, g: &Multigraph) -> Result<Multigraph> {
        let mut h = g.clone();
        for s in &self.splits {
            h = s.apply(&h)?;
        }
        Ok(h)
    }

    /// A strongly connected orientation of `g` realising `beta`.
    pub fn orient(
        &self,
        g: &Multigraph,
        beta: &Z3Boundary,
        oracle: &Oracle,
    ) -> Result<Orientation> {
        orient_from(g, &self.splits, &self.partition, beta, oracle)
    }
}

fn orient_from(
    g: &Multigraph,
    splits: &[LeafSplit],
    part: &SpanningPartition,
    beta: &Z3Boundary,
    oracle: &Oracle,
) -> Result<Orientation> {
    let Some((s, more)) = splits.split_first() else {
        return strong_mod3_orient_with(g, beta, part, oracle);
    };
    let h = s.apply(g)?;
    let x = &s.vertex;
    let bx = beta
        .get(x)
        .ok_or(Error::InvalidBoundary("domain is not V(G)"))?;
    // The other edges at x: the first `out` of them leave x, chosen so
    // that out - in hits beta(x); the path through `via` adds nothing.
    let mut rest: Vec<(EdgeId, VertexId)> = g
        .incident(x)
        .into_iter()
        .filter(|(e, _)| !s.via.contains(e))
        .collect();
    rest.sort();
    let r = rest.len() as i64;
    let out = (0..=r)
        .find(|&o| (2 * o - r).rem_euclid(3) == i64::from(bx))
        .ok_or(Error::InvalidParameter(
            "split vertex needs two edges outside the path",
        ))?;
    let mut shift: BTreeMap<VertexId, i64> = BTreeMap::new();
    let mut arcs: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
    for (i, (e, t)) in rest.iter().enumerate() {
        if (i as i64) < out {
            arcs.push((e.clone(), x.clone(), t.clone()));
            *shift.entry(t.clone()).or_insert(0) -= 1;
        } else {
            arcs.push((e.clone(), t.clone(), x.clone()));
            *shift.entry(t.clone()).or_insert(0) += 1;
        }
    }
    let values = h
        .vertices()
        .map(|v| {
            let b = i64::from(beta.get(v).unwrap_or(0));
            (
                v.clone(),
                (b - shift.get(v).copied().unwrap_or(0)).rem_euclid(3) as u8,
            )
        })
        .collect();
    let inner = Z3Boundary::for_graph(&h, values)?;
    let dh = orient_from(&h, more, part, &inner, oracle)?;
    let mut d = Orientation::new();
    for (e, t, hd) in dh.arcs() {
        if *e != s.new_edge {
            d.set(e.clone(), t.clone(), hd.clone());
        }
    }
    let (p, q) = dh
        .arc(&s.new_edge)
        .ok_or(Error::InvalidOrientation("missing arc"))?;
    for via in &s.via {
        let far = g.other_end(via, x)?;
        if far == p {
            d.set(via.clone(), p.clone(), x.clone());
        } else {
            d.set(via.clone(), x.clone(), q.clone());
        }
    }
    for (e, t, hd) in arcs {
        d.set(e, t, hd);
    }
    Ok(d)
}

/// Searches for an S3 certificate of `g` given two edge-disjoint spanning
/// triangle-trees: a direct partition, or else a split at a common leaf.
pub fn s3_certificate(
    g: &Multigraph,
    t1: &TriTreeSeq,
    t2: &TriTreeSeq,
) -> Result<Option<S3Certificate>> {
    if let Some(partition) = partition(g, t1, t2)? {
        return Ok(Some(S3Certificate {
            splits: Vec::new(),
            partition,
        }));
    }
    let (l1, l2) = (t1.leaves(), t2.leaves());
    if g.vertex_count() <= 4 {
        return Ok(None);
    }
    let s1 = t1.edge_id_set();
    for x in l1.intersection(&l2) {
        let mut via: Vec<EdgeId> = g
            .incident(x)
            .into_iter()
            .map(|(e, _)| e)
            .filter(|e| s1.contains(e))
            .collect();
        via.sort();
        let [a, b] = via.as_slice() else { continue };
        let split = LeafSplit {
            vertex: x.clone(),
            via: [a.clone(), b.clone()],
            new_edge: g.fresh_edge_id(),
        };
        let h = split.apply(g)?;
        let Some((u1, u2)) = find_two_disjoint_spanning_tritrees(&h) else {
            continue;
        };
        if let Some(mut c) = s3_certificate(&h, &u1, &u2)? {
            c.splits.insert(0, split);
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Outcome of [`certify_s3`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S3Report {
    pub certificate: S3Certificate,
    pub boundaries_checked: u64,
    pub all_ok: bool,
}

/// Finds two edge-disjoint spanning triangle-trees, builds a certificate and
/// checks the orientation it yields for every boundary: realised boundary
/// and strong connectivity. `None` when `|V| < 4` or no such pair of trees
/// (or certificate) is found.
pub fn certify_s3(g: &Multigraph) -> Option<S3Report> {
    certify_s3_with(g, &Oracle::default())
}

pub fn certify_s3_with(g: &Multigraph, oracle: &Oracle) -> Option<S3Report> {
    if g.vertex_count() < 4 {
        return None;
    }
    let (t1, t2) = find_two_disjoint_spanning_tritrees(g)?;
    let certificate = s3_certificate(g, &t1, &t2).ok()??;
    let mut checked = 0;
    let mut all_ok = true;
    for beta in Z3Boundary::all(g) {
        checked += 1;
        let ok = match certificate.orient(g, &beta, oracle) {
            Ok(d) => boundary_of(g, &d).is_ok_and(|b| b == beta) && is_strongly_connected(g, &d),
            Err(_) => false,
        };
        all_ok &= ok;
    }
    Some(S3Report {
        certificate,
        boundaries_checked: checked,
        all_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tritree::gen_wheel;

    fn doubled(pairs: &[(&str, &str)]) -> Multigraph {
        let twice: Vec<(&str, &str)> = pairs.iter().chain(pairs.iter()).copied().collect();
        Multigraph::from_pairs(&twice).unwrap()
    }

    #[test]
    fn robbins_on_small_graphs() {
        let k3 = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("0", "2")]).unwrap();
        let d = robbins_orient(&k3).unwrap();
        assert!(is_strongly_connected(&k3, &d));
        let two = doubled(&[("a", "b")]);
        assert!(is_strongly_connected(&two, &robbins_orient(&two).unwrap()));
        let theta = Multigraph::from_pairs(&[
            ("s", "t"),
            ("s", "a"),
            ("a", "t"),
            ("s", "b"),
            ("b", "c"),
            ("c", "t"),
        ])
        .unwrap();
        assert!(is_strongly_connected(
            &theta,
            &robbins_orient(&theta).unwrap()
        ));
        let path = Multigraph::from_pairs(&[("0", "1"), ("1", "2")]).unwrap();
        assert!(matches!(robbins_orient(&path), Err(Error::CutEdge(_))));
    }

    #[test]
    fn doubled_k4_minus_edge_is_certified() {
        let g = doubled(&[("0", "1"), ("0", "2"), ("1", "2"), ("1", "3"), ("2", "3")]);
        let r = certify_s3(&g).unwrap();
        assert_eq!(r.boundaries_checked, 27);
        assert!(r.all_ok);
    }

    #[test]
    fn k4_has_no_two_trees() {
        assert!(certify_s3(&gen_wheel(3).unwrap()).is_none());
    }

    #[test]
    fn overlapping_trees_rejected() {
        let g = doubled(&[("0", "1"), ("0", "2"), ("1", "2"), ("1", "3"), ("2", "3")]);
        let (t1, _) = find_two_disjoint_spanning_tritrees(&g).unwrap();
        assert!(partition(&g, &t1, &t1).is_err());
    }
}
