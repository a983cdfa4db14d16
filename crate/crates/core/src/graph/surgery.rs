//! Contraction, lifting and 2-sums.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{ordered, EdgeId, Multigraph, VertexId};
use crate::error::{Error, Result};

/// How the endpoints of the second operand's edge meet the first's in a
/// 2-sum. With `Straight`, the smaller endpoint of `eb` is identified with
/// the smaller endpoint of `ea`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pairing {
    Straight,
    Crossed,
}

impl Multigraph {
    /// `G/e`: merges the ends of `e` into the smaller id and drops every
    /// edge that became a loop.
    pub fn contract_edge(&self, e: &EdgeId) -> Result<Multigraph> {
        let (u, v) = self.endpoints(e)?;
        let (keep, gone) = (u.clone(), v.clone());
        let mut map = BTreeMap::new();
        map.insert(gone, keep);
        Ok(self.merge_vertices(&map))
    }

    /// `G/H` for the subgraph `H` spanned by `h`: each component of `H`
    /// collapses to its smallest vertex id, loops are deleted.
    pub fn contract_subgraph(&self, h: &BTreeSet<EdgeId>) -> Result<Multigraph> {
        if h.is_empty() {
            return Err(Error::EmptyEdgeSet);
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        fn find(parent: &mut BTreeMap<VertexId, VertexId>, v: &VertexId) -> VertexId {
            let mut root = v.clone();
            while let Some(p) = parent.get(&root) {
                if *p == root {
                    break;
                }
                root = p.clone();
            }
            parent.insert(v.clone(), root.clone());
            root
        }
        for id in h {
            let (u, v) = self.endpoints(id)?;
            parent.entry(u.clone()).or_insert_with(|| u.clone());
            parent.entry(v.clone()).or_insert_with(|| v.clone());
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                // Smaller id becomes the representative.
                let (lo, hi) = ordered(ru, rv);
                parent.insert(hi, lo);
            }
        }
        let keys: Vec<VertexId> = parent.keys().cloned().collect();
        let mut map = BTreeMap::new();
        for v in keys {
            let r = find(&mut parent, &v);
            if r != v {
                map.insert(v, r);
            }
        }
        Ok(self.merge_vertices(&map))
    }

    /// Renames vertices through `map` (many-to-one), deleting the loops this
    /// creates.
    fn merge_vertices(&self, map: &BTreeMap<VertexId, VertexId>) -> Multigraph {
        let f = |v: &VertexId| map.get(v).cloned().unwrap_or_else(|| v.clone());
        let vertices = self.vertices.iter().map(f).collect();
        let edges = self
            .edges
            .iter()
            .filter_map(|(id, (u, v))| {
                let (a, b) = (f(u), f(v));
                (a != b).then(|| (id.clone(), ordered(a, b)))
            })
            .collect();
        Multigraph { vertices, edges }
    }

    /// `G_[v,ab]`: removes the edges `ea = va` and `eb = vb` and joins
    /// `a` and `b` by a new edge with a fresh id, which is returned.
    pub fn lift_pair(
        &self,
        v: &VertexId,
        ea: &EdgeId,
        eb: &EdgeId,
    ) -> Result<(Multigraph, EdgeId)> {
        let id = self.fresh_edge_id();
        Ok((self.lift_pair_as(v, ea, eb, id.clone())?, id))
    }

    /// [`Multigraph::lift_pair`] with a caller-chosen id for the new edge.
    pub fn lift_pair_as(
        &self,
        v: &VertexId,
        ea: &EdgeId,
        eb: &EdgeId,
        new_id: EdgeId,
    ) -> Result<Multigraph> {
        if ea == eb {
            return Err(Error::DegenerateLift);
        }
        let a = self.other_end(ea, v)?.clone();
        let b = self.other_end(eb, v)?.clone();
        if a == b {
            return Err(Error::DegenerateLift);
        }
        let mut g = self.clone();
        g.remove_edge(ea)?;
        g.remove_edge(eb)?;
        g.add_edge(new_id, a, b)?;
        Ok(g)
    }

    /// Lifting by vertex names; picks the least-id edge for `va` and `vb`.
    pub fn lift_pair_at(
        &self,
        v: &VertexId,
        a: &VertexId,
        b: &VertexId,
    ) -> Result<(Multigraph, EdgeId)> {
        if a == b {
            return Err(Error::DegenerateLift);
        }
        let pick = |x: &VertexId| {
            self.edges_between(v, x)
                .into_iter()
                .next()
                .ok_or_else(|| Error::NotIncident {
                    vertex: v.clone(),
                    edge: EdgeId::new(alloc::format!("{v}-{x}")),
                })
        };
        let (ea, eb) = (pick(a)?, pick(b)?);
        self.lift_pair(v, &ea, &eb)
    }

    /// Walks `path` and returns its distinct end vertices, or an error if
    /// the edges do not form a simple path.
    pub fn path_ends(&self, path: &[EdgeId]) -> Result<(VertexId, VertexId)> {
        let first = path.first().ok_or(Error::NotAPath)?;
        let (u0, v0) = self.endpoints(first)?;
        // Try both directions for the first edge.
        'start: for (start, mut cur) in [(u0.clone(), v0.clone()), (v0.clone(), u0.clone())] {
            let mut seen = BTreeSet::new();
            seen.insert(start.clone());
            seen.insert(cur.clone());
            let mut used = BTreeSet::new();
            used.insert(first.clone());
            for e in &path[1..] {
                if !used.insert(e.clone()) {
                    return Err(Error::NotAPath);
                }
                let next = match self.other_end(e, &cur) {
                    Ok(x) => x.clone(),
                    Err(Error::NotIncident { .. }) => continue 'start,
                    Err(err) => return Err(err),
                };
                if !seen.insert(next.clone()) {
                    continue 'start;
                }
                cur = next;
            }
            return Ok((start, cur));
        }
        Err(Error::NotAPath)
    }

    /// Replaces the edges of a `u`-`v` path by a single new edge `uv`.
    pub fn lift_path(&self, path: &[EdgeId]) -> Result<(Multigraph, EdgeId)> {
        let id = self.fresh_edge_id();
        Ok((self.lift_path_as(path, id.clone())?, id))
    }

    pub fn lift_path_as(&self, path: &[EdgeId], new_id: EdgeId) -> Result<Multigraph> {
        let (u, v) = self.path_ends(path)?;
        let mut g = self.clone();
        for e in path {
            g.remove_edge(e)?;
        }
        g.add_edge(new_id, u, v)?;
        Ok(g)
    }

    /// `A (+)_2 B` along `ea` and `eb`: the ends of `eb` are identified
    /// with those of `ea` as `pairing` says and the two edges become one
    /// (keeping the id `ea`). Ids of the operands must be disjoint.
    pub fn two_sum(
        a: &Multigraph,
        b: &Multigraph,
        ea: &EdgeId,
        eb: &EdgeId,
        pairing: Pairing,
    ) -> Result<Multigraph> {
        let (a0, a1) = a.endpoints(ea)?;
        let (b0, b1) = b.endpoints(eb)?;
        let mut map = BTreeMap::new();
        match pairing {
            Pairing::Straight => {
                map.insert(b0.clone(), a0.clone());
                map.insert(b1.clone(), a1.clone());
            }
            Pairing::Crossed => {
                map.insert(b0.clone(), a1.clone());
                map.insert(b1.clone(), a0.clone());
            }
        }
        for v in &b.vertices {
            if a.vertices.contains(v) {
                return Err(Error::IdCollision(v.as_str().into()));
            }
        }
        let mut g = a.clone();
        for v in &b.vertices {
            if !map.contains_key(v) {
                g.vertices.insert(v.clone());
            }
        }
        let f = |v: &VertexId| map.get(v).cloned().unwrap_or_else(|| v.clone());
        for (id, (u, v)) in &b.edges {
            if id == eb {
                continue;
            }
            if g.edges.contains_key(id) {
                return Err(Error::IdCollision(id.as_str().into()));
            }
            g.edges.insert(id.clone(), ordered(f(u), f(v)));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::is_isomorphic;

    fn k(n: usize) -> Multigraph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((alloc::format!("{i}"), alloc::format!("{j}")));
            }
        }
        Multigraph::from_pairs(&pairs).unwrap()
    }

    fn set(ids: &[&str]) -> BTreeSet<EdgeId> {
        ids.iter().map(|s| EdgeId::from(*s)).collect()
    }

    #[test]
    fn contract_k3_gives_2k2_then_k1() {
        let g = k(3).contract_edge(&"e0".into()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        let g = g.contract_edge(&"e1".into()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
    }

    #[test]
    fn contract_k4_edge() {
        let g = k(4).contract_edge(&"e0".into()).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 5));
        assert!(!g.is_simple());
        assert!(g.has_vertex(&"0".into()) && !g.has_vertex(&"1".into()));
    }

    #[test]
    fn contract_triangle_of_k4() {
        // e0 = 01, e1 = 02, e3 = 12.
        let g = k(4).contract_subgraph(&set(&["e0", "e1", "e3"])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 3));
    }

    #[test]
    fn contract_triangle_of_book() {
        let b2 =
            Multigraph::from_pairs(&[("x", "y"), ("x", "a"), ("y", "a"), ("x", "b"), ("y", "b")])
                .unwrap();
        let g = b2.contract_subgraph(&set(&["e0", "e1", "e2"])).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 2));
        assert_eq!(g.edges_between(&"a".into(), &"b".into()).len(), 2);
    }

    #[test]
    fn contract_spanning_connected_gives_k1() {
        let g = k(5);
        let all: BTreeSet<EdgeId> = g.edge_ids().cloned().collect();
        let c = g.contract_subgraph(&all).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (1, 0));
        assert_eq!(
            g.contract_subgraph(&BTreeSet::new()),
            Err(Error::EmptyEdgeSet)
        );
        assert!(g.contract_edge(&"nope".into()).is_err());
    }

    #[test]
    fn lift_path_of_two() {
        let g = Multigraph::from_pairs(&[("a", "v"), ("v", "b")]).unwrap();
        let (h, id) = g
            .lift_pair(&"v".into(), &"e0".into(), &"e1".into())
            .unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.degree(&"v".into()), 0);
        assert_eq!(h.endpoints(&id).unwrap(), (&"a".into(), &"b".into()));
    }

    #[test]
    fn lift_in_k4() {
        // v = 0, a = 1, b = 2, c = 3.
        let (h, _) = k(4)
            .lift_pair_at(&"0".into(), &"1".into(), &"2".into())
            .unwrap();
        assert_eq!(h.edges_between(&"1".into(), &"2".into()).len(), 2);
        assert_eq!(h.degree(&"0".into()), 1);
        assert!(h.is_adjacent(&"0".into(), &"3".into()));
        assert_eq!(h.edge_count(), 5);
    }

    #[test]
    fn lift_opposite_spokes_of_w4() {
        // Center c, rim 1-2-3-4.
        let w4 = Multigraph::from_pairs(&[
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "1"),
            ("c", "1"),
            ("c", "2"),
            ("c", "3"),
            ("c", "4"),
        ])
        .unwrap();
        let (h, id) = w4
            .lift_pair_at(&"c".into(), &"1".into(), &"3".into())
            .unwrap();
        assert_eq!(h.degree(&"c".into()), 2);
        assert_eq!(h.endpoints(&id).unwrap(), (&"1".into(), &"3".into()));
        assert_eq!(h.edge_count(), 7);
    }

    #[test]
    fn lift_rejects_same_far_end() {
        let g = Multigraph::from_pairs(&[("a", "v"), ("v", "a")]).unwrap();
        assert_eq!(
            g.lift_pair(&"v".into(), &"e0".into(), &"e1".into())
                .unwrap_err(),
            Error::DegenerateLift
        );
        assert!(matches!(
            k(4).lift_pair(&"3".into(), &"e0".into(), &"e2".into()),
            Err(Error::NotIncident { .. })
        ));
    }

    #[test]
    fn path_lifts() {
        let c4 = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")]).unwrap();
        let single = c4.lift_path(&["e0".into()]).unwrap().0;
        assert!(is_isomorphic(&single, &c4));
        let (h, _) = c4
            .lift_path(&["e0".into(), "e1".into(), "e2".into()])
            .unwrap();
        assert_eq!(h.edges_between(&"0".into(), &"3".into()).len(), 2);
        assert_eq!(h.edge_count(), 2);
        let c5 =
            Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")])
                .unwrap();
        let (h, _) = c5.lift_path(&["e1".into(), "e2".into()]).unwrap();
        let non_isolated: Vec<&VertexId> = h.vertices().filter(|v| h.degree(v) > 0).collect();
        assert_eq!(non_isolated.len(), 4);
        assert!(h.edge_subgraph(h.edge_ids()).unwrap().is_2edge_connected());
        // Whole cycle: ends coincide.
        assert_eq!(
            c4.lift_path(&["e0".into(), "e1".into(), "e2".into(), "e3".into()])
                .unwrap_err(),
            Error::NotAPath
        );
        assert_eq!(
            c4.lift_path(&["e0".into(), "e2".into()]).unwrap_err(),
            Error::NotAPath
        );
    }

    #[test]
    fn two_sums_count_edges() {
        let k3 = k(3);
        let b2 = Multigraph::two_sum(
            &k3,
            &k3.with_prefix("b"),
            &"e0".into(),
            &"be0".into(),
            Pairing::Straight,
        )
        .unwrap();
        assert_eq!((b2.vertex_count(), b2.edge_count()), (4, 5));
        let g = Multigraph::two_sum(
            &k(4),
            &k3.with_prefix("b"),
            &"e0".into(),
            &"be2".into(),
            Pairing::Crossed,
        )
        .unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 8));
        let two_k2 = Multigraph::from_pairs(&[("x", "y"), ("x", "y")]).unwrap();
        let d = Multigraph::two_sum(&k3, &two_k2, &"e0".into(), &"e0".into(), Pairing::Straight);
        assert!(matches!(d, Err(Error::IdCollision(_))));
        let d = Multigraph::two_sum(
            &k3,
            &two_k2.with_prefix("p"),
            &"e0".into(),
            &"pe0".into(),
            Pairing::Straight,
        )
        .unwrap();
        assert_eq!(d.edges_between(&"0".into(), &"1".into()).len(), 2);
        assert_eq!(d.vertex_count(), 3);
    }
}
