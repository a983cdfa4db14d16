//! Triangle-trees (2-trees): construction sequences, leaves, triangle-paths,
//! removable sets, spanning-tree search and the standard families.

mod enumerate;
mod families;
mod path;
mod removable;
mod search;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

pub use enumerate::{
    enumerate_double_tritrees, enumerate_spanning_tritree_graphs, enumerate_triangle_paths,
    enumerate_tritrees,
};
pub use families::{
    book_seq, fan_seq, gen_book, gen_bullgrown, gen_crystal, gen_fan, gen_wheel, Crystal,
};
pub use path::{triangle_path, Element, TrianglePath};
pub use removable::{is_removable, maximal_removable_sets, removable_max};
pub use search::{find_spanning_tritree, find_two_disjoint_spanning_tritrees};

/// One growth step: `vertex` joins both ends of the existing edge `on`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub vertex: VertexId,
    pub on: (VertexId, VertexId),
}

/// A triangle-tree construction sequence realised inside some host graph.
///
/// `edge_ids` lists the host edges in structural order: the base edges
/// `x1x2, x1x3, x2x3`, then `x y` and `x z` for every attachment `x` on
/// `yz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriTreeSeq {
    base: [VertexId; 3],
    attach: Vec<Attachment>,
    edge_ids: Vec<EdgeId>,
}

impl TriTreeSeq {
    /// Unchecked constructor; see [`TriTreeSeq::check`].
    pub fn new(base: [VertexId; 3], attach: Vec<Attachment>, edge_ids: Vec<EdgeId>) -> Self {
        TriTreeSeq {
            base,
            attach,
            edge_ids,
        }
    }

    /// Builds a sequence together with its own graph, naming edges
    /// `e0, e1, ...` in structural order.
    pub fn build(
        base: [&str; 3],
        attach: &[(&str, &str, &str)],
    ) -> Result<(TriTreeSeq, Multigraph)> {
        let seq = TriTreeSeq {
            base: base.map(VertexId::from),
            attach: attach
                .iter()
                .map(|&(x, y, z)| Attachment {
                    vertex: x.into(),
                    on: (y.into(), z.into()),
                })
                .collect(),
            edge_ids: (0..3 + 2 * attach.len())
                .map(|i| EdgeId::new(format!("e{i}")))
                .collect(),
        };
        let mut g = Multigraph::new();
        for v in seq.vertices() {
            g.add_vertex(v.clone())?;
        }
        for (id, (u, v)) in seq.edge_ids.iter().zip(seq.structural_pairs()) {
            g.add_edge(id.clone(), u, v)?;
        }
        seq.check(&g)?;
        Ok((seq, g))
    }

    pub fn base(&self) -> &[VertexId; 3] {
        &self.base
    }

    pub fn attachments(&self) -> &[Attachment] {
        &self.attach
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn edge_id_set(&self) -> BTreeSet<EdgeId> {
        self.edge_ids.iter().cloned().collect()
    }

    /// Vertices in construction order.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> + '_ {
        self.base
            .iter()
            .chain(self.attach.iter().map(|a| &a.vertex))
    }

    pub fn vertex_count(&self) -> usize {
        3 + self.attach.len()
    }

    /// Endpoint pairs in the same order as [`TriTreeSeq::edge_ids`].
    pub fn structural_pairs(&self) -> Vec<(VertexId, VertexId)> {
        let [x1, x2, x3] = &self.base;
        let mut out = Vec::with_capacity(3 + 2 * self.attach.len());
        out.push((x1.clone(), x2.clone()));
        out.push((x1.clone(), x3.clone()));
        out.push((x2.clone(), x3.clone()));
        for a in &self.attach {
            out.push((a.vertex.clone(), a.on.0.clone()));
            out.push((a.vertex.clone(), a.on.1.clone()));
        }
        out
    }

    /// The triangles of the tree in construction order.
    pub fn triangles(&self) -> Vec<[VertexId; 3]> {
        let mut out = Vec::with_capacity(1 + self.attach.len());
        out.push(self.base.clone());
        for a in &self.attach {
            out.push([a.vertex.clone(), a.on.0.clone(), a.on.1.clone()]);
        }
        out
    }

    /// Checks every construction invariant, and that each edge id exists in
    /// `g` with the right endpoints.
    pub fn check(&self, g: &Multigraph) -> Result<()> {
        if self.edge_ids.len() != 3 + 2 * self.attach.len() {
            return Err(Error::InvalidTriTree("edge id count is not 3 + 2k"));
        }
        let distinct: BTreeSet<&EdgeId> = self.edge_ids.iter().collect();
        if distinct.len() != self.edge_ids.len() {
            return Err(Error::InvalidTriTree("repeated edge id"));
        }
        let [x1, x2, x3] = &self.base;
        if x1 == x2 || x1 == x3 || x2 == x3 {
            return Err(Error::InvalidTriTree("base is not a triangle"));
        }
        let mut present: BTreeSet<&VertexId> = self.base.iter().collect();
        let key = |a: &VertexId, b: &VertexId| {
            if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            }
        };
        let mut pairs: BTreeSet<(VertexId, VertexId)> = [key(x1, x2), key(x1, x3), key(x2, x3)]
            .into_iter()
            .collect();
        for a in &self.attach {
            if present.contains(&a.vertex) {
                return Err(Error::InvalidTriTree("attached vertex already present"));
            }
            if !pairs.contains(&key(&a.on.0, &a.on.1)) {
                return Err(Error::InvalidTriTree("attachment pair is not a tree edge"));
            }
            present.insert(&a.vertex);
            pairs.insert(key(&a.vertex, &a.on.0));
            pairs.insert(key(&a.vertex, &a.on.1));
        }
        for (id, (u, v)) in self.edge_ids.iter().zip(self.structural_pairs()) {
            match g.endpoints(id) {
                Ok((a, b)) if key(a, b) == key(&u, &v) => {}
                Ok(_) => return Err(Error::InvalidTriTree("edge id has the wrong endpoints")),
                Err(_) => return Err(Error::InvalidTriTree("edge id missing from host")),
            }
        }
        Ok(())
    }

    /// True iff the sequence is a valid triangle-tree inside `g`.
    pub fn validate(&self, g: &Multigraph) -> bool {
        self.check(g).is_ok()
    }

    /// Valid and covering every vertex of `g`.
    pub fn is_spanning(&self, g: &Multigraph) -> bool {
        self.validate(g)
            && self.vertex_count() == g.vertex_count()
            && self.vertices().all(|v| g.has_vertex(v))
    }

    /// Degree of each vertex inside the tree.
    pub fn degrees(&self) -> BTreeMap<VertexId, usize> {
        let mut d: BTreeMap<VertexId, usize> = self.vertices().map(|v| (v.clone(), 0)).collect();
        for (u, v) in self.structural_pairs() {
            *d.entry(u).or_insert(0) += 1;
            *d.entry(v).or_insert(0) += 1;
        }
        d
    }

    /// The 2-vertices of the tree.
    pub fn leaves(&self) -> BTreeSet<VertexId> {
        self.degrees()
            .into_iter()
            .filter(|&(_, d)| d == 2)
            .map(|(v, _)| v)
            .collect()
    }

    /// The tree as a standalone graph with the same vertex and edge ids.
    ///
    /// Panics on a sequence with repeated vertices or edge ids; use
    /// [`TriTreeSeq::try_to_graph`] for unchecked input.
    pub fn to_graph(&self) -> Multigraph {
        self.try_to_graph().expect("valid triangle-tree sequence")
    }

    pub fn try_to_graph(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new();
        for v in self.vertices() {
            g.add_vertex(v.clone())?;
        }
        if self.edge_ids.len() != 3 + 2 * self.attach.len() {
            return Err(Error::InvalidTriTree("edge id count is not 3 + 2k"));
        }
        for (id, (u, v)) in self.edge_ids.iter().zip(self.structural_pairs()) {
            g.add_edge(id.clone(), u, v)?;
        }
        self.check(&g)?;
        Ok(g)
    }
}

/// Free-function form of [`TriTreeSeq::leaves`].
pub fn leaves(t: &TriTreeSeq) -> BTreeSet<VertexId> {
    t.leaves()
}

/// Free-function form of [`TriTreeSeq::validate`].
pub fn validate(g: &Multigraph, t: &TriTreeSeq) -> bool {
    t.validate(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_base_only_is_valid() {
        let (t, g) = TriTreeSeq::build(["1", "2", "3"], &[]).unwrap();
        assert!(t.validate(&g) && t.is_spanning(&g));
        assert_eq!(t.leaves().len(), 3);
    }

    #[test]
    fn k4_with_one_attachment() {
        let (t, g) = TriTreeSeq::build(["1", "2", "3"], &[("4", "1", "2")]).unwrap();
        let mut k4 = g.clone();
        k4.add_edge("x".into(), "3".into(), "4".into()).unwrap();
        assert!(t.is_spanning(&k4));
        assert_eq!(t.edge_ids().len(), 2 * 4 - 3);
        let leaves = t.leaves();
        let leaves: Vec<&str> = leaves.iter().map(|v| v.as_str()).collect();
        assert_eq!(leaves, ["3", "4"]);
    }

    #[test]
    fn attachment_on_non_edge_rejected() {
        // 4 attaches on 1-2, then 5 on 3-4 which is not a tree edge.
        let r = TriTreeSeq::build(["1", "2", "3"], &[("4", "1", "2"), ("5", "3", "4")]);
        assert_eq!(
            r.unwrap_err(),
            Error::InvalidTriTree("attachment pair is not a tree edge")
        );
    }

    #[test]
    fn wrong_edge_ids_rejected() {
        let (t, g) = TriTreeSeq::build(["a", "b", "c"], &[("d", "a", "b")]).unwrap();
        let mut ids = t.edge_ids().to_vec();
        ids.swap(0, 3);
        let bad = TriTreeSeq::new(t.base().clone(), t.attachments().to_vec(), ids);
        assert!(!bad.validate(&g));
        let short = TriTreeSeq::new(
            t.base().clone(),
            t.attachments().to_vec(),
            t.edge_ids()[..4].to_vec(),
        );
        assert!(!short.validate(&g));
    }

    #[test]
    fn fan_has_two_leaves() {
        let (t, _) =
            TriTreeSeq::build(["0", "1", "2"], &[("3", "0", "2"), ("4", "0", "3")]).unwrap();
        assert_eq!(t.leaves().len(), 2);
    }
}
