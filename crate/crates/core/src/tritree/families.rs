use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::TriTreeSeq;
use crate::certify::{bull_grow, GrowSite};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId};

fn name(i: usize) -> String {
    format!("{i}")
}

/// The wheel `W_k`: center `0`, rim `1..=k`. `W_3` is `K_4`.
pub fn gen_wheel(k: usize) -> Result<Multigraph> {
    if k < 3 {
        return Err(Error::InvalidParameter(
            "a wheel needs a rim of length at least 3",
        ));
    }
    let mut pairs: Vec<(String, String)> = (1..=k).map(|i| (name(0), name(i))).collect();
    pairs.extend((1..=k).map(|i| (name(i), name(i % k + 1))));
    Multigraph::from_pairs(&pairs)
}

/// Fan sequence on `n` vertices: center `0` and path `1, 2, ..., n-1`.
pub fn fan_seq(n: usize) -> Result<(TriTreeSeq, Multigraph)> {
    if n < 3 {
        return Err(Error::InvalidParameter("a fan needs at least 3 vertices"));
    }
    let names: Vec<String> = (0..n).map(name).collect();
    let attach: Vec<(&str, &str, &str)> = (3..n)
        .map(|i| (names[i].as_str(), names[0].as_str(), names[i - 1].as_str()))
        .collect();
    TriTreeSeq::build([&names[0], &names[1], &names[2]], &attach)
}

/// The fan on `n` vertices, a triangle-path. `gen_fan(3)` is `K_3`.
pub fn gen_fan(n: usize) -> Result<Multigraph> {
    fan_seq(n).map(|(_, g)| g)
}

/// Book sequence `K_{1,1,n-2}`: spine `0 1`, pages `2..n`.
pub fn book_seq(n: usize) -> Result<(TriTreeSeq, Multigraph)> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "a triangular book needs at least 3 vertices",
        ));
    }
    let names: Vec<String> = (0..n).map(name).collect();
    let attach: Vec<(&str, &str, &str)> = (3..n)
        .map(|i| (names[i].as_str(), names[0].as_str(), names[1].as_str()))
        .collect();
    TriTreeSeq::build([&names[0], &names[1], &names[2]], &attach)
}

/// The triangular book `K_{1,1,n-2}` with `n - 2` pages; `n >= 4`.
pub fn gen_book(n: usize) -> Result<Multigraph> {
    if n < 4 {
        return Err(Error::InvalidParameter("gen_book needs n >= 4"));
    }
    book_seq(n).map(|(_, g)| g)
}

/// A triangle-path together with the edge joining its two leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Crystal {
    graph: Multigraph,
    path: TriTreeSeq,
    closing: EdgeId,
}

impl Crystal {
    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn path(&self) -> &TriTreeSeq {
        &self.path
    }

    /// The edge joining the two leaves.
    pub fn closing_edge(&self) -> &EdgeId {
        &self.closing
    }

    pub fn leaves(&self) -> (VertexId, VertexId) {
        let mut l = self.path.leaves().into_iter();
        let a = l.next().expect("crystal path has two leaves");
        let b = l.next().expect("crystal path has two leaves");
        (a, b)
    }

    /// `W_k` as a crystal: the fan on `k + 1` vertices closed at its ends.
    pub fn wheel(k: usize) -> Result<Crystal> {
        if k < 3 {
            return Err(Error::InvalidParameter(
                "a wheel needs a rim of length at least 3",
            ));
        }
        gen_crystal(&fan_seq(k + 1)?.0)
    }

    /// Checks that the stored path spans the graph and the closing edge
    /// joins its leaves.
    pub fn check(&self) -> Result<()> {
        let mut rest = self.graph.clone();
        let (a, b) = rest
            .remove_edge(&self.closing)
            .map_err(|_| Error::NotACrystal("closing edge missing"))?;
        if !self.path.is_spanning(&rest) || rest.edge_count() != self.path.edge_ids().len() {
            return Err(Error::NotACrystal(
                "path does not span the rest of the graph",
            ));
        }
        let leaves = self.path.leaves();
        if self.path.vertex_count() < 4
            || leaves.len() != 2
            || !leaves.contains(&a)
            || !leaves.contains(&b)
        {
            return Err(Error::NotACrystal(
                "closing edge does not join the two leaves",
            ));
        }
        Ok(())
    }
}

/// Closes a triangle-path with a new edge between its two leaves.
pub fn gen_crystal(path: &TriTreeSeq) -> Result<Crystal> {
    if path.vertex_count() < 4 {
        return Err(Error::NotACrystal(
            "a crystal needs a path on at least 4 vertices",
        ));
    }
    let graph = path
        .try_to_graph()
        .map_err(|_| Error::NotACrystal("invalid construction sequence"))?;
    let leaves: Vec<VertexId> = path.leaves().into_iter().collect();
    if leaves.len() != 2 {
        return Err(Error::NotACrystal("a triangle-path has exactly two leaves"));
    }
    let mut graph = graph;
    let closing = graph.add_fresh_edge(leaves[0].clone(), leaves[1].clone())?;
    Ok(Crystal {
        graph,
        path: path.clone(),
        closing,
    })
}

/// Applies bull-growing steps in order, starting from `seed`.
pub fn gen_bullgrown(seed: &Multigraph, steps: &[(GrowSite, VertexId)]) -> Result<Multigraph> {
    let mut g = seed.clone();
    for (site, w) in steps {
        g = bull_grow(&g, site, w)?.0;
    }
    Ok(g)
}
