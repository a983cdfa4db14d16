//! Exhaustive decision procedures used as ground truth.
//!
//! Each oracle refuses graphs with more than [`Oracle::edge_limit`] edges
//! (default [`DEFAULT_EDGE_LIMIT`]) instead of running unbounded.

mod flow;
mod search;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{FlowAssignment, IndexedGraph, Multigraph, Orientation, VertexId, Z3Boundary};
use search::{encode, reachable_boundaries, strongly_connected, Mod3Search};

pub const DEFAULT_EDGE_LIMIT: usize = 26;

/// The boundary DP in [`Oracle::z3_connected`] uses `3^n` bits.
const MAX_DP_VERTICES: usize = 14;

/// A proper vertex colouring with colours `0, 1, 2`.
pub type Coloring = BTreeMap<VertexId, u8>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Orientation(Orientation),
    Flow(FlowAssignment),
    Coloring(Coloring),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
    /// For negative verdicts: the first boundary, in canonical order, that
    /// no admissible orientation realises.
    pub counterexample_boundary: Option<Z3Boundary>,
}

impl OracleReport {
    fn yes(w: Witness) -> Self {
        OracleReport {
            verdict: true,
            witness: Some(w),
            counterexample_boundary: None,
        }
    }

    fn no(beta: Z3Boundary) -> Self {
        OracleReport {
            verdict: false,
            witness: None,
            counterexample_boundary: Some(beta),
        }
    }
}

/// Oracle configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Oracle {
    pub edge_limit: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            edge_limit: DEFAULT_EDGE_LIMIT,
        }
    }
}

fn targets(ix: &IndexedGraph, beta: &Z3Boundary) -> Result<Vec<u8>> {
    if beta.len() != ix.n() {
        return Err(Error::InvalidBoundary("domain is not V(G)"));
    }
    ix.vertex_ids()
        .iter()
        .map(|v| {
            beta.get(v)
                .ok_or(Error::InvalidBoundary("domain is not V(G)"))
        })
        .collect()
}

fn orientation(ix: &IndexedGraph, dir: &[bool]) -> Orientation {
    let mut d = Orientation::new();
    for (j, &f) in dir.iter().enumerate() {
        let (a, b) = ix.ends(j);
        let (t, h) = if f { (a, b) } else { (b, a) };
        d.set(
            ix.edge_id(j).clone(),
            ix.vertex(t).clone(),
            ix.vertex(h).clone(),
        );
    }
    d
}

impl Oracle {
    pub fn new(edge_limit: usize) -> Self {
        Oracle { edge_limit }
    }

    /// No size guardrail at all.
    pub fn unbounded() -> Self {
        Oracle {
            edge_limit: usize::MAX,
        }
    }

    fn guard(&self, g: &Multigraph) -> Result<()> {
        if g.edge_count() > self.edge_limit {
            return Err(Error::TooLarge {
                edges: g.edge_count(),
                limit: self.edge_limit,
            });
        }
        Ok(())
    }

    /// An orientation with `(out - in) = beta (mod 3)` everywhere, if any.
    pub fn mod3_orient(&self, g: &Multigraph, beta: &Z3Boundary) -> Result<Option<Orientation>> {
        self.guard(g)?;
        let ix = IndexedGraph::new(g);
        let t = targets(&ix, beta)?;
        let dir = Mod3Search::new(&ix, &t, false).run(&mut |_| true);
        Ok(dir.map(|d| orientation(&ix, &d)))
    }

    /// A nowhere-zero `k`-flow, if any.
    pub fn has_nzf(&self, g: &Multigraph, k: u32) -> Result<Option<FlowAssignment>> {
        if k < 2 {
            return Err(Error::InvalidParameter("flow order k must be at least 2"));
        }
        self.guard(g)?;
        let ix = IndexedGraph::new(g);
        if k == 3 {
            let zero = alloc::vec![0u8; ix.n()];
            let Some(dir) = Mod3Search::new(&ix, &zero, false).run(&mut |_| true) else {
                return Ok(None);
            };
            if let Some(f) = flow::three_flow_from_mod3(&ix, &dir) {
                return Ok(Some(f));
            }
        }
        Ok(flow::nzf_backtrack(&ix, k))
    }

    /// Whether every Z3-boundary is realised by some orientation.
    ///
    /// Positive reports carry an orientation for the zero boundary.
    pub fn z3_connected(&self, g: &Multigraph) -> Result<OracleReport> {
        self.guard(g)?;
        if g.vertex_count() == 0 {
            return Err(Error::InvalidParameter("the empty graph has no boundaries"));
        }
        if g.vertex_count() > MAX_DP_VERTICES {
            return Err(Error::TooLarge {
                edges: g.edge_count(),
                limit: self.edge_limit,
            });
        }
        let ix = IndexedGraph::new(g);
        let reach = reachable_boundaries(&ix);
        for beta in Z3Boundary::all(g) {
            let code = encode(&targets(&ix, &beta)?);
            if reach[code / 64] & (1 << (code % 64)) == 0 {
                return Ok(OracleReport::no(beta));
            }
        }
        let zero = alloc::vec![0u8; ix.n()];
        let dir = Mod3Search::new(&ix, &zero, false)
            .run(&mut |_| true)
            .expect("zero boundary is reachable");
        Ok(OracleReport::yes(Witness::Orientation(orientation(
            &ix, &dir,
        ))))
    }

    /// Whether every Z3-boundary is realised by a strongly connected
    /// orientation. Positive reports carry one for the zero boundary.
    pub fn s3_member(&self, g: &Multigraph) -> Result<OracleReport> {
        self.guard(g)?;
        let ix = IndexedGraph::new(g);
        if !ix.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut zero_witness = None;
        for beta in Z3Boundary::all(g) {
            let t = targets(&ix, &beta)?;
            let strong = |d: &[bool]| strongly_connected(&ix, d);
            match Mod3Search::new(&ix, &t, true).run(&mut { strong }) {
                Some(d) => {
                    if beta.is_zero() {
                        zero_witness = Some(orientation(&ix, &d));
                    }
                }
                None => return Ok(OracleReport::no(beta)),
            }
        }
        Ok(OracleReport::yes(Witness::Orientation(
            zero_witness.expect("the zero boundary is enumerated"),
        )))
    }

    /// Whether some strongly connected orientation has zero mod-3 boundary,
    /// i.e. whether the flow index is below 3.
    pub fn flow_index_lt3(&self, g: &Multigraph) -> Result<OracleReport> {
        self.guard(g)?;
        let ix = IndexedGraph::new(g);
        if !ix.is_connected() {
            return Err(Error::Disconnected);
        }
        let zero = alloc::vec![0u8; ix.n()];
        let strong = |d: &[bool]| strongly_connected(&ix, d);
        match Mod3Search::new(&ix, &zero, true).run(&mut { strong }) {
            Some(d) => Ok(OracleReport::yes(Witness::Orientation(orientation(
                &ix, &d,
            )))),
            None => Ok(OracleReport::no(Z3Boundary::zero(g))),
        }
    }

    /// A proper 3-colouring, if any. Not edge-limited.
    pub fn vertex_3_colorable(&self, g: &Multigraph) -> Option<Coloring> {
        flow::three_coloring(&IndexedGraph::new(g))
    }
}

/// [`Oracle::mod3_orient`] with the default guardrail.
pub fn mod3_orient(g: &Multigraph, beta: &Z3Boundary) -> Result<Option<Orientation>> {
    Oracle::default().mod3_orient(g, beta)
}

/// [`Oracle::has_nzf`] with the default guardrail.
pub fn has_nzf(g: &Multigraph, k: u32) -> Result<Option<FlowAssignment>> {
    Oracle::default().has_nzf(g, k)
}

/// [`Oracle::z3_connected`] with the default guardrail.
pub fn z3_connected(g: &Multigraph) -> Result<OracleReport> {
    Oracle::default().z3_connected(g)
}

/// [`Oracle::s3_member`] with the default guardrail.
pub fn s3_member(g: &Multigraph) -> Result<OracleReport> {
    Oracle::default().s3_member(g)
}

/// [`Oracle::flow_index_lt3`] with the default guardrail.
pub fn flow_index_lt3(g: &Multigraph) -> Result<OracleReport> {
    Oracle::default().flow_index_lt3(g)
}

pub fn vertex_3_colorable(g: &Multigraph) -> Option<Coloring> {
    Oracle::default().vertex_3_colorable(g)
}

/// True iff `c` colours every vertex of `g` with a colour below 3 and no
/// edge is monochromatic.
pub fn is_proper_coloring(g: &Multigraph, c: &Coloring) -> bool {
    c.len() == g.vertex_count()
        && g.vertices().all(|v| c.get(v).is_some_and(|&x| x < 3))
        && g.edges().all(|(_, u, v)| c[u] != c[v])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::boundary_of;

    fn g(pairs: &[(&str, &str)]) -> Multigraph {
        Multigraph::from_pairs(pairs).unwrap()
    }

    fn k4() -> Multigraph {
        g(&[
            ("0", "1"),
            ("0", "2"),
            ("0", "3"),
            ("1", "2"),
            ("1", "3"),
            ("2", "3"),
        ])
    }

    #[test]
    fn two_k2_zero_boundary_is_a_2_cycle() {
        let h = g(&[("a", "b"), ("a", "b")]);
        let d = mod3_orient(&h, &Z3Boundary::zero(&h)).unwrap().unwrap();
        assert_ne!(d.arc(&"e0".into()), d.arc(&"e1".into()));
        assert!(z3_connected(&h).unwrap().verdict);
        assert!(!s3_member(&h).unwrap().verdict);
    }

    #[test]
    fn k3_cannot_reach_all_ones() {
        let k3 = g(&[("a", "b"), ("b", "c"), ("c", "a")]);
        let beta =
            Z3Boundary::for_graph(&k3, k3.vertices().map(|v| (v.clone(), 1)).collect()).unwrap();
        assert_eq!(mod3_orient(&k3, &beta).unwrap(), None);
        let r = z3_connected(&k3).unwrap();
        assert!(!r.verdict && r.counterexample_boundary.is_some());
    }

    #[test]
    fn k4_flows() {
        assert!(has_nzf(&k4(), 3).unwrap().is_none());
        let f = has_nzf(&k4(), 4).unwrap().unwrap();
        assert!(f.check(&k4()));
        assert!(!z3_connected(&k4()).unwrap().verdict);
        assert!(!flow_index_lt3(&k4()).unwrap().verdict);
        assert!(vertex_3_colorable(&k4()).is_none());
    }

    #[test]
    fn book_b2_has_three_flow() {
        let b2 = g(&[("x", "y"), ("x", "a"), ("y", "a"), ("x", "b"), ("y", "b")]);
        let f = has_nzf(&b2, 3).unwrap().unwrap();
        assert!(f.check(&b2));
    }

    #[test]
    fn four_k2_is_in_s3() {
        let h = g(&[("a", "b"), ("a", "b"), ("a", "b"), ("a", "b")]);
        let r = s3_member(&h).unwrap();
        assert!(r.verdict);
        let Some(Witness::Orientation(d)) = r.witness else {
            panic!("witness")
        };
        assert!(crate::graph::is_strongly_connected(&h, &d));
        assert!(boundary_of(&h, &d).unwrap().is_zero());
    }

    #[test]
    fn doubled_triangle_has_flow_index_below_three() {
        let h = g(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
        ]);
        assert!(flow_index_lt3(&h).unwrap().verdict);
    }

    #[test]
    fn guardrail_and_disconnected() {
        let pairs: Vec<(&str, &str)> = (0..27).map(|_| ("a", "b")).collect();
        assert!(matches!(
            has_nzf(&g(&pairs), 3),
            Err(Error::TooLarge {
                edges: 27,
                limit: 26
            })
        ));
        let two = g(&[("a", "b"), ("a", "b"), ("c", "d"), ("c", "d")]);
        assert_eq!(s3_member(&two), Err(Error::Disconnected));
        assert!(!z3_connected(&two).unwrap().verdict);
    }

    #[test]
    fn k1_is_trivially_everything() {
        let mut k1 = Multigraph::new();
        k1.add_vertex("x".into()).unwrap();
        assert!(z3_connected(&k1).unwrap().verdict);
        assert!(s3_member(&k1).unwrap().verdict);
    }

    #[test]
    fn colouring_of_odd_cycle() {
        let c5 = g(&[("0", "1"), ("1", "2"), ("2", "3"), ("3", "4"), ("4", "0")]);
        let c = vertex_3_colorable(&c5).unwrap();
        assert!(is_proper_coloring(&c5, &c));
    }
}
