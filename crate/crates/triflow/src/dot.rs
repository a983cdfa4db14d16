//! Graphviz DOT output. Undirected graphs become `graph`, orientations
//! `digraph`; every edge is labelled with its id.

use std::fmt::Write;

use triflow_core::certify::{Certificate, Step};
use triflow_core::graph::Orientation;
use triflow_core::Multigraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_dot(g: &Multigraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(v.as_str()));
    }
    for (e, u, v) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(u.as_str()),
            quote(v.as_str()),
            quote(e.as_str())
        );
    }
    out.push_str("}\n");
    out
}

/// Vertices are taken from the arcs, so isolated vertices of the host
/// graph do not appear.
pub fn orientation_dot(d: &Orientation) -> String {
    let mut vs = std::collections::BTreeSet::new();
    for (_, t, h) in d.arcs() {
        vs.insert(t.clone());
        vs.insert(h.clone());
    }
    let mut out = String::from("digraph D {\n");
    for v in &vs {
        let _ = writeln!(out, "  {};", quote(v.as_str()));
    }
    for (e, t, h) in d.arcs() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(t.as_str()),
            quote(h.as_str()),
            quote(e.as_str())
        );
    }
    out.push_str("}\n");
    out
}

/// The replayed graph with one cluster for the base and one per step, in
/// step order; `None` if the certificate does not replay.
pub fn certificate_dot(c: &Certificate) -> Option<String> {
    let g = c.replay()?;
    let mut out = String::from("graph C {\n");
    let _ = writeln!(
        out,
        "  subgraph cluster_base {{\n    label=\"base {:?}\";",
        c.base
    );
    for v in &c.base_vertices {
        let _ = writeln!(out, "    {};", quote(v.as_str()));
    }
    out.push_str("  }\n");
    for (i, s) in c.steps.iter().enumerate() {
        let (label, new) = match s {
            Step::BullGrow {
                a,
                b,
                w,
                u,
                v,
                consume_ab,
            } => {
                let how = if *consume_ab { "consuming" } else { "keeping" };
                (
                    format!("step {}: bull_grow on {a},{b} at {w} ({how} ab)", i + 1),
                    vec![u, v],
                )
            }
            Step::TwoSumK3 { edge: (y, z), apex } => {
                (format!("step {}: two_sum_k3 on {y}{z}", i + 1), vec![apex])
            }
        };
        let _ = writeln!(
            out,
            "  subgraph cluster_step{} {{\n    label={};",
            i + 1,
            quote(&label)
        );
        for v in new {
            let _ = writeln!(out, "    {};", quote(v.as_str()));
        }
        out.push_str("  }\n");
    }
    for (e, u, v) in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(u.as_str()),
            quote(v.as_str()),
            quote(e.as_str())
        );
    }
    out.push_str("}\n");
    Some(out)
}
