use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeId, Multigraph, VertexId};

/// Every edge lies on a triangle and any two edges are linked through a
/// chain of triangles sharing edges. Parallel edges count as lying on the
/// triangles of their vertex pair.
pub fn triangularly_connected(g: &Multigraph) -> bool {
    let ids: Vec<&EdgeId> = g.edge_ids().collect();
    if ids.is_empty() || !g.is_connected() {
        return false;
    }
    let index = |e: &EdgeId| ids.binary_search(&e).expect("edge of g");
    let mut parent: Vec<usize> = (0..ids.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut covered = vec![false; ids.len()];
    let vs: Vec<&VertexId> = g.vertices().collect();
    for (i, x) in vs.iter().enumerate() {
        let nx = g.neighbors(x);
        for (j, y) in vs.iter().enumerate().skip(i + 1) {
            if !nx.contains(*y) {
                continue;
            }
            for z in vs.iter().skip(j + 1) {
                if !nx.contains(*z) || !g.is_adjacent(y, z) {
                    continue;
                }
                let mut all: Vec<usize> = Vec::new();
                for (p, q) in [(*x, *y), (*x, *z), (*y, *z)] {
                    all.extend(g.edges_between(p, q).iter().map(index));
                }
                for &k in &all {
                    covered[k] = true;
                    let (a, b) = (find(&mut parent, all[0]), find(&mut parent, k));
                    parent[b] = a;
                }
            }
        }
    }
    if covered.iter().any(|c| !c) {
        return false;
    }
    let root = find(&mut parent, 0);
    (0..ids.len()).all(|k| find(&mut parent, k) == root)
}

/// An odd wheel inside a host graph: `rim` lists the cycle in order, with
/// `rim_edges[i]` joining `rim[i]` and `rim[i + 1]` (cyclically) and
/// `spokes[i]` joining the centre to `rim[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheelWitness {
    pub center: VertexId,
    pub rim: Vec<VertexId>,
    pub spokes: Vec<EdgeId>,
    pub rim_edges: Vec<EdgeId>,
}

impl WheelWitness {
    /// Checks the wheel against `g` and that each rim edge, and each spoke
    /// of a 3-wheel, is the shared edge of a 2-sum of `g`.
    pub fn check(&self, g: &Multigraph) -> bool {
        let k = self.rim.len();
        if k < 3 || k.is_multiple_of(2) || self.spokes.len() != k || self.rim_edges.len() != k {
            return false;
        }
        let distinct: BTreeSet<&VertexId> = self.rim.iter().chain([&self.center]).collect();
        if distinct.len() != k + 1 {
            return false;
        }
        let joins = |e: &EdgeId, a: &VertexId, b: &VertexId| {
            g.endpoints(e)
                .is_ok_and(|(x, y)| (x == a && y == b) || (x == b && y == a))
        };
        (0..k).all(|i| {
            let (x, y) = (&self.rim[i], &self.rim[(i + 1) % k]);
            joins(&self.spokes[i], &self.center, x)
                && joins(&self.rim_edges[i], x, y)
                && separates(g, x, y)
                && (k > 3 || separates(g, &self.center, x))
        })
    }
}

/// `{x, y}` splits `g` into at least two pieces, so the edge `xy` can be
/// the shared edge of a 2-sum.
fn separates(g: &Multigraph, x: &VertexId, y: &VertexId) -> bool {
    let mut h = g.clone();
    if h.remove_vertex(x).is_err() || h.remove_vertex(y).is_err() || h.vertex_count() < 2 {
        return false;
    }
    !h.is_connected()
}

/// Some odd wheel of `g` whose every rim edge is a 2-sum edge of `g`, if
/// one exists. Wheels are tried by centre, then by rim in lexicographic
/// order.
///
/// A triangle-tree can contain the whole rim of `K4`, so for the 3-wheel
/// the spokes must be 2-sum edges as well: all six edges of the `K4`.
pub fn fully_2summed_odd_wheel(g: &Multigraph) -> Option<WheelWitness> {
    for c in g.vertices() {
        let nbrs: Vec<VertexId> = g.neighbors(c).into_iter().collect();
        // Only rim edges that separate can be used.
        let usable = |a: &VertexId, b: &VertexId| g.is_adjacent(a, b) && separates(g, a, b);
        for s in 0..nbrs.len() {
            let mut found = None;
            odd_cycles(&nbrs, &usable, &mut vec![s], &mut |cycle| {
                let ok = cycle.len() > 3 || cycle.iter().all(|&i| separates(g, c, &nbrs[i]));
                if ok {
                    found = Some(cycle.to_vec());
                }
                ok
            });
            let Some(cycle) = found else { continue };
            let rim: Vec<VertexId> = cycle.iter().map(|&i| nbrs[i].clone()).collect();
            let least = |a: &VertexId, b: &VertexId| {
                g.edges_between(a, b).into_iter().min().expect("adjacent")
            };
            let k = rim.len();
            let w = WheelWitness {
                center: c.clone(),
                spokes: rim.iter().map(|x| least(c, x)).collect(),
                rim_edges: (0..k).map(|i| least(&rim[i], &rim[(i + 1) % k])).collect(),
                rim,
            };
            debug_assert!(w.check(g));
            return Some(w);
        }
    }
    None
}

/// Simple odd cycles through `nbrs` whose first element is the smallest
/// index on the cycle; `emit` returns true to stop.
fn odd_cycles(
    nbrs: &[VertexId],
    usable: &dyn Fn(&VertexId, &VertexId) -> bool,
    path: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let start = path[0];
    let last = *path.last().expect("non-empty path");
    for next in start + 1..nbrs.len() {
        if path.contains(&next) || !usable(&nbrs[last], &nbrs[next]) {
            continue;
        }
        path.push(next);
        let closes = path.len() >= 3 && path.len() % 2 == 1 && usable(&nbrs[next], &nbrs[start]);
        if closes && emit(path) {
            return true;
        }
        if odd_cycles(nbrs, usable, path, emit) {
            return true;
        }
        path.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Pairing;
    use crate::tritree::{gen_book, gen_wheel};

    #[test]
    fn k4_is_triangular_without_summed_wheel() {
        let k4 = gen_wheel(3).unwrap();
        assert!(triangularly_connected(&k4));
        assert!(fully_2summed_odd_wheel(&k4).is_none());
    }

    fn with_triangles(mut g: Multigraph, on: &[(&str, &str)]) -> Multigraph {
        for (i, (a, b)) in on.iter().enumerate() {
            let t = VertexId::new(alloc::format!("t{i}"));
            g.add_vertex(t.clone()).unwrap();
            g.add_fresh_edge(VertexId::from(*a), t.clone()).unwrap();
            g.add_fresh_edge(VertexId::from(*b), t).unwrap();
        }
        g
    }

    #[test]
    fn k4_needs_all_six_edges_summed() {
        let rim = with_triangles(gen_wheel(3).unwrap(), &[("1", "2"), ("2", "3"), ("1", "3")]);
        assert!(fully_2summed_odd_wheel(&rim).is_none());
        let all = with_triangles(
            gen_wheel(3).unwrap(),
            &[
                ("1", "2"),
                ("2", "3"),
                ("1", "3"),
                ("0", "1"),
                ("0", "2"),
                ("0", "3"),
            ],
        );
        let w = fully_2summed_odd_wheel(&all).unwrap();
        assert!(w.check(&all) && w.rim.len() == 3);
    }

    #[test]
    fn c4_and_disjoint_triangles() {
        let c4 = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("2", "3"), ("0", "3")]).unwrap();
        assert!(!triangularly_connected(&c4));
        let bowtie = Multigraph::from_pairs(&[
            ("0", "1"),
            ("1", "2"),
            ("0", "2"),
            ("2", "3"),
            ("3", "4"),
            ("2", "4"),
        ])
        .unwrap();
        assert!(!triangularly_connected(&bowtie));
        assert!(triangularly_connected(&gen_book(5).unwrap()));
    }

    #[test]
    fn wheel_with_triangles_on_every_rim_edge() {
        let mut g = gen_wheel(5).unwrap();
        let k3 = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("0", "2")]).unwrap();
        for i in 1..=5 {
            let (a, b) = (alloc::format!("{i}"), alloc::format!("{}", i % 5 + 1));
            let e = g.edges_between(&a.as_str().into(), &b.as_str().into())[0].clone();
            let t = k3.with_prefix(&alloc::format!("t{i}"));
            g = Multigraph::two_sum(
                &g,
                &t,
                &e,
                &alloc::format!("t{i}e0").as_str().into(),
                Pairing::Straight,
            )
            .unwrap();
        }
        assert!(triangularly_connected(&g));
        let w = fully_2summed_odd_wheel(&g).unwrap();
        assert_eq!(w.center.as_str(), "0");
        assert_eq!(w.rim.len(), 5);
        assert!(w.check(&g));
    }
}
