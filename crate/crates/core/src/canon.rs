//! Canonical forms of small multigraphs.
//!
//! Colour refinement plus individualization: every leaf of the search
//! tree is a vertex ordering, and the canonical form is the least
//! multiplicity code over all leaves. Exact, exponential only on highly
//! symmetric inputs; intended for graphs of a dozen or so vertices.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{IndexedGraph, Multigraph};

/// Vertex count plus the upper triangle of the multiplicity matrix in
/// canonical vertex order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    code: Vec<u8>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.code.iter().map(|&x| usize::from(x)).sum()
    }

    /// 64-bit FNV-1a hash of the form.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        let mut eat = |b: u8| {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        };
        for b in (self.n as u64).to_le_bytes() {
            eat(b);
        }
        for &b in &self.code {
            eat(b);
        }
        h
    }

    /// Rebuilds a graph on vertices `0..n` with edges `e0, e1, ...`.
    pub fn to_graph(&self) -> Multigraph {
        let mut g = Multigraph::new();
        for i in 0..self.n {
            g.add_vertex(alloc::format!("{i}").into()).expect("fresh");
        }
        let mut k = 0;
        let mut idx = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                for _ in 0..self.code[idx] {
                    g.add_edge(
                        alloc::format!("e{k}").into(),
                        alloc::format!("{i}").into(),
                        alloc::format!("{j}").into(),
                    )
                    .expect("fresh");
                    k += 1;
                }
                idx += 1;
            }
        }
        g
    }
}

struct Search<'a> {
    n: usize,
    mult: &'a [Vec<u8>],
    nbrs: Vec<Vec<(usize, u8)>>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

/// Colour, sorted neighbour colours with multiplicities, vertex.
type Signature = (u32, Vec<(u32, u8)>, usize);

impl Search<'_> {
    fn refine(&self, colors: &mut [u32]) {
        let mut classes = count_classes(colors);
        loop {
            let mut sigs: Vec<Signature> = (0..self.n)
                .map(|v| {
                    let mut s: Vec<(u32, u8)> =
                        self.nbrs[v].iter().map(|&(w, m)| (colors[w], m)).collect();
                    s.sort_unstable();
                    (colors[v], s, v)
                })
                .collect();
            sigs.sort_unstable();
            let mut rank = 0u32;
            for i in 0..sigs.len() {
                if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                    rank += 1;
                }
                colors[sigs[i].2] = rank;
            }
            let now = rank as usize + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn run(&mut self, mut colors: Vec<u32>) {
        self.refine(&mut colors);
        // First non-singleton cell in colour order.
        let mut size = vec![0usize; self.n];
        for &c in &colors {
            size[c as usize] += 1;
        }
        let target = (0..self.n).find(|&c| size[c] > 1);
        match target {
            None => {
                let mut order = vec![0usize; self.n];
                for v in 0..self.n {
                    order[colors[v] as usize] = v;
                }
                let code = code_for(self.mult, &order);
                if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                    self.best = Some((code, order));
                }
            }
            Some(cell) => {
                for v in 0..self.n {
                    if colors[v] as usize != cell {
                        continue;
                    }
                    let mut next: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
                    next[v] = 2 * colors[v];
                    self.run(next);
                }
            }
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn code_for(mult: &[Vec<u8>], order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(mult[order[i]][order[j]]);
        }
    }
    code
}

/// Canonical form together with the canonical vertex order: `order[p]` is
/// the index (in id order) of the vertex placed at position `p`.
pub fn canonical_labeling(g: &Multigraph) -> (CanonicalForm, Vec<usize>) {
    let ix = IndexedGraph::new(g);
    let n = ix.n();
    let mult = ix.multiplicity();
    let nbrs = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&w| mult[v][w] > 0)
                .map(|w| (w, mult[v][w]))
                .collect()
        })
        .collect();
    let mut s = Search {
        n,
        mult: &mult,
        nbrs,
        best: None,
    };
    let degree_colors: Vec<u32> = (0..n).map(|v| ix.degree(v) as u32).collect();
    if n == 0 {
        return (
            CanonicalForm {
                n: 0,
                code: Vec::new(),
            },
            Vec::new(),
        );
    }
    s.run(degree_colors);
    let (code, order) = s.best.expect("search reaches a leaf");
    (CanonicalForm { n, code }, order)
}

pub fn canonical_form(g: &Multigraph) -> CanonicalForm {
    canonical_labeling(g).0
}

pub fn is_isomorphic(a: &Multigraph, b: &Multigraph) -> bool {
    a.vertex_count() == b.vertex_count()
        && a.edge_count() == b.edge_count()
        && canonical_form(a) == canonical_form(b)
}

pub fn fingerprint(g: &Multigraph) -> u64 {
    canonical_form(g).fingerprint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use alloc::collections::BTreeMap;

    #[test]
    fn relabeling_preserves_form() {
        let g =
            Multigraph::from_pairs(&[("a", "b"), ("b", "c"), ("c", "a"), ("c", "d"), ("c", "d")])
                .unwrap();
        let mut map = BTreeMap::new();
        for (x, y) in [("a", "z"), ("b", "c"), ("c", "q"), ("d", "a")] {
            map.insert(VertexId::from(x), VertexId::from(y));
        }
        let h = g.relabel(&map).unwrap();
        assert_eq!(canonical_form(&g), canonical_form(&h));
        assert!(is_isomorphic(&g, &h));
        assert!(is_isomorphic(&canonical_form(&g).to_graph(), &g));
    }

    #[test]
    fn distinguishes_c6_from_two_triangles() {
        let c6 = Multigraph::from_pairs(&[
            ("0", "1"),
            ("1", "2"),
            ("2", "3"),
            ("3", "4"),
            ("4", "5"),
            ("5", "0"),
        ])
        .unwrap();
        let tt = Multigraph::from_pairs(&[
            ("0", "1"),
            ("1", "2"),
            ("2", "0"),
            ("3", "4"),
            ("4", "5"),
            ("5", "3"),
        ])
        .unwrap();
        assert!(!is_isomorphic(&c6, &tt));
    }

    #[test]
    fn multiplicity_matters() {
        let a = Multigraph::from_pairs(&[("0", "1"), ("0", "1"), ("1", "2"), ("2", "0")]).unwrap();
        let b = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("1", "2"), ("2", "0")]).unwrap();
        let c = Multigraph::from_pairs(&[("0", "1"), ("0", "1"), ("0", "1"), ("2", "0")]).unwrap();
        assert!(is_isomorphic(&a, &b));
        assert!(!is_isomorphic(&a, &c));
        assert_eq!(canonical_form(&a).edge_count(), 4);
    }
}
