//! Backtracking recognition of spanning triangle-trees.
//!
//! Works on vertex indices (id order) and edge multiplicities. A state is
//! the set of vertex pairs used so far; failed states are memoized since
//! different attachment orders reach the same pair set.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::{Attachment, TriTreeSeq};
use crate::graph::{EdgeId, IndexedGraph, Multigraph, VertexId};

/// Vertex limit of the bitset representation.
const MAX_N: usize = 32;

type PairSet = [u64; 16];

fn bit(a: usize, b: usize) -> (usize, u64) {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let i = a * MAX_N + b;
    (i / 64, 1u64 << (i % 64))
}

#[derive(Clone, Debug, Default)]
struct Partial {
    inside: u32,
    pairs: Vec<(usize, usize)>,
    set: PairSet,
    base: [usize; 3],
    attach: Vec<(usize, usize, usize)>,
}

impl Partial {
    fn push_pair(&mut self, a: usize, b: usize) {
        let (w, m) = bit(a, b);
        self.set[w] |= m;
        self.pairs.push(if a < b { (a, b) } else { (b, a) });
    }

    fn pop_pair(&mut self) {
        let (a, b) = self.pairs.pop().expect("pair stack");
        let (w, m) = bit(a, b);
        self.set[w] &= !m;
    }
}

struct Recognizer<'a> {
    n: usize,
    avail: &'a [Vec<u8>],
    visited: BTreeSet<PairSet>,
}

impl Recognizer<'_> {
    fn has(&self, a: usize, b: usize) -> bool {
        self.avail[a][b] > 0
    }

    /// Visits every spanning triangle-tree reachable from `p`, each pair
    /// set once; stops as soon as `found` returns true.
    fn grow(&mut self, p: &mut Partial, found: &mut dyn FnMut(&Partial) -> bool) -> bool {
        let full = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        if !self.visited.insert(p.set) {
            return false;
        }
        if p.inside == full {
            return found(p);
        }
        // Branch over every outside vertex: fixing a single one would miss
        // trees in which its only attachment site is created later.
        for x in 0..self.n {
            if p.inside & (1 << x) != 0 {
                continue;
            }
            for i in 0..p.pairs.len() {
                let (y, z) = p.pairs[i];
                if !(self.has(x, y) && self.has(x, z)) {
                    continue;
                }
                p.inside |= 1 << x;
                p.push_pair(x, y);
                p.push_pair(x, z);
                p.attach.push((x, y, z));
                let done = self.grow(p, found);
                p.attach.pop();
                p.pop_pair();
                p.pop_pair();
                p.inside &= !(1 << x);
                if done {
                    return true;
                }
            }
        }
        false
    }

    /// `x` lies on some available triangle.
    fn in_triangle(&self, x: usize) -> bool {
        (0..self.n)
            .any(|y| self.has(x, y) && (y + 1..self.n).any(|z| self.has(x, z) && self.has(y, z)))
    }

    fn run(&mut self, found: &mut dyn FnMut(&Partial) -> bool) -> bool {
        let n = self.n;
        if !(3..=MAX_N).contains(&n) {
            return false;
        }
        if (0..n).any(|x| !self.in_triangle(x)) {
            return false;
        }
        for a in 0..n {
            for b in a + 1..n {
                if !self.has(a, b) {
                    continue;
                }
                for c in b + 1..n {
                    if !(self.has(a, c) && self.has(b, c)) {
                        continue;
                    }
                    let mut p = Partial {
                        base: [a, b, c],
                        inside: (1 << a) | (1 << b) | (1 << c),
                        ..Default::default()
                    };
                    p.push_pair(a, b);
                    p.push_pair(a, c);
                    p.push_pair(b, c);
                    if self.grow(&mut p, found) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Turns an index-level tree into a sequence, realising each pair by the
/// least edge id not in `used` (which is updated).
fn realise(ix: &IndexedGraph, p: &Partial, used: &mut BTreeSet<usize>) -> TriTreeSeq {
    let mut pick = |a: usize, b: usize| -> EdgeId {
        let j = ix
            .inc(a)
            .iter()
            .filter(|&&(e, w)| w == b && !used.contains(&e))
            .map(|&(e, _)| e)
            .min()
            .expect("pair has an unused edge");
        used.insert(j);
        ix.edge_id(j).clone()
    };
    let [x1, x2, x3] = p.base;
    let mut ids = vec![pick(x1, x2), pick(x1, x3), pick(x2, x3)];
    let mut attach = Vec::with_capacity(p.attach.len());
    for &(x, y, z) in &p.attach {
        ids.push(pick(x, y));
        ids.push(pick(x, z));
        attach.push(Attachment {
            vertex: ix.vertex(x).clone(),
            on: (ix.vertex(y).clone(), ix.vertex(z).clone()),
        });
    }
    let v = |i: usize| -> VertexId { ix.vertex(i).clone() };
    TriTreeSeq::new([v(x1), v(x2), v(x3)], attach, ids)
}

/// Some spanning triangle-tree of `g`, or `None`.
///
/// Deterministic: base triangles are tried in lexicographic index order and
/// attachments by vertex, then by pair age. Exponential in the worst case;
/// meant for graphs up to a dozen or so vertices.
pub fn find_spanning_tritree(g: &Multigraph) -> Option<TriTreeSeq> {
    let ix = IndexedGraph::new(g);
    let mult = ix.multiplicity();
    let mut r = Recognizer {
        n: ix.n(),
        avail: &mult,
        visited: BTreeSet::new(),
    };
    let mut hit = None;
    r.run(&mut |p| {
        hit = Some(p.clone());
        true
    });
    hit.map(|p| realise(&ix, &p, &mut BTreeSet::new()))
}

/// Two spanning triangle-trees with disjoint edge sets, or `None`.
pub fn find_two_disjoint_spanning_tritrees(g: &Multigraph) -> Option<(TriTreeSeq, TriTreeSeq)> {
    let ix = IndexedGraph::new(g);
    let n = ix.n();
    if !(3..=MAX_N).contains(&n) || ix.m() < 2 * (2 * n - 3) {
        return None;
    }
    let mult = ix.multiplicity();
    let mut first = Recognizer {
        n,
        avail: &mult,
        visited: BTreeSet::new(),
    };
    let mut hit = None;
    first.run(&mut |p1| {
        let mut rest = mult.clone();
        for &(a, b) in &p1.pairs {
            rest[a][b] -= 1;
            rest[b][a] -= 1;
        }
        let mut second = Recognizer {
            n,
            avail: &rest,
            visited: BTreeSet::new(),
        };
        let mut found2 = None;
        second.run(&mut |p2| {
            found2 = Some(p2.clone());
            true
        });
        match found2 {
            Some(p2) => {
                hit = Some((p1.clone(), p2));
                true
            }
            None => false,
        }
    });
    let (p1, p2) = hit?;
    let mut used = BTreeSet::new();
    let t1 = realise(&ix, &p1, &mut used);
    let t2 = realise(&ix, &p2, &mut used);
    Some((t1, t2))
}
