use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::TriTreeSeq;
use crate::graph::{EdgeId, VertexId};

/// Edge-masked view of a triangle-tree for fast 2-edge-connectivity tests.
struct Masked {
    n: usize,
    ends: Vec<(usize, usize)>,
    ids: Vec<EdgeId>,
}

impl Masked {
    fn new(t: &TriTreeSeq) -> Self {
        let verts: Vec<VertexId> = {
            let mut v: Vec<VertexId> = t.vertices().cloned().collect();
            v.sort();
            v
        };
        let index = |x: &VertexId| verts.binary_search(x).expect("tree vertex");
        let mut edges: Vec<(EdgeId, (usize, usize))> = t
            .edge_ids()
            .iter()
            .cloned()
            .zip(
                t.structural_pairs()
                    .iter()
                    .map(|(a, b)| (index(a), index(b))),
            )
            .collect();
        edges.sort();
        Masked {
            n: verts.len(),
            ids: edges.iter().map(|e| e.0.clone()).collect(),
            ends: edges.into_iter().map(|e| e.1).collect(),
        }
    }

    /// Connected and bridgeless using only edges outside `removed`.
    fn two_edge_connected(&self, removed: u64) -> bool {
        let mut inc = vec![Vec::new(); self.n];
        for (j, &(a, b)) in self.ends.iter().enumerate() {
            if removed & (1 << j) == 0 {
                inc[a].push((j, b));
                inc[b].push((j, a));
            }
        }
        let mut disc = vec![usize::MAX; self.n];
        let mut low = vec![0usize; self.n];
        let mut timer = 0;
        if self.bridge_dfs(&inc, 0, usize::MAX, &mut disc, &mut low, &mut timer) {
            return false;
        }
        disc.iter().all(|&d| d != usize::MAX)
    }

    /// DFS from `x`; true as soon as a bridge is seen.
    fn bridge_dfs(
        &self,
        inc: &[Vec<(usize, usize)>],
        x: usize,
        via: usize,
        disc: &mut [usize],
        low: &mut [usize],
        timer: &mut usize,
    ) -> bool {
        disc[x] = *timer;
        low[x] = *timer;
        *timer += 1;
        for &(e, y) in &inc[x] {
            if e == via {
                continue;
            }
            if disc[y] == usize::MAX {
                if self.bridge_dfs(inc, y, e, disc, low, timer) {
                    return true;
                }
                low[x] = low[x].min(low[y]);
                if low[y] > disc[x] {
                    return true;
                }
            } else {
                low[x] = low[x].min(disc[y]);
            }
        }
        false
    }
}

/// True iff `x` is a set of tree edges whose removal leaves `t`
/// 2-edge-connected.
pub fn is_removable(t: &TriTreeSeq, x: &BTreeSet<EdgeId>) -> bool {
    let m = Masked::new(t);
    if m.ids.len() > 64 || x.iter().any(|e| m.ids.binary_search(e).is_err()) {
        return false;
    }
    let mask = x.iter().fold(0u64, |acc, e| {
        acc | 1 << m.ids.binary_search(e).expect("checked")
    });
    m.two_edge_connected(mask)
}

fn candidates(t: &TriTreeSeq, m: &Masked) -> Vec<usize> {
    let leaves = t.leaves();
    let verts: Vec<VertexId> = {
        let mut v: Vec<VertexId> = t.vertices().cloned().collect();
        v.sort();
        v
    };
    // A leaf has degree 2, so no edge at a leaf can ever be removed.
    (0..m.ids.len())
        .filter(|&j| {
            let (a, b) = m.ends[j];
            !leaves.contains(&verts[a]) && !leaves.contains(&verts[b])
        })
        .collect()
}

struct Bnb<'a> {
    m: &'a Masked,
    cand: Vec<usize>,
    best: u64,
    best_len: u32,
}

impl Bnb<'_> {
    fn go(&mut self, i: usize, removed: u64) {
        let size = removed.count_ones();
        if size > self.best_len {
            self.best = removed;
            self.best_len = size;
        }
        if i == self.cand.len() || size + (self.cand.len() - i) as u32 <= self.best_len {
            return;
        }
        let next = removed | 1 << self.cand[i];
        if self.m.two_edge_connected(next) {
            self.go(i + 1, next);
        }
        self.go(i + 1, removed);
    }
}

/// A maximum removable set of `t`. Among maximum sets the first one in
/// include-first ascending edge-id order is returned.
pub fn removable_max(t: &TriTreeSeq) -> BTreeSet<EdgeId> {
    let m = Masked::new(t);
    assert!(
        m.ids.len() <= 64,
        "removable_max supports trees with at most 33 vertices"
    );
    let cand = candidates(t, &m);
    let mut b = Bnb {
        m: &m,
        cand,
        best: 0,
        best_len: 0,
    };
    b.go(0, 0);
    (0..m.ids.len())
        .filter(|&j| b.best & (1 << j) != 0)
        .map(|j| m.ids[j].clone())
        .collect()
}

/// Every inclusion-maximal removable set, in include-first order, at most
/// `limit` of them.
pub fn maximal_removable_sets(t: &TriTreeSeq, limit: usize) -> Vec<BTreeSet<EdgeId>> {
    let m = Masked::new(t);
    assert!(
        m.ids.len() <= 64,
        "maximal_removable_sets supports trees with at most 33 vertices"
    );
    let cand = candidates(t, &m);
    let mut found: Vec<u64> = Vec::new();
    fn walk(
        m: &Masked,
        cand: &[usize],
        i: usize,
        removed: u64,
        found: &mut Vec<u64>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        if i == cand.len() {
            let maximal = cand
                .iter()
                .all(|&j| removed & (1 << j) != 0 || !m.two_edge_connected(removed | 1 << j));
            if maximal {
                found.push(removed);
            }
            return;
        }
        let next = removed | 1 << cand[i];
        if m.two_edge_connected(next) {
            walk(m, cand, i + 1, next, found, limit);
        }
        walk(m, cand, i + 1, removed, found, limit);
    }
    walk(&m, &cand, 0, 0, &mut found, limit);
    found
        .into_iter()
        .map(|mask| {
            (0..m.ids.len())
                .filter(|&j| mask & (1 << j) != 0)
                .map(|j| m.ids[j].clone())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_nothing_removable() {
        let (t, _) = TriTreeSeq::build(["a", "b", "c"], &[]).unwrap();
        assert!(removable_max(&t).is_empty());
        assert!(is_removable(&t, &BTreeSet::new()));
    }

    #[test]
    fn book_removes_only_the_spine() {
        let (t, _) =
            TriTreeSeq::build(["s", "t", "a"], &[("b", "s", "t"), ("c", "s", "t")]).unwrap();
        let r = removable_max(&t);
        let ids: Vec<&str> = r.iter().map(|e| e.as_str()).collect();
        assert_eq!(ids, ["e0"]);
    }

    #[test]
    fn fan5_reaches_the_bound() {
        let (t, _) =
            TriTreeSeq::build(["0", "1", "2"], &[("3", "0", "2"), ("4", "0", "3")]).unwrap();
        let r = removable_max(&t);
        assert_eq!(r.len(), 2);
        assert!(is_removable(&t, &r));
        let all = maximal_removable_sets(&t, 100);
        assert!(all.iter().all(|x| is_removable(&t, x)));
        assert!(all.contains(&r));
    }
}
