//! Backtracking over edge directions with per-vertex residue pruning.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::IndexedGraph;

/// Vertex order by maximum cardinality search, then edges sorted by the
/// position of their later endpoint, so vertices close as early as possible.
pub(crate) fn edge_order(ix: &IndexedGraph) -> Vec<usize> {
    let n = ix.n();
    let mut pos = vec![usize::MAX; n];
    let mut weight = vec![0usize; n];
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| pos[v] == usize::MAX)
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unplaced vertex");
        pos[v] = step;
        for &(_, w) in ix.inc(v) {
            weight[w] += 1;
        }
    }
    let mut order: Vec<usize> = (0..ix.m()).collect();
    order.sort_by_key(|&j| {
        let (a, b) = ix.ends(j);
        let (p, q) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        (q, p, j)
    });
    order
}

/// Searches orientations whose `(out - in) mod 3` equals `target` at every
/// vertex. `dir[j]` true means edge `j` runs from its first to its second
/// endpoint. With `strong`, vertices that close as a source or sink are
/// pruned, and `accept` gets the final say on complete orientations.
pub(crate) struct Mod3Search<'a> {
    ix: &'a IndexedGraph,
    order: Vec<usize>,
    target: &'a [u8],
    rem: Vec<usize>,
    cur: Vec<u8>,
    outd: Vec<u32>,
    ind: Vec<u32>,
    dir: Vec<bool>,
    strong: bool,
}

impl<'a> Mod3Search<'a> {
    pub(crate) fn new(ix: &'a IndexedGraph, target: &'a [u8], strong: bool) -> Self {
        let n = ix.n();
        Mod3Search {
            ix,
            order: edge_order(ix),
            target,
            rem: (0..n).map(|v| ix.degree(v)).collect(),
            cur: vec![0; n],
            outd: vec![0; n],
            ind: vec![0; n],
            dir: vec![false; ix.m()],
            strong,
        }
    }

    fn ok(&self, v: usize) -> bool {
        let (r, c, t) = (self.rem[v], self.cur[v], self.target[v]);
        let residue = match r {
            0 => c == t,
            1 => c != t,
            _ => true,
        };
        residue
            && !(self.strong
                && r == 0
                && self.ix.n() > 1
                && (self.outd[v] == 0 || self.ind[v] == 0))
    }

    /// Runs the search; returns the first complete orientation `accept`
    /// approves.
    pub(crate) fn run(&mut self, accept: &mut dyn FnMut(&[bool]) -> bool) -> Option<Vec<bool>> {
        let n = self.ix.n();
        if (0..n).any(|v| !self.ok(v)) {
            return None;
        }
        if self.go(0, accept) {
            Some(self.dir.clone())
        } else {
            None
        }
    }

    fn go(&mut self, i: usize, accept: &mut dyn FnMut(&[bool]) -> bool) -> bool {
        if i == self.order.len() {
            return accept(&self.dir);
        }
        let j = self.order[i];
        let (a, b) = self.ix.ends(j);
        self.rem[a] -= 1;
        self.rem[b] -= 1;
        for forward in [true, false] {
            let (t, h) = if forward { (a, b) } else { (b, a) };
            self.cur[t] = (self.cur[t] + 1) % 3;
            self.cur[h] = (self.cur[h] + 2) % 3;
            self.outd[t] += 1;
            self.ind[h] += 1;
            self.dir[j] = forward;
            let fine = self.ok(a) && self.ok(b);
            if fine && self.go(i + 1, accept) {
                return true;
            }
            self.cur[t] = (self.cur[t] + 2) % 3;
            self.cur[h] = (self.cur[h] + 1) % 3;
            self.outd[t] -= 1;
            self.ind[h] -= 1;
        }
        self.rem[a] += 1;
        self.rem[b] += 1;
        false
    }
}

/// Strong connectivity of the orientation `dir` of `ix`.
pub(crate) fn strongly_connected(ix: &IndexedGraph, dir: &[bool]) -> bool {
    let n = ix.n();
    if n <= 1 {
        return true;
    }
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (j, &d) in dir.iter().enumerate() {
        let (a, b) = ix.ends(j);
        let (t, h) = if d { (a, b) } else { (b, a) };
        fwd[t].push(h);
        bwd[h].push(t);
    }
    let reach = |adj: &Vec<Vec<usize>>| {
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        count == n
    };
    reach(&fwd) && reach(&bwd)
}

/// Does every zero-sum boundary arise from some orientation? Dynamic
/// programming over edges on the set of reachable `(out - in) mod 3`
/// vectors, encoded in base 3 with vertex `i` as digit `i`.
pub(crate) fn reachable_boundaries(ix: &IndexedGraph) -> Vec<u64> {
    let n = ix.n();
    let size = 3usize.pow(n as u32);
    let pow: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
    let words = size.div_ceil(64);
    let mut cur = vec![0u64; words];
    cur[0] = 1;
    let shift = |code: usize, v: usize, delta: usize| -> usize {
        let d = (code / pow[v]) % 3;
        let nd = (d + delta) % 3;
        code + nd * pow[v] - d * pow[v]
    };
    for &(a, b) in ix.all_ends() {
        let mut next = vec![0u64; words];
        for (w, &word) in cur.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let code = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let f = shift(shift(code, a, 1), b, 2);
                let r = shift(shift(code, a, 2), b, 1);
                next[f / 64] |= 1 << (f % 64);
                next[r / 64] |= 1 << (r % 64);
            }
        }
        cur = next;
    }
    cur
}

pub(crate) fn encode(values: &[u8]) -> usize {
    values
        .iter()
        .rev()
        .fold(0, |acc, &d| acc * 3 + usize::from(d))
}
