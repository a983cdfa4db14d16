use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::search::edge_order;
use super::{orientation, Coloring};
use crate::graph::{FlowAssignment, IndexedGraph};

/// Turns a mod-3 orientation into a 3-NZF: every edge carries 1 along its
/// direction or 2 against it. Choosing the reversed set is a b-flow
/// problem, solved by augmenting paths.
pub(crate) fn three_flow_from_mod3(ix: &IndexedGraph, dir: &[bool]) -> Option<FlowAssignment> {
    let n = ix.n();
    let arcs: Vec<(usize, usize)> = dir
        .iter()
        .enumerate()
        .map(|(j, &f)| {
            let (a, b) = ix.ends(j);
            if f {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    // Reversing arc t->h with value 2 changes the net outflow of t by -3.
    // We need, per vertex, (#reversed out - #reversed in) = (out - in) / 3.
    let mut need = vec![0i64; n];
    for &(t, h) in &arcs {
        need[t] += 1;
        need[h] -= 1;
    }
    if need.iter().any(|x| x % 3 != 0) {
        return None;
    }
    for x in need.iter_mut() {
        *x /= 3;
    }
    // Network: s -> v (need > 0), arcs with capacity 1, v -> t (need < 0).
    let (s, t) = (n, n + 1);
    let mut cap: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); n + 2];
    let add = |cap: &mut Vec<BTreeMap<usize, i64>>, u: usize, v: usize, c: i64| {
        *cap[u].entry(v).or_insert(0) += c;
        cap[v].entry(u).or_insert(0);
    };
    for &(a, b) in &arcs {
        add(&mut cap, a, b, 1);
    }
    let mut demand = 0;
    for (v, &d) in need.iter().enumerate() {
        if d > 0 {
            add(&mut cap, s, v, d);
            demand += d;
        } else if d < 0 {
            add(&mut cap, v, t, -d);
        }
    }
    let orig = cap.clone();
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; n + 2];
        prev[s] = s;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for (&v, &c) in &cap[u] {
                if c > 0 && prev[v] == usize::MAX {
                    prev[v] = u;
                    q.push_back(v);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut v = t;
        while v != s {
            let u = prev[v];
            *cap[u].get_mut(&v).expect("residual arc") -= 1;
            *cap[v].get_mut(&u).expect("residual arc") += 1;
            v = u;
        }
        flow += 1;
    }
    if flow != demand {
        return None;
    }
    // Units pushed along a->b (net) say how many a->b arcs to reverse.
    let mut used: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for a in 0..n {
        for (&b, &c0) in &orig[a] {
            if b < n && c0 > 0 {
                let pushed = c0 - cap[a][&b];
                if pushed > 0 {
                    used.insert((a, b), pushed);
                }
            }
        }
    }
    let mut flipped = dir.to_vec();
    let mut values = BTreeMap::new();
    for (j, &(a, b)) in arcs.iter().enumerate() {
        let take = used.get_mut(&(a, b)).filter(|k| **k > 0);
        let v = if let Some(k) = take {
            *k -= 1;
            flipped[j] = !flipped[j];
            2
        } else {
            1
        };
        values.insert(ix.edge_id(j).clone(), v);
    }
    let f = FlowAssignment {
        k: 3,
        orientation: orientation(ix, &flipped),
        values,
    };
    Some(f)
}

/// General `k`: backtracking over signed edge values with a bound on the
/// imbalance the remaining edges can still cancel.
pub(crate) fn nzf_backtrack(ix: &IndexedGraph, k: u32) -> Option<FlowAssignment> {
    let n = ix.n();
    let order = edge_order(ix);
    let mut rem: Vec<i64> = (0..n).map(|v| ix.degree(v) as i64).collect();
    let mut bal = vec![0i64; n];
    let mut val = vec![0i64; ix.m()];
    let top = i64::from(k) - 1;
    let values: Vec<i64> = (1..=top).flat_map(|x| [x, -x]).collect();

    #[allow(clippy::too_many_arguments)]
    fn go(
        ix: &IndexedGraph,
        order: &[usize],
        i: usize,
        values: &[i64],
        top: i64,
        rem: &mut [i64],
        bal: &mut [i64],
        val: &mut [i64],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let j = order[i];
        let (a, b) = ix.ends(j);
        rem[a] -= 1;
        rem[b] -= 1;
        for &x in values {
            bal[a] += x;
            bal[b] -= x;
            val[j] = x;
            let fine = bal[a].abs() <= rem[a] * top && bal[b].abs() <= rem[b] * top;
            if fine && go(ix, order, i + 1, values, top, rem, bal, val) {
                return true;
            }
            bal[a] -= x;
            bal[b] += x;
        }
        rem[a] += 1;
        rem[b] += 1;
        false
    }

    if !go(ix, &order, 0, &values, top, &mut rem, &mut bal, &mut val) {
        return None;
    }
    let dir: Vec<bool> = val.iter().map(|&x| x > 0).collect();
    let values = val
        .iter()
        .enumerate()
        .map(|(j, &x)| (ix.edge_id(j).clone(), x.unsigned_abs() as u32))
        .collect();
    Some(FlowAssignment {
        k,
        orientation: orientation(ix, &dir),
        values,
    })
}

/// Backtracking 3-colouring; the first vertex in search order gets colour 0.
pub(crate) fn three_coloring(ix: &IndexedGraph) -> Option<Coloring> {
    let n = ix.n();
    let mult = ix.multiplicity();
    // Highest degree first keeps conflicts near the root.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(ix.degree(v)), v));
    let mut color = vec![u8::MAX; n];

    fn go(i: usize, order: &[usize], mult: &[Vec<u8>], color: &mut [u8]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let limit = if i == 0 { 1 } else { 3 };
        for c in 0..limit {
            if (0..color.len()).any(|w| mult[v][w] > 0 && color[w] == c) {
                continue;
            }
            color[v] = c;
            if go(i + 1, order, mult, color) {
                return true;
            }
            color[v] = u8::MAX;
        }
        false
    }

    if !go(0, &order, &mult, &mut color) {
        return None;
    }
    Some((0..n).map(|v| (ix.vertex(v).clone(), color[v])).collect())
}
