//! Replayable positive proofs of Z3-connectivity.
//!
//! A proof is a list of rules applied to the current graph in turn. Each
//! rule has a premise checked on the current graph and produces the next
//! graph; the proof is accepted when the last rule is a base case. Every
//! rule only moves to a graph whose membership implies membership of the
//! current one, so a verifying proof is a certificate of `G ∈ <Z3>`.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::canon::{canonical_form, CanonicalForm};
use crate::graph::{EdgeId, Multigraph, VertexId};
use crate::tritree::{Attachment, TriTreeSeq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Contract a pair of parallel edges.
    Contract2Cycle { edges: [EdgeId; 2] },
    /// Contract the edge-induced subgraph on `edges`, itself proved by `proof`.
    ContractZ3Subgraph {
        edges: BTreeSet<EdgeId>,
        proof: Box<Z3Proof>,
    },
    /// Lift `a_edge = va` and `b_edge = vb` into `new_edge = ab` at a vertex of degree at least 4.
    LiftPair {
        vertex: VertexId,
        a_edge: EdgeId,
        b_edge: EdgeId,
        new_edge: EdgeId,
    },
    /// Replace a path by the single edge `new_edge` joining its ends.
    LiftPath { path: Vec<EdgeId>, new_edge: EdgeId },
    /// The current graph is two vertices joined by two edges.
    Base2K2,
    /// The current graph is a single vertex.
    BaseK1,
    /// `tree` is a triangle-tree inside the current graph, `leaf` one of its
    /// leaves and `extra` two further edges from the leaf into the tree; the
    /// union is Z3-connected and gets contracted.
    TreePlus {
        tree: TriTreeSeq,
        leaf: VertexId,
        extra: [EdgeId; 2],
    },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Z3Proof {
    pub steps: Vec<Rule>,
}

impl Z3Proof {
    pub fn new(steps: Vec<Rule>) -> Self {
        Z3Proof { steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn is_k1(g: &Multigraph) -> bool {
    g.vertex_count() == 1 && g.edge_count() == 0
}

fn is_2k2(g: &Multigraph) -> bool {
    g.vertex_count() == 2 && g.edge_count() == 2
}

/// Applies one non-terminal rule, checking its premise.
fn apply(g: &Multigraph, rule: &Rule) -> Option<Multigraph> {
    match rule {
        Rule::Contract2Cycle { edges: [e1, e2] } => {
            if e1 == e2 {
                return None;
            }
            let (a, b) = g.endpoints(e1).ok()?;
            let (c, d) = g.endpoints(e2).ok()?;
            if (a, b) != (c, d) {
                return None;
            }
            g.contract_subgraph(&[e1.clone(), e2.clone()].into_iter().collect())
                .ok()
        }
        Rule::ContractZ3Subgraph { edges, proof } => {
            let h = g.edge_subgraph(edges.iter()).ok()?;
            if !verify_z3proof(&h, proof) {
                return None;
            }
            g.contract_subgraph(edges).ok()
        }
        Rule::LiftPair {
            vertex,
            a_edge,
            b_edge,
            new_edge,
        } => {
            if g.degree(vertex) < 4 || g.has_edge(new_edge) {
                return None;
            }
            g.lift_pair_as(vertex, a_edge, b_edge, new_edge.clone())
                .ok()
        }
        Rule::LiftPath { path, new_edge } => {
            if g.has_edge(new_edge) {
                return None;
            }
            g.lift_path_as(path, new_edge.clone()).ok()
        }
        Rule::TreePlus { tree, leaf, extra } => {
            tree.check(g).ok()?;
            if !tree.leaves().contains(leaf) || extra[0] == extra[1] {
                return None;
            }
            let used = tree.edge_id_set();
            let inside: BTreeSet<&VertexId> = tree.vertices().collect();
            for e in extra {
                if used.contains(e) {
                    return None;
                }
                let far = g.other_end(e, leaf).ok()?;
                if far == leaf || !inside.contains(far) {
                    return None;
                }
            }
            let mut all = used;
            all.extend(extra.iter().cloned());
            g.contract_subgraph(&all).ok()
        }
        Rule::Base2K2 | Rule::BaseK1 => None,
    }
}

/// Replays `p` on `g`: true iff every premise holds and the last rule is a
/// base case matching the graph reached.
pub fn verify_z3proof(g: &Multigraph, p: &Z3Proof) -> bool {
    let Some((last, body)) = p.steps.split_last() else {
        return false;
    };
    let mut cur = g.clone();
    for rule in body {
        match apply(&cur, rule) {
            Some(next) => cur = next,
            None => return false,
        }
    }
    match last {
        Rule::BaseK1 => is_k1(&cur),
        Rule::Base2K2 => is_2k2(&cur) && cur.is_2edge_connected(),
        _ => false,
    }
}

/// Budget for [`z3_prove_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProofBudget {
    /// Maximum number of lifts along any branch.
    pub max_lifts: usize,
    /// Maximum number of graphs expanded in total.
    pub max_nodes: usize,
}

impl Default for ProofBudget {
    fn default() -> Self {
        ProofBudget {
            max_lifts: 3,
            max_nodes: 20_000,
        }
    }
}

/// Best-effort search for a proof of `g ∈ <Z3>` with the default budget.
/// `None` is not a disproof.
pub fn z3_prove(g: &Multigraph) -> Option<Z3Proof> {
    z3_prove_with(g, ProofBudget::default())
}

pub fn z3_prove_with(g: &Multigraph, budget: ProofBudget) -> Option<Z3Proof> {
    if g.vertex_count() == 0 {
        return None;
    }
    let mut s = Searcher {
        budget,
        nodes: 0,
        failed: BTreeMap::new(),
    };
    for depth in 0..=budget.max_lifts {
        let mut steps = Vec::new();
        if let Some(done) = s.go(g, depth, &mut steps) {
            if done {
                return Some(Z3Proof::new(steps));
            }
        } else {
            // Budget exhausted or no lift available anywhere.
            break;
        }
    }
    None
}

struct Searcher {
    budget: ProofBudget,
    nodes: usize,
    // Largest lift depth at which a graph class is known to fail.
    failed: BTreeMap<CanonicalForm, usize>,
}

impl Searcher {
    /// `Some(true)` with `steps` extended on success, `Some(false)` when
    /// this depth fails, `None` when the budget ran out or deeper search
    /// cannot help.
    fn go(&mut self, g: &Multigraph, depth: usize, steps: &mut Vec<Rule>) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            return None;
        }
        let mark = steps.len();
        let h = close(g, steps);
        if matches!(steps.last(), Some(Rule::BaseK1 | Rule::Base2K2)) {
            return Some(true);
        }
        if !plausible(&h) {
            steps.truncate(mark);
            return Some(false);
        }
        let key = canonical_form(&h);
        if self.failed.get(&key).is_some_and(|&d| d >= depth) {
            steps.truncate(mark);
            return Some(false);
        }
        if depth == 0 {
            steps.truncate(mark);
            return Some(false);
        }
        let base = steps.len();
        let mut exhausted = false;
        for (rule, next) in lifts(&h) {
            steps.push(rule);
            match self.go(&next, depth - 1, steps) {
                Some(true) => return Some(true),
                Some(false) => steps.truncate(base),
                None => {
                    exhausted = true;
                    break;
                }
            }
        }
        steps.truncate(mark);
        if exhausted {
            return None;
        }
        self.failed.insert(key, depth);
        Some(false)
    }
}

/// Necessary conditions for membership: 2-edge-connected, and at least as
/// many orientations as boundaries.
fn plausible(g: &Multigraph) -> bool {
    let (n, m) = (g.vertex_count(), g.edge_count());
    if n == 1 {
        return true;
    }
    if !g.is_2edge_connected() {
        return false;
    }
    // 2^m >= 3^(n-1); both sides fit easily once m < 128.
    if m >= 2 * n {
        return true;
    }
    let mut three: u128 = 1;
    for _ in 0..n - 1 {
        three *= 3;
    }
    (1u128 << m) >= three
}

/// Applies contractions greedily until none applies. Contracting a
/// Z3-connected subgraph never changes membership, so no choice here can
/// lose a proof.
fn close(g: &Multigraph, steps: &mut Vec<Rule>) -> Multigraph {
    let mut g = g.clone();
    loop {
        if is_k1(&g) {
            steps.push(Rule::BaseK1);
            return g;
        }
        if is_2k2(&g) {
            steps.push(Rule::Base2K2);
            return g;
        }
        if let Some(pair) = two_cycle(&g) {
            let rule = Rule::Contract2Cycle { edges: pair };
            g = apply(&g, &rule).expect("2-cycle premise holds");
            steps.push(rule);
            continue;
        }
        if let Some(rule) = tree_plus(&g) {
            g = apply(&g, &rule).expect("tree-plus premise holds");
            steps.push(rule);
            continue;
        }
        return g;
    }
}

fn two_cycle(g: &Multigraph) -> Option<[EdgeId; 2]> {
    let mut seen: BTreeMap<(&VertexId, &VertexId), &EdgeId> = BTreeMap::new();
    for (id, a, b) in g.edges() {
        if let Some(first) = seen.insert((a, b), id) {
            return Some([first.clone(), id.clone()]);
        }
    }
    None
}

/// Looks for a leaf `x` of a triangle-tree with two more edges into the
/// tree. The tree is the triangle `xyz` followed by everything that can be
/// attached to `yz` inside `G - x`.
fn tree_plus(g: &Multigraph) -> Option<Rule> {
    for x in g.vertices() {
        if g.degree(x) < 4 {
            continue;
        }
        let nbrs: Vec<VertexId> = g.neighbors(x).into_iter().collect();
        for (i, y) in nbrs.iter().enumerate() {
            for z in &nbrs[i + 1..] {
                if !g.is_adjacent(y, z) {
                    continue;
                }
                if let Some(rule) = tree_plus_at(g, x, y, z) {
                    return Some(rule);
                }
            }
        }
    }
    None
}

fn least_edge(
    g: &Multigraph,
    a: &VertexId,
    b: &VertexId,
    skip: &BTreeSet<EdgeId>,
) -> Option<EdgeId> {
    g.edges_between(a, b)
        .into_iter()
        .filter(|e| !skip.contains(e))
        .min()
}

fn tree_plus_at(g: &Multigraph, x: &VertexId, y: &VertexId, z: &VertexId) -> Option<Rule> {
    let mut inside: BTreeSet<VertexId> = [y.clone(), z.clone()].into_iter().collect();
    let mut attach: Vec<Attachment> = Vec::new();
    let mut queue: VecDeque<(VertexId, VertexId)> = VecDeque::from([(y.clone(), z.clone())]);
    while let Some((p, q)) = queue.pop_front() {
        let common: Vec<VertexId> = g
            .neighbors(&p)
            .intersection(&g.neighbors(&q))
            .filter(|t| *t != x && !inside.contains(*t))
            .cloned()
            .collect();
        for t in common {
            if inside.insert(t.clone()) {
                attach.push(Attachment {
                    vertex: t.clone(),
                    on: (p.clone(), q.clone()),
                });
                queue.push_back((t.clone(), p.clone()));
                queue.push_back((t, q.clone()));
            }
        }
    }
    let into: usize = g
        .incident(x)
        .iter()
        .filter(|(_, t)| inside.contains(t))
        .count();
    if into < 4 {
        return None;
    }
    let base = [x.clone(), y.clone(), z.clone()];
    let mut seq = TriTreeSeq::new(base, attach, Vec::new());
    let none = BTreeSet::new();
    let ids: Vec<EdgeId> = seq
        .structural_pairs()
        .iter()
        .map(|(a, b)| least_edge(g, a, b, &none))
        .collect::<Option<_>>()?;
    seq = TriTreeSeq::new(seq.base().clone(), seq.attachments().to_vec(), ids);
    let used = seq.edge_id_set();
    let mut extra: Vec<EdgeId> = g
        .incident(x)
        .into_iter()
        .filter(|(e, t)| inside.contains(t) && !used.contains(e))
        .map(|(e, _)| e)
        .collect();
    extra.sort();
    if extra.len() < 2 {
        return None;
    }
    Some(Rule::TreePlus {
        tree: seq,
        leaf: x.clone(),
        extra: [extra[0].clone(), extra[1].clone()],
    })
}

/// Candidate lifts at vertices of degree at least 4, one per unordered pair
/// of distinct neighbours; lifts onto an existing edge come first since
/// they create a 2-cycle.
fn lifts(g: &Multigraph) -> Vec<(Rule, Multigraph)> {
    let mut first = Vec::new();
    let mut rest = Vec::new();
    let new_edge = g.fresh_edge_id();
    for v in g.vertices() {
        if g.degree(v) < 4 {
            continue;
        }
        let nbrs: Vec<VertexId> = g.neighbors(v).into_iter().collect();
        let none = BTreeSet::new();
        for (i, a) in nbrs.iter().enumerate() {
            for b in &nbrs[i + 1..] {
                let (Some(ea), Some(eb)) = (least_edge(g, v, a, &none), least_edge(g, v, b, &none))
                else {
                    continue;
                };
                let rule = Rule::LiftPair {
                    vertex: v.clone(),
                    a_edge: ea,
                    b_edge: eb,
                    new_edge: new_edge.clone(),
                };
                let Some(next) = apply(g, &rule) else {
                    continue;
                };
                if g.is_adjacent(a, b) {
                    first.push((rule, next));
                } else {
                    rest.push((rule, next));
                }
            }
        }
    }
    first.extend(rest);
    first
}

/// A proof for the edge-induced subgraph on `edges`, wrapped as a rule
/// that contracts it.
pub fn contract_rule(g: &Multigraph, edges: &BTreeSet<EdgeId>) -> Option<Rule> {
    let h = g.edge_subgraph(edges.iter()).ok()?;
    let proof = z3_prove(&h)?;
    Some(Rule::ContractZ3Subgraph {
        edges: edges.clone(),
        proof: Box::new(proof),
    })
}
