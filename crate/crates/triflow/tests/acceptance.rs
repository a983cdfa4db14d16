//! One PASS/FAIL line per acceptance criterion, each judged against the
//! exhaustive oracles and the independent checkers in `common`.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triflow::gen::double_2tree;
use triflow_core::canon::canonical_form;
use triflow_core::certify::{
    bull_reduce, bull_variants, crystal_3nzf, crystal_z3, decide_3nzf, decide_z3,
    few_3vertices_shortcut, fully_2summed_odd_wheel, triangularly_connected, verify_certificate,
    verify_z3proof, z3_prove, Step,
};
use triflow_core::graph::{boundary_of, Pairing, Z3Boundary};
use triflow_core::oracle::Oracle;
use triflow_core::tritree::{
    enumerate_double_tritrees, enumerate_spanning_tritree_graphs, enumerate_triangle_paths,
    enumerate_tritrees, find_spanning_tritree, gen_book, gen_crystal, gen_wheel, removable_max,
};
use triflow_core::twotrees::certify_s3_with;
use triflow_core::{Multigraph, VertexId};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(violations: usize, detail: String) -> Outcome {
    Outcome {
        pass: violations == 0,
        detail: format!("{detail}, {violations} violations"),
    }
}

fn oracle() -> Oracle {
    Oracle::default()
}

/// A corpus graph with its oracle verdicts.
struct Entry {
    g: Multigraph,
    nzf: bool,
    z3: bool,
}

/// Every spanning triangle-tree graph on at most 7 vertices with at most 3
/// extra edges, one per isomorphism class.
fn corpus() -> &'static [Entry] {
    static C: OnceLock<Vec<Entry>> = OnceLock::new();
    C.get_or_init(|| {
        let o = oracle();
        (3..=7)
            .flat_map(|n| enumerate_spanning_tritree_graphs(n, 3))
            .map(|g| {
                let nzf = o.has_nzf(&g, 3).unwrap().is_some();
                let z3 = o.z3_connected(&g).unwrap().verdict;
                Entry { g, nzf, z3 }
            })
            .collect()
    })
}

fn nzf_agreement() -> Outcome {
    let mut bad = 0;
    let mut certs = 0;
    for e in corpus() {
        let t = find_spanning_tritree(&e.g).expect("corpus graphs have a spanning triangle-tree");
        let (yes, cert) = decide_3nzf(&e.g, &t).unwrap();
        if let Some(c) = &cert {
            certs += 1;
            bad += usize::from(!verify_certificate(&e.g, c));
        }
        bad += usize::from(yes != e.nzf);
    }
    outcome(
        bad,
        format!("{} graphs, {certs} negative certificates", corpus().len()),
    )
}

fn z3_agreement() -> Outcome {
    let mut bad = 0;
    let mut certs = 0;
    for e in corpus() {
        let t = find_spanning_tritree(&e.g).unwrap();
        let (yes, cert) = decide_z3(&e.g, &t).unwrap();
        if let Some(c) = &cert {
            certs += 1;
            bad += usize::from(!verify_certificate(&e.g, c));
        }
        bad += usize::from(yes != e.z3);
    }
    outcome(
        bad,
        format!(
            "{} graphs, {certs} negative certificates replayed",
            corpus().len()
        ),
    )
}

fn few_threes() -> Outcome {
    let mut bad = 0;
    let mut applicable = 0;
    for e in corpus() {
        let threes = e.g.vertices().filter(|v| e.g.degree(v) == 3).count();
        let t = find_spanning_tritree(&e.g).unwrap();
        let says = few_3vertices_shortcut(&e.g, &t).unwrap();
        bad += usize::from(says.is_some() != (threes <= 3));
        if threes <= 3 {
            applicable += 1;
            bad += usize::from(!e.nzf);
        }
    }
    outcome(
        bad,
        format!("{applicable} graphs with at most three 3-vertices"),
    )
}

fn crystals() -> Outcome {
    let o = oracle();
    let mut bad = 0;
    let mut count = 0;
    for n in 4..=9 {
        for path in enumerate_triangle_paths(n) {
            let c = gen_crystal(&path).unwrap();
            let g = c.graph();
            count += 1;
            let even = g.vertices().any(|v| g.degree(v).is_multiple_of(2));
            let colourable = o
                .vertex_3_colorable(g)
                .inspect(|col| assert!(common::is_proper(g, col)))
                .is_some();
            let nzf = o.has_nzf(g, 3).unwrap().is_some();
            let z3 = o.z3_connected(g).unwrap().verdict;
            bad += usize::from(crystal_3nzf(&c).unwrap() != nzf || even != nzf);
            bad += usize::from(crystal_z3(&c).unwrap() != z3 || colourable != z3);
        }
    }
    outcome(bad, format!("{count} crystals on 4 to 9 vertices"))
}

fn two_trees() -> Outcome {
    let o = oracle();
    let mut graphs: Vec<Multigraph> = (4..=6).flat_map(enumerate_double_tritrees).collect();
    let exhaustive = graphs.len();
    for seed in 0..210u64 {
        let n = 4 + (seed % 3) as usize;
        graphs.push(double_2tree(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap());
    }
    let mut bad = 0;
    let mut boundaries = 0u64;
    for g in &graphs {
        let Some(r) = certify_s3_with(g, &o) else {
            bad += 1;
            continue;
        };
        let expected = 3u64.pow(g.vertex_count() as u32 - 1);
        bad += usize::from(!r.all_ok || r.boundaries_checked != expected);
        for beta in Z3Boundary::all(g) {
            boundaries += 1;
            match r.certificate.orient(g, &beta, &o) {
                Ok(d) => {
                    bad += usize::from(
                        !(common::realises(g, &d, &beta) && common::strongly_connected(g, &d)),
                    )
                }
                Err(_) => bad += 1,
            }
        }
        bad += usize::from(!o.flow_index_lt3(g).unwrap().verdict);
    }
    outcome(
        bad,
        format!(
            "{} graphs ({exhaustive} exhaustive, {} seeded), {boundaries} boundaries",
            graphs.len(),
            graphs.len() - exhaustive
        ),
    )
}

fn removable_sets() -> Outcome {
    let mut bad = 0;
    let mut trees = 0;
    let mut exhaustive = 0;
    for n in 4..=10 {
        for t in enumerate_tritrees(n) {
            trees += 1;
            let g = t.to_graph();
            let vs: Vec<VertexId> = g.vertices().cloned().collect();
            let edges: Vec<_> = g
                .edges()
                .map(|(e, a, b)| (e.clone(), a.clone(), b.clone()))
                .collect();
            let leaves = vs.iter().filter(|v| g.degree(v) == 2).count();
            let keep = |drop: &dyn Fn(usize) -> bool| -> Vec<(VertexId, VertexId)> {
                edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| !drop(i))
                    .map(|(_, (_, a, b))| (a.clone(), b.clone()))
                    .collect()
            };
            let r = removable_max(&t);
            let left = keep(&|i| r.contains(&edges[i].0));
            bad += usize::from(!common::bridgeless(&vs, &left) || r.len() + leaves + 1 < n);
            if n <= 7 {
                exhaustive += 1;
                let best = (0u32..1 << edges.len())
                    .filter(|&m| common::bridgeless(&vs, &keep(&|i| m & (1 << i) != 0)))
                    .map(u32::count_ones)
                    .max()
                    .unwrap_or(0);
                bad += usize::from(best as usize != r.len());
            }
        }
    }
    outcome(
        bad,
        format!("{trees} triangle-trees on 4 to 10 vertices, {exhaustive} checked exhaustively"),
    )
}

fn bull_round_trips() -> Outcome {
    let o = oracle();
    let mut bad = 0;
    let mut pairs = 0;
    let mut z3_pairs = 0;
    for e in corpus() {
        for p in bull_variants(&e.g) {
            pairs += 1;
            let h = bull_reduce(&e.g, &p).unwrap();
            bad += usize::from(o.has_nzf(&h, 3).unwrap().is_some() != e.nzf);
            if find_spanning_tritree(&h).is_some() {
                z3_pairs += 1;
                bad += usize::from(o.z3_connected(&h).unwrap().verdict != e.z3);
            }
        }
    }
    outcome(
        bad,
        format!("{pairs} bull pairs, {z3_pairs} keeping a spanning triangle-tree"),
    )
}

fn triangle() -> Multigraph {
    Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("0", "2")]).unwrap()
}

fn two_sums() -> Outcome {
    let o = oracle();
    let pieces = [
        triangle(),
        gen_wheel(3).unwrap(),
        gen_book(4).unwrap(),
        gen_wheel(5).unwrap(),
    ];
    let mut bad = 0;
    let mut sums = 0;
    for h1 in &pieces {
        bad += usize::from(o.z3_connected(h1).unwrap().verdict);
        for h2 in &pieces {
            let h2 = h2.with_prefix("b");
            for ea in h1.edge_ids() {
                for eb in h2.edge_ids() {
                    for pairing in [Pairing::Straight, Pairing::Crossed] {
                        let g = Multigraph::two_sum(h1, &h2, ea, eb, pairing).unwrap();
                        sums += 1;
                        bad += usize::from(o.z3_connected(&g).unwrap().verdict);
                    }
                }
            }
        }
    }
    outcome(bad, format!("{sums} 2-sums"))
}

/// Vertices renamed `0..n` and edges renamed in order, so repeated sums
/// never collide with a prefixed operand.
fn normalise(g: &Multigraph) -> Multigraph {
    let names: Vec<&VertexId> = g.vertices().collect();
    let idx = |v: &VertexId| names.iter().position(|w| *w == v).unwrap().to_string();
    let mut h = Multigraph::new();
    for i in 0..names.len() {
        h.add_vertex(i.to_string().into()).unwrap();
    }
    for (_, a, b) in g.edges() {
        h.add_fresh_edge(idx(a).into(), idx(b).into()).unwrap();
    }
    h
}

/// 2-sums of triangles and odd wheels on at most 8 vertices.
fn wheel_sums() -> Vec<Multigraph> {
    let pieces = [triangle(), gen_wheel(3).unwrap(), gen_wheel(5).unwrap()];
    let mut seen = BTreeSet::new();
    let mut frontier: Vec<Multigraph> = [
        triangle(),
        gen_wheel(3).unwrap(),
        gen_wheel(5).unwrap(),
        gen_wheel(7).unwrap(),
    ]
    .into();
    frontier.retain(|g| seen.insert(canonical_form(g)));
    let mut all = frontier.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for g in &frontier {
            for p in &pieces {
                if g.vertex_count() + p.vertex_count() - 2 > 8 {
                    continue;
                }
                let p = p.with_prefix("p");
                for ea in g.edge_ids() {
                    for eb in p.edge_ids() {
                        for pairing in [Pairing::Straight, Pairing::Crossed] {
                            let s =
                                normalise(&Multigraph::two_sum(g, &p, ea, eb, pairing).unwrap());
                            if seen.insert(canonical_form(&s)) {
                                next.push(s);
                            }
                        }
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// `base` with `pieces[i].1` 2-summed onto edge `pieces[i].0`.
fn decorate(base: &Multigraph, pieces: &[(triflow_core::EdgeId, &Multigraph)]) -> Multigraph {
    let mut g = base.clone();
    for (i, (e, p)) in pieces.iter().enumerate() {
        let q = p.with_prefix(&format!("p{i}_"));
        let eq = q.edge_ids().next().unwrap().clone();
        g = Multigraph::two_sum(&g, &q, e, &eq, Pairing::Straight).unwrap();
    }
    g
}

/// Wheels with pieces summed onto their edges: triangles on every subset of
/// the edges of `K4`, and `W5` with summed rims, summed spokes and a `K4`
/// piece in place of a triangle.
fn summed_wheels() -> Vec<Multigraph> {
    let (k3, k4, w5) = (triangle(), gen_wheel(3).unwrap(), gen_wheel(5).unwrap());
    let mut out = Vec::new();
    let k4_edges: Vec<_> = k4.edge_ids().cloned().collect();
    for mask in 0u32..1 << k4_edges.len() {
        let on: Vec<_> = (0..k4_edges.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (k4_edges[i].clone(), &k3))
            .collect();
        out.push(decorate(&k4, &on));
    }
    let (rim, spokes): (Vec<_>, Vec<_>) = w5
        .edges()
        .map(|(e, a, b)| (e.clone(), a.as_str() != "0" && b.as_str() != "0"))
        .partition(|x| x.1);
    let (rim, spokes): (Vec<_>, Vec<_>) = (
        rim.into_iter().map(|x| x.0).collect(),
        spokes.into_iter().map(|x| x.0).collect(),
    );
    for mask in 0u32..1 << rim.len() {
        let on: Vec<_> = (0..rim.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| (rim[i].clone(), &k3))
            .collect();
        out.push(decorate(&w5, &on));
    }
    let full: Vec<_> = rim.iter().map(|e| (e.clone(), &k3)).collect();
    for s in &spokes {
        let mut on = full.clone();
        on.push((s.clone(), &k3));
        out.push(decorate(&w5, &on));
    }
    let mut heavy = full.clone();
    heavy[0].1 = &k4;
    out.push(decorate(&w5, &heavy));
    out
}

/// Simple graphs on 3 to 6 vertices, one per isomorphism class.
fn simple_graphs() -> Vec<Multigraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 3..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            let mut g = Multigraph::new();
            for i in 0..n {
                g.add_vertex(i.to_string().into()).unwrap();
            }
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    g.add_fresh_edge(i.to_string().into(), j.to_string().into())
                        .unwrap();
                }
            }
            if triangularly_connected(&g) && seen.insert(canonical_form(&g)) {
                out.push(g);
            }
        }
    }
    out
}

fn wheel_witnesses() -> Outcome {
    let o = oracle();
    let mut graphs = wheel_sums();
    graphs.extend(summed_wheels());
    graphs.extend(simple_graphs());
    let mut bad = 0;
    let mut instances = 0;
    let mut treeless = 0;
    for g in &graphs {
        if !triangularly_connected(g) || o.z3_connected(g).unwrap().verdict {
            continue;
        }
        instances += 1;
        let tree = find_spanning_tritree(g);
        let wheel = fully_2summed_odd_wheel(g);
        treeless += usize::from(tree.is_none());
        bad += usize::from(tree.is_none() != wheel.is_some());
        bad += usize::from(wheel.is_some_and(|w| !w.check(g)));
    }
    outcome(
        bad,
        format!("{instances} instances, {treeless} without a spanning triangle-tree"),
    )
}

fn witnesses() -> Outcome {
    let o = oracle();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut bad = 0;
    let (mut checked, mut corrupted) = (0, 0);
    for e in corpus().iter().filter(|e| e.g.vertex_count() <= 6) {
        let g = &e.g;
        let ids: Vec<_> = g.edge_ids().cloned().collect();
        let pick = |rng: &mut ChaCha8Rng| ids[rng.gen_range(0..ids.len())].clone();
        if let Some(f) = o.has_nzf(g, 3).unwrap() {
            checked += 1;
            bad += usize::from(!common::is_flow(g, &f));
            let mut zeroed = f.clone();
            zeroed.values.insert(pick(&mut rng), 0);
            let mut flipped = f.clone();
            flipped.orientation.reverse(&pick(&mut rng));
            for bent in [zeroed, flipped] {
                corrupted += 1;
                bad += usize::from(bent.check(g) || common::is_flow(g, &bent));
            }
        }
        let boundaries: Vec<Z3Boundary> = if g.vertex_count() <= 5 {
            Z3Boundary::all(g).collect()
        } else {
            vec![Z3Boundary::zero(g)]
        };
        for beta in boundaries {
            let Some(mut d) = o.mod3_orient(g, &beta).unwrap() else {
                continue;
            };
            checked += 1;
            bad += usize::from(!common::realises(g, &d, &beta));
            d.reverse(&pick(&mut rng));
            corrupted += 1;
            bad +=
                usize::from(boundary_of(g, &d).unwrap() == beta || common::realises(g, &d, &beta));
        }
        for r in [o.s3_member(g).unwrap(), o.flow_index_lt3(g).unwrap()] {
            if let (true, Some(triflow_core::oracle::Witness::Orientation(d))) =
                (r.verdict, &r.witness)
            {
                checked += 1;
                bad += usize::from(!common::strongly_connected(g, d) || !common::is_mod3(g, d));
            }
            if let Some(b) = &r.counterexample_boundary {
                bad += usize::from(
                    r.verdict || b.iter().map(|(_, x)| u32::from(x)).sum::<u32>() % 3 != 0,
                );
            }
        }
        if let Some(mut c) = o.vertex_3_colorable(g) {
            checked += 1;
            bad += usize::from(!common::is_proper(g, &c));
            let (_, a, b) = g.edges().nth(rng.gen_range(0..ids.len())).unwrap();
            let k = c[a];
            c.insert(b.clone(), k);
            corrupted += 1;
            bad += usize::from(
                common::is_proper(g, &c) || triflow_core::oracle::is_proper_coloring(g, &c),
            );
        }
        let t = find_spanning_tritree(g).unwrap();
        if let (_, Some(cert)) = decide_z3(g, &t).unwrap() {
            for tamper in 0..3 {
                let mut c = cert.clone();
                match tamper {
                    0 => c.target ^= 1,
                    1 if !c.steps.is_empty() => {
                        c.steps.pop();
                    }
                    _ => match c
                        .steps
                        .iter_mut()
                        .find(|s| matches!(s, Step::BullGrow { .. }))
                    {
                        Some(Step::BullGrow { consume_ab, .. }) => *consume_ab = !*consume_ab,
                        _ => continue,
                    },
                }
                corrupted += 1;
                bad += usize::from(verify_certificate(g, &c));
            }
        }
        if let Some(mut p) = z3_prove(g) {
            checked += 1;
            bad += usize::from(!verify_z3proof(g, &p));
            let mut steps = p.steps.clone();
            steps.pop();
            p = triflow_core::certify::Z3Proof::new(steps);
            corrupted += 1;
            bad += usize::from(verify_z3proof(g, &p));
        }
    }
    outcome(
        bad,
        format!("{checked} witnesses re-verified, {corrupted} corruptions rejected"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 10] = [
        ("3-flow decider agrees with the oracle", nzf_agreement),
        ("Z3 decider agrees with the oracle", z3_agreement),
        ("few 3-vertices imply a 3-flow", few_threes),
        ("crystals: parity and 3-colourability", crystals),
        ("two disjoint spanning triangle-trees give S3", two_trees),
        (
            "removable sets: bound, 2-edge-connectivity, maximality",
            removable_sets,
        ),
        (
            "bull reductions keep 3-flow and Z3 status",
            bull_round_trips,
        ),
        ("2-sums of non-Z3 graphs stay non-Z3", two_sums),
        ("fully 2-summed odd wheels", wheel_witnesses),
        ("witness integrity", witnesses),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} {}: {name} ({}; {:.1}s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
