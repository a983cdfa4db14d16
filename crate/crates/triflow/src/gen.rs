//! Graph families for the `gen` command. Random families draw from a
//! ChaCha stream seeded by the caller, so output is reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triflow_core::certify::{bull_grow, GrowSite};
use triflow_core::tritree::{gen_book, gen_crystal, gen_fan, gen_wheel, TriTreeSeq};
use triflow_core::{EdgeId, Error, Multigraph, Result, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Wheel {
        k: usize,
    },
    K4,
    /// A random triangle-path on `n` vertices closed into a crystal.
    Crystal {
        n: usize,
        seed: u64,
    },
    Book {
        n: usize,
    },
    Fan {
        n: usize,
    },
    /// `steps` edge-consuming bull-growings from `K4`.
    Bullgrown {
        steps: usize,
        seed: u64,
    },
    /// One random triangle-tree plus `extra` random edges.
    Random2Tree {
        n: usize,
        extra: usize,
        seed: u64,
    },
    /// Two random triangle-trees on the same vertices, edge-disjoint.
    Double2Tree {
        n: usize,
        seed: u64,
    },
}

pub fn generate(f: &Family) -> Result<Multigraph> {
    match *f {
        Family::Wheel { k } => gen_wheel(k),
        Family::K4 => gen_wheel(3),
        Family::Crystal { n, seed } => Ok(gen_crystal(&random_triangle_path(n, &mut rng(seed))?)?
            .graph()
            .clone()),
        Family::Book { n } => gen_book(n),
        Family::Fan { n } => gen_fan(n),
        Family::Bullgrown { steps, seed } => bullgrown(steps, &mut rng(seed)),
        Family::Random2Tree { n, extra, seed } => random_2tree(n, extra, &mut rng(seed)),
        Family::Double2Tree { n, seed } => double_2tree(n, &mut rng(seed)),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn name(i: usize) -> String {
    i.to_string()
}

/// A triangle-tree on `0..n` where each new vertex lands on a uniformly
/// chosen edge of the tree so far.
pub fn random_tritree(n: usize, rng: &mut impl Rng) -> Result<(TriTreeSeq, Multigraph)> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "a triangle-tree needs at least 3 vertices",
        ));
    }
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (0, 2)];
    let mut attach: Vec<(String, String, String)> = Vec::new();
    for k in 3..n {
        let (y, z) = edges[rng.gen_range(0..edges.len())];
        attach.push((name(k), name(y), name(z)));
        edges.extend([(k, y), (k, z)]);
    }
    build(&attach)
}

fn build(attach: &[(String, String, String)]) -> Result<(TriTreeSeq, Multigraph)> {
    let refs: Vec<(&str, &str, &str)> = attach
        .iter()
        .map(|(x, y, z)| (x.as_str(), y.as_str(), z.as_str()))
        .collect();
    TriTreeSeq::build(["0", "1", "2"], &refs)
}

/// A triangle-path on `0..n`: each new vertex lands on an edge of the
/// newest triangle that contains the previous vertex.
pub fn random_triangle_path(n: usize, rng: &mut impl Rng) -> Result<TriTreeSeq> {
    if n < 4 {
        return Err(Error::InvalidParameter(
            "a crystal needs at least 4 vertices",
        ));
    }
    let mut last = (2usize, [0usize, 1]);
    let mut attach = Vec::new();
    for k in 3..n {
        let (prev, others) = last;
        let keep = others[rng.gen_range(0..2)];
        attach.push((name(k), name(prev), name(keep)));
        last = (k, [prev, keep]);
    }
    Ok(build(&attach)?.0)
}

pub fn random_2tree(n: usize, extra: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    let (_, mut g) = random_tritree(n, rng)?;
    for _ in 0..extra {
        let a = rng.gen_range(0..n);
        let b = (a + rng.gen_range(1..n)) % n;
        g.add_fresh_edge(name(a).into(), name(b).into())?;
    }
    Ok(g)
}

pub fn double_2tree(n: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    if n < 4 {
        return Err(Error::InvalidParameter(
            "two spanning triangle-trees need at least 4 vertices",
        ));
    }
    let (_, mut g) = random_tritree(n, rng)?;
    let (_, h) = random_tritree(n, rng)?;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let m = |v: &VertexId| {
        VertexId::new(name(
            perm[v.as_str().parse::<usize>().expect("numeric names")],
        ))
    };
    for (_, u, v) in h.edges() {
        g.add_fresh_edge(m(u), m(v))?;
    }
    Ok(g)
}

pub fn bullgrown(steps: usize, rng: &mut impl Rng) -> Result<Multigraph> {
    let mut g = gen_wheel(3)?;
    for _ in 0..steps {
        let ids: Vec<EdgeId> = g.edge_ids().cloned().collect();
        let e = ids[rng.gen_range(0..ids.len())].clone();
        let vs: Vec<VertexId> = g.vertices().cloned().collect();
        let w = vs[rng.gen_range(0..vs.len())].clone();
        g = bull_grow(&g, &GrowSite::Edge(e), &w)?.0;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use triflow_core::tritree::{find_spanning_tritree, find_two_disjoint_spanning_tritrees};

    #[test]
    fn seeds_reproduce() {
        for f in [
            Family::Random2Tree {
                n: 7,
                extra: 3,
                seed: 5,
            },
            Family::Double2Tree { n: 6, seed: 1 },
            Family::Bullgrown { steps: 3, seed: 7 },
        ] {
            assert_eq!(generate(&f).unwrap(), generate(&f).unwrap());
        }
        assert_ne!(
            generate(&Family::Random2Tree {
                n: 8,
                extra: 0,
                seed: 1
            })
            .unwrap(),
            generate(&Family::Random2Tree {
                n: 8,
                extra: 0,
                seed: 2
            })
            .unwrap()
        );
    }

    #[test]
    fn families_have_their_shape() {
        let g = generate(&Family::Bullgrown { steps: 3, seed: 7 }).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (10, 18));
        let d = generate(&Family::Double2Tree { n: 5, seed: 1 }).unwrap();
        assert!(find_two_disjoint_spanning_tritrees(&d).is_some());
        for seed in 0..20 {
            let r = generate(&Family::Random2Tree {
                n: 7,
                extra: 2,
                seed,
            })
            .unwrap();
            assert!(find_spanning_tritree(&r).is_some());
            let c = generate(&Family::Crystal { n: 7, seed }).unwrap();
            assert_eq!(c.edge_count(), 2 * 7 - 2);
        }
    }

    #[test]
    fn bad_parameters_are_errors() {
        assert!(generate(&Family::Crystal { n: 3, seed: 0 }).is_err());
        assert!(generate(&Family::Double2Tree { n: 3, seed: 0 }).is_err());
        assert!(generate(&Family::Wheel { k: 2 }).is_err());
    }
}
