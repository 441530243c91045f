//! Literal, deliberately slow oracles and seeded generators for tests.
//!
//! Nothing here shares code with the closed forms under test: edge orders
//! are produced by generating every ordered pair and filtering, family orders
//! by appending whole per-size sequences, automorphisms by trying every
//! permutation.

use std::collections::HashSet;

use itertools::Itertools;
use magc_core::family::FamilySpec;
use magc_core::{CompanionTuple, CompositeEdge, CompositeVertex, Mag};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub const EDGE_ORACLE_LIMIT: usize = 200;
pub const AUTOMORPHISM_ORACLE_LIMIT: usize = 7;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle limit exceeded: {n} vertices > {limit}")]
    LimitExceeded { n: usize, limit: usize },
}

/// Composite vertices in the order built by fixing the leftmost coordinates
/// and arranging the rightmost ones, recursively.
pub fn oracle_vertices(sizes: &[u64]) -> Vec<Vec<u64>> {
    match sizes.split_first() {
        None => vec![vec![]],
        Some((&first, rest)) => {
            let tails = oracle_vertices(rest);
            (1..=first)
                .flat_map(|a| {
                    tails.iter().map(move |t| {
                        let mut v = vec![a];
                        v.extend_from_slice(t);
                        v
                    })
                })
                .collect()
        }
    }
}

fn vertex_count(sizes: &[u64]) -> usize {
    sizes.iter().map(|&n| n as usize).product()
}

/// The lexicographic sequence of ordered vertex pairs with self-loops and
/// second symmetric occurrences removed.
pub fn oracle_edge_sequence(tau: &CompanionTuple) -> Result<Vec<CompositeEdge>, OracleError> {
    let n = vertex_count(tau.sizes());
    if n > EDGE_ORACLE_LIMIT {
        return Err(OracleError::LimitExceeded {
            n,
            limit: EDGE_ORACLE_LIMIT,
        });
    }
    let vertices = oracle_vertices(tau.sizes());
    let mut emitted: HashSet<(Vec<u64>, Vec<u64>)> = HashSet::new();
    let mut seq = Vec::new();
    for x in &vertices {
        for y in &vertices {
            if x == y || emitted.contains(&(y.clone(), x.clone())) {
                continue;
            }
            emitted.insert((x.clone(), y.clone()));
            seq.push(
                CompositeEdge::new(CompositeVertex::new(x.clone()), CompositeVertex::new(y.clone()))
                    .expect("distinct vertices"),
            );
        }
    }
    Ok(seq)
}

/// Per-MAG sequences of sizes `n0..=s_max`, each appending only the edges
/// not already present.
pub fn oracle_family_sequence(spec: &FamilySpec, s_max: u64) -> Result<Vec<CompositeEdge>, OracleError> {
    let mut seen = HashSet::new();
    let mut seq = Vec::new();
    for s in spec.n0()..=s_max {
        let tau = CompanionTuple::uniform(spec.order(), s).expect("positive size");
        for e in oracle_edge_sequence(&tau)? {
            if seen.insert(e.clone()) {
                seq.push(e);
            }
        }
    }
    Ok(seq)
}

/// Every adjacency-preserving permutation, identity included, as vertex images
/// in oracle vertex order.
pub fn oracle_automorphisms(g: &Mag) -> Result<Vec<Vec<CompositeVertex>>, OracleError> {
    let vertices: Vec<CompositeVertex> = oracle_vertices(g.tau().sizes())
        .into_iter()
        .map(CompositeVertex::new)
        .collect();
    let n = vertices.len();
    if n > AUTOMORPHISM_ORACLE_LIMIT {
        return Err(OracleError::LimitExceeded {
            n,
            limit: AUTOMORPHISM_ORACLE_LIMIT,
        });
    }
    let adjacent = |a: usize, b: usize| g.is_adjacent(&vertices[a], &vertices[b]);
    Ok((0..n)
        .permutations(n)
        .filter(|perm| {
            (0..n).all(|a| (0..n).all(|b| a == b || adjacent(a, b) == adjacent(perm[a], perm[b])))
        })
        .map(|perm| perm.into_iter().map(|i| vertices[i].clone()).collect())
        .collect())
}

/// Seeded generator for test inputs (separate from the library's generator).
pub fn test_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random companion tuple of order 1..=3 with at most `max_vertices` vertices.
pub fn random_tau<R: Rng>(rng: &mut R, max_vertices: u64) -> CompanionTuple {
    loop {
        let p = rng.gen_range(1..=3);
        let sizes: Vec<u64> = (0..p).map(|_| rng.gen_range(1..=max_vertices.min(16))).collect();
        if sizes.iter().product::<u64>() <= max_vertices {
            return CompanionTuple::new(sizes).expect("positive sizes");
        }
    }
}

/// A random edge set on `tau`, each oracle edge kept with probability `density`.
pub fn random_edges<R: Rng>(rng: &mut R, tau: &CompanionTuple, density: f64) -> Mag {
    let vertices: Vec<CompositeVertex> = oracle_vertices(tau.sizes())
        .into_iter()
        .map(CompositeVertex::new)
        .collect();
    let mut g = Mag::empty(tau.clone());
    for (i, u) in vertices.iter().enumerate() {
        for v in &vertices[i + 1..] {
            if rng.gen_bool(density) {
                g.insert(CompositeEdge::new(u.clone(), v.clone()).expect("distinct"))
                    .expect("inside tau");
            }
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &[u64]) -> CompanionTuple {
        CompanionTuple::new(s.to_vec()).unwrap()
    }

    fn names(seq: &[CompositeEdge]) -> Vec<String> {
        seq.iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn edge_sequence_examples() {
        assert_eq!(names(&oracle_edge_sequence(&t(&[2])).unwrap()), ["(1)-(2)"]);
        let s = oracle_edge_sequence(&t(&[2, 2])).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(s[0].to_string(), "(1,1)-(1,2)");
        assert_eq!(s[5].to_string(), "(2,1)-(2,2)");
        assert_eq!(
            names(&oracle_edge_sequence(&t(&[3])).unwrap()),
            ["(1)-(2)", "(1)-(3)", "(2)-(3)"]
        );
        assert!(oracle_edge_sequence(&t(&[15, 15])).is_err());
    }

    #[test]
    fn family_sequence_examples() {
        let spec = FamilySpec::new(1, 2).unwrap();
        assert_eq!(
            names(&oracle_family_sequence(&spec, 4).unwrap()),
            ["(1)-(2)", "(1)-(3)", "(2)-(3)", "(1)-(4)", "(2)-(4)", "(3)-(4)"]
        );
        assert_eq!(names(&oracle_family_sequence(&spec, 2).unwrap()), ["(1)-(2)"]);
        let spec = FamilySpec::new(2, 1).unwrap();
        assert_eq!(
            oracle_family_sequence(&spec, 2).unwrap(),
            oracle_edge_sequence(&t(&[2, 2])).unwrap()
        );
    }

    #[test]
    fn automorphism_examples() {
        let e3 = Mag::empty(t(&[3]));
        assert_eq!(oracle_automorphisms(&e3).unwrap().len(), 6);
        let v = |a: u64| CompositeVertex::new(vec![a]);
        let p3 = magc_core::validate_mag(t(&[3]), [(v(1), v(2)), (v(2), v(3))]).unwrap();
        assert_eq!(oracle_automorphisms(&p3).unwrap().len(), 2);
        let k3 = magc_core::validate_mag(t(&[3]), [(v(1), v(2)), (v(2), v(3)), (v(1), v(3))]).unwrap();
        assert_eq!(oracle_automorphisms(&k3).unwrap().len(), 6);
        assert!(oracle_automorphisms(&Mag::empty(t(&[8]))).is_err());
    }
}
