//! Topological checks on MAGs: degrees, disjoint 2-paths, composite
//! diameter, the least-neighbor star property, and rigidity.
//!
//! Everything runs on a bitset adjacency over vertex ranks, so MAGs with
//! more than 2^16 composite vertices are refused.

mod automorphism;
mod bitgraph;

use std::fmt;

use num_traits::{Float, FromPrimitive};
use rand::RngCore;
use rayon::prelude::*;

pub use bitgraph::{BitGraph, MAX_VERTICES};

use crate::error::MagError;
use crate::mag::{CompanionTuple, CompositeEdge, CompositeVertex, Mag, VertexIter};
use crate::ordering::vertex_rank;
use crate::rng;

/// Default vertex limit for [`find_nontrivial_automorphism`].
pub const DEFAULT_SEARCH_LIMIT: u64 = 1 << 10;

fn index_of(g: &Mag, v: &CompositeVertex) -> Result<usize, MagError> {
    Ok(vertex_rank::<u64>(v, g.tau())? as usize - 1)
}

pub fn degree(g: &Mag, v: &CompositeVertex) -> Result<usize, MagError> {
    g.tau().check(v)?;
    Ok(g.edges().iter().filter(|e| e.contains(v)).count())
}

/// Largest deviation of a degree from `(N-1)/2`, against `c * sqrt(N (delta + lg N))`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeDeviation<F> {
    pub max_deviation: F,
    pub bound: F,
}

impl<F: Float> DegreeDeviation<F> {
    pub fn holds(&self) -> bool {
        self.max_deviation <= self.bound
    }
}

pub fn degree_deviation_report<F: Float + FromPrimitive>(
    g: &Mag,
    c: F,
    delta: F,
) -> Result<DegreeDeviation<F>, MagError> {
    let graph = BitGraph::from_mag(g)?;
    degree_deviation(&graph, c, delta)
}

fn degree_deviation<F: Float + FromPrimitive>(
    graph: &BitGraph,
    c: F,
    delta: F,
) -> Result<DegreeDeviation<F>, MagError> {
    let n = graph.n();
    if n < 2 {
        return Err(MagError::InvalidParameter(format!(
            "degree deviation needs at least 2 vertices, got {n}"
        )));
    }
    let nf = F::from_usize(n).expect("vertex count fits a float");
    let mean = (nf - F::one()) / F::from_u8(2).expect("2 fits");
    let max_deviation = (0..n)
        .map(|v| (F::from_usize(graph.degree(v)).expect("degree fits") - mean).abs())
        .fold(F::zero(), F::max);
    let bound = c * (nf * (delta + nf.log2())).sqrt();
    Ok(DegreeDeviation {
        max_deviation,
        bound,
    })
}

/// Number of internally disjoint paths `u - i - v` of length 2.
pub fn two_path_count(g: &Mag, u: &CompositeVertex, v: &CompositeVertex) -> Result<usize, MagError> {
    g.tau().check(u)?;
    g.tau().check(v)?;
    if u == v {
        return Err(MagError::SelfPair {
            vertex: u.to_string(),
        });
    }
    let graph = BitGraph::from_mag(g)?;
    Ok(graph.common(index_of(g, u)?, index_of(g, v)?))
}

/// Minimum and maximum 2-path counts over all unordered pairs.
fn two_path_extremes(graph: &BitGraph) -> Option<(usize, usize)> {
    (0..graph.n())
        .into_par_iter()
        .filter_map(|a| {
            (a + 1..graph.n())
                .map(|b| graph.common(a, b))
                .fold(None, |acc: Option<(usize, usize)>, c| {
                    Some(acc.map_or((c, c), |(lo, hi)| (lo.min(c), hi.max(c))))
                })
        })
        .reduce_with(|x, y| (x.0.min(y.0), x.1.max(y.1)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

impl fmt::Display for Diameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diameter::Finite(d) => d.fmt(f),
            Diameter::Disconnected => f.write_str("disconnected"),
        }
    }
}

pub fn composite_diameter(g: &Mag) -> Result<Diameter, MagError> {
    Ok(diameter(&BitGraph::from_mag(g)?))
}

fn diameter(graph: &BitGraph) -> Diameter {
    let eccentricities: Vec<Option<usize>> = (0..graph.n())
        .into_par_iter()
        .map(|src| {
            graph
                .bfs(src)
                .into_iter()
                .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
        })
        .collect();
    eccentricities
        .into_iter()
        .try_fold(0, |acc, e| e.map(|e| acc.max(e)))
        .map_or(Diameter::Disconnected, Diameter::Finite)
}

/// The first `min(k, degree(v))` neighbors of `v` in rank order.
pub fn least_neighbors(g: &Mag, v: &CompositeVertex, k: usize) -> Result<Vec<CompositeVertex>, MagError> {
    g.tau().check(v)?;
    let mut around: Vec<&CompositeVertex> = g
        .edges()
        .iter()
        .filter_map(|e| {
            if e.lo() == v {
                Some(e.hi())
            } else if e.hi() == v {
                Some(e.lo())
            } else {
                None
            }
        })
        .collect();
    around.sort();
    Ok(around.into_iter().take(k).cloned().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarCheck {
    pub holds: bool,
    /// First ordered pair `(u, v)` in rank order that violates the property.
    pub counterexample: Option<(CompositeVertex, CompositeVertex)>,
}

/// Every non-adjacent ordered pair `(u, v)` has a common neighbor among the
/// `k` least neighbors of `v`.
pub fn star_property_check(g: &Mag, k: usize) -> Result<StarCheck, MagError> {
    if k == 0 {
        return Err(MagError::InvalidParameter("star property needs k >= 1".into()));
    }
    let graph = BitGraph::from_mag(g)?;
    let violation = star_violation(&graph, k);
    let table = bitgraph::vertex_table(g);
    Ok(StarCheck {
        holds: violation.is_none(),
        counterexample: violation.map(|(u, v)| (table[u].clone(), table[v].clone())),
    })
}

fn star_violation(graph: &BitGraph, k: usize) -> Option<(usize, usize)> {
    let least: Vec<Vec<usize>> = (0..graph.n())
        .map(|v| graph.neighbors(v).take(k).collect())
        .collect();
    (0..graph.n())
        .into_par_iter()
        .filter_map(|u| {
            (0..graph.n()).find_map(|v| {
                let ok = u == v
                    || graph.has_edge(u, v)
                    || least[v].iter().any(|&i| graph.has_edge(u, i));
                (!ok).then_some((u, v))
            })
        })
        .min()
}

/// A non-identity adjacency-preserving permutation as the image of each
/// vertex in rank order, or `None` when the MAG is rigid.
pub fn find_nontrivial_automorphism(g: &Mag, limit: u64) -> Result<Option<Vec<CompositeVertex>>, MagError> {
    let n: u64 = crate::mag::num_vertices::<u64>(g.tau()).unwrap_or(u64::MAX);
    if n > limit {
        return Err(MagError::SearchLimitExceeded { n, limit });
    }
    let graph = BitGraph::from_mag(g)?;
    let table = bitgraph::vertex_table(g);
    Ok(automorphism::nontrivial_automorphism(&graph).map(|perm| {
        assert!(automorphism::preserves_edges(&graph, &perm));
        perm.into_iter().map(|i| table[i].clone()).collect()
    }))
}

/// Checks that `images` (indexed by rank - 1) is a non-identity automorphism of `g`.
pub fn is_nontrivial_automorphism(g: &Mag, images: &[CompositeVertex]) -> Result<bool, MagError> {
    let graph = BitGraph::from_mag(g)?;
    if images.len() != graph.n() {
        return Ok(false);
    }
    let perm = images
        .iter()
        .map(|v| index_of(g, v))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = vec![false; perm.len()];
    for &p in &perm {
        if std::mem::replace(&mut seen[p], true) {
            return Ok(false);
        }
    }
    let moved = perm.iter().enumerate().any(|(i, &p)| i != p);
    Ok(moved && automorphism::preserves_edges(&graph, &perm))
}

pub(crate) fn sample_mag<R: RngCore>(tau: &CompanionTuple, rng: &mut R, density: f64) -> Mag {
    let vertices: Vec<CompositeVertex> = VertexIter::new(tau).collect();
    let mut g = Mag::empty(tau.clone());
    for a in 0..vertices.len() {
        for b in a + 1..vertices.len() {
            if rng::bernoulli(rng, density) {
                let e = CompositeEdge::new(vertices[a].clone(), vertices[b].clone()).expect("distinct");
                g.insert(e).expect("vertices of tau");
            }
        }
    }
    g
}

/// Each possible edge present independently with probability `density`,
/// drawn in index order from the seeded generator.
pub fn random_mag(tau: &CompanionTuple, seed: u64, density: f64) -> Result<Mag, MagError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(MagError::InvalidParameter(format!(
            "density must lie in [0, 1], got {density}"
        )));
    }
    let n = crate::mag::num_vertices::<u64>(tau).unwrap_or(u64::MAX);
    if n > MAX_VERTICES {
        return Err(MagError::TooLarge { n, limit: MAX_VERTICES });
    }
    Ok(sample_mag(tau, &mut rng::generator(seed), density))
}

/// Parameters for [`topology_report`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TopologyParams<F> {
    /// Constant in the degree bound.
    pub c: F,
    /// Randomness deficiency in the degree bound.
    pub delta: F,
    /// Star threshold; `None` means `ceil((lg N)^2)`.
    pub k: Option<usize>,
    pub search_limit: u64,
}

impl<F: Float + FromPrimitive> Default for TopologyParams<F> {
    fn default() -> Self {
        Self {
            c: F::from_u8(2).expect("2 fits"),
            delta: F::zero(),
            k: None,
            search_limit: DEFAULT_SEARCH_LIMIT,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TopologyReport<F> {
    pub n_vertices: usize,
    pub edge_count: usize,
    pub degree: Option<DegreeDeviation<F>>,
    pub diameter: Diameter,
    /// Extremes over unordered pairs; `None` when `N < 2`.
    pub two_paths: Option<(usize, usize)>,
    pub star_k: usize,
    pub star: StarCheck,
    /// `None` when the vertex count exceeds the search limit.
    pub rigid: Option<bool>,
    pub witness_automorphism: Option<Vec<CompositeVertex>>,
}

pub fn default_star_threshold(n: usize) -> usize {
    if n < 2 {
        return 1;
    }
    let lg = (n as f64).log2();
    ((lg * lg).ceil() as usize).max(1)
}

pub fn topology_report<F: Float + FromPrimitive>(
    g: &Mag,
    params: &TopologyParams<F>,
) -> Result<TopologyReport<F>, MagError> {
    let graph = BitGraph::from_mag(g)?;
    let n = graph.n();
    let degree = if n >= 2 {
        Some(degree_deviation(&graph, params.c, params.delta)?)
    } else {
        None
    };
    let star_k = params.k.unwrap_or_else(|| default_star_threshold(n));
    let star = star_property_check(g, star_k)?;
    let (rigid, witness) = match find_nontrivial_automorphism(g, params.search_limit) {
        Ok(found) => (Some(found.is_none()), found),
        Err(MagError::SearchLimitExceeded { .. }) => (None, None),
        Err(e) => return Err(e),
    };
    Ok(TopologyReport {
        n_vertices: n,
        edge_count: g.edge_count(),
        degree,
        diameter: diameter(&graph),
        two_paths: two_path_extremes(&graph),
        star_k,
        star,
        rigid,
        witness_automorphism: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::char_string_to_mag;

    fn t(s: &[u64]) -> CompanionTuple {
        CompanionTuple::new(s.to_vec()).unwrap()
    }

    fn v1(a: u64) -> CompositeVertex {
        CompositeVertex::new(vec![a])
    }

    fn line(n: u64, edges: &[(u64, u64)]) -> Mag {
        crate::mag::validate_mag(t(&[n]), edges.iter().map(|&(a, b)| (v1(a), v1(b)))).unwrap()
    }

    fn complete(tau: CompanionTuple) -> Mag {
        random_mag(&tau, 0, 1.0).unwrap()
    }

    #[test]
    fn degree_examples() {
        let k = complete(t(&[2, 2]));
        for v in k.vertices() {
            assert_eq!(degree(&k, &v).unwrap(), 3);
        }
        let e = Mag::empty(t(&[2, 2]));
        assert_eq!(degree(&e, &CompositeVertex::from([1, 2])).unwrap(), 0);
        let p3 = line(3, &[(1, 2), (2, 3)]);
        assert_eq!(degree(&p3, &v1(2)).unwrap(), 2);
        assert!(matches!(degree(&p3, &v1(4)), Err(MagError::CoordOutOfRange { .. })));
    }

    #[test]
    fn degree_deviation_examples() {
        let k = complete(t(&[4]));
        let r = degree_deviation_report::<f64>(&k, 2.0, 0.0).unwrap();
        assert_eq!(r.max_deviation, 1.5);
        assert_eq!(r.bound, 2.0 * (4.0f64 * 2.0).sqrt());
        let e = Mag::empty(t(&[4]));
        assert_eq!(degree_deviation_report::<f32>(&e, 2.0, 0.0).unwrap().max_deviation, 1.5);
        assert!(degree_deviation_report::<f64>(&Mag::empty(t(&[1])), 2.0, 0.0).is_err());
    }

    #[test]
    fn two_path_examples() {
        let c4 = line(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert_eq!(two_path_count(&c4, &v1(1), &v1(3)).unwrap(), 2);
        assert_eq!(two_path_count(&Mag::empty(t(&[4])), &v1(1), &v1(3)).unwrap(), 0);
        let k5 = complete(t(&[5]));
        assert_eq!(two_path_count(&k5, &v1(2), &v1(4)).unwrap(), 3);
        assert!(matches!(
            two_path_count(&k5, &v1(2), &v1(2)),
            Err(MagError::SelfPair { .. })
        ));
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(composite_diameter(&complete(t(&[3, 2]))).unwrap(), Diameter::Finite(1));
        assert_eq!(composite_diameter(&line(3, &[(1, 2), (2, 3)])).unwrap(), Diameter::Finite(2));
        assert_eq!(composite_diameter(&line(3, &[(1, 2)])).unwrap(), Diameter::Disconnected);
        assert_eq!(composite_diameter(&Mag::empty(t(&[1]))).unwrap(), Diameter::Finite(0));
        assert_eq!(Diameter::Disconnected.to_string(), "disconnected");
    }

    #[test]
    fn least_neighbor_examples() {
        let k4 = complete(t(&[4]));
        assert_eq!(least_neighbors(&k4, &v1(3), 2).unwrap(), vec![v1(1), v1(2)]);
        assert!(least_neighbors(&Mag::empty(t(&[4])), &v1(3), 2).unwrap().is_empty());
        let p3 = line(3, &[(1, 2), (2, 3)]);
        assert_eq!(least_neighbors(&p3, &v1(2), 5).unwrap(), vec![v1(1), v1(3)]);
    }

    #[test]
    fn star_examples() {
        assert!(star_property_check(&complete(t(&[5])), 1).unwrap().holds);
        let two = line(4, &[(1, 2), (3, 4)]);
        let check = star_property_check(&two, 4).unwrap();
        assert!(!check.holds);
        assert_eq!(check.counterexample, Some((v1(1), v1(3))));
        assert!(star_property_check(&two, 0).is_err());
    }

    #[test]
    fn automorphism_examples() {
        let c4 = line(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        let perm = find_nontrivial_automorphism(&c4, DEFAULT_SEARCH_LIMIT).unwrap().unwrap();
        assert!(is_nontrivial_automorphism(&c4, &perm).unwrap());
        let e3 = Mag::empty(t(&[3]));
        let perm = find_nontrivial_automorphism(&e3, DEFAULT_SEARCH_LIMIT).unwrap().unwrap();
        assert!(is_nontrivial_automorphism(&e3, &perm).unwrap());
        let big = Mag::empty(t(&[33, 33]));
        assert!(matches!(
            find_nontrivial_automorphism(&big, DEFAULT_SEARCH_LIMIT),
            Err(MagError::SearchLimitExceeded { n: 1089, limit: 1024 })
        ));
        let identity: Vec<_> = c4.vertices().collect();
        assert!(!is_nontrivial_automorphism(&c4, &identity).unwrap());
    }

    #[test]
    fn random_mag_extremes() {
        let tau = t(&[3, 3]);
        assert_eq!(random_mag(&tau, 5, 0.0).unwrap().edge_count(), 0);
        assert_eq!(random_mag(&tau, 5, 1.0).unwrap().edge_count(), 36);
        assert!(random_mag(&tau, 5, 1.5).is_err());
        assert_eq!(random_mag(&tau, 9, 0.5).unwrap(), random_mag(&tau, 9, 0.5).unwrap());
    }

    #[test]
    fn report_on_small_graphs() {
        let p3 = char_string_to_mag(&"101".parse().unwrap(), &t(&[3])).unwrap();
        let r = topology_report::<f64>(&p3, &TopologyParams::default()).unwrap();
        assert_eq!(r.n_vertices, 3);
        assert_eq!(r.edge_count, 2);
        assert_eq!(r.diameter, Diameter::Finite(2));
        assert_eq!(r.two_paths, Some((0, 1)));
        assert_eq!(r.rigid, Some(false));
        assert_eq!(r.star_k, 3);
    }
}
