//! Domain types: companion tuples, composite vertices and edges, simple
//! MAGs and their classical-graph images.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::MagError;
use crate::natural::{self, Natural};

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// The tuple of aspect sizes `(n1, ..., np)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompanionTuple(Vec<u64>);

impl CompanionTuple {
    pub fn new(sizes: Vec<u64>) -> Result<Self, MagError> {
        if sizes.is_empty() {
            return Err(MagError::InvalidTuple("order p must be at least 1".into()));
        }
        if let Some(i) = sizes.iter().position(|&n| n == 0) {
            return Err(MagError::InvalidTuple(format!(
                "aspect {} has size 0",
                i + 1
            )));
        }
        Ok(Self(sizes))
    }

    /// `p` aspects of size `n` each.
    pub fn uniform(p: usize, n: u64) -> Result<Self, MagError> {
        Self::new(vec![n; p])
    }

    pub fn sizes(&self) -> &[u64] {
        &self.0
    }

    /// The order `p`.
    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: &CompositeVertex) -> bool {
        v.arity() == self.order()
            && v.coords().iter().zip(&self.0).all(|(&a, &n)| a >= 1 && a <= n)
    }

    pub(crate) fn check(&self, v: &CompositeVertex) -> Result<(), MagError> {
        if v.arity() != self.order() {
            return Err(MagError::ArityMismatch {
                context: format!("vertex {v}"),
                expected: self.order(),
                found: v.arity(),
            });
        }
        if !self.contains(v) {
            return Err(MagError::CoordOutOfRange {
                vertex: v.to_string(),
                tau: self.to_string(),
            });
        }
        Ok(())
    }

    /// All aspects share one size.
    pub fn uniform_size(&self) -> Option<u64> {
        let first = self.0[0];
        self.0.iter().all(|&n| n == first).then_some(first)
    }
}

impl fmt::Display for CompanionTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// A `p`-tuple of 1-based aspect coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeVertex(Vec<u64>);

impl CompositeVertex {
    pub fn new(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn max_coord(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl From<Vec<u64>> for CompositeVertex {
    fn from(coords: Vec<u64>) -> Self {
        Self(coords)
    }
}

impl<const P: usize> From<[u64; P]> for CompositeVertex {
    fn from(coords: [u64; P]) -> Self {
        Self(coords.to_vec())
    }
}

impl fmt::Display for CompositeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

/// An unordered pair of distinct composite vertices.
///
/// Endpoints are kept in lexicographic order, which coincides with vertex
/// rank order, so the derived `Ord` sorts edges by their per-MAG index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompositeEdge {
    lo: CompositeVertex,
    hi: CompositeVertex,
}

impl CompositeEdge {
    /// Builds the unordered pair `{u, v}`, checking shape only (no tuple bound).
    pub fn new(u: CompositeVertex, v: CompositeVertex) -> Result<Self, MagError> {
        if u.arity() != v.arity() {
            return Err(MagError::ArityMismatch {
                context: format!("edge {u}-{v}"),
                expected: u.arity(),
                found: v.arity(),
            });
        }
        if let Some(bad) = [&u, &v].into_iter().find(|w| w.coords().contains(&0)) {
            return Err(MagError::NonPositiveCoord {
                vertex: bad.to_string(),
            });
        }
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Self { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Self { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(MagError::SelfLoop {
                vertex: u.to_string(),
            }),
        }
    }

    /// The endpoint that precedes the other in vertex order.
    pub fn lo(&self) -> &CompositeVertex {
        &self.lo
    }

    pub fn hi(&self) -> &CompositeVertex {
        &self.hi
    }

    pub fn arity(&self) -> usize {
        self.lo.arity()
    }

    pub fn max_coord(&self) -> u64 {
        self.lo.max_coord().max(self.hi.max_coord())
    }

    pub fn contains(&self, v: &CompositeVertex) -> bool {
        &self.lo == v || &self.hi == v
    }
}

impl fmt::Display for CompositeEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A simple (undirected, loop-free) multiaspect graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mag {
    tau: CompanionTuple,
    edges: BTreeSet<CompositeEdge>,
}

impl Mag {
    pub fn empty(tau: CompanionTuple) -> Self {
        Self {
            tau,
            edges: BTreeSet::new(),
        }
    }

    /// Builds a MAG from already-validated edges.
    pub(crate) fn from_parts(tau: CompanionTuple, edges: BTreeSet<CompositeEdge>) -> Self {
        Self { tau, edges }
    }

    pub fn tau(&self) -> &CompanionTuple {
        &self.tau
    }

    /// Edges in canonical order (ascending per-MAG edge index).
    pub fn edges(&self) -> &BTreeSet<CompositeEdge> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, e: &CompositeEdge) -> bool {
        self.edges.contains(e)
    }

    pub fn is_adjacent(&self, u: &CompositeVertex, v: &CompositeVertex) -> bool {
        CompositeEdge::new(u.clone(), v.clone()).is_ok_and(|e| self.edges.contains(&e))
    }

    /// Adds an edge after validating it against the companion tuple.
    pub fn insert(&mut self, e: CompositeEdge) -> Result<bool, MagError> {
        self.tau.check(e.lo())?;
        self.tau.check(e.hi())?;
        Ok(self.edges.insert(e))
    }

    /// All composite vertices in rank order.
    pub fn vertices(&self) -> VertexIter {
        VertexIter::new(&self.tau)
    }
}

/// Iterates the vertex space of a companion tuple, rightmost coordinate fastest.
#[derive(Debug, Clone)]
pub struct VertexIter {
    sizes: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl VertexIter {
    pub fn new(tau: &CompanionTuple) -> Self {
        Self {
            sizes: tau.sizes().to_vec(),
            next: Some(vec![1; tau.order()]),
        }
    }
}

impl Iterator for VertexIter {
    type Item = CompositeVertex;

    fn next(&mut self) -> Option<CompositeVertex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            if succ[i] < self.sizes[i] {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 1;
        }
        Some(CompositeVertex(current))
    }
}

/// A labeled undirected graph on vertices `1..=n` without self-loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalGraph {
    n: u64,
    edges: BTreeSet<(u64, u64)>,
}

impl ClassicalGraph {
    /// Validates and normalizes the edge list; each pair is stored as `(min, max)`.
    pub fn new(n: u64, edges: impl IntoIterator<Item = (u64, u64)>) -> Result<Self, MagError> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(MagError::SelfLoop {
                    vertex: u.to_string(),
                });
            }
            if let Some(bad) = [u, v].into_iter().find(|&w| w == 0 || w > n) {
                return Err(MagError::CoordOutOfRange {
                    vertex: bad.to_string(),
                    tau: format!("(1..={n})"),
                });
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Self { n, edges: set })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(u64, u64)> {
        &self.edges
    }

    pub fn degree(&self, v: u64) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }
}

/// Validates an edge list against `tau`; symmetric duplicates collapse.
pub fn validate_mag<I>(tau: CompanionTuple, edges: I) -> Result<Mag, MagError>
where
    I: IntoIterator<Item = (CompositeVertex, CompositeVertex)>,
{
    let mut g = Mag::empty(tau);
    for (u, v) in edges {
        for w in [&u, &v] {
            g.tau.check(w).map_err(|e| match e {
                MagError::CoordOutOfRange { tau, .. } => MagError::CoordOutOfRange {
                    vertex: format!("{w} in edge {u}-{v}"),
                    tau,
                },
                MagError::ArityMismatch {
                    expected, found, ..
                } => MagError::ArityMismatch {
                    context: format!("edge {u}-{v}"),
                    expected,
                    found,
                },
                other => other,
            })?;
        }
        let e = CompositeEdge::new(u, v)?;
        g.edges.insert(e);
    }
    Ok(g)
}

/// `N = n1 * ... * np`.
pub fn num_vertices<N: Natural>(tau: &CompanionTuple) -> Result<N, MagError> {
    tau.sizes().iter().try_fold(N::one(), |acc, &n| {
        natural::mul(&acc, &natural::lift::<N>(n)?)
    })
}

/// `M = (N^2 - N) / 2`, the number of possible composite edges.
pub fn num_possible_edges<N: Natural>(tau: &CompanionTuple) -> Result<N, MagError> {
    natural::pairs(&num_vertices::<N>(tau)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn t(s: &[u64]) -> CompanionTuple {
        CompanionTuple::new(s.to_vec()).unwrap()
    }

    fn v(c: &[u64]) -> CompositeVertex {
        CompositeVertex::new(c.to_vec())
    }

    #[test]
    fn validate_examples() {
        let g = validate_mag(t(&[2, 2]), [(v(&[1, 1]), v(&[2, 2]))]).unwrap();
        assert_eq!(g.edge_count(), 1);

        let err = validate_mag(t(&[2, 2]), [(v(&[1, 1]), v(&[1, 1]))]).unwrap_err();
        assert!(matches!(err, MagError::SelfLoop { ref vertex } if vertex == "(1,1)"));

        let err = validate_mag(t(&[2, 2]), [(v(&[1, 1]), v(&[3, 1]))]).unwrap_err();
        match err {
            MagError::CoordOutOfRange { vertex, .. } => assert!(vertex.contains("(1,1)-(3,1)")),
            other => panic!("unexpected {other:?}"),
        }

        let err = validate_mag(t(&[2, 2]), [(v(&[1, 1]), v(&[1, 2, 1]))]).unwrap_err();
        assert!(matches!(err, MagError::ArityMismatch { .. }));
    }

    #[test]
    fn symmetric_duplicates_collapse() {
        let g = validate_mag(
            t(&[2, 2]),
            [(v(&[1, 2]), v(&[2, 1])), (v(&[2, 1]), v(&[1, 2]))],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn cardinalities() {
        assert_eq!(num_vertices::<u64>(&t(&[3, 2])).unwrap(), 6);
        assert_eq!(num_vertices::<u64>(&t(&[1, 1, 1])).unwrap(), 1);
        assert_eq!(num_vertices::<u64>(&t(&[16, 16])).unwrap(), 256);
        assert_eq!(num_possible_edges::<u64>(&t(&[2, 2])).unwrap(), 6);
        assert_eq!(num_possible_edges::<u64>(&t(&[1])).unwrap(), 0);
        assert_eq!(num_possible_edges::<u64>(&t(&[3, 2])).unwrap(), 15);
    }

    #[test]
    fn big_tuples_need_big_integers() {
        let tau = CompanionTuple::uniform(5, 1 << 16).unwrap();
        assert_eq!(num_vertices::<u64>(&tau), Err(MagError::Overflow));
        let n = num_vertices::<BigUint>(&tau).unwrap();
        assert_eq!(n, BigUint::from(1u8) << 80u32);
    }

    #[test]
    fn tuple_rejects_degenerate_input() {
        assert!(CompanionTuple::new(vec![]).is_err());
        assert!(CompanionTuple::new(vec![2, 0]).is_err());
    }

    #[test]
    fn vertex_iter_is_rightmost_fastest() {
        let all: Vec<String> = VertexIter::new(&t(&[2, 3])).map(|x| x.to_string()).collect();
        assert_eq!(
            all,
            ["(1,1)", "(1,2)", "(1,3)", "(2,1)", "(2,2)", "(2,3)"]
        );
    }

    #[test]
    fn classical_graph_validation() {
        assert!(ClassicalGraph::new(3, [(1, 1)]).is_err());
        assert!(ClassicalGraph::new(3, [(1, 4)]).is_err());
        let g = ClassicalGraph::new(3, [(2, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.degree(1), 1);
    }
}
