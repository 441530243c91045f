//! Per-MAG recursive labeling.
//!
//! Vertices are ranked in mixed radix with the rightmost coordinate varying
//! fastest. Edges `{u, v}` with ranks `a < b` are indexed row by row through
//! the strictly upper triangle of the `N x N` adjacency matrix:
//! `j = (a-1)N - a(a-1)/2 + (b-a)`.

use std::fmt;

use crate::error::MagError;
use crate::mag::{
    num_possible_edges, num_vertices, CompanionTuple, CompositeEdge, CompositeVertex, VertexIter,
};
use crate::natural::{self, lift, Natural};

/// A 1-based composite-edge index, or the invalid marker printed as `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeIndex<N> {
    Invalid,
    Index(N),
}

impl<N> EdgeIndex<N> {
    pub fn into_option(self) -> Option<N> {
        match self {
            EdgeIndex::Index(j) => Some(j),
            EdgeIndex::Invalid => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, EdgeIndex::Index(_))
    }
}

impl<N: fmt::Display> fmt::Display for EdgeIndex<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeIndex::Index(j) => j.fmt(f),
            EdgeIndex::Invalid => f.write_str("0"),
        }
    }
}

/// Rank of `v` in `1..=N`.
pub fn vertex_rank<N: Natural>(v: &CompositeVertex, tau: &CompanionTuple) -> Result<N, MagError> {
    tau.check(v)?;
    let offset = v
        .coords()
        .iter()
        .zip(tau.sizes())
        .try_fold(N::zero(), |acc, (&a, &n)| {
            natural::add(&natural::mul(&acc, &lift::<N>(n)?)?, &lift::<N>(a - 1)?)
        })?;
    natural::add(&offset, &N::one())
}

/// Inverse of [`vertex_rank`].
pub fn rank_vertex<N: Natural>(r: &N, tau: &CompanionTuple) -> Result<CompositeVertex, MagError> {
    let total = num_vertices::<N>(tau)?;
    if r.is_zero() || r > &total {
        return Err(MagError::IndexOutOfRange {
            index: r.to_string(),
            max: total.to_string(),
        });
    }
    let mut rest = r.clone() - N::one();
    let mut coords = vec![0; tau.order()];
    for (slot, &n) in coords.iter_mut().zip(tau.sizes()).rev() {
        let n = lift::<N>(n)?;
        *slot = natural::to_u64(&(rest.clone() % n.clone()))? + 1;
        rest = rest / n;
    }
    Ok(CompositeVertex::new(coords))
}

/// First index of row `a`: `(a-1)N - a(a-1)/2 + 1`.
fn row_start<N: Natural>(a: &N, n: &N) -> Result<N, MagError> {
    let before = natural::mul(&(a.clone() - N::one()), n)?;
    natural::add(&natural::sub(&before, &natural::pairs(a)?)?, &N::one())
}

/// Index of the pair with vertex ranks `a < b` among `n` vertices.
pub fn pair_index<N: Natural>(a: &N, b: &N, n: &N) -> Result<N, MagError> {
    debug_assert!(a < b && b <= n);
    natural::add(&row_start(a, n)?, &(b.clone() - a.clone() - N::one()))
}

/// Inverse of [`pair_index`]: the ranks `(a, b)` of index `j` in `1..=n(n-1)/2`.
pub fn index_pair<N: Natural>(j: &N, n: &N) -> Result<(N, N), MagError> {
    let mut lo = N::one();
    let mut hi = n.clone() - N::one();
    let two = lift::<N>(2)?;
    while lo < hi {
        let mid = (lo.clone() + hi.clone() + N::one()) / two.clone();
        if &row_start(&mid, n)? <= j {
            lo = mid;
        } else {
            hi = mid - N::one();
        }
    }
    let start = row_start(&lo, n)?;
    let b = natural::add(&lo, &natural::add(&(j.clone() - start), &N::one())?)?;
    Ok((lo, b))
}

/// Index of `{u, v}`; invalid when an endpoint lies outside `tau` or `u == v`.
pub fn edge_index<N: Natural>(
    u: &CompositeVertex,
    v: &CompositeVertex,
    tau: &CompanionTuple,
) -> Result<EdgeIndex<N>, MagError> {
    if !tau.contains(u) || !tau.contains(v) || u == v {
        return Ok(EdgeIndex::Invalid);
    }
    let ru = vertex_rank::<N>(u, tau)?;
    let rv = vertex_rank::<N>(v, tau)?;
    let (a, b) = if ru < rv { (ru, rv) } else { (rv, ru) };
    let n = num_vertices::<N>(tau)?;
    pair_index(&a, &b, &n).map(EdgeIndex::Index)
}

/// Index of an edge already known to be well formed.
pub fn edge_index_of<N: Natural>(e: &CompositeEdge, tau: &CompanionTuple) -> Result<EdgeIndex<N>, MagError> {
    edge_index(e.lo(), e.hi(), tau)
}

/// The edge with index `j`, or `None` (the `<0>` marker) outside `1..=M`.
pub fn index_edge<N: Natural>(j: &N, tau: &CompanionTuple) -> Result<Option<CompositeEdge>, MagError> {
    let m = num_possible_edges::<N>(tau)?;
    if j.is_zero() || j > &m {
        return Ok(None);
    }
    let n = num_vertices::<N>(tau)?;
    let (a, b) = index_pair(j, &n)?;
    let e = CompositeEdge::new(rank_vertex(&a, tau)?, rank_vertex(&b, tau)?)?;
    Ok(Some(e))
}

/// All possible edges of `tau` in ascending index order.
pub fn edge_sequence(tau: &CompanionTuple) -> EdgeSequence {
    EdgeSequence {
        vertices: VertexIter::new(tau).collect(),
        a: 0,
        b: 1,
    }
}

#[derive(Debug, Clone)]
pub struct EdgeSequence {
    vertices: Vec<CompositeVertex>,
    a: usize,
    b: usize,
}

impl Iterator for EdgeSequence {
    type Item = CompositeEdge;

    fn next(&mut self) -> Option<CompositeEdge> {
        if self.b >= self.vertices.len() {
            self.a += 1;
            self.b = self.a + 1;
            if self.b >= self.vertices.len() {
                return None;
            }
        }
        let e = CompositeEdge::new(self.vertices[self.a].clone(), self.vertices[self.b].clone())
            .expect("distinct vertices of one tuple");
        self.b += 1;
        Some(e)
    }
}
