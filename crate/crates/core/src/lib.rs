//! Recursive labeling of multiaspect graphs (MAGs).
//!
//! A simple MAG lives in the space of composite vertices fixed by its
//! companion tuple `(n1, ..., np)`. This crate provides:
//!
//! * bijective ranking of composite vertices and composite edges, per MAG
//!   ([`ordering`]) and across a growing family of equal-aspect MAGs
//!   ([`family`]);
//! * bit-exact codecs for characteristic strings, companion tuples and
//!   edge-set strings ([`codec`]);
//! * the canonical MAG <-> classical graph isomorphism ([`iso`]);
//! * nesting families grown from bit sources and the bit-driven companion
//!   tuple with its recovery procedure ([`nesting`]);
//! * topology checks on MAGs ([`analysis`]) and compression-based
//!   upper-bound estimates ([`complexity`]).
//!
//! Index arithmetic is generic over [`Natural`], implemented for `u64`,
//! `u128` and [`BigUint`]. The aliases below pick arbitrary precision, which
//! never overflows; the fixed-width types report [`MagError::Overflow`].
//!
//! ```
//! use magc_core::ordering::{edge_index, index_edge, EdgeIndex};
//! use magc_core::{CompanionTuple, CompositeVertex, Index};
//!
//! let tau = CompanionTuple::new(vec![2, 2])?;
//! let u = CompositeVertex::from([1, 2]);
//! let v = CompositeVertex::from([2, 1]);
//! assert_eq!(edge_index::<u64>(&u, &v, &tau)?, EdgeIndex::Index(4));
//! let e = index_edge(&Index::from(4u32), &tau)?.unwrap();
//! assert_eq!(e.to_string(), "(1,2)-(2,1)");
//! # Ok::<(), magc_core::MagError>(())
//! ```

pub mod analysis;
pub mod bits;
pub mod codec;
pub mod complexity;
mod error;
pub mod family;
pub mod iso;
mod mag;
pub mod natural;
pub mod nesting;
pub mod ordering;
pub mod rng;

pub use num_bigint::BigUint;

pub use bits::{BitReader, BitString};
pub use error::MagError;
pub use mag::{
    num_possible_edges, num_vertices, validate_mag, ClassicalGraph, CompanionTuple,
    CompositeEdge, CompositeVertex, Mag, VertexIter,
};
pub use natural::Natural;

/// Arbitrary-precision index type.
pub type Index = BigUint;

/// Per-MAG edge index in arbitrary precision.
pub type BigEdgeIndex = ordering::EdgeIndex<BigUint>;

/// Per-MAG edge index in a machine word.
pub type WordEdgeIndex = ordering::EdgeIndex<u64>;

/// Topology report with `f64` statistics.
pub type TopologyReport = analysis::TopologyReport<f64>;

/// Degree deviation with `f64` statistics.
pub type DegreeDeviation = analysis::DegreeDeviation<f64>;

/// Report parameters with `f64` constants.
pub type TopologyParams = analysis::TopologyParams<f64>;
