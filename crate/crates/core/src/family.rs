//! Family-wide labeling for equal-aspect MAGs of a fixed order.
//!
//! The family grows the aspect size one step at a time starting from `n0`.
//! Step `s` appends, in per-MAG order at size `s`, the edges that first fit
//! at size `s`. The edges of the size-`s` member are therefore exactly the
//! indices `1..=M(s)`, where `M(s)` counts the pairs among `s^p` vertices.

use crate::error::MagError;
use crate::mag::{num_possible_edges, num_vertices, CompanionTuple, CompositeEdge, CompositeVertex};
use crate::natural::{self, lift, Natural};
use crate::ordering::{edge_index_of, edge_sequence, index_edge};

/// Order `p` and starting aspect size `n0` of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    p: usize,
    n0: u64,
}

impl FamilySpec {
    pub fn new(p: usize, n0: u64) -> Result<Self, MagError> {
        if p == 0 || n0 == 0 {
            return Err(MagError::InvalidParameter(format!(
                "family needs p >= 1 and n0 >= 1, got p={p}, n0={n0}"
            )));
        }
        Ok(Self { p, n0 })
    }

    pub fn order(&self) -> usize {
        self.p
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    /// Companion tuple of the member with aspect size `s`.
    pub fn tau_at(&self, s: u64) -> Result<CompanionTuple, MagError> {
        if s < self.n0 {
            return Err(MagError::FamilyMismatch(format!(
                "size {s} precedes the family start n0={}",
                self.n0
            )));
        }
        CompanionTuple::uniform(self.p, s)
    }

    /// The aspect size of `tau` if it is a member's tuple.
    pub fn size_of(&self, tau: &CompanionTuple) -> Result<u64, MagError> {
        match tau.uniform_size() {
            Some(s) if tau.order() == self.p && s >= self.n0 => Ok(s),
            _ => Err(MagError::FamilyMismatch(format!(
                "tau={tau} is not an equal-size tuple of order {} with size >= {}",
                self.p, self.n0
            ))),
        }
    }

    /// `M(s)`: edges of the size-`s` member, equal to the cumulative family count through `s`.
    pub fn cumulative<N: Natural>(&self, s: u64) -> Result<N, MagError> {
        num_possible_edges(&CompanionTuple::uniform(self.p, s)?)
    }
}

/// Size of the first member containing `e`.
pub fn first_appearance_size(e: &CompositeEdge, spec: &FamilySpec) -> u64 {
    e.max_coord().max(spec.n0)
}

/// Number of vertices of `[1..=m]^p` strictly below `x` lexicographically.
fn vertices_below<N: Natural>(x: &CompositeVertex, m: u64) -> Result<N, MagError> {
    let p = x.arity();
    let m_n = lift::<N>(m)?;
    let mut count = N::zero();
    let mut weight = num_vertices::<N>(&CompanionTuple::uniform(p, m)?)?;
    for &a in x.coords() {
        weight = weight / m_n.clone();
        let smaller = lift::<N>((a - 1).min(m))?;
        count = natural::add(&count, &natural::mul(&smaller, &weight)?)?;
        if a > m {
            break;
        }
    }
    Ok(count)
}

fn is_within(x: &CompositeVertex, m: u64) -> bool {
    x.max_coord() <= m
}

/// Number of edges of the size-`m` member that precede `e` in pair order.
fn old_edges_before<N: Natural>(e: &CompositeEdge, m: u64) -> Result<N, MagError> {
    let old_n = num_vertices::<N>(&CompanionTuple::uniform(e.arity(), m)?)?;
    let r = vertices_below::<N>(e.lo(), m)?;
    // rows of old vertices strictly before lo: sum_{i=1..r} (N' - i)
    let mut count = natural::sub(
        &natural::mul(&r, &old_n)?,
        &natural::pairs(&natural::add(&r, &N::one())?)?,
    )?;
    if is_within(e.lo(), m) {
        let between = vertices_below::<N>(e.hi(), m)? - r - N::one();
        count = natural::add(&count, &between)?;
    }
    Ok(count)
}

fn check_pair(u: &CompositeVertex, v: &CompositeVertex, spec: &FamilySpec) -> Result<CompositeEdge, MagError> {
    for w in [u, v] {
        if w.arity() != spec.p {
            return Err(MagError::ArityMismatch {
                context: format!("family edge {u}-{v}"),
                expected: spec.p,
                found: w.arity(),
            });
        }
    }
    CompositeEdge::new(u.clone(), v.clone())
}

/// Family-wide index of `{u, v}`; always at least 1.
pub fn family_edge_index<N: Natural>(
    u: &CompositeVertex,
    v: &CompositeVertex,
    spec: &FamilySpec,
) -> Result<N, MagError> {
    let e = check_pair(u, v, spec)?;
    family_edge_index_of(&e, spec)
}

pub fn family_edge_index_of<N: Natural>(e: &CompositeEdge, spec: &FamilySpec) -> Result<N, MagError> {
    if e.arity() != spec.p {
        return Err(MagError::ArityMismatch {
            context: format!("family edge {e}"),
            expected: spec.p,
            found: e.arity(),
        });
    }
    let s = first_appearance_size(e, spec);
    let tau = spec.tau_at(s)?;
    let local = edge_index_of::<N>(e, &tau)?
        .into_option()
        .expect("edge fits the member where it first appears");
    if s == spec.n0 {
        return Ok(local);
    }
    let offset = spec.cumulative::<N>(s - 1)?;
    let within = natural::sub(&local, &old_edges_before::<N>(e, s - 1)?)?;
    natural::add(&offset, &within)
}

/// Smallest member size whose edge count reaches `j >= 1`.
fn shell_of<N: Natural>(j: &N, spec: &FamilySpec) -> Result<u64, MagError> {
    let mut lo = spec.n0;
    let mut hi = spec.n0;
    while &spec.cumulative::<N>(hi)? < j {
        lo = hi + 1;
        hi = hi.checked_mul(2).ok_or(MagError::Overflow)?;
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if &spec.cumulative::<N>(mid)? >= j {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// The edge with family index `j`, or `None` (the `<0>` marker) for `j = 0`.
pub fn family_index_edge<N: Natural>(j: &N, spec: &FamilySpec) -> Result<Option<CompositeEdge>, MagError> {
    if j.is_zero() {
        return Ok(None);
    }
    let s = shell_of(j, spec)?;
    let tau = spec.tau_at(s)?;
    if s == spec.n0 {
        return index_edge(j, &tau);
    }
    let target = natural::sub(j, &spec.cumulative::<N>(s - 1)?)?;
    // smallest per-MAG index whose prefix holds `target` new edges
    let new_through = |idx: &N| -> Result<N, MagError> {
        let e = index_edge(idx, &tau)?.expect("index within the member");
        let mut old = old_edges_before::<N>(&e, s - 1)?;
        if e.max_coord() < s {
            old = old + N::one();
        }
        natural::sub(idx, &old)
    };
    let two = lift::<N>(2)?;
    let mut lo = N::one();
    let mut hi = spec.cumulative::<N>(s)?;
    while lo < hi {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if new_through(&mid)? >= target {
            hi = mid;
        } else {
            lo = mid + N::one();
        }
    }
    index_edge(&lo, &tau)
}

/// Edges of the size-`s` member in family index order (`1..=M(s)`).
pub fn family_edge_sequence(
    spec: &FamilySpec,
    s: u64,
) -> Result<impl Iterator<Item = CompositeEdge>, MagError> {
    spec.tau_at(s)?;
    let p = spec.p;
    let n0 = spec.n0;
    let shells = (n0..=s).map(move |t| {
        let tau = CompanionTuple::uniform(p, t).expect("positive size");
        edge_sequence(&tau).filter(move |e| t == n0 || e.max_coord() == t)
    });
    Ok(shells.flatten())
}
