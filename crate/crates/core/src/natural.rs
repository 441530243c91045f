//! Unsigned index arithmetic shared by the labeling and codec layers.
//!
//! Every cardinality in this crate (vertex counts, edge counts, edge indices)
//! is computed through [`Natural`], so callers choose between fixed-width
//! words and arbitrary precision. Fixed-width types report
//! [`MagError::Overflow`] instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive, Unsigned};

use crate::error::MagError;

/// An unsigned integer usable as an index or cardinality.
pub trait Natural:
    Clone
    + Ord
    + Hash
    + Debug
    + Display
    + Unsigned
    + FromPrimitive
    + ToPrimitive
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Send
    + Sync
    + 'static
{
    /// Number of significant bits; zero has length 0.
    fn bit_len(&self) -> u64;

    /// Bit `i`, counting from the least significant bit.
    fn bit(&self, i: u64) -> bool;
}

macro_rules! impl_natural_prim {
    ($($t:ty)*) => ($(
        impl Natural for $t {
            fn bit_len(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }

            fn bit(&self, i: u64) -> bool {
                i < <$t>::BITS as u64 && (self >> i) & 1 == 1
            }
        }
    )*)
}

impl_natural_prim!(u64 u128);

impl Natural for BigUint {
    fn bit_len(&self) -> u64 {
        self.bits()
    }

    fn bit(&self, i: u64) -> bool {
        BigUint::bit(self, i)
    }
}

pub(crate) fn lift<N: Natural>(v: u64) -> Result<N, MagError> {
    N::from_u64(v).ok_or(MagError::Overflow)
}

pub(crate) fn add<N: Natural>(a: &N, b: &N) -> Result<N, MagError> {
    a.checked_add(b).ok_or(MagError::Overflow)
}

pub(crate) fn sub<N: Natural>(a: &N, b: &N) -> Result<N, MagError> {
    a.checked_sub(b).ok_or(MagError::Overflow)
}

pub(crate) fn mul<N: Natural>(a: &N, b: &N) -> Result<N, MagError> {
    a.checked_mul(b).ok_or(MagError::Overflow)
}

/// Triangular number t(t-1)/2 for the count of unordered pairs among `t` items.
pub(crate) fn pairs<N: Natural>(t: &N) -> Result<N, MagError> {
    if t.is_zero() {
        return Ok(N::zero());
    }
    let two = lift::<N>(2)?;
    let prev = sub(t, &N::one())?;
    // one of t, t-1 is even; divide first so fixed-width types overflow only when the result does
    if (t.clone() % two.clone()).is_zero() {
        mul(&(t.clone() / two), &prev)
    } else {
        mul(t, &(prev / two))
    }
}

/// Converts to `u64`, failing if the value does not fit.
pub fn to_u64<N: Natural>(n: &N) -> Result<u64, MagError> {
    n.to_u64().ok_or(MagError::Overflow)
}
