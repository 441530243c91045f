//! Finite bit strings and a cursor for reading them.
//!
//! Position 1 is the leftmost bit. The text form is ASCII `0`/`1`, with any
//! whitespace ignored on input.

use std::fmt;
use std::str::FromStr;

use crate::error::MagError;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(len: usize) -> Self {
        Self {
            bits: vec![false; len],
        }
    }

    pub fn ones(len: usize) -> Self {
        Self {
            bits: vec![true; len],
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bit at 1-based position `j`.
    pub fn get(&self, j: usize) -> Option<bool> {
        j.checked_sub(1).and_then(|i| self.bits.get(i).copied())
    }

    pub fn push(&mut self, bit: bool) {
        self.bits.push(bit);
    }

    pub fn append(&mut self, other: &BitString) {
        self.bits.extend_from_slice(&other.bits);
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// The first `len` bits (or all of them when shorter).
    pub fn prefix(&self, len: usize) -> BitString {
        Self {
            bits: self.bits[..len.min(self.bits.len())].to_vec(),
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Packs bits most-significant-first; the final byte is zero padded.
    pub fn to_packed_bytes(&self) -> Vec<u8> {
        self.bits
            .chunks(8)
            .map(|chunk| {
                chunk
                    .iter()
                    .enumerate()
                    .fold(0u8, |acc, (i, &b)| acc | ((b as u8) << (7 - i)))
            })
            .collect()
    }

    pub fn from_packed_bytes(bytes: &[u8], len: usize) -> Result<Self, MagError> {
        if len > bytes.len() * 8 {
            return Err(MagError::LengthMismatch {
                expected: len.to_string(),
                found: bytes.len() * 8,
            });
        }
        let bits = (0..len).map(|i| bytes[i / 8] >> (7 - i % 8) & 1 == 1).collect();
        Ok(Self { bits })
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader { bits: self, pos: 0 }
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        Self { bits }
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        Self {
            bits: iter.into_iter().collect(),
        }
    }
}

impl FromStr for BitString {
    type Err = MagError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(MagError::MalformedCode(format!(
                    "unexpected character {other:?} in bit string"
                ))),
            })
            .collect()
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Sequential reader over a [`BitString`].
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bits: &'a BitString,
    pos: usize,
}

impl BitReader<'_> {
    pub fn read_bit(&mut self) -> Result<bool, MagError> {
        let bit = self
            .bits
            .bits
            .get(self.pos)
            .copied()
            .ok_or_else(|| MagError::MalformedCode("unexpected end of stream".into()))?;
        self.pos += 1;
        Ok(bit)
    }

    /// Number of bits consumed so far.
    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn remaining(&self) -> usize {
        self.bits.len() - self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.remaining() == 0
    }
}
