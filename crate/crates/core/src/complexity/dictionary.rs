//! Built-in dictionary compressor over the binary alphabet.
//!
//! The stream is `delta(n)` followed by tokens until `n` bits are produced.
//! Each token is `delta(len + 1)`, then `delta(offset)` when `len > 0`, then
//! one literal bit unless the copy already reached the end. A copy replays
//! `len` bits starting `offset` bits back and may overlap its own output.
//! The empty string compresses to the empty string.

use std::collections::HashMap;

use crate::bits::{BitReader, BitString};
use crate::codec::{read_natural, write_natural};
use crate::error::MagError;

/// Window length used to find match candidates.
const ANCHOR: usize = 12;
/// Candidates examined per position, most recent first.
const CHAIN: usize = 64;
/// Largest declared output the decompressor will materialise.
pub const MAX_OUTPUT_BITS: usize = 1 << 32;

fn delta_len(n: u64) -> usize {
    let len = 64 - n.leading_zeros() as usize;
    let len_bits = 64 - (len as u64).leading_zeros() as usize;
    2 * len_bits - 1 + len - 1
}

fn anchor_key(x: &[bool], at: usize) -> u32 {
    x[at..at + ANCHOR]
        .iter()
        .fold(0u32, |acc, &b| acc << 1 | b as u32)
}

fn match_len(x: &[bool], from: usize, at: usize) -> usize {
    x[at..]
        .iter()
        .zip(&x[from..])
        .take_while(|(a, b)| a == b)
        .count()
}

pub fn builtin_compress(input: &BitString) -> BitString {
    let x = input.as_slice();
    let n = x.len();
    let mut out = BitString::new();
    if n == 0 {
        return out;
    }
    write_natural(&mut out, &(n as u64)).expect("n >= 1");
    let mut anchors: HashMap<u32, Vec<usize>> = HashMap::new();
    let mut indexed = 0;
    let mut pos = 0;
    while pos < n {
        while indexed < pos {
            if indexed + ANCHOR <= n {
                anchors.entry(anchor_key(x, indexed)).or_default().push(indexed);
            }
            indexed += 1;
        }
        let mut best = (0, 0);
        if pos + ANCHOR <= n {
            if let Some(cands) = anchors.get(&anchor_key(x, pos)) {
                for &q in cands.iter().rev().take(CHAIN) {
                    let len = match_len(x, q, pos);
                    if len > best.0 {
                        best = (len, pos - q);
                    }
                    if pos + len == n {
                        break;
                    }
                }
            }
        }
        let (len, offset) = best;
        let tail = (pos + len < n) as usize;
        if len >= ANCHOR
            && delta_len(len as u64 + 1) + delta_len(offset as u64) + tail < 2 * (len + tail)
        {
            write_natural(&mut out, &(len as u64 + 1)).expect("positive");
            write_natural(&mut out, &(offset as u64)).expect("positive");
            pos += len;
        } else {
            write_natural(&mut out, &1u64).expect("positive");
        }
        if pos < n {
            out.push(x[pos]);
            pos += 1;
        }
    }
    out
}

fn malformed(e: MagError) -> MagError {
    match e {
        MagError::MalformedCode(msg) => MagError::MalformedStream(msg),
        MagError::Overflow => MagError::MalformedStream("length does not fit".into()),
        other => other,
    }
}

fn read_len(r: &mut BitReader<'_>) -> Result<usize, MagError> {
    let v: u64 = read_natural(r).map_err(malformed)?;
    usize::try_from(v).map_err(|_| MagError::MalformedStream("length does not fit".into()))
}

pub fn builtin_decompress(stream: &BitString) -> Result<BitString, MagError> {
    if stream.is_empty() {
        return Ok(BitString::new());
    }
    let mut r = stream.reader();
    let n = read_len(&mut r)?;
    if n > MAX_OUTPUT_BITS {
        return Err(MagError::MalformedStream(format!("declared length {n} is implausible")));
    }
    let mut out: Vec<bool> = Vec::with_capacity(n.min(stream.len() * 64));
    while out.len() < n {
        let len = read_len(&mut r)? - 1;
        if len > 0 {
            let offset = read_len(&mut r)?;
            if offset == 0 || offset > out.len() || len > n - out.len() {
                return Err(MagError::MalformedStream(format!(
                    "copy of {len} bits from offset {offset} at position {}",
                    out.len()
                )));
            }
            let start = out.len() - offset;
            for i in 0..len {
                out.push(out[start + i]);
            }
        }
        if out.len() < n {
            out.push(r.read_bit().map_err(malformed)?);
        }
    }
    if !r.is_at_end() {
        return Err(MagError::MalformedStream(format!("{} trailing bits", r.remaining())));
    }
    Ok(out.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::encode_natural;
    use rand::RngCore;

    #[test]
    fn delta_len_matches_codec() {
        for n in 1..2000u64 {
            assert_eq!(delta_len(n), encode_natural(&n).unwrap().len());
        }
    }

    #[test]
    fn empty_round_trip() {
        assert!(builtin_compress(&BitString::new()).is_empty());
        assert!(builtin_decompress(&BitString::new()).unwrap().is_empty());
    }

    #[test]
    fn periodic_input_compresses() {
        let x: BitString = (0..1024).map(|i| i % 2 == 1).collect();
        let y = builtin_compress(&x);
        assert!(y.len() < 256, "{}", y.len());
        assert_eq!(builtin_decompress(&y).unwrap(), x);
    }

    #[test]
    fn zeros_compress() {
        let x = BitString::zeros(4096);
        let y = builtin_compress(&x);
        assert!(y.len() < 205, "{}", y.len());
        assert_eq!(builtin_decompress(&y).unwrap(), x);
    }

    #[test]
    fn random_round_trips() {
        let mut rng = crate::rng::generator(4);
        for len in [1usize, 2, 11, 12, 13, 100, 777, 5000] {
            let x: BitString = (0..len).map(|_| rng.next_u32() & 1 == 1).collect();
            assert_eq!(builtin_decompress(&builtin_compress(&x)).unwrap(), x, "len {len}");
        }
    }

    #[test]
    fn corrupt_streams_are_rejected() {
        let x: BitString = (0..300).map(|i| i % 3 == 0).collect();
        let y = builtin_compress(&x);
        assert!(builtin_decompress(&y.prefix(y.len() - 1)).is_err());
        let mut longer = y.clone();
        longer.push(true);
        assert!(builtin_decompress(&longer).is_err());
        // length 2, then a copy from offset 1 with nothing written yet
        let bad: BitString = "0100 0100 1".parse().unwrap();
        assert!(matches!(builtin_decompress(&bad), Err(MagError::MalformedStream(_))));
    }
}
