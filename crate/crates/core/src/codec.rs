//! Bit-exact encodings.
//!
//! * Naturals use the Elias delta code, so every encoding is self-delimiting.
//! * A companion tuple is `delta(p)` followed by `delta(n_i)` for each aspect.
//! * The characteristic string of a MAG has bit `j` set iff edge `j` is present.
//! * The edge-set string is the tuple header followed, for `j = 1..=M`, by the
//!   coordinates of both endpoints of edge `j` and one presence bit.

use num_bigint::BigUint;

use crate::bits::{BitReader, BitString};
use crate::error::MagError;
use crate::family::{family_edge_index_of, family_edge_sequence, FamilySpec};
use crate::mag::{num_possible_edges, CompanionTuple, CompositeEdge, CompositeVertex, Mag};
use crate::natural::{self, lift, Natural};
use crate::ordering::{edge_index_of, edge_sequence};

/// Appends the Elias delta codeword of `n >= 1`.
pub fn write_natural<N: Natural>(out: &mut BitString, n: &N) -> Result<(), MagError> {
    if n.is_zero() {
        return Err(MagError::ZeroNotEncodable);
    }
    let len = n.bit_len();
    let len_bits = 64 - len.leading_zeros() as u64;
    for _ in 1..len_bits {
        out.push(false);
    }
    for i in (0..len_bits).rev() {
        out.push(len >> i & 1 == 1);
    }
    for i in (0..len - 1).rev() {
        out.push(n.bit(i));
    }
    Ok(())
}

pub fn encode_natural<N: Natural>(n: &N) -> Result<BitString, MagError> {
    let mut out = BitString::new();
    write_natural(&mut out, n)?;
    Ok(out)
}

/// Reads one Elias delta codeword.
pub fn read_natural<N: Natural>(r: &mut BitReader<'_>) -> Result<N, MagError> {
    let mut zeros = 0u32;
    while !r.read_bit()? {
        zeros += 1;
        if zeros > 63 {
            return Err(MagError::MalformedCode("length prefix too long".into()));
        }
    }
    let mut len = 1u64;
    for _ in 0..zeros {
        len = len << 1 | r.read_bit()? as u64;
    }
    let two = lift::<N>(2)?;
    let mut n = N::one();
    for _ in 1..len {
        n = natural::mul(&n, &two)?;
        if r.read_bit()? {
            n = n + N::one();
        }
    }
    Ok(n)
}

pub fn decode_natural<N: Natural>(bits: &BitString) -> Result<N, MagError> {
    let mut r = bits.reader();
    let n = read_natural(&mut r)?;
    expect_end(&r)?;
    Ok(n)
}

fn expect_end(r: &BitReader<'_>) -> Result<(), MagError> {
    if r.is_at_end() {
        Ok(())
    } else {
        Err(MagError::MalformedCode(format!(
            "{} trailing bits after the code",
            r.remaining()
        )))
    }
}

/// Cantor pairing `(a + b)(a + b + 1)/2 + b`, for when one natural must carry two.
pub fn cantor_pair<N: Natural>(a: &N, b: &N) -> Result<N, MagError> {
    let s = natural::add(a, b)?;
    natural::add(&natural::pairs(&natural::add(&s, &N::one())?)?, b)
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair<N: Natural>(z: &N) -> Result<(N, N), MagError> {
    // largest w with w(w+1)/2 <= z
    let two = lift::<N>(2)?;
    let mut lo = N::zero();
    let mut hi = N::one();
    while &natural::pairs(&natural::add(&hi, &N::one())?)? <= z {
        lo = hi.clone();
        hi = natural::mul(&hi, &two)?;
    }
    while hi.clone() - lo.clone() > N::one() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if &natural::pairs(&(mid.clone() + N::one()))? <= z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let b = z.clone() - natural::pairs(&(lo.clone() + N::one()))?;
    let a = lo - b.clone();
    Ok((a, b))
}

pub fn write_companion_tuple(out: &mut BitString, tau: &CompanionTuple) -> Result<(), MagError> {
    write_natural(out, &(tau.order() as u64))?;
    for n in tau.sizes() {
        write_natural(out, n)?;
    }
    Ok(())
}

pub fn encode_companion_tuple(tau: &CompanionTuple) -> Result<BitString, MagError> {
    let mut out = BitString::new();
    write_companion_tuple(&mut out, tau)?;
    Ok(out)
}

pub fn read_companion_tuple(r: &mut BitReader<'_>) -> Result<CompanionTuple, MagError> {
    let p: u64 = read_natural(r)?;
    let sizes = (0..p)
        .map(|_| read_natural::<u64>(r))
        .collect::<Result<Vec<_>, _>>()?;
    CompanionTuple::new(sizes)
}

pub fn decode_companion_tuple(bits: &BitString) -> Result<CompanionTuple, MagError> {
    let mut r = bits.reader();
    let tau = read_companion_tuple(&mut r)?;
    expect_end(&r)?;
    Ok(tau)
}

fn expected_len(tau: &CompanionTuple, found: usize) -> Result<usize, MagError> {
    let m = num_possible_edges::<BigUint>(tau)?;
    usize::try_from(&m)
        .ok()
        .filter(|&m| m == found)
        .ok_or_else(|| MagError::LengthMismatch {
            expected: m.to_string(),
            found,
        })
}

/// Decodes a characteristic string under the per-MAG labeling.
pub fn char_string_to_mag(x: &BitString, tau: &CompanionTuple) -> Result<Mag, MagError> {
    expected_len(tau, x.len())?;
    let edges = edge_sequence(tau)
        .zip(x.iter())
        .filter_map(|(e, bit)| bit.then_some(e))
        .collect();
    Ok(Mag::from_parts(tau.clone(), edges))
}

fn slot(j: u64) -> usize {
    (j - 1) as usize
}

/// The characteristic string of `g` under the per-MAG labeling.
pub fn mag_to_char_string(g: &Mag) -> Result<BitString, MagError> {
    let m: u64 = num_possible_edges(g.tau())?;
    let mut bits = vec![false; m as usize];
    for e in g.edges() {
        let j: u64 = edge_index_of(e, g.tau())?
            .into_option()
            .expect("stored edges are valid");
        bits[slot(j)] = true;
    }
    Ok(bits.into())
}

/// Decodes a characteristic string of the size-`s` member under the family labeling.
pub fn char_string_family(x: &BitString, spec: &FamilySpec, s: u64) -> Result<Mag, MagError> {
    let tau = spec.tau_at(s)?;
    expected_len(&tau, x.len())?;
    let edges = family_edge_sequence(spec, s)?
        .zip(x.iter())
        .filter_map(|(e, bit)| bit.then_some(e))
        .collect();
    Ok(Mag::from_parts(tau, edges))
}

/// The characteristic string of a family member under the family labeling.
pub fn mag_to_char_string_family(g: &Mag, spec: &FamilySpec) -> Result<BitString, MagError> {
    spec.size_of(g.tau())?;
    let m: u64 = num_possible_edges(g.tau())?;
    let mut bits = vec![false; m as usize];
    for e in g.edges() {
        let j: u64 = family_edge_index_of(e, spec)?;
        bits[slot(j)] = true;
    }
    Ok(bits.into())
}

/// Which labeling assigns edge `e_j` to position `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Indexer {
    PerMag,
    Family(FamilySpec),
}

impl Indexer {
    /// Edges of `tau` in this labeling's index order.
    pub fn sequence(&self, tau: &CompanionTuple) -> Result<Box<dyn Iterator<Item = CompositeEdge>>, MagError> {
        match self {
            Indexer::PerMag => Ok(Box::new(edge_sequence(tau))),
            Indexer::Family(spec) => {
                let s = spec.size_of(tau)?;
                Ok(Box::new(family_edge_sequence(spec, s)?))
            }
        }
    }

    pub fn char_string(&self, g: &Mag) -> Result<BitString, MagError> {
        match self {
            Indexer::PerMag => mag_to_char_string(g),
            Indexer::Family(spec) => mag_to_char_string_family(g, spec),
        }
    }

    pub fn decode_char_string(&self, x: &BitString, tau: &CompanionTuple) -> Result<Mag, MagError> {
        match self {
            Indexer::PerMag => char_string_to_mag(x, tau),
            Indexer::Family(spec) => char_string_family(x, spec, spec.size_of(tau)?),
        }
    }
}

/// Whether edge-set strings list each edge or only the presence bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Layout {
    /// `<<e_1, z_1>, ..., <e_M, z_M>>` with every edge spelled out.
    #[default]
    Full,
    /// Presence bits only; edges are implied by position.
    Compact,
}

/// The decoded edge-set string: every possible edge in index order with its presence bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSetString {
    tau: CompanionTuple,
    entries: Vec<(CompositeEdge, bool)>,
}

impl EdgeSetString {
    pub fn from_mag(g: &Mag, indexer: &Indexer) -> Result<Self, MagError> {
        let entries = indexer
            .sequence(g.tau())?
            .map(|e| {
                let present = g.has_edge(&e);
                (e, present)
            })
            .collect();
        Ok(Self {
            tau: g.tau().clone(),
            entries,
        })
    }

    pub fn tau(&self) -> &CompanionTuple {
        &self.tau
    }

    pub fn entries(&self) -> &[(CompositeEdge, bool)] {
        &self.entries
    }

    pub fn to_mag(&self) -> Mag {
        let edges = self
            .entries
            .iter()
            .filter(|(_, z)| *z)
            .map(|(e, _)| e.clone())
            .collect();
        Mag::from_parts(self.tau.clone(), edges)
    }

    pub fn encode(&self, layout: Layout) -> Result<BitString, MagError> {
        let mut out = encode_companion_tuple(&self.tau)?;
        for (e, z) in &self.entries {
            if layout == Layout::Full {
                for c in e.lo().coords().iter().chain(e.hi().coords()) {
                    write_natural(&mut out, c)?;
                }
            }
            out.push(*z);
        }
        Ok(out)
    }

    /// Decodes and checks that entry `j` carries the indexer's edge `e_j`.
    pub fn decode(bits: &BitString, indexer: &Indexer, layout: Layout) -> Result<Self, MagError> {
        let mut r = bits.reader();
        let tau = read_companion_tuple(&mut r)?;
        let p = tau.order();
        // every entry takes at least one bit per coordinate code plus its presence bit
        let per_entry = if layout == Layout::Full { 2 * p + 1 } else { 1 };
        let m = num_possible_edges::<BigUint>(&tau)?;
        if m * BigUint::from(per_entry) > BigUint::from(r.remaining()) {
            return Err(MagError::MalformedCode(format!(
                "{} bits cannot hold the entries of tau={tau}",
                r.remaining()
            )));
        }
        let mut entries = Vec::new();
        for (j, expected) in indexer.sequence(&tau)?.enumerate() {
            if layout == Layout::Full {
                let coords = (0..2 * p)
                    .map(|_| read_natural::<u64>(&mut r))
                    .collect::<Result<Vec<_>, _>>()?;
                let u = CompositeVertex::new(coords[..p].to_vec());
                let v = CompositeVertex::new(coords[p..].to_vec());
                if (&u, &v) != (expected.lo(), expected.hi()) {
                    return Err(MagError::IndexerMismatch {
                        position: (j + 1).to_string(),
                        expected: expected.to_string(),
                        found: format!("{u}-{v}"),
                    });
                }
            }
            entries.push((expected, r.read_bit()?));
        }
        expect_end(&r)?;
        Ok(Self { tau, entries })
    }
}

pub fn encode_edge_set_string(g: &Mag, indexer: &Indexer) -> Result<BitString, MagError> {
    EdgeSetString::from_mag(g, indexer)?.encode(Layout::Full)
}

pub fn decode_edge_set_string(bits: &BitString, indexer: &Indexer) -> Result<Mag, MagError> {
    Ok(EdgeSetString::decode(bits, indexer, Layout::Full)?.to_mag())
}
