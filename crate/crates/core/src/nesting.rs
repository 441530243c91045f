//! Nesting families driven by bit sources, subMAG predicates, and the
//! bit-driven companion tuple with its recovery procedure.

use std::collections::BTreeSet;

use rand::{Rng, RngCore};
use rand_chacha::ChaCha20Rng;

use crate::bits::BitString;
use crate::codec::{char_string_family, EdgeSetString, Indexer, Layout};
use crate::error::MagError;
use crate::family::FamilySpec;
use crate::mag::{CompanionTuple, CompositeEdge, CompositeVertex, Mag};
use crate::rng::{self, GENERATOR_NAME};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceKind {
    /// Bits of the named generator, most significant bit of each word first.
    Seeded(u64),
    /// A finite buffer, e.g. read from a bit file.
    File { label: String, bits: BitString },
    /// A non-empty pattern repeated forever.
    Constant(BitString),
}

/// A deterministic stream of bits indexed 1, 2, 3, ...
#[derive(Clone, Debug)]
pub struct BitSource {
    kind: SourceKind,
    position: u64,
    rng: Option<ChaCha20Rng>,
    word: u64,
}

impl BitSource {
    pub fn seeded(seed: u64) -> Self {
        Self::from_kind(SourceKind::Seeded(seed))
    }

    pub fn file(label: impl Into<String>, bits: BitString) -> Self {
        Self::from_kind(SourceKind::File {
            label: label.into(),
            bits,
        })
    }

    pub fn constant(pattern: BitString) -> Result<Self, MagError> {
        if pattern.is_empty() {
            return Err(MagError::EmptyBits);
        }
        Ok(Self::from_kind(SourceKind::Constant(pattern)))
    }

    fn from_kind(kind: SourceKind) -> Self {
        let mut source = Self {
            kind,
            position: 0,
            rng: None,
            word: 0,
        };
        source.reset();
        source
    }

    pub fn kind(&self) -> &SourceKind {
        &self.kind
    }

    /// Index of the next bit to be emitted, starting at 1.
    pub fn position(&self) -> u64 {
        self.position + 1
    }

    pub fn reset(&mut self) {
        self.position = 0;
        self.rng = match self.kind {
            SourceKind::Seeded(seed) => Some(rng::generator(seed)),
            _ => None,
        };
    }

    pub fn id(&self) -> String {
        match &self.kind {
            SourceKind::Seeded(seed) => format!("seeded:{GENERATOR_NAME}:{seed}"),
            SourceKind::File { label, .. } => format!("file:{label}"),
            SourceKind::Constant(pattern) => format!("constant:{pattern}"),
        }
    }

    pub fn next_bit(&mut self) -> Result<bool, MagError> {
        let i = self.position;
        let bit = match &self.kind {
            SourceKind::Seeded(_) => {
                if i.is_multiple_of(64) {
                    self.word = self.rng.as_mut().expect("seeded source has a generator").next_u64();
                }
                self.word >> (63 - i % 64) & 1 == 1
            }
            SourceKind::File { bits, .. } => {
                bits.get(i as usize + 1).ok_or(MagError::SourceExhausted {
                    needed: i + 1,
                    available: bits.len() as u64,
                })?
            }
            SourceKind::Constant(pattern) => pattern
                .get((i % pattern.len() as u64) as usize + 1)
                .expect("pattern is non-empty"),
        };
        self.position += 1;
        Ok(bit)
    }

    pub fn take(&mut self, len: u64) -> Result<BitString, MagError> {
        if let SourceKind::File { bits, .. } = &self.kind {
            let needed = self.position + len;
            if needed > bits.len() as u64 {
                return Err(MagError::SourceExhausted {
                    needed,
                    available: bits.len() as u64,
                });
            }
        }
        (0..len).map(|_| self.next_bit()).collect()
    }
}

/// Members at sizes `n0, n0 + 1, ..., s_max`, all read from one bit stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestingFamily {
    spec: FamilySpec,
    members: Vec<Mag>,
    source_id: String,
}

impl NestingFamily {
    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn members(&self) -> &[Mag] {
        &self.members
    }

    pub fn source_id(&self) -> &str {
        &self.source_id
    }

    pub fn member(&self, s: u64) -> Option<&Mag> {
        s.checked_sub(self.spec.n0())
            .and_then(|k| self.members.get(k as usize))
    }
}

/// Builds the family whose size-`s` member is decoded from the first
/// `M(s)` bits of `src` under the family labeling.
pub fn grow_family(src: &mut BitSource, spec: &FamilySpec, s_max: u64) -> Result<NestingFamily, MagError> {
    if s_max < spec.n0() {
        return Err(MagError::InvalidParameter(format!(
            "s_max={s_max} is below n0={}",
            spec.n0()
        )));
    }
    src.reset();
    let total: u64 = spec.cumulative(s_max)?;
    let bits = src.take(total)?;
    let members = (spec.n0()..=s_max)
        .map(|s| {
            let m: u64 = spec.cumulative(s)?;
            char_string_family(&bits.prefix(m as usize), spec, s)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(NestingFamily {
        spec: *spec,
        members,
        source_id: src.id(),
    })
}

fn same_order(a: &Mag, b: &Mag) -> Result<(), MagError> {
    if a.tau().order() != b.tau().order() {
        return Err(MagError::ArityMismatch {
            context: "subMAG comparison".into(),
            expected: a.tau().order(),
            found: b.tau().order(),
        });
    }
    Ok(())
}

fn vertex_space_within(a: &CompanionTuple, b: &CompanionTuple) -> bool {
    a.sizes().iter().zip(b.sizes()).all(|(x, y)| x <= y)
}

/// `V(a) ⊆ V(b)` and `E(a) ⊆ E(b)`.
pub fn is_submag(a: &Mag, b: &Mag) -> Result<bool, MagError> {
    same_order(a, b)?;
    Ok(vertex_space_within(a.tau(), b.tau()) && a.edges().iter().all(|e| b.has_edge(e)))
}

/// A subMAG that also keeps every edge of `b` between its own vertices.
pub fn is_vertex_induced_submag(a: &Mag, b: &Mag) -> Result<bool, MagError> {
    if !is_submag(a, b)? {
        return Ok(false);
    }
    Ok(b
        .edges()
        .iter()
        .filter(|e| a.tau().contains(e.lo()) && a.tau().contains(e.hi()))
        .all(|e| a.has_edge(e)))
}

/// Aspect `i` has size 2 when bit `i` is 1 and size 1 otherwise.
pub fn build_bitdriven_tau(bits: &BitString) -> Result<CompanionTuple, MagError> {
    if bits.is_empty() {
        return Err(MagError::EmptyBits);
    }
    CompanionTuple::new(bits.iter().map(|b| if b { 2 } else { 1 }).collect())
}

/// Output of [`recover_bits`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery {
    pub bits: BitString,
    /// 1-based aspects of size at least 2 that no present edge witnesses.
    pub unwitnessed: Vec<usize>,
}

impl Recovery {
    pub fn is_witnessed(&self) -> bool {
        self.unwitnessed.is_empty()
    }
}

/// Collects the distinct coordinates seen at each aspect over the endpoints
/// of the present edges; bit `i` is 1 iff aspect `i` shows two or more values.
pub fn recover_bits(s: &EdgeSetString) -> Recovery {
    recover_from_edges(s.tau(), s.entries().iter().filter(|(_, z)| *z).map(|(e, _)| e))
}

/// [`recover_bits`] over the edges of `g`, without listing the absent ones.
pub fn recover_bits_from_mag(g: &Mag) -> Recovery {
    recover_from_edges(g.tau(), g.edges().iter())
}

fn recover_from_edges<'a>(tau: &CompanionTuple, edges: impl Iterator<Item = &'a CompositeEdge>) -> Recovery {
    let mut seen: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); tau.order()];
    for v in edges.flat_map(|e| [e.lo(), e.hi()]) {
        for (a, &c) in seen.iter_mut().zip(v.coords()) {
            a.insert(c);
        }
    }
    let bits = seen.iter().map(|a| a.len() >= 2).collect();
    let unwitnessed = seen
        .iter()
        .zip(tau.sizes())
        .enumerate()
        .filter(|(_, (a, &n))| n >= 2 && a.len() < 2)
        .map(|(i, _)| i + 1)
        .collect();
    Recovery { bits, unwitnessed }
}

/// Decodes an edge-set string stream, then recovers its bits.
pub fn recover_bits_from_stream(stream: &BitString, indexer: &Indexer) -> Result<Recovery, MagError> {
    Ok(recover_bits(&EdgeSetString::decode(stream, indexer, Layout::Full)?))
}

/// Recovers bits and checks them against the bits the caller used to build `tau`.
pub fn recover_bits_checked(s: &EdgeSetString, expected: &BitString) -> Result<BitString, MagError> {
    recover_bits(s).check(expected)
}

impl Recovery {
    /// Fails on the first unwitnessed aspect or on any difference from `expected`.
    pub fn check(self, expected: &BitString) -> Result<BitString, MagError> {
        if let Some(&aspect) = self.unwitnessed.first() {
            return Err(MagError::UnwitnessedAspect { aspect });
        }
        if &self.bits != expected {
            return Err(MagError::RecoveryMismatch {
                expected: expected.to_string(),
                found: self.bits.to_string(),
            });
        }
        Ok(self.bits)
    }
}

/// Edges drawn per sampling attempt in [`witnessing_mag`].
pub const WITNESS_SAMPLE_EDGES: usize = 4;

/// A sparse MAG on `tau` whose edges witness every aspect of size 2.
///
/// Each attempt draws [`WITNESS_SAMPLE_EDGES`] edges with uniformly random
/// endpoints from the seeded generator and keeps the first witness-complete
/// set. After `max_attempts` misses it adds the edge joining `(1, ..., 1)` to
/// the vertex with coordinate 2 on every size-2 aspect.
pub fn witnessing_mag(tau: &CompanionTuple, seed: u64, max_attempts: u32) -> Mag {
    let mut rng = rng::generator(seed);
    let mut g = Mag::empty(tau.clone());
    if tau.sizes().iter().all(|&n| n == 1) {
        return g;
    }
    let m = crate::mag::num_possible_edges::<u128>(tau).unwrap_or(u128::MAX);
    let target = (WITNESS_SAMPLE_EDGES as u128).min(m) as usize;
    let vertex = |rng: &mut ChaCha20Rng| {
        CompositeVertex::new(tau.sizes().iter().map(|&n| rng.gen_range(1..=n)).collect())
    };
    for _ in 0..max_attempts.max(1) {
        g = Mag::empty(tau.clone());
        while g.edge_count() < target {
            if let Ok(e) = CompositeEdge::new(vertex(&mut rng), vertex(&mut rng)) {
                g.insert(e).expect("vertices inside tau");
            }
        }
        if recover_bits_from_mag(&g).is_witnessed() {
            return g;
        }
    }
    let low = CompositeVertex::new(vec![1; tau.order()]);
    let high = CompositeVertex::new(tau.sizes().iter().map(|&n| n.min(2)).collect());
    if let Ok(e) = CompositeEdge::new(low, high) {
        g.insert(e).expect("vertices inside tau");
    }
    g
}
