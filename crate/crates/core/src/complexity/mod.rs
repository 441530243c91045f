//! Compression-based upper-bound estimates.
//!
//! Prefix complexity is uncomputable; every number produced here is the
//! length of a verified lossless encoding and therefore only an upper-bound
//! estimate. Outputs carry [`ESTIMATE_TAG`] so they are never mistaken for
//! exact values.

mod adapter;
mod dictionary;

use std::fmt;

use rayon::prelude::*;

pub use adapter::{
    decode_frame, encode_frame, CompressorAdapter, Dictionary, EdgeSetModel, Raw,
    SubprocessAdapter, ADAPTER_HEADER_BITS,
};
pub use dictionary::{builtin_compress, builtin_decompress};

use crate::analysis::sample_mag;
use crate::bits::BitString;
use crate::codec::{encode_companion_tuple, EdgeSetString, Indexer, Layout};
use crate::error::MagError;
use crate::mag::{num_possible_edges, CompanionTuple, Mag};
use crate::rng;

pub const ESTIMATE_TAG: &str = "upper-bound-estimate";

/// The adapters used when none are specified.
pub fn default_adapters() -> Vec<Box<dyn CompressorAdapter>> {
    vec![Box::new(Dictionary), Box::new(Raw), Box::new(EdgeSetModel)]
}

/// The shortest verified encoding length of a string, in bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Estimate {
    pub bits: usize,
    pub adapter: String,
    /// Adapters whose output failed to decompress back to the input.
    pub disqualified: Vec<String>,
}

impl fmt::Display for Estimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({ESTIMATE_TAG}, via {})", self.bits, self.adapter)
    }
}

/// Length of one adapter's output plus its header, if the round trip holds.
pub fn verified_length(adapter: &dyn CompressorAdapter, x: &BitString) -> Result<usize, MagError> {
    let failure = || MagError::AdapterRoundTripFailure {
        adapter: adapter.id().to_string(),
    };
    let y = adapter.compress(x).map_err(|_| failure())?;
    match adapter.decompress(&y) {
        Ok(back) if &back == x => Ok(y.len() + adapter.header_bits()),
        _ => Err(failure()),
    }
}

/// Minimum over adapters of verified compressed length plus header.
pub fn k_upper_bound(x: &BitString, adapters: &[Box<dyn CompressorAdapter>]) -> Result<Estimate, MagError> {
    let mut best: Option<(usize, &str)> = None;
    let mut disqualified = Vec::new();
    for adapter in adapters {
        match verified_length(adapter.as_ref(), x) {
            Ok(len) => {
                if best.is_none_or(|(b, _)| len < b) {
                    best = Some((len, adapter.id()));
                }
            }
            Err(_) => disqualified.push(adapter.id().to_string()),
        }
    }
    let (bits, adapter) = best.ok_or(MagError::NoAdapters)?;
    Ok(Estimate {
        bits,
        adapter: adapter.to_string(),
        disqualified,
    })
}

/// Raw and estimated lengths of the three encodings of one MAG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InformationReport {
    pub char_string_len: usize,
    pub edge_set_len: usize,
    pub tuple_len: usize,
    pub char_string: Estimate,
    pub edge_set: Estimate,
    pub tuple: Estimate,
    pub slack: usize,
}

impl InformationReport {
    /// `len(<E>) - len(x)`; fixed by the tuple and the indexer.
    pub fn exact_gap(&self) -> usize {
        self.edge_set_len - self.char_string_len
    }

    pub fn estimate_gap(&self) -> usize {
        self.edge_set.bits.abs_diff(self.char_string.bits)
    }

    pub fn gap_threshold(&self) -> usize {
        self.tuple.bits + self.slack
    }

    /// The estimated gap exceeds the tuple estimate plus slack.
    pub fn flagged(&self) -> bool {
        self.estimate_gap() > self.gap_threshold()
    }
}

pub fn information_report(
    g: &Mag,
    indexer: &Indexer,
    adapters: &[Box<dyn CompressorAdapter>],
    slack: usize,
) -> Result<InformationReport, MagError> {
    let x = indexer.char_string(g)?;
    let edge_set = EdgeSetString::from_mag(g, indexer)?.encode(Layout::Full)?;
    let tuple = encode_companion_tuple(g.tau())?;
    Ok(InformationReport {
        char_string_len: x.len(),
        edge_set_len: edge_set.len(),
        tuple_len: tuple.len(),
        char_string: k_upper_bound(&x, adapters)?,
        edge_set: k_upper_bound(&edge_set, adapters)?,
        tuple: k_upper_bound(&tuple, adapters)?,
        slack,
    })
}

/// Whether `x` keeps an estimate of at least `len(x) - deficiency` bits.
pub fn passes_deficiency(
    x: &BitString,
    deficiency: f64,
    adapters: &[Box<dyn CompressorAdapter>],
) -> Result<bool, MagError> {
    let k = k_upper_bound(x, adapters)?;
    Ok(k.bits as f64 >= x.len() as f64 - deficiency)
}

/// Fraction of sampled density-1/2 MAGs on `tau` whose characteristic
/// string passes [`passes_deficiency`]. Trial `i` uses stream `i` of `seed`.
pub fn fraction_estimate(
    tau: &CompanionTuple,
    trials: usize,
    deficiency: f64,
    seed: u64,
    adapters: &[Box<dyn CompressorAdapter>],
) -> Result<f64, MagError> {
    if trials == 0 {
        return Err(MagError::InvalidParameter("fraction estimate needs trials >= 1".into()));
    }
    num_possible_edges::<u64>(tau)?;
    let passes = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let g = sample_mag(tau, &mut rng::generator_stream(seed, i), 0.5);
            passes_deficiency(&crate::codec::mag_to_char_string(&g)?, deficiency, adapters)
        })
        .collect::<Result<Vec<bool>, MagError>>()?;
    Ok(passes.iter().filter(|&&p| p).count() as f64 / trials as f64)
}
