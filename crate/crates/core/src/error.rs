use thiserror::Error;

/// Errors raised by the labeling, codec and analysis layers.
///
/// Variants that concern a specific edge or vertex carry its rendered form so
/// messages name the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MagError {
    #[error("invalid companion tuple: {0}")]
    InvalidTuple(String),
    #[error("self-loop on composite vertex {vertex}")]
    SelfLoop { vertex: String },
    #[error("coordinate out of range: vertex {vertex} is not in the space of tau={tau}")]
    CoordOutOfRange { vertex: String, tau: String },
    #[error("arity mismatch in {context}: expected {expected} coordinates, found {found}")]
    ArityMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("coordinates must be positive: {vertex}")]
    NonPositiveCoord { vertex: String },
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: String, max: String },
    #[error("arithmetic overflow in the chosen index type")]
    Overflow,
    #[error("zero is not encodable as a self-delimiting natural")]
    ZeroNotEncodable,
    #[error("malformed code: {0}")]
    MalformedCode(String),
    #[error("length mismatch: expected {expected} bits, found {found}")]
    LengthMismatch { expected: String, found: usize },
    #[error("indexer mismatch at entry {position}: expected {expected}, found {found}")]
    IndexerMismatch {
        position: String,
        expected: String,
        found: String,
    },
    #[error("size mismatch: expected {expected} vertices, found {found}")]
    SizeMismatch { expected: String, found: String },
    #[error("bit source exhausted: needed {needed} bits, {available} available")]
    SourceExhausted { needed: u64, available: u64 },
    #[error("bit string is empty")]
    EmptyBits,
    #[error("aspect {aspect} has size 2 but no edge endpoint witnesses coordinate 2")]
    UnwitnessedAspect { aspect: usize },
    #[error("recovered bits {found} differ from expected {expected}")]
    RecoveryMismatch { expected: String, found: String },
    #[error("the two vertices of a pair must differ: {vertex}")]
    SelfPair { vertex: String },
    #[error("automorphism search limit exceeded: {n} vertices > limit {limit}")]
    SearchLimitExceeded { n: u64, limit: u64 },
    #[error("graph too large for analysis: {n} vertices > {limit}")]
    TooLarge { n: u64, limit: u64 },
    #[error("compressor adapter `{adapter}` failed its round trip")]
    AdapterRoundTripFailure { adapter: String },
    #[error("no compressor adapter survived verification")]
    NoAdapters,
    #[error("malformed compressed stream: {0}")]
    MalformedStream(String),
    #[error("adapter `{adapter}` failed: {message}")]
    Adapter { adapter: String, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family mismatch: {0}")]
    FamilyMismatch(String),
}
