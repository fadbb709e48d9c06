use thiserror::Error;

use crate::subsets::SubsetMask;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),

    #[error("a length vector needs at least 3 entries, got {0}")]
    TooFewEntries(usize),

    #[error("length vector has {n} entries, above the cap of {max} (raise it with --max-n; enumeration cost is 2^n)")]
    TooManyEntries { n: usize, max: usize },

    #[error("entry {index} is not strictly positive: {value}")]
    NonPositive { index: usize, value: String },

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    /// At least one subset balances its complement. Only subsets avoiding `n`
    /// are listed; each one's complement is degenerate too.
    #[error("length vector is not generic: {} balances its complement", .degenerate.first().map(|m| m.to_string()).unwrap_or_default())]
    NotGeneric { degenerate: Vec<SubsetMask> },

    #[error("length vector is not dominated: the last entry is not a maximum")]
    NotDominated,

    #[error("dimension d = {0} is not supported here: Betti numbers and the cohomology ring are only computed for d >= 3 (the planar case d = 2 is not covered by the classification)")]
    UnsupportedDimension(i64),

    #[error("invalid arguments to the dimension formula: n = {n}, d = {d} (need n >= 3, d >= 2)")]
    InvalidDimensionArgs { n: usize, d: i64 },

    #[error("Betti table is flagged as invalid (length vector not dominated)")]
    InvalidTable,

    #[error("intersection pairing precondition violated: {0}")]
    Pairing(String),

    #[error("graded rings have different grade units: {left} vs {right}")]
    GradeUnitMismatch { left: usize, right: usize },

    #[error("graded ring was not built from the given complex")]
    RingComplexMismatch,

    #[error("malformed target: {0}")]
    MalformedTarget(String),

    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedN { n: usize, min: usize, max: usize },

    #[error("realization witness failed round-trip verification: expected {expected}, recomputed {actual}")]
    VerificationFailed { expected: String, actual: String },

    #[error("cannot parse chamber code {0:?}")]
    CodeParse(String),
}
