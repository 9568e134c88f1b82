use std::fmt;

use crate::model::{CheckReport, ValidationReport};

/// Errors produced by the solver library.
#[derive(Debug)]
pub enum Error {
    /// A vector's length does not match the instance item count.
    LengthMismatch { expected: usize, actual: usize },
    /// The instance violates one or more of its invariants.
    InvalidInstance(ValidationReport),
    /// A solution failed verification where a verified solution was required.
    InvalidSolution(CheckReport),
    /// A per-item count bound exceeds the configured limit; the instance is
    /// too large for exact search.
    SearchBoxTooLarge { index: usize, bound: u64, limit: u64 },
    /// The count box has more points than the enumeration cap allows.
    BoxExceedsCap { points: u128, cap: u64 },
    /// The weight span of the configuration is a single point that does not
    /// equal the target weight.
    DegenerateSpan { span_point: f64, target: f64 },
    /// The configuration does not satisfy the configuration-stage constraints.
    InfeasibleConfiguration,
    /// The target weight lies outside the configuration's weight span, so no
    /// in-bounds weight vector can reach it.
    WeightOutsideSpan { low: f64, high: f64, target: f64 },
    /// A weight vector violates its bounds or misses the target total weight.
    InfeasibleWeights(String),
    /// A shift parameter lies outside [0, delta_max].
    DeltaOutOfRange { delta: f64, delta_max: f64 },
    /// The generator spec violates one of its invariants.
    InvalidGeneratorSpec(String),
    /// Input text is not syntactically valid JSON.
    Parse(String),
    /// Input JSON does not match the document schema.
    Schema(String),
    Io(std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, actual } => {
                write!(f, "length mismatch: expected {expected}, got {actual}")
            }
            Error::InvalidInstance(report) => {
                write!(f, "invalid instance: {}", report.violations.join("; "))
            }
            Error::InvalidSolution(report) => {
                write!(f, "invalid solution: {}", report.violations.join("; "))
            }
            Error::SearchBoxTooLarge {
                index,
                bound,
                limit,
            } => write!(
                f,
                "search box exceeds limit: count bound {bound} at index {index} exceeds {limit}"
            ),
            Error::BoxExceedsCap { points, cap } => {
                write!(f, "count box has {points} points, exceeding cap {cap}")
            }
            Error::DegenerateSpan { span_point, target } => write!(
                f,
                "degenerate span, W unreachable: span is the point {span_point}, target is {target}"
            ),
            Error::InfeasibleConfiguration => {
                write!(f, "configuration is not feasible for the configuration stage")
            }
            Error::WeightOutsideSpan { low, high, target } => write!(
                f,
                "no feasible weight vector for this configuration: target {target} outside span [{low}, {high}]"
            ),
            Error::InfeasibleWeights(msg) => write!(f, "infeasible weight vector: {msg}"),
            Error::DeltaOutOfRange { delta, delta_max } => {
                write!(f, "delta {delta} outside [0, {delta_max}]")
            }
            Error::InvalidGeneratorSpec(msg) => write!(f, "invalid generator spec: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Schema(msg) => write!(f, "schema error: {msg}"),
            Error::Io(err) => write!(f, "io error: {err}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err)
    }
}
