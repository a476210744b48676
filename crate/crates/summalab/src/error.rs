//! Error type shared by every module of the laboratory.

use std::fmt;

/// Everything that can go wrong inside the library.
///
/// Variants carry the offending value so that CLI reports can print a
/// structured record instead of a bare message.
#[derive(Debug, Clone, PartialEq)]
pub enum LabError {
    /// Grid size is not a power of two, or is below the minimum of 8.
    InvalidResolution { n: usize },
    /// Corpus name does not parse to a builtin entry.
    UnknownCorpusEntry { name: String },
    /// A frequency index exceeds what the spectrum can represent.
    /// Requests past the band limit are rejected, never truncated.
    FrequencyOutOfRange { requested: usize, max: usize },
    /// Point-bound operations require an exact grid point.
    NotAGridPoint { x: f64 },
    /// Imaginary residue of a synthesis exceeded the relative threshold,
    /// which indicates a conjugate-symmetry bug upstream.
    ResidueTooLarge { residue: f64 },
    /// Exponent outside the admissible range for the operation.
    InvalidExponent { p: f64 },
    /// Scale parameter n outside [1, max] for a local-average operator.
    InvalidScale { n: usize, max: usize },
    /// A threshold that must be positive was not.
    InvalidThreshold { value: f64 },
    /// Interval family violates pairwise disjointness (or is malformed).
    InvalidFamily { reason: String },
    /// Decomposition level so low that the global average already exceeds it.
    LevelTooLow { threshold: f64, mean: f64 },
    /// Dilation factors below 1 would shrink the exceptional set.
    InvalidDilation { factor: f64 },
    /// Bisection failed to converge within the iteration cap.
    BisectionFailure,
    /// No constant on the search grid makes the series dominate the
    /// exponential; signals a bug in the evaluation, not a mathematical fact.
    DominationFailure { d_max: f64 },
    /// Growth functions are defined on [0, infinity) only.
    NegativeArgument { t: f64 },
    /// Sampled-tail growth classification disagrees with the closed form.
    ClassifierMismatch { family: String, condition: String },
    /// Experiment configuration is malformed or references unknown ids.
    InvalidConfig { reason: String },
    /// Filesystem failure while emitting reports.
    Io(String),
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabError::InvalidResolution { n } => {
                write!(f, "invalid resolution {n}: grid size must be a power of two and at least 8")
            }
            LabError::UnknownCorpusEntry { name } => write!(f, "unknown corpus entry `{name}`"),
            LabError::FrequencyOutOfRange { requested, max } => {
                write!(f, "frequency {requested} out of range (max representable {max})")
            }
            LabError::NotAGridPoint { x } => write!(f, "{x} is not a grid point"),
            LabError::ResidueTooLarge { residue } => {
                write!(f, "imaginary residue {residue:e} exceeds the relative threshold 1e-8")
            }
            LabError::InvalidExponent { p } => write!(f, "invalid exponent p = {p}"),
            LabError::InvalidScale { n, max } => write!(f, "scale n = {n} out of range [1, {max}]"),
            LabError::InvalidThreshold { value } => write!(f, "threshold {value} must be positive"),
            LabError::InvalidFamily { reason } => write!(f, "invalid interval family: {reason}"),
            LabError::LevelTooLow { threshold, mean } => {
                write!(f, "level too low: global mean {mean} already exceeds threshold {threshold}")
            }
            LabError::InvalidDilation { factor } => write!(f, "dilation factor {factor} must be >= 1"),
            LabError::BisectionFailure => write!(f, "bisection failed to converge in 200 iterations"),
            LabError::DominationFailure { d_max } => {
                write!(f, "no constant d <= {d_max} dominates the exponential on the sample grid")
            }
            LabError::NegativeArgument { t } => write!(f, "growth functions require t >= 0, got {t}"),
            LabError::ClassifierMismatch { family, condition } => {
                write!(f, "sampled-tail classification of {family} disagrees with the closed form for {condition}")
            }
            LabError::InvalidConfig { reason } => write!(f, "invalid config: {reason}"),
            LabError::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for LabError {}

impl From<std::io::Error> for LabError {
    fn from(e: std::io::Error) -> Self {
        LabError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, LabError>;
