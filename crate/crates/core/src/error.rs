use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: argument {z} outside the evaluation domain ({detail})")]
    Domain {
        op: &'static str,
        z: Complex64,
        detail: &'static str,
    },

    #[error("{op}: argument {z} is within {guard:e} of a pole")]
    Pole {
        op: &'static str,
        z: Complex64,
        guard: f64,
    },

    #[error("polylogarithm order {0} is not supported (expected 0..=3)")]
    UnsupportedOrder(u32),

    #[error("singular matrix: |det| = {det:e} does not exceed {bound:e}")]
    SingularMatrix { det: f64, bound: f64 },

    #[error("shape mismatch: expected dimension {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point is {distance:e} from the singular set (guard {guard:e})")]
    SingularPoint { distance: f64, guard: f64 },

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("precondition failed: {}", .0.join("; "))]
    Precondition(Vec<String>),

    #[error("degenerate equivalence: {0}")]
    DegenerateEquivalence(String),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("no admissible sample after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
