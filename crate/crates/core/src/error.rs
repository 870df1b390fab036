use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range 1..={max}")]
    QubitCount { n: usize, max: usize },

    #[error("qubit index {qubit} out of range for a {num_qubits}-qubit register")]
    QubitIndex { qubit: usize, num_qubits: usize },

    #[error("two-qubit gate acts twice on qubit {0}")]
    RepeatedQubit(usize),

    #[error("register size mismatch: {left} vs {right} qubits")]
    QubitCountMismatch { left: usize, right: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("length {0} is not a power of two (or exceeds the supported size)")]
    NotPowerOfTwo(usize),

    #[error("{name} must be {requirement}, got {value}")]
    Parameter {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("invalid domain [{lo}, {hi})")]
    Domain { lo: f64, hi: f64 },

    #[error("negative entry {value} at index {index}")]
    NegativeEntry { index: usize, value: f64 },

    #[error("vector is not normalized (sum of squares / total = {total})")]
    Unnormalized { total: f64 },

    #[error("zero vector cannot be encoded")]
    ZeroVector,

    #[error("shot count must be positive")]
    ZeroShots,

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by the caller's inputs rather than by the computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::QubitCount { .. }
                | Error::Parameter { .. }
                | Error::Domain { .. }
                | Error::Config(_)
        )
    }

    pub(crate) fn parameter(name: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Parameter {
            name,
            requirement,
            value,
        }
    }
}
