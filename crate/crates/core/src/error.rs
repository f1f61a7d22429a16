use thiserror::Error;

/// Errors raised by state construction, evolution and root finding.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input violates a named invariant of the receiving type.
    #[error("invariant `{invariant}` violated: {detail}")]
    Invariant {
        invariant: &'static str,
        detail: String,
    },
    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("time must be finite and non-negative, got {0}")]
    NegativeTime(f64),
    #[error("local factor is not unitary (max deviation {deviation:e})")]
    NonUnitary { deviation: f64 },
    /// The closed-form X-state path needs at most one active coherence slot,
    /// or a pure bit-flip operation.
    #[error("unsupported state shape: {0}")]
    UnsupportedShape(&'static str),
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("no crossing on (0, inf): {0}")]
    NoCrossing(&'static str),
    /// Bisection bracket has the same classification at both ends.
    #[error("bracket [{lo}, {hi}] does not change sign")]
    NoBracket { lo: f64, hi: f64 },
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("numerical failure: {0}")]
    Numerical(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
