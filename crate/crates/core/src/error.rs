use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Δ^{0} is not an odd positive power")]
    EvenPower(i64),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("series is not in F({level}) at precision {precision}: {reason}")]
    NotInF {
        level: usize,
        precision: usize,
        reason: String,
    },

    #[error("series precision {have} is below the required {need}")]
    InsufficientPrecision { have: usize, need: usize },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("the zero element was given where a nonzero one is required")]
    ZeroElement,

    #[error("{p} has no representation a² + {c}b²")]
    NoRepresentation { p: u64, c: u64 },

    #[error("code of Δ^{k} is ambiguous: {detail}")]
    AmbiguousCode { k: usize, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
