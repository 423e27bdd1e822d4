use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("lower central series stabilizes at a nonzero subspace of dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("basis is not adapted to the filtration: {0}")]
    NotAdapted(String),
    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error(
        "precision exhausted at {bits} bits (radius {radius}); retry with a higher --precision"
    )]
    PrecisionExhausted { bits: u32, radius: String },
    #[error("precision must be at least 64 bits, got {0}")]
    PrecisionTooLow(u32),
    #[error("generator e{index} is not reachable by brackets of weight-one vectors")]
    InfeasibleScheme { index: usize },
    #[error("norm search exhausted after {steps} steps; best constant {best}")]
    SearchExhausted { steps: usize, best: String },
    #[error("operation needs real coefficients: {0}")]
    NotReal(String),
    #[error("weight sequence is undefined at weight {0}")]
    WeightOutOfTable(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable snake-case tag for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NotNilpotent { .. } => "not_nilpotent",
            Error::NotAdapted(_) => "not_adapted",
            Error::InvalidFiltration(_) => "invalid_filtration",
            Error::AlgebraMismatch => "algebra_mismatch",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::PrecisionTooLow(_) => "precision_too_low",
            Error::InfeasibleScheme { .. } => "infeasible_scheme",
            Error::SearchExhausted { .. } => "search_exhausted",
            Error::NotReal(_) => "not_real",
            Error::WeightOutOfTable(_) => "weight_out_of_table",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}
