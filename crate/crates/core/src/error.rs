use thiserror::Error;

/// Errors raised by the library. Hyperplane and equation indices are stored
/// 0-based and displayed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("linear form {} is identically zero", index + 1)]
    ZeroForm { index: usize },

    #[error("hyperplanes {} and {} coincide (forms are proportional)", first + 1, second + 1)]
    DuplicateHyperplane { first: usize, second: usize },

    #[error("arrangement is not essential: rank {rank} < dimension {ell} (deficit {})", ell - rank)]
    NonEssential { rank: usize, ell: usize },

    #[error("derivation is not logarithmic: alpha_{0} does not divide theta(alpha_{0})", index + 1)]
    NotLogarithmic { index: usize },

    #[error("arrangement is not in canonical form: form {} is not x{}", index + 1, index + 1)]
    NotCanonical { index: usize },

    #[error("zero pivot coefficient at variable x{}", var + 1)]
    ZeroPivot { var: usize },

    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: usize, lo: usize, hi: usize },

    #[error("the chosen forms are linearly dependent")]
    DependentBasis,

    #[error("matrix is not square: {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("solution tuple fails equation {}", j + 1)]
    UnverifiedSolution { j: usize },

    #[error("point is not a critical point of the associated field in the complement")]
    UnverifiedCriticalPoint,

    #[error("index map is not a lattice isomorphism")]
    LatticeMismatch,

    #[error("arrangements differ in size: {left} vs {right}")]
    SizeMismatch { left: String, right: String },

    #[error("basis shift must target a non-Euler member (index >= 2)")]
    ShiftEuler,

    #[error("first member of the family is not the Euler derivation")]
    MissingEuler,
}

impl Error {
    /// Stable machine-readable name.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "ParseError",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroForm { .. } => "ZeroForm",
            Error::DuplicateHyperplane { .. } => "DuplicateHyperplane",
            Error::NonEssential { .. } => "NonEssential",
            Error::NotLogarithmic { .. } => "NotLogarithmic",
            Error::NotCanonical { .. } => "NotCanonical",
            Error::ZeroPivot { .. } => "ZeroPivot",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::DependentBasis => "DependentBasis",
            Error::NonSquare { .. } => "NonSquare",
            Error::UnverifiedSolution { .. } => "UnverifiedSolution",
            Error::UnverifiedCriticalPoint => "UnverifiedCriticalPoint",
            Error::LatticeMismatch => "LatticeMismatch",
            Error::SizeMismatch { .. } => "SizeMismatch",
            Error::ShiftEuler => "ShiftEuler",
            Error::MissingEuler => "MissingEuler",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
