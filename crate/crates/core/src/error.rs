use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports. Names are stable: the CLI prints them
/// verbatim via [`Error::name`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational literal {literal:?}: {reason}")]
    InvalidLiteral { literal: String, reason: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("vertices are not geometrically independent (rank {rank}, need {expected})")]
    DependentVertices { rank: usize, expected: usize },

    #[error("affine map matrix must be square, got {rows}x{cols}")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("face dimension {k} out of range for a {dim}-simplex")]
    FaceDimensionOutOfRange { k: usize, dim: usize },

    #[error("vertex index {index} out of range for a {dim}-simplex")]
    VertexIndexOutOfRange { index: usize, dim: usize },

    #[error("a 0-simplex has no opposite face")]
    NoOppositeFace,

    #[error("point is not in the simplex")]
    NotInSimplex,

    #[error("ray origin is not interior to the simplex")]
    OriginNotInterior,

    #[error("ray direction is the zero vector")]
    ZeroDirection,

    #[error("ball point lies outside the closed unit ball")]
    OutsideBall,

    #[error("ball point has an irrational radius")]
    IrrationalRadius,

    #[error("unknown vertex label {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex label {0:?}")]
    DuplicateVertex(String),

    #[error("simplex has no vertices")]
    EmptySimplex,

    #[error("simplex lists vertex {0:?} more than once")]
    RepeatedLabel(String),

    #[error("complex has no simplices")]
    EmptyComplex,

    #[error("point is not in the geometric realization")]
    NotInRealization,

    #[error("no value given for vertex {0:?}")]
    MissingValue(String),

    #[error("vertex values mix scalars and vectors of different lengths")]
    InconsistentValues,
}

impl Error {
    /// The variant name, used as a stable machine-readable error code.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidLiteral { .. } => "InvalidLiteral",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::EmptyPointSet => "EmptyPointSet",
            Error::DependentVertices { .. } => "DependentVertices",
            Error::NonSquareMatrix { .. } => "NonSquareMatrix",
            Error::FaceDimensionOutOfRange { .. } => "FaceDimensionOutOfRange",
            Error::VertexIndexOutOfRange { .. } => "VertexIndexOutOfRange",
            Error::NoOppositeFace => "NoOppositeFace",
            Error::NotInSimplex => "NotInSimplex",
            Error::OriginNotInterior => "OriginNotInterior",
            Error::ZeroDirection => "ZeroDirection",
            Error::OutsideBall => "OutsideBall",
            Error::IrrationalRadius => "IrrationalRadius",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::DuplicateVertex(_) => "DuplicateVertex",
            Error::EmptySimplex => "EmptySimplex",
            Error::RepeatedLabel(_) => "RepeatedLabel",
            Error::EmptyComplex => "EmptyComplex",
            Error::NotInRealization => "NotInRealization",
            Error::MissingValue(_) => "MissingValue",
            Error::InconsistentValues => "InconsistentValues",
        }
    }
}
