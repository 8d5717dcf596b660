use thiserror::Error;

use crate::point::PointId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {0} is not in the space")]
    MissingPoint(PointId),
    #[error("duplicate point {0}")]
    DuplicatePoint(PointId),
    #[error("closure of {0} does not contain the point itself")]
    NotReflexive(PointId),
    #[error("map is not continuous at {0}")]
    NotContinuous(PointId),
    #[error("maps do not share source and target")]
    SourceTargetMismatch,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("epsilon must be non-negative, got {0}")]
    NegativeEpsilon(f64),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("invalid weighted digraph: {0}")]
    InvalidDigraph(String),
    #[error("not downward closed: {0}")]
    NotDownwardClosed(String),
    #[error("dimension {requested} exceeds the cap {cap}")]
    DimensionTooLarge { requested: usize, cap: usize },
    #[error("degree {0} is out of range for this chain complex")]
    DegreeOutOfRange(usize),
    #[error("search bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("relation is not a correspondence")]
    NotACorrespondence,
    #[error("infinite bars cannot be matched ({0} vs {1})")]
    InfinityMismatch(usize, usize),
    #[error("inconsistent tower: {0}")]
    InconsistentTower(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operation needs field coefficients")]
    NeedsField,
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
