use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point: all homogeneous coordinates are zero")]
    InvalidPoint,
    #[error("invalid line: all coefficients are zero")]
    InvalidLine,
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("cannot parse {kind} {text:?}")]
    Parse { kind: &'static str, text: String },

    #[error("degenerate join: {first} and {second} are the same point")]
    DegenerateJoin { first: String, second: String },
    #[error("degenerate meet: {first} and {second} are the same line")]
    DegenerateMeet { first: String, second: String },
    #[error("cross ratio undefined: {0}")]
    CrossRatioUndefined(String),
    #[error("points {0:?} are collinear, general position required")]
    GeneralPosition([usize; 3]),
    #[error("singular matrix: projective maps must be invertible")]
    SingularMap,

    #[error("quadratic tower deeper than {max} requested")]
    TowerTooDeep { max: usize },

    #[error("conic is not unique: {0}")]
    ConicNotUnique(String),
    #[error("conic coefficients are all zero")]
    ZeroConic,
    #[error("point {0} does not lie on the conic")]
    NotOnConic(String),
    #[error("line {0} is a component of the curve")]
    LineIsComponent(String),
    #[error("duplicate points at positions {0} and {1}")]
    DuplicatePoints(usize, usize),
    #[error("expected {expected} points, got {got}")]
    PointCount { expected: usize, got: usize },

    #[error("construction degenerate at {step}: {reason}")]
    ConstructionDegenerate { step: String, reason: String },
    #[error("fallback hypothesis fails: {0}")]
    FallbackHypothesis(String),

    #[error("bracket symbol with repeated label {0}")]
    RepeatedLabel(String),
    #[error("label {0} has no assigned point")]
    UnassignedLabel(String),
    #[error("relation is not homogeneous in {0}; its truth would depend on representatives")]
    Inhomogeneous(String),

    #[error("not a circle: {0}")]
    NotACircle(String),
    #[error("no affine chart keeps every point finite")]
    ChartFailure,
    #[error("invalid side assignment: {0}")]
    SideAssignment(String),
    #[error("cubic is not unique: the nine points impose dependent conditions")]
    CubicNotUnique,
    #[error("instance generation gave up after {0} attempts")]
    GenerationExhausted(usize),
}

impl Error {
    pub(crate) fn degenerate(step: impl Into<String>, reason: impl ToString) -> Self {
        Error::ConstructionDegenerate {
            step: step.into(),
            reason: reason.to_string(),
        }
    }
}
