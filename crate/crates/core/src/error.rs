use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a tropical variety: no strictly positive balanced weighting exists")]
    NotTropicalVariety,

    #[error("degenerate witness points: face {face} and ridge {ridge} differ by a vector in the ridge span")]
    DegenerateWitness { ridge: String, face: String },

    #[error("face {face} is not incident to ridge {ridge}")]
    NotIncident { ridge: String, face: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("weighting not balanced: cycle through edge {edge} does not close")]
    NotBalanced { edge: String },

    #[error("edge {edge} is not a positive multiple of its perpendicular vector")]
    NotParallel { edge: String },

    #[error("weight of face {face} is not positive")]
    NonPositiveWeight { face: String },

    #[error("edge {u}-{v} has coincident endpoints")]
    CoincidentEndpoints { u: String, v: String },

    #[error("operation needs dimension {expected}, got {got}")]
    WrongDimension { expected: usize, got: usize },

    #[error("enumeration limit of {0} candidate sets exceeded")]
    LimitExceeded(usize),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Errors caused by malformed input rather than a mathematical obstacle.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Json(_) | Error::Io(_) | Error::InvalidInput(_))
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidInput(_) => "invalid_input",
            Error::NotTropicalVariety => "not_a_tropical_variety",
            Error::DegenerateWitness { .. } => "degenerate_witness",
            Error::NotIncident { .. } => "not_incident",
            Error::Degenerate(_) => "degenerate",
            Error::NotBalanced { .. } => "not_balanced",
            Error::NotParallel { .. } => "not_parallel",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::CoincidentEndpoints { .. } => "coincident_endpoints",
            Error::WrongDimension { .. } => "wrong_dimension",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
