use thiserror::Error;

use crate::norms::{ParseNormError, SupportSet};
use crate::vector::Vector2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the zero vector has no support direction")]
    ZeroVector,

    #[error("direction {direction} is not a smooth point of {norm}; support set {support:?}")]
    NonSmooth {
        direction: Vector2,
        norm: String,
        support: SupportSet,
    },

    #[error(transparent)]
    ParseNorm(#[from] ParseNormError),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("framework is not well-positioned at edges {0:?}")]
    NotWellPositioned(Vec<(String, String)>),

    #[error("pseudo-support assignment mismatch: {0}")]
    PseudoAssignment(String),

    #[error("matrix carries no exact rational mirror")]
    NoExactMirror,

    #[error("invalid move: {0}")]
    InvalidMove(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("graph is not (2,2)-tight")]
    NotTight,

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("malformed input: {0}")]
    Input(String),
}

impl Error {
    /// Failures that come from exhausting a numeric or search budget rather
    /// than from bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_) | Error::SearchExhausted(_))
    }
}
