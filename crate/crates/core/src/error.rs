use thiserror::Error;

use crate::subset::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("lines {first} and {second} meet in rank - 1 elements")]
    NotStable {
        first: ElementSet,
        second: ElementSet,
    },

    #[error("every {rank}-subset of [{n}] would be a non-basis")]
    NoBasis { n: usize, rank: usize },

    #[error("set {set} has {found} elements, expected {expected}")]
    BadCardinality {
        set: ElementSet,
        expected: usize,
        found: usize,
    },

    #[error("element {element} lies outside the ground set [{n}]")]
    ElementOutOfRange { element: u32, n: usize },

    #[error("ground sets larger than {max} elements are not supported (got {n})")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("rank {rank} is larger than the ground set size {n}")]
    RankTooLarge { n: usize, rank: usize },

    #[error("sets of different shape: {first} vs {second}")]
    MismatchedAmbient {
        first: ElementSet,
        second: ElementSet,
    },

    #[error("contraction set {0} contains a non-basis")]
    DependentContractionSet(ElementSet),

    #[error("restriction to {0} has no basis of the quotient rank")]
    RankDeficient(ElementSet),

    #[error("{set} is not a fort")]
    NotAFort { set: ElementSet },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown target `{0}`")]
    UnknownTarget(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
