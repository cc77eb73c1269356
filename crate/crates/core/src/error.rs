use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected source rank {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("values {0:?} are not weakly increasing")]
    NotMonotone(Vec<usize>),

    #[error("value {value} lies outside [0, {target}]")]
    ValueOutOfRange { value: usize, target: usize },

    #[error("a monotone map needs at least one value")]
    EmptyMap,

    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("unknown simplex `{0}`")]
    UnknownSimplex(String),

    #[error("requested dimension {requested} exceeds truncation level {truncation}")]
    TruncationExceeded { requested: usize, truncation: usize },

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("invalid category: {}", .0.join("; "))]
    InvalidCategory(Vec<String>),

    #[error("invalid functor: {}", .0.join("; "))]
    InvalidFunctor(Vec<String>),

    #[error("invalid simplicial set: {}", .0.join("; "))]
    InvalidSSet(Vec<String>),

    #[error("invalid diagram: {}", .0.join("; "))]
    InvalidDiagram(Vec<String>),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("functors do not share a codomain")]
    CodomainMismatch,

    #[error("functors are not composable")]
    NotComposable,

    #[error("malformed document at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("more than {limit} morphisms")]
    TooLarge { limit: usize },

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
