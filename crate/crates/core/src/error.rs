use crate::lattice::Space;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: Space, found: Space },
    #[error("norm undefined on this element: {0}")]
    NormUndefined(String),
    #[error("element must be positive: {0}")]
    NotPositive(String),
    #[error("empty A generates discrete topology")]
    EmptyFamily,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("float-only construct in exact mode: {0}")]
    FloatOnly(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("net is not monotone: {0}")]
    NotMonotone(String),
    #[error("net is not null: {0}")]
    NotNull(String),
    #[error("no separating pseudonorm for {0}")]
    NotSeparated(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
