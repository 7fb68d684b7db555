use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown affine family {family:?} with rank {rank}")]
    InvalidFamily { family: String, rank: usize },

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("node {node} is not in the index set of size {size}")]
    NodeOutOfRange { node: usize, size: usize },

    #[error("elements belong to different Cartan specs")]
    SpecMismatch,

    #[error("parabolic subgroup generated by {0} is infinite")]
    InfiniteParabolic(String),

    #[error("{0}")]
    InvalidAutomorphism(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sequence invariant violated: {0}")]
    SequenceInvariant(String),

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("invalid bitorsor: {0}")]
    InvalidTorsor(String),

    #[error("unsupported field size q = {0}")]
    UnsupportedField(u32),

    #[error("resource limit exceeded: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
