use thiserror::Error;

pub type Result<T, E = GroupError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("malformed cycle notation {text:?}: {reason}")]
    MalformedCycles { text: String, reason: String },

    #[error("images do not form a permutation of 0..{degree}")]
    NotAPermutation { degree: usize },

    #[error("generator has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("unknown group builder {0:?}")]
    UnknownBuilder(String),

    #[error("invalid arguments for {builder}: {reason}")]
    InvalidBuilderArgs { builder: String, reason: String },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not a subgroup of the lattice's group")]
    NotASubgroup,

    #[error("subgroup {lower} is not contained in subgroup {upper}")]
    NotContained { lower: usize, upper: usize },

    #[error("subgroup {0} is not maximal")]
    NotMaximal(usize),

    #[error("parameter must be at least 1 (got {0})")]
    NonPositiveParameter(u32),

    #[error("unknown class id {0:?}")]
    UnknownClass(String),

    #[error("class {0} is not flagged as a formation")]
    NotAFormation(String),

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}
