use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degrees must be odd (got {0})")]
    EvenDegree(u32),
    #[error("generator index {index} out of range 1..={rank}")]
    InvalidIndex { index: u32, rank: usize },
    #[error("malformed coefficient `{0}` (expected p/q)")]
    BadCoefficient(String),
    #[error("endomorphisms live over different degree sequences")]
    AmbientMismatch,
    #[error("image of generator {index} is not homogeneous of degree {degree}")]
    Inhomogeneous { index: u32, degree: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("search aborted: memo table exceeded {cap} entries")]
    MemoCapExceeded { cap: usize },
    #[error("brute force guard: {0}")]
    Guard(String),
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("certificate does not replay: {0}")]
    Replay(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("invalid family `{0}`")]
    InvalidFamily(String),
    #[error("invalid parameter {parameter} for {tag}: {reason}")]
    InvalidParameter {
        tag: String,
        parameter: u32,
        reason: &'static str,
    },
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("threshold for level {0} does not fit in 64 bits")]
    Overflow(u32),
    #[error(
        "{family} is below the level-{level} threshold {threshold}: the construction needs {inequality}"
    )]
    BelowThreshold {
        family: String,
        level: u32,
        threshold: u64,
        inequality: String,
    },
    #[error("chain verification failed: {0}")]
    Verification(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("zero element `{0}` is not absorbing")]
    NonAbsorbingZero(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("malformed table key `{0}` (expected \"a,b\")")]
    BadKey(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("presentation does not assert that all products vanish; supply a full table")]
    UnsupportedPresentation,
    #[error("table has {0} elements, too many to materialize")]
    TooLarge(u64),
}
