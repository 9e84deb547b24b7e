use thiserror::Error;

/// Errors raised by the OI-module engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OiError {
    #[error("degree {degree} exceeds the configured degree cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("cannot compose: inner map targets [{inner_target}] but outer map starts at [{outer_source}]")]
    ComposeMismatch {
        inner_target: usize,
        outer_source: usize,
    },

    #[error("invalid increasing map: {0}")]
    InvalidMap(String),

    #[error("index {index} out of range for maps [{source_size}] -> [{target}] (count {count})")]
    RankOutOfRange {
        index: u128,
        source_size: usize,
        target: usize,
        count: u128,
    },

    #[error("subset {0:?} is not contained in [{1}]")]
    SubsetOutOfRange(Vec<usize>, usize),

    #[error("hat-normalization needs a map out of a nonempty source")]
    EmptyMap,

    #[error("cannot split off [{r}] from a map into [{target}]")]
    ShiftTooLarge { r: usize, target: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid scalar {0:?}: {1}")]
    InvalidScalar(String, String),

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("malformed element: {0}")]
    MalformedElement(String),

    #[error("malformed presentation: {0}")]
    MalformedPresentation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the zero module has no {0}")]
    ZeroModule(&'static str),

    #[error("presentation has a generator in degree {max_generator} above the generation degree {t0}; remove the redundant generator first")]
    RedundantTopGenerator { max_generator: usize, t0: i64 },

    #[error("hypothesis unmet: r = {r} is below the presentation degree {prd}")]
    HypothesisUnmet { r: usize, prd: i64 },

    #[error("module is not semi-induced: H1 is nonzero in degree {0}")]
    NotSemiInduced(usize),

    #[error("bound {bound} is insufficient at syzygy level {level}: relations reach degree {needed}")]
    BoundInsufficient {
        level: usize,
        needed: usize,
        bound: usize,
    },

    #[error("window [{n0}, {n1}] too small: need at least {needed} steps")]
    WindowTooSmall { n0: usize, n1: usize, needed: usize },

    #[error("no polynomial tail of degree <= {degree} found in window [{n0}, {n1}]")]
    NoPolynomialTail { degree: i64, n0: usize, n1: usize },

    #[error("number too large to materialize: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, OiError>;
