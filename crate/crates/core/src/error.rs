use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Geometric failures (a degenerate Gale transform, a rank-two drop in a
/// determinantal scan) are reported as errors rather than absorbed, and the
/// message names the geometric cause.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime in [2, 2^31)")]
    InvalidModulus(u64),
    #[error("cannot parse scalar `{0}`")]
    ParseScalar(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point {0} is the zero vector")]
    ZeroPoint(usize),
    #[error("points {0} and {1} are the same projective point")]
    DuplicatePoint(usize, usize),
    #[error("a configuration needs at least one point")]
    EmptyConfiguration,
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("{gamma} points exceeds the exhaustive-scan limit of {limit}")]
    ConfigurationTooLarge { gamma: usize, limit: usize },
    #[error("expected {expected} points, found {found}")]
    WrongDegree { expected: usize, found: usize },

    #[error("Gale transform needs at least r+3 = {needed} points, found {found}")]
    TooFewPoints { needed: usize, found: usize },
    #[error("points do not span the ambient space")]
    Degenerate,
    #[error("Gale row {0} vanishes: a hyperplane contains every point except {0}")]
    GaleDegenerate(usize),
    #[error("Gale rows {0} and {1} are proportional: a hyperplane contains every point except {0} and {1}")]
    GaleNonReduced(usize, usize),

    #[error("split and complement are not both bases")]
    NotTwoBases,
    #[error("the first r+1 points are not a basis")]
    FirstBlockNotBasis,
    #[error("no non-isotropic orthogonal vector found for slot {slot} after {tries} candidates")]
    IsotropicObstruction { slot: usize, tries: usize },

    #[error("points are not in linearly general position")]
    NotLgp,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("degree {h} out of range [1, {max}]")]
    DegreeOutOfRange { h: usize, max: usize },

    #[error("operation requires a prime field")]
    NotPrimeField,
    #[error("generator has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("{n} evaluation points exceed the {limit} points of the projective line")]
    TooManyPoints { n: usize, limit: usize },
    #[error("codes differ in field or length")]
    ShapeMismatch,
    #[error("linear system has no admissible solution")]
    NoSolution,
    #[error("brute force over {size} messages exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error("projective scan over {size} points exceeds the limit {limit}")]
    SearchTooLarge { size: u128, limit: u128 },
    #[error("adjoint drops rank by two or more at {0:?}")]
    RankTwoDrop(Vec<u64>),
    #[error("determinantal locus has no rational points")]
    EmptyLocus,
    #[error("locus point {0} has no partner on the other side")]
    NoMatch(usize),
    #[error("kernel-line matching is not a bijection")]
    NotBijective,
    #[error("locus incomplete: expected {expected} points, found {found_v} and {found_w}")]
    LocusIncomplete {
        expected: usize,
        found_v: usize,
        found_w: usize,
    },
    #[error("locus has {found} points, more than the expected {expected}: not zero-dimensional")]
    LocusTooLarge { expected: usize, found: usize },
    #[error("no usable sample after {0} attempts")]
    RetryBudgetExceeded(usize),
    #[error("undecided over this field: {0}")]
    Indeterminate(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
