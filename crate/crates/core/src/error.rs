use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("polynomial has degree zero in `{0}`")]
    DegreeZero(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("degenerate curve specification: {0}")]
    DegenerateSpec(String),
    #[error("polynomial is not symmetric under exchanging the two points")]
    NotSymmetric,
    #[error("polynomial is not in the ring of invariants a, b, c")]
    NotInInvariantRing,
    #[error("the stationary determinant vanishes identically (degenerate or planar curve)")]
    ZeroDeterminant,
    #[error("elimination ideal is not principal ({0} generators)")]
    NonPrincipal(usize),
    #[error("degenerate pencil: det(Q1 + t Q2) has degree {0} < 4 in t")]
    DegeneratePencil(usize),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("no valid affine chart found after {0} coordinate changes")]
    ChartFailure(usize),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
