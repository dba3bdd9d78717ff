use thiserror::Error;

/// Errors raised by the exact arithmetic, linear algebra and module layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at {0}")]
    Pole(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix entry at ({row}, {col}) is not an integer")]
    NotInteger { row: usize, col: usize },
    #[error("E must be symmetric")]
    NotSymmetric,
    #[error("E must have nonnegative entries")]
    NegativeEntry,
    #[error("algebra assumed indecomposable: E is reducible")]
    Reducible,
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("{0} is not an eigenvalue")]
    NotAnEigenvalue(String),
    #[error("eigenvalues must be pairwise distinct")]
    RepeatedEigenvalue,
    #[error("exact c_j requires rational spectrum; use orthogonality_defect instead")]
    IrrationalSpectrum,
    #[error("trajectory left the module cone at step {step} (hypothesis 'Omega^r(M) not simple' violated or v0 not realizable)")]
    LeftModuleCone { step: usize },
    #[error("value requires exact arithmetic but an interval enclosure was supplied")]
    IntervalInput,
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("relation violated: {0}")]
    RelationViolated(String),
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("module has simple or projective summands")]
    HasSummands,
    #[error("integer overflow in dimension-vector arithmetic")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
