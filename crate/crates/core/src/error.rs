use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular linear system")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial division by zero")]
    ZeroDivisor,
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("every solution has Q(0) = 0")]
    NormalizationFailure,
    #[error("determinant vanishes identically")]
    IdenticallyZero,
    #[error("forced factor leaves a remainder: {0}")]
    DivisibilityFailure(String),
    #[error("f is degenerate (residual factor constant)")]
    DegenerateF,
    #[error("g is degenerate (residual factor constant)")]
    DegenerateG,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("pencil condition violated: nullspace dimension {0}")]
    ConditionViolated(usize),
    #[error("point lies on the base locus")]
    BasePoint,
    #[error("fiber quadratic degenerates")]
    FiberDegenerate,
    #[error("indeterminate point under {0}")]
    IndeterminatePoint(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("sampling exhausted after {attempts} attempts ({label}): {last}")]
    SamplingExhausted {
        label: String,
        attempts: usize,
        last: String,
    },
}

impl Error {
    /// Errors caused by an unlucky parameter draw rather than by a bug.
    pub fn is_resample(&self) -> bool {
        matches!(
            self,
            Error::Singular
                | Error::DivisionByZero
                | Error::Inadmissible(_)
                | Error::NormalizationFailure
                | Error::IdenticallyZero
                | Error::DegenerateF
                | Error::DegenerateG
                | Error::BasePoint
                | Error::FiberDegenerate
                | Error::IndeterminatePoint(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
