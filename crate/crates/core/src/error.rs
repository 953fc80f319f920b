use thiserror::Error;

use crate::monomial::MonomialOrder;

/// Reasons a derived x-tower construction was refused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivePrecondition {
    /// The input set is not quasi-x-tower.
    NotQuasiXTower,
    /// The base set does not lie on a single horizontal line.
    BaseNotHorizontal,
    /// The base line's ordinate is already an ordinate of the input set.
    BaseLevelCollision,
    /// The base set shares points with the input set.
    BaseOverlap,
    /// The base row is not strictly longer than the input set's longest row.
    BaseTooShort { base_len: usize, required: usize },
    /// Some abscissa of the input set is missing from the base row.
    BaseMissingAbscissa(String),
    /// The union failed the x-tower re-check.
    UnionNotTower,
}

impl std::fmt::Display for DerivePrecondition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DerivePrecondition::NotQuasiXTower => write!(f, "point set is not quasi-x-tower"),
            DerivePrecondition::BaseNotHorizontal => write!(f, "base set is not horizontal"),
            DerivePrecondition::BaseLevelCollision => {
                write!(f, "base ordinate already occurs in the point set")
            }
            DerivePrecondition::BaseOverlap => write!(f, "base set intersects the point set"),
            DerivePrecondition::BaseTooShort { base_len, required } => write!(
                f,
                "base row has {base_len} points, needs at least {required}"
            ),
            DerivePrecondition::BaseMissingAbscissa(x) => {
                write!(f, "base row does not cover abscissa {x}")
            }
            DerivePrecondition::UnionNotTower => write!(f, "union is not an x-tower set"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("malformed scalar literal {0:?}")]
    MalformedScalar(String),
    #[error("malformed polynomial {text:?}: {reason}")]
    MalformedPolynomial { text: String, reason: String },
    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("divisor must be a univariate linear polynomial")]
    InvalidFactor,
    #[error("inexact division: nonzero remainder")]
    InexactDivision,
    #[error("point set is empty")]
    EmptyPointSet,
    #[error("duplicate point ({0}, {1})")]
    DuplicatePoint(String, String),
    #[error("derived tower precondition failed: {0}")]
    DerivedTower(DerivePrecondition),
    #[error("no closed-form basis for {order} on this point set ({reason})")]
    Unsupported {
        order: MonomialOrder,
        reason: &'static str,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exponent set is not lower")]
    NotLower,
    #[error("evaluation matrix is not unit upper triangular at ({row}, {col})")]
    TriangularityViolation { row: usize, col: usize },
    #[error("border monomial {0} left a nonzero residual")]
    NonZeroResidual(String),
    #[error("point set classification mismatch: {0}")]
    ClassificationMismatch(&'static str),
    #[error("infeasible generator request: {0}")]
    Infeasible(String),
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("BM and QTBM disagree on {0}")]
    OutputMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
