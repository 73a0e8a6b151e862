use thiserror::Error;

use crate::exact::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("jet order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has zero constant term; reciprocal has a pole")]
    ZeroLeadingCoefficient,

    #[error("division by zero")]
    DivisionByZero,

    #[error("x = {x} is a pole: x + {odd} = 0")]
    Pole { x: Rational, odd: u64 },

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("degenerate tail fit: {0}")]
    DegenerateFit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quadrature did not reach tolerance {tolerance:e} within {evaluations} evaluations (estimate {estimate:e})")]
    QuadratureBudget {
        tolerance: f64,
        evaluations: usize,
        estimate: f64,
    },

    #[error("integrand does not decay below the truncation threshold before u = {0}")]
    TruncationUnreachable(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
