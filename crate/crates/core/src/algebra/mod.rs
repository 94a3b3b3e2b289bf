//! Exact arithmetic: scalars in ℚ or ℚ(√k), sparse multivariate and dense
//! univariate polynomials, resultants, gcds and real root isolation.

pub mod gcd;
pub mod linalg;
pub mod mpoly;
pub mod parse;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod upoly;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use gcd::poly_gcd;
pub use mpoly::{vars_of, MPoly, Monomial, Vars};
pub use parse::{parse_poly, parse_poly_in};
pub use resultant::resultant;
pub use roots::{eval_interval, exact_real_roots, isolate_real_roots, AlgebraicReal, ExactRoot, Interval, RealRoot};
pub use scalar::Scalar;
pub use upoly::UPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable '{name}' at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("exponent too large at position {position}")]
    ExponentOverflow { position: usize },
    #[error("radicand {0} must be a square-free integer greater than one")]
    InvalidRadicand(BigInt),
    #[error("square root of negative number {0}")]
    NegativeRadicand(BigRational),
    #[error("cannot combine sqrt({left}) and sqrt({right})")]
    MixedExtension { left: BigInt, right: BigInt },
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not univariate: it involves {0}")]
    NotUnivariate(String),
    #[error("variable '{0}' does not occur")]
    VariableAbsent(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("coefficients are not rational")]
    NotRational,
}
