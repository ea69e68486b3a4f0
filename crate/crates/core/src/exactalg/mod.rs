//! Exact arithmetic over ℚ: rationals, linear forms, sparse multivariate
//! polynomials and fractions whose denominators are products of linear forms.
//!
//! Everything here is immutable after construction and free of floating
//! point. Polynomials live in ℚ[t0, …, t{r-1}] where `r` is the torus rank.

mod lfr;
mod linear;
mod parse;
mod poly;
mod rational;

pub use lfr::LinFactoredRational;
pub use linear::LinearForm;
pub use parse::parse_polynomial;
pub use poly::{Monomial, Polynomial};
pub use rational::{format_rational, parse_rational, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("division by the zero linear form")]
    ZeroDivisor,
    #[error("denominator factor {factor} vanishes at the evaluation point")]
    DenominatorVanishes { factor: LinearForm },
    #[error("evaluation point has {found} coordinates, expected {expected}")]
    PointDimension { expected: usize, found: usize },
    #[error("invalid rational {0:?}")]
    InvalidRational(String),
    #[error("cannot parse polynomial at byte {position}: {message}")]
    InvalidPolynomial { position: usize, message: String },
}
