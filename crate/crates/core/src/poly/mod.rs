//! Sparse exact-rational polynomials in two or three variables, with weighted
//! gradings and a text parser.

mod basis;
mod monomial;
mod parser;
mod polynomial;
mod weights;

use thiserror::Error;

pub use basis::{monomial_basis, slice_dimensions, GradedSliceBasis};
pub use monomial::{Monomial, MAX_VARS};
pub use parser::parse_polynomial;
pub use polynomial::{
    format_rational, Degree, Polynomial, WeightedDegree, PLANAR_VARS, SPATIAL_VARS,
};
pub use weights::WeightSystem;

/// Coefficient field.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} variables vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("only 2 or 3 variables are supported, got {0}")]
    UnsupportedArity(usize),
    #[error("weights must be positive integers")]
    NonPositiveWeight,
    #[error("polynomial depends on z and cannot be viewed in K[x,y]")]
    NotPlanar,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent must be a non-negative integer literal")]
    NonIntegerExponent,
    #[error("exponent too large")]
    ExponentTooLarge,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("only 2 or 3 variables are supported, got {0}")]
    UnsupportedArity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at position {position}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}
