//! Sparse multivariate polynomials in the position variables `x1, x2, x3`
//! and, for symmetric products, the second block `y1, y2, y3`.

mod kelvin;
mod parse;
mod polynomial;

pub use kelvin::{inverse_distance_derivative, kelvin_harmonicize};
pub use parse::{parse_polynomial, parse_polynomial_json, JsonTerm, ParseError};
pub use polynomial::{Block, Mat3, Monomial, Polynomial, MAX_VARS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("variable-count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },
    #[error("polynomial is not homogeneous of degree {0}")]
    NotHomogeneous(u32),
    #[error("unsupported variable count {0} (must be 3 or 6)")]
    UnsupportedVariables(usize),
}
