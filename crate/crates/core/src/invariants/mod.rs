//! Fixed subspaces of point-group actions on harmonic polynomials and on
//! their symmetrised products.
//!
//! Rational groups run the whole computation over the rationals; the others
//! run in double precision with the tolerances in [`Tolerances`].

mod algorithm;
mod molien;
mod pattern;
mod space;

use serde::Serialize;
use thiserror::Error;

pub use algorithm::{
    action_matrix, averaging_projector, intersect_subspaces, invariant_subspace,
    invariant_subspace_with, InvariantSubspace,
};
pub use molien::{
    invariant_harmonics, kelvin_invariant_harmonics, molien_series, rows_to_polynomials,
    MolienSeries,
};
pub use pattern::{coefficient_pattern, CoeffIndex, CoefficientPattern, Relation};
pub use space::{RepresentationSpace, SpaceKind};

use crate::field::Rational;
use crate::linalg::Rows;
use crate::polyalg::PolyError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantsError {
    #[error("composed polynomial is not in the span of the basis (residual {residual:.3e})")]
    NotInSpan { residual: f64 },
    #[error("projector trace {trace} is not within {tol} of an integer")]
    TraceNotInteger { trace: f64, tol: f64 },
    #[error("projector rank {rank} differs from its trace {trace}")]
    RankMismatch { rank: usize, trace: usize },
    #[error("Molien coefficient g_{degree} = {value} is not an integer")]
    MolienNotInteger { degree: usize, value: f64 },
    #[error("degree-{degree} invariant harmonics: Molien series gives {molien}, projector gives {projector}")]
    HarmonicCount {
        degree: u32,
        molien: i64,
        projector: usize,
    },
    #[error("coefficient patterns need a symmetric-product space")]
    NotSymmetricProduct,
    #[error("subspaces live in spaces of different dimension ({0} and {1})")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Numerical thresholds for the floating-point path.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative threshold for rank decisions.
    pub rank: f64,
    /// Maximum distance of a projector trace from an integer.
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            rank: crate::field::FLOAT_TOL,
            trace: 1e-6,
        }
    }
}

/// A matrix over the rationals or over `f64`, depending on the group.
#[derive(Clone, Debug, PartialEq)]
pub enum Matrix {
    Exact(Rows<Rational>),
    Float(Rows<f64>),
}

impl Matrix {
    pub fn is_exact(&self) -> bool {
        matches!(self, Matrix::Exact(_))
    }

    pub fn nrows(&self) -> usize {
        match self {
            Matrix::Exact(m) => m.len(),
            Matrix::Float(m) => m.len(),
        }
    }

    pub fn to_f64(&self) -> Rows<f64> {
        match self {
            Matrix::Exact(m) => crate::linalg::to_f64_rows(m),
            Matrix::Float(m) => m.clone(),
        }
    }

    /// Rational entries, exact or reconstructed with denominators up to
    /// `max_den`; `None` if some float entry has no close rational.
    pub fn to_rational(&self, max_den: i64, tol: f64) -> Option<Rows<Rational>> {
        match self {
            Matrix::Exact(m) => Some(m.clone()),
            Matrix::Float(m) => m
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| crate::field::reconstruct_rational(v, max_den, tol))
                        .collect()
                })
                .collect(),
        }
    }

}
