//! HGPT coefficient matrices: change of basis to and from CGPTs and GPTs,
//! scaling and rotation laws, symmetry-pattern projection and the forward
//! measurement model.
//!
//! A block `N_pq` is `(2p+1)×(2q+1)` with `(N_pq)_{ij} = M^H_{qjpi}`, rows and
//! columns indexed by `i ∈ −p..p`, `j ∈ −q..q` shifted to start at zero.
//! With `H_n^m = Σ_ℓ a_ℓm I_n^ℓ` and `A = [a_ℓm]` laid out as in
//! [`BasisChange`], the blocks are related by `N = Aᵀ M Ā`.

mod convert;
mod json;
mod transform;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::harmonics::BasisStyle;
use crate::invariants::CoeffIndex;

pub use convert::{
    cgpt_block_from_hgpt, cgpt_from_hgpt, hgpt_block_from_cgpt, hgpt_from_cgpt, hgpt_from_gpt,
    GptCoefficients, HgptConversion,
};
pub use json::{blocks_to_json, parse_hgpt_blocks, MAX_BLOCK_ORDER};
pub use transform::{
    apply_pattern, block_symmetry_residual, forward_voltage, harmonic_action, rotate, scale,
    PatternProjection,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HgptError {
    #[error("expected a {expected_rows}×{expected_cols} matrix, got {rows}×{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("basis changes have styles {0} and {1}")]
    StyleMismatch(BasisStyle, BasisStyle),
    #[error("GPT entry for alpha = {alpha:?}, beta = {beta:?} is missing")]
    MissingEntry { alpha: [u16; 3], beta: [u16; 3] },
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("matrix is not orthogonal (residual {0:.3e})")]
    NotOrthogonal(f64),
    #[error("positions must be nonzero")]
    ZeroPosition,
    #[error("pattern is for S{pattern_p}{pattern_q} ({pattern_style}), block is N{p}{q} ({style})")]
    PatternMismatch {
        pattern_p: u32,
        pattern_q: u32,
        pattern_style: BasisStyle,
        p: u32,
        q: u32,
        style: BasisStyle,
    },
    #[error("entry {0} is not finite")]
    NonFinite(usize),
    #[error("invalid HGPT document: {0}")]
    Json(String),
}

/// A real HGPT block `N_pq` together with the basis style indexing it.
#[derive(Clone, Debug, PartialEq)]
pub struct HgptMatrix {
    p: u32,
    q: u32,
    style: BasisStyle,
    entries: DMatrix<f64>,
}

fn check_shape<T>(p: u32, q: u32, m: &DMatrix<T>) -> Result<(), HgptError> {
    let (r, c) = (2 * p as usize + 1, 2 * q as usize + 1);
    if m.shape() != (r, c) {
        return Err(HgptError::Shape {
            expected_rows: r,
            expected_cols: c,
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

impl HgptMatrix {
    pub fn new(p: u32, q: u32, style: BasisStyle, entries: DMatrix<f64>) -> Result<Self, HgptError> {
        check_shape(p, q, &entries)?;
        // row-major position, to match the JSON layout
        for i in 0..entries.nrows() {
            for j in 0..entries.ncols() {
                if !entries[(i, j)].is_finite() {
                    return Err(HgptError::NonFinite(i * entries.ncols() + j));
                }
            }
        }
        Ok(Self { p, q, style, entries })
    }

    /// Builds a block from `f(i, j)` with `i ∈ −p..p`, `j ∈ −q..q`.
    pub fn from_fn(p: u32, q: u32, style: BasisStyle, f: impl Fn(i32, i32) -> f64) -> Result<Self, HgptError> {
        let m = DMatrix::from_fn(2 * p as usize + 1, 2 * q as usize + 1, |r, c| {
            f(r as i32 - p as i32, c as i32 - q as i32)
        });
        Self::new(p, q, style, m)
    }

    pub fn zeros(p: u32, q: u32, style: BasisStyle) -> Self {
        Self {
            p,
            q,
            style,
            entries: DMatrix::zeros(2 * p as usize + 1, 2 * q as usize + 1),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn style(&self) -> BasisStyle {
        self.style
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// `M^H_{qjpi}` with `i ∈ −p..p`, `j ∈ −q..q`.
    pub fn get(&self, i: i32, j: i32) -> f64 {
        self.entries[((i + self.p as i32) as usize, (j + self.q as i32) as usize)]
    }

    pub fn coefficient(&self, idx: CoeffIndex) -> Option<f64> {
        (idx.p == self.p && idx.q == self.q).then(|| self.entries[idx.offsets()])
    }

    /// `N_qp` as implied by `N_pq = N_qpᵀ`.
    pub fn transpose(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            style: self.style,
            entries: self.entries.transpose(),
        }
    }

    /// Determinant of a diagonal block, `None` when `p ≠ q`.
    pub fn determinant(&self) -> Option<f64> {
        (self.p == self.q).then(|| self.entries.determinant())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.entries.shape() != other.entries.shape() {
            return f64::INFINITY;
        }
        (&self.entries - &other.entries).amax()
    }
}

impl fmt::Display for HgptMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N{}{} ({})", self.p, self.q, self.style)?;
        for r in self.entries.row_iter() {
            let cells: Vec<String> = r.iter().map(|v| format!("{v:>12.6e}")).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// A complex CGPT block `M_pq` with `(M_pq)_{mn} = M^C_{qnpm}`.
#[derive(Clone, Debug, PartialEq)]
pub struct CgptMatrix {
    p: u32,
    q: u32,
    entries: DMatrix<Complex64>,
}

impl CgptMatrix {
    pub fn new(p: u32, q: u32, entries: DMatrix<Complex64>) -> Result<Self, HgptError> {
        check_shape(p, q, &entries)?;
        Ok(Self { p, q, entries })
    }

    pub fn zeros(p: u32, q: u32) -> Self {
        Self {
            p,
            q,
            entries: DMatrix::zeros(2 * p as usize + 1, 2 * q as usize + 1),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }
}
