use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::{HgptError, HgptMatrix};
use crate::harmonics::{real_basis, BasisStyle, HarmonicBasis};
use crate::invariants::{action_matrix, CoefficientPattern, RepresentationSpace};
use crate::polyalg::Mat3;

const ORTHOGONALITY_TOL: f64 = 1e-9;

/// `N(sB) = s^(p+q+1) N(B)`.
pub fn scale(n: &HgptMatrix, s: f64) -> Result<HgptMatrix, HgptError> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(HgptError::NonPositiveScale(s));
    }
    let f = s.powi((n.p() + n.q() + 1) as i32);
    HgptMatrix::new(n.p(), n.q(), n.style(), n.entries() * f)
}

/// Matrix `D` of `x ↦ R x` on the real harmonics of one degree:
/// `I^i(R x) = Σ_k D_ik I^k(x)`.
pub fn harmonic_action(degree: u32, style: BasisStyle, r: &Mat3<f64>) -> Result<DMatrix<f64>, HgptError> {
    let res = r.orthogonality_residual();
    if !(res <= ORTHOGONALITY_TOL) {
        return Err(HgptError::NotOrthogonal(res));
    }
    let space = RepresentationSpace::harmonic(degree, style);
    let pi = action_matrix(&space, r).map_err(|_| HgptError::NotOrthogonal(res))?;
    // the space acts on unscaled shapes; I^i = c_i · shape_i
    let c: Vec<f64> = space.factors().0.elements().iter().map(|e| e.scale.value()).collect();
    let d = pi.len();
    Ok(DMatrix::from_fn(d, d, |i, k| pi[i][k] * c[i] / c[k]))
}

/// Block of the rotated object `R(B)`: `D_p(Rᵀ)ᵀ N D_q(Rᵀ)`.
///
/// With this convention `rotate(rotate(N, R₂), R₁) = rotate(N, R₁R₂)` and
/// measuring the rotated object at `x` equals measuring the original at `Rᵀx`.
pub fn rotate(n: &HgptMatrix, r: &Mat3<f64>) -> Result<HgptMatrix, HgptError> {
    let rt = r.transpose();
    let dp = harmonic_action(n.p(), n.style(), &rt)?;
    let dq = if n.q() == n.p() {
        dp.clone()
    } else {
        harmonic_action(n.q(), n.style(), &rt)?
    };
    HgptMatrix::new(n.p(), n.q(), n.style(), dp.transpose() * n.entries() * dq)
}

fn norm(x: &[f64; 3]) -> f64 {
    (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt()
}

/// Truncated measurement
/// `V_sr = Σ_pq I_p(x_r) N_pq I_q(x_s)ᵀ / (|x_r|^(2p+1) |x_s|^(2q+1))`
/// over the supplied blocks.
pub fn forward_voltage(blocks: &[HgptMatrix], x_r: &[f64; 3], x_s: &[f64; 3]) -> Result<f64, HgptError> {
    let (nr, ns) = (norm(x_r), norm(x_s));
    if !(nr > 0.0 && ns > 0.0) || !nr.is_finite() || !ns.is_finite() {
        return Err(HgptError::ZeroPosition);
    }
    let mut bases: HashMap<(u32, BasisStyle), HarmonicBasis> = HashMap::new();
    let mut eval = |deg: u32, style: BasisStyle, x: &[f64; 3]| -> DVector<f64> {
        let b = bases.entry((deg, style)).or_insert_with(|| real_basis(deg, style));
        DVector::from_vec(b.eval(x))
    };
    let mut v = 0.0;
    for n in blocks {
        let ir = eval(n.p(), n.style(), x_r);
        let is = eval(n.q(), n.style(), x_s);
        let w = nr.powi(2 * n.p() as i32 + 1) * ns.powi(2 * n.q() as i32 + 1);
        v += ir.dot(&(n.entries() * is)) / w;
    }
    Ok(v)
}

/// `max |N_pq − N_qpᵀ|` over the block pairs present.
pub fn block_symmetry_residual(blocks: &[HgptMatrix]) -> f64 {
    let mut worst: f64 = 0.0;
    for a in blocks {
        for b in blocks {
            if a.p() == b.q() && a.q() == b.p() {
                worst = worst.max(a.max_abs_diff(&b.transpose()));
            }
        }
    }
    worst
}

/// Nearest block obeying a symmetry pattern, in the Frobenius norm.
#[derive(Clone, Debug, Serialize)]
pub struct PatternProjection {
    #[serde(skip)]
    pub projected: HgptMatrix,
    /// `‖N − P N‖_F`.
    pub residual: f64,
    /// `residual / ‖N‖_F`, zero for a zero block.
    pub relative_residual: f64,
    /// Values of the independent coefficients after projection.
    pub independent: Vec<(String, f64)>,
}

/// Orthogonal projection of `N` onto the blocks allowed by `pattern`; the
/// residual scores how far `N` is from having the pattern's symmetry.
pub fn apply_pattern(n: &HgptMatrix, pattern: &CoefficientPattern) -> Result<PatternProjection, HgptError> {
    if pattern.p != n.p() || pattern.q != n.q() || pattern.style != n.style() {
        return Err(HgptError::PatternMismatch {
            pattern_p: pattern.p,
            pattern_q: pattern.q,
            pattern_style: pattern.style,
            p: n.p(),
            q: n.q(),
            style: n.style(),
        });
    }
    let (rows, cols) = (pattern.rows(), pattern.cols());
    let d = rows * cols;
    let flat = DVector::from_fn(d, |e, _| n.entries()[(e / cols, e % cols)]);
    let k = pattern.parametrization.len();
    let projected_flat = if k == 0 {
        DVector::zeros(d)
    } else {
        let b = DMatrix::from_fn(d, k, |e, c| pattern.parametrization[c][e]);
        let q = b.qr().q();
        &q * (q.transpose() * &flat)
    };
    let residual = (&flat - &projected_flat).norm();
    let total = flat.norm();
    let projected = HgptMatrix::new(
        n.p(),
        n.q(),
        n.style(),
        DMatrix::from_fn(rows, cols, |i, j| projected_flat[i * cols + j]),
    )?;
    let independent = pattern
        .independent
        .iter()
        .map(|idx| (idx.to_string(), projected.entries()[idx.offsets()]))
        .collect();
    Ok(PatternProjection {
        projected,
        residual,
        relative_residual: if total > 0.0 { residual / total } else { 0.0 },
        independent,
    })
}
