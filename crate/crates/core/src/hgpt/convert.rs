use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{check_shape, CgptMatrix, HgptError, HgptMatrix};
use crate::harmonics::{basis_change, monomial_expansion, BasisChange, BasisStyle};
use crate::polyalg::Monomial;

/// Result of mapping complex coefficients into a real harmonic basis.
#[derive(Clone, Debug)]
pub struct HgptConversion {
    pub hgpt: HgptMatrix,
    /// Largest imaginary part discarded; small when the input came from a
    /// real-contrast problem.
    pub imaginary_residual: f64,
}

fn check_pair(a_p: &BasisChange, a_q: &BasisChange) -> Result<(), HgptError> {
    if a_p.style != a_q.style {
        return Err(HgptError::StyleMismatch(a_p.style, a_q.style));
    }
    Ok(())
}

/// `N = A_pᵀ M Ā_q` for a complex block, without dropping imaginary parts.
pub fn hgpt_block_from_cgpt(
    m: &DMatrix<Complex64>,
    a_p: &BasisChange,
    a_q: &BasisChange,
) -> Result<DMatrix<Complex64>, HgptError> {
    check_shape(a_p.degree, a_q.degree, m)?;
    Ok(a_p.matrix.transpose() * m * a_q.matrix.map(|c| c.conj()))
}

/// `M = A_p⁻ᵀ N Ā_q⁻¹`, which reduces to `Ā_p N A_qᵀ` for unitary `A`.
pub fn cgpt_block_from_hgpt(
    n: &DMatrix<Complex64>,
    a_p: &BasisChange,
    a_q: &BasisChange,
) -> Result<DMatrix<Complex64>, HgptError> {
    check_shape(a_p.degree, a_q.degree, n)?;
    let ip = a_p.inverse();
    let iq = a_q.inverse();
    Ok(ip.transpose() * n * iq.map(|c| c.conj()))
}

pub fn hgpt_from_cgpt(
    m: &CgptMatrix,
    a_p: &BasisChange,
    a_q: &BasisChange,
) -> Result<HgptConversion, HgptError> {
    check_pair(a_p, a_q)?;
    let n = hgpt_block_from_cgpt(m.entries(), a_p, a_q)?;
    let imaginary_residual = n.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
    Ok(HgptConversion {
        hgpt: HgptMatrix::new(a_p.degree, a_q.degree, a_p.style, n.map(|c| c.re))?,
        imaginary_residual,
    })
}

pub fn cgpt_from_hgpt(
    n: &HgptMatrix,
    a_p: &BasisChange,
    a_q: &BasisChange,
) -> Result<CgptMatrix, HgptError> {
    check_pair(a_p, a_q)?;
    if n.style() != a_p.style {
        return Err(HgptError::StyleMismatch(n.style(), a_p.style));
    }
    let m = cgpt_block_from_hgpt(&n.entries().map(|v| Complex64::new(v, 0.0)), a_p, a_q)?;
    CgptMatrix::new(n.p(), n.q(), m)
}

/// GPT values `M_αβ` keyed by multi-indices; supplied, never computed.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GptCoefficients {
    entries: BTreeMap<([u16; 3], [u16; 3]), f64>,
}

fn multi_indices(n: u32) -> Vec<[u16; 3]> {
    Monomial::of_degree(3, n)
        .iter()
        .map(|m| [m.0[0], m.0[1], m.0[2]])
        .collect()
}

impl GptCoefficients {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every pair with `|α| = p`, `|β| = q`.
    pub fn from_fn(p: u32, q: u32, f: impl Fn([u16; 3], [u16; 3]) -> f64) -> Self {
        let mut g = Self::new();
        for a in multi_indices(p) {
            for b in multi_indices(q) {
                g.insert(a, b, f(a, b));
            }
        }
        g
    }

    pub fn insert(&mut self, alpha: [u16; 3], beta: [u16; 3], value: f64) {
        self.entries.insert((alpha, beta), value);
    }

    pub fn get(&self, alpha: [u16; 3], beta: [u16; 3]) -> Option<f64> {
        self.entries.get(&(alpha, beta)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// HGPT block from GPT values:
/// `M^C_{mn} = Σ_αβ conj(a_αm) M_αβ a_βn / ((2p+1)(2q+1))`, then `N = Aᵀ M Ā`.
pub fn hgpt_from_gpt(
    g: &GptCoefficients,
    p: u32,
    q: u32,
    style: BasisStyle,
) -> Result<HgptConversion, HgptError> {
    let (mons_p, ap) = monomial_expansion(p);
    let (mons_q, aq) = monomial_expansion(q);
    let mut dense = DMatrix::<Complex64>::zeros(mons_p.len(), mons_q.len());
    for (r, mp) in mons_p.iter().enumerate() {
        for (c, mq) in mons_q.iter().enumerate() {
            let a = [mp.0[0], mp.0[1], mp.0[2]];
            let b = [mq.0[0], mq.0[1], mq.0[2]];
            let v = g
                .get(a, b)
                .ok_or(HgptError::MissingEntry { alpha: a, beta: b })?;
            dense[(r, c)] = Complex64::new(v, 0.0);
        }
    }
    let denom = ((2 * p + 1) * (2 * q + 1)) as f64;
    let m = ap.adjoint() * dense * aq / Complex64::new(denom, 0.0);
    hgpt_from_cgpt(
        &CgptMatrix::new(p, q, m)?,
        &basis_change(p, style),
        &basis_change(q, style),
    )
}
