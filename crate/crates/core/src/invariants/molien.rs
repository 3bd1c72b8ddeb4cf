use serde::Serialize;

use super::algorithm::invariant_subspace_with;
use super::{InvariantSubspace, InvariantsError, Matrix, RepresentationSpace, Tolerances};
use crate::field::{Field, Rational};
use crate::harmonics::BasisStyle;
use crate::linalg::{self, Rows};
use crate::polyalg::{inverse_distance_derivative, Block, Mat3, Monomial, Polynomial};
use crate::symgroups::PointGroup;

/// Dimensions `g_m` of the invariant polynomials of each degree and
/// `h_m = g_m − g_{m−2}` of the invariant harmonics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MolienSeries {
    pub g: Vec<u64>,
    pub h: Vec<i64>,
}

fn series<F: Field>(elements: &[Mat3<F>], max_degree: usize) -> Vec<F> {
    let mut total = vec![F::zero(); max_degree + 1];
    for r in elements {
        // 1 / det(I − tR) with det(I − tR) = 1 − a t + b t² − c t³
        let (a, b, c) = (r.trace(), r.principal_minor_sum(), r.det());
        let mut s: Vec<F> = Vec::with_capacity(max_degree + 1);
        for k in 0..=max_degree {
            let mut v = if k == 0 { F::one() } else { a.clone() * s[k - 1].clone() };
            if k >= 2 {
                v = v - b.clone() * s[k - 2].clone();
            }
            if k >= 3 {
                v = v + c.clone() * s[k - 3].clone();
            }
            s.push(v);
        }
        for (t, v) in total.iter_mut().zip(s) {
            *t = t.clone() + v;
        }
    }
    let inv = F::one() / F::from_i64(elements.len() as i64);
    total.into_iter().map(|v| v * inv.clone()).collect()
}

/// Truncated Molien series `(1/|G|) Σ_R 1/det(I − tR)` through `t^max_degree`.
pub fn molien_series(group: &PointGroup, max_degree: usize) -> Result<MolienSeries, InvariantsError> {
    let raw: Vec<f64> = match group.exact_elements() {
        Some(ex) => series(ex, max_degree).iter().map(Field::to_f64).collect(),
        None => series(group.elements(), max_degree),
    };
    let mut g = Vec::with_capacity(raw.len());
    for (degree, v) in raw.into_iter().enumerate() {
        let r = v.round();
        if (v - r).abs() > 1e-6 || r < 0.0 {
            return Err(InvariantsError::MolienNotInteger { degree, value: v });
        }
        g.push(r as u64);
    }
    let h = (0..g.len())
        .map(|m| g[m] as i64 - if m >= 2 { g[m - 2] as i64 } else { 0 })
        .collect();
    Ok(MolienSeries { g, h })
}

/// Invariant harmonics of degree `m` from the averaging projector on the harmonic space,
/// checked against `h_m` from the Molien series.
pub fn invariant_harmonics(
    group: &PointGroup,
    m: u32,
    style: BasisStyle,
) -> Result<InvariantSubspace, InvariantsError> {
    let space = RepresentationSpace::harmonic(m, style);
    let inv = invariant_subspace_with(&space, group, &Tolerances::default())?;
    let h = molien_series(group, m as usize)?.h[m as usize];
    if h != inv.dimension as i64 {
        return Err(InvariantsError::HarmonicCount {
            degree: m,
            molien: h,
            projector: inv.dimension,
        });
    }
    Ok(inv)
}

fn reynolds_kelvin<F: Field>(elements: &[Mat3<F>], m: u32) -> Rows<F> {
    let mons = Monomial::of_degree(3, m);
    let numerators: Vec<Polynomial<F>> = mons
        .iter()
        .map(|b| inverse_distance_derivative([b.0[0], b.0[1], b.0[2]]).map_coeffs(F::from_rational))
        .collect();
    let inv = F::one() / F::from_i64(elements.len() as i64);
    mons.iter()
        .map(|b| {
            let x = Polynomial::<F>::from_terms(3, [(*b, F::one())]).expect("3 variables");
            let mut avg = Polynomial::zero(3);
            for r in elements {
                avg = &avg + &x.compose_linear(r, Block::X);
            }
            let avg = avg.scale(&inv);
            // q ↦ r^(2m+1) q(∂)(1/r) is linear in the coefficients of q
            let mut out = Polynomial::zero(3);
            for (k, mono) in mons.iter().enumerate() {
                let c = avg.coeff(mono);
                if !c.is_zero() {
                    out = &out + &numerators[k].scale(&c);
                }
            }
            out.coeff_vector(&mons)
        })
        .collect()
}

/// Invariant harmonics of degree `m` by the Kelvin-transform route: average
/// every monomial over the group and map it to a harmonic with
/// `q ↦ r^(2m+1) q(∂)(1/r)`. Returns independent coefficient rows over
/// [`Monomial::of_degree`]`(3, m)`.
pub fn kelvin_invariant_harmonics(group: &PointGroup, m: u32) -> Matrix {
    match group.exact_elements() {
        Some(ex) => {
            let rows = reynolds_kelvin(ex, m);
            let keep = linalg::greedy_independent(&rows, 0.0);
            Matrix::Exact(keep.into_iter().map(|i| rows[i].clone()).collect())
        }
        None => {
            let rows = reynolds_kelvin(group.elements(), m);
            let keep = linalg::greedy_independent(&rows, crate::field::FLOAT_TOL);
            Matrix::Float(keep.into_iter().map(|i| rows[i].clone()).collect())
        }
    }
}

/// Canonical polynomials from coefficient rows over the degree-`m` monomials.
pub fn rows_to_polynomials(rows: &Rows<Rational>, m: u32) -> Vec<Polynomial<Rational>> {
    let mons = Monomial::of_degree(3, m);
    rows.iter()
        .map(|r| Polynomial::from_coeff_vector(3, &mons, r).canonical())
        .collect()
}
