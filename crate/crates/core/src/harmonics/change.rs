use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{complex_solid_harmonics, real_basis, BasisStyle, HarmonicBasis, Scale};
use crate::field::{Field, Rational};
use crate::linalg::CoordinateSolver;
use crate::polyalg::Monomial;

/// Change of basis `H_n^m = Σ_ℓ a_ℓm I_n^ℓ`.
///
/// `matrix[(m, ℓ)] = a_ℓm` with both indices running over `−n..n` shifted to
/// `0..2n+1`, so that the column of solid harmonics equals `matrix` times the
/// column of real harmonics.
#[derive(Clone, Debug)]
pub struct BasisChange {
    pub degree: u32,
    pub style: BasisStyle,
    pub matrix: DMatrix<Complex64>,
}

impl BasisChange {
    /// `a_ℓm` with `ℓ, m` given as offsets in `0..2n+1`.
    pub fn coefficient(&self, l: usize, m: usize) -> Complex64 {
        self.matrix[(m, l)]
    }

    /// `max |A·A^* − I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let d = self.matrix.nrows();
        let prod = &self.matrix * self.matrix.adjoint();
        let id = DMatrix::<Complex64>::identity(d, d);
        (prod - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn inverse(&self) -> DMatrix<Complex64> {
        self.matrix
            .clone()
            .try_inverse()
            .expect("basis change between two bases is invertible")
    }
}

/// Expresses the solid harmonics of degree `n` in the real basis of the
/// given style, solving exactly on monomial coefficients.
pub fn basis_change(n: u32, style: BasisStyle) -> BasisChange {
    basis_change_for(&real_basis(n, style))
}

pub fn basis_change_for(basis: &HarmonicBasis) -> BasisChange {
    let n = basis.degree();
    let mons = Monomial::of_degree(3, n);
    let rows: Vec<Vec<Rational>> = basis
        .elements()
        .iter()
        .map(|e| e.shape.coeff_vector(&mons))
        .collect();
    let solver = CoordinateSolver::new(rows, 0.0).expect("real harmonic basis is independent");
    let hs = complex_solid_harmonics(n);
    let d = hs.len();
    let mut matrix = DMatrix::zeros(d, d);
    for (mi, h) in hs.iter().enumerate() {
        let re = solver
            .solve(&h.re.coeff_vector(&mons))
            .expect("solid harmonic lies in the harmonic space");
        let im = solver
            .solve(&h.im.coeff_vector(&mons))
            .expect("solid harmonic lies in the harmonic space");
        let hs_scale = h.scale.squared_times_pi().expect("solid harmonics are normalised");
        for (li, e) in basis.elements().iter().enumerate() {
            // sqrt(s_m/π) / sqrt(s_ℓ/π) = sqrt(s_m / s_ℓ)
            let factor = match &e.scale {
                Scale::Unit => h.scale.value(),
                Scale::SqrtOverPi(sl) => (hs_scale / sl).to_f64().sqrt(),
            };
            matrix[(mi, li)] = Complex64::new(re[li].to_f64(), im[li].to_f64()) * factor;
        }
    }
    BasisChange {
        degree: n,
        style: basis.style(),
        matrix,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PTS: [[f64; 3]; 3] = [[0.3, -0.7, 0.5], [1.1, 0.4, -0.9], [-0.2, 0.6, 1.3]];

    #[test]
    fn orthonormal_change_is_unitary() {
        for n in 0..=6 {
            let a = basis_change(n, BasisStyle::Orthonormal);
            assert!(a.unitarity_residual() < 1e-10, "n={n}: {}", a.unitarity_residual());
        }
        let a0 = basis_change(0, BasisStyle::Orthonormal);
        assert!((a0.matrix[(0, 0)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn integer_change_is_invertible_not_unitary() {
        let a = basis_change(2, BasisStyle::Integer);
        assert!(a.unitarity_residual() > 1e-3);
        let id = &a.matrix * a.inverse();
        assert!((id - DMatrix::identity(5, 5)).iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn expansion_reproduces_solid_harmonics() {
        for style in [BasisStyle::Integer, BasisStyle::Orthonormal] {
            for n in 0..=5 {
                let basis = real_basis(n, style);
                let a = basis_change(n, style);
                let hs = complex_solid_harmonics(n);
                for x in &PTS {
                    let real = basis.eval(x);
                    for (mi, h) in hs.iter().enumerate() {
                        let sum: Complex64 = (0..real.len())
                            .map(|li| a.coefficient(li, mi) * real[li])
                            .sum();
                        assert!((sum - h.eval(x)).norm() < 1e-11, "{style} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn real_basis_recovered_from_conjugate_expansion() {
        for n in 0..=4 {
            let basis = real_basis(n, BasisStyle::Orthonormal);
            let a = basis_change(n, BasisStyle::Orthonormal);
            let hs = complex_solid_harmonics(n);
            for x in &PTS {
                let hv: Vec<Complex64> = hs.iter().map(|h| h.eval(x)).collect();
                for (li, v) in basis.eval(x).into_iter().enumerate() {
                    let sum: Complex64 = (0..hv.len())
                        .map(|mi| a.coefficient(li, mi).conj() * hv[mi])
                        .sum();
                    assert!((sum - v).norm() < 1e-11);
                }
            }
        }
    }
}
