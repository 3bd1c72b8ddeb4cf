use num_complex::Complex64;

use super::{complex_solid_harmonics, HarmonicsError};
use crate::polyalg::Polynomial;

/// Truncated expansion of `1/(4π|x − x'|)` in solid harmonics, with the
/// harmonics of each degree prepared once.
#[derive(Clone, Debug)]
pub struct GreenExpansion {
    // per degree: (scale, re, im) of each H_n^m
    degrees: Vec<Vec<(f64, Polynomial<f64>, Polynomial<f64>)>>,
}

impl GreenExpansion {
    pub fn new(max_degree: u32) -> Self {
        let degrees = (0..=max_degree)
            .map(|n| {
                complex_solid_harmonics(n)
                    .into_iter()
                    .map(|h| (h.scale.value(), h.re.to_f64(), h.im.to_f64()))
                    .collect()
            })
            .collect();
        Self { degrees }
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.len() as u32 - 1
    }

    /// `Σ_{n ≤ N} 1/(2n+1) · |x|^(−2n−1) Σ_m H_n^m(x) conj(H_n^m(x'))`.
    pub fn eval(&self, x: &[f64; 3], xp: &[f64; 3]) -> Result<f64, HarmonicsError> {
        let outer = norm(x);
        let inner = norm(xp);
        if !(outer > 0.0 && inner < outer) {
            return Err(HarmonicsError::Domain { outer, inner });
        }
        let mut total = 0.0;
        for (n, hs) in self.degrees.iter().enumerate() {
            let sum: Complex64 = hs
                .iter()
                .map(|(s, re, im)| {
                    let a = Complex64::new(re.eval_f64(x), im.eval_f64(x));
                    let b = Complex64::new(re.eval_f64(xp), im.eval_f64(xp));
                    a * b.conj() * (s * s)
                })
                .sum();
            total += sum.re / ((2 * n + 1) as f64 * outer.powi(2 * n as i32 + 1));
        }
        Ok(total)
    }
}

fn norm(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// Partial sum through degree `n_max` of the harmonic expansion of the
/// free-space Green's function, valid for `|x'| < |x|`.
pub fn green_expansion(x: &[f64; 3], xp: &[f64; 3], n_max: u32) -> Result<f64, HarmonicsError> {
    GreenExpansion::new(n_max).eval(x, xp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn exact(x: &[f64; 3], xp: &[f64; 3]) -> f64 {
        let d = [x[0] - xp[0], x[1] - xp[1], x[2] - xp[2]];
        1.0 / (4.0 * PI * norm(&d))
    }

    #[test]
    fn origin_source_keeps_only_monopole() {
        for n in [0, 3, 7] {
            let v = green_expansion(&[0.0, 0.0, 2.0], &[0.0; 3], n).unwrap();
            assert!((v - 1.0 / (8.0 * PI)).abs() < 1e-15);
        }
    }

    #[test]
    fn converges_on_axis() {
        let (x, xp) = ([0.0, 0.0, 2.0], [0.0, 0.0, 0.5]);
        let v = green_expansion(&x, &xp, 12).unwrap();
        assert!((v - 1.0 / (4.0 * PI * 1.5)).abs() < 1e-6);
    }

    #[test]
    fn error_ratio_matches_radius_ratio() {
        let (x, xp) = ([0.0, 0.0, 2.0], [0.0, 0.0, 0.5]);
        let g = GreenExpansion::new(12);
        let e = exact(&x, &xp);
        let errs: Vec<f64> = (0..=12)
            .map(|n| (GreenExpansion { degrees: g.degrees[..=n].to_vec() }.eval(&x, &xp).unwrap() - e).abs())
            .collect();
        for n in 4..12 {
            let ratio = errs[n + 1] / errs[n];
            assert!((ratio - 0.25).abs() < 0.02, "n={n} ratio={ratio}");
        }
    }

    #[test]
    fn off_axis_error_decreases() {
        let (x, xp) = ([1.0, -1.5, 0.7], [0.2, 0.3, -0.1]);
        let g = GreenExpansion::new(10);
        let e = exact(&x, &xp);
        let mut last = f64::INFINITY;
        for n in 2..=10 {
            let err = (GreenExpansion { degrees: g.degrees[..=n].to_vec() }.eval(&x, &xp).unwrap() - e).abs();
            assert!(err < last);
            last = err;
        }
        assert!(last < 1e-7);
    }

    #[test]
    fn rejects_points_outside_domain() {
        assert!(green_expansion(&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0], 3).is_err());
        assert!(green_expansion(&[0.0; 3], &[0.0; 3], 3).is_err());
    }
}
