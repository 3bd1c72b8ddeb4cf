//! Real harmonic bases, complex solid harmonics and the change of basis
//! between them.
//!
//! Spherical harmonics use the Condon–Shortley phase. Normalisation factors
//! of the form `sqrt(s/π)` are carried symbolically by [`Scale`] so that the
//! polynomial parts stay exact.

mod change;
mod green;
mod solid;
pub mod sphere;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use change::{basis_change, basis_change_for, BasisChange};
pub use green::{green_expansion, GreenExpansion};
pub use solid::{complex_solid_harmonics, monomial_expansion, ComplexSolidHarmonic};

use crate::field::{Field, Rational};
use crate::linalg;
use crate::polyalg::{parse_polynomial, Monomial, Polynomial};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicsError {
    #[error("expansion requires 0 < |x'| < |x|, got |x| = {outer}, |x'| = {inner}")]
    Domain { outer: f64, inner: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisStyle {
    /// Integer coefficients.
    Integer,
    /// Orthonormal on the unit sphere.
    Orthonormal,
}

impl BasisStyle {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisStyle::Integer => "integer",
            BasisStyle::Orthonormal => "orthonormal",
        }
    }
}

impl fmt::Display for BasisStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BasisStyle {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "integer" => Ok(BasisStyle::Integer),
            "orthonormal" => Ok(BasisStyle::Orthonormal),
            other => Err(format!("unknown basis style '{other}'")),
        }
    }
}

/// Multiplicative factor attached to an exact polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum Scale {
    Unit,
    /// `sqrt(s / π)`.
    SqrtOverPi(Rational),
}

impl Scale {
    pub fn value(&self) -> f64 {
        match self {
            Scale::Unit => 1.0,
            Scale::SqrtOverPi(s) => (s.to_f64() / std::f64::consts::PI).sqrt(),
        }
    }

    pub fn squared_times_pi(&self) -> Option<&Rational> {
        match self {
            Scale::Unit => None,
            Scale::SqrtOverPi(s) => Some(s),
        }
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scale::Unit => f.write_str("1"),
            Scale::SqrtOverPi(s) => write!(f, "sqrt({s}/pi)"),
        }
    }
}

/// One real harmonic `scale · shape`.
#[derive(Clone, Debug, PartialEq)]
pub struct RealHarmonic {
    pub shape: Polynomial<Rational>,
    pub scale: Scale,
}

impl RealHarmonic {
    pub fn to_f64(&self) -> Polynomial<f64> {
        self.shape.to_f64().scale(&self.scale.value())
    }

    pub fn eval(&self, x: &[f64; 3]) -> f64 {
        self.scale.value() * self.shape.to_f64().eval_f64(x)
    }
}

impl fmt::Display for RealHarmonic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scale {
            Scale::Unit => write!(f, "{}", self.shape),
            _ => write!(f, "{} * ({})", self.scale, self.shape),
        }
    }
}

/// The `2n+1` real harmonics `I_n^ℓ` of degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicBasis {
    degree: u32,
    style: BasisStyle,
    elements: Vec<RealHarmonic>,
}

impl HarmonicBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn style(&self) -> BasisStyle {
        self.style
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[RealHarmonic] {
        &self.elements
    }

    /// Exact polynomial parts, without the normalisation factors.
    pub fn shapes(&self) -> Vec<Polynomial<Rational>> {
        self.elements.iter().map(|e| e.shape.clone()).collect()
    }

    /// Values `I_n^ℓ(x)` for all `ℓ`.
    pub fn eval(&self, x: &[f64; 3]) -> Vec<f64> {
        self.elements.iter().map(|e| e.eval(x)).collect()
    }

    /// Exact polynomials for the integer style; `None` for the orthonormal
    /// style whose factors are irrational.
    pub fn exact_polynomials(&self) -> Option<Vec<Polynomial<Rational>>> {
        self.elements
            .iter()
            .map(|e| match e.scale {
                Scale::Unit => Some(e.shape.clone()),
                Scale::SqrtOverPi(_) => None,
            })
            .collect()
    }
}

const INTEGER_TABLE: [&[&str]; 5] = [
    &["1"],
    &["x1", "x2", "x3"],
    &["x1^2 - x2^2", "x1^2 - x3^2", "x1 x2", "x1 x3", "x2 x3"],
    &[
        "x1^3 - 3x1 x2^2",
        "x2^3 - 3x1^2 x2",
        "x1^3 - 3x1 x3^2",
        "x3^3 - 3x1^2 x3",
        "x2^3 - 3x2 x3^2",
        "x3^3 - 3x2^2 x3",
        "x1 x2 x3",
    ],
    &[
        "x1^4 - 6x1^2 x2^2 + x2^4",
        "x1^4 - 6x1^2 x3^2 + x3^4",
        "x2^4 - 6x2^2 x3^2 + x3^4",
        "x1^3 x2 - x1 x2^3",
        "x1^3 x3 - x1 x3^3",
        "x2^3 x3 - x2 x3^3",
        "3x1^2 x2 x3 - x2 x3^3",
        "3x1 x2^2 x3 - x1 x3^3",
        "3x1 x2 x3^2 - x2 x1^3",
    ],
];

/// `(s, shape)` with element `sqrt(s/π) · shape`.
const ORTHONORMAL_TABLE: [&[(i64, i64, &str)]; 5] = [
    &[(1, 4, "1")],
    &[(3, 4, "x1"), (3, 4, "x2"), (3, 4, "x3")],
    &[
        (15, 4, "x1 x2"),
        (15, 4, "x2 x3"),
        (15, 4, "x1 x3"),
        (5, 16, "x1^2 - 2x2^2 + x3^2"),
        (15, 16, "x1^2 - x3^2"),
    ],
    &[
        (35, 32, "x1^3 - 3x1 x2^2"),
        (35, 32, "-3x1^2 x2 + x2^3"),
        (21, 32, "x1 (x1^2 + x2^2 - 4x3^2)"),
        (35, 32, "-3x1^2 x3 + x3^3"),
        (21, 32, "x2 (x1^2 + x2^2 - 4x3^2)"),
        (21, 32, "x3 (x1^2 - 4x2^2 + x3^2)"),
        (105, 4, "x1 x2 x3"),
    ],
    &[
        (315, 256, "x1^4 - 6x1^2 x2^2 + x2^4"),
        (5, 256, "7x1^4 - x2^4 + 8x3^4 + 6x1^2 (x2^2 - 8x3^2)"),
        (1, 16, "-x1^4 + 4x2^4 - 27x2^2 x3^2 + 4x3^4 + 3x1^2 (x2^2 + x3^2)"),
        (315, 16, "x1 x2 (x1^2 - x2^2)"),
        (315, 16, "x1 x3 (x1^2 - x3^2)"),
        (315, 16, "x2 x3 (x2^2 - x3^2)"),
        (45, 16, "-x2 x3 (-6x1^2 + x2^2 + x3^2)"),
        (45, 16, "-x1 x3 (x1^2 - 6x2^2 + x3^2)"),
        (45, 16, "-x1 x2 (x1^2 + x2^2 - 6x3^2)"),
    ],
];

fn table_poly(s: &str) -> Polynomial<Rational> {
    let p = parse_polynomial(s).expect("built-in table entry parses");
    if p.nvars() == 3 {
        p
    } else {
        Polynomial::from_terms(3, p.terms().map(|(m, c)| (*m, c.clone())))
            .expect("built-in table entry is a polynomial in x")
    }
}

/// The real harmonic basis of degree `n` in the requested style.
///
/// Degrees up to 4 use the built-in tables; higher degrees are computed from
/// the null space of the Laplacian and, for the orthonormal style, exact
/// Gram–Schmidt with respect to the sphere inner product.
pub fn real_basis(n: u32, style: BasisStyle) -> HarmonicBasis {
    let elements = match (style, n) {
        (BasisStyle::Integer, 0..=4) => INTEGER_TABLE[n as usize]
            .iter()
            .map(|s| RealHarmonic {
                shape: table_poly(s),
                scale: Scale::Unit,
            })
            .collect(),
        (BasisStyle::Orthonormal, 0..=4) => ORTHONORMAL_TABLE[n as usize]
            .iter()
            .map(|&(num, den, s)| RealHarmonic {
                shape: table_poly(s),
                scale: Scale::SqrtOverPi(crate::field::rat(num, den)),
            })
            .collect(),
        (BasisStyle::Integer, _) => laplacian_null_space(n)
            .into_iter()
            .map(|shape| RealHarmonic {
                shape,
                scale: Scale::Unit,
            })
            .collect(),
        (BasisStyle::Orthonormal, _) => orthonormalize(&laplacian_null_space(n)),
    };
    HarmonicBasis {
        degree: n,
        style,
        elements,
    }
}

/// Basis of the degree-`n` harmonic polynomials. Columns with high powers of
/// `x3` are eliminated first, so each free monomial has `x3`-degree at most 1.
pub fn laplacian_null_space(n: u32) -> Vec<Polynomial<Rational>> {
    let mut cols = Monomial::of_degree(3, n);
    cols.sort_by_key(|m| std::cmp::Reverse((m.0[2], m.0[1])));
    if n < 2 {
        return cols
            .iter()
            .map(|m| Polynomial::from_terms(3, [(*m, Rational::one())]).expect("3 variables"))
            .collect();
    }
    let rows = Monomial::of_degree(3, n - 2);
    let mut matrix = vec![vec![Rational::zero(); cols.len()]; rows.len()];
    for (j, m) in cols.iter().enumerate() {
        let lap = Polynomial::from_terms(3, [(*m, Rational::one())])
            .expect("3 variables")
            .laplacian()
            .expect("3 variables");
        for (i, r) in rows.iter().enumerate() {
            matrix[i][j] = lap.coeff(r);
        }
    }
    linalg::null_space(&matrix, cols.len(), 0.0)
        .iter()
        .map(|v| Polynomial::from_coeff_vector(3, &cols, v).canonical())
        .collect()
}

fn orthonormalize(polys: &[Polynomial<Rational>]) -> Vec<RealHarmonic> {
    let mut done: Vec<(Polynomial<Rational>, Rational)> = Vec::new();
    for p in polys {
        let mut v = p.clone();
        for (u, norm) in &done {
            let proj = sphere::inner_over_pi(p, u) / norm;
            v = &v - &u.scale(&proj);
        }
        let v = v.canonical();
        let norm = sphere::inner_over_pi(&v, &v);
        done.push((v, norm));
    }
    done.into_iter()
        .map(|(shape, norm)| RealHarmonic {
            shape,
            scale: Scale::SqrtOverPi(norm.recip()),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn gram(basis: &HarmonicBasis) -> Vec<Vec<Rational>> {
        let el = basis.elements();
        el.iter()
            .map(|a| {
                el.iter()
                    .map(|b| sphere::inner_over_pi(&a.shape, &b.shape))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn tables_are_harmonic_and_independent() {
        for n in 0..=6 {
            for style in [BasisStyle::Integer, BasisStyle::Orthonormal] {
                let b = real_basis(n, style);
                assert_eq!(b.len(), 2 * n as usize + 1, "n={n} {style}");
                for e in b.elements() {
                    assert!(e.shape.is_homogeneous(n));
                    assert!(e.shape.is_harmonic());
                }
                let shapes = b.shapes();
                let mons = Polynomial::monomial_support(shapes.iter());
                let rows: Vec<Vec<Rational>> =
                    shapes.iter().map(|p| p.coeff_vector(&mons)).collect();
                assert_eq!(linalg::rank(&rows, 0.0), b.len());
            }
        }
    }

    #[test]
    fn orthonormal_style_is_exactly_orthonormal() {
        for n in 0..=6 {
            let b = real_basis(n, BasisStyle::Orthonormal);
            let g = gram(&b);
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let s = b.elements()[i].scale.squared_times_pi().unwrap();
                    if i == j {
                        assert_eq!(v * s, rat(1, 1), "n={n} i={i}");
                    } else {
                        assert!(v.is_zero(), "n={n} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn integer_table_is_not_orthogonal() {
        let g = gram(&real_basis(2, BasisStyle::Integer));
        assert!(!g[0][1].is_zero());
    }

    #[test]
    fn spec_examples() {
        let b1 = real_basis(1, BasisStyle::Integer);
        let names: Vec<String> = b1.elements().iter().map(|e| e.to_string()).collect();
        assert_eq!(names, ["x1", "x2", "x3"]);
        assert_eq!(real_basis(0, BasisStyle::Integer).shapes()[0], Polynomial::one(3));
        let b2 = real_basis(2, BasisStyle::Orthonormal);
        let target = table_poly("x1^2 - 2x2^2 + x3^2");
        assert!(b2
            .elements()
            .iter()
            .any(|e| e.shape == target && e.scale == Scale::SqrtOverPi(rat(5, 16))));
    }

    #[test]
    fn null_space_basis_spans_tables() {
        for n in 0..=4 {
            let a = laplacian_null_space(n);
            let b = real_basis(n, BasisStyle::Integer).shapes();
            let mons = Polynomial::monomial_support(a.iter().chain(&b));
            let ra: Vec<_> = a.iter().map(|p| p.coeff_vector(&mons)).collect();
            let rb: Vec<_> = b.iter().map(|p| p.coeff_vector(&mons)).collect();
            assert!(linalg::same_span(&ra, &rb, 0.0), "n={n}");
        }
    }

    #[test]
    fn style_round_trip() {
        for s in [BasisStyle::Integer, BasisStyle::Orthonormal] {
            assert_eq!(s.as_str().parse::<BasisStyle>().unwrap(), s);
        }
        assert!("other".parse::<BasisStyle>().is_err());
    }
}
