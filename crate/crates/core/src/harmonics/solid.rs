use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_traits::{One, Zero};

use super::Scale;
use crate::field::{Field, Rational};
use crate::polyalg::{Monomial, Polynomial};

type P = Polynomial<Rational>;

/// `H_n^m = scale · (re + i·im)`, the regular solid harmonic `r^n Y_n^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSolidHarmonic {
    pub degree: u32,
    pub order: i32,
    pub re: P,
    pub im: P,
    pub scale: Scale,
}

impl ComplexSolidHarmonic {
    pub fn eval(&self, x: &[f64; 3]) -> Complex64 {
        let s = self.scale.value();
        Complex64::new(
            s * self.re.to_f64().eval_f64(x),
            s * self.im.to_f64().eval_f64(x),
        )
    }

    /// Complex coefficients on the given monomials.
    pub fn monomial_coefficients(&self, monomials: &[Monomial]) -> Vec<Complex64> {
        let s = self.scale.value();
        monomials
            .iter()
            .map(|m| Complex64::new(s * self.re.coeff(m).to_f64(), s * self.im.coeff(m).to_f64()))
            .collect()
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Coefficients of `d^m/dt^m P_n(t)` in increasing powers of `t`.
fn legendre_derivative(n: u32, m: u32) -> Vec<Rational> {
    let mut p = vec![Rational::zero(); n as usize + 1];
    let two_n = Rational::from_integer(BigInt::from(2).pow(n));
    for j in 0..=n / 2 {
        let c = binomial(BigInt::from(n), BigInt::from(j))
            * binomial(BigInt::from(2 * n - 2 * j), BigInt::from(n));
        let c = Rational::from_integer(if j % 2 == 0 { c } else { -c }) / &two_n;
        p[(n - 2 * j) as usize] = c;
    }
    for _ in 0..m {
        p = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(k)))
            .collect();
    }
    p
}

/// The `2n+1` solid harmonics `H_n^m`, ordered `m = −n..n`.
///
/// `H_n^m = N (−1)^m (x1 + i x2)^m Σ_k c_k x3^k r^(n−m−k)` for `m ≥ 0`, with
/// `c_k` the coefficients of `P_n^(m)` and `N² = (2n+1)(n−m)! / (4π(n+m)!)`;
/// negative orders follow from `H_n^{−m} = (−1)^m conj(H_n^m)`.
pub fn complex_solid_harmonics(n: u32) -> Vec<ComplexSolidHarmonic> {
    let x = |i| P::var(3, i);
    let r2 = &(&x(0) * &x(0)) + &(&(&x(1) * &x(1)) + &(&x(2) * &x(2)));
    let mut positive = Vec::new();
    // (x1 + i x2)^m, real and imaginary parts
    let (mut zr, mut zi) = (P::one(3), P::zero(3));
    for m in 0..=n {
        if m > 0 {
            let nr = &(&zr * &x(0)) - &(&zi * &x(1));
            let ni = &(&zr * &x(1)) + &(&zi * &x(0));
            zr = nr;
            zi = ni;
        }
        let c = legendre_derivative(n, m);
        let mut q = P::zero(3);
        for (k, ck) in c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let rest = (n - m) as usize - k;
            let term = &x(2).pow(k as u32) * &r2.pow((rest / 2) as u32);
            q = &q + &term.scale(ck);
        }
        let sign = Rational::from_i64(if m % 2 == 0 { 1 } else { -1 });
        let s = Rational::new(
            BigInt::from(2 * n + 1) * factorial(n - m),
            BigInt::from(4) * factorial(n + m),
        );
        positive.push(ComplexSolidHarmonic {
            degree: n,
            order: m as i32,
            re: (&zr * &q).scale(&sign),
            im: (&zi * &q).scale(&sign),
            scale: Scale::SqrtOverPi(s),
        });
    }
    let mut out: Vec<ComplexSolidHarmonic> = positive[1..]
        .iter()
        .rev()
        .map(|h| {
            let sign = Rational::from_i64(if h.order % 2 == 0 { 1 } else { -1 });
            ComplexSolidHarmonic {
                degree: n,
                order: -h.order,
                re: h.re.scale(&sign),
                im: h.im.scale(&-sign),
                scale: h.scale.clone(),
            }
        })
        .collect();
    out.extend(positive);
    out
}

/// Monomial expansion `H_n^m = Σ_β a_βm x^β`: the degree-`n` monomials and
/// the matrix with rows indexed by monomial and columns by `m = −n..n`.
pub fn monomial_expansion(n: u32) -> (Vec<Monomial>, DMatrix<Complex64>) {
    let mons = Monomial::of_degree(3, n);
    let hs = complex_solid_harmonics(n);
    let mut a = DMatrix::zeros(mons.len(), hs.len());
    for (j, h) in hs.iter().enumerate() {
        for (i, c) in h.monomial_coefficients(&mons).into_iter().enumerate() {
            a[(i, j)] = c;
        }
    }
    (mons, a)
}
