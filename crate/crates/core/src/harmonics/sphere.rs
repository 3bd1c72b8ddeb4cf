//! Exact integrals over the unit sphere.
//!
//! For even exponents, `∫_S x₁^(2a) x₂^(2b) x₃^(2c) dS = 4π (2a−1)!!(2b−1)!!(2c−1)!! / (2a+2b+2c+1)!!`,
//! and the integral vanishes when any exponent is odd. Every polynomial
//! inner product on the sphere is therefore a rational multiple of π.

use num_bigint::BigInt;
use num_traits::One;

use crate::field::Rational;
use crate::polyalg::{Monomial, Polynomial};

fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

/// `(1/π) ∫_S x^β dS`.
pub fn monomial_moment_over_pi(m: &Monomial) -> Rational {
    let e = &m.0[..3];
    if e.iter().any(|&v| v % 2 == 1) {
        return Rational::from_integer(BigInt::from(0));
    }
    let num: BigInt = e.iter().map(|&v| double_factorial(v as i64 - 1)).product::<BigInt>() * 4;
    let total: i64 = e.iter().map(|&v| v as i64).sum();
    Rational::new(num, double_factorial(total + 1))
}

/// `(1/π) ⟨p, q⟩_S` for real 3-variable polynomials.
pub fn inner_over_pi(p: &Polynomial<Rational>, q: &Polynomial<Rational>) -> Rational {
    let prod = p * q;
    prod.terms()
        .fold(Rational::from_integer(BigInt::from(0)), |acc, (m, c)| {
            acc + c * monomial_moment_over_pi(m)
        })
}
