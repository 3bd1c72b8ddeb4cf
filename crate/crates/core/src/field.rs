//! Coefficient fields shared by the polynomial and linear-algebra code.
//!
//! Two fields are supported: exact rationals, used whenever every group
//! matrix has rational entries, and `f64` for groups built from
//! `cos(2π/n)` with irrational values. Zero tests go through
//! [`Field::is_negligible`] so that the same elimination code is exact on
//! rationals and tolerance-based on floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Default tolerance for rank and zero decisions on floating-point data.
pub const FLOAT_TOL: f64 = 1e-9;

pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_f64(&self) -> f64;

    /// The value itself when the field is exact.
    fn as_rational(&self) -> Option<Rational>;

    /// Exact zero for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
}

impl Field for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn as_rational(&self) -> Option<Rational> {
        None
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it lies within `tol` of `x`.
pub fn reconstruct_rational(x: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    // Continued-fraction convergents.
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut v = x.abs();
    let (mut h0, mut h1): (i128, i128) = (0, 1);
    let (mut k0, mut k1): (i128, i128) = (1, 0);
    let mut best: Option<(i128, i128)> = None;
    for _ in 0..64 {
        let a = v.floor();
        if a > 1e15 {
            break;
        }
        let a = a as i128;
        let h2 = a * h1 + h0;
        let k2 = a * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        best = Some((h2, k2));
        if ((h2 as f64) / (k2 as f64) - x.abs()).abs() <= tol {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - v.floor();
        if frac < 1e-300 {
            break;
        }
        v = 1.0 / frac;
    }
    let (h, k) = best?;
    if ((h as f64) / (k as f64) - x.abs()).abs() > tol {
        return None;
    }
    Some(Rational::new(
        BigInt::from(sign as i128 * h),
        BigInt::from(k),
    ))
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Greatest common divisor of the numerators of `values` (all assumed integral).
pub fn content<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, q| acc.gcd(q.numer()))
        .abs()
}
