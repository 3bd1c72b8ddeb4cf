use std::collections::HashMap;

use super::polynomial::{Monomial, Polynomial};
use super::PolyError;
use crate::field::{Field, Rational};

type P = Polynomial<Rational>;

fn r_squared() -> P {
    let mut p = P::zero(3);
    for v in 0..3 {
        let mut e = [0u16; 6];
        e[v] = 2;
        p.add_term(Monomial(e), Rational::from_i64(1));
    }
    p
}

/// Numerator `N_β` of `∂^β (1/r) = N_β(x) / r^(2|β|+1)`; homogeneous of degree `|β|`.
pub fn inverse_distance_derivative(beta: [u16; 3]) -> P {
    let mut memo = HashMap::new();
    derivative_numerator(beta, &mut memo, &r_squared())
}

fn derivative_numerator(beta: [u16; 3], memo: &mut HashMap<[u16; 3], P>, r2: &P) -> P {
    if let Some(p) = memo.get(&beta) {
        return p.clone();
    }
    let result = match (0..3).find(|&i| beta[i] > 0) {
        None => P::one(3),
        Some(i) => {
            let mut prev = beta;
            prev[i] -= 1;
            let k = prev.iter().map(|&e| e as i64).sum::<i64>();
            let np = derivative_numerator(prev, memo, r2);
            // d/dx_i [N / r^(2k+1)] = (r² ∂_i N − (2k+1) x_i N) / r^(2k+3)
            let lhs = r2 * &np.derivative(i);
            let rhs = (&P::var(3, i) * &np).scale(&Rational::from_i64(2 * k + 1));
            &lhs - &rhs
        }
    };
    memo.insert(beta, result.clone());
    result
}

/// `r^(2m+1) · q(∂/∂x₁, ∂/∂x₂, ∂/∂x₃)(1/r)` for a homogeneous `q` of degree
/// `m`, returned in canonical form (integer coefficients with content 1 and
/// a positive sign-leading coefficient). Multiples of `r²` map to zero.
pub fn kelvin_harmonicize(q: &P, m: u32) -> Result<P, PolyError> {
    if q.nvars() != 3 {
        return Err(PolyError::VariableCount {
            expected: 3,
            found: q.nvars(),
        });
    }
    if !q.is_homogeneous(m) {
        return Err(PolyError::NotHomogeneous(m));
    }
    let r2 = r_squared();
    let mut memo = HashMap::new();
    let mut out = P::zero(3);
    for (mono, c) in q.terms() {
        let beta = [mono.0[0], mono.0[1], mono.0[2]];
        let n = derivative_numerator(beta, &mut memo, &r2);
        out = &out + &n.scale(c);
    }
    Ok(out.canonical())
}
