use std::fmt;

use crate::field::Rational;
use crate::harmonics::{real_basis, BasisStyle, HarmonicBasis};
use crate::polyalg::{Block, Monomial, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// Harmonic polynomials of one degree in `x`.
    Harmonic { degree: u32 },
    /// `S_pq`: symmetrised products of degree-`p` and degree-`q` harmonics.
    SymmetricProduct { p: u32, q: u32 },
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Harmonic { degree } => write!(f, "H{degree}"),
            SpaceKind::SymmetricProduct { p, q } => write!(f, "S{p}{q}"),
        }
    }
}

/// A finite-dimensional space of polynomials with an ordered exact basis on
/// which rotations act by substitution.
#[derive(Clone, Debug)]
pub struct RepresentationSpace {
    kind: SpaceKind,
    style: BasisStyle,
    basis: Vec<Polynomial<Rational>>,
    pairs: Vec<(usize, usize)>,
    monomials: Vec<Monomial>,
    factors: (HarmonicBasis, HarmonicBasis),
}

impl RepresentationSpace {
    /// The `2n+1` real harmonics of degree `n`; the basis holds their exact
    /// polynomial parts.
    pub fn harmonic(degree: u32, style: BasisStyle) -> Self {
        let b = real_basis(degree, style);
        let basis = b.shapes();
        let monomials = Monomial::of_degree(3, degree);
        Self {
            kind: SpaceKind::Harmonic { degree },
            style,
            pairs: (0..basis.len()).map(|i| (i, 0)).collect(),
            basis,
            monomials,
            factors: (b.clone(), b),
        }
    }

    /// `S_pq` with basis `e_ij = I_p^i(x) I_q^j(y) + I_p^i(y) I_q^j(x)` in
    /// lexicographic `(i, j)` order, restricted to `i <= j` when `p = q`.
    pub fn symmetric_product(p: u32, q: u32, style: BasisStyle) -> Self {
        let bp = real_basis(p, style);
        let bq = real_basis(q, style);
        let sp = bp.shapes();
        let sq = bq.shapes();
        let mut basis = Vec::new();
        let mut pairs = Vec::new();
        for (i, a) in sp.iter().enumerate() {
            for (j, b) in sq.iter().enumerate() {
                if p == q && j < i {
                    continue;
                }
                let ax = a.embed(Block::X);
                let ay = a.embed(Block::Y);
                let bx = b.embed(Block::X);
                let by = b.embed(Block::Y);
                basis.push(&(&ax * &by) + &(&ay * &bx));
                pairs.push((i, j));
            }
        }
        let mut monomials = Vec::new();
        for mx in Monomial::of_degree(3, p) {
            for my in Monomial::of_degree(3, q) {
                let a = Monomial::xy([mx.0[0], mx.0[1], mx.0[2]], [my.0[0], my.0[1], my.0[2]]);
                let b = Monomial::xy([my.0[0], my.0[1], my.0[2]], [mx.0[0], mx.0[1], mx.0[2]]);
                monomials.push(a);
                if p != q {
                    monomials.push(b);
                }
            }
        }
        monomials.sort();
        monomials.dedup();
        Self {
            kind: SpaceKind::SymmetricProduct { p, q },
            style,
            basis,
            pairs,
            monomials,
            factors: (bp, bq),
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn style(&self) -> BasisStyle {
        self.style
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Polynomial<Rational>] {
        &self.basis
    }

    /// `(i, j)` offsets (in `0..2p+1`, `0..2q+1`) of each basis element;
    /// `(ℓ, 0)` for a harmonic space.
    pub fn index_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Monomials spanning every basis element.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The real harmonic bases the space is built from.
    pub fn factors(&self) -> (&HarmonicBasis, &HarmonicBasis) {
        (&self.factors.0, &self.factors.1)
    }

    pub(crate) fn block(&self) -> Block {
        match self.kind {
            SpaceKind::Harmonic { .. } => Block::X,
            SpaceKind::SymmetricProduct { .. } => Block::Both,
        }
    }

    /// `Σ_k w_k basis_k`.
    pub fn combine<F: crate::field::Field>(&self, w: &[F]) -> Polynomial<F> {
        let nvars = self.basis.first().map_or(3, Polynomial::nvars);
        let mut out = Polynomial::zero(nvars);
        for (c, b) in w.iter().zip(&self.basis) {
            if !c.is_zero() {
                out = &out + &b.map_coeffs(|v| F::from_rational(v)).scale(c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::parse_polynomial;

    #[test]
    fn dimensions() {
        for p in 0..=3 {
            for q in p..=3 {
                let s = RepresentationSpace::symmetric_product(p, q, BasisStyle::Integer);
                let d = if p == q {
                    ((2 * p + 1) * (p + 1)) as usize
                } else {
                    ((2 * p + 1) * (2 * q + 1)) as usize
                };
                assert_eq!(s.dim(), d, "S{p}{q}");
                for b in s.basis() {
                    for (m, _) in b.terms() {
                        assert!(s.monomials().binary_search(m).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn s11_basis_order() {
        let s = RepresentationSpace::symmetric_product(1, 1, BasisStyle::Integer);
        let want = ["2x1y1", "x1y2+x2y1", "x1y3+x3y1", "2x2y2", "x2y3+x3y2", "2x3y3"];
        for (b, w) in s.basis().iter().zip(want) {
            assert_eq!(b, &parse_polynomial(w).unwrap());
        }
        assert_eq!(s.index_pairs()[1], (0, 1));
    }
}
