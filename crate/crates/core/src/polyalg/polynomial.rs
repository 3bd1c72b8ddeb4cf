use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::PolyError;
use crate::field::{common_denominator, content, reconstruct_rational, Field, Rational};

pub const MAX_VARS: usize = 6;

const VAR_NAMES: [&str; MAX_VARS] = ["x1", "x2", "x3", "y1", "y2", "y3"];

/// Exponent tuple; unused trailing slots stay zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub [u16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn x(a: u16, b: u16, c: u16) -> Self {
        Monomial([a, b, c, 0, 0, 0])
    }

    pub fn xy(x: [u16; 3], y: [u16; 3]) -> Self {
        Monomial([x[0], x[1], x[2], y[0], y[1], y[2]])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn block_degree(&self, block: Block) -> u32 {
        block.vars().map(|v| self.0[v] as u32).sum()
    }

    /// All monomials of the given total degree in the first `nvars`
    /// variables, in descending lexicographic order (`x1^n` first).
    pub fn of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(e: &mut [u16; MAX_VARS], v: usize, nvars: usize, left: u32, out: &mut Vec<Monomial>) {
            if v + 1 == nvars {
                e[v] = left as u16;
                out.push(Monomial(*e));
                e[v] = 0;
                return;
            }
            for k in (0..=left).rev() {
                e[v] = k as u16;
                rec(e, v + 1, nvars, left - k, out);
            }
            e[v] = 0;
        }
        let mut out = Vec::new();
        if nvars > 0 {
            rec(&mut [0; MAX_VARS], 0, nvars, degree, &mut out);
        }
        out
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i] + other.0[i];
        }
        Monomial(e)
    }

    /// Key for the sign convention: last variable most significant.
    fn sign_key(&self) -> [u16; MAX_VARS] {
        let mut k = self.0;
        k.reverse();
        k
    }

    fn fmt_vars(&self, f: &mut fmt::Formatter<'_>, nvars: usize) -> fmt::Result {
        let mut first = true;
        for (v, name) in VAR_NAMES.iter().enumerate().take(nvars) {
            let e = self.0[v];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Which variable block a linear substitution acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    X,
    Y,
    Both,
}

impl Block {
    fn vars(self) -> std::ops::Range<usize> {
        match self {
            Block::X => 0..3,
            Block::Y => 3..6,
            Block::Both => 0..6,
        }
    }
}

/// 3×3 matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat3<F>(pub [[F; 3]; 3]);

impl<F: Field> Mat3<F> {
    pub fn identity() -> Self {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| if i == j { F::one() } else { F::zero() })
        }))
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> F) -> Self {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))))
    }

    pub fn mul(&self, other: &Mat3<F>) -> Mat3<F> {
        Mat3::from_fn(|i, j| {
            (0..3).fold(F::zero(), |acc, k| {
                acc + self.0[i][k].clone() * other.0[k][j].clone()
            })
        })
    }

    pub fn transpose(&self) -> Mat3<F> {
        Mat3::from_fn(|i, j| self.0[j][i].clone())
    }

    pub fn scale(&self, s: &F) -> Mat3<F> {
        Mat3::from_fn(|i, j| self.0[i][j].clone() * s.clone())
    }

    pub fn apply(&self, v: &[F; 3]) -> [F; 3] {
        std::array::from_fn(|i| {
            (0..3).fold(F::zero(), |acc, k| acc + self.0[i][k].clone() * v[k].clone())
        })
    }

    pub fn trace(&self) -> F {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone()
    }

    pub fn det(&self) -> F {
        let m = &self.0;
        let minor = |a: usize, b: usize, c: usize, d: usize| {
            m[1][a].clone() * m[2][b].clone() - m[1][c].clone() * m[2][d].clone()
        };
        m[0][0].clone() * minor(1, 2, 2, 1) - m[0][1].clone() * minor(0, 2, 2, 0)
            + m[0][2].clone() * minor(0, 1, 1, 0)
    }

    /// Sum of the principal 2×2 minors.
    pub fn principal_minor_sum(&self) -> F {
        let m = &self.0;
        let pm = |a: usize, b: usize| {
            m[a][a].clone() * m[b][b].clone() - m[a][b].clone() * m[b][a].clone()
        };
        pm(0, 1) + pm(0, 2) + pm(1, 2)
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Mat3<G> {
        Mat3::from_fn(|i, j| f(&self.0[i][j]))
    }

    pub fn to_f64(&self) -> Mat3<f64> {
        self.map(Field::to_f64)
    }

    pub fn max_abs_diff(&self, other: &Mat3<F>) -> f64 {
        let mut d = 0.0f64;
        for i in 0..3 {
            for j in 0..3 {
                d = d.max((self.0[i][j].clone() - other.0[i][j].clone()).magnitude());
            }
        }
        d
    }

    /// `‖RᵀR − I‖_max`.
    pub fn orthogonality_residual(&self) -> f64 {
        self.transpose().mul(self).max_abs_diff(&Mat3::identity())
    }

    pub fn rows_f64(&self) -> [[f64; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j].to_f64()))
    }
}

/// Sparse polynomial with canonical exponent keys and no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<F> {
    nvars: usize,
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Polynomial<F> {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars == 3 || nvars == 6, "polynomials have 3 or 6 variables");
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    /// The single variable with index `v` (0..3 for x, 3..6 for y).
    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = [0u16; MAX_VARS];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), F::one());
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Result<Self, PolyError> {
        if nvars != 3 && nvars != 6 {
            return Err(PolyError::UnsupportedVariables(nvars));
        }
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            if m.0[nvars..].iter().any(|&e| e != 0) {
                return Err(PolyError::VariableCount {
                    expected: nvars,
                    found: MAX_VARS,
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = v.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(*m, c.clone() * s.clone());
        }
        p
    }

    pub fn map_coeffs<G: Field>(&self, f: impl Fn(&F) -> G) -> Polynomial<G> {
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            p.add_term(*m, f(c));
        }
        p
    }

    pub fn to_f64(&self) -> Polynomial<f64> {
        self.map_coeffs(Field::to_f64)
    }

    /// Drops coefficients with magnitude `<= tol · max|coeff|`.
    pub fn prune(&self, tol: f64) -> Self {
        let scale = self.max_abs_coeff();
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if !c.is_negligible(tol * scale) {
                p.add_term(*m, c.clone());
            }
        }
        p
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(Field::magnitude).fold(0.0, f64::max)
    }

    fn check_same_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(PolyError::VariableCount {
                expected: self.nvars,
                found: other.nvars,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_vars(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        Ok(p)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_vars(other)?;
        let mut p = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                p.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(p)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut d = *m;
            d.0[v] -= 1;
            p.add_term(d, c.clone() * F::from_i64(e as i64));
        }
        p
    }

    /// `∂²/∂x₁² + ∂²/∂x₂² + ∂²/∂x₃²`.
    pub fn laplacian(&self) -> Result<Self, PolyError> {
        if self.nvars != 3 {
            return Err(PolyError::VariableCount {
                expected: 3,
                found: self.nvars,
            });
        }
        Ok(self.block_laplacian(Block::X))
    }

    /// Laplacian in the variables of one block.
    pub fn block_laplacian(&self, block: Block) -> Self {
        let mut p = Self::zero(self.nvars);
        for v in block.vars().filter(|&v| v < self.nvars) {
            for (m, c) in self.derivative(v).derivative(v).terms {
                p.add_term(m, c);
            }
        }
        p
    }

    pub fn is_harmonic(&self) -> bool {
        match self.nvars {
            3 => self.block_laplacian(Block::X).is_zero(),
            _ => {
                self.block_laplacian(Block::X).is_zero() && self.block_laplacian(Block::Y).is_zero()
            }
        }
    }

    pub fn evaluate(&self, point: &[F]) -> F {
        self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate().take(self.nvars) {
                for _ in 0..e {
                    t = t * point[v].clone();
                }
            }
            acc + t
        })
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms.iter().fold(0.0, |acc, (m, c)| {
            let mut t = c.to_f64();
            for (v, &e) in m.0.iter().enumerate().take(self.nvars) {
                if e > 0 {
                    t *= point[v].powi(e as i32);
                }
            }
            acc + t
        })
    }

    /// Lifts a 3-variable polynomial into the 6-variable product space,
    /// placing it in the x or y block.
    pub fn embed(&self, block: Block) -> Self {
        let mut p = Polynomial::zero(6);
        for (m, c) in &self.terms {
            let mut e = [0u16; MAX_VARS];
            match block {
                Block::Y => e[3..6].copy_from_slice(&m.0[0..3]),
                _ => e[0..3].copy_from_slice(&m.0[0..3]),
            }
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// `S(x, y) ↦ S(y, x)` for 6-variable polynomials.
    pub fn swap_blocks(&self) -> Self {
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0;
            e.swap(0, 3);
            e.swap(1, 4);
            e.swap(2, 5);
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// `p(Rx)` (and/or `p(Ry)`): every variable of the selected block is
    /// replaced by the corresponding component of `R` applied to the block.
    pub fn compose_linear(&self, r: &Mat3<F>, block: Block) -> Self {
        let block = if self.nvars == 3 { Block::X } else { block };
        let active: Vec<usize> = block.vars().collect();
        let mut forms: Vec<Option<Self>> = vec![None; MAX_VARS];
        for &v in &active {
            let base = if v < 3 { 0 } else { 3 };
            let row = v - base;
            let mut form = Self::zero(self.nvars);
            for j in 0..3 {
                let mut e = [0u16; MAX_VARS];
                e[base + j] = 1;
                form.add_term(Monomial(e), r.0[row][j].clone());
            }
            forms[v] = Some(form);
        }
        let mut powers: Vec<Vec<Self>> = vec![vec![Self::one(self.nvars)]; MAX_VARS];
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut kept = [0u16; MAX_VARS];
            let mut term = Self::constant(self.nvars, c.clone());
            for v in 0..self.nvars {
                let e = m.0[v] as usize;
                match &forms[v] {
                    Some(form) if e > 0 => {
                        while powers[v].len() <= e {
                            let next = powers[v].last().unwrap() * form;
                            powers[v].push(next);
                        }
                        term = &term * &powers[v][e];
                    }
                    _ => kept[v] = m.0[v],
                }
            }
            for (mt, ct) in term.terms {
                out.add_term(mt.mul(&Monomial(kept)), ct);
            }
        }
        out
    }

    /// Coefficients on the given monomial list (missing monomials read as zero).
    pub fn coeff_vector(&self, monomials: &[Monomial]) -> Vec<F> {
        monomials.iter().map(|m| self.coeff(m)).collect()
    }

    pub fn from_coeff_vector(nvars: usize, monomials: &[Monomial], coeffs: &[F]) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in monomials.iter().zip(coeffs) {
            p.add_term(*m, c.clone());
        }
        p
    }

    /// Leading term for sign normalization: compares exponents of the last
    /// variable first (x3 before x2 before x1; the y block before the x block).
    pub fn sign_leading(&self) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by_key(|(m, _)| m.sign_key())
    }

    /// Sorted union of the monomials of all polynomials.
    pub fn monomial_support<'a>(polys: impl IntoIterator<Item = &'a Self>) -> Vec<Monomial> {
        let mut set = std::collections::BTreeSet::new();
        for p in polys {
            set.extend(p.terms.keys().copied());
        }
        set.into_iter().collect()
    }
}

impl Polynomial<Rational> {
    /// Clears denominators, divides by the integer content and makes the
    /// [`sign_leading`](Self::sign_leading) coefficient positive.
    pub fn canonical(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = Rational::from_integer(common_denominator(self.terms.values()));
        let cleared = self.scale(&den);
        let g = content(cleared.terms.values());
        let mut s = Rational::from_integer(BigInt::one()) / Rational::from_integer(g);
        if cleared.sign_leading().map(|(_, c)| c.is_negative()).unwrap_or(false) {
            s = -s;
        }
        cleared.scale(&s)
    }

    /// `self = λ·other` for some `λ > 0`.
    pub fn equals_up_to_positive_scale(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (m, a) = self.terms.iter().next().unwrap();
        let b = other.coeff(m);
        if b.is_zero() || (a.is_positive() != b.is_positive()) {
            return false;
        }
        let lambda = a.clone() / b;
        *self == other.scale(&lambda)
    }
}

impl Polynomial<f64> {
    /// Attempts to read every coefficient (after dividing by the
    /// sign-leading one) as a fraction with denominator `<= max_den`.
    pub fn reconstruct(&self, max_den: i64, tol: f64) -> Option<Polynomial<Rational>> {
        let lead = self.sign_leading()?.1.to_owned();
        let mut p = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let v = c / lead;
            if v.abs() <= tol {
                continue;
            }
            p.add_term(*m, reconstruct_rational(v, max_den, tol)?);
        }
        Some(p.canonical())
    }
}

impl<F: Field> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        self.try_add(rhs).expect("variable-count mismatch in add")
    }
}

impl<F: Field> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        self.try_add(&-rhs).expect("variable-count mismatch in sub")
    }
}

impl<F: Field> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        self.try_mul(rhs).expect("variable-count mismatch in mul")
    }
}

impl<F: Field> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        self.scale(&-F::one())
    }
}

impl<F: Field + fmt::Display> fmt::Display for Polynomial<F> {
    /// `coeff*x1^a*x2^b*...` terms in descending lexicographic order
    /// (x1 most significant).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.to_f64() < 0.0;
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.degree() == 0;
            if abs.is_one() && !is_const {
                m.fmt_vars(f, self.nvars)?;
            } else {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "*")?;
                    m.fmt_vars(f, self.nvars)?;
                }
            }
        }
        Ok(())
    }
}
