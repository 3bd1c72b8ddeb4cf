use std::fmt;

use serde::Serialize;

use super::{InvariantSubspace, InvariantsError, Matrix, SpaceKind};
use crate::field::{reconstruct_rational, Field};
use crate::harmonics::BasisStyle;
use crate::linalg::{self, Rows};

/// Entry `(i, j)` of the block `N_pq`, i.e. the coefficient `M^H_{qjpi}`,
/// with `i ∈ −p..p` and `j ∈ −q..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoeffIndex {
    pub p: u32,
    pub i: i32,
    pub q: u32,
    pub j: i32,
}

impl CoeffIndex {
    fn from_offsets(p: u32, q: u32, row: usize, col: usize) -> Self {
        Self {
            p,
            i: row as i32 - p as i32,
            q,
            j: col as i32 - q as i32,
        }
    }

    /// Row and column offsets in the block matrix.
    pub fn offsets(&self) -> (usize, usize) {
        ((self.i + self.p as i32) as usize, (self.j + self.q as i32) as usize)
    }
}

impl fmt::Display for CoeffIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M^H_{{{},{},{},{}}}", self.q, self.j, self.p, self.i)
    }
}

/// `entry = Σ coefficient · independent`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub entry: CoeffIndex,
    pub terms: Vec<(f64, CoeffIndex)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.entry)?;
        for (k, (c, idx)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0.0 { ("-", -c) } else { ("+", *c) };
            match (k, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if (mag - 1.0).abs() > 1e-12 {
                match reconstruct_rational(mag, 1000, 1e-9) {
                    Some(r) => write!(f, "{r}*")?,
                    None => write!(f, "{mag}*")?,
                }
            }
            write!(f, "{idx}")?;
        }
        Ok(())
    }
}

/// Which HGPT coefficients of a block are free, which are determined by
/// the free ones, and which vanish, for a given symmetry group.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientPattern {
    pub p: u32,
    pub q: u32,
    pub style: BasisStyle,
    pub independent: Vec<CoeffIndex>,
    pub relations: Vec<Relation>,
    pub zeros: Vec<CoeffIndex>,
    /// Row `k`: the block (flattened row-major) with independent coefficient
    /// `k` set to one and the others to zero.
    pub parametrization: Rows<f64>,
}

impl CoefficientPattern {
    pub fn rows(&self) -> usize {
        2 * self.p as usize + 1
    }

    pub fn cols(&self) -> usize {
        2 * self.q as usize + 1
    }
}

/// Reads the HGPT coefficient relations off an invariant subspace of `S_pq`.
///
/// An invariant `Σ w_ij e_ij` corresponds to the block with `N_ij = w_ij`
/// for `p ≠ q`, and to the symmetric block with `N_ii = w_ii`,
/// `N_ij = N_ji = w_ij / 2` for `p = q`. The independent coefficients are the
/// pivots of the row-reduced set of such blocks.
pub fn coefficient_pattern(inv: &InvariantSubspace) -> Result<CoefficientPattern, InvariantsError> {
    let SpaceKind::SymmetricProduct { p, q } = inv.space.kind() else {
        return Err(InvariantsError::NotSymmetricProduct);
    };
    let style = inv.space.style();
    let (rows, cols) = (2 * p as usize + 1, 2 * q as usize + 1);
    let pairs = inv.space.index_pairs();
    let (fp, fq) = inv.space.factors();
    let sp: Vec<f64> = fp.elements().iter().map(|e| e.scale.value()).collect();
    let sq: Vec<f64> = fq.elements().iter().map(|e| e.scale.value()).collect();

    fn blocks<F: Field>(w: &Rows<F>, pairs: &[(usize, usize)], symmetric: bool, cols: usize, rows: usize) -> Rows<F> {
        let half = F::one() / F::from_i64(2);
        w.iter()
            .map(|wk| {
                let mut n = vec![F::zero(); rows * cols];
                for (c, &(i, j)) in wk.iter().zip(pairs) {
                    if symmetric && i != j {
                        n[i * cols + j] = c.clone() * half.clone();
                        n[j * cols + i] = c.clone() * half.clone();
                    } else {
                        n[i * cols + j] = c.clone();
                    }
                }
                n
            })
            .collect()
    }

    let exact = match (&inv.coordinates, style) {
        (Matrix::Exact(w), BasisStyle::Integer) => {
            Some(blocks(w, pairs, p == q, cols, rows))
        }
        _ => None,
    };
    let (pivots, reduced): (Vec<usize>, Rows<f64>) = match exact {
        Some(phi) => {
            let e = linalg::rref(phi, rows * cols, 0.0);
            (e.pivots, linalg::to_f64_rows(&e.rows))
        }
        None => {
            let mut phi = blocks(&inv.coordinates.to_f64(), pairs, p == q, cols, rows);
            // basis polynomials carry factors c_i c_j; the coefficients absorb their inverse
            for n in &mut phi {
                for i in 0..rows {
                    for j in 0..cols {
                        n[i * cols + j] /= sp[i] * sq[j];
                    }
                }
            }
            let e = linalg::rref(phi, rows * cols, crate::field::FLOAT_TOL);
            let mut r = e.rows;
            for row in &mut r {
                for v in row.iter_mut() {
                    if v.abs() < 1e-12 {
                        *v = 0.0;
                    }
                }
            }
            (e.pivots, r)
        }
    };
    let index = |e: usize| CoeffIndex::from_offsets(p, q, e / cols, e % cols);
    let mut relations = Vec::new();
    let mut zeros = Vec::new();
    for e in 0..rows * cols {
        if pivots.contains(&e) {
            continue;
        }
        let terms: Vec<(f64, CoeffIndex)> = pivots
            .iter()
            .enumerate()
            .filter(|(k, _)| reduced[*k][e] != 0.0)
            .map(|(k, &pc)| (reduced[k][e], index(pc)))
            .collect();
        if terms.is_empty() {
            zeros.push(index(e));
        } else {
            relations.push(Relation {
                entry: index(e),
                terms,
            });
        }
    }
    Ok(CoefficientPattern {
        p,
        q,
        style,
        independent: pivots.iter().map(|&e| index(e)).collect(),
        relations,
        zeros,
        parametrization: reduced,
    })
}
