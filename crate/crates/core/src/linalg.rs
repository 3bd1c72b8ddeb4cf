//! Dense row-major linear algebra over a [`Field`].
//!
//! Matrices are `Vec<Vec<F>>` with one inner vector per row. On floats every
//! zero decision is relative to the largest entry of the matrix involved.

use crate::field::Field;

pub type Rows<F> = Vec<Vec<F>>;

fn max_magnitude<F: Field>(rows: &[Vec<F>]) -> f64 {
    rows.iter()
        .flat_map(|r| r.iter())
        .map(Field::magnitude)
        .fold(0.0, f64::max)
}

fn abs_tol<F: Field>(rows: &[Vec<F>], tol: f64) -> f64 {
    if F::EXACT {
        0.0
    } else {
        tol * max_magnitude(rows).max(1e-300)
    }
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rows: Rows<F>,
    pub pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan elimination with partial pivoting.
pub fn rref<F: Field>(mut rows: Rows<F>, ncols: usize, tol: f64) -> Echelon<F> {
    let eps = abs_tol(&rows, tol);
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let chosen = if F::EXACT {
            (r..nrows).find(|&i| !rows[i][c].is_zero())
        } else {
            let best = (r..nrows)
                .max_by(|&a, &b| rows[a][c].magnitude().total_cmp(&rows[b][c].magnitude()))
                .unwrap_or(r);
            (!rows[best][c].is_negligible(eps)).then_some(best)
        };
        let Some(chosen) = chosen else { continue };
        rows.swap(r, chosen);
        let inv = F::one() / rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..ncols {
                    let sub = factor.clone() * rows[r][j].clone();
                    rows[i][j] = rows[i][j].clone() - sub;
                }
            }
        }
        if !F::EXACT {
            for i in 0..nrows {
                if i != r {
                    rows[i][c] = F::zero();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

pub fn rank<F: Field>(rows: &[Vec<F>], tol: f64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    rref(rows.to_vec(), ncols, tol).rank()
}

/// Basis of `{ v : A v = 0 }` for `A` given by rows with `ncols` columns.
pub fn null_space<F: Field>(rows: &[Vec<F>], ncols: usize, tol: f64) -> Rows<F> {
    let ech = rref(rows.to_vec(), ncols, tol);
    let mut is_pivot = vec![None; ncols];
    for (r, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(r);
    }
    (0..ncols)
        .filter(|&c| is_pivot[c].is_none())
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (r, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = -ech.rows[r][free].clone();
            }
            v
        })
        .collect()
}

/// Indices of the first rows (in order) that are linearly independent of
/// all earlier accepted rows.
pub fn greedy_independent<F: Field>(rows: &[Vec<F>], tol: f64) -> Vec<usize> {
    let eps = abs_tol(rows, tol);
    let mut basis: Vec<(usize, Vec<F>)> = Vec::new();
    let mut chosen = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        for (pc, b) in &basis {
            if !v[*pc].is_zero() {
                let f = v[*pc].clone();
                for (x, y) in v.iter_mut().zip(b) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        let lead = if F::EXACT {
            v.iter().position(|x| !x.is_zero())
        } else {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_negligible(eps))
                .max_by(|a, b| a.1.magnitude().total_cmp(&b.1.magnitude()))
                .map(|(i, _)| i)
        };
        if let Some(pc) = lead {
            let inv = F::one() / v[pc].clone();
            for x in v.iter_mut() {
                *x = x.clone() * inv.clone();
            }
            basis.push((pc, v));
            chosen.push(idx);
        }
    }
    chosen
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert<F: Field>(m: &[Vec<F>], tol: f64) -> Option<Rows<F>> {
    let n = m.len();
    let aug: Rows<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    let ech = rref(aug, 2 * n, tol);
    if ech.rank() < n || ech.pivots.iter().enumerate().any(|(i, &c)| c != i) {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn matmul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Rows<F> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(F::zero(), |acc, k| {
                        if row[k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            acc + row[k].clone() * b[k][j].clone()
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn identity<F: Field>(n: usize) -> Rows<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect())
        .collect()
}

pub fn transpose<F: Field>(m: &[Vec<F>]) -> Rows<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Two row sets span the same space.
pub fn same_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], tol: f64) -> bool {
    let ra = rank(a, tol);
    let rb = rank(b, tol);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    ra == rb && rank(&both, tol) == ra
}

/// Every row of `b` lies in the span of `a`.
pub fn contains_span<F: Field>(a: &[Vec<F>], b: &[Vec<F>], tol: f64) -> bool {
    let ra = rank(a, tol);
    let mut both = a.to_vec();
    both.extend(b.iter().cloned());
    rank(&both, tol) == ra
}

pub fn to_f64_rows<F: Field>(m: &[Vec<F>]) -> Rows<f64> {
    m.iter().map(|r| r.iter().map(Field::to_f64).collect()).collect()
}

/// Solves `c · B = f` for row vectors `c` given a fixed full-row-rank `B`.
#[derive(Clone, Debug)]
pub struct CoordinateSolver<F> {
    basis: Rows<F>,
    pivot_cols: Vec<usize>,
    pivot_inverse: Rows<F>,
    tol: f64,
}

#[derive(Clone, Debug)]
pub struct NotInSpan {
    pub residual: f64,
}

impl<F: Field> CoordinateSolver<F> {
    /// `None` if the rows of `basis` are dependent.
    pub fn new(basis: Rows<F>, tol: f64) -> Option<Self> {
        let d = basis.len();
        let ncols = basis.first().map_or(0, Vec::len);
        let ech = rref(basis.clone(), ncols, tol);
        if ech.rank() < d {
            return None;
        }
        let pivot_cols = ech.pivots;
        let square: Rows<F> = basis
            .iter()
            .map(|r| pivot_cols.iter().map(|&c| r[c].clone()).collect())
            .collect();
        let pivot_inverse = invert(&square, tol)?;
        Some(Self {
            basis,
            pivot_cols,
            pivot_inverse,
            tol,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of `target`, with the residual `‖c·B − f‖_max` checked
    /// against the tolerance (relative to `‖f‖_max` on floats).
    pub fn solve(&self, target: &[F]) -> Result<Vec<F>, NotInSpan> {
        let d = self.basis.len();
        let rhs: Vec<F> = self.pivot_cols.iter().map(|&c| target[c].clone()).collect();
        let coords: Vec<F> = (0..d)
            .map(|j| {
                (0..d).fold(F::zero(), |acc, k| {
                    acc + rhs[k].clone() * self.pivot_inverse[k][j].clone()
                })
            })
            .collect();
        let mut residual = 0.0f64;
        let mut exact_ok = true;
        let scale = target.iter().map(Field::magnitude).fold(1.0, f64::max);
        for (col, t) in target.iter().enumerate() {
            let recon = (0..d).fold(F::zero(), |acc, i| {
                acc + coords[i].clone() * self.basis[i][col].clone()
            });
            let diff = recon - t.clone();
            if F::EXACT && !diff.is_zero() {
                exact_ok = false;
            }
            residual = residual.max(diff.magnitude());
        }
        let ok = if F::EXACT {
            exact_ok
        } else {
            residual <= self.tol * scale
        };
        if ok {
            Ok(coords)
        } else {
            Err(NotInSpan { residual })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, Rational};
    use num_traits::Zero;

    fn q(rows: &[&[i64]]) -> Rows<Rational> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn rank_and_null_space_exact() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, 0.0), 2);
        let ns = null_space(&m, 3, 0.0);
        assert_eq!(ns.len(), 1);
        let prod = matmul(&m, &transpose(&ns));
        assert!(prod.iter().all(|r| r.iter().all(|v| v.is_zero())));
    }

    #[test]
    fn greedy_picks_first_independent_rows() {
        let m = q(&[&[0, 0], &[1, 1], &[2, 2], &[1, 0]]);
        assert_eq!(greedy_independent(&m, 0.0), vec![1, 3]);
    }

    #[test]
    fn inverse_round_trip_float() {
        let m = vec![vec![4.0, 1.0], vec![2.0, 3.0]];
        let inv = invert(&m, 1e-12).unwrap();
        let id = matmul(&m, &inv);
        for i in 0..2 {
            for j in 0..2 {
                let e = if i == j { 1.0 } else { 0.0 };
                assert!((id[i][j] - e).abs() < 1e-14);
            }
        }
        assert!(invert(&[vec![1.0, 2.0], vec![2.0, 4.0]], 1e-12).is_none());
    }

    #[test]
    fn coordinate_solver_rejects_out_of_span() {
        let basis = q(&[&[1, 0, 1], &[0, 1, 0]]);
        let s = CoordinateSolver::new(basis, 0.0).unwrap();
        assert_eq!(s.solve(&q(&[&[2, 3, 2]])[0]).unwrap(), vec![int(2), int(3)]);
        assert!(s.solve(&q(&[&[1, 0, 0]])[0]).is_err());
    }
}
