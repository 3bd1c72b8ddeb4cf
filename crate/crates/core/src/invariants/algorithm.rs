use nalgebra::DMatrix;

use super::{InvariantsError, Matrix, RepresentationSpace, Tolerances};
use crate::field::{Field, Rational};
use crate::linalg::{self, CoordinateSolver, Rows};
use crate::polyalg::{Mat3, Polynomial};
use crate::symgroups::PointGroup;

/// Residual bound when expressing a composed float polynomial in the basis.
const SPAN_TOL: f64 = 1e-10;

struct Engine<'a, F> {
    space: &'a RepresentationSpace,
    basis: Vec<Polynomial<F>>,
    solver: CoordinateSolver<F>,
}

impl<'a, F: Field> Engine<'a, F> {
    fn new(space: &'a RepresentationSpace) -> Self {
        let basis: Vec<Polynomial<F>> = space
            .basis()
            .iter()
            .map(|b| b.map_coeffs(F::from_rational))
            .collect();
        let rows = basis.iter().map(|b| b.coeff_vector(space.monomials())).collect();
        let solver =
            CoordinateSolver::new(rows, SPAN_TOL).expect("representation basis is independent");
        Self {
            space,
            basis,
            solver,
        }
    }

    fn action(&self, r: &Mat3<F>) -> Result<Rows<F>, InvariantsError> {
        self.basis
            .iter()
            .map(|b| {
                let composed = b.compose_linear(r, self.space.block());
                self.solver
                    .solve(&composed.coeff_vector(self.space.monomials()))
                    .map_err(|e| InvariantsError::NotInSpan {
                        residual: e.residual,
                    })
            })
            .collect()
    }

    fn projector(&self, elements: &[Mat3<F>]) -> Result<Rows<F>, InvariantsError> {
        let d = self.basis.len();
        let mut sum = vec![vec![F::zero(); d]; d];
        for r in elements {
            let a = self.action(r)?;
            for (srow, arow) in sum.iter_mut().zip(&a) {
                for (s, v) in srow.iter_mut().zip(arow) {
                    *s = s.clone() + v.clone();
                }
            }
        }
        let inv = F::one() / F::from_i64(elements.len() as i64);
        Ok(sum
            .into_iter()
            .map(|r| r.into_iter().map(|v| v * inv.clone()).collect())
            .collect())
    }
}

/// `π(R)`: row `i` holds the coordinates of `basis[i](R·)` in the basis, so
/// that `π(R₁R₂) = π(R₁)π(R₂)`.
pub fn action_matrix<F: Field>(
    space: &RepresentationSpace,
    r: &Mat3<F>,
) -> Result<Rows<F>, InvariantsError> {
    Engine::new(space).action(r)
}

/// `M_π = (1/|G|) Σ_R π(R)`, exact for rational groups.
pub fn averaging_projector(
    space: &RepresentationSpace,
    group: &PointGroup,
) -> Result<Matrix, InvariantsError> {
    match group.exact_elements() {
        Some(ex) => Ok(Matrix::Exact(Engine::<Rational>::new(space).projector(ex)?)),
        None => Ok(Matrix::Float(Engine::<f64>::new(space).projector(group.elements())?)),
    }
}

/// The subspace of a representation space fixed by a group.
#[derive(Clone, Debug)]
pub struct InvariantSubspace {
    pub space: RepresentationSpace,
    pub group: String,
    pub dimension: usize,
    /// Trace of the averaging projector before rounding.
    pub trace: f64,
    pub projector: Matrix,
    /// Rows of the projector taken as the basis, in scan order.
    pub selected: Vec<usize>,
    /// Coordinates of the basis elements in the space basis, one per row.
    pub coordinates: Matrix,
}

impl InvariantSubspace {
    pub fn polynomials_f64(&self) -> Vec<Polynomial<f64>> {
        self.coordinates
            .to_f64()
            .iter()
            .map(|w| self.space.combine(w))
            .collect()
    }

    /// Basis polynomials in canonical form (integer coefficients, content 1,
    /// positive sign-leading term). Float coordinates are first rounded to
    /// rationals with small denominators; `None` if that fails.
    pub fn exact_polynomials(&self) -> Option<Vec<Polynomial<Rational>>> {
        let rows = self.coordinates.to_rational(1000, 1e-9)?;
        Some(
            rows.iter()
                .map(|w| self.space.combine(w).canonical())
                .collect(),
        )
    }

    /// Printable basis: exact where possible, floats otherwise.
    pub fn basis_strings(&self) -> Vec<String> {
        match self.exact_polynomials() {
            Some(p) => p.iter().map(ToString::to_string).collect(),
            None => self
                .polynomials_f64()
                .iter()
                .map(|p| p.prune(1e-12).to_string())
                .collect(),
        }
    }
}

fn fixed_subspace<F: Field>(
    proj: &Rows<F>,
    tol: &Tolerances,
) -> Result<(usize, f64, Vec<usize>), InvariantsError> {
    let trace = (0..proj.len()).fold(F::zero(), |acc, i| acc + proj[i][i].clone());
    let t = trace.to_f64();
    let m = t.round();
    if (t - m).abs() > tol.trace || m < 0.0 {
        return Err(InvariantsError::TraceNotInteger {
            trace: t,
            tol: tol.trace,
        });
    }
    let m = m as usize;
    if m == 0 {
        // rank decisions are relative to the largest entry, which is pure
        // rounding noise in a vanishing projector
        return Ok((0, t, Vec::new()));
    }
    let chosen = linalg::greedy_independent(proj, tol.rank);
    if chosen.len() != m {
        return Err(InvariantsError::RankMismatch {
            rank: chosen.len(),
            trace: m,
        });
    }
    Ok((m, t, chosen))
}

/// Fixed subspace: dimension from the projector trace and a basis from the
/// first independent rows of the projector.
pub fn invariant_subspace(
    space: &RepresentationSpace,
    group: &PointGroup,
) -> Result<InvariantSubspace, InvariantsError> {
    invariant_subspace_with(space, group, &Tolerances::default())
}

pub fn invariant_subspace_with(
    space: &RepresentationSpace,
    group: &PointGroup,
    tol: &Tolerances,
) -> Result<InvariantSubspace, InvariantsError> {
    let projector = averaging_projector(space, group)?;
    let (dimension, trace, selected, coordinates) = match &projector {
        Matrix::Exact(p) => {
            let (m, t, sel) = fixed_subspace(p, tol)?;
            let coords = sel.iter().map(|&i| p[i].clone()).collect();
            (m, t, sel, Matrix::Exact(coords))
        }
        Matrix::Float(p) => {
            let (m, t, sel) = fixed_subspace(p, tol)?;
            let coords = sel.iter().map(|&i| p[i].clone()).collect();
            (m, t, sel, Matrix::Float(coords))
        }
    };
    Ok(InvariantSubspace {
        space: space.clone(),
        group: group.name().to_string(),
        dimension,
        trace,
        projector,
        selected,
        coordinates,
    })
}

/// Basis of the intersection of two row spaces.
///
/// `a` and `b` hold independent vectors as rows. The null space of the
/// matrix whose columns are those vectors gives the combinations `Σ zₖ aₖ`
/// that also lie in the span of `b`.
pub fn intersect_subspaces(a: &Matrix, b: &Matrix) -> Result<Matrix, InvariantsError> {
    match (a, b) {
        (Matrix::Exact(a), Matrix::Exact(b)) => Ok(Matrix::Exact(intersect_exact(a, b)?)),
        _ => Ok(Matrix::Float(intersect_float(&a.to_f64(), &b.to_f64())?)),
    }
}

fn ambient(a: &[Vec<impl Clone>], b: &[Vec<impl Clone>]) -> Result<Option<usize>, InvariantsError> {
    match (a.first(), b.first()) {
        (Some(x), Some(y)) if x.len() != y.len() => {
            Err(InvariantsError::DimensionMismatch(x.len(), y.len()))
        }
        (Some(x), Some(_)) => Ok(Some(x.len())),
        _ => Ok(None),
    }
}

fn intersect_exact(a: &Rows<Rational>, b: &Rows<Rational>) -> Result<Rows<Rational>, InvariantsError> {
    let Some(n) = ambient(a, b)? else {
        return Ok(Vec::new());
    };
    let p = a.len();
    let c: Rows<Rational> = (0..n)
        .map(|r| a.iter().chain(b).map(|v| v[r].clone()).collect())
        .collect();
    let null = linalg::null_space(&c, p + b.len(), 0.0);
    Ok(null.iter().map(|z| combine_rows(&z[..p], a)).collect())
}

fn combine_rows<F: Field>(z: &[F], rows: &[Vec<F>]) -> Vec<F> {
    let n = rows[0].len();
    (0..n)
        .map(|c| {
            z.iter()
                .zip(rows)
                .fold(F::zero(), |acc, (zk, r)| acc + zk.clone() * r[c].clone())
        })
        .collect()
}

fn intersect_float(a: &Rows<f64>, b: &Rows<f64>) -> Result<Rows<f64>, InvariantsError> {
    let Some(n) = ambient(a, b)? else {
        return Ok(Vec::new());
    };
    let p = a.len();
    let k = p + b.len();
    let cols: Vec<&Vec<f64>> = a.iter().chain(b).collect();
    // zero rows keep the thin SVD from dropping null directions when k > n
    let c = DMatrix::from_fn(n.max(k), k, |r, j| if r < n { cols[j][r] } else { 0.0 });
    let svd = c.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let smax = svd.singular_values.max();
    let thresh = 1e-10 * smax.max(f64::MIN_POSITIVE);
    let out: Rows<f64> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] <= thresh)
        .map(|i| {
            let z: Vec<f64> = (0..p).map(|j| v_t[(i, j)]).collect();
            combine_rows(&z, a)
        })
        .collect();
    let keep = linalg::greedy_independent(&out, crate::field::FLOAT_TOL);
    Ok(keep.into_iter().map(|i| out[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{int, rat};
    use crate::harmonics::BasisStyle;
    use crate::polyalg::parse_polynomial;
    use crate::symgroups::group_by_name;

    fn s11() -> RepresentationSpace {
        RepresentationSpace::symmetric_product(1, 1, BasisStyle::Integer)
    }

    fn q(rows: &[&[i64]]) -> Rows<Rational> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    #[test]
    fn printed_action_matrices_for_c4() {
        let g = group_by_name("C4").unwrap();
        let ex = g.exact_elements().unwrap();
        let pi2 = action_matrix(&s11(), &ex[1]).unwrap();
        let want = q(&[
            &[0, 0, 0, 1, 0, 0],
            &[0, -1, 0, 0, 0, 0],
            &[0, 0, 0, 0, -1, 0],
            &[1, 0, 0, 0, 0, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 0, 0, 1],
        ]);
        assert_eq!(pi2, want);
        let pi3 = action_matrix(&s11(), &ex[2]).unwrap();
        let mut diag = q(&[&[1, 1, -1, 1, -1, 1]])[0].clone().into_iter();
        for (i, row) in pi3.iter().enumerate() {
            let d = diag.next().unwrap();
            for (j, v) in row.iter().enumerate() {
                assert_eq!(v, &if i == j { d.clone() } else { int(0) });
            }
        }
        assert_eq!(action_matrix(&s11(), &ex[0]).unwrap(), linalg::identity::<Rational>(6));
        let pi4 = action_matrix(&s11(), &ex[3]).unwrap();
        assert_eq!(pi4[2], q(&[&[0, 0, 0, 0, 1, 0]])[0]);
        assert_eq!(pi4[4], q(&[&[0, 0, -1, 0, 0, 0]])[0]);
    }

    #[test]
    fn action_is_a_homomorphism() {
        let g = group_by_name("D4").unwrap();
        let ex = g.exact_elements().unwrap();
        let space = RepresentationSpace::symmetric_product(1, 2, BasisStyle::Integer);
        for a in ex.iter().take(4) {
            for b in ex.iter().skip(3) {
                let lhs = action_matrix(&space, &a.mul(b)).unwrap();
                let rhs = linalg::matmul(
                    &action_matrix(&space, a).unwrap(),
                    &action_matrix(&space, b).unwrap(),
                );
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn c4_projector_matches_printed_matrix() {
        let g = group_by_name("C4").unwrap();
        let Matrix::Exact(m) = averaging_projector(&s11(), &g).unwrap() else {
            panic!("C4 is rational")
        };
        let quarter = |r: &[i64]| r.iter().map(|&v| rat(v, 4)).collect::<Vec<_>>();
        let want = vec![
            quarter(&[2, 0, 0, 2, 0, 0]),
            quarter(&[0, 0, 0, 0, 0, 0]),
            quarter(&[0, 0, 0, 0, 0, 0]),
            quarter(&[2, 0, 0, 2, 0, 0]),
            quarter(&[0, 0, 0, 0, 0, 0]),
            quarter(&[0, 0, 0, 0, 0, 4]),
        ];
        assert_eq!(m, want);
    }

    #[test]
    fn trivial_group_gives_identity_projector() {
        let g = group_by_name("C1").unwrap();
        let m = averaging_projector(&s11(), &g).unwrap();
        assert_eq!(m, Matrix::Exact(linalg::identity(6)));
    }

    #[test]
    fn c4_invariants_of_s11() {
        let g = group_by_name("C4").unwrap();
        let inv = invariant_subspace(&s11(), &g).unwrap();
        assert_eq!(inv.dimension, 2);
        let polys = inv.exact_polynomials().unwrap();
        assert_eq!(polys[0], parse_polynomial("x1y1 + x2y2").unwrap());
        assert_eq!(polys[1], parse_polynomial("x3y3").unwrap());
    }

    #[test]
    fn harmonic_degree_one_under_c2() {
        let g = group_by_name("C2").unwrap();
        let space = RepresentationSpace::harmonic(1, BasisStyle::Integer);
        let inv = invariant_subspace(&space, &g).unwrap();
        assert_eq!(inv.dimension, 1);
        assert_eq!(inv.exact_polynomials().unwrap()[0], parse_polynomial("x3").unwrap());
    }

    #[test]
    fn float_and_exact_paths_agree() {
        let g = group_by_name("D4").unwrap();
        let gf = crate::symgroups::PointGroup::from_elements("D4f", g.elements().to_vec());
        for (p, q) in [(1, 1), (1, 2), (2, 2)] {
            let space = RepresentationSpace::symmetric_product(p, q, BasisStyle::Integer);
            let a = invariant_subspace(&space, &g).unwrap();
            let b = invariant_subspace(&space, &gf).unwrap();
            assert!(!b.coordinates.is_exact());
            assert_eq!(a.dimension, b.dimension);
            assert_eq!(a.exact_polynomials(), b.exact_polynomials());
        }
    }

    #[test]
    fn intersection_basics() {
        let a = Matrix::Exact(q(&[&[1, 0, 0], &[0, 1, 0]]));
        let b = Matrix::Exact(q(&[&[0, 0, 1]]));
        assert_eq!(intersect_subspaces(&a, &a).unwrap().nrows(), 2);
        assert_eq!(intersect_subspaces(&a, &b).unwrap().nrows(), 0);
        let c = Matrix::Float(vec![vec![1.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let r = intersect_subspaces(&a, &c).unwrap().to_f64();
        assert_eq!(r.len(), 1);
        assert!((r[0][0] - r[0][1]).abs() < 1e-12 && r[0][2].abs() < 1e-12);
    }
}
