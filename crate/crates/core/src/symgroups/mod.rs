//! Finite groups of orthogonal 3×3 matrices.
//!
//! Placement: the main axis of `C_n` and `D_n` is `x3`, and `D_n` has a
//! 2-fold axis along `x1`. The 2-fold axes of `T` and the 4-fold axes of `O`
//! are the coordinate axes. `I` has the coordinate axes through midpoints of
//! opposite edges, with the edges met by the `x1` axis parallel to `x2`.

mod name;
mod verify;

use thiserror::Error;

pub use name::{Family, GroupSpec, MAX_AXIS_ORDER};
pub use verify::{verify_group, GroupReport};

use crate::field::{int, Field, Rational};
use crate::polyalg::Mat3;

/// Matching tolerance for floating-point group elements.
pub const MATCH_TOL: f64 = 1e-9;

/// Upper bound on the number of elements produced by closure.
pub const MAX_ORDER: usize = 240;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroupError {
    #[error("cannot parse group name '{0}'")]
    Parse(String),
    #[error("group would have more than {MAX_ORDER} elements (requested {0})")]
    TooLarge(usize),
    #[error("{subgroup} is not an index-2 subgroup of {group}")]
    NotIndexTwo { group: String, subgroup: String },
}

#[derive(Clone, Debug)]
pub struct PointGroup {
    name: String,
    spec: Option<GroupSpec>,
    elements: Vec<Mat3<f64>>,
    exact: Option<Vec<Mat3<Rational>>>,
    generators: Vec<Mat3<f64>>,
}

impl PointGroup {
    /// Wraps an arbitrary element list without checking it; see
    /// [`verify_group`].
    pub fn from_elements(name: impl Into<String>, elements: Vec<Mat3<f64>>) -> Self {
        Self {
            name: name.into(),
            spec: None,
            generators: elements.clone(),
            elements,
            exact: None,
        }
    }

    pub fn from_exact_elements(name: impl Into<String>, elements: Vec<Mat3<Rational>>) -> Self {
        let mut g = Self::from_elements(name, elements.iter().map(Mat3::to_f64).collect());
        g.exact = Some(elements);
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn spec(&self) -> Option<GroupSpec> {
        self.spec
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3<f64>] {
        &self.elements
    }

    /// Exact elements when every entry is rational.
    pub fn exact_elements(&self) -> Option<&[Mat3<Rational>]> {
        self.exact.as_deref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn generators(&self) -> &[Mat3<f64>] {
        &self.generators
    }

    pub fn contains(&self, m: &Mat3<f64>) -> bool {
        position(&self.elements, m).is_some()
    }
}

fn position(list: &[Mat3<f64>], m: &Mat3<f64>) -> Option<usize> {
    list.iter().position(|e| e.max_abs_diff(m) < MATCH_TOL)
}

/// Closure of a generating set under multiplication, identity first.
pub fn closure(generators: &[Mat3<f64>]) -> Result<Vec<Mat3<f64>>, GroupError> {
    let mut elems = vec![Mat3::identity()];
    let mut frontier = 0;
    while frontier < elems.len() {
        let a = elems[frontier].clone();
        frontier += 1;
        for g in generators {
            let p = a.mul(g);
            if position(&elems, &p).is_none() {
                elems.push(p);
                if elems.len() > MAX_ORDER {
                    return Err(GroupError::TooLarge(elems.len()));
                }
            }
        }
    }
    Ok(elems)
}

fn rotation_z(n: u32, k: u32) -> Mat3<f64> {
    let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    let (s, c) = t.sin_cos();
    Mat3([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])
}

/// Exact rotation by `2πk/n` about `x3` when `n` divides 4.
fn rotation_z_exact(n: u32, k: u32) -> Mat3<Rational> {
    let quarter = (4 * k / n) % 4;
    let (c, s) = [(1, 0), (0, 1), (-1, 0), (0, -1)][quarter as usize];
    Mat3([
        [int(c), int(-s), int(0)],
        [int(s), int(c), int(0)],
        [int(0), int(0), int(1)],
    ])
}

fn diag(a: i64, b: i64, c: i64) -> Mat3<Rational> {
    Mat3([
        [int(a), int(0), int(0)],
        [int(0), int(b), int(0)],
        [int(0), int(0), int(c)],
    ])
}

fn permutation(p: [usize; 3]) -> Mat3<Rational> {
    Mat3::from_fn(|i, j| if p[i] == j { int(1) } else { int(0) })
}

fn signed_permutations(rotations_only: bool, even_only: bool) -> Vec<Mat3<Rational>> {
    let perms: [([usize; 3], bool); 6] = [
        ([0, 1, 2], true),
        ([1, 2, 0], true),
        ([2, 0, 1], true),
        ([1, 0, 2], false),
        ([0, 2, 1], false),
        ([2, 1, 0], false),
    ];
    let mut out = Vec::new();
    for (p, even) in perms {
        if even_only && !even {
            continue;
        }
        for signs in 0..8 {
            let s = |b: i64| if signs & (1 << b) == 0 { 1 } else { -1 };
            let m = diag(s(0), s(1), s(2)).mul(&permutation(p));
            if !rotations_only || m.det() == int(1) {
                out.push(m);
            }
        }
    }
    out
}

/// Exact elements and generators for the rational families.
fn exact_family(f: Family) -> (Vec<Mat3<Rational>>, Vec<Mat3<Rational>>) {
    match f {
        Family::Cyclic(n) => (
            (0..n).map(|k| rotation_z_exact(n, k)).collect(),
            vec![rotation_z_exact(n, 1 % n)],
        ),
        Family::Dihedral(n) => {
            let flip = diag(1, -1, -1);
            let mut e: Vec<_> = (0..n).map(|k| rotation_z_exact(n, k)).collect();
            e.extend((0..n).map(|k| rotation_z_exact(n, k).mul(&flip)));
            (e, vec![rotation_z_exact(n, 1 % n), flip])
        }
        Family::Tetrahedral => (
            signed_permutations(true, true),
            vec![permutation([1, 2, 0]), diag(1, -1, -1)],
        ),
        Family::Octahedral => (
            signed_permutations(true, false),
            vec![rotation_z_exact(4, 1), permutation([1, 2, 0])],
        ),
        Family::Icosahedral => unreachable!("icosahedral group is irrational"),
    }
}

/// Rotation by `angle` about the unit vector `u`.
fn axis_rotation(u: [f64; 3], angle: f64) -> Mat3<f64> {
    let (s, c) = angle.sin_cos();
    let k = Mat3([[0.0, -u[2], u[1]], [u[2], 0.0, -u[0]], [-u[1], u[0], 0.0]]);
    let k2 = k.mul(&k);
    Mat3::from_fn(|i, j| {
        (if i == j { 1.0 } else { 0.0 }) + s * k.0[i][j] + (1.0 - c) * k2.0[i][j]
    })
}

fn golden() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// The twelve vertices `(0, ±φ, ±1)` and their cyclic permutations.
pub fn icosahedron_vertices() -> Vec<[f64; 3]> {
    let phi = golden();
    let mut out = Vec::new();
    for sa in [1.0, -1.0] {
        for sb in [1.0, -1.0] {
            let v = [0.0, sa * phi, sb];
            out.push(v);
            out.push([v[2], v[0], v[1]]);
            out.push([v[1], v[2], v[0]]);
        }
    }
    out
}

fn float_family(f: Family) -> Result<(Vec<Mat3<f64>>, Vec<Mat3<f64>>), GroupError> {
    Ok(match f {
        Family::Cyclic(n) => ((0..n).map(|k| rotation_z(n, k)).collect(), vec![rotation_z(n, 1 % n)]),
        Family::Dihedral(n) => {
            let flip = Mat3([[1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, -1.0]]);
            let mut e: Vec<_> = (0..n).map(|k| rotation_z(n, k)).collect();
            e.extend((0..n).map(|k| rotation_z(n, k).mul(&flip)));
            (e, vec![rotation_z(n, 1 % n), flip])
        }
        Family::Icosahedral => {
            let v = icosahedron_vertices()[0];
            let len = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let u = [v[0] / len, v[1] / len, v[2] / len];
            let five = axis_rotation(u, 2.0 * std::f64::consts::PI / 5.0);
            let (_, t_gens) = exact_family(Family::Tetrahedral);
            let mut gens: Vec<Mat3<f64>> = t_gens.iter().map(Mat3::to_f64).collect();
            gens.push(five);
            (closure(&gens)?, gens)
        }
        other => {
            let (e, g) = exact_family(other);
            (e.iter().map(Mat3::to_f64).collect(), g.iter().map(Mat3::to_f64).collect())
        }
    })
}

fn inversion<F: Field>() -> Mat3<F> {
    Mat3::identity().scale(&-F::one())
}

/// Builds the named group with its full element list.
pub fn build_group(spec: GroupSpec) -> Result<PointGroup, GroupError> {
    if spec.order() > MAX_ORDER {
        return Err(GroupError::TooLarge(spec.order()));
    }
    let (elements, exact, generators) = match spec {
        GroupSpec::Rotation(f) => {
            let (e, g) = float_family(f)?;
            let exact = f.is_rational().then(|| exact_family(f).0);
            (e, exact, g)
        }
        GroupSpec::WithInversion(f) => {
            let (e, mut g) = float_family(f)?;
            let j = inversion::<f64>();
            let mut all = e.clone();
            all.extend(e.iter().map(|r| j.mul(r)));
            g.push(j);
            let exact = f.is_rational().then(|| {
                let ex = exact_family(f).0;
                let jx = inversion::<Rational>();
                let mut all = ex.clone();
                all.extend(ex.iter().map(|r| jx.mul(r)));
                all
            });
            (all, exact, g)
        }
        GroupSpec::Mixed { group, subgroup } => {
            let (big, _) = float_family(group)?;
            let (small, small_gens) = float_family(subgroup)?;
            let not_index_two = || GroupError::NotIndexTwo {
                group: group.to_string(),
                subgroup: subgroup.to_string(),
            };
            if big.len() != 2 * small.len() || small.iter().any(|s| position(&big, s).is_none()) {
                return Err(not_index_two());
            }
            let j = inversion::<f64>();
            let outside: Vec<usize> = (0..big.len())
                .filter(|&i| position(&small, &big[i]).is_none())
                .collect();
            let mut all = small.clone();
            all.extend(outside.iter().map(|&i| j.mul(&big[i])));
            let mut gens = small_gens;
            gens.push(j.mul(&big[outside[0]]));
            let exact = spec.is_rational().then(|| {
                let bx = exact_family(group).0;
                let sx = exact_family(subgroup).0;
                let jx = inversion::<Rational>();
                let mut all = sx.clone();
                all.extend(
                    outside
                        .iter()
                        .map(|&i| jx.mul(&bx[i])),
                );
                all
            });
            (all, exact, gens)
        }
    };
    Ok(PointGroup {
        name: spec.to_string(),
        spec: Some(spec),
        elements,
        exact,
        generators,
    })
}

/// Parses a group name and builds the group.
pub fn group_by_name(name: &str) -> Result<PointGroup, GroupError> {
    build_group(name.parse()?)
}
