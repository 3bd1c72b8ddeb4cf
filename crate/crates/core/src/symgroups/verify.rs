use serde::Serialize;

use super::{position, PointGroup, MATCH_TOL};
use crate::polyalg::Mat3;

/// Outcome of [`verify_group`].
#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub name: String,
    pub order: usize,
    pub expected_order: Option<usize>,
    pub orthogonality_residual: f64,
    /// Largest distance from a product to its nearest element.
    pub closure_residual: f64,
    pub has_identity: bool,
    pub has_inverses: bool,
    pub violations: Vec<String>,
    pub pass: bool,
}

fn nearest(list: &[Mat3<f64>], m: &Mat3<f64>) -> f64 {
    list.iter().map(|e| e.max_abs_diff(m)).fold(f64::INFINITY, f64::min)
}

/// Checks orthogonality, identity, inverses, closure and the expected order.
pub fn verify_group(g: &PointGroup) -> GroupReport {
    let elems = g.elements();
    let mut violations = Vec::new();
    let ortho = elems.iter().map(Mat3::orthogonality_residual).fold(0.0, f64::max);
    if ortho >= 1e-12 {
        violations.push(format!("element not orthogonal (residual {ortho:.3e})"));
    }
    let has_identity = position(elems, &Mat3::identity()).is_some();
    if !has_identity {
        violations.push("identity missing".into());
    }
    // for orthogonal matrices the inverse is the transpose
    let has_inverses = elems.iter().all(|m| position(elems, &m.transpose()).is_some());
    if !has_inverses {
        violations.push("inverse missing".into());
    }
    let mut closure = 0.0f64;
    for a in elems {
        for b in elems {
            closure = closure.max(nearest(elems, &a.mul(b)));
        }
    }
    if !(closure < MATCH_TOL) {
        violations.push(format!("not closed (residual {closure:.3e})"));
    }
    let expected_order = g.spec().map(|s| s.order());
    if let Some(e) = expected_order {
        if e != elems.len() {
            violations.push(format!("order {} differs from expected {e}", elems.len()));
        }
    }
    GroupReport {
        name: g.name().to_string(),
        order: elems.len(),
        expected_order,
        orthogonality_residual: ortho,
        closure_residual: closure,
        has_identity,
        has_inverses,
        pass: violations.is_empty(),
        violations,
    }
}
