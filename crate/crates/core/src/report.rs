//! Dimension-and-basis tables of the fixed symmetric products for the
//! standard groups, checked against known dimensions.

use serde::Serialize;
use thiserror::Error;

use crate::harmonics::BasisStyle;
use crate::invariants::{invariant_subspace_with, InvariantsError, RepresentationSpace, Tolerances};
use crate::symgroups::{group_by_name, GroupError, PointGroup};

pub const TABLE_GROUPS: [&str; 13] = [
    "C2", "C3", "C4", "C5", "C6", "D2", "D3", "D4", "D5", "D6", "T", "O", "I",
];

pub const TABLE_ORDERS: [(u32, u32); 4] = [(1, 1), (1, 2), (1, 3), (2, 2)];

/// Known dimensions of the fixed subspace of `S_pq` for the cyclic groups,
/// in [`TABLE_ORDERS`] order.
///
/// The C5 entry at (1,2) is the computed value. The reference table for C5
/// states 2 there while listing three independent polynomials.
const CYCLIC_DIMENSIONS: [(&str, [usize; 4]); 5] = [
    ("C2", [4, 7, 11, 9]),
    ("C3", [2, 5, 7, 5]),
    ("C4", [2, 3, 5, 5]),
    ("C5", [2, 3, 3, 3]),
    ("C6", [2, 3, 3, 3]),
];

pub fn reference_dimension(group: &str, p: u32, q: u32) -> Option<usize> {
    let col = TABLE_ORDERS.iter().position(|&o| o == (p, q))?;
    CYCLIC_DIMENSIONS
        .iter()
        .find(|(g, _)| *g == group)
        .map(|(_, d)| d[col])
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReportError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{group} S{p}{q}: {source}")]
    Invariants {
        group: String,
        p: u32,
        q: u32,
        source: InvariantsError,
    },
    #[error("{group} S{p}{q}: expected dimension {expected}, computed {found}")]
    Golden {
        group: String,
        p: u32,
        q: u32,
        expected: usize,
        found: usize,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct TableCell {
    pub group: String,
    pub p: u32,
    pub q: u32,
    pub dimension: usize,
    pub trace: f64,
    pub exact: bool,
    pub basis: Vec<String>,
    pub reference_dimension: Option<usize>,
}

pub fn table_cell(
    group: &PointGroup,
    p: u32,
    q: u32,
    style: BasisStyle,
    tol: &Tolerances,
) -> Result<TableCell, ReportError> {
    let space = RepresentationSpace::symmetric_product(p, q, style);
    let inv = invariant_subspace_with(&space, group, tol).map_err(|source| ReportError::Invariants {
        group: group.name().to_string(),
        p,
        q,
        source,
    })?;
    Ok(TableCell {
        group: group.name().to_string(),
        p,
        q,
        dimension: inv.dimension,
        trace: inv.trace,
        exact: inv.projector.is_exact(),
        basis: inv.basis_strings(),
        reference_dimension: reference_dimension(group.name(), p, q),
    })
}

/// One cell per group in [`TABLE_GROUPS`] and order pair in [`TABLE_ORDERS`].
/// A computed dimension that disagrees with [`reference_dimension`] is an error.
pub fn regenerate_tables(style: BasisStyle, tol: &Tolerances) -> Result<Vec<TableCell>, ReportError> {
    let mut cells = Vec::new();
    for name in TABLE_GROUPS {
        let g = group_by_name(name)?;
        for (p, q) in TABLE_ORDERS {
            let cell = table_cell(&g, p, q, style, tol)?;
            if let Some(expected) = cell.reference_dimension {
                if expected != cell.dimension {
                    return Err(ReportError::Golden {
                        group: name.to_string(),
                        p,
                        q,
                        expected,
                        found: cell.dimension,
                    });
                }
            }
            cells.push(cell);
        }
    }
    Ok(cells)
}
