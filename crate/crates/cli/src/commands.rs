use std::path::Path;

use hgpt_core::harmonics::{self, real_basis, BasisStyle};
use hgpt_core::hgpt::{apply_pattern, forward_voltage, parse_hgpt_blocks, HgptMatrix};
use hgpt_core::invariants::{self, coefficient_pattern, invariant_subspace_with, RepresentationSpace, Tolerances};
use hgpt_core::report::{self, TableCell};
use hgpt_core::symgroups::{group_by_name, verify_group, PointGroup};
use serde_json::{json, Value};

use crate::output::{columns, Document};

pub const RANK_TOL_VAR: &str = "HGPT_RANK_TOL";
pub const TRACE_TOL_VAR: &str = "HGPT_TRACE_TOL";

/// Largest harmonic degree accepted on the command line.
pub const MAX_DEGREE: u32 = 16;

type Result<T> = std::result::Result<T, String>;

fn check_degree(flag: &str, n: u32) -> Result<()> {
    if n > MAX_DEGREE {
        return Err(format!("{flag} {n} exceeds {MAX_DEGREE}"));
    }
    Ok(())
}

fn env_tol(var: &str, default: f64) -> Result<f64> {
    match std::env::var(var) {
        Err(_) => Ok(default),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() && v > 0.0 && v < 1.0 => Ok(v),
            _ => Err(format!("{var}={s:?} is not a number in (0, 1)")),
        },
    }
}

pub fn tolerances_from_env() -> Result<Tolerances> {
    let d = Tolerances::default();
    Ok(Tolerances {
        rank: env_tol(RANK_TOL_VAR, d.rank)?,
        trace: env_tol(TRACE_TOL_VAR, d.trace)?,
    })
}

fn load_group(name: &str) -> Result<PointGroup> {
    group_by_name(name).map_err(|e| format!("group '{name}': {e}"))
}

fn load_blocks(path: &Path) -> Result<Vec<HgptMatrix>> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_hgpt_blocks(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Rows in the layout `p q dim basis`, one basis polynomial per line.
fn basis_rows(p: u32, q: u32, dim: usize, basis: &[String]) -> Vec<Vec<String>> {
    if basis.is_empty() {
        return vec![vec![p.to_string(), q.to_string(), dim.to_string(), "{}".into()]];
    }
    basis
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let lead = if k == 0 { [p.to_string(), q.to_string(), dim.to_string()] } else { Default::default() };
            let open = if k == 0 { "{" } else { " " };
            let close = if k + 1 == basis.len() { "}" } else { "," };
            let mut row = lead.to_vec();
            row.push(format!("{open}{b}{close}"));
            row
        })
        .collect()
}

pub fn group(name: &str, list_elements: bool) -> Result<Document> {
    let g = load_group(name)?;
    let report = verify_group(&g);
    let elements: Vec<[[f64; 3]; 3]> = g.elements().iter().map(|m| m.rows_f64()).collect();
    let mut result = json!({
        "name": g.name(),
        "order": g.order(),
        "exact": g.is_exact(),
        "verification": report,
    });
    let mut table = format!(
        "group {}\norder {}\nexact {}\nverified {}\n",
        g.name(),
        g.order(),
        g.is_exact(),
        report.pass
    );
    for v in &report.violations {
        table.push_str(&format!("violation: {v}\n"));
    }
    if list_elements {
        result["elements"] = json!(elements);
        for (k, m) in elements.iter().enumerate() {
            table.push_str(&format!("R{k} = {m:?}\n"));
        }
    }
    if !report.pass {
        return Err(format!("group '{name}' fails verification: {}", report.violations.join("; ")));
    }
    Ok(Document {
        command: "group",
        inputs: json!({"name": name, "list_elements": list_elements}),
        result,
        table,
    })
}

pub fn harmonic_basis(degree: u32, style: BasisStyle) -> Result<Document> {
    check_degree("--degree", degree)?;
    let basis = real_basis(degree, style);
    let n = degree as i32;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for (k, h) in basis.elements().iter().enumerate() {
        let l = k as i32 - n;
        items.push(json!({
            "l": l,
            "scale": h.scale.to_string(),
            "shape": h.shape.to_string(),
            "terms": h.shape.to_json_terms(),
        }));
        rows.push(vec![l.to_string(), h.to_string()]);
    }
    Ok(Document {
        command: "harmonic-basis",
        inputs: json!({"degree": degree, "style": style}),
        result: json!({"degree": degree, "style": style, "basis": items}),
        table: columns(&["l", &format!("I_{degree}^l ({style})")], &rows),
    })
}

pub fn basis_change(degree: u32, style: BasisStyle) -> Result<Document> {
    check_degree("--degree", degree)?;
    let a = harmonics::basis_change(degree, style);
    let d = a.matrix.nrows();
    let matrix: Vec<Vec<Value>> = (0..d)
        .map(|i| (0..d).map(|j| json!({"re": a.matrix[(i, j)].re, "im": a.matrix[(i, j)].im})).collect())
        .collect();
    let rows: Vec<Vec<String>> = (0..d)
        .map(|i| {
            let mut r = vec![(i as i32 - degree as i32).to_string()];
            r.extend((0..d).map(|j| {
                let c = a.matrix[(i, j)];
                format!("{:.6}{:+.6}i", c.re, c.im)
            }));
            r
        })
        .collect();
    let header: Vec<String> = std::iter::once("m\\l".to_string())
        .chain((0..d).map(|j| (j as i32 - degree as i32).to_string()))
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let residual = a.unitarity_residual();
    Ok(Document {
        command: "basis-change",
        inputs: json!({"degree": degree, "style": style}),
        result: json!({
            "degree": degree,
            "style": style,
            "layout": "matrix[m][l] = a_lm; solid harmonics = matrix * real harmonics",
            "matrix": matrix,
            "unitarity_residual": residual,
        }),
        table: columns(&header, &rows) + &format!("unitarity residual {residual:.3e}\n"),
    })
}

pub fn invariant_harmonics(group: &str, degree: u32, style: BasisStyle) -> Result<Document> {
    check_degree("--degree", degree)?;
    let g = load_group(group)?;
    let inv = invariants::invariant_harmonics(&g, degree, style).map_err(|e| format!("{group}: {e}"))?;
    let basis = inv.basis_strings();
    let rows: Vec<Vec<String>> = basis_rows(degree, 0, inv.dimension, &basis)
        .into_iter()
        .map(|mut r| {
            r.remove(1);
            r
        })
        .collect();
    Ok(Document {
        command: "invariant-harmonics",
        inputs: json!({"group": group, "degree": degree, "style": style}),
        result: json!({
            "group": g.name(),
            "degree": degree,
            "dimension": inv.dimension,
            "trace": inv.trace,
            "exact": inv.projector.is_exact(),
            "basis": basis,
        }),
        table: format!("{}\n", g.name()) + &columns(&["m", "dim", "basis"], &rows),
    })
}

pub fn invariants(group: &str, p: u32, q: u32, style: BasisStyle, tol: &Tolerances) -> Result<Document> {
    check_degree("--p", p)?;
    check_degree("--q", q)?;
    let g = load_group(group)?;
    let space = RepresentationSpace::symmetric_product(p, q, style);
    let inv = invariant_subspace_with(&space, &g, tol).map_err(|e| format!("{group} S{p}{q}: {e}"))?;
    let pattern = coefficient_pattern(&inv).map_err(|e| format!("{group} S{p}{q}: {e}"))?;
    let basis = inv.basis_strings();
    let independent: Vec<String> = pattern.independent.iter().map(ToString::to_string).collect();
    let relations: Vec<String> = pattern.relations.iter().map(ToString::to_string).collect();
    let zeros: Vec<String> = pattern.zeros.iter().map(ToString::to_string).collect();
    let mut table = format!("{}\n", g.name()) + &columns(&["p", "q", "dim", "basis"], &basis_rows(p, q, inv.dimension, &basis));
    table.push_str(&format!("\nindependent: {}\n", independent.join(", ")));
    for r in &relations {
        table.push_str(&format!("{r}\n"));
    }
    table.push_str(&format!("zero: {}\n", zeros.join(", ")));
    Ok(Document {
        command: "invariants",
        inputs: json!({"group": group, "p": p, "q": q, "style": style, "tolerances": tol}),
        result: json!({
            "group": g.name(),
            "p": p,
            "q": q,
            "dimension": inv.dimension,
            "trace": inv.trace,
            "exact": inv.projector.is_exact(),
            "basis": basis,
            "pattern": {
                "independent": independent,
                "relations": relations,
                "zeros": zeros,
            },
        }),
        table,
    })
}

pub fn molien(group: &str, max_degree: usize) -> Result<Document> {
    if max_degree > 64 {
        return Err(format!("--max-degree {max_degree} exceeds 64"));
    }
    let g = load_group(group)?;
    let s = invariants::molien_series(&g, max_degree).map_err(|e| format!("{group}: {e}"))?;
    let rows: Vec<Vec<String>> = (0..=max_degree)
        .map(|m| vec![m.to_string(), s.g[m].to_string(), s.h[m].to_string()])
        .collect();
    Ok(Document {
        command: "molien",
        inputs: json!({"group": group, "max_degree": max_degree}),
        result: json!({"group": g.name(), "g": s.g, "h": s.h}),
        table: format!("{}\n", g.name()) + &columns(&["m", "g_m", "h_m"], &rows),
    })
}

pub fn forward(blocks: &Path, source: [f64; 3], receiver: [f64; 3], nmax: u32) -> Result<Document> {
    let all = load_blocks(blocks)?;
    let used: Vec<HgptMatrix> = all.into_iter().filter(|b| b.p() <= nmax && b.q() <= nmax).collect();
    if used.is_empty() {
        return Err(format!("{}: no blocks with p, q <= {nmax}", blocks.display()));
    }
    let v = forward_voltage(&used, &receiver, &source).map_err(|e| e.to_string())?;
    let orders: Vec<[u32; 2]> = used.iter().map(|b| [b.p(), b.q()]).collect();
    Ok(Document {
        command: "forward",
        inputs: json!({
            "blocks": blocks.display().to_string(),
            "source": source,
            "receiver": receiver,
            "nmax": nmax,
        }),
        result: json!({"voltage": v, "blocks_used": orders}),
        table: format!("voltage {v:.12e}\nblocks used {}\n", used.len()),
    })
}

pub fn pattern_residual(blocks: &Path, group: &str, tol: &Tolerances) -> Result<Document> {
    let g = load_group(group)?;
    let all = load_blocks(blocks)?;
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for b in &all {
        let (p, q) = (b.p(), b.q());
        let space = RepresentationSpace::symmetric_product(p, q, b.style());
        let inv = invariant_subspace_with(&space, &g, tol).map_err(|e| format!("{group} S{p}{q}: {e}"))?;
        let pattern = coefficient_pattern(&inv).map_err(|e| format!("{group} S{p}{q}: {e}"))?;
        let proj = apply_pattern(b, &pattern).map_err(|e| e.to_string())?;
        rows.push(vec![
            p.to_string(),
            q.to_string(),
            format!("{:.6e}", proj.residual),
            format!("{:.6e}", proj.relative_residual),
        ]);
        items.push(json!({
            "p": p,
            "q": q,
            "residual": proj.residual,
            "relative_residual": proj.relative_residual,
            "independent": proj.independent,
        }));
    }
    Ok(Document {
        command: "pattern-residual",
        inputs: json!({"blocks": blocks.display().to_string(), "group": group, "tolerances": tol}),
        result: json!({"group": g.name(), "blocks": items}),
        table: format!("{}\n", g.name()) + &columns(&["p", "q", "residual", "relative"], &rows),
    })
}

pub fn regenerate_tables(style: BasisStyle, tol: &Tolerances) -> Result<Document> {
    let cells: Vec<TableCell> = report::regenerate_tables(style, tol).map_err(|e| e.to_string())?;
    let mut table = String::new();
    for name in report::TABLE_GROUPS {
        let rows: Vec<Vec<String>> = cells
            .iter()
            .filter(|c| c.group == name)
            .flat_map(|c| basis_rows(c.p, c.q, c.dimension, &c.basis))
            .collect();
        table.push_str(&format!("{name}\n"));
        table.push_str(&columns(&["p", "q", "dim", "basis"], &rows));
        table.push('\n');
    }
    Ok(Document {
        command: "regenerate-tables",
        inputs: json!({"style": style, "tolerances": tol}),
        result: json!({"cells": cells}),
        table,
    })
}
