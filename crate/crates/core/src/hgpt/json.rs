use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{HgptError, HgptMatrix};
use crate::harmonics::BasisStyle;

/// Largest block order accepted from a document.
pub const MAX_BLOCK_ORDER: u32 = 10;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockDoc {
    p: u32,
    q: u32,
    basis_style: BasisStyle,
    /// Row-major.
    entries: Vec<f64>,
}

impl From<&HgptMatrix> for BlockDoc {
    fn from(n: &HgptMatrix) -> Self {
        let m = n.entries();
        BlockDoc {
            p: n.p(),
            q: n.q(),
            basis_style: n.style(),
            entries: m.transpose().iter().copied().collect(),
        }
    }
}

impl Serialize for HgptMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BlockDoc::from(self).serialize(s)
    }
}

fn block_from_doc(doc: BlockDoc) -> Result<HgptMatrix, HgptError> {
    for (name, v) in [("p", doc.p), ("q", doc.q)] {
        if v == 0 || v > MAX_BLOCK_ORDER {
            return Err(HgptError::Json(format!(
                "{name} = {v} is outside 1..={MAX_BLOCK_ORDER}"
            )));
        }
    }
    let (r, c) = (2 * doc.p as usize + 1, 2 * doc.q as usize + 1);
    if doc.entries.len() != r * c {
        return Err(HgptError::Json(format!(
            "block N{}{} needs {} entries, got {}",
            doc.p,
            doc.q,
            r * c,
            doc.entries.len()
        )));
    }
    HgptMatrix::new(doc.p, doc.q, doc.basis_style, DMatrix::from_row_slice(r, c, &doc.entries))
}

/// Parses one block object or an array of them. Orders are `1..=MAX_BLOCK_ORDER`,
/// every `(p, q)` appears at most once and all blocks share a basis style.
pub fn parse_hgpt_blocks(text: &str) -> Result<Vec<HgptMatrix>, HgptError> {
    let value: Value = serde_json::from_str(text).map_err(|e| HgptError::Json(e.to_string()))?;
    let items = match value {
        Value::Array(items) => items,
        v @ Value::Object(_) => vec![v],
        _ => return Err(HgptError::Json("expected an object or an array of objects".into())),
    };
    let mut blocks = Vec::with_capacity(items.len());
    for item in items {
        let doc: BlockDoc = serde_json::from_value(item).map_err(|e| HgptError::Json(e.to_string()))?;
        let b = block_from_doc(doc)?;
        if blocks.iter().any(|o: &HgptMatrix| o.p() == b.p() && o.q() == b.q()) {
            return Err(HgptError::Json(format!("block N{}{} appears twice", b.p(), b.q())));
        }
        if let Some(first) = blocks.first() {
            if first.style() != b.style() {
                return Err(HgptError::StyleMismatch(first.style(), b.style()));
            }
        }
        blocks.push(b);
    }
    Ok(blocks)
}

pub fn blocks_to_json(blocks: &[HgptMatrix]) -> Value {
    serde_json::to_value(blocks).expect("blocks serialize")
}
