use std::io::{IsTerminal, Write};
use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Result of one subcommand in both renderings.
pub struct Document {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub table: String,
}

impl Document {
    pub fn to_json(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
        })
    }
}

pub fn emit(doc: &Document, format: Option<Format>, path: Option<&Path>) -> Result<(), String> {
    let format = format.unwrap_or(if path.is_none() && std::io::stdout().is_terminal() {
        Format::Table
    } else {
        Format::Json
    });
    let mut text = match format {
        Format::Json => serde_json::to_string_pretty(&doc.to_json()).map_err(|e| e.to_string())?,
        Format::Table => doc.table.trim_end().to_string(),
    };
    text.push('\n');
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

/// Left-aligned columns separated by two spaces; the last column is not padded.
pub fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let n = header.len();
    let mut width: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r).take(n - 1) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (k, c) in cells.iter().enumerate() {
            if k + 1 < n {
                s.push_str(&format!("{c:<w$}  ", w = width[k]));
            } else {
                s.push_str(c);
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn columns_align() {
        let t = columns(&["p", "dim"], &[vec!["10".into(), "2".into()]]);
        assert_eq!(t, "p   dim\n10  2\n");
    }
}
