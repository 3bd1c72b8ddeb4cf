mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hgpt_core::harmonics::BasisStyle;

use crate::output::Format;

#[derive(Parser)]
#[command(name = "hgpt", version, about = "Symmetry-reduced harmonic polarizability tensors")]
struct Cli {
    /// Output format; defaults to a table on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Style {
    Integer,
    Orthonormal,
}

impl From<Style> for BasisStyle {
    fn from(s: Style) -> Self {
        match s {
            Style::Integer => BasisStyle::Integer,
            Style::Orthonormal => BasisStyle::Orthonormal,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a point group and check the group axioms.
    Group {
        #[arg(long)]
        name: String,
        #[arg(long)]
        list_elements: bool,
    },
    /// Real harmonic basis of one degree.
    HarmonicBasis {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "integer")]
        style: Style,
    },
    /// Matrix taking real harmonics to complex solid harmonics.
    BasisChange {
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "orthonormal")]
        style: Style,
    },
    /// Harmonic polynomials of one degree fixed by a group.
    InvariantHarmonics {
        #[arg(long)]
        group: String,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_enum, default_value = "integer")]
        style: Style,
    },
    /// Fixed subspace of the symmetric product S_pq and its coefficient pattern.
    Invariants {
        #[arg(long)]
        group: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long, value_enum, default_value = "integer")]
        style: Style,
    },
    /// Molien series g_m and harmonic counts h_m.
    Molien {
        #[arg(long)]
        group: String,
        #[arg(long)]
        max_degree: usize,
    },
    /// Voltage predicted by a set of HGPT blocks.
    Forward {
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        source: [f64; 3],
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        receiver: [f64; 3],
        #[arg(long)]
        nmax: u32,
    },
    /// Distance of each HGPT block from the pattern a group imposes.
    PatternResidual {
        #[arg(long)]
        blocks: PathBuf,
        #[arg(long)]
        group: String,
    },
    /// Fixed subspaces for the standard groups and orders.
    RegenerateTables {
        #[arg(long, value_enum, default_value = "integer")]
        style: Style,
    },
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected x,y,z, got '{s}'"));
    }
    let mut v = [0.0f64; 3];
    for (slot, part) in v.iter_mut().zip(parts) {
        *slot = part.trim().parse().map_err(|_| format!("bad coordinate '{part}'"))?;
        if !slot.is_finite() {
            return Err(format!("non-finite coordinate '{part}'"));
        }
    }
    Ok(v)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::tolerances_from_env().and_then(|tol| {
        let doc = match cli.command {
            Command::Group { name, list_elements } => commands::group(&name, list_elements),
            Command::HarmonicBasis { degree, style } => commands::harmonic_basis(degree, style.into()),
            Command::BasisChange { degree, style } => commands::basis_change(degree, style.into()),
            Command::InvariantHarmonics { group, degree, style } => {
                commands::invariant_harmonics(&group, degree, style.into())
            }
            Command::Invariants { group, p, q, style } => commands::invariants(&group, p, q, style.into(), &tol),
            Command::Molien { group, max_degree } => commands::molien(&group, max_degree),
            Command::Forward {
                blocks,
                source,
                receiver,
                nmax,
            } => commands::forward(&blocks, source, receiver, nmax),
            Command::PatternResidual { blocks, group } => commands::pattern_residual(&blocks, &group, &tol),
            Command::RegenerateTables { style } => commands::regenerate_tables(style.into(), &tol),
        }?;
        output::emit(&doc, cli.format, cli.output.as_deref())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("hgpt: {}", msg.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
