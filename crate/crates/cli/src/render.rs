//! Rendering of result records as JSON, LaTeX or CSV.

use std::fmt::Write as _;

use anyhow::{anyhow, Result};
use clap::ValueEnum;
use mhodge_core::record::{Payload, ResultRecord};

use crate::UsageError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Csv,
}

/// Canonical JSON document: pretty-printed, fields in declaration order,
/// trailing newline.
pub fn canonical_json(rec: &ResultRecord) -> Result<String> {
    let mut s = serde_json::to_string_pretty(rec)?;
    s.push('\n');
    Ok(s)
}

pub fn canonical_json_list(recs: &[ResultRecord]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(recs)?;
    s.push('\n');
    Ok(s)
}

fn unsupported(rec: &ResultRecord, format: Format) -> anyhow::Error {
    let kind = match rec.payload {
        Payload::Polynomial { .. } => "hp",
        Payload::Diamond { .. } => "diamond",
        Payload::Betti { .. } => "betti",
        Payload::Bounds { .. } => "bounds",
        Payload::Chern { .. } => "chern",
        Payload::Sod { .. } => "sod",
    };
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default();
    UsageError(format!("format {name} is not available for {kind}")).into()
}

/// Dense `h[p][q]` table from a sparse coefficient list.
fn dense(dim: u32, coefficients: &[(u32, u32, String)]) -> Result<Vec<Vec<String>>> {
    let n = dim as usize;
    let mut h = vec![vec!["0".to_string(); n + 1]; n + 1];
    for (p, q, v) in coefficients {
        let cell = h
            .get_mut(*p as usize)
            .and_then(|row| row.get_mut(*q as usize))
            .ok_or_else(|| anyhow!("coefficient ({p},{q}) outside dimension {dim}"))?;
        *cell = v.clone();
    }
    Ok(h)
}

/// Hodge diamond as a LaTeX array, `h^{N,N}` on top and `h^{0,0}` at the
/// bottom; row `s` holds `h^{p,q}` with `p + q = s`, `h^{s,0}` leftmost.
fn latex_diamond(rec: &ResultRecord, coefficients: &[(u32, u32, String)]) -> Result<String> {
    let n = rec.dimension as usize;
    let h = dense(rec.dimension, coefficients)?;
    let width = 2 * n + 1;
    let mut out = String::new();
    writeln!(
        out,
        "% Hodge diamond: rank {}, degree {}, genus {}, {} determinant",
        rec.rank,
        rec.degree,
        rec.genus,
        if rec.fixed_determinant {
            "fixed"
        } else {
            "varying"
        }
    )?;
    writeln!(out, "\\[")?;
    writeln!(out, "\\begin{{array}}{{{}}}", "c".repeat(width))?;
    for s in (0..=2 * n).rev() {
        let mut cells = vec![String::new(); width];
        let p_lo = s.saturating_sub(n);
        let p_hi = s.min(n);
        for p in p_lo..=p_hi {
            let q = s - p;
            cells[n + q - p] = h[p][q].clone();
        }
        let sep = if s == 0 { "" } else { " \\\\" };
        writeln!(out, "{}{sep}", cells.join(" & "))?;
    }
    writeln!(out, "\\end{{array}}")?;
    writeln!(out, "\\]")?;
    Ok(out)
}

fn csv_coefficients(coefficients: &[(u32, u32, String)]) -> String {
    let mut out = String::from("p,q,h\n");
    for (p, q, v) in coefficients {
        let _ = writeln!(out, "{p},{q},{v}");
    }
    out
}

fn csv_columns(header: &str, cols: &[(i64, String)]) -> String {
    let mut out = format!("{header}\n");
    for (k, v) in cols {
        let _ = writeln!(out, "{k},{v}");
    }
    out
}

/// Renders one record in a non-JSON format.
pub fn render(rec: &ResultRecord, format: Format) -> Result<String> {
    match (format, &rec.payload) {
        (Format::Json, _) => canonical_json(rec),
        (
            Format::Latex,
            Payload::Polynomial { coefficients } | Payload::Diamond { coefficients },
        ) => latex_diamond(rec, coefficients),
        (Format::Csv, Payload::Polynomial { coefficients } | Payload::Diamond { coefficients }) => {
            Ok(csv_coefficients(coefficients))
        }
        (Format::Csv, Payload::Betti { betti, .. }) => {
            let cols: Vec<(i64, String)> = betti
                .iter()
                .map(|(k, v)| (i64::from(*k), v.clone()))
                .collect();
            Ok(csv_columns("k,b", &cols))
        }
        (Format::Latex, Payload::Betti { betti, euler }) => {
            let mut out = String::new();
            writeln!(out, "\\begin{{tabular}}{{l{}}}", "r".repeat(betti.len()))?;
            let ks: Vec<String> = betti.iter().map(|(k, _)| format!("$b_{{{k}}}$")).collect();
            let vs: Vec<&str> = betti.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(out, "$k$ & {} \\\\", ks.join(" & "))?;
            writeln!(out, " & {}", vs.join(" & "))?;
            writeln!(out, "\\end{{tabular}}")?;
            writeln!(out, "% Euler characteristic {euler}")?;
            Ok(out)
        }
        (
            Format::Csv,
            Payload::Sod {
                hochschild,
                residual,
                ..
            },
        ) => {
            let mut out = String::from("k,hh,residual\n");
            let keys: std::collections::BTreeSet<i64> =
                hochschild.iter().chain(residual).map(|(k, _)| *k).collect();
            let lookup = |cols: &[(i64, String)], k: i64| {
                cols.iter()
                    .find(|(j, _)| *j == k)
                    .map_or_else(|| "0".to_string(), |(_, v)| v.clone())
            };
            for k in keys {
                writeln!(out, "{k},{},{}", lookup(hochschild, k), lookup(residual, k))?;
            }
            Ok(out)
        }
        _ => Err(unsupported(rec, format)),
    }
}

/// Renders several records; JSON becomes one array, other formats are
/// concatenated with a comment line naming each parameter set.
pub fn render_many(recs: &[ResultRecord], format: Format) -> Result<String> {
    if format == Format::Json {
        return canonical_json_list(recs);
    }
    let comment = if format == Format::Latex { "%" } else { "#" };
    let mut out = String::new();
    for rec in recs {
        writeln!(
            out,
            "{comment} r={} d={} g={} fixed_determinant={}",
            rec.rank, rec.degree, rec.genus, rec.fixed_determinant
        )?;
        out.push_str(&render(rec, format)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use mhodge_core::ModuliParams;

    #[test]
    fn latex_diamond_of_genus_two() {
        let rec = ResultRecord::diamond(&ModuliParams::fixed(2, 1, 2).unwrap()).unwrap();
        let tex = render(&rec, Format::Latex).unwrap();
        let rows: Vec<&str> = tex.lines().filter(|l| l.contains('&')).collect();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0].replace(' ', ""), "&&&1&&&\\\\");
        assert_eq!(rows[3].replace(' ', ""), "0&&2&&2&&0\\\\");
        assert_eq!(rows[4].replace(' ', ""), "&0&&1&&0&\\\\");
        assert_eq!(rows[6].replace(' ', ""), "&&&1&&&");
    }

    #[test]
    fn csv_lists_nonzero_entries_in_order() {
        let rec = ResultRecord::polynomial(&ModuliParams::fixed(2, 1, 2).unwrap()).unwrap();
        let csv = render(&rec, Format::Csv).unwrap();
        assert_eq!(csv, "p,q,h\n0,0,1\n1,1,1\n1,2,2\n2,1,2\n2,2,1\n3,3,1\n");
    }

    #[test]
    fn unsupported_pairs_are_usage_errors() {
        let rec = ResultRecord::chern(2, 1, 4).unwrap();
        let err = render(&rec, Format::Csv).unwrap_err();
        assert!(err.downcast_ref::<UsageError>().is_some());
    }
}
