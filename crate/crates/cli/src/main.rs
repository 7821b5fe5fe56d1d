//! `mhodge`: Hodge numbers and related invariants of moduli spaces of stable
//! bundles on curves.
//!
//! Exit codes: 0 on success, 1 when an internal invariant fails, 2 on invalid
//! input.

mod cache;
mod grid;
mod render;
mod verify;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use mhodge_core::bounds::min_genus_ff;
use mhodge_core::record::ResultRecord;
use mhodge_core::ModuliParams;

use cache::Cache;
use grid::Grid;
use render::Format;
use verify::{Points, Suite};

/// Invalid command-line input that clap cannot catch by itself.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

/// Emitted document disagrees with an invariant it is expected to satisfy.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InvariantFailure(String);

#[derive(Parser, Debug)]
#[command(
    name = "mhodge",
    version,
    about = "Hodge numbers of moduli of stable bundles on curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hodge–Poincaré polynomial.
    Hp(Common),
    /// Hodge diamond with symmetry and level checks.
    Diamond(Common),
    /// Betti numbers and Euler characteristic.
    Betti(Common),
    /// Genus thresholds, vanishing windows and codimension bounds.
    Bounds(Common),
    /// Solved fiber class and determinant-of-cohomology exponent.
    Chern(Common),
    /// Hochschild columns and the residual after removing known pieces.
    Sod(Common),
    /// Run an invariant suite over a grid.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(short, long)]
    rank: Option<u32>,
    #[arg(short, long, allow_negative_numbers = true)]
    degree: Option<i64>,
    #[arg(short, long)]
    genus: Option<u32>,
    /// Moduli of bundles with varying determinant.
    #[arg(long)]
    varying_det: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Parameter grid, e.g. `r=2..4,g=2..6`.
    #[arg(long)]
    grid: Option<Grid>,
    /// Neither read nor write the on-disk cache.
    #[arg(long)]
    no_cache: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    suite: Suite,
    /// Parameter grid, default `r=2..4,d=1,g=2..6`.
    #[arg(long)]
    grid: Option<Grid>,
}

#[derive(Clone, Copy, Debug)]
enum Kind {
    Polynomial,
    Diamond,
    Betti,
    Bounds,
    Chern,
    Sod,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Polynomial => "hp",
            Kind::Diamond => "diamond",
            Kind::Betti => "betti",
            Kind::Bounds => "bounds",
            Kind::Chern => "chern",
            Kind::Sod => "sod",
        }
    }

    fn compute(self, p: &ModuliParams) -> mhodge_core::Result<ResultRecord> {
        match self {
            Kind::Polynomial => ResultRecord::polynomial(p),
            Kind::Diamond => ResultRecord::diamond(p),
            Kind::Betti => ResultRecord::betti(p),
            Kind::Bounds => ResultRecord::bounds(p.rank, p.degree, p.genus),
            Kind::Chern => ResultRecord::chern(p.rank, p.degree, p.genus),
            Kind::Sod => ResultRecord::sod(p.rank, p.degree, p.genus),
        }
    }

    /// Whether a failed verification flag is an error rather than a finding.
    fn strict(self) -> bool {
        matches!(self, Kind::Diamond | Kind::Chern)
    }

    fn uses_determinant_choice(self) -> bool {
        matches!(self, Kind::Polynomial | Kind::Diamond | Kind::Betti)
    }
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn parameter_sets(kind: Kind, args: &Common) -> Result<Vec<ModuliParams>> {
    let grid = args.grid.clone().unwrap_or_default();
    let ranks = match (grid.ranks, args.rank) {
        (Some(_), Some(_)) => return Err(usage("give the rank either in --grid or --rank")),
        (Some(v), None) => v,
        (None, Some(r)) => vec![r],
        (None, None) => return Err(usage("--rank is required")),
    };
    let explicit_degrees = match (grid.degrees, args.degree) {
        (Some(_), Some(_)) => return Err(usage("give the degree either in --grid or --degree")),
        (Some(v), None) => Some(v),
        (None, d) => d.map(|d| vec![d]),
    };
    let in_grid = args.grid.is_some();
    let fixed = !(args.varying_det && kind.uses_determinant_choice());
    let mut out = Vec::new();
    for &r in &ranks {
        let genera = match (&grid.genera, args.genus) {
            (Some(_), Some(_)) => return Err(usage("give the genus either in --grid or --genus")),
            (Some(v), None) => v.clone(),
            (None, Some(g)) => vec![g],
            (None, None) if matches!(kind, Kind::Bounds) => vec![min_genus_ff(r)?],
            (None, None) => return Err(usage("--genus is required")),
        };
        let degrees = explicit_degrees.clone().unwrap_or_else(|| vec![1]);
        for &d in &degrees {
            for &g in &genera {
                match ModuliParams::new(r, d, g, fixed) {
                    // A grid may cover degrees that are not coprime to every rank.
                    Err(mhodge_core::Error::NonCoprime { .. }) if in_grid => {}
                    other => out.push(other?),
                }
            }
        }
    }
    if out.is_empty() {
        return Err(usage("the grid contains no admissible parameters"));
    }
    Ok(out)
}

/// Returns the canonical JSON for `params`, from the cache when possible.
fn record_document(
    kind: Kind,
    params: &ModuliParams,
    cache: Option<&Cache>,
) -> Result<(ResultRecord, String, bool)> {
    if let Some(doc) = cache.and_then(|c| c.load(kind.name(), params)) {
        if let Ok(rec) = serde_json::from_str::<ResultRecord>(&doc) {
            let matches = rec.version == mhodge_core::VERSION
                && rec.rank == params.rank
                && rec.degree == params.degree
                && rec.genus == params.genus
                && rec.fixed_determinant == params.fixed_determinant;
            if matches && render::canonical_json(&rec)? == doc {
                return Ok((rec, doc, true));
            }
        }
    }
    let rec = kind.compute(params)?;
    let doc = render::canonical_json(&rec)?;
    if let Some(c) = cache {
        if let Err(e) = c.store(kind.name(), params, &doc) {
            eprintln!(
                "warning: could not write cache in {}: {e:#}",
                c.dir().display()
            );
        }
    }
    Ok((rec, doc, false))
}

fn compute(kind: Kind, args: &Common) -> Result<()> {
    let sets = parameter_sets(kind, args)?;
    let cache = (!args.no_cache).then(|| Cache::new(cache::default_dir()));
    let mut records = Vec::with_capacity(sets.len());
    let mut documents = Vec::with_capacity(sets.len());
    for params in &sets {
        let start = Instant::now();
        let (rec, doc, cached) = record_document(kind, params, cache.as_ref())?;
        eprintln!(
            "{} r={} d={} g={}: {:.3?}{}",
            kind.name(),
            params.rank,
            params.degree,
            params.genus,
            start.elapsed(),
            if cached { " (cached)" } else { "" }
        );
        records.push(rec);
        documents.push(doc);
    }

    let output = match (args.format, args.grid.is_some()) {
        (Format::Json, false) => documents.pop().expect("one parameter set"),
        (_, true) => render::render_many(&records, args.format)?,
        (format, false) => render::render(&records[0], format)?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(output.as_bytes())?;
    stdout.flush()?;

    if kind.strict() {
        let failed: Vec<String> = records
            .iter()
            .filter(|r| !r.all_verified())
            .map(|r| format!("r={} d={} g={}", r.rank, r.degree, r.genus))
            .collect();
        if !failed.is_empty() {
            return Err(
                InvariantFailure(format!("verification failed for {}", failed.join(", "))).into(),
            );
        }
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let grid = args.grid.clone().unwrap_or_default();
    let points = Points {
        ranks: grid.ranks.unwrap_or_else(|| (2..=4).collect()),
        degrees: grid.degrees.unwrap_or_else(|| vec![1]),
        genera: grid.genera.unwrap_or_else(|| (2..=6).collect()),
    };
    let label = Grid {
        ranks: Some(points.ranks.clone()),
        degrees: Some(points.degrees.clone()),
        genera: Some(points.genera.clone()),
    }
    .to_string();
    let start = Instant::now();
    let report = verify::run(args.suite, &points, label)?;
    eprintln!(
        "verify: {} checks in {:.3?}",
        report.checks,
        start.elapsed()
    );
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, &report)?;
    writeln!(stdout)?;
    Ok(report.passed)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    if let Some(e) = err.downcast_ref::<mhodge_core::Error>() {
        return if e.is_input_error() { 2 } else { 1 };
    }
    if err.downcast_ref::<grid::GridError>().is_some() {
        return 2;
    }
    1
}

fn run(cli: Cli) -> Result<bool> {
    let (kind, args) = match cli.command {
        Command::Verify(v) => return verify(&v).context("verify"),
        Command::Hp(a) => (Kind::Polynomial, a),
        Command::Diamond(a) => (Kind::Diamond, a),
        Command::Betti(a) => (Kind::Betti, a),
        Command::Bounds(a) => (Kind::Bounds, a),
        Command::Chern(a) => (Kind::Chern, a),
        Command::Sod(a) => (Kind::Sod, a),
    };
    compute(kind, &args)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
