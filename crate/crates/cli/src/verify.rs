//! Invariant suites run by `mhodge verify`.

use clap::ValueEnum;
use mhodge_core::bounds::min_genus_ff;
use mhodge_core::chern::det_cohomology_exponent;
use mhodge_core::hodge::{diamond, lemma_hodge_numbers_check, level_check};
use mhodge_core::sod::sod_residual;
use mhodge_core::{Error, HodgeDiamond, ModuliParams};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    LemmaHodge,
    Symmetry,
    Level,
    Chern,
    Sod,
    All,
}

impl Suite {
    fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![
                Suite::LemmaHodge,
                Suite::Symmetry,
                Suite::Level,
                Suite::Chern,
                Suite::Sod,
            ],
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub suite: Suite,
    pub rank: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    pub genus: u32,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub grid: String,
    pub checks: usize,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

/// Grid points for the suites, already validated.
pub struct Points {
    pub ranks: Vec<u32>,
    pub degrees: Vec<i64>,
    pub genera: Vec<u32>,
}

impl Points {
    fn triples(&self) -> impl Iterator<Item = (u32, i64, u32)> + '_ {
        self.ranks.iter().flat_map(move |&r| {
            self.degrees
                .iter()
                .filter(move |d| d.gcd(&i64::from(r)) == 1)
                .flat_map(move |&d| self.genera.iter().map(move |&g| (r, d, g)))
        })
    }
}

struct Run {
    checks: usize,
    failures: Vec<Failure>,
}

impl Run {
    /// Records one check. Input errors abort the run, any other error is
    /// reported as a failure.
    fn check(
        &mut self,
        suite: Suite,
        (r, d, g): (u32, Option<i64>, u32),
        outcome: Result<Option<String>, Error>,
    ) -> Result<(), Error> {
        self.checks += 1;
        let detail = match outcome {
            Ok(None) => return Ok(()),
            Ok(Some(detail)) => detail,
            Err(e) if e.is_input_error() => return Err(e),
            Err(e) => e.to_string(),
        };
        self.failures.push(Failure {
            suite,
            rank: r,
            degree: d,
            genus: g,
            detail,
        });
        Ok(())
    }
}

fn lemma_hodge(r: u32, g: u32) -> Result<Option<String>, Error> {
    let report = lemma_hodge_numbers_check(r, g)?;
    let bad: Vec<String> = report
        .clauses
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: expected {}, got {}", c.clause, c.expected, c.actual))
        .collect();
    Ok((!bad.is_empty()).then(|| bad.join("; ")))
}

fn diamond_shape(dm: &HodgeDiamond, fixed: bool) -> Option<String> {
    let n = dm.dimension();
    for p in 0..=n {
        for q in 0..=n {
            let v = dm.get(p, q);
            if v.is_negative() {
                return Some(format!("h^{{{p},{q}}} = {v} is negative"));
            }
            if v != dm.get(q, p) {
                return Some(format!("h^{{{p},{q}}} != h^{{{q},{p}}}"));
            }
            if v != dm.get(n - p, n - q) {
                return Some(format!("h^{{{p},{q}}} != h^{{{},{}}}", n - p, n - q));
            }
        }
    }
    if !dm.get(0, 0).is_one() || !dm.get(n, n).is_one() {
        return Some("corner entries are not 1".into());
    }
    if fixed {
        if let Some(p) = (1..=n).find(|&p| !dm.get(p, 0).is_zero()) {
            return Some(format!("h^{{{p},0}} = {} != 0", dm.get(p, 0)));
        }
    }
    None
}

fn symmetry(r: u32, d: i64, g: u32) -> Result<Option<String>, Error> {
    for fixed in [true, false] {
        let dm = diamond(&ModuliParams::new(r, d, g, fixed)?)?;
        if let Some(msg) = diamond_shape(&dm, fixed) {
            let which = if fixed { "fixed" } else { "varying" };
            return Ok(Some(format!("{which} determinant: {msg}")));
        }
    }
    Ok(None)
}

fn level(r: u32, d: i64, g: u32) -> Result<Option<String>, Error> {
    let report = level_check(&diamond(&ModuliParams::fixed(r, d, g)?)?);
    Ok((!report.pass()).then(|| {
        report
            .violations
            .iter()
            .map(|v| {
                format!(
                    "h^{{{},{}}} = {} beyond level {}",
                    v.p, v.q, v.value, v.bound
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }))
}

fn chern(r: u32, d: i64, g: u32) -> Result<Option<String>, Error> {
    let e = det_cohomology_exponent(r, d, g)?;
    Ok((!e.lemma.check).then(|| {
        format!(
            "ν_f = {} but expected {}",
            e.lemma.nu_fiber, e.lemma.expected
        )
    }))
}

/// Above the genus threshold the residual columns must be nonnegative;
/// below it there is nothing to check.
fn sod(r: u32, d: i64, g: u32) -> Result<Option<Option<String>>, Error> {
    if r < 2 || g < min_genus_ff(r)? {
        return Ok(None);
    }
    let res = sod_residual(r, d, g)?;
    Ok(Some(
        (!res.is_nonnegative()).then(|| format!("residual {res} has a negative column")),
    ))
}

pub fn run(suite: Suite, points: &Points, grid_label: String) -> Result<VerifyReport, Error> {
    let mut run = Run {
        checks: 0,
        failures: Vec::new(),
    };
    for s in suite.expand() {
        match s {
            Suite::LemmaHodge => {
                for &r in &points.ranks {
                    for &g in &points.genera {
                        run.check(s, (r, None, g), lemma_hodge(r, g))?;
                    }
                }
            }
            Suite::Sod => {
                for (r, d, g) in points.triples() {
                    match sod(r, d, g) {
                        Ok(None) => {}
                        Ok(Some(outcome)) => run.check(s, (r, Some(d), g), Ok(outcome))?,
                        Err(e) => run.check(s, (r, Some(d), g), Err(e))?,
                    }
                }
            }
            Suite::Symmetry | Suite::Level | Suite::Chern => {
                let f = match s {
                    Suite::Symmetry => symmetry,
                    Suite::Level => level,
                    _ => chern,
                };
                for (r, d, g) in points.triples() {
                    run.check(s, (r, Some(d), g), f(r, d, g))?;
                }
            }
            Suite::All => unreachable!("expanded above"),
        }
    }
    Ok(VerifyReport {
        suite,
        grid: grid_label,
        checks: run.checks,
        passed: run.failures.is_empty(),
        failures: run.failures,
    })
}
