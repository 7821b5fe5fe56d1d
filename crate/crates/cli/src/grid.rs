//! Parameter grids such as `r=2..4,g=2..6` or `r=3,d=1..2,g=4`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Inclusive ranges for `r`, `d` and `g`; absent keys are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Grid {
    pub ranks: Option<Vec<u32>>,
    pub degrees: Option<Vec<i64>>,
    pub genera: Option<Vec<u32>>,
}

#[derive(Debug, thiserror::Error)]
#[error("bad grid {input:?}: {reason}")]
pub struct GridError {
    input: String,
    reason: String,
}

fn parse_range<T>(s: &str) -> Result<Vec<T>, String>
where
    T: FromStr + Copy + PartialOrd + TryFrom<i64>,
    i64: From<T>,
{
    let num = |t: &str| {
        t.trim()
            .parse::<T>()
            .map_err(|_| format!("not a number: {t:?}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (num(a)?, num(b)?)
        }
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((i64::from(lo)..=i64::from(hi))
        .filter_map(|v| T::try_from(v).ok())
        .collect())
}

impl FromStr for Grid {
    type Err = GridError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: String| GridError {
            input: input.to_string(),
            reason,
        };
        let mut seen = BTreeMap::new();
        let mut grid = Grid::default();
        for part in input.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=range, got {part:?}")))?;
            let key = key.trim();
            if seen.insert(key.to_string(), ()).is_some() {
                return Err(err(format!("duplicate key {key:?}")));
            }
            match key {
                "r" | "rank" => grid.ranks = Some(parse_range(value).map_err(err)?),
                "d" | "degree" => grid.degrees = Some(parse_range(value).map_err(err)?),
                "g" | "genus" => grid.genera = Some(parse_range(value).map_err(err)?),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        if seen.is_empty() {
            return Err(err("no ranges given".into()));
        }
        Ok(grid)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, key: &str, v: &[T]) -> fmt::Result {
    match v {
        [] => Ok(()),
        [x] => write!(f, "{key}={x}"),
        [a, .., b] => write!(f, "{key}={a}..{b}"),
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if let Some(r) = &self.ranks {
            write_list(f, "r", r)?;
            first = false;
        }
        if let Some(d) = &self.degrees {
            if !first {
                write!(f, ",")?;
            }
            write_list(f, "d", d)?;
            first = false;
        }
        if let Some(g) = &self.genera {
            if !first {
                write!(f, ",")?;
            }
            write_list(f, "g", g)?;
        }
        Ok(())
    }
}
