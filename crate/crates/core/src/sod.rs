//! Hochschild column bookkeeping for a semiorthogonal decomposition of
//! `D^b(M_C(r, L))` into two exceptional objects, two copies of `D^b(C)` and
//! a residual category `A`.
//!
//! Hochschild homology is additive across a semiorthogonal decomposition and,
//! by Hochschild–Kostant–Rosenberg, `HH_k(X) = Σ_{q-p=k} h^{p,q}(X)`. Removing
//! two exceptional objects and two copies of the curve must therefore leave
//! nonnegative columns for the residual category. This is only a necessary
//! condition; nothing categorical is checked.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hodge::{diamond, HodgeDiamond, ModuliParams};
use crate::series::{BiPoly, Caps};

/// `k ↦ HH_k`. Entries may be negative for formal differences.
#[derive(Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HHColumns(BTreeMap<i64, BigInt>);

impl HHColumns {
    pub fn from_entries<I, C>(entries: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut cols = HHColumns::default();
        for (k, v) in entries {
            cols.add(k, v.into());
        }
        cols
    }

    fn add(&mut self, k: i64, v: BigInt) {
        if v.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_default();
        *e += v;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    pub fn get(&self, k: i64) -> BigInt {
        self.0.get(&k).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    pub fn total(&self) -> BigInt {
        self.0.values().sum()
    }

    pub fn plus(&self, other: &HHColumns) -> HHColumns {
        let mut out = self.clone();
        for (&k, v) in &other.0 {
            out.add(k, v.clone());
        }
        out
    }

    pub fn minus(&self, other: &HHColumns) -> HHColumns {
        let mut out = self.clone();
        for (&k, v) in &other.0 {
            out.add(k, -v);
        }
        out
    }

    pub fn times(&self, n: i64) -> HHColumns {
        HHColumns::from_entries(self.0.iter().map(|(&k, v)| (k, v * n)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.0.iter().all(|(&k, v)| self.get(-k) == *v)
    }

    /// Columns with a negative entry.
    pub fn negative_entries(&self) -> Vec<(i64, BigInt)> {
        self.0
            .iter()
            .filter(|(_, v)| v.is_negative())
            .map(|(&k, v)| (k, v.clone()))
            .collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.negative_entries().is_empty()
    }
}

impl fmt::Debug for HHColumns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for HHColumns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (k, v)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            if *k == 0 {
                write!(f, "0: {v}")?;
            } else {
                write!(f, "{k:+}: {v}")?;
            }
        }
        write!(f, "}}")
    }
}

pub fn hochschild_columns(dm: &HodgeDiamond) -> HHColumns {
    HHColumns::from_entries(
        dm.nonzero()
            .map(|(p, q, v)| (q as i64 - p as i64, v.clone())),
    )
}

fn columns_of_polynomial(p: &BiPoly) -> HHColumns {
    HHColumns::from_entries(
        p.terms()
            .map(|(i, j, c)| (i64::from(j) - i64::from(i), c.clone())),
    )
}

/// `{-1: g, 0: 2, +1: g}`.
pub fn curve_hh(g: u32) -> HHColumns {
    HHColumns::from_entries([(-1, i64::from(g)), (0, 2), (1, i64::from(g))])
}

/// Columns left for the residual category after removing two exceptional
/// objects and two copies of `D^b(C)`.
pub fn sod_residual(r: u32, d: i64, g: u32) -> Result<HHColumns> {
    let params = ModuliParams::fixed(r, d, g)?;
    let hh = hochschild_columns(&diamond(&params)?);
    let points = HHColumns::from_entries([(0, 2)]);
    Ok(hh.minus(&curve_hh(g).times(2)).minus(&points))
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Hodge–Poincaré polynomial of `Sym^n C`: the `z^n` coefficient of
/// `(1+xz)^g (1+yz)^g / ((1-z)(1-xyz))`.
///
/// Expanding, the coefficient is `Σ binom(g,a) binom(g,b) x^{a+e} y^{b+e}` over
/// `a + b + e <= n`, the remaining power of `z` coming from `1/(1-z)`.
pub fn sym_curve_hp(g: u32, n: u32, caps: Caps) -> BiPoly {
    let mut terms = Vec::new();
    for a in 0..=n.min(g) {
        for b in 0..=(n - a).min(g) {
            let c = binomial(g, a) * binomial(g, b);
            for e in 0..=(n - a - b) {
                terms.push((a + e, b + e, c.clone()));
            }
        }
    }
    BiPoly::from_terms(terms, caps)
}

/// Residual columns for `(r, d, g)` next to the columns of `Sym^i C`,
/// `0 <= i <= g - 1`. Nothing is asserted about how they relate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymProbe {
    pub residual: HHColumns,
    pub symmetric_powers: Vec<(u32, HHColumns)>,
    pub symmetric_powers_total: HHColumns,
}

pub fn sym_probe(r: u32, d: i64, g: u32) -> Result<SymProbe> {
    let residual = sod_residual(r, d, g)?;
    let symmetric_powers: Vec<_> = (0..g)
        .map(|i| {
            (
                i,
                columns_of_polynomial(&sym_curve_hp(g, i, Caps::square(i))),
            )
        })
        .collect();
    let symmetric_powers_total = symmetric_powers
        .iter()
        .fold(HHColumns::default(), |acc, (_, c)| acc.plus(c));
    Ok(SymProbe {
        residual,
        symmetric_powers,
        symmetric_powers_total,
    })
}
