//! Hodge–Poincaré polynomials of moduli of stable bundles on a curve.
//!
//! The fixed-determinant polynomial is a signed sum over the compositions
//! `r = r_1 + ... + r_ℓ` of
//!
//! ```text
//! (-1)^{ℓ-1} ((1+x)^g (1+y)^g / (1-xy))^{ℓ-1}
//!   · Π_j Π_{i=1}^{r_j-1} (1+x^i y^{i+1})^g (1+x^{i+1} y^i)^g / ((1-(xy)^i)(1-(xy)^{i+1}))
//!   · Π_{j=1}^{ℓ-1} 1 / (1-(xy)^{r_j+r_{j+1}})
//!   · (xy)^E
//! ```
//!
//! with `E` from [`twist_exponent`]. Each summand is a power series; the sum
//! is a polynomial of bidegree at most `(N, N)` with `N = dim M`, so every
//! summand is evaluated truncated at `(N, N)`. Varying the determinant
//! multiplies by the Jacobian factor `(1+x)^g (1+y)^g`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composition::{compositions, twist_exponent, Composition};
use crate::error::{Error, Result};
use crate::series::{BiPoly, Caps, UniPoly};

/// `(r, d, g)` together with the choice of fixed or varying determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuliParams {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub fixed_determinant: bool,
}

impl ModuliParams {
    pub fn new(rank: u32, degree: i64, genus: u32, fixed_determinant: bool) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter("rank must be positive".into()));
        }
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        if degree.gcd(&i64::from(rank)) != 1 {
            return Err(Error::NonCoprime { rank, degree });
        }
        Ok(ModuliParams {
            rank,
            degree,
            genus,
            fixed_determinant,
        })
    }

    pub fn fixed(rank: u32, degree: i64, genus: u32) -> Result<Self> {
        Self::new(rank, degree, genus, true)
    }

    pub fn varying(rank: u32, degree: i64, genus: u32) -> Result<Self> {
        Self::new(rank, degree, genus, false)
    }

    /// Complex dimension of the moduli space.
    pub fn dimension(&self) -> u32 {
        let r2 = self.rank * self.rank;
        if self.fixed_determinant {
            (r2 - 1) * (self.genus - 1)
        } else {
            r2 * (self.genus - 1) + 1
        }
    }

    pub fn with_fixed_determinant(self, fixed: bool) -> Self {
        ModuliParams {
            fixed_determinant: fixed,
            ..self
        }
    }
}

/// `(1+x)^g (1+y)^g`, applied as two sparse factors.
fn jacobian_factor(acc: &BiPoly, g: u32) -> BiPoly {
    let caps = acc.caps();
    let fx = BiPoly::one_plus(1, 1, 0, caps).pow(g);
    let fy = BiPoly::one_plus(1, 0, 1, caps).pow(g);
    acc.mul(&fx).and_then(|p| p.mul(&fy)).expect("caps agree")
}

fn composition_summand(c: &Composition, params: &ModuliParams, caps: Caps) -> Result<BiPoly> {
    let g = params.genus;
    let ell = c.len() as u32;
    let e = twist_exponent(c, g, params.degree, params.rank)?;
    let Ok(e) = u32::try_from(e) else {
        return Ok(BiPoly::zero(caps));
    };
    let sign = if (ell - 1).is_multiple_of(2) { 1 } else { -1 };
    let mut acc = BiPoly::monomial(sign, e, e, caps);
    if acc.is_zero() {
        return Ok(acc);
    }

    // Diagonal factors first: the accumulator stays supported on x^k y^k
    // until the off-diagonal numerators are applied.
    let mul = |acc: BiPoly, f: &BiPoly| acc.mul(f).expect("caps agree");
    for _ in 1..ell {
        acc = mul(acc, &BiPoly::geom_series(1, 1, caps)?);
    }
    for w in c.parts().windows(2) {
        let s = w[0] + w[1];
        acc = mul(acc, &BiPoly::geom_series(s, s, caps)?);
    }
    for &rj in c.parts() {
        for i in 1..rj {
            acc = mul(acc, &BiPoly::geom_series(i, i, caps)?);
            acc = mul(acc, &BiPoly::geom_series(i + 1, i + 1, caps)?);
        }
    }
    for &rj in c.parts() {
        for i in 1..rj {
            acc = mul(acc, &BiPoly::one_plus(1, i, i + 1, caps).pow(g));
            acc = mul(acc, &BiPoly::one_plus(1, i + 1, i, caps).pow(g));
        }
    }
    if ell > 1 {
        acc = jacobian_factor(&acc, g * (ell - 1));
    }
    Ok(acc)
}

/// Evaluates the composition sum with explicit caps. Callers normally want
/// [`hp_fixed_det`]; larger caps give the same polynomial.
pub fn del_bano_sum(params: &ModuliParams, caps: Caps) -> Result<BiPoly> {
    let comps = compositions(params.rank);
    let summands = comps
        .par_iter()
        .map(|c| composition_summand(c, params, caps))
        .collect::<Result<Vec<_>>>()?;
    summands
        .iter()
        .try_fold(BiPoly::zero(caps), |acc, s| acc.add(s))
}

/// Hodge–Poincaré polynomial of `M_C(r, L)`, with caps `(N, N)`.
pub fn hp_fixed_det(params: &ModuliParams) -> Result<BiPoly> {
    let fixed = params.with_fixed_determinant(true);
    del_bano_sum(&fixed, Caps::square(fixed.dimension()))
}

/// Hodge–Poincaré polynomial of `M_C(r, d)`, with caps `(N, N)`, `N = r²(g-1)+1`.
pub fn hp_varying_det(params: &ModuliParams) -> Result<BiPoly> {
    let varying = params.with_fixed_determinant(false);
    let caps = Caps::square(varying.dimension());
    let fixed = hp_fixed_det(params)?;
    let widened = BiPoly::from_terms(fixed.terms().map(|(i, j, c)| (i, j, c.clone())), caps);
    Ok(jacobian_factor(&widened, params.genus))
}

/// Polynomial matching `params.fixed_determinant`.
pub fn hodge_poincare(params: &ModuliParams) -> Result<BiPoly> {
    if params.fixed_determinant {
        hp_fixed_det(params)
    } else {
        hp_varying_det(params)
    }
}

/// Hodge numbers `h^{p,q}` of a smooth projective variety of dimension `n`.
///
/// Construction validates nonnegativity, `h^{0,0} = 1`, Hodge symmetry and
/// Serre duality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDiamond", into = "RawDiamond")]
pub struct HodgeDiamond {
    n: usize,
    h: Vec<Vec<BigInt>>,
}

#[derive(Serialize, Deserialize)]
struct RawDiamond {
    dimension: usize,
    #[serde(with = "decimal_matrix")]
    hodge_numbers: Vec<Vec<BigInt>>,
}

mod decimal_matrix {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let rows: Vec<Vec<String>> = Deserialize::deserialize(d)?;
        rows.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

impl TryFrom<RawDiamond> for HodgeDiamond {
    type Error = Error;

    fn try_from(raw: RawDiamond) -> Result<Self> {
        HodgeDiamond::new(raw.dimension, raw.hodge_numbers)
    }
}

impl From<HodgeDiamond> for RawDiamond {
    fn from(d: HodgeDiamond) -> Self {
        RawDiamond {
            dimension: d.n,
            hodge_numbers: d.h,
        }
    }
}

impl HodgeDiamond {
    pub fn new(n: usize, h: Vec<Vec<BigInt>>) -> Result<Self> {
        if h.len() != n + 1 || h.iter().any(|row| row.len() != n + 1) {
            return Err(Error::InvalidDiamond(format!(
                "expected a {0}x{0} matrix",
                n + 1
            )));
        }
        for (p, row) in h.iter().enumerate() {
            for (q, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(Error::InvalidDiamond(format!("h^{{{p},{q}}} = {v} < 0")));
                }
                if *v != h[q][p] {
                    return Err(Error::SymmetryViolation { p, q });
                }
                if *v != h[n - p][n - q] {
                    return Err(Error::DualityViolation { p, q });
                }
            }
        }
        if !h[0][0].is_one() {
            return Err(Error::InvalidDiamond(format!("h^{{0,0}} = {}", h[0][0])));
        }
        Ok(HodgeDiamond { n, h })
    }

    /// Reads `h^{p,q}` off the coefficients of a Hodge–Poincaré polynomial.
    pub fn from_polynomial(n: usize, p: &BiPoly) -> Result<Self> {
        if p.max_x_degree().unwrap_or(0) as usize > n || p.max_y_degree().unwrap_or(0) as usize > n
        {
            return Err(Error::InvalidDiamond(format!(
                "polynomial exceeds dimension {n}"
            )));
        }
        let mut h = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (i, j, c) in p.terms() {
            h[i as usize][j as usize] = c.clone();
        }
        Self::new(n, h)
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// `h^{p,q}`, zero outside the diamond.
    pub fn get(&self, p: usize, q: usize) -> BigInt {
        self.h
            .get(p)
            .and_then(|row| row.get(q))
            .cloned()
            .unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.h
    }

    /// Nonzero entries as `(p, q, h^{p,q})`, lexicographic in `(p, q)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.h.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(q, v)| (p, q, v))
        })
    }

    pub fn to_polynomial(&self) -> BiPoly {
        let n = self.n as u32;
        BiPoly::from_terms(
            self.nonzero()
                .map(|(p, q, v)| (p as u32, q as u32, v.clone())),
            Caps::square(n),
        )
    }

    pub fn betti(&self) -> UniPoly {
        self.to_polynomial().specialize_diag()
    }

    pub fn euler(&self) -> BigInt {
        self.betti().eval(&BigInt::from(-1))
    }
}

pub fn diamond(params: &ModuliParams) -> Result<HodgeDiamond> {
    let p = hodge_poincare(params)?;
    HodgeDiamond::from_polynomial(params.dimension() as usize, &p)
}

/// Poincaré polynomial `Σ b_k t^k`.
pub fn betti(params: &ModuliParams) -> Result<UniPoly> {
    Ok(hodge_poincare(params)?.specialize_diag())
}

/// Topological Euler characteristic.
pub fn euler(params: &ModuliParams) -> Result<BigInt> {
    Ok(betti(params)?.eval(&BigInt::from(-1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseCheck {
    pub clause: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

/// Outcome of checking `h^{0,1} = 0`, `h^{1,1} = 1`, `h^{2,1} = g` and
/// `h^{i,1} = 0` for `3 <= i <= N` on `M_C(r, L)` with `d = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub rank: u32,
    pub genus: u32,
    pub clauses: Vec<ClauseCheck>,
}

impl LemmaReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

pub fn lemma_hodge_numbers_check(rank: u32, genus: u32) -> Result<LemmaReport> {
    let params = ModuliParams::fixed(rank, 1, genus)?;
    let hp = hp_fixed_det(&params)?;
    let n = params.dimension();
    let check = |clause: &str, expected: BigInt, actual: BigInt| ClauseCheck {
        clause: clause.to_string(),
        pass: expected == actual,
        expected: expected.to_string(),
        actual: actual.to_string(),
    };
    let mut clauses = vec![
        check("h^{0,1} = 0", BigInt::zero(), hp.coeff(0, 1)),
        check("h^{1,1} = 1", BigInt::one(), hp.coeff(1, 1)),
        check("h^{2,1} = g", BigInt::from(genus), hp.coeff(2, 1)),
    ];
    let offenders: Vec<String> = (3..=n)
        .filter(|&i| !hp.coeff(i, 1).is_zero())
        .map(|i| format!("h^{{{i},1}} = {}", hp.coeff(i, 1)))
        .collect();
    clauses.push(ClauseCheck {
        clause: format!("h^{{i,1}} = 0 for 3 <= i <= {n}"),
        expected: "none nonzero".into(),
        actual: if offenders.is_empty() {
            "none nonzero".into()
        } else {
            offenders.join(", ")
        },
        pass: offenders.is_empty(),
    });
    Ok(LemmaReport {
        rank,
        genus,
        clauses,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelViolation {
    pub p: usize,
    pub q: usize,
    pub value: String,
    pub bound: usize,
}

/// Entries with `h^{p,q} != 0` and `|p - q| > ⌊(p+q)/3⌋`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub max_level_by_degree: Vec<usize>,
    pub violations: Vec<LevelViolation>,
}

impl LevelReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn level_check(dm: &HodgeDiamond) -> LevelReport {
    let n = dm.dimension();
    let mut report = LevelReport {
        max_level_by_degree: vec![0; 2 * n + 1],
        violations: Vec::new(),
    };
    for (p, q, v) in dm.nonzero() {
        let i = p + q;
        let level = p.abs_diff(q);
        report.max_level_by_degree[i] = report.max_level_by_degree[i].max(level);
        if level > i / 3 {
            report.violations.push(LevelViolation {
                p,
                q,
                value: v.to_string(),
                bound: i / 3,
            });
        }
    }
    report
}
