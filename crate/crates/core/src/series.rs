//! Truncated bivariate polynomials with exact integer coefficients.
//!
//! A [`BiPoly`] stores `Σ c_{ij} x^i y^j` sparsely, keyed by bidegree, and
//! carries its own truncation caps: every stored monomial satisfies
//! `i <= cap_x` and `j <= cap_y`, and no stored coefficient is zero. Products
//! discard monomials beyond the caps, so the ring operations compute in
//! `Z[x, y] / (x^{cap_x + 1}, y^{cap_y + 1})`.
//!
//! Two values may only be combined when their caps agree; there is no silent
//! re-truncation.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Inclusive truncation bounds `(cap_x, cap_y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Caps {
    pub x: u32,
    pub y: u32,
}

impl Caps {
    pub const fn new(x: u32, y: u32) -> Self {
        Caps { x, y }
    }

    /// Square caps `(n, n)`.
    pub const fn square(n: u32) -> Self {
        Caps { x: n, y: n }
    }

    #[inline]
    pub fn admits(&self, i: u32, j: u32) -> bool {
        i <= self.x && j <= self.y
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: BTreeMap<(u32, u32), BigInt>,
    caps: Caps,
}

impl BiPoly {
    pub fn zero(caps: Caps) -> Self {
        BiPoly {
            coeffs: BTreeMap::new(),
            caps,
        }
    }

    pub fn one(caps: Caps) -> Self {
        Self::monomial(1, 0, 0, caps)
    }

    /// `c · x^i y^j`, or zero if the monomial lies beyond the caps.
    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32, caps: Caps) -> Self {
        let mut p = Self::zero(caps);
        p.add_term(i, j, c.into());
        p
    }

    /// Builds a polynomial from `(i, j, c)` triples; repeated bidegrees are
    /// summed and monomials beyond the caps are dropped.
    pub fn from_terms<I, C>(terms: I, caps: Caps) -> Self
    where
        I: IntoIterator<Item = (u32, u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(caps);
        for (i, j, c) in terms {
            p.add_term(i, j, c.into());
        }
        p
    }

    /// `1 + c · x^i y^j`.
    pub fn one_plus(c: impl Into<BigInt>, i: u32, j: u32, caps: Caps) -> Self {
        Self::from_terms([(0, 0, BigInt::one()), (i, j, c.into())], caps)
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i y^j`; zero when absent.
    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Nonzero terms in lexicographic `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, _)| i).max()
    }

    pub fn max_y_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(_, j)| j).max()
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(i, j)| i + j).max()
    }

    fn add_term(&mut self, i: u32, j: u32, c: BigInt) {
        if c.is_zero() || !self.caps.admits(i, j) {
            return;
        }
        match self.coeffs.entry((i, j)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_caps(&self, other: &BiPoly) -> Result<()> {
        if self.caps != other.caps {
            return Err(Error::CapMismatch {
                left: self.caps,
                right: other.caps,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_caps(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
            caps: self.caps,
        }
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> BiPoly {
        if k.is_zero() {
            return BiPoly::zero(self.caps);
        }
        BiPoly {
            coeffs: self.coeffs.iter().map(|(&key, c)| (key, c * k)).collect(),
            caps: self.caps,
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &BiPoly) -> Result<BiPoly> {
        self.check_caps(other)?;
        // Iterate the shorter operand in the outer loop; the inner loop can
        // stop early once the x-degree leaves the caps since keys are sorted.
        let (outer, inner) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let caps = self.caps;
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(i1, j1), c1) in &outer.coeffs {
            for (&(i2, j2), c2) in &inner.coeffs {
                let i = i1 + i2;
                if i > caps.x {
                    break;
                }
                let j = j1 + j2;
                if j > caps.y {
                    continue;
                }
                *acc.entry((i, j)).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(BiPoly { coeffs: acc, caps })
    }

    /// Multiplies by the monomial `c · x^i y^j`.
    pub fn shift(&self, c: &BigInt, i: u32, j: u32) -> BiPoly {
        let mut out = BiPoly::zero(self.caps);
        if c.is_zero() {
            return out;
        }
        for (&(a, b), v) in &self.coeffs {
            out.add_term(a + i, b + j, v * c);
        }
        out
    }

    /// Truncated `n`-th power by binary exponentiation.
    pub fn pow(&self, mut n: u32) -> BiPoly {
        let mut result = BiPoly::one(self.caps);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("caps agree");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("caps agree");
            }
        }
        result
    }

    /// `Σ_{k≥0} x^{ak} y^{bk}` truncated to `caps`, the inverse of `1 - x^a y^b`.
    pub fn geom_series(a: u32, b: u32, caps: Caps) -> Result<BiPoly> {
        if a == 0 && b == 0 {
            return Err(Error::ZeroMonomial);
        }
        let mut p = BiPoly::zero(caps);
        let (mut i, mut j) = (0u32, 0u32);
        while caps.admits(i, j) {
            p.coeffs.insert((i, j), BigInt::one());
            i += a;
            j += b;
        }
        Ok(p)
    }

    /// Restricts to smaller caps.
    pub fn truncate(&self, caps: Caps) -> BiPoly {
        BiPoly {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(i, j), _)| caps.admits(i, j))
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            caps,
        }
    }

    /// Sets `x = y = t`.
    pub fn specialize_diag(&self) -> UniPoly {
        let mut out = UniPoly::default();
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i + j, c.clone());
        }
        out
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{}x{}](", self.caps.x, self.caps.y)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, var: &str, e: u32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

impl fmt::Display for BiPoly {
    /// Terms ordered by total degree, then by descending x-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.coeffs.keys().copied().collect();
        keys.sort_by_key(|&(i, j)| (i + j, std::cmp::Reverse(i)));
        for (n, (i, j)) in keys.into_iter().enumerate() {
            let c = &self.coeffs[&(i, j)];
            let sign = if c.is_negative() { "-" } else { "+" };
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let constant = i == 0 && j == 0;
            if constant || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write_monomial(f, "x", i)?;
            write_monomial(f, "y", j)?;
        }
        Ok(())
    }
}

/// Univariate polynomial with exact integer coefficients, untruncated.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, BigInt>,
}

impl UniPoly {
    pub fn from_coeffs<I, C>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = (u32, C)>,
        C: Into<BigInt>,
    {
        let mut p = UniPoly::default();
        for (k, c) in coeffs {
            p.add_term(k, c.into());
        }
        p
    }

    fn add_term(&mut self, k: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> BigInt {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (&k, c) in &other.coeffs {
            out.add_term(k, c.clone());
        }
        out
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        let mut out = UniPoly::default();
        for (&a, c1) in &self.coeffs {
            for (&b, c2) in &other.coeffs {
                out.add_term(a + b, c1 * c2);
            }
        }
        out
    }

    /// Value at `t = v`.
    pub fn eval(&self, v: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .map(|(&k, c)| c * num_traits::pow(v.clone(), k as usize))
            .sum()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (n, (&k, c)) in self.coeffs.iter().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let abs = c.abs();
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            write_monomial(f, "t", k)?;
        }
        Ok(())
    }
}
