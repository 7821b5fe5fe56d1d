//! Ordered compositions of the rank and the twist exponent attached to each.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = num_rational::Ratio<i64>;

/// An ordered tuple of positive integers `(r_1, ..., r_ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    /// Validates that every part is positive.
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "composition parts must be positive and nonempty, got {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of parts ℓ.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// All `2^{r-1}` compositions of `r` in lexicographic order.
pub fn compositions(r: u32) -> Vec<Composition> {
    fn extend(remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if remaining == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=remaining {
            prefix.push(first);
            extend(remaining - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    extend(r, &mut Vec::new(), &mut out);
    out
}

/// `α - ⌊α⌋`, always in `[0, 1)`.
pub fn frac_part(a: Rational) -> Rational {
    a - a.floor()
}

/// Exponent of `xy` in the summand of a composition:
///
/// `Σ_{i<j} r_i r_j (g-1) + Σ_{i=1}^{ℓ-1} (r_i + r_{i+1}) ⟨-(r_1 + ... + r_i) d / r⟩`.
///
/// The sum is accumulated exactly and must come out a nonnegative integer.
pub fn twist_exponent(c: &Composition, g: u32, d: i64, r: u32) -> Result<u64> {
    if c.total() != r {
        return Err(Error::InvalidParameter(format!(
            "{:?} is not a composition of {r}",
            c.parts()
        )));
    }
    let parts = c.parts();
    let g1 = i64::from(g) - 1;
    let mut total = Rational::zero();

    let mut prefix = 0i64;
    for (idx, &ri) in parts.iter().enumerate() {
        for &rj in &parts[idx + 1..] {
            total += Rational::from_integer(i64::from(ri) * i64::from(rj) * g1);
        }
    }
    // Only d / r mod 1 enters the fractional parts.
    let d_mod = d.mod_floor(&i64::from(r));
    for w in parts.windows(2) {
        prefix += i64::from(w[0]);
        let frac = frac_part(Rational::new(-prefix * d_mod, i64::from(r)));
        total += frac * Rational::from_integer(i64::from(w[0] + w[1]));
    }

    if !total.is_integer() || total.is_negative() {
        return Err(Error::NonIntegerExponent {
            parts: parts.to_vec(),
            value: total.to_string(),
        });
    }
    Ok(total.to_integer() as u64)
}
