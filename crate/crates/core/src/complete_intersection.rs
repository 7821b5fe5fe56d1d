//! Hodge numbers of smooth complete intersections in projective space.
//!
//! Independent of the composition sum: `χ(X, Ω^p_X)` is assembled from
//! Euler characteristics of twisted sheaves on `P^n`.
//!
//! * `χ(P^n, O(t)) = binom(t+n, n)` as a polynomial in `t`.
//! * The Euler sequence gives `[Ω^k_P] = Σ_i (-1)^i binom(n+1, k-i) [O(-(k-i))]`.
//! * The Koszul resolution of `O_X` gives
//!   `χ(X, F|_X) = Σ_{S ⊆ {1..c}} (-1)^{|S|} χ(P^n, F(-d_S))`.
//! * The conormal sequence gives
//!   `[Ω^p_X] = Σ_j (-1)^j [Sym^j N^∨ ⊗ Ω^{p-j}_P|_X]` with `N^∨ = ⊕ O(-d_i)`.
//!
//! Lefschetz forces `h^{p,q} = δ_{pq}` off the middle row `p + q = m`, so the
//! middle row follows from `χ(Ω^p_X) = Σ_q (-1)^q h^{p,q}`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hodge::HodgeDiamond;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `χ(P^n, O(t))`, valid for every integer `t`.
fn chi_line(n: u32, t: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 1..=i64::from(n) {
        num *= BigInt::from(t + k);
        den *= BigInt::from(k);
    }
    num / den
}

/// `χ(P^n, Ω^k(t))`.
fn chi_omega_twist(n: u32, k: u32, t: i64) -> BigInt {
    (0..=k)
        .map(|i| {
            let s = i64::from(k - i);
            let term = binomial(u64::from(n) + 1, s as u64) * chi_line(n, t - s);
            if i % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `χ(X, Ω^k_P(t)|_X)` via the Koszul resolution.
fn chi_restricted(n: u32, degrees: &[u32], k: u32, t: i64) -> BigInt {
    let c = degrees.len();
    (0u32..(1 << c))
        .map(|mask| {
            let shift: i64 = (0..c)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| i64::from(degrees[i]))
                .sum();
            let term = chi_omega_twist(n, k, t - shift);
            if mask.count_ones() % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Multisets of size `j` drawn from `degrees`, returned as their degree sums.
fn multiset_degree_sums(degrees: &[u32], j: u32) -> Vec<i64> {
    fn go(degrees: &[u32], start: usize, left: u32, acc: i64, out: &mut Vec<i64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for idx in start..degrees.len() {
            go(degrees, idx, left - 1, acc + i64::from(degrees[idx]), out);
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, j, 0, &mut out);
    out
}

/// `χ(X, Ω^p_X)` for the complete intersection.
pub fn chi_omega(degrees: &[u32], ambient_dim: u32, p: u32) -> BigInt {
    (0..=p)
        .map(|j| {
            let term: BigInt = multiset_degree_sums(degrees, j)
                .into_iter()
                .map(|s| chi_restricted(ambient_dim, degrees, p - j, -s))
                .sum();
            if j % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Hodge diamond of a smooth complete intersection of the given
/// multidegree in `P^{ambient_dim}`.
pub fn ci_hodge_oracle(degrees: &[u32], ambient_dim: u32) -> Result<HodgeDiamond> {
    if degrees.contains(&0) {
        return Err(Error::InvalidParameter("degrees must be positive".into()));
    }
    let c = degrees.len() as u32;
    if c >= ambient_dim {
        return Err(Error::UnsupportedDimension(format!(
            "{c} equations in P^{ambient_dim} leave dimension < 1"
        )));
    }
    let m = (ambient_dim - c) as usize;
    let mut h = vec![vec![BigInt::zero(); m + 1]; m + 1];
    for (p, row) in h.iter_mut().enumerate() {
        row[p] = BigInt::one();
    }
    for (p, row) in h.iter_mut().enumerate() {
        let q = m - p;
        let chi = chi_omega(degrees, ambient_dim, p as u32);
        let off_middle = if p != q {
            if p % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        } else {
            BigInt::zero()
        };
        let mut middle = chi - off_middle;
        if q % 2 == 1 {
            middle = -middle;
        }
        if middle.is_negative() {
            return Err(Error::InternalInconsistency(format!(
                "negative middle Hodge number h^{{{p},{q}}} = {middle}"
            )));
        }
        row[q] = middle;
    }
    HodgeDiamond::new(m, h)
}
