//! Genus thresholds, dimensions and vanishing windows.
//!
//! Every "least integer such that" threshold is found by scanning upward with
//! exact integer arithmetic, never by solving and rounding.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper limit for threshold scans. Every threshold here is linear in `g`
/// with positive slope, so a scan that runs this far indicates a bug.
const SCAN_LIMIT: i64 = 1 << 20;

pub fn moduli_dim(r: u32, g: u32, fixed: bool) -> i64 {
    let (r, g) = (i64::from(r), i64::from(g));
    if fixed {
        (r * r - 1) * (g - 1)
    } else {
        r * r * (g - 1) + 1
    }
}

/// Least `ℓ >= 0` with `ℓ d ≡ 1 (mod r)`.
pub fn normalization_ell(r: u32, d: i64) -> Result<u32> {
    let rr = i64::from(r);
    if r == 0 || d.gcd(&rr) != 1 {
        return Err(Error::NonCoprime { rank: r, degree: d });
    }
    (0..r)
        .find(|&l| (i64::from(l) * d - 1).mod_floor(&rr) == 0)
        .ok_or_else(|| Error::InternalInconsistency(format!("no inverse of {d} mod {r}")))
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

/// `2rg - 2(r + g)`.
fn hecke_lhs(r: i64, g: i64) -> i64 {
    2 * r * g - 2 * (r + g)
}

fn scan_from(start: i64, pred: impl Fn(i64) -> bool) -> i64 {
    (start..SCAN_LIMIT)
        .find(|&g| pred(g))
        .expect("threshold scan exceeded its limit")
}

/// Least `g_0 >= 2` with `2 r g_0 - 2(r + g_0) >= r² - 1`.
pub fn min_genus_ff(r: u32) -> Result<u32> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("rank {r} < 2")));
    }
    let r = i64::from(r);
    Ok(scan_from(2, |g| hecke_lhs(r, g) >= r * r - 1) as u32)
}

/// Least positive `g_j` with `2 r g_j - 2(r + g_j) >= binom(r, j) - 1`.
pub fn min_genus_wedge(r: u32, j: u32) -> Result<u32> {
    if j < 1 || j + 1 > r {
        return Err(Error::BadIndex { rank: r, j });
    }
    let target = binomial(r, j) - 1;
    let r = i64::from(r);
    Ok(scan_from(1, |g| hecke_lhs(r, g) >= target) as u32)
}

/// Range of cohomological degrees `[lower, upper]` asserted to vanish;
/// `None` stands for an infinite end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingWindow {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
    pub meaning: String,
}

impl VanishingWindow {
    pub fn from(lower: i64, meaning: impl Into<String>) -> Self {
        VanishingWindow {
            lower: Some(lower),
            upper: None,
            meaning: meaning.into(),
        }
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lower.is_none_or(|l| i >= l) && self.upper.is_none_or(|u| i <= u)
    }
}

impl fmt::Display for VanishingWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lo = self.lower.map_or("-inf".to_string(), |l| l.to_string());
        let hi = self.upper.map_or("+inf".to_string(), |u| u.to_string());
        write!(f, "[{lo}, {hi}] ({})", self.meaning)
    }
}

/// Twisted cohomology of an ample bundle of the given rank vanishes for `i >= rank`.
pub fn lepotier_window(bundle_rank: u32) -> Result<VanishingWindow> {
    if bundle_rank == 0 {
        return Err(Error::InvalidParameter(
            "bundle rank must be positive".into(),
        ));
    }
    Ok(VanishingWindow::from(
        i64::from(bundle_rank),
        format!("H^i(K ⊗ ∧ E) vanishes, ample E of rank {bundle_rank}"),
    ))
}

/// `[r² + r - 1, ∞)`: the Le Potier window shifted by the `(r-1)`-ampleness defect.
pub fn sommese_window(r: u32) -> Result<VanishingWindow> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("rank {r} < 2")));
    }
    let r = i64::from(r);
    Ok(VanishingWindow::from(
        r * r + r - 1,
        format!("H^i vanishes for the (r-1)-ample bundle of rank {}", r * r),
    ))
}

/// `(r² - 1)(g - 1) - i`.
pub fn serre_dual_degree(r: u32, g: u32, i: i64) -> i64 {
    moduli_dim(r, g, true) - i
}

/// The literal inequality `(r² - 1)(g - 1) >= 2(r² + r - 1)`.
///
/// The prose accompanying this inequality claims it holds for every `g >= 4`;
/// that is false for `r = 2, g = 4`. See [`full_vanishing_discrepancy`].
pub fn full_vanishing_condition(r: u32, g: u32) -> bool {
    let ri = i64::from(r);
    moduli_dim(r, g, true) >= 2 * (ri * ri + ri - 1)
}

/// Message when `g >= 4` but the full-vanishing inequality fails.
pub fn full_vanishing_discrepancy(r: u32, g: u32) -> Option<String> {
    if g >= 4 && !full_vanishing_condition(r, g) {
        let ri = i64::from(r);
        Some(format!(
            "(r^2-1)(g-1) = {} < {} = 2(r^2+r-1) at r={r}, g={g}, although the claim is \
             that the inequality holds for all g >= 4",
            moduli_dim(r, g, true),
            2 * (ri * ri + ri - 1)
        ))
    } else {
        None
    }
}

/// Dimension of the locus of bundles with a destabilising subbundle
/// splitting type governed by `a = gcd(r, m)`:
/// `(2 r_0² + r² - 2 r r_0 - 1)(g - 1) + 1` with `r_0 = r / a`.
///
/// Also evaluates `max_{1 <= c <= ⌊a/2⌋} r_0²(c² + (a - c)²)(g - 1) + 2 - g`
/// and requires agreement.
pub fn ss_locus_dim(r: u32, a: u32, g: u32) -> Result<i64> {
    if a < 2 || !r.is_multiple_of(a) {
        return Err(Error::BadGcd { rank: r, a });
    }
    let (ri, ai, gi) = (i64::from(r), i64::from(a), i64::from(g));
    let r0 = ri / ai;
    let closed = (2 * r0 * r0 + ri * ri - 2 * ri * r0 - 1) * (gi - 1) + 1;
    let max_form = (1..=ai / 2)
        .map(|c| r0 * r0 * (c * c + (ai - c) * (ai - c)) * (gi - 1) + 2 - gi)
        .max()
        .expect("a >= 2 gives a nonempty range");
    if closed != max_form {
        return Err(Error::InternalInconsistency(format!(
            "dim K: closed form {closed} != maximum {max_form} at r={r}, a={a}, g={g}"
        )));
    }
    Ok(closed)
}

/// Dimension of the projectivised Poincaré bundle, `(r² - 1)(g - 1) + (r - 1)`.
pub fn dim_q(r: u32, g: u32) -> i64 {
    moduli_dim(r, g, true) + i64::from(r) - 1
}

/// `2(r - 1)(g - 1) - 1`, checked against `dim Q - (dim K + (r - 1))`.
pub fn hecke_codim_bound(r: u32, g: u32) -> Result<i64> {
    if r < 2 || g < 2 {
        return Err(Error::InvalidParameter(format!(
            "need r, g >= 2, got r={r}, g={g}"
        )));
    }
    let (ri, gi) = (i64::from(r), i64::from(g));
    let closed = 2 * (ri - 1) * (gi - 1) - 1;
    let chain = dim_q(r, g) - (ss_locus_dim(r, r, g)? + (ri - 1));
    if closed != chain {
        return Err(Error::InternalInconsistency(format!(
            "codimension: closed form {closed} != dimension count {chain} at r={r}, g={g}"
        )));
    }
    Ok(closed)
}

/// `2rg - 2(r + g)`, one less than the codimension bound.
pub fn injectivity_bound(r: u32, g: u32) -> Result<i64> {
    let bound = hecke_codim_bound(r, g)? - 1;
    let direct = hecke_lhs(i64::from(r), i64::from(g));
    if bound != direct {
        return Err(Error::InternalInconsistency(format!(
            "injectivity bound {direct} != codimension - 1 = {bound}"
        )));
    }
    Ok(direct)
}

/// Checks that `min_genus_ff(r)` is the least `g >= 2` whose injectivity
/// bound reaches `lepotier_window(r²).lower - 1`.
pub fn check_min_genus_consistency(r: u32) -> Result<u32> {
    let g0 = min_genus_ff(r)?;
    let needed = lepotier_window(r * r)?.lower.expect("finite lower end") - 1;
    let mut first = None;
    for g in 2..=g0 {
        if injectivity_bound(r, g)? >= needed {
            first = Some(g);
            break;
        }
    }
    if first != Some(g0) {
        return Err(Error::InternalInconsistency(format!(
            "r={r}: min_genus_ff = {g0} but injectivity scan gives {first:?}"
        )));
    }
    Ok(g0)
}

/// Slope condition `re + n > rn(2g - 2)` for a generalised Picard bundle.
pub fn picard_slope_condition(n: u32, e: i64, r: u32, g: u32) -> bool {
    let (n, r, g) = (i64::from(n), i64::from(r), i64::from(g));
    r * e + n > r * n * (2 * g - 2)
}

/// Rank `re + n + rn(1 - g)`, defined only under the slope condition.
pub fn picard_bundle_rank(n: u32, e: i64, r: u32, g: u32) -> Result<i64> {
    if n < 1 || r < 2 || g < 2 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1, r >= 2, g >= 2, got n={n}, r={r}, g={g}"
        )));
    }
    if !picard_slope_condition(n, e, r, g) {
        return Err(Error::SlopeConditionViolated { n, e, r, g });
    }
    let (ni, ri, gi) = (i64::from(n), i64::from(r), i64::from(g));
    Ok(ri * e + ni + ri * ni * (1 - gi))
}

/// `n²(g - 1) + 1`.
pub fn deformation_dim(n: u32, g: u32) -> i64 {
    let (n, g) = (i64::from(n), i64::from(g));
    n * n * (g - 1) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub r: u32,
    pub g: u32,
    pub d: i64,
    pub ell: u32,
    pub g0: u32,
    /// `(j, g_j)` for `1 <= j <= r - 1`.
    pub gj: Vec<(u32, u32)>,
    pub moduli_dim_fixed: i64,
    pub moduli_dim_varying: i64,
    pub lepotier_from: i64,
    pub sommese_from: i64,
    pub codim_bound: i64,
    pub injectivity_bound: i64,
    #[serde(rename = "dimK")]
    pub dim_k: i64,
    #[serde(rename = "dimQ")]
    pub dim_q: i64,
    pub full_vanishing: bool,
    pub discrepancies: Vec<String>,
}

pub fn bounds_report(r: u32, d: i64, g: u32) -> Result<BoundsReport> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("rank {r} < 2")));
    }
    if g < 2 {
        return Err(Error::GenusTooSmall(g));
    }
    let gj = (1..r)
        .map(|j| min_genus_wedge(r, j).map(|v| (j, v)))
        .collect::<Result<_>>()?;
    let dq = dim_q(r, g);
    let report = BoundsReport {
        r,
        g,
        d,
        ell: normalization_ell(r, d)?,
        g0: check_min_genus_consistency(r)?,
        gj,
        moduli_dim_fixed: moduli_dim(r, g, true),
        moduli_dim_varying: moduli_dim(r, g, false),
        lepotier_from: lepotier_window(r * r)?.lower.expect("finite"),
        sommese_from: sommese_window(r)?.lower.expect("finite"),
        codim_bound: hecke_codim_bound(r, g)?,
        injectivity_bound: injectivity_bound(r, g)?,
        dim_k: ss_locus_dim(r, r, g)?,
        dim_q: dq,
        full_vanishing: full_vanishing_condition(r, g),
        discrepancies: full_vanishing_discrepancy(r, g).into_iter().collect(),
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(moduli_dim(2, 2, true), 3);
        assert_eq!(moduli_dim(2, 2, false), 5);
        assert_eq!(moduli_dim(1, 7, true), 0);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalization_ell(2, 1).unwrap(), 1);
        assert_eq!(normalization_ell(5, 2).unwrap(), 3);
        assert_eq!(normalization_ell(1, 4).unwrap(), 0);
        assert_eq!(normalization_ell(3, -1).unwrap(), 2);
        assert!(matches!(
            normalization_ell(4, 2),
            Err(Error::NonCoprime { .. })
        ));
    }

    /// Solves `(2r - 2) g >= r² - 1 + 2r` by exact ceiling division.
    fn min_genus_ff_by_division(r: i64) -> i64 {
        let num = r * r - 1 + 2 * r;
        let den = 2 * r - 2;
        Integer::div_ceil(&num, &den).max(2)
    }

    #[test]
    fn genus_thresholds() {
        assert_eq!(min_genus_ff(2).unwrap(), 4);
        assert_eq!(min_genus_ff(3).unwrap(), 4);
        // 6g - 8 >= 15 holds at g = 4.
        assert_eq!(min_genus_ff(4).unwrap(), 4);
        assert_eq!(min_genus_ff(5).unwrap(), 5);
        for r in 2..=12 {
            assert_eq!(
                i64::from(min_genus_ff(r).unwrap()),
                min_genus_ff_by_division(i64::from(r))
            );
        }
        assert!(min_genus_ff(1).is_err());
    }

    #[test]
    fn min_genus_ff_is_nondecreasing() {
        let v: Vec<u32> = (2..=12).map(|r| min_genus_ff(r).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[0] <= w[1]), "{v:?}");
    }

    #[test]
    fn wedge_thresholds() {
        assert_eq!(min_genus_wedge(2, 1).unwrap(), 3);
        assert_eq!(min_genus_wedge(4, 2).unwrap(), 3);
        assert!(matches!(min_genus_wedge(3, 3), Err(Error::BadIndex { .. })));
        assert!(matches!(min_genus_wedge(3, 0), Err(Error::BadIndex { .. })));
        for r in 2..=10 {
            for j in 1..r {
                assert_eq!(
                    min_genus_wedge(r, j).unwrap(),
                    min_genus_wedge(r, r - j).unwrap()
                );
            }
        }
    }

    #[test]
    fn windows() {
        let w = lepotier_window(4).unwrap();
        assert!(w.contains(4) && !w.contains(3));
        assert_eq!(lepotier_window(3).unwrap().lower, Some(3));
        assert_eq!(lepotier_window(1).unwrap().lower, Some(1));
        assert_eq!(sommese_window(2).unwrap().lower, Some(5));
        assert_eq!(sommese_window(3).unwrap().lower, Some(11));
        for r in 2..=8 {
            let s = sommese_window(r).unwrap().lower.unwrap();
            let l = lepotier_window(r * r).unwrap().lower.unwrap();
            assert_eq!(s, l + i64::from(r) - 1);
        }
    }

    #[test]
    fn serre_duality_degree() {
        assert_eq!(serre_dual_degree(2, 2, 0), 3);
        assert_eq!(serre_dual_degree(2, 4, 5), 4);
        for i in -3..20 {
            assert_eq!(serre_dual_degree(3, 5, serre_dual_degree(3, 5, i)), i);
        }
    }

    #[test]
    fn full_vanishing() {
        assert!(full_vanishing_condition(3, 4));
        assert!(!full_vanishing_condition(2, 4));
        assert!(full_vanishing_condition(2, 5));
        assert!(full_vanishing_discrepancy(2, 4).is_some());
        assert!(full_vanishing_discrepancy(3, 4).is_none());
        for r in 2..=8 {
            let v: Vec<bool> = (2..=20).map(|g| full_vanishing_condition(r, g)).collect();
            assert!(v.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn semistable_locus() {
        assert_eq!(ss_locus_dim(2, 2, 4).unwrap(), 4);
        assert_eq!(ss_locus_dim(4, 2, 2).unwrap(), 8);
        for r in 2..=8 {
            for g in 2..=10 {
                let ri = i64::from(r);
                assert_eq!(
                    ss_locus_dim(r, r, g).unwrap(),
                    (ri - 1) * (ri - 1) * (i64::from(g) - 1) + 1
                );
            }
        }
        assert!(matches!(ss_locus_dim(4, 3, 2), Err(Error::BadGcd { .. })));
        assert!(matches!(ss_locus_dim(4, 1, 2), Err(Error::BadGcd { .. })));
        assert!(ss_locus_dim(12, 6, 3).is_ok());
    }

    #[test]
    fn codimension_and_injectivity() {
        assert_eq!(hecke_codim_bound(2, 4).unwrap(), 5);
        assert_eq!(hecke_codim_bound(3, 4).unwrap(), 11);
        assert_eq!(hecke_codim_bound(2, 2).unwrap(), 1);
        assert_eq!(injectivity_bound(2, 4).unwrap(), 4);
        assert_eq!(injectivity_bound(2, 3).unwrap(), 2);
        for r in 2..=8 {
            let g0 = min_genus_ff(r).unwrap();
            assert!(injectivity_bound(r, g0).unwrap() >= i64::from(r * r - 1));
            assert_eq!(check_min_genus_consistency(r).unwrap(), g0);
        }
    }

    #[test]
    fn picard_bundles() {
        assert!(picard_slope_condition(1, 5, 2, 2));
        assert_eq!(picard_bundle_rank(1, 5, 2, 2).unwrap(), 9);
        assert!(!picard_slope_condition(1, 1, 2, 2));
        assert!(matches!(
            picard_bundle_rank(1, 1, 2, 2),
            Err(Error::SlopeConditionViolated { .. })
        ));
        for g in 2..10 {
            assert_eq!(deformation_dim(1, g), i64::from(g));
        }
    }

    #[test]
    fn report_for_rank_two() {
        let rep = bounds_report(2, 1, 4).unwrap();
        assert_eq!(rep.g0, 4);
        assert_eq!(rep.gj, vec![(1, 3)]);
        assert_eq!(rep.dim_q, 10);
        assert_eq!(rep.dim_q, 3 * 3 + 1);
        assert!(!rep.full_vanishing);
        assert_eq!(rep.discrepancies.len(), 1);
    }
}
