//! Künneth-truncated Chern character calculus on `C × M`.
//!
//! Classes on the moduli side are polynomials in the generators `θ = c_1(Θ)`,
//! `a = c_1(W_x)` and `ν_M`, truncated above complex degree 2. A class on
//! `C × M` is written `base + fiber · f` where `f` is the point class of the
//! curve, so `f² = 0` holds by construction. Pushing forward along the curve
//! extracts the `f`-coefficient.
//!
//! Only the even Künneth components are modelled: terms in `H¹(C) ⊗ H^odd(M)`
//! push forward to odd-degree classes on `M` and never reach `c_1` of a
//! determinant line bundle.
//!
//! The Poincaré bundle is `W = (r, a + d f, ν_M + ν_f f)`, where the fiber part
//! `ν_f` of `N_2(W) = c_1² - 2c_2` is an unknown. It is solved for by imposing
//! `c_1(det R p_* ad W) = -2θ`, the canonical class of the moduli space.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::normalization_ell;
use crate::composition::Rational;
use crate::error::{Error, Result};
use crate::hodge::ModuliParams;

/// Generators of the moduli-side ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MSymbol {
    /// `c_1(Θ)`.
    Theta,
    /// `c_1(W_x)`.
    A,
    /// Moduli-side Künneth component of `N_2(W)`; inert.
    NuM,
    /// Fiber-side Künneth component of `N_2(W)`; the unknown to solve for.
    NuF,
}

impl MSymbol {
    pub const ALL: [MSymbol; 4] = [MSymbol::Theta, MSymbol::A, MSymbol::NuM, MSymbol::NuF];

    pub fn degree(self) -> u32 {
        match self {
            MSymbol::NuM => 2,
            _ => 1,
        }
    }

    fn index(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            MSymbol::Theta => "θ",
            MSymbol::A => "a",
            MSymbol::NuM => "ν_M",
            MSymbol::NuF => "ν_f",
        }
    }
}

const MAX_DEGREE: u32 = 2;

/// Exponent vector indexed by [`MSymbol`].
type Monomial = [u8; 4];

fn monomial_degree(m: &Monomial) -> u32 {
    MSymbol::ALL
        .iter()
        .map(|s| u32::from(m[s.index()]) * s.degree())
        .sum()
}

/// Polynomial in [`MSymbol`]s with rational coefficients, truncated above degree 2.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct MClass {
    terms: BTreeMap<Monomial, Rational>,
}

impl MClass {
    pub fn zero() -> Self {
        MClass::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut m = MClass::zero();
        m.add_term([0; 4], c);
        m
    }

    pub fn integer(c: i64) -> Self {
        Self::constant(Rational::from_integer(c))
    }

    pub fn symbol(s: MSymbol) -> Self {
        let mut mono = [0; 4];
        mono[s.index()] = 1;
        let mut m = MClass::zero();
        m.add_term(mono, Rational::one());
        m
    }

    fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() || monomial_degree(&mono) > MAX_DEGREE {
            return;
        }
        let e = self.terms.entry(mono).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &MClass) -> MClass {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, *c);
        }
        out
    }

    pub fn sub(&self, other: &MClass) -> MClass {
        self.add(&other.scale(-Rational::one()))
    }

    pub fn scale(&self, k: Rational) -> MClass {
        let mut out = MClass::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, *c * k);
        }
        out
    }

    pub fn mul(&self, other: &MClass) -> MClass {
        let mut out = MClass::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mut m = [0u8; 4];
                for k in 0..4 {
                    m[k] = m1[k] + m2[k];
                }
                out.add_term(m, *c1 * *c2);
            }
        }
        out
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u32) -> MClass {
        MClass {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| monomial_degree(m) == degree)
                .map(|(m, c)| (*m, *c))
                .collect(),
        }
    }

    /// Coefficient of a single generator (the linear monomial `s`).
    pub fn linear_coeff(&self, s: MSymbol) -> Rational {
        let mut mono = [0; 4];
        mono[s.index()] = 1;
        self.terms
            .get(&mono)
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    pub fn involves(&self, s: MSymbol) -> bool {
        self.terms.keys().any(|m| m[s.index()] > 0)
    }

    /// Replaces `s` by `value` everywhere.
    pub fn substitute(&self, s: MSymbol, value: &MClass) -> MClass {
        let mut out = MClass::zero();
        for (m, c) in &self.terms {
            let mut rest = *m;
            let power = rest[s.index()];
            rest[s.index()] = 0;
            let mut term = MClass::zero();
            term.add_term(rest, *c);
            for _ in 0..power {
                term = term.mul(value);
            }
            out = out.add(&term);
        }
        out
    }
}

impl fmt::Display for MClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let abs = c.abs();
            let is_const = m.iter().all(|&e| e == 0);
            if is_const || !abs.is_one() {
                write!(f, "{abs}")?;
                if !is_const {
                    write!(f, "·")?;
                }
            }
            let mut first = true;
            for s in MSymbol::ALL {
                let e = m[s.index()];
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "·")?;
                }
                first = false;
                write!(f, "{}", s.name())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MClass({self})")
    }
}

impl Serialize for MClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `base ⊗ 1 + fiber ⊗ f` on `C × M`, truncated above total degree 2.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KClass {
    pub base: MClass,
    pub fiber: MClass,
}

impl KClass {
    pub fn new(base: MClass, fiber: MClass) -> Self {
        KClass {
            base: base
                .component(0)
                .add(&base.component(1))
                .add(&base.component(2)),
            fiber: fiber.component(0).add(&fiber.component(1)),
        }
    }

    pub fn zero() -> Self {
        KClass::default()
    }

    pub fn from_base(base: MClass) -> Self {
        KClass::new(base, MClass::zero())
    }

    /// `c · f`.
    pub fn point(c: Rational) -> Self {
        KClass::new(MClass::zero(), MClass::constant(c))
    }

    pub fn add(&self, o: &KClass) -> KClass {
        KClass::new(self.base.add(&o.base), self.fiber.add(&o.fiber))
    }

    pub fn scale(&self, k: Rational) -> KClass {
        KClass::new(self.base.scale(k), self.fiber.scale(k))
    }

    pub fn neg(&self) -> KClass {
        self.scale(-Rational::one())
    }

    /// Product with `f² = 0`.
    pub fn mul(&self, o: &KClass) -> KClass {
        KClass::new(
            self.base.mul(&o.base),
            self.base.mul(&o.fiber).add(&self.fiber.mul(&o.base)),
        )
    }

    /// Total-degree component: `base` in degree `k`, `fiber` in degree `k - 1`.
    pub fn component(&self, k: u32) -> KClass {
        let fiber = if k == 0 {
            MClass::zero()
        } else {
            self.fiber.component(k - 1)
        };
        KClass::new(self.base.component(k), fiber)
    }

    /// Integration over the curve: the `f`-coefficient.
    pub fn push_forward(&self) -> MClass {
        self.fiber.clone()
    }

    pub fn substitute(&self, s: MSymbol, value: &MClass) -> KClass {
        KClass::new(
            self.base.substitute(s, value),
            self.fiber.substitute(s, value),
        )
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})·f", self.base, self.fiber)
    }
}

/// Rank, `c_1` and `N_2 = c_1² - 2c_2` of a sheaf on `C × M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernData {
    pub rank: i64,
    pub c1: KClass,
    pub n2: KClass,
}

impl ChernData {
    pub fn trivial_line() -> Self {
        ChernData {
            rank: 1,
            c1: KClass::zero(),
            n2: KClass::zero(),
        }
    }

    /// The normalised Poincaré bundle `(r, a + d f, ν_M + ν_f f)` with `ν_f` unknown.
    pub fn poincare(r: u32, d: i64) -> Self {
        ChernData {
            rank: i64::from(r),
            c1: KClass::new(MClass::symbol(MSymbol::A), MClass::integer(d)),
            n2: KClass::new(MClass::symbol(MSymbol::NuM), MClass::symbol(MSymbol::NuF)),
        }
    }

    /// Chern character `rank + c_1 + N_2 / 2`.
    pub fn chern_character(&self) -> KClass {
        KClass::from_base(MClass::integer(self.rank))
            .add(&self.c1)
            .add(&self.n2.scale(Rational::new(1, 2)))
    }

    /// Direct sum.
    pub fn direct_sum(&self, o: &ChernData) -> ChernData {
        ChernData {
            rank: self.rank + o.rank,
            c1: self.c1.add(&o.c1),
            n2: self.n2.add(&o.n2),
        }
    }
}

/// Odd Chern character components change sign; `N_2` is self-dual.
pub fn cd_dual(e: &ChernData) -> ChernData {
    ChernData {
        rank: e.rank,
        c1: e.c1.neg(),
        n2: e.n2.clone(),
    }
}

pub fn cd_tensor(e1: &ChernData, e2: &ChernData) -> ChernData {
    let r1 = Rational::from_integer(e1.rank);
    let r2 = Rational::from_integer(e2.rank);
    ChernData {
        rank: e1.rank * e2.rank,
        c1: e1.c1.scale(r2).add(&e2.c1.scale(r1)),
        n2: e1
            .n2
            .scale(r2)
            .add(&e2.n2.scale(r1))
            .add(&e1.c1.mul(&e2.c1).scale(Rational::from_integer(2))),
    }
}

/// `Todd(C) = 1 + c_1(T_C)/2 = 1 + (1 - g) f`.
pub fn todd_curve(g: u32) -> KClass {
    KClass::from_base(MClass::integer(1))
        .add(&KClass::point(Rational::from_integer(1 - i64::from(g))))
}

/// `c_1(R p_{2*} E) = p_{2*}((ch(E) · Todd(C))_{deg 2})`.
pub fn grr_push(e: &ChernData, g: u32) -> MClass {
    e.chern_character()
        .mul(&todd_curve(g))
        .component(2)
        .push_forward()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LemmaEquality {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    /// Solved fiber part `p_*(N_2(W))`.
    pub nu_fiber: MClass,
    /// `(-2θ + 2d·a) / r`.
    pub expected: MClass,
    pub check: bool,
}

/// Solves `c_1(det R p_* ad W) = -2θ` for `ν_f` and compares with
/// `r · p_*(N_2(W)) = -2θ + 2d·a`.
pub fn verify_lemma_equality(r: u32, d: i64, g: u32) -> Result<LemmaEquality> {
    ModuliParams::fixed(r, d, g)?;
    let w = ChernData::poincare(r, d);
    let end = cd_tensor(&w, &cd_dual(&w));
    let ad_push = grr_push(&end, g).sub(&grr_push(&ChernData::trivial_line(), g));
    if !ad_push.component(0).is_zero() || !ad_push.component(2).is_zero() {
        return Err(Error::SolveFailure(format!(
            "pushforward {ad_push} is not of pure degree 1"
        )));
    }
    let coeff = ad_push.linear_coeff(MSymbol::NuF);
    if coeff.is_zero() {
        return Err(Error::SolveFailure(format!("ν_f drops out of {ad_push}")));
    }
    let rest = ad_push.sub(&MClass::symbol(MSymbol::NuF).scale(coeff));
    let target = MClass::symbol(MSymbol::Theta).scale(Rational::from_integer(-2));
    let nu_fiber = target.sub(&rest).scale(coeff.recip());

    let expected = target
        .add(&MClass::symbol(MSymbol::A).scale(Rational::from_integer(2 * d)))
        .scale(Rational::new(1, i64::from(r)));
    Ok(LemmaEquality {
        rank: r,
        degree: d,
        genus: g,
        check: nu_fiber == expected,
        nu_fiber,
        expected,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetExponent {
    pub rank: u32,
    pub degree: i64,
    pub genus: u32,
    pub ell: u32,
    /// `c_1(det R p_* W^∨)` in terms of `θ` and `a`.
    pub c1_det_dual: MClass,
    /// Coefficient of `θ` in `c_1((det R p_* W^∨)^∨)` after `a = ℓθ`.
    #[serde(serialize_with = "ser_rational")]
    pub exponent: Rational,
    /// `(1 - ℓd)/r + ℓ(1 - g)`.
    #[serde(serialize_with = "ser_rational")]
    pub closed_form: Rational,
    pub lemma: LemmaEquality,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn det_cohomology_exponent(r: u32, d: i64, g: u32) -> Result<DetExponent> {
    let lemma = verify_lemma_equality(r, d, g)?;
    let ell = normalization_ell(r, d)?;
    let w = ChernData::poincare(r, d);
    let c1_det_dual = grr_push(&cd_dual(&w), g).substitute(MSymbol::NuF, &lemma.nu_fiber);
    let normalized = c1_det_dual
        .substitute(
            MSymbol::A,
            &MClass::symbol(MSymbol::Theta).scale(Rational::from_integer(i64::from(ell))),
        )
        .scale(-Rational::one());
    let exponent = normalized.linear_coeff(MSymbol::Theta);
    let leftover = normalized.sub(&MClass::symbol(MSymbol::Theta).scale(exponent));
    if !leftover.is_zero() {
        return Err(Error::AssertionFailure(format!(
            "determinant class {normalized} is not a multiple of θ"
        )));
    }
    let (ri, li, gi) = (i64::from(r), i64::from(ell), i64::from(g));
    let closed_form = Rational::new(1 - li * d, ri) + Rational::from_integer(li * (1 - gi));
    if exponent != closed_form {
        return Err(Error::AssertionFailure(format!(
            "θ-exponent {exponent} != (1-ℓd)/r + ℓ(1-g) = {closed_form}"
        )));
    }
    Ok(DetExponent {
        rank: r,
        degree: d,
        genus: g,
        ell,
        c1_det_dual,
        exponent,
        closed_form,
        lemma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn sym(s: MSymbol) -> MClass {
        MClass::symbol(s)
    }

    fn theta() -> MClass {
        sym(MSymbol::Theta)
    }

    fn a() -> MClass {
        sym(MSymbol::A)
    }

    #[test]
    fn degree_truncation() {
        let a2 = a().mul(&a());
        assert!(!a2.is_zero());
        assert!(a2.mul(&a()).is_zero());
        assert!(sym(MSymbol::NuM).mul(&theta()).is_zero());
    }

    #[test]
    fn dual_rules() {
        let w = ChernData::poincare(3, 2);
        let dual = cd_dual(&w);
        assert_eq!(
            dual.c1,
            KClass::new(a().scale(q(-1, 1)), MClass::integer(-2))
        );
        assert_eq!(dual.n2, w.n2);
        assert_eq!(cd_dual(&dual), w);
        assert_eq!(w.c1.add(&dual.c1), KClass::zero());
    }

    #[test]
    fn tensor_with_trivial_line() {
        let w = ChernData::poincare(4, 1);
        assert_eq!(cd_tensor(&w, &ChernData::trivial_line()), w);
    }

    #[test]
    fn endomorphism_bundle() {
        let (r, d) = (3u32, 2i64);
        let w = ChernData::poincare(r, d);
        let end = cd_tensor(&w, &cd_dual(&w));
        assert_eq!(end.rank, 9);
        assert_eq!(end.c1, KClass::zero());
        let ri = i64::from(r);
        let expected = KClass::new(
            sym(MSymbol::NuM)
                .scale(q(2 * ri, 1))
                .sub(&a().mul(&a()).scale(q(2, 1))),
            sym(MSymbol::NuF)
                .scale(q(2 * ri, 1))
                .sub(&a().scale(q(4 * d, 1))),
        );
        assert_eq!(end.n2, expected);
        // r N_2(W) - c_1(W)^2, doubled.
        let alt =
            w.n2.scale(q(ri, 1))
                .add(&w.c1.mul(&w.c1).neg())
                .scale(q(2, 1));
        assert_eq!(end.n2, alt);
    }

    #[test]
    fn todd_class() {
        assert_eq!(todd_curve(1), KClass::from_base(MClass::integer(1)));
        assert_eq!(
            todd_curve(0),
            KClass::new(MClass::integer(1), MClass::integer(1))
        );
        assert_eq!(
            todd_curve(2),
            KClass::new(MClass::integer(1), MClass::integer(-1))
        );
    }

    #[test]
    fn pushforwards() {
        for g in 0..6 {
            assert!(grr_push(&ChernData::trivial_line(), g).is_zero());
        }
        let (r, d, g) = (3u32, 1i64, 4u32);
        let w = ChernData::poincare(r, d);
        let pushed = grr_push(&cd_dual(&w), g);
        let expected = a()
            .scale(q(i64::from(g) - 1, 1))
            .add(&sym(MSymbol::NuF).scale(q(1, 2)));
        assert_eq!(pushed, expected);

        let w2 = ChernData::poincare(2, 1);
        assert_eq!(
            grr_push(&w.direct_sum(&w2), g),
            grr_push(&w, g).add(&grr_push(&w2, g))
        );
    }

    #[test]
    fn lemma_examples() {
        let l = verify_lemma_equality(2, 1, 3).unwrap();
        assert_eq!(l.nu_fiber, theta().scale(q(-1, 1)).add(&a()));
        assert!(l.check);
        let l = verify_lemma_equality(3, 1, 2).unwrap();
        assert_eq!(l.nu_fiber, theta().scale(q(-2, 3)).add(&a().scale(q(2, 3))));
        assert!(matches!(
            verify_lemma_equality(2, 2, 3),
            Err(Error::NonCoprime { .. })
        ));
    }

    #[test]
    fn exponent_examples() {
        assert_eq!(det_cohomology_exponent(2, 1, 2).unwrap().exponent, q(-1, 1));
        assert_eq!(det_cohomology_exponent(3, 1, 4).unwrap().exponent, q(-3, 1));
        let e = det_cohomology_exponent(5, 2, 2).unwrap();
        assert_eq!(e.ell, 3);
        assert_eq!(e.exponent, q(-4, 1));
        // (g-1) a + (-θ + d a)/r before normalisation.
        let expected = a()
            .scale(q(1, 1))
            .add(&theta().scale(q(-1, 5)))
            .add(&a().scale(q(2, 5)));
        assert_eq!(e.c1_det_dual, expected);
    }

    #[test]
    fn display() {
        let m = theta().scale(q(-2, 3)).add(&a().mul(&a()));
        assert_eq!(m.to_string(), "a^2 - 2/3·θ");
    }

    fn arb_mclass(max_deg: u32) -> impl Strategy<Value = MClass> {
        prop::collection::vec(
            (0u8..=2, 0u8..=2, 0u8..=1, 0u8..=1, -6i64..=6, 1i64..=4),
            0..5,
        )
        .prop_map(move |ts| {
            let mut m = MClass::zero();
            for (t, a, nm, nf, n, d) in ts {
                let mono = [t, a, nm, nf];
                if monomial_degree(&mono) <= max_deg {
                    m.add_term(mono, Rational::new(n, d));
                }
            }
            m
        })
    }

    fn arb_kclass() -> impl Strategy<Value = KClass> {
        (arb_mclass(2), arb_mclass(1)).prop_map(|(b, f)| KClass::new(b, f))
    }

    fn arb_chern() -> impl Strategy<Value = ChernData> {
        (1i64..6, arb_mclass(1), arb_mclass(0), arb_kclass()).prop_map(|(rank, b, f, n2)| {
            ChernData {
                rank,
                c1: KClass::new(b.component(1), f.component(0)),
                n2: n2.component(2),
            }
        })
    }

    proptest! {
        #[test]
        fn kclass_products_are_associative(x in arb_kclass(), y in arb_kclass(), z in arb_kclass()) {
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
        }

        #[test]
        fn point_class_squares_to_zero(x in arb_mclass(1), y in arb_mclass(1)) {
            let fx = KClass::new(MClass::zero(), x);
            let fy = KClass::new(MClass::zero(), y);
            prop_assert_eq!(fx.mul(&fy), KClass::zero());
        }

        #[test]
        fn tensor_laws(e1 in arb_chern(), e2 in arb_chern(), e3 in arb_chern()) {
            prop_assert_eq!(cd_tensor(&e1, &e2), cd_tensor(&e2, &e1));
            prop_assert_eq!(
                cd_tensor(&cd_tensor(&e1, &e2), &e3),
                cd_tensor(&e1, &cd_tensor(&e2, &e3))
            );
            let dual_of_product = cd_dual(&cd_tensor(&e1, &e2));
            let product_of_duals = cd_tensor(&cd_dual(&e1), &cd_dual(&e2));
            prop_assert_eq!(dual_of_product.c1, product_of_duals.c1);
            prop_assert_eq!(dual_of_product.n2, product_of_duals.n2);
        }

        #[test]
        fn tensor_matches_chern_character_product(e1 in arb_chern(), e2 in arb_chern()) {
            let lhs = cd_tensor(&e1, &e2).chern_character();
            let rhs = e1.chern_character().mul(&e2.chern_character());
            prop_assert_eq!(lhs.component(0), rhs.component(0));
            prop_assert_eq!(lhs.component(1), rhs.component(1));
            prop_assert_eq!(lhs.component(2), rhs.component(2));
        }
    }
}
