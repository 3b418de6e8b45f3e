//! Characteristic classes: arithmetic Chern classes of `𝒮_n`, Segre classes
//! of `Ē_n`, Todd and Chern-character expansions, and the torsion form of the
//! ruling.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Ambient, ChowClass, ChowError, Monomial};
use crate::constants::ExactConstant;
use crate::forms::{alpha_form, base_form, bott_chern_c2, c1_rel, c1_total, omega_fiber, RadialExpr};

fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `2ζ′(−1) + ζ(−1)`, the degree-one coefficient of the R-genus.
pub fn r_genus_coefficient() -> ExactConstant {
    ExactConstant::zeta_prime_m1().scale(&q(2, 1)) + ExactConstant::zeta_m1()
}

/// Arithmetic Chern classes of `𝒮_n` with the metric induced by `α_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticChernClasses {
    /// `ĉ₁(T_{𝒮_n/ℙ¹})`
    pub c1_rel: ChowClass,
    /// `ĉ₁(π*Tℙ¹)`
    pub c1_base: ChowClass,
    pub c1: ChowClass,
    pub c2: ChowClass,
}

pub fn arithmetic_chern_classes(n: u32) -> Result<ArithmeticChernClasses, ChowError> {
    let amb = Ambient::Surface(n);
    let k = n as i64;
    let log2pi = ExactConstant::log_two_pi();
    let l = RadialExpr::log_ratio(n);
    let x = ChowClass::x_hat(amb);
    let a = ChowClass::alpha_hat(n);

    let c1_rel_class = a
        .scale(&q(2, 1))
        .try_sub(&x.scale(&q(k + 2, 1)))?
        .try_add(&ChowClass::a_constant(amb, log2pi.clone()))?;
    // log of α_n|π*Tℙ¹ over 2π·π*ω
    let l_minus = &l - &RadialExpr::constant(n, log2pi.clone());
    let c1_base = x
        .scale(&q(2, 1))
        .try_sub(&ChowClass::a_function(amb, l_minus.clone()))?;
    let c1 = a
        .scale(&q(2, 1))
        .try_sub(&x.scale(&q(k, 1)))?
        .try_sub(&ChowClass::a_function(
            amb,
            &l - &RadialExpr::constant(n, log2pi.scale(&q(2, 1))),
        ))?;
    let xa = ChowClass::monomial(amb, Monomial::X_ALPHA, ExactConstant::int(4));
    let x2 = ChowClass::monomial(amb, Monomial { x: 2, alpha: 0 }, ExactConstant::int(-2 * (k + 2)));
    let eta = base_form(n).scale_exact(&log2pi.scale(&q(2, 1)))? - c1_rel(n).mul_function(&l_minus)? - bott_chern_c2(n);
    let c2 = xa.try_add(&x2)?.reduce()?.try_add(&ChowClass::a_form(n, eta))?;
    Ok(ArithmeticChernClasses {
        c1_rel: c1_rel_class,
        c1_base,
        c1,
        c2,
    })
}

/// `ĉ₁, ĉ₂` of `Ē_n = O(1) ⊕ O(n+1)` from `(1+x̂)(1+(n+1)x̂)`.
pub fn chern_classes_e(n: u32) -> Result<(ChowClass, ChowClass), ChowError> {
    let x = ChowClass::x_hat(Ambient::P1);
    let c1 = x.scale(&q(n as i64 + 2, 1));
    let c2 = x.mul(&x)?.scale(&q(n as i64 + 1, 1));
    Ok((c1, c2))
}

/// Segre forms and classes of `Ē_n` on `ℙ¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegreClasses {
    /// `S₁ = −π_*Ω`
    pub s1_form: ExactConstant,
    /// `S₂ = −π_*(Ω∧α_n)`, as a multiple of `x`
    pub s2_form: ExactConstant,
    pub s1: ChowClass,
    pub s2: ChowClass,
}

/// `ŝ′₁ = (n+2)x̂ − a(S₁)` and `ŝ′₂ = (n²+3n+3)x̂² − (n+2)a(x·S₁) − a(S₂)`.
pub fn segre_classes(n: u32) -> Result<SegreClasses, ChowError> {
    let p1 = Ambient::P1;
    let k = n as i64;
    let om = omega_fiber(n);
    let s1_form = -om.pushforward_fiber_exact()?;
    let s2_form = -om.wedge(&alpha_form(n))?.integrate_exact()?;
    let x = ChowClass::x_hat(p1);
    let s1 = x
        .scale(&q(k + 2, 1))
        .try_sub(&ChowClass::a_constant(p1, s1_form.clone()))?;
    let s2 = x
        .mul(&x)?
        .scale(&q(k * k + 3 * k + 3, 1))
        .try_sub(&ChowClass::a_top(p1, s1_form.scale(&q(k + 2, 1))))?
        .try_sub(&ChowClass::a_top(p1, s2_form.clone()))?;
    Ok(SegreClasses {
        s1_form,
        s2_form,
        s1,
        s2,
    })
}

/// `π̂_*(α̂^{m+1})`, the pushforward definition of the Segre classes.
pub fn segre_from_pushforward(n: u32, m: u32) -> Result<ChowClass, ChowError> {
    ChowClass::alpha_hat(n).pow_truncated(m + 1)?.pushforward()
}

/// Formal polynomial in `c₁, c₂` with rational coefficients; key `(i, j)`
/// stands for `c₁^i c₂^j` of weight `i + 2j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ChernPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl ChernPoly {
    pub fn term(i: u32, j: u32, c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(0, 0, c)
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigRational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            *out.terms.entry(*k).or_insert_with(BigRational::zero) += v;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    /// Product truncated above weight `max_weight`.
    pub fn mul(&self, other: &Self, max_weight: u32) -> Self {
        let mut out = Self::default();
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &other.terms {
                let (i, j) = (i1 + i2, j1 + j2);
                if i + 2 * j <= max_weight {
                    *out.terms.entry((i, j)).or_insert_with(BigRational::zero) += a * b;
                }
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    pub fn weight_part(&self, w: u32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + 2 * j == w)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    /// Evaluation on arithmetic classes, truncated at the top degree.
    pub fn evaluate(&self, c1: &ChowClass, c2: &ChowClass) -> Result<ChowClass, ChowError> {
        let mut out = ChowClass::zero(c1.ambient());
        for ((i, j), v) in &self.terms {
            let t = c1.pow_truncated(*i)?.mul_truncated(&c2.pow_truncated(*j)?)?;
            out = out.try_add(&t.scale(v))?;
        }
        Ok(out)
    }
}

/// `Td = 1 + c₁/2 + (c₁² + c₂)/12 + c₁c₂/24` of a rank-two bundle.
pub fn todd_surface() -> ChernPoly {
    ChernPoly::constant(BigRational::one())
        .add(&ChernPoly::term(1, 0, q(1, 2)))
        .add(&ChernPoly::term(2, 0, q(1, 12)))
        .add(&ChernPoly::term(0, 1, q(1, 12)))
        .add(&ChernPoly::term(1, 1, q(1, 24)))
}

/// `Td = 1 + c₁/2 + c₁²/12` of a line bundle.
pub fn todd_line() -> ChernPoly {
    ChernPoly::constant(BigRational::one())
        .add(&ChernPoly::term(1, 0, q(1, 2)))
        .add(&ChernPoly::term(2, 0, q(1, 12)))
}

/// `ch(Ω^p)` of a surface in terms of `c₁, c₂` of its tangent bundle,
/// through weight 3.
pub fn ch_omega(p: u32) -> ChernPoly {
    let t = |i, j, a, b| ChernPoly::term(i, j, q(a, b));
    match p {
        0 => ChernPoly::constant(BigRational::one()),
        1 => t(0, 0, 2, 1)
            .add(&t(1, 0, -1, 1))
            .add(&t(2, 0, 1, 2))
            .add(&t(0, 1, -1, 1))
            .add(&t(3, 0, -1, 6))
            .add(&t(1, 1, 1, 2)),
        2 => t(0, 0, 1, 1)
            .add(&t(1, 0, -1, 1))
            .add(&t(2, 0, 1, 2))
            .add(&t(3, 0, -1, 6)),
        _ => panic!("Ω^{p} vanishes on a surface"),
    }
}

/// Coefficient `k` with `[Td·ch(Ω^p)]₃ = k·c₁c₂`; a surviving `c₁³` term is
/// reported since its pushforward would need `log(R)²` integrals.
pub fn rr_selection(p: u32) -> Result<BigRational, ChowError> {
    let sel = todd_surface().mul(&ch_omega(p), 3).weight_part(3);
    if !sel.coeff(3, 0).is_zero() {
        return Err(ChowError::Forms(crate::forms::FormsError::NonLinear(format!(
            "[Td ch(Ω^{p})]_3 contains c1^3"
        ))));
    }
    Ok(sel.coeff(1, 1))
}

/// Coefficient of `c₁` in `[Td·ch(Ω^p)]₁`, which multiplies the R-genus term.
pub fn r_genus_weight(p: u32) -> BigRational {
    todd_surface().mul(&ch_omega(p), 1).coeff(1, 0)
}

/// `∫_{S_n} c₁(TS_n, α_n)²`.
pub fn c1_squared_integral(n: u32) -> Result<ExactConstant, ChowError> {
    Ok(c1_total(n).wedge(&c1_total(n))?.integrate_exact()?)
}

/// `d̂eg F̂_*(ĉ₁ĉ₂)` from the product of the arithmetic Chern classes.
pub fn c1c2_pushforward(n: u32) -> Result<ExactConstant, ChowError> {
    let c = arithmetic_chern_classes(n)?;
    c.c1.mul(&c.c2)?.pushforward_deg()
}

/// `d̂eg` of the polynomial part `8α̂²x̂ − 8(n+1)α̂x̂²` of `ĉ₁ĉ₂`.
pub fn c1c2_polynomial_part(n: u32) -> Result<ExactConstant, ChowError> {
    let amb = Ambient::Surface(n);
    let a = ChowClass::monomial(amb, Monomial { x: 1, alpha: 2 }, ExactConstant::int(8));
    let b = ChowClass::monomial(
        amb,
        Monomial { x: 2, alpha: 1 },
        ExactConstant::int(-8 * (n as i64 + 1)),
    );
    a.try_add(&b)?.pushforward_deg()
}

/// Torsion form of the ruling, split by degree on `ℙ¹`.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionForm {
    /// `π̂_*(T̂d(T̄_rel))`
    pub todd_pushforward: ChowClass,
    /// degree-0 value of `π_*(Td·R)`
    pub r_contribution: ExactConstant,
    /// degree-0 part of the torsion form
    pub degree0: ExactConstant,
    /// integral of the (1,1) part on `ℙ¹`
    pub degree2: ExactConstant,
}

/// `a(Tors) = π̂_*(T̂d(T̄_rel)) − π̂_*(T̂d(T̄_rel)·a(R(T_rel))) − 1`.
pub fn torsion_form(n: u32) -> Result<TorsionForm, ChowError> {
    let amb = Ambient::Surface(n);
    let c1 = arithmetic_chern_classes(n)?.c1_rel;
    let td = todd_line().evaluate(&c1, &ChowClass::zero(amb))?;
    let push = td.pushforward()?;
    let r_form = c1_rel(n).scale_exact(&r_genus_coefficient())?;
    let push_r = td.mul_truncated(&ChowClass::a_form(n, r_form))?.pushforward()?;
    let tors = push.try_sub(&push_r)?.try_sub(&ChowClass::one(Ambient::P1))?;
    if tors.poly().next().is_some() {
        return Err(ChowError::InconsistentTorsion(format!("non-analytic torsion {tors}")));
    }
    let degree0 = tors.func().as_constant().expect("constants on P1");
    let degree2 = tors.top().clone();
    if !degree2.is_zero() {
        return Err(ChowError::InconsistentTorsion(format!("degree two part {degree2}")));
    }
    Ok(TorsionForm {
        r_contribution: push_r.func().as_constant().expect("constants on P1"),
        todd_pushforward: push,
        degree0,
        degree2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chern_class_polynomial_parts() {
        for n in 0..5u32 {
            let k = n as i64;
            let c = arithmetic_chern_classes(n).unwrap();
            assert_eq!(c.c1.coeff(Monomial::ALPHA), ExactConstant::int(2));
            assert_eq!(c.c1.coeff(Monomial::X), ExactConstant::int(-k));
            assert_eq!(c.c2.coeff(Monomial::X_ALPHA), ExactConstant::int(4));
            // −2(n+2)x̂² is reduced into −2(n+2)a(x)
            assert_eq!(c.c1_rel.coeff(Monomial::X), ExactConstant::int(-(k + 2)));
            assert_eq!(c.c1, c.c1_rel.try_add(&c.c1_base).unwrap());
        }
    }

    #[test]
    fn curvature_of_c1_is_c1_form() {
        for n in 1..4u32 {
            let c = arithmetic_chern_classes(n).unwrap();
            let (_, f11, _) = c.c1.curvature().unwrap();
            assert_eq!(f11, c1_total(n));
        }
    }

    #[test]
    fn bundle_e_classes() {
        let (c1, c2) = chern_classes_e(3).unwrap();
        assert_eq!(c1, ChowClass::x_hat(Ambient::P1).scale(&q(5, 1)));
        assert_eq!(c2, ChowClass::a_top(Ambient::P1, ExactConstant::int(4)));
    }

    #[test]
    fn segre_values() {
        for n in 0..10u32 {
            let k = n as i64;
            let s = segre_classes(n).unwrap();
            assert_eq!(s.s1_form, ExactConstant::int(-1));
            assert_eq!(s.s2_form, ExactConstant::rational(q(-(k + 2), 2)));
            let expect = ExactConstant::rational(q(2 * k * k + 9 * k + 12, 2));
            assert_eq!(s.s2, ChowClass::a_top(Ambient::P1, expect.clone()));
            assert_eq!(segre_from_pushforward(n, 2).unwrap(), s.s2);
            assert_eq!(segre_from_pushforward(n, 1).unwrap(), s.s1);
        }
    }

    #[test]
    fn formal_selections() {
        assert_eq!(rr_selection(0).unwrap(), q(1, 24));
        assert_eq!(rr_selection(1).unwrap(), q(0, 1));
        assert_eq!(rr_selection(2).unwrap(), q(-1, 24));
        assert_eq!(r_genus_weight(0), q(1, 2));
        assert_eq!(r_genus_weight(1), q(0, 1));
        assert_eq!(r_genus_weight(2), q(-1, 2));
    }

    #[test]
    fn c1c2_values() {
        for n in 0..6u32 {
            let k = n as i64;
            assert_eq!(c1_squared_integral(n).unwrap(), ExactConstant::int(8));
            assert_eq!(c1c2_polynomial_part(n).unwrap(), ExactConstant::int(8));
            let l = ExactConstant::log_int(n as u64 + 1).unwrap();
            let expect =
                (l.scale(&q(k, 1)) + ExactConstant::int(16 - 4 * k) + ExactConstant::log_two_pi().scale(&q(16, 1)))
                    .scale(&q(1, 2));
            assert_eq!(c1c2_pushforward(n).unwrap(), expect, "n = {n}");
        }
    }

    #[test]
    fn torsion_form_is_tau_p1() {
        let tau = (ExactConstant::one() + ExactConstant::log_two_pi()).scale(&q(1, 3))
            - ExactConstant::zeta_prime_m1().scale(&q(4, 1))
            - ExactConstant::zeta_m1().scale(&q(2, 1));
        for n in 0..5u32 {
            let t = torsion_form(n).unwrap();
            assert_eq!(t.degree0, tau);
            assert!(t.degree2.is_zero());
            assert_eq!(t.r_contribution, r_genus_coefficient().scale(&q(2, 1)));
            let expect = ChowClass::one(Ambient::P1)
                .try_add(&ChowClass::a_constant(
                    Ambient::P1,
                    (ExactConstant::one() + ExactConstant::log_two_pi()).scale(&q(1, 3)),
                ))
                .unwrap();
            assert_eq!(t.todd_pushforward, expect);
        }
    }
}
