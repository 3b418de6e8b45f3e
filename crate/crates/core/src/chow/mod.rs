//! Arithmetic Chow classes on `𝒮_n` and on `ℙ¹_ℤ`.
//!
//! A class is a polynomial in `x̂`, `α̂` plus analytic parts `a(η)`: a radial
//! function (degree 1), an invariant (1,1)-form (degree 2) and a top-degree
//! part kept as the exact integral of its form. Monomials are reduced with
//! `x̂² = a(x)` and `α̂² = (n+2)x̂α̂ + a(α − (n+1)x − R·x)`, so only
//! `1, x̂, α̂, x̂α̂` survive. Products with analytic parts use
//! `a(η)·ĉ = a(η∧ω(ĉ))`.

pub mod classes;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::constants::{ConstantsError, ExactConstant};
use crate::forms::{alpha_form, base_form, ddc_function, Form11, Form22, FormsError, RadialExpr};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChowError {
    #[error("product of degree {degree} exceeds the dimension {top}")]
    DegreeOverflow { degree: u32, top: u32 },
    #[error("classes on different ambients: {0} and {1}")]
    AmbientMismatch(Ambient, Ambient),
    #[error("generator {0} does not exist on {1}")]
    InvalidGenerator(&'static str, Ambient),
    #[error("class is not purely analytic of top degree: {0}")]
    IncompleteReduction(String),
    #[error("inconsistent torsion: {0}")]
    InconsistentTorsion(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Ambient {
    /// `ℙ¹_ℤ`, arithmetic dimension 2
    P1,
    /// `𝒮_n`, arithmetic dimension 3
    Surface(u32),
}

impl Ambient {
    pub fn top_degree(&self) -> u32 {
        match self {
            Ambient::P1 => 2,
            Ambient::Surface(_) => 3,
        }
    }

    /// Ruling index used for radial coefficients; `ℙ¹` carries constants only.
    fn n(&self) -> u32 {
        match self {
            Ambient::P1 => 0,
            Ambient::Surface(n) => *n,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::P1 => f.write_str("P1"),
            Ambient::Surface(n) => write!(f, "S_{n}"),
        }
    }
}

/// `x̂^x · α̂^alpha`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub x: u32,
    pub alpha: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, alpha: 0 };
    pub const X: Monomial = Monomial { x: 1, alpha: 0 };
    pub const ALPHA: Monomial = Monomial { x: 0, alpha: 1 };
    pub const X_ALPHA: Monomial = Monomial { x: 1, alpha: 1 };

    pub fn degree(&self) -> u32 {
        self.x + self.alpha
    }

    fn is_reduced(&self) -> bool {
        self.x <= 1 && self.alpha <= 1
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pw = |s: &str, k: u32| match k {
            0 => String::new(),
            1 => s.to_string(),
            _ => format!("{s}^{k}"),
        };
        let s = format!("{}{}", pw("x̂", self.x), pw("α̂", self.alpha));
        f.write_str(if s.is_empty() { "1" } else { &s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Generator {
    X,
    Alpha,
}

/// One rewrite applied during reduction or multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub before: String,
    pub after: String,
}

/// Graded element of the arithmetic Chow ring.
#[derive(Debug, Clone, PartialEq)]
pub struct ChowClass {
    ambient: Ambient,
    poly: BTreeMap<Monomial, ExactConstant>,
    /// `a(f)`, degree 1
    func: RadialExpr,
    /// `a(η)`, degree 2 (surface only)
    form: Form11,
    /// `a(ω_top)` recorded as `∫ ω_top`
    top: ExactConstant,
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl ChowClass {
    pub fn zero(ambient: Ambient) -> Self {
        let n = ambient.n();
        Self {
            ambient,
            poly: BTreeMap::new(),
            func: RadialExpr::zero(n),
            form: Form11::zero(n),
            top: ExactConstant::zero(),
        }
    }

    pub fn one(ambient: Ambient) -> Self {
        Self::monomial(ambient, Monomial::ONE, ExactConstant::one())
    }

    /// A possibly unreduced monomial `coeff·x̂^i α̂^j`.
    pub fn monomial(ambient: Ambient, m: Monomial, coeff: ExactConstant) -> Self {
        let mut c = Self::zero(ambient);
        if !coeff.is_zero() {
            c.poly.insert(m, coeff);
        }
        c
    }

    pub fn x_hat(ambient: Ambient) -> Self {
        Self::monomial(ambient, Monomial::X, ExactConstant::one())
    }

    pub fn alpha_hat(n: u32) -> Self {
        Self::monomial(Ambient::Surface(n), Monomial::ALPHA, ExactConstant::one())
    }

    /// `a(f)` for a radial function; on `ℙ¹` only constants are allowed.
    pub fn a_function(ambient: Ambient, f: RadialExpr) -> Self {
        assert_eq!(f.n(), ambient.n(), "function on a different surface");
        if ambient == Ambient::P1 {
            assert!(f.as_constant().is_some(), "functions on P1 are constants here");
        }
        let mut c = Self::zero(ambient);
        c.func = f;
        c
    }

    pub fn a_constant(ambient: Ambient, v: ExactConstant) -> Self {
        Self::a_function(ambient, RadialExpr::constant(ambient.n(), v))
    }

    /// `a(η)` for a (1,1)-form on `S_n`.
    pub fn a_form(n: u32, eta: Form11) -> Self {
        assert_eq!(eta.n(), n, "form on a different surface");
        let mut c = Self::zero(Ambient::Surface(n));
        c.form = eta;
        c
    }

    /// Top-degree analytic class with total integral `v`.
    pub fn a_top(ambient: Ambient, v: ExactConstant) -> Self {
        let mut c = Self::zero(ambient);
        c.top = v;
        c
    }

    pub fn a_top_form(n: u32, w: &Form22) -> Result<Self, ChowError> {
        Ok(Self::a_top(Ambient::Surface(n), w.integrate_exact()?))
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn coeff(&self, m: Monomial) -> ExactConstant {
        self.poly.get(&m).cloned().unwrap_or_default()
    }

    pub fn poly(&self) -> impl Iterator<Item = (&Monomial, &ExactConstant)> {
        self.poly.iter()
    }

    pub fn func(&self) -> &RadialExpr {
        &self.func
    }

    pub fn form(&self) -> &Form11 {
        &self.form
    }

    pub fn top(&self) -> &ExactConstant {
        &self.top
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.func.is_zero() && self.form.is_zero() && self.top.is_zero()
    }

    pub fn is_reduced(&self) -> bool {
        self.poly
            .keys()
            .all(|m| m.is_reduced() && (self.ambient != Ambient::P1 || (m.alpha == 0 && m.x <= 1)))
    }

    /// Degree-`d` component.
    pub fn component(&self, d: u32) -> Self {
        let mut c = Self::zero(self.ambient);
        c.poly = self
            .poly
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .map(|(m, v)| (*m, v.clone()))
            .collect();
        if d == 1 {
            c.func = self.func.clone();
        }
        if d == 2 && self.ambient != Ambient::P1 {
            c.form = self.form.clone();
        }
        if d == self.ambient.top_degree() {
            c.top = self.top.clone();
        }
        c
    }

    fn check_ambient(&self, other: &Self) -> Result<(), ChowError> {
        if self.ambient == other.ambient {
            Ok(())
        } else {
            Err(ChowError::AmbientMismatch(self.ambient, other.ambient))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChowError> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (m, v) in &other.poly {
            let e = out.poly.entry(*m).or_default();
            *e += v.clone();
        }
        out.poly.retain(|_, v| !v.is_zero());
        out.func = &out.func + &other.func;
        out.form = out.form + other.form.clone();
        out.top += other.top.clone();
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, ChowError> {
        self.try_add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for v in out.poly.values_mut() {
            *v = v.scale(q);
        }
        out.poly.retain(|_, v| !v.is_zero());
        out.func = out.func.scale(q);
        out.form = out.form.scale(q);
        out.top = out.top.scale(q);
        out
    }

    pub fn scale_exact(&self, v: &ExactConstant) -> Result<Self, ChowError> {
        if let Some(q) = v.as_rational() {
            return Ok(self.scale(&q));
        }
        let mut out = self.clone();
        for c in out.poly.values_mut() {
            *c = c.mul(v)?;
        }
        out.poly.retain(|_, c| !c.is_zero());
        out.func = out.func.scale_exact(v)?;
        out.form = out.form.scale_exact(v)?;
        out.top = out.top.mul(v)?;
        Ok(out)
    }

    /// Normal form: every monomial rewritten to `1, x̂, α̂, x̂α̂`.
    pub fn reduce(&self) -> Result<Self, ChowError> {
        Rewriter::new(false, None).reduce(self)
    }

    pub fn reduce_traced(&self) -> Result<(Self, Vec<TraceStep>), ChowError> {
        let mut trace = Vec::new();
        let r = Rewriter::new(false, Some(&mut trace)).reduce(self)?;
        Ok((r, trace))
    }

    /// Product; fails if a nonzero component exceeds the top degree.
    pub fn mul(&self, other: &Self) -> Result<Self, ChowError> {
        Rewriter::new(false, None).mul(self, other)
    }

    /// Product with components above the top degree discarded.
    pub fn mul_truncated(&self, other: &Self) -> Result<Self, ChowError> {
        Rewriter::new(true, None).mul(self, other)
    }

    pub fn mul_traced(&self, other: &Self) -> Result<(Self, Vec<TraceStep>), ChowError> {
        let mut trace = Vec::new();
        let r = Rewriter::new(false, Some(&mut trace)).mul(self, other)?;
        Ok((r, trace))
    }

    pub fn pow_truncated(&self, k: u32) -> Result<Self, ChowError> {
        let mut out = Self::one(self.ambient);
        for _ in 0..k {
            out = out.mul_truncated(self)?;
        }
        Ok(out)
    }

    /// Curvature image `ω(ĉ)` on `S_n`, by degree: function, (1,1)- and (2,2)-form.
    pub fn curvature(&self) -> Result<(RadialExpr, Form11, Form22), ChowError> {
        let n = match self.ambient {
            Ambient::Surface(n) => n,
            Ambient::P1 => return Err(ChowError::InvalidGenerator("curvature", Ambient::P1)),
        };
        let r = self.reduce()?;
        let f0 = RadialExpr::constant(n, r.coeff(Monomial::ONE));
        let mut f11 = ddc_function(&r.func);
        f11 = f11 + base_form(n).scale_exact_form(&r.coeff(Monomial::X))?;
        f11 = f11 + alpha_form(n).scale_exact_form(&r.coeff(Monomial::ALPHA))?;
        let xa = base_form(n).wedge(&alpha_form(n))?;
        let f22 = r.form.ddc()? + xa.scale_exact(&r.coeff(Monomial::X_ALPHA))?;
        Ok((f0, f11, f22))
    }

    /// Direct image `π̂_*` along the ruling `S_n → ℙ¹`.
    pub fn pushforward(&self) -> Result<Self, ChowError> {
        if self.ambient == Ambient::P1 {
            return Err(ChowError::InvalidGenerator("pushforward", Ambient::P1));
        }
        let r = self.reduce()?;
        let mut out = Self::zero(Ambient::P1);
        for (m, v) in &r.poly {
            match *m {
                Monomial::ALPHA => {
                    out.poly.insert(Monomial::ONE, v.clone());
                }
                Monomial::X_ALPHA => {
                    out.poly.insert(Monomial::X, v.clone());
                }
                _ => {}
            }
        }
        out.func = RadialExpr::constant(0, r.form.pushforward_fiber_exact()?);
        out.top = r.top.clone();
        Ok(out)
    }

    /// `d̂eg`: half the integral of a purely analytic top-degree class.
    pub fn pushforward_deg(&self) -> Result<ExactConstant, ChowError> {
        let r = self.reduce()?;
        if !r.poly.is_empty() || !r.func.is_zero() || !r.form.is_zero() {
            return Err(ChowError::IncompleteReduction(r.to_string()));
        }
        Ok(r.top.scale(&BigRational::new(1.into(), 2.into())))
    }
}

trait ScaleExactForm: Sized {
    fn scale_exact_form(&self, v: &ExactConstant) -> Result<Self, FormsError>;
}

impl ScaleExactForm for Form11 {
    fn scale_exact_form(&self, v: &ExactConstant) -> Result<Self, FormsError> {
        match v.as_rational() {
            Some(q) => Ok(self.scale(&q)),
            None => self.scale_exact(v),
        }
    }
}

struct Rewriter<'a> {
    truncate: bool,
    trace: Option<&'a mut Vec<TraceStep>>,
}

impl<'a> Rewriter<'a> {
    fn new(truncate: bool, trace: Option<&'a mut Vec<TraceStep>>) -> Self {
        Self { truncate, trace }
    }

    fn log(&mut self, rule: &str, before: impl FnOnce() -> String, after: &ChowClass) {
        if let Some(t) = self.trace.as_deref_mut() {
            t.push(TraceStep {
                rule: rule.to_string(),
                before: before(),
                after: after.to_string(),
            });
        }
    }

    fn overflow(&self, amb: Ambient, degree: u32) -> Result<(), ChowError> {
        if self.truncate {
            Ok(())
        } else {
            Err(ChowError::DegreeOverflow {
                degree,
                top: amb.top_degree(),
            })
        }
    }

    fn reduce(&mut self, c: &ChowClass) -> Result<ChowClass, ChowError> {
        let amb = c.ambient;
        let mut out = ChowClass::zero(amb);
        out.func = c.func.clone();
        out.form = c.form.clone();
        out.top = c.top.clone();
        for (m, v) in &c.poly {
            let mono = self.monomial(amb, *m)?;
            out = out.try_add(&mono.scale_exact(v)?)?;
        }
        Ok(out)
    }

    /// Reduced value of `x̂^i α̂^j`.
    fn monomial(&mut self, amb: Ambient, m: Monomial) -> Result<ChowClass, ChowError> {
        if m.is_reduced() && (amb != Ambient::P1 || m.alpha == 0) {
            return Ok(ChowClass::monomial(amb, m, ExactConstant::one()));
        }
        let mut out = ChowClass::one(amb);
        for _ in 0..m.alpha {
            out = self.mul_gen(&out, Generator::Alpha)?;
        }
        for _ in 0..m.x {
            out = self.mul_gen(&out, Generator::X)?;
        }
        Ok(out)
    }

    /// `c · g` for a reduced class `c`.
    fn mul_gen(&mut self, c: &ChowClass, g: Generator) -> Result<ChowClass, ChowError> {
        let amb = c.ambient;
        let n = amb.n();
        if amb == Ambient::P1 && g == Generator::Alpha {
            return Err(ChowError::InvalidGenerator("α̂", amb));
        }
        let omega_g = match g {
            Generator::X => base_form(n),
            Generator::Alpha => alpha_form(n),
        };
        let mut out = ChowClass::zero(amb);
        for (m, v) in &c.poly {
            let term = self.monomial_times_gen(amb, *m, g)?;
            out = out.try_add(&term.scale_exact(v)?)?;
        }
        // a(f)·ĝ = a(f·ω(g))
        if !c.func.is_zero() {
            let term = match amb {
                Ambient::P1 => ChowClass::a_top(amb, c.func.as_constant().expect("constant on P1")),
                Ambient::Surface(n) => ChowClass::a_form(n, omega_g.mul_function(&c.func)?),
            };
            self.log(
                "a(f)*c -> a(f omega(c))",
                || format!("a({})·{}", c.func, gen_name(g)),
                &term,
            );
            out = out.try_add(&term)?;
        }
        if !c.form.is_zero() {
            let term = ChowClass::a_top_form(n, &c.form.wedge(&omega_g)?)?;
            self.log(
                "a(eta)*c -> a(eta ^ omega(c))",
                || format!("a({})·{}", fmt_form(&c.form), gen_name(g)),
                &term,
            );
            out = out.try_add(&term)?;
        }
        if !c.top.is_zero() {
            self.overflow(amb, amb.top_degree() + 1)?;
        }
        Ok(out)
    }

    fn monomial_times_gen(&mut self, amb: Ambient, m: Monomial, g: Generator) -> Result<ChowClass, ChowError> {
        let n = amb.n();
        let one = ExactConstant::one();
        let out = match (amb, m, g) {
            (_, Monomial::ONE, Generator::X) => ChowClass::x_hat(amb),
            (_, Monomial::ONE, Generator::Alpha) => ChowClass::alpha_hat(n),
            (Ambient::P1, Monomial::X, Generator::X) => {
                // x̂² = a(x), and ∫_{ℙ¹} x = 1
                let r = ChowClass::a_top(amb, one);
                self.log("x^2 -> a(x)", || "x̂·x̂".into(), &r);
                r
            }
            (Ambient::Surface(n), Monomial::X, Generator::X) => {
                let r = ChowClass::a_form(n, base_form(n));
                self.log("x^2 -> a(x)", || "x̂·x̂".into(), &r);
                r
            }
            (_, Monomial::X, Generator::Alpha) | (_, Monomial::ALPHA, Generator::X) => {
                ChowClass::monomial(amb, Monomial::X_ALPHA, one)
            }
            (Ambient::Surface(n), Monomial::ALPHA, Generator::Alpha) => {
                let r = ChowClass::monomial(amb, Monomial::X_ALPHA, ExactConstant::int(n as i64 + 2))
                    .try_add(&ChowClass::a_form(n, alpha_square_form(n)))?;
                self.log(
                    "alpha^2 -> (n+2) x alpha + a(alpha - (n+1)x - R x)",
                    || "α̂·α̂".into(),
                    &r,
                );
                r
            }
            (Ambient::Surface(_), Monomial::X_ALPHA, Generator::X) => {
                let x2 = self.monomial_times_gen(amb, Monomial::X, Generator::X)?;
                self.mul_gen(&x2, Generator::Alpha)?
            }
            (Ambient::Surface(_), Monomial::X_ALPHA, Generator::Alpha) => {
                let a2 = self.monomial_times_gen(amb, Monomial::ALPHA, Generator::Alpha)?;
                self.mul_gen(&a2, Generator::X)?
            }
            _ => {
                // unreduced input monomial: reduce first
                let r = self.monomial(amb, m)?;
                return self.mul_gen(&r, g);
            }
        };
        Ok(out)
    }

    fn mul(&mut self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass, ChowError> {
        a.check_ambient(b)?;
        let amb = a.ambient;
        let a = self.reduce(a)?;
        let b = self.reduce(b)?;
        let mut out = ChowClass::zero(amb);
        // polynomial part of a times all of b
        for (m, v) in &a.poly {
            let mut term = b.clone();
            for _ in 0..m.alpha {
                term = self.mul_gen(&term, Generator::Alpha)?;
            }
            for _ in 0..m.x {
                term = self.mul_gen(&term, Generator::X)?;
            }
            out = out.try_add(&term.scale_exact(v)?)?;
        }
        // analytic part of a times polynomial part of b
        let mut an = a.clone();
        an.poly.clear();
        for (m, v) in &b.poly {
            let mut term = an.clone();
            for _ in 0..m.alpha {
                term = self.mul_gen(&term, Generator::Alpha)?;
            }
            for _ in 0..m.x {
                term = self.mul_gen(&term, Generator::X)?;
            }
            out = out.try_add(&term.scale_exact(v)?)?;
        }
        out = out.try_add(&self.analytic_product(&a, &b)?)?;
        Ok(out)
    }

    /// `a(η)·a(η′) = a(½(η∧dd^cη′ + η′∧dd^cη))`
    fn analytic_product(&mut self, a: &ChowClass, b: &ChowClass) -> Result<ChowClass, ChowError> {
        let amb = a.ambient;
        let top = amb.top_degree();
        let half = BigRational::new(1.into(), 2.into());
        let mut out = ChowClass::zero(amb);
        // degrees: func 1, form 2, top = top
        let pairs_over = [
            (!a.func.is_zero() && !b.top.is_zero(), 1 + top),
            (!a.top.is_zero() && !b.func.is_zero(), 1 + top),
            (!a.form.is_zero() && !b.form.is_zero(), 4),
            (!a.form.is_zero() && !b.top.is_zero(), 2 + top),
            (!a.top.is_zero() && !b.form.is_zero(), 2 + top),
            (!a.top.is_zero() && !b.top.is_zero(), 2 * top),
        ];
        for (hit, d) in pairs_over {
            if hit {
                self.overflow(amb, d)?;
            }
        }
        let n = match amb {
            // functions on ℙ¹ are constants, whose dd^c vanishes
            Ambient::P1 => return Ok(out),
            Ambient::Surface(n) => n,
        };
        if !a.func.is_zero() && !b.func.is_zero() {
            let eta = (ddc_function(&b.func).mul_function(&a.func)? + ddc_function(&a.func).mul_function(&b.func)?)
                .scale(&half);
            let term = ChowClass::a_form(n, eta);
            self.log(
                "a(f)*a(g) -> a(sym f ddc g)",
                || format!("a({})·a({})", a.func, b.func),
                &term,
            );
            out = out.try_add(&term)?;
        }
        for (f, eta) in [(&a.func, &b.form), (&b.func, &a.form)] {
            if !f.is_zero() && !eta.is_zero() {
                let w = (eta.ddc()?.mul_function(f)? + eta.wedge(&ddc_function(f))?).scale(&half);
                let term = ChowClass::a_top_form(n, &w)?;
                self.log(
                    "a(f)*a(eta) -> a(sym f ddc eta)",
                    || format!("a({})·a({})", f, fmt_form(eta)),
                    &term,
                );
                out = out.try_add(&term)?;
            }
        }
        Ok(out)
    }
}

fn gen_name(g: Generator) -> &'static str {
    match g {
        Generator::X => "x̂",
        Generator::Alpha => "α̂",
    }
}

/// `α_n − (n+1)x − R·x`, the analytic part of the `α̂²` relation.
pub fn alpha_square_form(n: u32) -> Form11 {
    alpha_form(n)
        - base_form(n).scale(&rat(n as i64 + 1))
        - base_form(n)
            .mul_function(&RadialExpr::ratio(n))
            .expect("rational product")
}

fn fmt_form(f: &Form11) -> String {
    match (f.fx.is_zero(), f.fphi.is_zero()) {
        (true, true) => "0".into(),
        (false, true) => format!("({})·x", f.fx),
        (true, false) => format!("({})·φ", f.fphi),
        (false, false) => format!("({})·x + ({})·φ", f.fx, f.fphi),
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .poly
            .iter()
            .map(|(m, v)| {
                if *m == Monomial::ONE {
                    format!("{v}")
                } else if v.as_rational().is_some_and(|q| q.is_one()) {
                    m.to_string()
                } else {
                    format!("({v})*{m}")
                }
            })
            .collect();
        if !self.func.is_zero() {
            terms.push(format!("a({})", self.func));
        }
        if !self.form.is_zero() {
            terms.push(format!("a({})", fmt_form(&self.form)));
        }
        if !self.top.is_zero() {
            terms.push(format!("a_top({})", self.top));
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat as frac;

    fn s(n: u32) -> Ambient {
        Ambient::Surface(n)
    }

    #[test]
    fn x_squared_on_p1() {
        let x = ChowClass::x_hat(Ambient::P1);
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2, ChowClass::a_top(Ambient::P1, ExactConstant::one()));
        assert_eq!(x2.pushforward_deg().unwrap(), ExactConstant::frac(1, 2));
        assert!(matches!(x2.mul(&x), Err(ChowError::DegreeOverflow { .. })));
        assert!(x2.mul_truncated(&x).unwrap().is_zero());
    }

    #[test]
    fn reduction_rules_on_surface() {
        for n in 0..6u32 {
            let amb = s(n);
            let x2 = ChowClass::monomial(amb, Monomial { x: 2, alpha: 0 }, ExactConstant::one());
            assert_eq!(x2.reduce().unwrap(), ChowClass::a_form(n, base_form(n)));
            let x3 = ChowClass::monomial(amb, Monomial { x: 3, alpha: 0 }, ExactConstant::one());
            assert!(x3.reduce().unwrap().is_zero());
            let ax2 = ChowClass::monomial(amb, Monomial { x: 2, alpha: 1 }, ExactConstant::one());
            assert_eq!(ax2.pushforward_deg().unwrap(), ExactConstant::frac(1, 2));
            let a2x = ChowClass::monomial(amb, Monomial { x: 1, alpha: 2 }, ExactConstant::one());
            assert_eq!(
                a2x.pushforward_deg().unwrap(),
                ExactConstant::rational(frac(n as i64 + 3, 2))
            );
            let (r, trace) = a2x.reduce_traced().unwrap();
            assert!(r.is_reduced());
            assert!(trace.iter().any(|t| t.rule.starts_with("alpha^2")));
        }
    }

    #[test]
    fn analytic_products_with_generators() {
        let n = 3;
        let ax = ChowClass::a_form(n, base_form(n));
        assert!(ChowClass::x_hat(s(n)).mul(&ax).unwrap().is_zero());
        let r = ChowClass::alpha_hat(n).mul(&ax).unwrap();
        assert_eq!(r, ChowClass::a_top(s(n), ExactConstant::one()));
        let c = ChowClass::a_constant(s(n), ExactConstant::log_two_pi());
        let r = c.mul(&ChowClass::alpha_hat(n)).unwrap();
        assert_eq!(
            r,
            ChowClass::a_form(n, alpha_form(n).scale_exact(&ExactConstant::log_two_pi()).unwrap())
        );
    }

    #[test]
    fn reduce_is_idempotent_and_mul_commutes() {
        let n = 2;
        let amb = s(n);
        let a = ChowClass::monomial(amb, Monomial { x: 0, alpha: 2 }, ExactConstant::int(3))
            .try_add(&ChowClass::a_function(amb, RadialExpr::log_ratio(n)))
            .unwrap();
        let r = a.reduce().unwrap();
        assert_eq!(r.reduce().unwrap(), r);
        let b = ChowClass::x_hat(amb)
            .try_add(&ChowClass::a_function(amb, RadialExpr::inv_one_plus_u(n, 1)))
            .unwrap();
        assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
    }

    #[test]
    fn pushforward_of_generators() {
        let n = 4;
        let amb = s(n);
        assert!(ChowClass::one(amb).pushforward().unwrap().is_zero());
        assert!(ChowClass::x_hat(amb).pushforward().unwrap().is_zero());
        assert_eq!(
            ChowClass::alpha_hat(n).pushforward().unwrap(),
            ChowClass::one(Ambient::P1)
        );
        let xa = ChowClass::monomial(amb, Monomial::X_ALPHA, ExactConstant::one());
        assert_eq!(xa.pushforward().unwrap(), ChowClass::x_hat(Ambient::P1));
        // π̂_*(α̂²) = (n+2)x̂ + a(1)
        let a2 = ChowClass::alpha_hat(n).mul(&ChowClass::alpha_hat(n)).unwrap();
        let expect = ChowClass::x_hat(Ambient::P1)
            .scale(&frac(n as i64 + 2, 1))
            .try_add(&ChowClass::a_constant(Ambient::P1, ExactConstant::one()))
            .unwrap();
        assert_eq!(a2.pushforward().unwrap(), expect);
    }

    #[test]
    fn incomplete_reduction_is_reported() {
        let e = ChowClass::alpha_hat(1).pushforward_deg();
        assert!(matches!(e, Err(ChowError::IncompleteReduction(_))));
        assert!(matches!(
            ChowClass::alpha_hat(1).mul(&ChowClass::x_hat(Ambient::P1)),
            Err(ChowError::AmbientMismatch(..))
        ));
    }
}
