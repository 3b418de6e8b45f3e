//! U(2)-invariant forms on `S_n`, stored at normal-frame points as radial
//! coefficients on the basis `{π*x, φ}`.
//!
//! A (1,1)-form is `fx·π*x + fphi·φ`, a (2,2)-form is `g·π*x∧φ`, and every
//! total integral over `S_n` reduces to `∫₀^∞ g(u) du`. With
//! `α = A·π*x + B·φ`, `A = R(u)`, `B = 1/(1+u)²`, every invariant (1,1)-form
//! splits as `λ(u)·α + h(u)·π*x`, which gives `dd^c` of arbitrary forms from
//! the radial rule `dd^c h = (n·u·h′, h′ + u·h″)`.

pub mod expr;

use std::f64::consts::PI;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::constants::{ConstantsError, ExactConstant};
use crate::radial::{integrate_halfline, QuadratureConfig, QuadratureError, RadialFunction};
use crate::report::VerificationEntry;

pub use expr::RadialExpr;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FormsError {
    #[error("forms live on different surfaces (n = {0} and n = {1})")]
    MismatchedRuling(u32, u32),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("non-linear transcendental term: {0}")]
    NonLinear(String),
    #[error(transparent)]
    Constants(#[from] ConstantsError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

fn q(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn same_ruling(a: u32, b: u32) -> Result<(), FormsError> {
    if a == b {
        Ok(())
    } else {
        Err(FormsError::MismatchedRuling(a, b))
    }
}

/// A radial potential `h(u)` with symbolic first and second derivatives.
#[derive(Debug, Clone)]
pub struct RadialPotential {
    h: RadialFunction,
    dh: RadialExpr,
    d2h: RadialExpr,
}

impl RadialPotential {
    /// `h` given numerically, `h′` symbolically.
    pub fn new(h: RadialFunction, dh: RadialExpr) -> Self {
        let d2h = dh.derivative();
        Self { h, dh, d2h }
    }

    pub fn from_expr(f: &RadialExpr) -> Self {
        Self::new(f.to_radial_function(), f.derivative())
    }

    pub fn constant(n: u32, v: ExactConstant) -> Self {
        Self::from_expr(&RadialExpr::constant(n, v))
    }

    /// `log(1+u)`
    pub fn log_one_plus_u(n: u32) -> Self {
        Self::new(
            RadialFunction::new(0.0, |u| u.ln_1p()).with_log_factor(),
            RadialExpr::inv_one_plus_u(n, 1),
        )
    }

    /// `log(1+(n+1)u)`
    pub fn log_one_plus_cu(n: u32) -> Self {
        let c = (n + 1) as f64;
        Self::new(
            RadialFunction::new(0.0, move |u| (c * u).ln_1p()).with_log_factor(),
            RadialExpr::inv_one_plus_cu(n, 1).scale_int(n as i64 + 1),
        )
    }

    /// `log R(u)`
    pub fn log_ratio(n: u32) -> Self {
        Self::from_expr(&RadialExpr::log_ratio(n))
    }

    pub fn n(&self) -> u32 {
        self.dh.n()
    }

    pub fn h(&self) -> &RadialFunction {
        &self.h
    }

    pub fn dh(&self) -> &RadialExpr {
        &self.dh
    }

    pub fn d2h(&self) -> &RadialExpr {
        &self.d2h
    }
}

/// `fx·π*x + fphi·φ`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form11 {
    pub fx: RadialExpr,
    pub fphi: RadialExpr,
}

/// `g·π*x∧φ`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form22 {
    pub g: RadialExpr,
}

impl Form11 {
    pub fn new(fx: RadialExpr, fphi: RadialExpr) -> Self {
        assert_eq!(fx.n(), fphi.n(), "coefficients on different surfaces");
        Self { fx, fphi }
    }

    pub fn zero(n: u32) -> Self {
        Self::new(RadialExpr::zero(n), RadialExpr::zero(n))
    }

    pub fn n(&self) -> u32 {
        self.fx.n()
    }

    pub fn is_zero(&self) -> bool {
        self.fx.is_zero() && self.fphi.is_zero()
    }

    pub fn eval(&self, u: f64) -> (f64, f64) {
        (self.fx.eval(u), self.fphi.eval(u))
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(self.fx.scale(k), self.fphi.scale(k))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&q(k))
    }

    pub fn scale_exact(&self, v: &ExactConstant) -> Result<Self, FormsError> {
        Ok(Self::new(self.fx.scale_exact(v)?, self.fphi.scale_exact(v)?))
    }

    /// `f·self` for a radial function `f`.
    pub fn mul_function(&self, f: &RadialExpr) -> Result<Self, FormsError> {
        same_ruling(self.n(), f.n())?;
        Ok(Self::new(self.fx.try_mul(f)?, self.fphi.try_mul(f)?))
    }

    pub fn wedge(&self, other: &Form11) -> Result<Form22, FormsError> {
        same_ruling(self.n(), other.n())?;
        let g = self.fx.try_mul(&other.fphi)? + self.fphi.try_mul(&other.fx)?;
        Ok(Form22 { g })
    }

    /// `(λ, h)` with `self = λ·α + h·π*x`.
    pub fn decompose(&self) -> Result<(RadialExpr, RadialExpr), FormsError> {
        let n = self.n();
        let inv_b = RadialExpr::inv_one_plus_u(n, 0)
            + RadialExpr::u(n).scale_int(2)
            + RadialExpr::monomial(n, BigRational::one(), 2, 0, 0);
        let lambda = self.fphi.mul_rational_expr(&inv_b);
        let h = &self.fx - &lambda.mul_rational_expr(&RadialExpr::ratio(n));
        Ok((lambda, h))
    }

    /// `dd^c` of the form, via `dd^c(λα + hπ*x) = dd^cλ∧α + dd^ch∧π*x`.
    pub fn ddc(&self) -> Result<Form22, FormsError> {
        let n = self.n();
        let (lambda, h) = self.decompose()?;
        let from_lambda = ddc_function(&lambda).wedge(&alpha_form(n))?;
        let from_h = ddc_function(&h).wedge(&base_form(n))?;
        Ok(from_lambda + from_h)
    }

    /// `∫ fphi du`: the fiber integral, a constant on the base.
    pub fn pushforward_fiber_exact(&self) -> Result<ExactConstant, FormsError> {
        self.fphi.integrate_exact()
    }

    pub fn pushforward_fiber(&self, cfg: &QuadratureConfig) -> Result<f64, FormsError> {
        Ok(integrate_halfline(&self.fphi.to_radial_function(), cfg)?)
    }

    /// `Λ_α(self) = fx/A + fphi/B`.
    pub fn lambda_contract(&self) -> Result<RadialExpr, FormsError> {
        let n = self.n();
        let inv_a = (RadialExpr::int(n, 1) + RadialExpr::u(n)).mul_rational_expr(&RadialExpr::inv_one_plus_cu(n, 1));
        let inv_b =
            (RadialExpr::int(n, 1) + RadialExpr::u(n)).mul_rational_expr(&(RadialExpr::int(n, 1) + RadialExpr::u(n)));
        Ok(self.fx.try_mul(&inv_a)? + self.fphi.try_mul(&inv_b)?)
    }

    /// `⋆a = Λ(a)·α − a`.
    pub fn hodge_star(&self) -> Result<Form11, FormsError> {
        let lam = self.lambda_contract()?;
        Ok(alpha_form(self.n()).mul_function(&lam)? - self.clone())
    }
}

impl Form22 {
    pub fn zero(n: u32) -> Self {
        Self { g: RadialExpr::zero(n) }
    }

    pub fn n(&self) -> u32 {
        self.g.n()
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self { g: self.g.scale(k) }
    }

    pub fn scale_exact(&self, v: &ExactConstant) -> Result<Self, FormsError> {
        Ok(Self {
            g: self.g.scale_exact(v)?,
        })
    }

    pub fn mul_function(&self, f: &RadialExpr) -> Result<Self, FormsError> {
        same_ruling(self.n(), f.n())?;
        Ok(Self { g: self.g.try_mul(f)? })
    }

    /// `∫_{S_n}`, equal to the coefficient of `x` in the fiber pushforward.
    pub fn integrate_exact(&self) -> Result<ExactConstant, FormsError> {
        self.g.integrate_exact()
    }

    pub fn integrate(&self, cfg: &QuadratureConfig) -> Result<f64, FormsError> {
        Ok(integrate_halfline(&self.g.to_radial_function(), cfg)?)
    }
}

macro_rules! linear_ops {
    ($t:ty, $($field:ident),+) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                Self { $($field: self.$field + rhs.$field),+ }
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                Self { $($field: self.$field - rhs.$field),+ }
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                Self { $($field: -self.$field),+ }
            }
        }
    };
}

linear_ops!(Form11, fx, fphi);
linear_ops!(Form22, g);

/// `dd^c h = (n·u·h′, h′ + u·h″)` for a radial potential.
pub fn ddc_potential(h: &RadialPotential) -> Form11 {
    let n = h.n();
    let u = RadialExpr::u(n);
    let fx = h.dh().mul_rational_expr(&u).scale_int(n as i64);
    let fphi = h.dh() + &h.d2h().mul_rational_expr(&u);
    Form11::new(fx, fphi)
}

pub fn ddc_function(f: &RadialExpr) -> Form11 {
    let n = f.n();
    let u = RadialExpr::u(n);
    let d = f.derivative();
    let d2 = d.derivative();
    Form11::new(
        d.mul_rational_expr(&u).scale_int(n as i64),
        &d + &d2.mul_rational_expr(&u),
    )
}

/// `α_n = R(u)·π*x + φ/(1+u)²`
pub fn alpha_form(n: u32) -> Form11 {
    Form11::new(RadialExpr::ratio(n), RadialExpr::inv_one_plus_u(n, 2))
}

/// `π*x`
pub fn base_form(n: u32) -> Form11 {
    Form11::new(RadialExpr::int(n, 1), RadialExpr::zero(n))
}

/// `Ω = α_n − R(u)·π*x`, the pure fiber form.
pub fn omega_fiber(n: u32) -> Form11 {
    alpha_form(n)
        - base_form(n)
            .mul_function(&RadialExpr::ratio(n))
            .expect("rational product")
}

/// Bott–Chern form `c̃₂(TS_n, Tℙ¹, α_n, α_n)`.
pub fn bott_chern_c2(n: u32) -> Form11 {
    let k = n as i64;
    let fx = RadialExpr::inv_one_plus_cu(n, 1).scale_int(k) - RadialExpr::inv_one_plus_u(n, 1).scale_int(k);
    Form11::new(fx, RadialExpr::zero(n))
}

/// `c₁(T_{S_n/ℙ¹}, α_n) = 2α_n − (n+2)π*x`
pub fn c1_rel(n: u32) -> Form11 {
    alpha_form(n).scale_int(2) - base_form(n).scale_int(n as i64 + 2)
}

/// `c₁(TS_n, α_n) = 2α_n − n·π*x − dd^c log R`
pub fn c1_total(n: u32) -> Form11 {
    alpha_form(n).scale_int(2) - base_form(n).scale_int(n as i64) - ddc_potential(&RadialPotential::log_ratio(n))
}

/// Harmonic representative of the class of `π*x`.
pub fn omega_h(n: u32) -> Form11 {
    base_form(n) - ddc_potential(&RadialPotential::log_ratio(n)).scale(&q(n as i64 + 2).recip())
}

/// The volume form `α_n²/2`.
pub fn volume_form(n: u32) -> Form22 {
    Form22 {
        g: RadialExpr::ratio(n).mul_rational_expr(&RadialExpr::inv_one_plus_u(n, 2)),
    }
}

/// Named (1,1)-forms available to the catalog dump.
pub fn catalog(n: u32) -> Vec<(&'static str, Form11)> {
    vec![
        ("alpha", alpha_form(n)),
        ("base", base_form(n)),
        ("omega_fiber", omega_fiber(n)),
        ("ddc_log_ratio", ddc_potential(&RadialPotential::log_ratio(n))),
        ("bott_chern_c2", bott_chern_c2(n)),
        ("c1_rel", c1_rel(n)),
        ("c1_total", c1_total(n)),
        ("omega_h", omega_h(n)),
    ]
}

/// `∫_{S_n} a∧⋆b`
pub fn l2_inner(a: &Form11, b: &Form11) -> Result<ExactConstant, FormsError> {
    a.wedge(&b.hodge_star()?)?.integrate_exact()
}

pub fn l2_inner_quadrature(a: &Form11, b: &Form11, cfg: &QuadratureConfig) -> Result<f64, FormsError> {
    a.wedge(&b.hodge_star()?)?.integrate(cfg)
}

/// `∫_{S_n} f·g dV` for radial functions.
pub fn l2_inner_functions(f: &RadialExpr, g: &RadialExpr) -> Result<ExactConstant, FormsError> {
    volume_form(f.n()).mul_function(&f.try_mul(g)?)?.integrate_exact()
}

/// `∫_{S_n} ⟨w₁, w₂⟩ dV` for top forms, with `|dV| = 1`.
pub fn l2_inner_top(w1: &Form22, w2: &Form22) -> Result<ExactConstant, FormsError> {
    let n = w1.n();
    same_ruling(n, w2.n())?;
    // 1/(AB) = (1+u)^3/(1+cu)
    let one_u = RadialExpr::int(n, 1) + RadialExpr::u(n);
    let inv_dv = one_u
        .mul_rational_expr(&one_u)
        .mul_rational_expr(&one_u)
        .mul_rational_expr(&RadialExpr::inv_one_plus_cu(n, 1));
    Form22 {
        g: w1.g.try_mul(&w2.g)?.try_mul(&inv_dv)?,
    }
    .integrate_exact()
}

/// Squared norm of `v·∂/∂z` in the quotient metric at fiber coordinate `z`,
/// at a normal-frame point where `e*` and `e*^{n+1}` are orthonormal.
///
/// The preimage `q*(∂/∂z)` is `(−z̄ e* + e*^{n+1})/(1+|z|²) ⊗ (e* + z e*^{n+1})*`;
/// `q` sends `b ⊗ a*` to `(a₁b₂ − a₂b₁)/a₁² ∂/∂z`.
pub fn quotient_metric_norm_sq(z: Complex64, v: Complex64) -> f64 {
    let s = 1.0 + z.norm_sqr();
    let b = [-z.conj() * v / s, v / s];
    let a = [Complex64::new(1.0, 0.0), z];
    let image = (a[0] * b[1] - a[1] * b[0]) / (a[0] * a[0]);
    debug_assert!((image - v).norm() <= 1e-12 * (1.0 + v.norm()));
    // ‖b‖² · ‖a*‖² with ‖a*‖² = 1/‖a‖²
    (b[0].norm_sqr() + b[1].norm_sqr()) / (a[0].norm_sqr() + a[1].norm_sqr())
}

/// Checks `ω_q / α_n|fiber = 2π` at the sample points, where `ω_q` is
/// `i·‖∂/∂z‖²_q dz∧dz̄` and `α_n|fiber = (i/2π)·fphi dz∧dz̄`.
pub fn quotient_metric_ratio_check(n: u32, us: &[f64], tol: f64) -> VerificationEntry {
    let alpha = alpha_form(n);
    let mut worst = 2.0 * PI;
    for &u in us {
        for theta in [0.0, 0.7, 2.5] {
            let z = Complex64::from_polar(u.sqrt(), theta);
            let ratio = 2.0 * PI * quotient_metric_norm_sq(z, Complex64::new(1.0, 0.0)) / alpha.fphi.eval(u);
            if (ratio - 2.0 * PI).abs() > (worst - 2.0 * PI).abs() {
                worst = ratio;
            }
        }
    }
    VerificationEntry::float("quotient_metric_ratio", Some(n), 2.0 * PI, worst, tol)
}
