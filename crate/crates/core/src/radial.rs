//! Numerical integration of radial functions over the half-line `[0, inf)`.
//!
//! Every fiber and total integral on a Hirzebruch surface reduces, by
//! `U(2)`-invariance, to a one-dimensional integral in the invariant
//! `u = |z|^2 ||e*||^{2n}`. The half-line is compactified with `u = t/(1-t)`
//! before an adaptive Gauss-Kronrod rule is applied; the tanh-sinh variant
//! uses the same map, which composes to `u = exp(pi sinh s)`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::ExactConstant;
use crate::report::VerificationEntry;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("no convergence: estimate {estimate:e} with error {error:e} exceeds tolerance {tol:e}")]
    NonConvergence { estimate: f64, error: f64, tol: f64 },
    #[error("integrand is not finite at u = {u:e}")]
    Domain { u: f64 },
    #[error("decay order {0} is not integrable on the half-line")]
    NotIntegrable(f64),
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
}

/// An evaluable map `u -> f(u)` on `[0, inf)` with a declared decay order `d`
/// (`f(u) = O(u^-d)`, possibly up to a logarithmic factor).
#[derive(Clone)]
pub struct RadialFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    decay_order: f64,
    log_factor: bool,
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RadialFunction")
            .field("decay_order", &self.decay_order)
            .field("log_factor", &self.log_factor)
            .finish()
    }
}

impl RadialFunction {
    pub fn new<F>(decay_order: f64, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(f),
            decay_order,
            log_factor: false,
        }
    }

    pub fn zero() -> Self {
        Self::new(f64::INFINITY, |_| 0.0)
    }

    /// Flags a logarithmic factor in the tail, e.g. `log(1+u)/(1+u)^2`.
    pub fn with_log_factor(mut self) -> Self {
        self.log_factor = true;
        self
    }

    pub fn eval(&self, u: f64) -> f64 {
        (self.eval)(u)
    }

    pub fn decay_order(&self) -> f64 {
        self.decay_order
    }

    pub fn has_log_factor(&self) -> bool {
        self.log_factor
    }

    /// `a f + b g`, decaying like the slower of the two.
    pub fn linear_combination(a: f64, f: &RadialFunction, b: f64, g: &RadialFunction) -> Self {
        let (f1, g1) = (f.clone(), g.clone());
        Self {
            eval: Arc::new(move |u| a * f1.eval(u) + b * g1.eval(u)),
            decay_order: f.decay_order.min(g.decay_order),
            log_factor: f.log_factor || g.log_factor,
        }
    }

    /// `u -> f(u/c)/c`, which has the same integral for `c > 0`.
    pub fn rescaled(&self, c: f64) -> Self {
        let f = self.clone();
        Self {
            eval: Arc::new(move |u| f.eval(u / c) / c),
            decay_order: self.decay_order,
            log_factor: self.log_factor,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    #[default]
    GaussKronrod,
    TanhSinh,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub target_tol: f64,
    /// Maximum number of subintervals (Gauss-Kronrod) or halving levels (tanh-sinh).
    pub max_refinement: usize,
    pub scheme: Scheme,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            target_tol: 1e-10,
            max_refinement: 2000,
            scheme: Scheme::GaussKronrod,
        }
    }
}

impl QuadratureConfig {
    /// Pass/fail margin applied on top of the target tolerance.
    pub const SAFETY_FACTOR: f64 = 10.0;

    pub fn with_tol(tol: f64) -> Self {
        Self {
            target_tol: tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if self.target_tol.is_nan() || self.target_tol <= 0.0 || self.target_tol.is_infinite() {
            return Err(QuadratureError::InvalidConfig(format!(
                "target_tol = {}",
                self.target_tol
            )));
        }
        if self.max_refinement < 1 {
            return Err(QuadratureError::InvalidConfig("max_refinement = 0".into()));
        }
        Ok(())
    }

    pub fn pass_threshold(&self) -> f64 {
        self.target_tol * Self::SAFETY_FACTOR
    }
}

/// `int_0^inf f(u) du` to within `cfg.target_tol` (absolute).
pub fn integrate_halfline(f: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
    cfg.validate()?;
    if f.decay_order.is_nan() || f.decay_order <= 1.0 {
        return Err(QuadratureError::NotIntegrable(f.decay_order));
    }
    match cfg.scheme {
        Scheme::GaussKronrod => gauss_kronrod_adaptive(f, cfg),
        Scheme::TanhSinh => tanh_sinh(f, cfg),
    }
}

/// Integrates `f` and records the discrepancy against a closed form.
pub fn compare_closed_form(
    name: &str,
    n: Option<u32>,
    f: &RadialFunction,
    expected: &ExactConstant,
    cfg: &QuadratureConfig,
) -> Result<VerificationEntry, QuadratureError> {
    let computed = integrate_halfline(f, cfg)?;
    Ok(VerificationEntry::numeric(
        name,
        n,
        expected,
        computed,
        cfg.pass_threshold(),
    ))
}

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Integrand on `(0, 1)` after `u = t/(1-t)`.
fn compactified(f: &RadialFunction, t: f64) -> Result<f64, QuadratureError> {
    let s = 1.0 - t;
    let u = t / s;
    let v = f.eval(u);
    if !v.is_finite() {
        return Err(QuadratureError::Domain { u });
    }
    Ok(v / (s * s))
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod15(f: &RadialFunction, a: f64, b: f64) -> Result<Segment, QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = compactified(f, center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = compactified(f, center - dx)?;
        let f2 = compactified(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment { a, b, value, error })
}

fn gauss_kronrod_adaptive(f: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
    let mut heap = BinaryHeap::new();
    // a few initial panels spread the work toward both endpoints
    let edges = [0.0, 0.25, 0.5, 0.75, 0.9, 1.0];
    for w in edges.windows(2) {
        heap.push(kronrod15(f, w[0], w[1])?);
    }
    loop {
        let (value, error): (f64, f64) = heap.iter().fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= cfg.target_tol {
            return Ok(value);
        }
        if heap.len() >= cfg.max_refinement.max(edges.len()) {
            return Err(QuadratureError::NonConvergence {
                estimate: value,
                error,
                tol: cfg.target_tol,
            });
        }
        let worst = heap.pop().expect("non-empty segment heap");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // interval exhausted at machine resolution
            return Err(QuadratureError::NonConvergence {
                estimate: value,
                error,
                tol: cfg.target_tol,
            });
        }
        heap.push(kronrod15(f, worst.a, mid)?);
        heap.push(kronrod15(f, mid, worst.b)?);
    }
}

/// Trapezoidal sums in `s` of `f(e^{pi sinh s}) pi cosh s e^{pi sinh s}`,
/// halving the step until two levels agree.
fn tanh_sinh(f: &RadialFunction, cfg: &QuadratureConfig) -> Result<f64, QuadratureError> {
    const S_MAX: f64 = 4.5;
    let term = |s: f64| -> Result<f64, QuadratureError> {
        let e = std::f64::consts::PI * s.sinh();
        let u = e.exp();
        let v = f.eval(u);
        if !v.is_finite() {
            return Err(QuadratureError::Domain { u });
        }
        let w = std::f64::consts::PI * s.cosh() * u;
        Ok(if w == 0.0 { 0.0 } else { v * w })
    };
    let mut h = 0.5;
    let mut sum = term(0.0)?;
    let mut k = 1;
    while (k as f64) * h <= S_MAX {
        sum += term(k as f64 * h)? + term(-(k as f64) * h)?;
        k += 1;
    }
    let mut estimate = sum * h;
    let levels = cfg.max_refinement.clamp(1, 16);
    let mut diff = f64::INFINITY;
    for _ in 0..levels {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= S_MAX {
            sum += term(k as f64 * h)? + term(-(k as f64) * h)?;
            k += 2;
        }
        let next = sum * h;
        diff = (next - estimate).abs();
        estimate = next;
        if diff <= cfg.target_tol * 0.1 {
            return Ok(estimate);
        }
    }
    Err(QuadratureError::NonConvergence {
        estimate,
        error: diff,
        tol: cfg.target_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::rat;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn cubic_kernel_is_one_half() {
        let f = RadialFunction::new(3.0, |u| 1.0 / (1.0 + u).powi(3));
        assert!((integrate_halfline(&f, &cfg()).unwrap() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn zero_integrand() {
        assert_eq!(integrate_halfline(&RadialFunction::zero(), &cfg()).unwrap(), 0.0);
    }

    #[test]
    fn log_ratio_against_fubini_study_density() {
        // 2 log 2 - 1
        let f = RadialFunction::new(2.0, |u| ((1.0 + 2.0 * u) / (1.0 + u)).ln() / (1.0 + u).powi(2)).with_log_factor();
        let v = integrate_halfline(&f, &cfg()).unwrap();
        assert!((v - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-10);
    }

    #[test]
    fn power_family_exact() {
        for k in 2..=6 {
            let f = RadialFunction::new(k as f64, move |u| (1.0 + u).powi(-k));
            for scheme in [Scheme::GaussKronrod, Scheme::TanhSinh] {
                let c = QuadratureConfig { scheme, ..cfg() };
                let v = integrate_halfline(&f, &c).unwrap();
                assert!((v - 1.0 / (k - 1) as f64).abs() < 1e-12, "k={k} {scheme:?} {v}");
            }
        }
    }

    #[test]
    fn compare_entries() {
        let f = RadialFunction::new(3.0, |u| 1.0 / (1.0 + u).powi(3));
        let e = compare_closed_form("half", None, &f, &ExactConstant::frac(1, 2), &cfg()).unwrap();
        assert!(e.pass && e.abs_error < 1e-11);
        let e = compare_closed_form("zero", None, &RadialFunction::zero(), &ExactConstant::zero(), &cfg()).unwrap();
        assert!(e.pass && e.abs_error == 0.0);
        // (1+(n+1)u)/(1+u)^3 = (n+1)/(1+u)^2 - n/(1+u)^3 at n = 2 integrates to 3 - 1 = 2
        let f = RadialFunction::new(2.0, |u| (1.0 + 3.0 * u) / (1.0 + u).powi(3));
        let e = compare_closed_form("n=2", Some(2), &f, &ExactConstant::rational(rat(2, 1)), &cfg()).unwrap();
        assert!(e.pass, "{e:?}");
    }

    #[test]
    fn errors() {
        let slow = RadialFunction::new(1.0, |u| 1.0 / (1.0 + u));
        assert!(matches!(
            integrate_halfline(&slow, &cfg()),
            Err(QuadratureError::NotIntegrable(_))
        ));
        let bad = RadialFunction::new(2.0, |u| if u > 3.0 { f64::NAN } else { 1.0 });
        assert!(matches!(
            integrate_halfline(&bad, &cfg()),
            Err(QuadratureError::Domain { .. })
        ));
        let bad_cfg = QuadratureConfig {
            target_tol: 0.0,
            ..cfg()
        };
        assert!(matches!(
            integrate_halfline(&RadialFunction::zero(), &bad_cfg),
            Err(QuadratureError::InvalidConfig(_))
        ));
        // integrable but too oscillatory for a handful of panels
        let wild = RadialFunction::new(2.0, |u| (200.0 * u).sin() / (1.0 + u).powi(2));
        let tight = QuadratureConfig {
            max_refinement: 8,
            ..cfg()
        };
        assert!(matches!(
            integrate_halfline(&wild, &tight),
            Err(QuadratureError::NonConvergence { .. })
        ));
    }

    #[test]
    fn rescaling_preserves_integral() {
        let f = RadialFunction::new(2.0, |u| 1.0 / (1.0 + u).powi(2) + u / (1.0 + u).powi(4));
        let a = integrate_halfline(&f, &cfg()).unwrap();
        let b = integrate_halfline(&f.rescaled(7.5), &cfg()).unwrap();
        assert!((a - b).abs() < 2e-10);
    }
}
