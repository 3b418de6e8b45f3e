//! Exact radial functions of the invariant `u`.
//!
//! A [`RadialExpr`] on `S_n` is
//!
//! ```text
//!   N0(u) / ((1+u)^p0 (1+c u)^q0)  +  N1(u) / ((1+u)^p1 (1+c u)^q1) * L(u)
//! ```
//!
//! with `c = n + 1`, `L(u) = log((1 + c u)/(1 + u))` and numerator coefficients
//! in [`ExactConstant`]. Every coefficient function of the cataloged forms lives
//! in this class, which is closed under sums, products (up to `L^1`), `d/du`
//! and division by the metric coefficients. For `n = 0` the two linear factors
//! coincide and `L` vanishes identically.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::FormsError;
use crate::constants::{rational_to_f64, ExactConstant};
use crate::radial::RadialFunction;

type Poly = Vec<ExactConstant>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Part {
    /// ascending coefficients, no trailing zeros
    num: Poly,
    p: u32,
    q: u32,
}

impl Part {
    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

/// Exact radial coefficient function on `S_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadialExpr {
    n: u32,
    /// `[rational part, coefficient of L]`
    parts: [Part; 2],
}

fn big(k: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out: Poly = (0..a.len().max(b.len()))
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) | (None, Some(x)) => x.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(&mut out);
    out
}

fn poly_scale(a: &Poly, q: &BigRational) -> Poly {
    let mut out: Poly = a.iter().map(|c| c.scale(q)).collect();
    trim(&mut out);
    out
}

fn poly_mul_rat(a: &Poly, r: &[BigRational]) -> Poly {
    if a.is_empty() || r.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ExactConstant::zero(); a.len() + r.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in r.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x.scale(y);
            }
        }
    }
    trim(&mut out);
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly, FormsError> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = vec![ExactConstant::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x.mul(y)?;
        }
    }
    trim(&mut out);
    Ok(out)
}

fn poly_eval_rat(a: &Poly, r: &BigRational) -> ExactConstant {
    a.iter()
        .rev()
        .fold(ExactConstant::zero(), |acc, c| acc.scale(r) + c.clone())
}

/// Quotient of `a` by `(u - r)`; the caller guarantees `a(r) = 0`.
fn poly_div_root(a: &Poly, r: &BigRational) -> Poly {
    let d = a.len() - 1;
    let mut out = vec![ExactConstant::zero(); d];
    let mut carry = ExactConstant::zero();
    for i in (1..=d).rev() {
        carry = a[i].clone() + carry.scale(r);
        out[i - 1] = carry.clone();
    }
    trim(&mut out);
    out
}

fn poly_deriv(a: &Poly) -> Poly {
    let mut out: Poly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&big(i as u64)))
        .collect();
    trim(&mut out);
    out
}

/// Coefficients of `(1 + c u)^k`.
fn linear_pow(c: &BigRational, k: u32) -> Vec<BigRational> {
    let mut out = vec![BigRational::one()];
    for _ in 0..k {
        let mut next = vec![BigRational::zero(); out.len() + 1];
        for (i, x) in out.iter().enumerate() {
            next[i] += x;
            next[i + 1] += x * c;
        }
        out = next;
    }
    out
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl RadialExpr {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            parts: [Part::default(), Part::default()],
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    fn c(&self) -> BigRational {
        big(self.n as u64 + 1)
    }

    fn merged(&self) -> bool {
        self.n == 0
    }

    pub fn constant(n: u32, v: ExactConstant) -> Self {
        Self::from_parts(n, vec![v], 0, 0, false)
    }

    pub fn rational(n: u32, q: BigRational) -> Self {
        Self::constant(n, ExactConstant::rational(q))
    }

    pub fn int(n: u32, k: i64) -> Self {
        Self::constant(n, ExactConstant::int(k))
    }

    /// `coeff * u^j / ((1+u)^p (1 + c u)^q)`.
    pub fn monomial(n: u32, coeff: BigRational, j: u32, p: u32, q: u32) -> Self {
        let mut num = vec![ExactConstant::zero(); j as usize];
        num.push(ExactConstant::rational(coeff));
        Self::from_parts(n, num, p, q, false)
    }

    pub fn u(n: u32) -> Self {
        Self::monomial(n, BigRational::one(), 1, 0, 0)
    }

    /// `1/(1+u)^k`
    pub fn inv_one_plus_u(n: u32, k: u32) -> Self {
        Self::monomial(n, BigRational::one(), 0, k, 0)
    }

    /// `1/(1 + (n+1) u)^k`
    pub fn inv_one_plus_cu(n: u32, k: u32) -> Self {
        Self::monomial(n, BigRational::one(), 0, 0, k)
    }

    /// `R(u) = (1 + (n+1) u)/(1 + u)`
    pub fn ratio(n: u32) -> Self {
        let c = big(n as u64 + 1);
        Self::from_parts(n, vec![ExactConstant::one(), ExactConstant::rational(c)], 1, 0, false)
    }

    /// `L(u) = log R(u)`
    pub fn log_ratio(n: u32) -> Self {
        Self::from_parts(n, vec![ExactConstant::one()], 0, 0, true)
    }

    fn from_parts(n: u32, mut num: Poly, p: u32, q: u32, log: bool) -> Self {
        trim(&mut num);
        let mut out = Self::zero(n);
        if log && n == 0 {
            return out;
        }
        out.parts[usize::from(log)] = Part { num, p, q };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let c = self.c();
        let merged = self.merged();
        for part in self.parts.iter_mut() {
            if merged {
                part.p += part.q;
                part.q = 0;
            }
            trim(&mut part.num);
            if part.num.is_empty() {
                *part = Part::default();
                continue;
            }
            let minus_one = -BigRational::one();
            while part.p > 0 && poly_eval_rat(&part.num, &minus_one).is_zero() {
                part.num = poly_div_root(&part.num, &minus_one);
                part.p -= 1;
            }
            let root = -c.recip();
            while part.q > 0 && poly_eval_rat(&part.num, &root).is_zero() {
                // N = (u + 1/c) M = (1 + c u) (M / c)
                part.num = poly_scale(&poly_div_root(&part.num, &root), &c.recip());
                part.q -= 1;
            }
        }
        if merged {
            self.parts[1] = Part::default();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Part::is_zero)
    }

    pub fn has_log(&self) -> bool {
        !self.parts[1].is_zero()
    }

    /// The value when the function is a constant.
    pub fn as_constant(&self) -> Option<ExactConstant> {
        let p = &self.parts[0];
        if self.has_log() {
            return None;
        }
        match p.num.len() {
            0 => Some(ExactConstant::zero()),
            1 if p.p == 0 && p.q == 0 => Some(p.num[0].clone()),
            _ => None,
        }
    }

    /// True when every numerator coefficient is rational.
    pub fn is_rational_valued(&self) -> bool {
        self.parts.iter().all(|p| p.num.iter().all(ExactConstant::is_rational))
    }

    fn combine(a: &Part, b: &Part, c: &BigRational) -> Part {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let p = a.p.max(b.p);
        let q = a.q.max(b.q);
        let lift = |x: &Part| {
            let f = rat_poly_mul(&linear_pow(&BigRational::one(), p - x.p), &linear_pow(c, q - x.q));
            poly_mul_rat(&x.num, &f)
        };
        Part {
            num: poly_add(&lift(a), &lift(b)),
            p,
            q,
        }
    }

    fn check_same_ruling(&self, other: &Self) {
        assert_eq!(self.n, other.n, "radial expressions on different surfaces");
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for part in out.parts.iter_mut() {
            part.num = poly_scale(&part.num, q);
        }
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Multiplication by a constant, subject to the linearity contract of
    /// [`ExactConstant::mul`].
    pub fn scale_exact(&self, v: &ExactConstant) -> Result<Self, FormsError> {
        self.try_mul(&Self::constant(self.n, v.clone()))
    }

    /// Product; fails on `L^2` or on products of transcendental coefficients.
    pub fn try_mul(&self, other: &Self) -> Result<Self, FormsError> {
        self.check_same_ruling(other);
        let c = self.c();
        let mut out = Self::zero(self.n);
        for (i, a) in self.parts.iter().enumerate() {
            for (j, b) in other.parts.iter().enumerate() {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if i + j > 1 {
                    return Err(FormsError::NonLinear(format!("({self}) * ({other}) contains log(R)^2")));
                }
                let prod = Part {
                    num: poly_mul(&a.num, &b.num)?,
                    p: a.p + b.p,
                    q: a.q + b.q,
                };
                out.parts[i + j] = Self::combine(&out.parts[i + j], &prod, &c);
            }
        }
        out.normalize();
        Ok(out)
    }

    /// Product with a log-free rational-valued factor, which never fails.
    pub fn mul_rational_expr(&self, r: &Self) -> Self {
        assert!(
            r.is_rational_valued() && !r.has_log(),
            "mul_rational_expr needs a log-free rational factor, got {r}"
        );
        self.try_mul(r).expect("product with a rational factor")
    }

    /// `d/du`.
    pub fn derivative(&self) -> Self {
        let c = self.c();
        let mut out = Self::zero(self.n);
        for (k, part) in self.parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            // (N (1+u)^-p (1+cu)^-q)' over (1+u)^(p+1) (1+cu)^(q+1):
            //   N' (1+u)(1+cu) - p N (1+cu) - q c N (1+u)
            let one_u = [BigRational::one(), BigRational::one()];
            let one_cu = [BigRational::one(), c.clone()];
            let t1 = poly_mul_rat(&poly_deriv(&part.num), &rat_poly_mul(&one_u, &one_cu));
            let t2 = poly_mul_rat(
                &part.num,
                &one_cu.iter().map(|x| x * big(part.p as u64)).collect::<Vec<_>>(),
            );
            let t3 = poly_mul_rat(
                &part.num,
                &one_u.iter().map(|x| x * &c * big(part.q as u64)).collect::<Vec<_>>(),
            );
            let num = poly_add(&t1, &poly_scale(&poly_add(&t2, &t3), &-BigRational::one()));
            let d = Part {
                num,
                p: part.p + 1,
                q: part.q + 1,
            };
            out.parts[k] = Self::combine(&out.parts[k], &d, &c);
            if k == 1 {
                // N/D * L' with L' = (c - 1)/((1+u)(1+cu))
                let extra = Part {
                    num: poly_scale(&part.num, &(&c - BigRational::one())),
                    p: part.p + 1,
                    q: part.q + 1,
                };
                out.parts[0] = Self::combine(&out.parts[0], &extra, &c);
            }
        }
        out.normalize();
        out
    }

    /// Numerical value at `u >= 0`, stable for very large `u`.
    pub fn eval(&self, u: f64) -> f64 {
        FloatExpr::from(self).eval(u)
    }

    /// Decay exponent `d` with `f(u) = O(u^-d)` (up to a log factor).
    pub fn decay_order(&self) -> f64 {
        self.parts
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| (p.p + p.q) as f64 - (p.num.len() as f64 - 1.0))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn to_radial_function(&self) -> RadialFunction {
        let fe = FloatExpr::from(self);
        let f = RadialFunction::new(self.decay_order(), move |u| fe.eval(u));
        if self.has_log() {
            f.with_log_factor()
        } else {
            f
        }
    }

    /// `int_0^inf f(u) du` in closed form.
    pub fn integrate_exact(&self) -> Result<ExactConstant, FormsError> {
        let c = self.c();
        let mut total = ExactConstant::zero();
        let rational = &self.parts[0];
        if !rational.is_zero() {
            let pf = partial_fractions(rational, &c)?;
            pf.check_convergent(self)?;
            total += pf.rational_integral(&c, self.merged())?;
        }
        let logp = &self.parts[1];
        if !logp.is_zero() {
            let pf = partial_fractions(logp, &c)?;
            pf.check_convergent(self)?;
            if !pf.a.first().is_none_or(ExactConstant::is_zero) {
                return Err(FormsError::NonLinear(format!("int ({self}) du produces log(n+1)^2")));
            }
            for (k, ak) in pf.a.iter().enumerate().skip(1) {
                if !ak.is_zero() {
                    total += ak.mul(&self.log_kernel(Factor::One, k as u32 + 1)?)?;
                }
            }
            for (k, bk) in pf.b.iter().enumerate().skip(1) {
                if !bk.is_zero() {
                    total += bk.mul(&self.log_kernel(Factor::C, k as u32 + 1)?)?;
                }
            }
        }
        Ok(total)
    }

    /// `int_0^inf L(u) / (1 + a u)^k du` for `k >= 2`, as
    /// `J(c, a, k) - J(1, a, k)` with
    /// `J(b, a, k) = b/(a(k-1)) int du / ((1 + b u)(1 + a u)^(k-1))`
    /// (integration by parts, boundary terms vanish).
    fn log_kernel(&self, a: Factor, k: u32) -> Result<ExactConstant, FormsError> {
        let j = |b: Factor| -> Result<ExactConstant, FormsError> {
            let (mut p, mut q) = (0, 0);
            match b {
                Factor::One => p += 1,
                Factor::C => q += 1,
            }
            match a {
                Factor::One => p += k - 1,
                Factor::C => q += k - 1,
            }
            let inner = Self::monomial(self.n, BigRational::one(), 0, p, q).integrate_exact()?;
            let factor = b.value(&self.c()) / (a.value(&self.c()) * big(k as u64 - 1));
            Ok(inner.scale(&factor))
        };
        Ok(j(Factor::C)? - j(Factor::One)?)
    }
}

#[derive(Clone, Copy)]
enum Factor {
    One,
    C,
}

impl Factor {
    fn value(&self, c: &BigRational) -> BigRational {
        match self {
            Factor::One => BigRational::one(),
            Factor::C => c.clone(),
        }
    }
}

/// `N/((1+u)^p (1+cu)^q) = S(u) + sum a_k/(1+u)^k + sum b_k/(1+cu)^k`.
struct PartialFractions {
    poly: Poly,
    /// `a[k-1]` multiplies `1/(1+u)^k`
    a: Vec<ExactConstant>,
    b: Vec<ExactConstant>,
}

impl PartialFractions {
    fn check_convergent(&self, expr: &RadialExpr) -> Result<(), FormsError> {
        if self.poly.iter().any(|s| !s.is_zero()) {
            return Err(FormsError::Divergent(format!("{expr} has polynomial growth")));
        }
        let c = expr.c();
        let a1 = self.a.first().cloned().unwrap_or_default();
        let b1 = self.b.first().cloned().unwrap_or_default();
        if !(a1 + b1.scale(&c.recip())).is_zero() {
            return Err(FormsError::Divergent(format!("{expr} decays like 1/u")));
        }
        Ok(())
    }

    fn rational_integral(&self, c: &BigRational, merged: bool) -> Result<ExactConstant, FormsError> {
        let mut total = ExactConstant::zero();
        for (k, ak) in self.a.iter().enumerate().skip(1) {
            total += ak.scale(&big(k as u64).recip());
        }
        for (k, bk) in self.b.iter().enumerate().skip(1) {
            total += bk.scale(&(c * big(k as u64)).recip());
        }
        if let Some(a1) = self.a.first() {
            if !a1.is_zero() {
                debug_assert!(!merged);
                // a1 (1/(1+u) - c/(1+cu)) integrates to -a1 log c
                total -= a1.mul(&ExactConstant::log_rational(c)?)?;
            }
        }
        Ok(total)
    }
}

fn partial_fractions(part: &Part, c: &BigRational) -> Result<PartialFractions, FormsError> {
    let (p, q) = (part.p as usize, part.q as usize);
    let d = part.num.len() - 1;
    let ms = (d + 1).saturating_sub(p + q);
    let m = ms + p + q;
    let one = BigRational::one();
    // columns of the linear system, as polynomials of degree < m
    let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(m);
    let base = rat_poly_mul(&linear_pow(&one, part.p), &linear_pow(c, part.q));
    for i in 0..ms {
        let mut col = vec![BigRational::zero(); i];
        col.extend(base.iter().cloned());
        cols.push(col);
    }
    for k in 1..=p {
        cols.push(rat_poly_mul(&linear_pow(&one, (p - k) as u32), &linear_pow(c, part.q)));
    }
    for k in 1..=q {
        cols.push(rat_poly_mul(&linear_pow(&one, part.p), &linear_pow(c, (q - k) as u32)));
    }
    let mut mat = vec![vec![BigRational::zero(); m]; m];
    for (j, col) in cols.iter().enumerate() {
        for (i, v) in col.iter().enumerate() {
            mat[i][j] = v.clone();
        }
    }
    let inv = invert(mat).ok_or_else(|| FormsError::Divergent("singular partial-fraction system".into()))?;
    let rhs = |i: usize| part.num.get(i).cloned().unwrap_or_default();
    let sol: Vec<ExactConstant> = (0..m)
        .map(|i| {
            (0..m)
                .filter(|&j| !inv[i][j].is_zero())
                .map(|j| rhs(j).scale(&inv[i][j]))
                .sum()
        })
        .collect();
    Ok(PartialFractions {
        poly: sol[..ms].to_vec(),
        a: sol[ms..ms + p].to_vec(),
        b: sol[ms + p..].to_vec(),
    })
}

/// Gauss-Jordan inverse over the rationals.
fn invert(mut a: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let m = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].recip();
        for j in 0..m {
            a[col][j] = &a[col][j] * &pv;
            inv[col][j] = &inv[col][j] * &pv;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..m {
                    let t = &a[col][j] * &f;
                    a[r][j] -= t;
                    let t = &inv[col][j] * &f;
                    inv[r][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Float snapshot of a [`RadialExpr`] for repeated evaluation.
#[derive(Debug, Clone)]
struct FloatExpr {
    c: f64,
    parts: [(Vec<f64>, i32, i32); 2],
}

impl From<&RadialExpr> for FloatExpr {
    fn from(e: &RadialExpr) -> Self {
        let conv = |p: &Part| {
            (
                p.num.iter().map(ExactConstant::to_float).collect(),
                p.p as i32,
                p.q as i32,
            )
        };
        Self {
            c: rational_to_f64(&e.c()),
            parts: [conv(&e.parts[0]), conv(&e.parts[1])],
        }
    }
}

impl FloatExpr {
    fn eval_part(&self, (num, p, q): &(Vec<f64>, i32, i32), u: f64) -> f64 {
        if num.is_empty() {
            return 0.0;
        }
        let c = self.c;
        if u <= 1.0 {
            let n = num.iter().rev().fold(0.0, |acc, x| acc * u + x);
            n / ((1.0 + u).powi(*p) * (1.0 + c * u).powi(*q))
        } else {
            // N(u)/D(u) = u^(d-p-q) * sum a_i v^(d-i) / ((1+v)^p (c+v)^q), v = 1/u
            let v = 1.0 / u;
            let d = num.len() as i32 - 1;
            let n = num.iter().fold(0.0, |acc, x| acc * v + x);
            u.powi(d - p - q) * n / ((1.0 + v).powi(*p) * (c + v).powi(*q))
        }
    }

    fn eval(&self, u: f64) -> f64 {
        let r = self.eval_part(&self.parts[0], u);
        if self.parts[1].0.is_empty() {
            return r;
        }
        let l = ((self.c - 1.0) * u / (1.0 + u)).ln_1p();
        r + self.eval_part(&self.parts[1], u) * l
    }
}

impl Add for RadialExpr {
    type Output = RadialExpr;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<'a> Add<&'a RadialExpr> for &'a RadialExpr {
    type Output = RadialExpr;
    fn add(self, rhs: &RadialExpr) -> RadialExpr {
        self.check_same_ruling(rhs);
        let c = self.c();
        let mut out = RadialExpr::zero(self.n);
        for k in 0..2 {
            out.parts[k] = RadialExpr::combine(&self.parts[k], &rhs.parts[k], &c);
        }
        out.normalize();
        out
    }
}

impl Neg for RadialExpr {
    type Output = RadialExpr;
    fn neg(self) -> Self {
        self.scale(&-BigRational::one())
    }
}

impl Sub for RadialExpr {
    type Output = RadialExpr;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<'a> Sub<&'a RadialExpr> for &'a RadialExpr {
    type Output = RadialExpr;
    fn sub(self, rhs: &RadialExpr) -> RadialExpr {
        self + &rhs.scale(&-BigRational::one())
    }
}

impl fmt::Display for RadialExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let c = self.n + 1;
        let mut first = true;
        for (k, part) in self.parts.iter().enumerate() {
            if part.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let terms: Vec<String> = part
                .num
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| {
                    let coef = if x.iter().count() > 1 || x.iter().any(|(_, q)| q.is_negative()) {
                        format!("({x})")
                    } else {
                        x.to_string()
                    };
                    match i {
                        0 => coef,
                        1 => format!("{coef}*u"),
                        _ => format!("{coef}*u^{i}"),
                    }
                })
                .collect();
            write!(f, "[{}]", terms.join(" + "))?;
            if part.p > 0 {
                write!(f, "/(1+u)^{}", part.p)?;
            }
            if part.q > 0 {
                write!(f, "/(1+{c}u)^{}", part.q)?;
            }
            if k == 1 {
                f.write_str("*L")?;
            }
        }
        Ok(())
    }
}
