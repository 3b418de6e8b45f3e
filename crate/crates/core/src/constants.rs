//! Exact arithmetic in the rational vector space spanned by the transcendental
//! constants that appear in torsion and height formulas: `1`, `log pi`,
//! `log p` for primes `p`, `zeta'(-1)` and `zeta(-1)`.
//!
//! Atoms are treated as linearly independent over the rationals, so equality
//! of two [`ExactConstant`]s is coefficient-wise equality of their normal forms.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `log(pi)` to 50 significant digits.
pub const LOG_PI_REF: &str = "1.1447298858494001741434273513530587116472948129153";
/// `zeta'(-1)` to 42 significant digits.
pub const ZETA_PRIME_M1_REF: &str = "-0.165421143700450929213919660242780642764";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("log of a non-positive rational {0}")]
    Domain(String),
    #[error("product of transcendental constants ({lhs}) * ({rhs}) is outside the linear span")]
    NonLinearProduct { lhs: String, rhs: String },
    #[error("prime factor {0} does not fit a 64-bit atom")]
    PrimeTooLarge(String),
    #[error("cannot parse exact constant: {0}")]
    Parse(String),
}

/// One basis element of the constant space.
///
/// The derived order is the canonical order used by normal forms and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstantAtom {
    One,
    LogPi,
    /// `log p` for a prime `p >= 2`.
    LogPrime(u64),
    ZetaPrimeMinus1,
    ZetaMinus1,
}

impl ConstantAtom {
    /// Checked constructor for prime-log atoms.
    pub fn log_prime(p: u64) -> Result<Self, ConstantsError> {
        if is_prime(p) {
            Ok(ConstantAtom::LogPrime(p))
        } else {
            Err(ConstantsError::Domain(format!("{p} is not prime")))
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            ConstantAtom::One => 1.0,
            ConstantAtom::LogPi => LOG_PI_REF.parse().expect("reference constant"),
            ConstantAtom::LogPrime(p) => (*p as f64).ln(),
            ConstantAtom::ZetaPrimeMinus1 => ZETA_PRIME_M1_REF.parse().expect("reference constant"),
            ConstantAtom::ZetaMinus1 => -1.0 / 12.0,
        }
    }

    pub fn symbol(&self) -> String {
        match self {
            ConstantAtom::One => "1".to_string(),
            ConstantAtom::LogPi => "log(pi)".to_string(),
            ConstantAtom::LogPrime(p) => format!("log({p})"),
            ConstantAtom::ZetaPrimeMinus1 => "zeta'(-1)".to_string(),
            ConstantAtom::ZetaMinus1 => "zeta(-1)".to_string(),
        }
    }

    /// Human-readable reference value as stored (string data for the
    /// transcendental atoms, `-1/12` for `zeta(-1)`).
    pub fn reference(&self) -> String {
        match self {
            ConstantAtom::One => "1".to_string(),
            ConstantAtom::LogPi => LOG_PI_REF.to_string(),
            ConstantAtom::LogPrime(p) => format!("{:.17e}", (*p as f64).ln()),
            ConstantAtom::ZetaPrimeMinus1 => ZETA_PRIME_M1_REF.to_string(),
            ConstantAtom::ZetaMinus1 => "-1/12".to_string(),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite rational combination of [`ConstantAtom`]s in normal form
/// (no zero coefficients are stored).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactConstant {
    coeffs: BTreeMap<ConstantAtom, BigRational>,
}

pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ExactConstant {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        Self::atom_times(ConstantAtom::One, q)
    }

    pub fn int(k: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::rational(rat(num, den))
    }

    pub fn atom(a: ConstantAtom) -> Self {
        Self::atom_times(a, BigRational::one())
    }

    pub fn atom_times(a: ConstantAtom, q: BigRational) -> Self {
        let mut c = Self::zero();
        if !q.is_zero() {
            c.coeffs.insert(a, q);
        }
        c
    }

    pub fn log_pi() -> Self {
        Self::atom(ConstantAtom::LogPi)
    }

    pub fn zeta_prime_m1() -> Self {
        Self::atom(ConstantAtom::ZetaPrimeMinus1)
    }

    pub fn zeta_m1() -> Self {
        Self::atom(ConstantAtom::ZetaMinus1)
    }

    /// `log(2 pi) = log 2 + log pi`.
    pub fn log_two_pi() -> Self {
        Self::atom(ConstantAtom::LogPrime(2)) + Self::log_pi()
    }

    /// `log` of a positive integer.
    pub fn log_int(k: u64) -> Result<Self, ConstantsError> {
        Self::log_rational(&BigRational::from_integer(BigInt::from(k)))
    }

    /// `log q` decomposed over prime-log atoms.
    pub fn log_rational(q: &BigRational) -> Result<Self, ConstantsError> {
        if !q.is_positive() {
            return Err(ConstantsError::Domain(q.to_string()));
        }
        let mut out = Self::zero();
        for (p, e) in factorize(q.numer().magnitude())? {
            out += Self::atom_times(ConstantAtom::LogPrime(p), BigRational::from_integer(e.into()));
        }
        for (p, e) in factorize(q.denom().magnitude())? {
            out -= Self::atom_times(ConstantAtom::LogPrime(p), BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: ConstantAtom) -> BigRational {
        self.coeffs.get(&a).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ConstantAtom, &BigRational)> {
        self.coeffs.iter()
    }

    /// The rational value if only the `ONE` atom is present.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => self.coeffs.get(&ConstantAtom::One).cloned(),
            _ => None,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(a, c)| (*a, c * q)).collect(),
        }
    }

    /// Product, defined only when one side is rational.
    pub fn mul(&self, other: &Self) -> Result<Self, ConstantsError> {
        if let Some(q) = self.as_rational() {
            Ok(other.scale(&q))
        } else if let Some(q) = other.as_rational() {
            Ok(self.scale(&q))
        } else {
            Err(ConstantsError::NonLinearProduct {
                lhs: self.to_string(),
                rhs: other.to_string(),
            })
        }
    }

    pub fn to_float(&self) -> f64 {
        self.coeffs.iter().map(|(a, c)| rational_to_f64(c) * a.value()).sum()
    }

    /// `zeta(-1)` replaced by its rational value `-1/12`.
    pub fn fold_zeta_m1(&self) -> Self {
        let mut out = self.clone();
        if let Some(c) = out.coeffs.remove(&ConstantAtom::ZetaMinus1) {
            out += Self::rational(c * rat(-1, 12));
        }
        out
    }

    /// Canonical text. With `fold_tau` the multiple of `tau_P1` carried by the
    /// `zeta'(-1)` coefficient is pulled out as a named symbol when the
    /// remainder is free of zeta atoms.
    pub fn display_with(&self, fold_tau: bool) -> String {
        if fold_tau {
            let k = self.coeff(ConstantAtom::ZetaPrimeMinus1) * rat(-1, 4);
            if !k.is_zero() {
                let rest = self.clone() - tau_p1_value().scale(&k);
                if rest.coeff(ConstantAtom::ZetaPrimeMinus1).is_zero() && rest.coeff(ConstantAtom::ZetaMinus1).is_zero()
                {
                    let mut terms = rest.terms();
                    terms.push((k, "tau_P1".to_string()));
                    return join_terms(&terms);
                }
            }
        }
        join_terms(&self.terms())
    }

    fn terms(&self) -> Vec<(BigRational, String)> {
        self.coeffs
            .iter()
            .map(|(a, c)| {
                (
                    c.clone(),
                    if *a == ConstantAtom::One {
                        String::new()
                    } else {
                        a.symbol()
                    },
                )
            })
            .collect()
    }
}

/// `tau(P^1) = (1 + log 2pi)/3 - 4 zeta'(-1) - 2 zeta(-1)`, used only for
/// display folding. The pipelines derive this value independently.
fn tau_p1_value() -> ExactConstant {
    (ExactConstant::one() + ExactConstant::log_two_pi()).scale(&rat(1, 3))
        - ExactConstant::zeta_prime_m1().scale(&rat(4, 1))
        - ExactConstant::zeta_m1().scale(&rat(2, 1))
}

fn join_terms(terms: &[(BigRational, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, sym)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if sym.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(sym);
        } else {
            out.push_str(&format!("{mag}*{sym}"));
        }
    }
    out
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // huge operands: shift both to a comparable size first
    let shift = q.denom().bits().max(q.numer().bits()).saturating_sub(900);
    let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

pub fn parse_rational(s: &str) -> Result<BigRational, ConstantsError> {
    let s = s.trim();
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| ConstantsError::Parse(s.to_string()))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(ConstantsError::Parse(s.to_string()));
            }
            Ok(BigRational::new(parse_int(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

fn factorize(n: &BigUint) -> Result<Vec<(u64, u32)>, ConstantsError> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0u32;
        loop {
            let (q, r) = n.div_rem(&d);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((big_to_u64(&d)?, e));
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push((big_to_u64(&n)?, 1));
    }
    Ok(out)
}

fn big_to_u64(n: &BigUint) -> Result<u64, ConstantsError> {
    n.to_u64().ok_or_else(|| ConstantsError::PrimeTooLarge(n.to_string()))
}

impl fmt::Display for ExactConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(false))
    }
}

impl Add for ExactConstant {
    type Output = ExactConstant;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<'a> Add<&'a ExactConstant> for &'a ExactConstant {
    type Output = ExactConstant;
    fn add(self, rhs: &ExactConstant) -> ExactConstant {
        self.clone() + rhs.clone()
    }
}

impl AddAssign for ExactConstant {
    fn add_assign(&mut self, rhs: Self) {
        for (a, c) in rhs.coeffs {
            let slot = self.coeffs.entry(a).or_insert_with(BigRational::zero);
            *slot += c;
            if slot.is_zero() {
                self.coeffs.remove(&a);
            }
        }
    }
}

impl Neg for ExactConstant {
    type Output = ExactConstant;
    fn neg(self) -> Self {
        Self {
            coeffs: self.coeffs.into_iter().map(|(a, c)| (a, -c)).collect(),
        }
    }
}

impl Sub for ExactConstant {
    type Output = ExactConstant;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<'a> Sub<&'a ExactConstant> for &'a ExactConstant {
    type Output = ExactConstant;
    fn sub(self, rhs: &ExactConstant) -> ExactConstant {
        self.clone() - rhs.clone()
    }
}

impl SubAssign for ExactConstant {
    fn sub_assign(&mut self, rhs: Self) {
        *self += -rhs;
    }
}

impl std::iter::Sum for ExactConstant {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl From<BigRational> for ExactConstant {
    fn from(q: BigRational) -> Self {
        Self::rational(q)
    }
}

// JSON: {"rational": "a/b", "log_atoms": {"pi": "a/b", "2": "a/b", ...},
//        "zeta_prime_m1": "a/b", "zeta_m1": "a/b"}
struct LogAtoms<'a>(&'a ExactConstant);

impl Serialize for LogAtoms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let logs: Vec<_> = self
            .0
            .coeffs
            .iter()
            .filter_map(|(a, c)| match a {
                ConstantAtom::LogPi => Some(("pi".to_string(), c)),
                ConstantAtom::LogPrime(p) => Some((p.to_string(), c)),
                _ => None,
            })
            .collect();
        let mut map = s.serialize_map(Some(logs.len()))?;
        for (k, c) in logs {
            map.serialize_entry(&k, &c.to_string())?;
        }
        map.end()
    }
}

impl Serialize for ExactConstant {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("rational", &self.coeff(ConstantAtom::One).to_string())?;
        map.serialize_entry("log_atoms", &LogAtoms(self))?;
        map.serialize_entry("zeta_prime_m1", &self.coeff(ConstantAtom::ZetaPrimeMinus1).to_string())?;
        map.serialize_entry("zeta_m1", &self.coeff(ConstantAtom::ZetaMinus1).to_string())?;
        map.end()
    }
}

#[derive(Deserialize)]
struct ExactConstantRepr {
    rational: String,
    #[serde(default)]
    log_atoms: BTreeMap<String, String>,
    zeta_prime_m1: String,
    zeta_m1: String,
}

impl<'de> Deserialize<'de> for ExactConstant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ExactConstantRepr::deserialize(d)?;
        let q = |s: &str| parse_rational(s).map_err(de::Error::custom);
        let mut out = ExactConstant::rational(q(&repr.rational)?);
        for (k, v) in &repr.log_atoms {
            let atom = if k == "pi" {
                ConstantAtom::LogPi
            } else {
                let p: u64 = k.parse().map_err(|_| de::Error::custom(format!("bad log atom {k}")))?;
                ConstantAtom::log_prime(p).map_err(de::Error::custom)?
            };
            out += ExactConstant::atom_times(atom, q(v)?);
        }
        out += ExactConstant::atom_times(ConstantAtom::ZetaPrimeMinus1, q(&repr.zeta_prime_m1)?);
        out += ExactConstant::atom_times(ConstantAtom::ZetaMinus1, q(&repr.zeta_m1)?);
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log(p: u64) -> ExactConstant {
        ExactConstant::atom(ConstantAtom::LogPrime(p))
    }

    fn tau_p1() -> ExactConstant {
        tau_p1_value()
    }

    #[test]
    fn add_examples() {
        assert_eq!(log(2) + log(2), log(2).scale(&rat(2, 1)));
        let doubled = (ExactConstant::int(2) + ExactConstant::log_two_pi().scale(&rat(2, 1))).scale(&rat(1, 3))
            - ExactConstant::zeta_prime_m1().scale(&rat(8, 1))
            - ExactConstant::zeta_m1().scale(&rat(4, 1));
        assert_eq!(tau_p1() + tau_p1(), doubled);
        assert_eq!(ExactConstant::log_two_pi() + (-ExactConstant::log_pi()), log(2));
    }

    #[test]
    fn scale_examples() {
        assert!(tau_p1().scale(&rat(0, 1)).is_zero());
        let n = 3u64;
        let term = ExactConstant::log_int(n + 1).unwrap().scale(&rat(n as i64, 1));
        assert_eq!(term.scale(&rat(1, 24)), log(2).scale(&rat(1, 4)));
        let v = ExactConstant::int(16) + ExactConstant::log_two_pi().scale(&rat(16, 1));
        assert_eq!(
            v.scale(&rat(1, 2)),
            ExactConstant::int(8) + log(2).scale(&rat(8, 1)) + ExactConstant::log_pi().scale(&rat(8, 1))
        );
    }

    #[test]
    fn log_rational_examples() {
        assert!(ExactConstant::log_rational(&rat(1, 1)).unwrap().is_zero());
        assert_eq!(ExactConstant::log_rational(&rat(3, 2)).unwrap(), log(3) - log(2));
        assert_eq!(
            ExactConstant::log_rational(&rat(4, 1)).unwrap(),
            log(2).scale(&rat(2, 1))
        );
        assert!(matches!(
            ExactConstant::log_rational(&rat(0, 1)),
            Err(ConstantsError::Domain(_))
        ));
        assert!(matches!(
            ExactConstant::log_rational(&rat(-3, 2)),
            Err(ConstantsError::Domain(_))
        ));
    }

    #[test]
    fn to_float_examples() {
        assert_eq!(ExactConstant::zero().to_float(), 0.0);
        assert_eq!(ExactConstant::zeta_m1().to_float(), -1.0 / 12.0);
        // (1 + log 2pi)/3 - 4 zeta'(-1) - 2 zeta(-1) = 1.77431026360491887804...
        assert!((tau_p1().to_float() - 1.774_310_263_604_918_9).abs() < 1e-14);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ExactConstant::int(2).mul(&log(3)).unwrap(), log(3).scale(&rat(2, 1)));
        assert!(matches!(
            log(2).mul(&log(3)),
            Err(ConstantsError::NonLinearProduct { .. })
        ));
        assert!(ExactConstant::zero()
            .mul(&ExactConstant::zeta_prime_m1())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn prime_atoms_only() {
        assert!(ConstantAtom::log_prime(4).is_err());
        assert!(ConstantAtom::log_prime(1).is_err());
        assert!(ConstantAtom::log_prime(13).is_ok());
    }

    #[test]
    fn display_forms() {
        let v = log(2).scale(&rat(1, 24)) - ExactConstant::frac(1, 6) + tau_p1().scale(&rat(2, 1));
        assert_eq!(v.display_with(true), "-1/6 + 1/24*log(2) + 2*tau_P1");
        assert_eq!(ExactConstant::zero().to_string(), "0");
        assert_eq!((-log(3)).to_string(), "-log(3)");
    }

    #[test]
    fn json_shape() {
        let v = ExactConstant::frac(1, 3) + ExactConstant::log_two_pi().scale(&rat(1, 3))
            - ExactConstant::zeta_prime_m1().scale(&rat(4, 1));
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["rational"], "1/3");
        assert_eq!(j["log_atoms"]["pi"], "1/3");
        assert_eq!(j["log_atoms"]["2"], "1/3");
        assert_eq!(j["zeta_prime_m1"], "-4");
        assert_eq!(j["zeta_m1"], "0");
        let back: ExactConstant = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
    }
}
