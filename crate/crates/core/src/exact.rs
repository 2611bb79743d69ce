//! Exact scalars of the form `q · π^k · √s`.
//!
//! `q` is an arbitrary-precision rational, `k ≥ 0` and `s ≥ 1` is square-free.
//! Closed under multiplication, and under division while the power of π stays
//! non-negative. No addition.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{LocusError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    q: BigRational,
    pi_pow: u32,
    radicand: BigUint,
}

impl ExactScalar {
    /// Builds `q · π^pi_pow · √radicand`, extracting square factors of the
    /// radicand into `q`.
    pub fn new(q: BigRational, pi_pow: u32, radicand: u64) -> Self {
        if radicand == 0 {
            return Self::zero();
        }
        let (outside, inside) = split_square_part(radicand);
        Self::from_parts(
            q * BigRational::from_integer(BigInt::from(outside)),
            pi_pow,
            BigUint::from(inside),
        )
    }

    fn from_parts(q: BigRational, pi_pow: u32, radicand: BigUint) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self {
                q,
                pi_pow,
                radicand,
            }
        }
    }

    pub fn zero() -> Self {
        Self {
            q: BigRational::zero(),
            pi_pow: 0,
            radicand: BigUint::one(),
        }
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn integer(value: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_parts(q, 0, BigUint::one())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `π^k`.
    pub fn pi_power(k: u32) -> Self {
        Self::from_parts(BigRational::one(), k, BigUint::one())
    }

    /// `√n`.
    pub fn sqrt(n: u64) -> Self {
        Self::new(BigRational::one(), 0, n)
    }

    /// `√r` for a non-negative rational `r = a/b`, written as `√(ab)/b`.
    /// Returns `None` when `r < 0` or when `ab` does not fit in 64 bits.
    pub fn sqrt_rational(r: &BigRational) -> Option<Self> {
        if r.is_negative() {
            return None;
        }
        let product = (r.numer() * r.denom()).to_u64()?;
        let den = BigRational::from_integer(r.denom().clone());
        Some(Self::new(BigRational::one() / den, 0, product))
    }

    /// `n!` as an exact integer.
    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for i in 2..=n {
            acc *= i;
        }
        Self::rational(BigRational::from_integer(acc))
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn pi_pow(&self) -> u32 {
        self.pi_pow
    }

    pub fn radicand(&self) -> &BigUint {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.q.is_positive()
    }

    /// Re-establishes the canonical form. Values built through the public API
    /// are always canonical; this exists for values assembled from raw parts.
    pub fn normalize(&self) -> Self {
        if self.q.is_zero() {
            return Self::zero();
        }
        match self.radicand.to_u64() {
            Some(s) => Self::new(self.q.clone(), self.pi_pow, s),
            // Large radicands only arise as products of square-free factors,
            // which `mul` keeps square-free.
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // For square-free a, b with g = gcd(a, b): ab = g² · (a/g)(b/g), and
        // (a/g)(b/g) is again square-free.
        let g = self.radicand.gcd(&other.radicand);
        let radicand = (&self.radicand / &g) * (&other.radicand / &g);
        let q = &self.q * &other.q * BigRational::from_integer(BigInt::from_biguint(Sign::Plus, g));
        Self::from_parts(q, self.pi_pow + other.pi_pow, radicand)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(LocusError::DivisionByZero);
        }
        if self.pi_pow < other.pi_pow {
            return Err(LocusError::NegativePiPower(
                self.pi_pow as i64 - other.pi_pow as i64,
            ));
        }
        // 1/(q π^k √s) = (1/(q s)) π^{-k} √s
        let s = BigRational::from_integer(BigInt::from_biguint(Sign::Plus, other.radicand.clone()));
        let inverse = Self::from_parts(
            BigRational::one() / (&other.q * s),
            0,
            other.radicand.clone(),
        );
        let mut out = self.mul(&inverse);
        out.pi_pow = self.pi_pow - other.pi_pow;
        Ok(out.canonical_zero())
    }

    fn canonical_zero(self) -> Self {
        if self.q.is_zero() {
            Self::zero()
        } else {
            self
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        self.mul(&Self::rational(factor.clone()))
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let sign = if self.q.is_negative() { -1.0 } else { 1.0 };
        let mut acc = Scaled::from_rational(&self.q.abs());
        acc.mul_f64(std::f64::consts::PI, self.pi_pow);
        acc.mul_scaled(&Scaled::from_biguint(&self.radicand).sqrt());
        sign * acc.value()
    }

    pub fn ln(&self) -> Result<f64> {
        if !self.q.is_positive() {
            return Err(LocusError::NonPositiveLog);
        }
        let q = Scaled::from_rational(&self.q);
        let s = Scaled::from_biguint(&self.radicand);
        Ok(q.ln() + self.pi_pow as f64 * std::f64::consts::PI.ln() + 0.5 * s.ln())
    }

    /// Decimal rendering with 15 significant digits; stays finite for values
    /// beyond the `f64` range by going through the logarithm.
    pub fn decimal(&self) -> String {
        let value = self.to_f64();
        if value == 0.0 || (value.is_finite() && value.abs() >= f64::MIN_POSITIVE) {
            return format!("{value:.14e}");
        }
        let sign = if self.q.is_negative() { "-" } else { "" };
        let log10 = self.abs().ln().expect("non-zero") / std::f64::consts::LN_10;
        let exponent = log10.floor();
        let mantissa = 10f64.powf(log10 - exponent);
        format!("{sign}{mantissa:.14}e{exponent}")
    }

    fn abs(&self) -> Self {
        Self {
            q: self.q.abs(),
            pi_pow: self.pi_pow,
            radicand: self.radicand.clone(),
        }
    }
}

impl std::ops::Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        ExactScalar::mul(&self, &rhs)
    }
}

impl<'a> std::ops::Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &'a ExactScalar) -> ExactScalar {
        ExactScalar::mul(self, rhs)
    }
}

impl std::iter::Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| acc.mul(&x))
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        let bare = self.pi_pow == 0 && self.radicand.is_one();
        if !self.q.is_one() || bare {
            if self.q.denom().is_one() {
                parts.push(self.q.numer().to_string());
            } else {
                parts.push(format!("({}/{})", self.q.numer(), self.q.denom()));
            }
        }
        if !self.radicand.is_one() {
            parts.push(format!("√{}", self.radicand));
        }
        match self.pi_pow {
            0 => {}
            1 => parts.push("π".to_string()),
            k => parts.push(format!("π^{k}")),
        }
        write!(f, "{}", parts.join("·"))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RadicandRepr {
    Small(u64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct ExactRepr {
    q: String,
    pi_pow: u32,
    sqrt: RadicandRepr,
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let sqrt = match self.radicand.to_u64() {
            Some(s) => RadicandRepr::Small(s),
            None => RadicandRepr::Big(self.radicand.to_string()),
        };
        ExactRepr {
            q: format!("{}/{}", self.q.numer(), self.q.denom()),
            pi_pow: self.pi_pow,
            sqrt,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let repr = ExactRepr::deserialize(deserializer)?;
        let q = BigRational::from_str(&repr.q).map_err(|e| D::Error::custom(format!("q: {e}")))?;
        match repr.sqrt {
            RadicandRepr::Small(s) => Ok(ExactScalar::new(q, repr.pi_pow, s)),
            RadicandRepr::Big(text) => {
                let s =
                    BigUint::from_str(&text).map_err(|e| D::Error::custom(format!("sqrt: {e}")))?;
                Ok(ExactScalar::from_parts(q, repr.pi_pow, s))
            }
        }
    }
}

/// Splits `n = outside² · inside` with `inside` square-free.
fn split_square_part(mut n: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut p = 2u64;
    // Trial division up to the cube root; what remains has at most two prime
    // factors, so it carries a square factor only if it is a perfect square.
    while p.saturating_mul(p).saturating_mul(p) <= n {
        let p2 = p * p;
        while n.is_multiple_of(p2) {
            n /= p2;
            outside *= p;
        }
        if n.is_multiple_of(p) {
            n /= p;
            let rest = split_square_part(n);
            return (outside * rest.0, rest.1 * p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let r = n.isqrt();
    if r > 1 && r * r == n {
        (outside * r, 1)
    } else {
        (outside, n)
    }
}

/// A positive real `m · 2^e` with `m ∈ [1, 2)`, wide enough for factorials
/// and powers of π that overflow `f64`.
#[derive(Clone, Copy, Debug)]
struct Scaled {
    m: f64,
    e: i64,
}

impl Scaled {
    fn normalized(m: f64, e: i64) -> Self {
        let mut out = Scaled { m, e };
        out.renormalize();
        out
    }

    fn renormalize(&mut self) {
        if self.m == 0.0 {
            return;
        }
        let shift = self.m.log2().floor() as i64;
        self.m /= 2f64.powi(shift as i32);
        self.e += shift;
        // guard against log2 rounding at exact powers of two
        while self.m >= 2.0 {
            self.m /= 2.0;
            self.e += 1;
        }
        while self.m < 1.0 {
            self.m *= 2.0;
            self.e -= 1;
        }
    }

    fn from_biguint(n: &BigUint) -> Self {
        let bits = n.bits() as i64;
        if bits <= 64 {
            return Self::normalized(n.to_u64().expect("fits") as f64, 0);
        }
        let shift = bits - 64;
        let top = (n >> shift as usize).to_u64().expect("fits") as f64;
        Self::normalized(top, shift)
    }

    fn from_rational(q: &BigRational) -> Self {
        let num = q.numer().magnitude();
        let den = q.denom().magnitude();
        let shift = 64 - (num.bits() as i64 - den.bits() as i64);
        let quotient = if shift >= 0 {
            (num << shift as usize) / den
        } else {
            num / (den << (-shift) as usize)
        };
        let mut out = Self::from_biguint(&quotient);
        out.e -= shift;
        out
    }

    fn mul_f64(&mut self, x: f64, times: u32) {
        for _ in 0..times {
            self.m *= x;
            self.renormalize();
        }
    }

    fn mul_scaled(&mut self, other: &Scaled) {
        self.m *= other.m;
        self.e += other.e;
        self.renormalize();
    }

    fn sqrt(&self) -> Self {
        if self.e % 2 == 0 {
            Self::normalized(self.m.sqrt(), self.e / 2)
        } else {
            Self::normalized((2.0 * self.m).sqrt(), (self.e - 1) / 2)
        }
    }

    fn ln(&self) -> f64 {
        self.m.ln() + self.e as f64 * std::f64::consts::LN_2
    }

    fn value(&self) -> f64 {
        if self.e > 1100 {
            return f64::INFINITY;
        }
        if self.e < -1100 {
            return 0.0;
        }
        // split to avoid intermediate overflow of 2^e near the limits
        let half = self.e / 2;
        self.m * 2f64.powi(half as i32) * 2f64.powi((self.e - half) as i32)
    }
}
