//! Scalar backends.
//!
//! Every computation runs over exactly one backend: [`Rational`] (arbitrary
//! precision, bit-exact) or `f64` (compared with an absolute tolerance).
//! Code is generic over [`Scalar`]; the backend is chosen by the type
//! parameter, so the two can never mix within one computation.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Absolute tolerance used by the float backend unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float => "f64",
        }
    }
}

impl Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    fn from_rational(v: &Rational) -> Self;

    /// Converts an `f64`. The rational backend converts the binary value exactly.
    fn from_f64(v: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Exact rational value (binary value for floats).
    fn to_rational(&self) -> Rational;

    fn abs(&self) -> Self;

    /// Exact zero for rationals, `|x| <= tol` for floats.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Parses `"p/q"`, a decimal such as `"0.25"` or `"-3e-2"`, or an integer.
    fn parse(text: &str) -> Result<Self>;

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(tol)
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for Rational {
    const BACKEND: Backend = Backend::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        Rational::from_integer(v.clone())
    }

    fn from_rational(v: &Rational) -> Self {
        v.clone()
    }

    fn from_f64(v: f64) -> Self {
        Rational::from_float(v).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn parse(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Scalar for f64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_bigint(v: &BigInt) -> Self {
        v.to_f64().unwrap_or(f64::NAN)
    }

    fn from_rational(v: &Rational) -> Self {
        rational_to_f64(v)
    }

    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Rational {
        Rational::from_float(*self).unwrap_or_else(Rational::zero)
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        f64::abs(*self) <= tol
    }

    fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some((n, d)) = text.split_once('/') {
            let n = f64::from_str(n.trim()).map_err(|_| bad_number(text))?;
            let d = f64::from_str(d.trim()).map_err(|_| bad_number(text))?;
            return Ok(n / d);
        }
        f64::from_str(text).map_err(|_| bad_number(text))
    }
}

fn bad_number(text: &str) -> Error {
    Error::InvalidParameter(format!("cannot parse {text:?} as a number"))
}

fn rational_to_f64(v: &Rational) -> f64 {
    if let Some(f) = ToPrimitive::to_f64(v) {
        return f;
    }
    // Very large numerators/denominators: scale by bit length first.
    let shift = v.numer().bits() as i64 - v.denom().bits() as i64;
    let scaled = if shift >= 0 {
        v / Rational::from_integer(BigInt::one() << shift as usize)
    } else {
        v * Rational::from_integer(BigInt::one() << (-shift) as usize)
    };
    ToPrimitive::to_f64(&scaled).unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad_number(text))?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad_number(text))?;
        if d.is_zero() {
            return Err(Error::InvalidParameter(format!(
                "zero denominator in {text:?}"
            )));
        }
        return Ok(Rational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => {
            let exp = i32::from_str(&text[pos + 1..]).map_err(|_| bad_number(text))?;
            (&text[..pos], exp)
        }
        None => (text, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part
            .chars()
            .chain(frac_part.chars())
            .all(|c| c.is_ascii_digit())
    {
        return Err(bad_number(text));
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value =
        Rational::from_integer(BigInt::from_str(&joined).map_err(|_| bad_number(text))?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Generalized binomial coefficient `binom(top, bottom)` for integer `top`
/// (possibly negative) and `bottom >= 0`.
pub fn binom(top: i64, bottom: usize) -> BigInt {
    if bottom == 0 {
        return BigInt::one();
    }
    if top >= 0 && bottom as i64 > top {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..bottom as i64 {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    num.div_floor(&den)
}

/// `binom(top, bottom)` converted into the scalar backend.
pub fn binom_scalar<S: Scalar>(top: i64, bottom: usize) -> S {
    S::from_bigint(&binom(top, bottom))
}

/// `(-1)^k`.
pub fn sign<S: Scalar>(k: usize) -> S {
    if k.is_multiple_of(2) {
        S::one()
    } else {
        -S::one()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from_usize(k).unwrap())
}

/// Integer power of a scalar.
pub fn powi<S: Scalar>(base: &S, exp: usize) -> S {
    let mut acc = S::one();
    for _ in 0..exp {
        acc = acc * base.clone();
    }
    acc
}

/// Sum of absolute values.
pub fn l1_norm<S: Scalar>(values: &[S]) -> S {
    values.iter().fold(S::zero(), |acc, v| acc + v.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(Rational::parse("5/8").unwrap(), q(5, 8));
        assert_eq!(Rational::parse("0.25").unwrap(), q(1, 4));
        assert_eq!(Rational::parse("-1.5e-1").unwrap(), q(-3, 20));
        assert_eq!(Rational::parse("12").unwrap(), q(12, 1));
        assert_eq!(Rational::parse(".5").unwrap(), q(1, 2));
        assert!(Rational::parse("1/0").is_err());
        assert!(Rational::parse("abc").is_err());
        assert!(Rational::parse("").is_err());
    }

    #[test]
    fn parses_float_forms() {
        assert_eq!(f64::parse("1/4").unwrap(), 0.25);
        assert_eq!(f64::parse("2e1").unwrap(), 20.0);
        assert!(f64::parse("x").is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(2, 3), BigInt::zero());
        assert_eq!(binom(-1, 0), BigInt::one());
        assert_eq!(binom(-1, 3), BigInt::from(-1));
        assert_eq!(binom(-2, 2), BigInt::from(3));
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = Rational::from_integer(factorial(200));
        let v = (big.clone() + Rational::one()) / big;
        assert!((Scalar::to_f64(&v) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn negligible_is_exact_for_rationals() {
        assert!(!q(1, 1_000_000_000_000).is_negligible(1e-3));
        assert!(1e-12f64.is_negligible(1e-10));
    }
}
