//! Numeric field abstraction shared by the exact and float code paths.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::Error;

/// Arbitrary precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Small inline coordinate buffer; every bundled algebra has dimension at most 8.
pub type Coords<S> = smallvec::SmallVec<[S; 8]>;

/// A structure-constant style coefficient carried in both flavors, so the
/// float path never converts rationals inside hot loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Coeff {
    pub exact: Rational,
    pub approx: f64,
}

impl Coeff {
    pub fn new(exact: Rational) -> Self {
        let approx = ToPrimitive::to_f64(&exact).unwrap_or(f64::NAN);
        Coeff { exact, approx }
    }
}

/// Field operations needed by brackets, BCH products and coordinate
/// conversions. Implemented for [`Rational`] (exact) and `f64` (float).
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + PartialOrd
    + Zero
    + One
{
    const EXACT: bool;

    fn from_coeff(c: &Coeff) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn from_i64(v: i64) -> Self;
    fn floor(&self) -> Self;
    fn as_f64(&self) -> f64;
    /// Exact rational value, if this flavor has one.
    fn to_rational(&self) -> Option<Rational>;
    /// Multiplicative inverse; `None` on zero.
    fn recip(&self) -> Option<Self>;

    fn frac(&self) -> Self {
        self.clone() - self.floor()
    }

    fn is_integer(&self) -> bool {
        self.frac().is_zero()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_coeff(c: &Coeff) -> Self {
        c.exact.clone()
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn floor(&self) -> Self {
        BigRational::floor(self)
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn recip(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(BigRational::recip(self))
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_coeff(c: &Coeff) -> Self {
        c.approx
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / *self)
        }
    }
}

pub fn rational(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parse `p/q`, an integer, or a finite decimal (`-0.125`) into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num::pow(BigInt::from(10), frac.len());
        let value = Rational::new(num, den);
        return Ok(if negative { -value } else { value });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(p))
}

/// Canonical text for a rational: `p` for integers, `p/q` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A numeric token from a description file: either an exact rational or a
/// symbolic irrational that only exists in float flavor.
///
/// Accepted symbols: `sqrt(k)` (k a non-negative rational), `golden`
/// ((1+sqrt 5)/2), `pi`, and `-` prefixed forms of each. Symbols convert
/// with `f64::sqrt` / `std::f64::consts` and carry one rounding error.
#[derive(Debug, Clone, PartialEq)]
pub enum Number {
    Exact(Rational),
    Approx(f64),
}

impl Number {
    pub fn parse(text: &str) -> Result<Number, Error> {
        let t = text.trim();
        if let Some(rest) = t.strip_prefix('-') {
            if !rest.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
                return Ok(Number::parse(rest)?.neg());
            }
        }
        match t {
            "golden" => return Ok(Number::Approx((1.0 + 5f64.sqrt()) / 2.0)),
            "pi" => return Ok(Number::Approx(std::f64::consts::PI)),
            _ => {}
        }
        if let Some(inner) = t.strip_prefix("sqrt(").and_then(|s| s.strip_suffix(')')) {
            let k = parse_rational(inner)?;
            if k < Rational::zero() {
                return Err(Error::Parse(format!("sqrt of negative value: {text:?}")));
            }
            return Ok(Number::Approx(Scalar::as_f64(&k).sqrt()));
        }
        parse_rational(t).map(Number::Exact)
    }

    fn neg(self) -> Number {
        match self {
            Number::Exact(q) => Number::Exact(-q),
            Number::Approx(x) => Number::Approx(-x),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Number::Exact(q) => Scalar::as_f64(q),
            Number::Approx(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Number::Exact(q) => Some(q),
            Number::Approx(_) => None,
        }
    }
}

/// Conversion from description-file numbers into a scalar flavor.
pub trait FromNumber: Scalar {
    fn from_number(n: &Number) -> Result<Self, Error>;
}

impl FromNumber for f64 {
    fn from_number(n: &Number) -> Result<Self, Error> {
        Ok(n.to_f64())
    }
}

impl FromNumber for Rational {
    fn from_number(n: &Number) -> Result<Self, Error> {
        n.exact()
            .cloned()
            .ok_or_else(|| Error::Flavor("symbolic irrational has no exact value".into()))
    }
}

/// The exact rational value of a finite float (every finite `f64` is dyadic).
pub fn dyadic(x: f64) -> Result<Rational, Error> {
    Rational::from_float(x).ok_or_else(|| Error::InvalidArgument(format!("non-finite value {x}")))
}

/// `{k x}` computed exactly from the dyadic value of `x`, then rounded once.
/// Products like `alpha h^2` lose every fractional bit in plain floats.
pub fn frac_mul(x: f64, k: i128) -> f64 {
    if x == 0.0 || k == 0 {
        return 0.0;
    }
    let bits = x.abs().to_bits();
    let (exp, mant) = ((bits >> 52) as i32, bits & ((1u64 << 52) - 1));
    let (mant, exp) = if exp == 0 { (mant, -1074) } else { (mant | (1u64 << 52), exp - 1075) };
    let signed = if x < 0.0 { -(mant as i128) } else { mant as i128 };
    // x = signed * 2^exp
    if exp >= 0 {
        return 0.0;
    }
    let e = -exp;
    if e <= 120 {
        if let Some(p) = signed.checked_mul(k) {
            let r = p.rem_euclid(1i128 << e);
            return (r as f64) * 2f64.powi(-e);
        }
    }
    let q = dyadic(x).expect("finite") * Rational::from_integer(k.into());
    let f = &q - q.floor();
    f.as_f64()
}

/// Distance from `x` to the nearest integer.
pub fn circle_dist(x: f64) -> f64 {
    let f = x - x.round();
    f.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_fractional_multiples() {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        for k in [-7i128, 0, 1, 3, 1 << 40, (1 << 70) + 12345] {
            let q = dyadic(g).unwrap() * Rational::from_integer(k.into());
            let want = (&q - q.floor()).as_f64();
            assert_eq!(frac_mul(g, k), want, "k = {k}");
        }
        assert_eq!(frac_mul(0.75, 3), 0.25);
        assert_eq!(frac_mul(-0.75, 3), 0.75);
        assert_eq!(frac_mul(1e-300, 5), (dyadic(1e-300).unwrap() * int(5)).as_f64());
    }

    #[test]
    fn parses_rationals_and_decimals() {
        assert_eq!(parse_rational("3/6").unwrap(), rational(1, 2));
        assert_eq!(parse_rational("-0.125").unwrap(), rational(-1, 8));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&rational(-4, 6)), "-2/3");
    }

    #[test]
    fn parses_symbols() {
        assert_eq!(Number::parse("sqrt(2)").unwrap().to_f64(), 2f64.sqrt());
        assert_eq!(Number::parse("-golden").unwrap().to_f64(), -(1.0 + 5f64.sqrt()) / 2.0);
        assert_eq!(Number::parse("pi").unwrap().to_f64(), std::f64::consts::PI);
        assert_eq!(Number::parse("-1/3").unwrap(), Number::Exact(rational(-1, 3)));
        assert!(Rational::from_number(&Number::parse("sqrt(3)").unwrap()).is_err());
    }

    #[test]
    fn floor_is_floor_not_truncation() {
        assert_eq!(Scalar::floor(&rational(-1, 2)), int(-1));
        assert_eq!(Scalar::floor(&-0.5f64), -1.0);
        assert_eq!(Scalar::frac(&rational(-1, 3)), rational(2, 3));
    }
}
