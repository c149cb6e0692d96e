//! Exact integer and rational arithmetic.
//!
//! Every slope, λ-value and threshold in the crate is a [`Rational`]; every
//! Brill-Noether number is a [`BigInt`]. Nothing here touches floating point.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("divisor must be positive, got {0}")]
    NonPositiveDivisor(BigInt),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// A fraction in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in canonical form. The sign is carried by the numerator.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, NumError> {
        let den = den.into();
        if den.is_zero() {
            return Err(NumError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Largest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        self.numer().div_floor(self.denom())
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> BigInt {
        -((-self.numer()).div_floor(self.denom()))
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// `None` when dividing by zero.
    pub fn checked_div(&self, other: &Rational) -> Option<Rational> {
        if other.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &other.0))
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<u64> for Rational {
    fn from(n: u64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl From<&BigInt> for Rational {
    fn from(n: &BigInt) -> Self {
        Rational::from_integer(n.clone())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
// Panics on a zero divisor, like integer division; use `checked_div` when
// the divisor is data-dependent.
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// `p/q`, or just `p` for integers.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for Rational {
    type Err = NumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumError::Parse(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rational::new(p, q)
            }
            None => Ok(Rational::from_integer(
                t.parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Rational", 2)?;
        st.serialize_field("num", &JsonInt(self.numer()))?;
        st.serialize_field("den", &JsonInt(self.denom()))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Pair {
            #[serde(with = "json_int")]
            num: BigInt,
            #[serde(with = "json_int")]
            den: BigInt,
        }
        let p = Pair::deserialize(deserializer)?;
        Rational::new(p.num, p.den).map_err(de::Error::custom)
    }
}

struct JsonInt<'a>(&'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        json_int::serialize(self.0, serializer)
    }
}

/// Serde helpers writing a [`BigInt`] as a JSON number when it fits in
/// 64 bits and as a decimal string otherwise.
pub mod json_int {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, serializer: S) -> Result<S::Ok, S::Error> {
        match n.to_i64() {
            Some(v) => serializer.serialize_i64(v),
            None => serializer.serialize_str(&n.to_string()),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigInt, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(i64),
            Big(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Small(v) => Ok(BigInt::from(v)),
            Repr::Big(s) => s.parse().map_err(de::Error::custom),
        }
    }
}

/// Largest integer `≤ a/b`.
pub fn floor_ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<BigInt, NumError> {
    let b = b.into();
    if !b.is_positive() {
        return Err(NumError::NonPositiveDivisor(b));
    }
    Ok(a.into().div_floor(&b))
}

/// Smallest integer `≥ a/b`, computed as `-floor(-a/b)`.
pub fn ceil_ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<BigInt, NumError> {
    Ok(-floor_ratio(-a.into(), b)?)
}

/// Where a quadratic with eventually-negative values turns negative for good.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NegThreshold {
    /// Negative at every integer.
    Always,
    /// Negative at every integer `≥ t`, and `t` is the least such integer.
    From(BigInt),
}

impl NegThreshold {
    pub fn covers(&self, x: &BigInt) -> bool {
        match self {
            NegThreshold::Always => true,
            NegThreshold::From(t) => x >= t,
        }
    }
}

impl fmt::Display for NegThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NegThreshold::Always => f.write_str("always"),
            NegThreshold::From(t) => write!(f, "{t}"),
        }
    }
}

fn eval_quad(a2: &Rational, a1: &Rational, a0: &Rational, x: &BigInt) -> Rational {
    let x = Rational::from(x);
    &(&(a2 * &x) + a1) * &x + a0
}

/// Minimal integer `t` with `a2·x² + a1·x + a0 < 0` for every integer `x ≥ t`.
///
/// Returns `None` when the polynomial is not eventually negative and
/// [`NegThreshold::Always`] when it is negative at every integer. Roots are
/// isolated by integer bisection between rational bounds; no square roots
/// are taken.
pub fn quad_neg_threshold(a2: &Rational, a1: &Rational, a0: &Rational) -> Option<NegThreshold> {
    let p = |x: &BigInt| eval_quad(a2, a1, a0, x);

    if a2.is_positive() {
        return None;
    }
    if a2.is_zero() {
        if a1.is_positive() {
            return None;
        }
        if a1.is_zero() {
            return a0.is_negative().then_some(NegThreshold::Always);
        }
        // a1·x + a0 < 0  <=>  x > -a0/a1
        let root = -a0 / a1;
        let t = root.floor() + 1;
        debug_assert!(p(&t).is_negative() && !p(&(&t - 1)).is_negative());
        return Some(NegThreshold::From(t));
    }

    // a2 < 0: p increases up to the vertex and decreases after it.
    let vertex = -a1 / (Rational::from(2i64) * a2);
    let start = vertex.ceil();
    let before = &start - 1;
    let threshold = if p(&start).is_negative() {
        // p(start - 1) is the largest value over integers below `start`.
        if p(&before).is_negative() {
            NegThreshold::Always
        } else {
            NegThreshold::From(start)
        }
    } else {
        // Cauchy bound: every real root has |r| <= 1 + max(|a1|, |a0|)/|a2|.
        let bound = Rational::one() + a1.abs().max(a0.abs()) / a2.abs();
        let mut hi = (bound.ceil() + 1u32).max(&start + 1u32);
        let mut lo = start;
        debug_assert!(p(&hi).is_negative());
        // invariant: p(lo) >= 0, p(hi) < 0
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            if p(&mid).is_negative() {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        NegThreshold::From(hi)
    };
    if let NegThreshold::From(t) = &threshold {
        // certify minimality at the returned point
        assert!(p(t).is_negative() && !p(&(t - 1)).is_negative());
    }
    Some(threshold)
}

/// Inclusive integer range `[lo, hi]`, empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntInterval {
    pub lo: i64,
    pub hi: i64,
}

impl IntInterval {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntInterval { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            self.hi.abs_diff(self.lo) + 1
        }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for IntInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("empty")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a, b).unwrap()
    }

    #[test]
    fn canonical_form() {
        let r = q(22, 6);
        assert_eq!((r.numer().clone(), r.denom().clone()), (11.into(), 3.into()));
        let r = q(5, -2);
        assert_eq!((r.numer().clone(), r.denom().clone()), ((-5).into(), 2.into()));
        let r = q(0, 7);
        assert_eq!((r.numer().clone(), r.denom().clone()), (0.into(), 1.into()));
        assert_eq!(Rational::new(1, 0), Err(NumError::ZeroDenominator));
    }

    #[test]
    fn ceil_ratio_examples() {
        assert_eq!(ceil_ratio(20, 3).unwrap(), 7.into());
        assert_eq!(ceil_ratio(-20, 3).unwrap(), (-6).into());
        assert_eq!(ceil_ratio(8, 4).unwrap(), 2.into());
        assert_eq!(floor_ratio(-20, 3).unwrap(), (-7).into());
        assert!(matches!(ceil_ratio(1, 0), Err(NumError::NonPositiveDivisor(_))));
        assert!(matches!(floor_ratio(1, -3), Err(NumError::NonPositiveDivisor(_))));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("10/4".parse::<Rational>().unwrap(), q(5, 2));
        assert_eq!(" -7 ".parse::<Rational>().unwrap(), q(-7, 1));
        assert_eq!(q(102, 7).to_string(), "102/7");
        assert_eq!(q(6, 3).to_string(), "2");
        assert!("3/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&q(-53, 10)).unwrap();
        assert_eq!(s, r#"{"num":-53,"den":10}"#);
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(-53, 10));
        assert!(serde_json::from_str::<Rational>(r#"{"num":1,"den":0}"#).is_err());
    }

    #[test]
    fn quad_threshold_examples() {
        assert_eq!(
            quad_neg_threshold(&q(-1, 1), &q(12, 1), &q(-8, 1)),
            Some(NegThreshold::From(12.into()))
        );
        assert_eq!(
            quad_neg_threshold(&q(0, 1), &q(0, 1), &q(-1, 1)),
            Some(NegThreshold::Always)
        );
        assert_eq!(quad_neg_threshold(&q(1, 1), &q(0, 1), &q(-4, 1)), None);
        assert_eq!(quad_neg_threshold(&q(0, 1), &q(1, 1), &q(-4, 1)), None);
        assert_eq!(quad_neg_threshold(&q(0, 1), &q(0, 1), &q(0, 1)), None);
        // no real roots
        assert_eq!(
            quad_neg_threshold(&q(-1, 1), &q(0, 1), &q(-1, 1)),
            Some(NegThreshold::Always)
        );
        // roots 1/2 and 3/5: no integer in between, yet p(0) < 0 and p(1) < 0
        assert_eq!(
            quad_neg_threshold(&q(-10, 1), &q(11, 1), &q(-3, 1)),
            Some(NegThreshold::Always)
        );
        // linear: -2x + 5 < 0 for x >= 3
        assert_eq!(
            quad_neg_threshold(&q(0, 1), &q(-2, 1), &q(5, 1)),
            Some(NegThreshold::From(3.into()))
        );
        // fractional coefficients
        assert_eq!(
            quad_neg_threshold(&q(-1, 2), &q(7, 3), &q(1, 5)),
            Some(NegThreshold::From(5.into()))
        );
    }
}
