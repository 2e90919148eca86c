//! Exact rational scalars.
//!
//! Values that fit in a machine-word rational stay on the `Rational64` fast
//! path; any operation that would overflow is redone on `BigRational` and the
//! result is demoted again when it fits. The representation is canonical, so
//! derived structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Rational64};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small(Rational64),
    Big(BigRational),
}

/// An exact rational number in reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn small_ok(r: &Rational64) -> bool {
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

fn demote(r: BigRational) -> Scalar {
    match (r.numer().to_i64(), r.denom().to_i64()) {
        (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Scalar(Repr::Small(Rational64::new_raw(n, d))),
        _ => Scalar(Repr::Big(r)),
    }
}

fn promote(r: &Rational64) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Small(Rational64::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Small(Rational64::one()))
    }

    pub fn from_int(n: i64) -> Self {
        if n == i64::MIN {
            return demote(BigRational::from_integer(BigInt::from(n)));
        }
        Scalar(Repr::Small(Rational64::from_integer(n)))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        if numer != i64::MIN && denom != i64::MIN {
            return Scalar(Repr::Small(Rational64::new(numer, denom)));
        }
        demote(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        demote(BigRational::new(numer, denom))
    }

    /// `1 / 2^k`.
    pub fn inv_pow2(k: u32) -> Self {
        demote(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// `1 / k`.
    pub fn recip_index(k: u64) -> Self {
        if let Ok(k) = i64::try_from(k) {
            if k > 0 {
                return Scalar(Repr::Small(Rational64::new_raw(1, k)));
            }
        }
        demote(BigRational::new(BigInt::one(), BigInt::from(k)))
    }

    /// `1 / k` for indices beyond `u64`.
    pub fn recip_big(k: &BigUint) -> Self {
        demote(BigRational::new(BigInt::one(), BigInt::from(k.clone())))
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        demote(BigRational::from_integer(BigInt::from(n.clone())))
    }

    pub fn from_u64(n: u64) -> Self {
        if let Ok(n) = i64::try_from(n) {
            return Scalar::from_int(n);
        }
        demote(BigRational::from_integer(BigInt::from(n)))
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => promote(r),
            Repr::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(r) => r.numer().signum() as i32,
            Repr::Big(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.numer()),
            Repr::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(r) => BigInt::from(*r.denom()),
            Repr::Big(r) => r.denom().clone(),
        }
    }

    pub fn floor(&self) -> BigInt {
        self.to_big().floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.to_big().ceil().to_integer()
    }

    /// Floor as an index, or `None` when negative or too large.
    pub fn floor_index(&self) -> Option<u64> {
        self.floor().to_u64()
    }

    /// `⌊self⌋` when it is not negative.
    pub fn floor_natural(&self) -> Option<BigUint> {
        self.floor().to_biguint()
    }

    pub fn ceil_index(&self) -> Option<u64> {
        self.ceil().to_u64()
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    pub fn recip(&self) -> Self {
        Scalar::one() / self
    }

    pub fn min_of(self, other: Self) -> Self {
        std::cmp::min(self, other)
    }

    pub fn max_of(self, other: Self) -> Self {
        std::cmp::max(self, other)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        if small_ok(&r) {
                            return Scalar(Repr::Small(r));
                        }
                    }
                }
                demote($trait::$method(self.to_big(), rhs.to_big()))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(&self, &rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                $trait::$method(&self, rhs)
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $trait::$method(self, &rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            // small_ok excludes i64::MIN, so negation cannot overflow.
            Repr::Small(r) => Scalar(Repr::Small(-*r)),
            Repr::Big(r) => demote(-r.clone()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Self {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt, ScalarParseError> {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(ScalarParseError::Malformed(s.to_string()));
            }
            t.parse::<BigInt>().map_err(|_| ScalarParseError::Malformed(s.to_string()))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_int(n)?;
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err(ScalarParseError::ZeroDenominator);
                }
                Ok(Scalar::from_big(n, d))
            }
            None => Ok(Scalar::from_big(parse_int(s)?, BigInt::one())),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_renders() {
        assert_eq!(Scalar::ratio(6, -4).to_string(), "-3/2");
        assert_eq!(Scalar::ratio(4, 2).to_string(), "2");
        assert_eq!("10/4".parse::<Scalar>().unwrap(), Scalar::ratio(5, 2));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert_eq!("1/0".parse::<Scalar>(), Err(ScalarParseError::ZeroDenominator));
        assert!("1/x".parse::<Scalar>().is_err());
        assert!("".parse::<Scalar>().is_err());
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::from_int(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.to_string(), "18446744073709551614");
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        let tiny = Scalar::inv_pow2(100);
        assert!(tiny.is_positive());
        assert_eq!(&tiny * &Scalar::from_big(BigInt::one() << 100u32, BigInt::one()), Scalar::one());
    }

    #[test]
    fn ordering_across_representations() {
        let a = Scalar::from_big(BigInt::one() << 80u32, BigInt::from(3));
        let b = Scalar::from_int(5);
        assert!(b < a);
        assert!(-&a < b);
        assert_eq!(a.clone().max_of(b.clone()), a);
    }

    #[test]
    fn serde_roundtrip_as_string() {
        let x = Scalar::ratio(-7, 3);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-7/3\"");
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(Scalar::ratio(7, 2).floor_index(), Some(3));
        assert_eq!(Scalar::ratio(7, 2).ceil_index(), Some(4));
        assert_eq!(Scalar::ratio(-1, 2).floor_index(), None);
    }
}
