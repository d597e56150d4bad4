//! Exact rational numbers.
//!
//! [`Rat`] keeps values that fit in `i64` on a small fast path and promotes to
//! arbitrary precision transparently when an operation would overflow. The
//! representation is canonical: a value is stored small whenever it fits, so
//! structural equality and hashing agree with numeric equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Debug)]
enum Repr {
    Small(Ratio<i64>),
    Big(BigRational),
}

/// An exact, always-reduced rational number with a positive denominator.
#[derive(Clone)]
pub struct Rat(Repr);

/// Failure to read a numeric literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid numeric literal `{0}`")]
pub struct ParseRatError(pub String);

fn fits_small(r: &Ratio<i64>) -> bool {
    // i64::MIN has no positive counterpart; keep it out of the fast path so
    // negation and reduction can never overflow there.
    *r.numer() != i64::MIN && *r.denom() != i64::MIN
}

impl Rat {
    fn from_small(r: Ratio<i64>) -> Rat {
        if fits_small(&r) {
            Rat(Repr::Small(r))
        } else {
            Rat::from_big(to_big(&r))
        }
    }

    fn from_big(r: BigRational) -> Rat {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => {
                Rat(Repr::Small(Ratio::new_raw(n, d)))
            }
            _ => Rat(Repr::Big(r)),
        }
    }

    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        if num == i64::MIN || den == i64::MIN {
            return Rat::from_big(BigRational::new(BigInt::from(num), BigInt::from(den)));
        }
        Rat::from_small(Ratio::new(num, den))
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        Rat::from_big(BigRational::new(num, den))
    }

    pub fn integer(n: i64) -> Rat {
        Rat::new(n, 1)
    }

    pub fn zero() -> Rat {
        Rat::integer(0)
    }

    pub fn one() -> Rat {
        Rat::integer(1)
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

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_zero(),
            Repr::Big(r) => r.is_zero(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_positive(),
            Repr::Big(r) => r.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_negative(),
            Repr::Big(r) => r.is_negative(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(r) => r.is_integer(),
            Repr::Big(r) => r.is_integer(),
        }
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> Rat {
        match &self.0 {
            Repr::Small(r) => Rat::from_small(r.floor()),
            Repr::Big(r) => Rat::from_big(r.floor()),
        }
    }

    /// Smallest integer not below `self`.
    pub fn ceil(&self) -> Rat {
        match &self.0 {
            Repr::Small(r) => Rat::from_small(r.ceil()),
            Repr::Big(r) => Rat::from_big(r.ceil()),
        }
    }

    /// `self - floor(self)`, always in `[0, 1)`.
    pub fn fract(&self) -> Rat {
        self - &self.floor()
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rat::one() / self
    }

    /// The value as an `i64` if it is an integer in range.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        match &self.0 {
            Repr::Small(r) => Some(*r.numer()),
            Repr::Big(r) => r.numer().to_i64(),
        }
    }

    /// The value as a `usize` if it is a non-negative integer in range.
    pub fn to_usize(&self) -> Option<usize> {
        self.to_i64().and_then(|v| usize::try_from(v).ok())
    }

    /// Nearest `f64`; for display and reporting only.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(r) => *r.numer() as f64 / *r.denom() as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Integer literal when the denominator is one, `num/den` otherwise.
    pub fn to_literal(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            self.to_string()
        }
    }

    fn big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(r) => to_big(r),
            Repr::Big(r) => r.clone(),
        }
    }
}

fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
                    if let Some(r) = a.$checked(b) {
                        return Rat::from_small(r);
                    }
                }
                Rat::from_big(self.big().$method(rhs.big()))
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<'a, 'b> Div<&'b Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(r) = a.checked_div(b) {
                return Rat::from_small(r);
            }
        }
        Rat::from_big(self.big() / rhs.big())
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl<'a> Div<&'a Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        &self / rhs
    }
}

impl<'a> Div<Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self / &rhs
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match &self.0 {
            Repr::Small(r) => Rat::from_small(-*r),
            Repr::Big(r) => Rat::from_big(-r.clone()),
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        -&self
    }
}

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl AddAssign<Rat> for Rat {
    fn add_assign(&mut self, rhs: Rat) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl SubAssign<Rat> for Rat {
    fn sub_assign(&mut self, rhs: Rat) {
        *self = &*self - &rhs;
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rat> for Rat {
    fn sum<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Rat) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.big().cmp(&other.big()),
        }
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Rat) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Rat {
    fn eq(&self, other: &Rat) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rat {}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Canonical representation: equal values share a variant.
        match &self.0 {
            Repr::Small(r) => {
                0u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
            Repr::Big(r) => {
                1u8.hash(state);
                r.numer().hash(state);
                r.denom().hash(state);
            }
        }
    }
}

impl Default for Rat {
    fn default() -> Rat {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::integer(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Rat {
        match i64::try_from(n) {
            Ok(v) => Rat::integer(v),
            Err(_) => Rat::from_bigints(BigInt::from(n), BigInt::one()),
        }
    }
}

impl From<usize> for Rat {
    fn from(n: usize) -> Rat {
        Rat::from(n as u64)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rat {
    type Err = ParseRatError;

    /// Accepts `17`, `-2.75`, `.5`, and `19/10`; decimals convert exactly.
    fn from_str(text: &str) -> Result<Rat, ParseRatError> {
        let err = || ParseRatError(text.to_string());
        let s = text.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n = parse_int(n.trim()).ok_or_else(err)?;
            let d = parse_int(d.trim()).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rat::from_bigints(n, d));
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let negative = whole.starts_with('-');
            let whole_digits = whole.strip_prefix(['+', '-']).unwrap_or(whole);
            if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(err());
            }
            let mut digits = String::with_capacity(whole_digits.len() + frac.len());
            digits.push_str(whole_digits);
            digits.push_str(frac);
            let mut num: BigInt = digits.parse().map_err(|_| err())?;
            if negative {
                num = -num;
            }
            let den = num_traits::pow(BigInt::from(10), frac.len());
            return Ok(Rat::from_bigints(num, den));
        }
        parse_int(s)
            .map(|n| Rat::from_bigints(n, BigInt::one()))
            .ok_or_else(err)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(&v.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn reduces_and_normalizes_sign() {
        assert_eq!(r(6, -4).to_string(), "-3/2");
        assert_eq!(r(0, 5).to_string(), "0/1");
        assert_eq!(Rat::integer(4).to_string(), "4/1");
    }

    #[test]
    fn parses_literals_exactly() {
        assert_eq!("0.3".parse::<Rat>().unwrap(), r(3, 10));
        assert_eq!("19/10".parse::<Rat>().unwrap(), r(19, 10));
        assert_eq!("2.75".parse::<Rat>().unwrap(), r(11, 4));
        assert_eq!("-1.5".parse::<Rat>().unwrap(), r(-3, 2));
        assert_eq!("7".parse::<Rat>().unwrap(), r(7, 1));
        assert_eq!("4/8".parse::<Rat>().unwrap(), r(1, 2));
        for bad in ["", "1/0", "a", "1.", "1.2.3", "1/2/3", "--1", "0x1"] {
            assert!(bad.parse::<Rat>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Rat::integer(i64::MAX);
        let sum = &big + &big;
        assert_eq!(sum.numer(), BigInt::from(i64::MAX) * 2);
        let back = &sum - &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small(_)));
        let tiny = r(1, i64::MAX);
        let sq = &tiny * &tiny;
        assert!(sq.is_positive());
        assert_eq!(
            &sq * &Rat::from_bigints(BigInt::from(i64::MAX) * i64::MAX, BigInt::one()),
            Rat::one()
        );
    }

    #[test]
    fn floor_ceil_fract() {
        assert_eq!(r(7, 2).floor(), r(3, 1));
        assert_eq!(r(-7, 2).floor(), r(-4, 1));
        assert_eq!(r(7, 2).ceil(), r(4, 1));
        assert_eq!(r(-7, 2).fract(), r(1, 2));
        assert_eq!(r(5, 1).fract(), Rat::zero());
    }

    #[test]
    fn serde_as_string() {
        let json = serde_json::to_string(&r(19, 10)).unwrap();
        assert_eq!(json, "\"19/10\"");
        let back: Rat = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r(19, 10));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (any::<i64>(), 1..=i64::MAX).prop_map(|(n, d)| Rat::new(n, d))
    }

    proptest! {
        #[test]
        fn field_identities(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn ordering_matches_bigrational(a in arb_rat(), b in arb_rat()) {
            prop_assert_eq!(a.cmp(&b), a.big().cmp(&b.big()));
        }

        #[test]
        fn display_round_trips(a in arb_rat()) {
            prop_assert_eq!(a.to_string().parse::<Rat>().unwrap(), a.clone());
            prop_assert_eq!(a.to_literal().parse::<Rat>().unwrap(), a);
        }
    }
}
