//! Exact rational values used on every decision path.
//!
//! Conditional expectations are rationals whose denominator divides
//! `(n-k)(n-k-1)`. Values computed in the same step share that denominator,
//! so comparisons stay cheap; across steps they are compared by 128-bit
//! cross-multiplication. Floating point is never used to decide anything.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A rational `num / den` with `den > 0`. Not necessarily in lowest terms;
/// equality and ordering are exact regardless of representation.
#[derive(Clone, Copy, Debug)]
pub struct ExactValue {
    num: i128,
    den: i128,
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl ExactValue {
    pub const ZERO: ExactValue = ExactValue { num: 0, den: 1 };

    /// Builds `num / den` without reducing. Panics if `den == 0`.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den < 0 {
            ExactValue { num: -num, den: -den }
        } else {
            ExactValue { num, den }
        }
    }

    pub fn reduced_from(num: i128, den: i128) -> Self {
        Self::new(num, den).reduced()
    }

    pub fn from_int(v: i64) -> Self {
        ExactValue { num: v as i128, den: 1 }
    }

    pub fn num(&self) -> i128 {
        self.num
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn reduced(self) -> Self {
        if self.num == 0 {
            return Self::ZERO;
        }
        let g = gcd(self.num, self.den);
        ExactValue {
            num: self.num / g,
            den: self.den / g,
        }
    }

    pub fn abs(self) -> Self {
        ExactValue {
            num: self.num.abs(),
            den: self.den,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.num % self.den == 0
    }

    pub fn to_integer(&self) -> Option<i64> {
        if self.is_integer() {
            i64::try_from(self.num / self.den).ok()
        } else {
            None
        }
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> i128 {
        self.num.div_euclid(self.den)
    }

    /// For display and reporting only.
    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn signum(&self) -> i32 {
        self.num.signum() as i32
    }

    /// Exact arithmetic mean. Returns `None` for an empty iterator.
    pub fn mean<I: IntoIterator<Item = ExactValue>>(values: I) -> Option<ExactValue> {
        let mut count = 0i128;
        let mut sum = ExactValue::ZERO;
        for v in values {
            sum = sum + v;
            count += 1;
        }
        (count > 0).then(|| (sum / ExactValue::new(count, 1)).reduced())
    }
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Eq for ExactValue {}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl std::hash::Hash for ExactValue {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let r = self.reduced();
        r.num.hash(state);
        r.den.hash(state);
    }
}

impl Add for ExactValue {
    type Output = ExactValue;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return ExactValue::new(self.num + rhs.num, self.den).reduced();
        }
        let g = gcd(self.den, rhs.den);
        let den = self.den / g * rhs.den;
        let num = self.num * (rhs.den / g) + rhs.num * (self.den / g);
        ExactValue::new(num, den).reduced()
    }
}

impl Sub for ExactValue {
    type Output = ExactValue;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for ExactValue {
    type Output = ExactValue;
    fn neg(self) -> Self {
        ExactValue {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Mul for ExactValue {
    type Output = ExactValue;
    fn mul(self, rhs: Self) -> Self {
        let a = self.reduced();
        let b = rhs.reduced();
        let g1 = gcd(a.num, b.den).max(1);
        let g2 = gcd(b.num, a.den).max(1);
        ExactValue::new((a.num / g1) * (b.num / g2), (a.den / g2) * (b.den / g1)).reduced()
    }
}

impl Div for ExactValue {
    type Output = ExactValue;
    fn div(self, rhs: Self) -> Self {
        assert!(rhs.num != 0, "division by zero");
        self * ExactValue::new(rhs.den, rhs.num)
    }
}

impl From<i64> for ExactValue {
    fn from(v: i64) -> Self {
        ExactValue::from_int(v)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.reduced();
        if r.den == 1 {
            write!(f, "{}", r.num)
        } else {
            write!(f, "{}/{}", r.num, r.den)
        }
    }
}

/// Parses `a`, `a/b`, or a finite decimal such as `-0.25`.
impl FromStr for ExactValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::MalformedInput(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: i128 = a.trim().parse().map_err(|_| bad())?;
            let den: i128 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(ExactValue::reduced_from(num, den));
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            if frac_part.is_empty() || frac_part.len() > 18 || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            let whole: i128 = if int_digits.is_empty() {
                0
            } else {
                int_digits.parse().map_err(|_| bad())?
            };
            let den = 10i128.pow(frac_part.len() as u32);
            let frac: i128 = frac_part.parse().map_err(|_| bad())?;
            let num = whole * den + frac;
            return Ok(ExactValue::reduced_from(if negative { -num } else { num }, den));
        }
        let v: i128 = s.parse().map_err(|_| bad())?;
        Ok(ExactValue::new(v, 1))
    }
}

impl Serialize for ExactValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> ExactValue {
        ExactValue::new(n, d)
    }

    #[test]
    fn equality_ignores_representation() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(-3, -6), q(1, 2));
        assert_ne!(q(1, 3), q(1, 2));
        assert_eq!(q(0, 7), ExactValue::ZERO);
    }

    #[test]
    fn ordering_is_exact() {
        // 1/3 vs 333333333333/1000000000000 differ only far past f64 noise for large dens
        let a = q(1, 3);
        let b = q(333_333_333_333_333_333, 1_000_000_000_000_000_000);
        assert!(a > b);
        assert!(q(-1, 2) < q(-1, 3));
    }

    #[test]
    fn parse_forms() {
        assert_eq!("0.2".parse::<ExactValue>().unwrap(), q(1, 5));
        assert_eq!("-0.25".parse::<ExactValue>().unwrap(), q(-1, 4));
        assert_eq!("3/12".parse::<ExactValue>().unwrap(), q(1, 4));
        assert_eq!("-7".parse::<ExactValue>().unwrap(), q(-7, 1));
        assert_eq!(".5".parse::<ExactValue>().unwrap(), q(1, 2));
        assert!("1/0".parse::<ExactValue>().is_err());
        assert!("abc".parse::<ExactValue>().is_err());
        assert!("1.".parse::<ExactValue>().is_err());
    }

    #[test]
    fn display_reduces() {
        assert_eq!(q(6, 4).to_string(), "3/2");
        assert_eq!(q(-8, 4).to_string(), "-2");
        assert_eq!(q(0, 5).to_string(), "0");
    }

    #[test]
    fn mean_is_exact() {
        let m = ExactValue::mean([q(1, 2), q(1, 3), q(1, 6)]).unwrap();
        assert_eq!(m, q(1, 3));
        assert!(ExactValue::mean(std::iter::empty()).is_none());
    }

    #[test]
    fn floor_handles_negatives() {
        assert_eq!(q(-1, 2).floor(), -1);
        assert_eq!(q(7, 2).floor(), 3);
        assert_eq!(q(4, 2).floor(), 2);
    }

    proptest! {
        #[test]
        fn field_ops_agree_with_cross_products(
            a in -1000i128..1000, b in 1i128..1000, c in -1000i128..1000, d in 1i128..1000
        ) {
            let x = q(a, b);
            let y = q(c, d);
            prop_assert_eq!(x + y, q(a * d + c * b, b * d));
            prop_assert_eq!(x - y, q(a * d - c * b, b * d));
            prop_assert_eq!(x * y, q(a * c, b * d));
            prop_assert_eq!(x.cmp(&y), (a * d).cmp(&(c * b)));
            let s = x.to_string();
            prop_assert_eq!(s.parse::<ExactValue>().unwrap(), x);
        }
    }
}
