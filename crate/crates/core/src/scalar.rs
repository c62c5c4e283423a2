//! Scalar abstraction shared by the exact (rational) and real-valued code paths.
//!
//! Cover values and threshold margins only need an ordered field, so they are
//! written against [`Scalar`]. Anything that takes logarithms or square roots
//! (probabilities, the convex relaxation) asks for [`num_traits::Float`] instead.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Ordered field usable for exact or approximate cover arithmetic.
pub trait Scalar:
    Num + Signed + Clone + PartialOrd + FromPrimitive + fmt::Debug + fmt::Display
{
    fn from_count(k: usize) -> Self {
        Self::from_usize(k).expect("count representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for Ratio<i64> {}
impl Scalar for Ratio<i128> {}
impl Scalar for Ratio<num_bigint::BigInt> {}

/// A scalar extended with an explicit negative-infinity sentinel.
///
/// `NegInf` absorbs addition and compares below every finite value. It is never
/// represented as a large negative number, so comparisons between finite values
/// stay exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ext<T> {
    NegInf,
    Finite(T),
}

impl<T> Ext<T> {
    pub fn is_neg_inf(&self) -> bool {
        matches!(self, Ext::NegInf)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            Ext::NegInf => None,
            Ext::Finite(v) => Some(v),
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Ext<U> {
        match self {
            Ext::NegInf => Ext::NegInf,
            Ext::Finite(v) => Ext::Finite(f(v)),
        }
    }
}

impl<T: Scalar> Ext<T> {
    pub fn zero() -> Self {
        Ext::Finite(T::zero())
    }

    /// Larger of two values; `NegInf` loses to anything finite.
    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl<T: Scalar> Add for Ext<T> {
    type Output = Ext<T>;

    fn add(self, rhs: Self) -> Self::Output {
        match (self, rhs) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
            _ => Ext::NegInf,
        }
    }
}

impl<T: Scalar> PartialOrd for Ext<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Ext::NegInf, Ext::NegInf) => Some(Ordering::Equal),
            (Ext::NegInf, Ext::Finite(_)) => Some(Ordering::Less),
            (Ext::Finite(_), Ext::NegInf) => Some(Ordering::Greater),
            (Ext::Finite(a), Ext::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Ext<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::Finite(v) => v.fmt(f),
        }
    }
}

/// Ext<T> -> f64, with `NegInf` mapped to `f64::NEG_INFINITY`.
pub fn ext_to_f64<T: Scalar + num_traits::ToPrimitive>(v: &Ext<T>) -> f64 {
    match v {
        Ext::NegInf => f64::NEG_INFINITY,
        Ext::Finite(x) => x.to_f64().unwrap_or(f64::NAN),
    }
}

/// `k / den` as an exact rational.
pub fn ratio(k: i64, den: i64) -> Ratio<i64> {
    Ratio::new(k, den)
}

/// Parse a decimal literal such as `0.35` or `-2` into an exact rational.
pub fn parse_decimal(s: &str) -> Option<Ratio<i64>> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 17 {
        return None;
    }
    let den = 10i64.checked_pow(frac.len() as u32)?;
    let whole: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let part: i64 = if frac.is_empty() { 0 } else { frac.parse().ok()? };
    let num = whole.checked_mul(den)?.checked_add(part)?;
    Some(Ratio::new(if neg { -num } else { num }, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("0.1"), Some(ratio(1, 10)));
        assert_eq!(parse_decimal("-2.50"), Some(ratio(-5, 2)));
        assert_eq!(parse_decimal("3"), Some(ratio(3, 1)));
        assert_eq!(parse_decimal(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_decimal(""), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn neg_inf_absorbs_addition() {
        let a: Ext<f64> = Ext::Finite(1.5);
        assert!((a + Ext::NegInf).is_neg_inf());
        assert!((Ext::<f64>::NegInf + a).is_neg_inf());
    }

    #[test]
    fn ordering_puts_neg_inf_first() {
        let lo: Ext<Ratio<i64>> = Ext::NegInf;
        let hi = Ext::Finite(ratio(-1000, 1));
        assert!(lo < hi);
        assert_eq!(lo.max(hi), hi);
        assert_eq!(Ext::<Ratio<i64>>::NegInf.max(Ext::NegInf), Ext::NegInf);
    }

    #[test]
    fn rational_sums_are_exact() {
        let tenth = Ext::Finite(ratio(1, 10));
        let s = tenth + tenth + tenth;
        assert_eq!(s, Ext::Finite(ratio(3, 10)));
    }
}
