//! Log-domain absolute values.
//!
//! Every norm, radius and Green value is stored as `log_p` of the real
//! quantity. Radii outside the value group `p^Q` are modeled by an
//! infinitesimal component: a finite value is `re + eps * ε` for a fixed
//! positive infinitesimal `ε`, ordered lexicographically.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use super::scalar::{rat_int, Rat};

/// A finite log value `re + eps * ε`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LogValue {
    pub re: Rat,
    pub eps: Rat,
}

impl LogValue {
    pub fn new(re: Rat, eps: Rat) -> Self {
        LogValue { re, eps }
    }

    pub fn from_rat(re: Rat) -> Self {
        LogValue {
            re,
            eps: Rat::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat_int(n))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// True when the value lies in the value group (no infinitesimal part).
    pub fn is_standard(&self) -> bool {
        self.eps.is_zero()
    }

    pub fn scale(&self, k: &Rat) -> Self {
        LogValue {
            re: &self.re * k,
            eps: &self.eps * k,
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat_int(k))
    }

    pub fn abs(&self) -> Self {
        if *self < LogValue::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

impl Ord for LogValue {
    fn cmp(&self, other: &Self) -> Ordering {
        self.re
            .cmp(&other.re)
            .then_with(|| self.eps.cmp(&other.eps))
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&LogValue> for &LogValue {
    type Output = LogValue;
    fn add(self, rhs: &LogValue) -> LogValue {
        LogValue {
            re: &self.re + &rhs.re,
            eps: &self.eps + &rhs.eps,
        }
    }
}

impl Add for LogValue {
    type Output = LogValue;
    fn add(self, rhs: LogValue) -> LogValue {
        &self + &rhs
    }
}

impl Sub<&LogValue> for &LogValue {
    type Output = LogValue;
    fn sub(self, rhs: &LogValue) -> LogValue {
        LogValue {
            re: &self.re - &rhs.re,
            eps: &self.eps - &rhs.eps,
        }
    }
}

impl Sub for LogValue {
    type Output = LogValue;
    fn sub(self, rhs: LogValue) -> LogValue {
        &self - &rhs
    }
}

impl Neg for LogValue {
    type Output = LogValue;
    fn neg(self) -> LogValue {
        LogValue {
            re: -self.re,
            eps: -self.eps,
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_zero() {
            write!(f, "{}", self.re)
        } else if self.eps.is_negative() {
            write!(f, "{}-{}e", self.re, -&self.eps)
        } else {
            write!(f, "{}+{}e", self.re, self.eps)
        }
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `log_p |x|`, with a bottom element for `|0|`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum LogNorm {
    NegInf,
    Finite(LogValue),
}

impl LogNorm {
    pub fn from_rat(q: Rat) -> Self {
        LogNorm::Finite(LogValue::from_rat(q))
    }

    pub fn from_int(n: i64) -> Self {
        LogNorm::Finite(LogValue::from_int(n))
    }

    pub fn zero() -> Self {
        LogNorm::Finite(LogValue::zero())
    }

    pub fn is_neg_inf(&self) -> bool {
        matches!(self, LogNorm::NegInf)
    }

    pub fn finite(&self) -> Option<&LogValue> {
        match self {
            LogNorm::NegInf => None,
            LogNorm::Finite(v) => Some(v),
        }
    }

    /// The value as a plain rational, if finite and standard.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.finite().filter(|v| v.is_standard()).map(|v| &v.re)
    }

    /// Multiplies the underlying absolute value by itself `k` times.
    pub fn times(&self, k: usize) -> LogNorm {
        match self {
            LogNorm::NegInf if k == 0 => LogNorm::zero(),
            LogNorm::NegInf => LogNorm::NegInf,
            LogNorm::Finite(v) => LogNorm::Finite(v.scale_int(k as i64)),
        }
    }

    pub fn max_of<I: IntoIterator<Item = LogNorm>>(it: I) -> LogNorm {
        it.into_iter().fold(LogNorm::NegInf, |a, b| a.max(b))
    }
}

impl Ord for LogNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LogNorm::NegInf, LogNorm::NegInf) => Ordering::Equal,
            (LogNorm::NegInf, _) => Ordering::Less,
            (_, LogNorm::NegInf) => Ordering::Greater,
            (LogNorm::Finite(a), LogNorm::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for LogNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&LogNorm> for &LogNorm {
    type Output = LogNorm;
    fn add(self, rhs: &LogNorm) -> LogNorm {
        match (self, rhs) {
            (LogNorm::Finite(a), LogNorm::Finite(b)) => LogNorm::Finite(a + b),
            _ => LogNorm::NegInf,
        }
    }
}

impl Add for LogNorm {
    type Output = LogNorm;
    fn add(self, rhs: LogNorm) -> LogNorm {
        &self + &rhs
    }
}

impl Add<&LogValue> for &LogNorm {
    type Output = LogNorm;
    fn add(self, rhs: &LogValue) -> LogNorm {
        match self {
            LogNorm::Finite(a) => LogNorm::Finite(a + rhs),
            LogNorm::NegInf => LogNorm::NegInf,
        }
    }
}

impl From<LogValue> for LogNorm {
    fn from(v: LogValue) -> Self {
        LogNorm::Finite(v)
    }
}

impl fmt::Display for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogNorm::NegInf => write!(f, "-inf"),
            LogNorm::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for LogNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A closed-ball radius `p^(e + delta * ε)`, or zero.
///
/// Shares the log representation with [`LogNorm`]: the zero radius is the
/// bottom element and comparisons are lexicographic on `(e, delta)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Radius(LogNorm);

impl Radius {
    pub fn new(e: Rat, delta: i64) -> Self {
        Radius(LogNorm::Finite(LogValue::new(e, rat_int(delta))))
    }

    /// `p^e` with `e` in the value group.
    pub fn exp(e: Rat) -> Self {
        Radius(LogNorm::from_rat(e))
    }

    pub fn exp_int(e: i64) -> Self {
        Radius(LogNorm::from_int(e))
    }

    pub fn zero() -> Self {
        Radius(LogNorm::NegInf)
    }

    pub fn from_log(l: LogNorm) -> Self {
        Radius(l)
    }

    pub fn log(&self) -> &LogNorm {
        &self.0
    }

    pub fn into_log(self) -> LogNorm {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_neg_inf()
    }

    /// Rational exponent `e`; zero for the zero radius.
    pub fn exponent(&self) -> Rat {
        self.0
            .finite()
            .map(|v| v.re.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn delta(&self) -> Rat {
        self.0
            .finite()
            .map(|v| v.eps.clone())
            .unwrap_or_else(Rat::zero)
    }

    /// Positive radius inside `p^Q`.
    pub fn in_value_group(&self) -> bool {
        self.0.finite().is_some_and(|v| v.is_standard())
    }

    /// Multiplies the radius by `p^s`.
    pub fn shift(&self, s: &Rat) -> Radius {
        Radius(&self.0 + &LogValue::from_rat(s.clone()))
    }
}

impl fmt::Display for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            LogNorm::NegInf => write!(f, "0"),
            LogNorm::Finite(v) => write!(f, "p^({v})"),
        }
    }
}

impl fmt::Debug for Radius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::scalar::rat;

    #[test]
    fn order_is_lexicographic() {
        let a = Radius::new(rat(-1, 1), 1);
        let b = Radius::exp(rat(-1, 1));
        let c = Radius::new(rat(-1, 1), -1);
        assert!(c < b && b < a);
        assert!(Radius::zero() < c);
        assert!(a < Radius::exp(rat(-1, 2)));
    }

    #[test]
    fn neg_inf_absorbs() {
        assert_eq!(LogNorm::NegInf + LogNorm::from_int(3), LogNorm::NegInf);
        assert_eq!(LogNorm::NegInf.times(0), LogNorm::zero());
        assert_eq!(LogNorm::from_int(-2).times(3), LogNorm::from_int(-6));
    }

    #[test]
    fn value_group_flag() {
        assert!(Radius::exp_int(0).in_value_group());
        assert!(!Radius::new(rat(0, 1), 1).in_value_group());
        assert!(!Radius::zero().in_value_group());
    }
}
