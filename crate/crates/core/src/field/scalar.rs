use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lognorm::{LogNorm, LogValue};
use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Builds a rational from a small numerator and denominator.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "n" or "n/d".
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rat::from_integer),
    }
}

/// Largest integer not exceeding `q`.
pub fn floor_rat(q: &Rat) -> BigInt {
    q.floor().to_integer()
}

/// The residue characteristic of the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2
            || (2..)
                .take_while(|d| d * d <= p)
                .any(|d| p.is_multiple_of(d))
        {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn big(self) -> BigInt {
        BigInt::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn int_valuation(n: &BigInt, p: &BigInt) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return (v, m);
        }
        m = q;
        v += 1;
    }
}

/// An exact rational number; its absolute value depends on the prime in use.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(Rat);

impl Scalar {
    pub fn new(q: Rat) -> Self {
        Scalar(q)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(rat_int(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar(rat(num, den))
    }

    pub fn zero() -> Self {
        Scalar(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar(Rat::one())
    }

    /// `p^k` for any integer `k`.
    pub fn prime_power(p: Prime, k: i64) -> Self {
        let base = Rat::from_integer(p.big());
        if k >= 0 {
            Scalar(num_traits::pow(base, k as usize))
        } else {
            Scalar(num_traits::pow(base, (-k) as usize).recip())
        }
    }

    pub fn rat(&self) -> &Rat {
        &self.0
    }

    pub fn into_rat(self) -> Rat {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn pow(&self, e: usize) -> Self {
        Scalar(num_traits::pow(self.0.clone(), e))
    }

    pub fn recip(&self) -> Self {
        Scalar(self.0.recip())
    }

    /// The p-adic valuation; `None` for zero.
    pub fn valuation(&self, p: Prime) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        let pb = p.big();
        let (vn, _) = int_valuation(self.0.numer(), &pb);
        let (vd, _) = int_valuation(self.0.denom(), &pb);
        Some(vn - vd)
    }

    /// `log_p |x|`, i.e. minus the valuation.
    pub fn lognorm(&self, p: Prime) -> LogNorm {
        match self.valuation(p) {
            None => LogNorm::NegInf,
            Some(v) => LogNorm::Finite(LogValue::from_rat(rat_int(-v))),
        }
    }

    /// Reduction into the residue field `F_p`; `None` when `|x| > 1`.
    pub fn residue(&self, p: Prime) -> Option<u64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.valuation(p)? < 0 {
            return None;
        }
        let pb = p.big();
        let num = self.0.numer().mod_floor(&pb);
        let den = self.0.denom().mod_floor(&pb);
        let inv = den.modpow(&(&pb - 2u32), &pb);
        ((num * inv).mod_floor(&pb)).to_u64()
    }

    /// Canonical representative of `x + p^k Z_p`: the truncated p-adic
    /// expansion `sum_{j < k} d_j p^j` with digits in `0..p`.
    pub fn truncate_expansion(&self, p: Prime, k: i64) -> Scalar {
        let v = match self.valuation(p) {
            None => return Scalar::zero(),
            Some(v) => v,
        };
        if v >= k {
            return Scalar::zero();
        }
        let pb = p.big();
        let (_, un) = int_valuation(self.0.numer(), &pb);
        let (_, ud) = int_valuation(self.0.denom(), &pb);
        let modulus = num_traits::pow(pb.clone(), (k - v) as usize);
        let inv = mod_inverse(&ud.mod_floor(&modulus), &modulus);
        let digits = (un * inv).mod_floor(&modulus);
        Scalar(Rat::from_integer(digits)) * Scalar::prime_power(p, v)
    }

    pub fn abs_rat(&self) -> Rat {
        self.0.abs()
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Scalar {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_rat(s)
            .map(Scalar)
            .ok_or_else(|| format!("expected a rational \"num/den\", got {s:?}"))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(q: Rat) -> Self {
        Scalar(q)
    }
}

macro_rules! scalar_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$m(rhs.0))
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);
scalar_binop!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}
