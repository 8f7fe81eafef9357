//! Harmonic functions on basic tubes in Poisson form
//! `g = c0 + Σ c_i log_p |T - a_i|`, and their approximation by
//! `log_p |h|` with `h = b Π (T - a_i)^{n_i}`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::berkline::{seminorm_enclosure, BerkPoint, Disk};
use crate::error::{Error, Result};
use crate::field::{LogNorm, LogValue, Poly, Prime, Rat, Scalar};
use crate::tree::BasicTube;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicDatum {
    c0: Rat,
    terms: Vec<(Rat, Scalar)>,
    domain: BasicTube,
}

impl HarmonicDatum {
    /// Each pole `a_i` must lie off the tube.
    pub fn new(p: Prime, c0: Rat, terms: Vec<(Rat, Scalar)>, domain: BasicTube) -> Result<Self> {
        for (_, a) in &terms {
            if domain.contains(p, &BerkPoint::TypeI(a.clone())) {
                return Err(Error::InvalidDomain(format!(
                    "pole {a} lies inside the tube"
                )));
            }
        }
        Ok(HarmonicDatum { c0, terms, domain })
    }

    pub fn c0(&self) -> &Rat {
        &self.c0
    }

    pub fn terms(&self) -> &[(Rat, Scalar)] {
        &self.terms
    }

    pub fn domain(&self) -> &BasicTube {
        &self.domain
    }
}

fn finite(l: LogNorm) -> LogValue {
    l.finite()
        .cloned()
        .expect("pole off the tube gives a finite value")
}

/// `log_p |T - a|_x`; at type IV points the prefix must pin it down.
fn log_dist(p: Prime, a: &Scalar, x: &BerkPoint) -> Result<LogValue> {
    let (lo, hi) = seminorm_enclosure(p, &Poly::linear(a), x)?;
    if lo != hi {
        return Err(Error::TypeFourUndetermined);
    }
    Ok(finite(hi))
}

/// Exact value at a point of the tube.
pub fn harm_eval(p: Prime, g: &HarmonicDatum, x: &BerkPoint) -> Result<LogValue> {
    if !g.domain.contains(p, x) {
        return Err(Error::OutsideDomain(format!("{x:?}")));
    }
    let mut acc = LogValue::from_rat(g.c0.clone());
    for (c, a) in &g.terms {
        let v = log_dist(p, a, x)?;
        acc = acc + v.scale(c);
    }
    Ok(acc)
}

/// `round(q)` with halves going down.
fn nearest(q: &Rat) -> BigInt {
    let doubled = q * Rat::from_integer(2.into());
    let fl = q.floor().to_integer();
    // q - floor(q) > 1/2 rounds up
    if doubled - Rat::from_integer(&fl * 2) > Rat::from_integer(1.into()) {
        fl + 1
    } else {
        fl
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HarmonicApprox {
    pub b: Scalar,
    pub exponents: Vec<BigInt>,
    /// Certified bound on `|g - log_p|h||` over the tube.
    pub bound: Rat,
}

impl HarmonicApprox {
    /// `log_p |h|_x`.
    pub fn log_h(&self, p: Prime, g: &HarmonicDatum, x: &BerkPoint) -> Result<LogValue> {
        let mut acc = finite(self.b.lognorm(p));
        for (n, (_, a)) in self.exponents.iter().zip(g.terms()) {
            let v = log_dist(p, a, x)?;
            acc = acc + v.scale(&Rat::from_integer(n.clone()));
        }
        Ok(acc)
    }
}

/// Range of `log_p |T - a|` over the tube, as `[lo, hi]`; `None` when the
/// tube reaches infinity.
pub fn log_range(p: Prime, tube: &BasicTube, a: &Scalar) -> Option<(Rat, Rat)> {
    let outer = tube.outer()?;
    let at = |d: &Disk| {
        d.seminorm(p, &Poly::linear(a))
            .as_rat()
            .cloned()
            .expect("type II boundary points give rational values")
    };
    let mut vals = vec![at(outer)];
    vals.extend(tube.removed().iter().map(at));
    let lo = vals.iter().min().unwrap().clone();
    let hi = vals.iter().max().unwrap().clone();
    Some((lo, hi))
}

pub fn harm_approx(p: Prime, g: &HarmonicDatum) -> Result<HarmonicApprox> {
    if g.domain.is_whole_line() {
        return Err(Error::InvalidDomain(
            "approximation needs a proper tube".into(),
        ));
    }
    let k0 = nearest(&g.c0);
    // |p^(-k)| = p^k
    let k0_i64: i64 = (-&k0)
        .try_into()
        .map_err(|_| Error::InvalidDomain("c0 out of range".into()))?;
    let b = Scalar::prime_power(p, k0_i64);
    let mut bound = (&g.c0 - Rat::from_integer(k0)).abs();
    let mut exponents = Vec::with_capacity(g.terms.len());
    for (c, a) in &g.terms {
        let n = nearest(c);
        let err = (c - Rat::from_integer(n.clone())).abs();
        if !err.is_zero() {
            let (lo, hi) = log_range(p, &g.domain, a)
                .ok_or_else(|| Error::Unbounded(format!("log|T - {a}| near infinity")))?;
            bound += err * lo.abs().max(hi.abs());
        }
        exponents.push(n);
    }
    Ok(HarmonicApprox {
        b,
        exponents,
        bound,
    })
}
