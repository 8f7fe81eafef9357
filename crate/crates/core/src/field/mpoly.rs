use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use super::lognorm::LogNorm;
use super::poly::Poly;
use super::scalar::{Prime, Scalar};
use crate::error::{Error, Result};

/// Sparse multivariate polynomial keyed by exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        MPoly::zero(nvars).with_term(vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::zero(nvars).with_term(e, Scalar::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<u32>, Scalar)>>(nvars: usize, terms: I) -> Self {
        terms
            .into_iter()
            .fold(MPoly::zero(nvars), |acc, (e, c)| acc.with_term(e, c))
    }

    /// Adds `c * x^e` to the polynomial.
    pub fn with_term(mut self, e: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(
            e.len(),
            self.nvars,
            "exponent length must match variable count"
        );
        let sum = self.terms.get(&e).map_or_else(|| c.clone(), |v| v + &c);
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
    }

    /// Largest exponent of any single variable.
    pub fn max_var_degree(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0) as usize
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().sum::<u32>() as usize == d)
    }

    pub fn scale(&self, k: &Scalar) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.clone(), c * k)),
        )
    }

    pub fn pow(&self, e: usize) -> MPoly {
        let mut acc = MPoly::constant(self.nvars, Scalar::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            let m = e
                .iter()
                .zip(x)
                .fold(c.clone(), |m, (&k, xi)| m * xi.pow(k as usize));
            acc + m
        })
    }

    /// Substitutes polynomials (all in a common ring) for the variables.
    pub fn compose(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars);
        let target = subs.first().map_or(0, MPoly::nvars);
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut m = MPoly::constant(target, c.clone());
            for (k, s) in e.iter().zip(subs) {
                if *k > 0 {
                    m = &m * &s.pow(*k as usize);
                }
            }
            out = &out + &m;
        }
        out
    }

    /// Max coefficient log-norm.
    pub fn gauss_norm(&self, p: Prime) -> LogNorm {
        LogNorm::max_of(self.terms.values().map(|c| c.lognorm(p)))
    }
}

impl Add<&MPoly> for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        rhs.terms.iter().fold(self.clone(), |acc, (e, c)| {
            acc.with_term(e.clone(), c.clone())
        })
    }
}

impl Sub<&MPoly> for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        rhs.terms
            .iter()
            .fold(self.clone(), |acc, (e, c)| acc.with_term(e.clone(), -c))
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut terms: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = terms.entry(e).or_default();
                *entry = &*entry + &(c1 * c2);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        MPoly {
            nvars: self.nvars.max(rhs.nvars),
            terms,
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| format!("({c})*x^{e:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A homogeneous form of fixed degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HomForm {
    poly: MPoly,
    degree: usize,
}

impl HomForm {
    pub fn new(poly: MPoly, degree: usize) -> Result<Self> {
        if !poly.is_homogeneous(degree) {
            return Err(Error::NotHomogeneous(degree));
        }
        Ok(HomForm { poly, degree })
    }

    /// Binary form `sum c_i X^(d-i) Y^i` from `[c_0, .., c_d]`.
    pub fn binary(coeffs_by_y_power: &[Scalar]) -> Self {
        let d = coeffs_by_y_power.len().saturating_sub(1);
        let poly = MPoly::from_terms(
            2,
            coeffs_by_y_power
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![(d - i) as u32, i as u32], c.clone())),
        );
        HomForm { poly, degree: d }
    }

    /// Homogenizes `P(z)` to degree `d >= deg P` with `z = X / Y`.
    pub fn homogenize(p: &Poly, d: usize) -> Result<Self> {
        if p.degree().unwrap_or(0) > d {
            return Err(Error::DegreeMismatch(p.degree().unwrap_or(0), d));
        }
        let poly = MPoly::from_terms(
            2,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u32, (d - i) as u32], c.clone())),
        );
        Ok(HomForm { poly, degree: d })
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn scale(&self, k: &Scalar) -> HomForm {
        HomForm {
            poly: self.poly.scale(k),
            degree: self.degree,
        }
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        self.poly.eval(x)
    }

    /// Dense binary coefficients `[c_0, .., c_d]`, `c_i` at `X^(d-i) Y^i`.
    pub fn binary_coeffs(&self) -> Vec<Scalar> {
        assert_eq!(self.nvars(), 2, "binary form expected");
        let d = self.degree;
        (0..=d)
            .map(|i| self.poly.coeff(&[(d - i) as u32, i as u32]))
            .collect()
    }

    /// `F(z, 1)` as a univariate polynomial in `z`.
    pub fn dehomogenize(&self) -> Poly {
        let mut cs = self.binary_coeffs();
        cs.reverse();
        Poly::new(cs)
    }

    /// `F(G_0, .., G_N)` for forms of a common degree.
    pub fn compose(&self, inner: &[HomForm]) -> HomForm {
        let e = inner.first().map_or(0, HomForm::degree);
        let subs: Vec<MPoly> = inner.iter().map(|f| f.poly.clone()).collect();
        HomForm {
            poly: self.poly.compose(&subs),
            degree: self.degree * e,
        }
    }
}
