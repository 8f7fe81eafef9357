//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use berkdyn::berkline::{BerkPoint, Disk};
use berkdyn::field::{rat, HomForm, Poly, Prime, Radius, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

/// A rational with small height and a random power of `p` in it.
pub fn scalar(r: &mut ChaCha8Rng, p: Prime) -> Scalar {
    let num = r.gen_range(-40i64..=40);
    let den = r.gen_range(1i64..=9);
    let k = r.gen_range(-2i64..=3);
    &Scalar::from_frac(num, den) * &Scalar::prime_power(p, k)
}

pub fn nonzero_scalar(r: &mut ChaCha8Rng, p: Prime) -> Scalar {
    loop {
        let s = scalar(r, p);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A `p`-integral rational.
pub fn integral(r: &mut ChaCha8Rng, p: Prime) -> Scalar {
    let num = r.gen_range(-30i64..=30);
    let den = loop {
        let d = r.gen_range(1i64..=7);
        if d % p.get() as i64 != 0 {
            break d;
        }
    };
    &Scalar::from_frac(num, den) * &Scalar::prime_power(p, r.gen_range(0..=2))
}

pub fn poly(r: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> Poly {
    let deg = r.gen_range(0..=max_deg);
    let mut cs: Vec<Scalar> = (0..deg).map(|_| scalar(r, p)).collect();
    cs.push(nonzero_scalar(r, p));
    Poly::new(cs)
}

/// A polynomial of the given degree.
pub fn poly_of_degree(r: &mut ChaCha8Rng, p: Prime, deg: usize) -> Poly {
    let mut cs: Vec<Scalar> = (0..deg).map(|_| scalar(r, p)).collect();
    cs.push(nonzero_scalar(r, p));
    Poly::new(cs)
}

/// `c Π (T - root)` with the roots returned alongside.
pub fn split_poly(r: &mut ChaCha8Rng, p: Prime, max_deg: usize) -> (Poly, Vec<Scalar>) {
    let deg = r.gen_range(1..=max_deg);
    let mut roots: Vec<Scalar> = Vec::with_capacity(deg);
    for _ in 0..deg {
        // repeat an earlier root now and then
        if !roots.is_empty() && r.gen_bool(0.2) {
            let again = roots.choose(r).unwrap().clone();
            roots.push(again);
        } else {
            roots.push(scalar(r, p));
        }
    }
    let c = nonzero_scalar(r, p);
    (Poly::from_roots(&roots).scale(&c), roots)
}

/// Exponent `m / q` with `q` in {1, 2, 3, 4, 8}.
pub fn exponent(r: &mut ChaCha8Rng, lo: i64, hi: i64) -> berkdyn::field::Rat {
    let q = *[1i64, 2, 3, 4, 8].choose(r).unwrap();
    rat(r.gen_range(lo * q..=hi * q), q)
}

pub fn radius_ii(r: &mut ChaCha8Rng) -> Radius {
    Radius::exp(exponent(r, -5, 3))
}

pub fn radius_iii(r: &mut ChaCha8Rng) -> Radius {
    Radius::new(exponent(r, -5, 3), *[-1i64, 1].choose(r).unwrap())
}

pub fn disk(r: &mut ChaCha8Rng, p: Prime) -> Disk {
    let rad = if r.gen_bool(0.75) {
        radius_ii(r)
    } else {
        radius_iii(r)
    };
    Disk::new(p, scalar(r, p), rad)
}

/// A point of type I, II or III.
pub fn point_123(r: &mut ChaCha8Rng, p: Prime) -> BerkPoint {
    match r.gen_range(0..4) {
        0 => BerkPoint::rigid(scalar(r, p)),
        1 => BerkPoint::ball(p, scalar(r, p), radius_iii(r)),
        _ => BerkPoint::ball(p, scalar(r, p), radius_ii(r)),
    }
}

/// A type II point with integer log-radius.
pub fn type_ii_int(r: &mut ChaCha8Rng, p: Prime) -> BerkPoint {
    let a = Scalar::from_int(r.gen_range(0..(p.get() as i64).pow(3)));
    BerkPoint::ball(p, a, Radius::exp_int(r.gen_range(-4..=0)))
}

pub fn binary(cs: &[Scalar]) -> HomForm {
    HomForm::binary(cs)
}

/// Coefficients of a binary form of degree `d`, with a bias toward
/// `p`-integral entries so that good reduction shows up often.
pub fn binary_coeffs(r: &mut ChaCha8Rng, p: Prime, d: usize) -> Vec<Scalar> {
    (0..=d)
        .map(|_| match r.gen_range(0..4) {
            0 => Scalar::zero(),
            1 => scalar(r, p),
            _ => Scalar::from_int(r.gen_range(-4..=4)),
        })
        .collect()
}
