//! Dynamical Green functions of homogeneous lifts, with certified error.
//!
//! Values are in log units: `G_n(z) = log_p |F^n(z)| / d^n` where
//! `|z| = max_i |z_i|`. A constant `C1 >= 0` with
//! `d log|z| - C1 <= log|F(z)| <= d log|z|` gives `|G - G_n| <= C1 / d^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::berkline::{BerkPoint, Disk};
use crate::dynamics::ProjMap;
use crate::error::{Error, Result};
use crate::field::{resultant, HomForm, LogNorm, MPoly, Poly, Prime, Radius, Rat, Scalar};
use crate::tree::{breakpoints, hull, inf_norm, sup_norm, StdAffinoid};

/// Homogeneous Nullstellensatz data: `T_i^s = Σ_j λ[i][j] F_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullCertificate {
    pub s: usize,
    pub lambdas: Vec<Vec<HomForm>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// `C1 = -log_p |Res(F_0, F_1)|`.
    Resultant {
        resultant_log: LogNorm,
    },
    Nullstellensatz(NullCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenContext {
    f: ProjMap,
    c1: Rat,
    certificate: Certificate,
}

impl GreenContext {
    pub fn map(&self) -> &ProjMap {
        &self.f
    }

    pub fn c1(&self) -> &Rat {
        &self.c1
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    /// `C1 / d^n`.
    pub fn error_bound(&self, n: usize) -> Rat {
        &self.c1 / d_pow(self.degree(), n)
    }
}

fn d_pow(d: usize, n: usize) -> Rat {
    Rat::from_integer(num_traits::pow(BigInt::from(d), n))
}

/// Checks the identity exactly and returns the constant it certifies.
pub fn verify_certificate(p: Prime, f: &ProjMap, cert: &NullCertificate) -> Result<Rat> {
    let n = f.forms().len();
    let d = f.degree();
    if cert.s < d {
        return Err(Error::InvalidCertificate(format!(
            "s = {} is below the degree {d}",
            cert.s
        )));
    }
    if cert.lambdas.len() != n || cert.lambdas.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidCertificate(format!(
            "expected a {n}x{n} array of cofactors"
        )));
    }
    let mut c1 = Rat::zero();
    for (i, row) in cert.lambdas.iter().enumerate() {
        let mut sum = MPoly::zero(n);
        for (lam, fj) in row.iter().zip(f.forms()) {
            if lam.nvars() != n || (!lam.is_zero() && lam.degree() != cert.s - d) {
                return Err(Error::InvalidCertificate(format!(
                    "cofactor in row {i} has the wrong shape"
                )));
            }
            sum = &sum + &(lam.poly() * fj.poly());
            if let Some(v) = lam.poly().gauss_norm(p).as_rat() {
                if *v > c1 {
                    c1 = v.clone();
                }
            }
        }
        if sum != MPoly::var(n, i).pow(cert.s) {
            return Err(Error::InvalidCertificate(format!(
                "identity fails for T_{i}^{}",
                cert.s
            )));
        }
    }
    Ok(c1)
}

/// Builds the context; maps of `P^N` with `N >= 2` need a certificate.
pub fn make_context(p: Prime, f: &ProjMap, cert: Option<NullCertificate>) -> Result<GreenContext> {
    if f.dim() == 1 {
        if let Some(c) = &cert {
            verify_certificate(p, f, c)?;
        }
        let res = resultant(&f.forms()[0], &f.forms()[1])?;
        let resultant_log = res.lognorm(p);
        let c1 = -resultant_log.as_rat().expect("nonzero resultant").clone();
        return Ok(GreenContext {
            f: f.clone(),
            c1,
            certificate: Certificate::Resultant { resultant_log },
        });
    }
    let cert = cert.ok_or(Error::MissingCertificate)?;
    let c1 = verify_certificate(p, f, &cert)?;
    Ok(GreenContext {
        f: f.clone(),
        c1,
        certificate: Certificate::Nullstellensatz(cert),
    })
}

/// Solves a square system over Q, or `None` when it is singular.
fn solve(mut m: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        rhs.swap(piv, col);
        let inv = m[col][col].recip();
        for c in col..n {
            m[col][c] = &m[col][c] * &inv;
        }
        rhs[col] = &rhs[col] * &inv;
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let k = m[r][col].clone();
            for c in col..n {
                let t = &k * &m[col][c];
                m[r][c] = &m[r][c] - &t;
            }
            let t = &k * &rhs[col];
            rhs[r] = &rhs[r] - &t;
        }
    }
    Some(rhs)
}

/// Bezout cofactors for a map of the line, with `s = 2d - 1`.
pub fn bezout_certificate(f: &ProjMap) -> Result<NullCertificate> {
    if f.dim() != 1 {
        return Err(Error::NotOneDimensional(f.dim()));
    }
    let d = f.degree();
    let (f0, f1) = (f.forms()[0].binary_coeffs(), f.forms()[1].binary_coeffs());
    let size = 2 * d;
    // unknowns: a_0..a_{d-1}, b_0..b_{d-1}; row m is the Y^m coefficient
    let mut m = vec![vec![Scalar::zero(); size]; size];
    for k in 0..d {
        for i in 0..=d {
            m[k + i][k] = f0[i].clone();
            m[k + i][d + k] = f1[i].clone();
        }
    }
    let mut lambdas = Vec::with_capacity(2);
    for target in [0, size - 1] {
        let mut rhs = vec![Scalar::zero(); size];
        rhs[target] = Scalar::one();
        let sol = solve(m.clone(), rhs).ok_or(Error::CommonZero)?;
        lambdas.push(vec![HomForm::binary(&sol[..d]), HomForm::binary(&sol[d..])]);
    }
    Ok(NullCertificate {
        s: 2 * d - 1,
        lambdas,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenValue {
    pub value: Rat,
    pub n_used: usize,
    pub error_bound: Rat,
}

fn vec_log(p: Prime, z: &[Scalar]) -> Rat {
    let l = LogNorm::max_of(z.iter().map(|x| x.lognorm(p)));
    l.as_rat().expect("nonzero vector").clone()
}

fn check_point(ctx: &GreenContext, z: &[Scalar]) -> Result<()> {
    if z.len() != ctx.f.forms().len() {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            ctx.f.forms().len(),
            z.len()
        )));
    }
    if z.iter().all(Scalar::is_zero) {
        return Err(Error::InvalidPoint("the origin has no Green value".into()));
    }
    Ok(())
}

/// Residue of a `p`-integral rational modulo `m`.
fn reduce_mod(q: &Rat, m: &BigInt) -> BigInt {
    let inv = q.denom().extended_gcd(m).x;
    (q.numer() * inv).mod_floor(m)
}

fn valuation_mod(p: Prime, x: &BigInt, digits: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let pb = p.big();
    let mut v = 0;
    let mut x = x.clone();
    while (&x % &pb).is_zero() && v < digits {
        x /= &pb;
        v += 1;
    }
    (v < digits).then_some(v)
}

/// `G_0(z), ..., G_n(z)`.
///
/// Iterates primitive integral vectors modulo `p^M`. Dividing out the
/// content costs at most `C1` digits per step, so with
/// `M = (n + 1)(⌈C1⌉ + 1) + 1` every valuation read off is exact and the
/// values agree with exact rational iteration.
pub fn green_iterates(p: Prime, ctx: &GreenContext, z: &[Scalar], n: usize) -> Result<Vec<Rat>> {
    check_point(ctx, z)?;
    let d = Rat::from_integer(BigInt::from(ctx.degree()));
    let l0 = vec_log(p, z);
    let per_step = ctx
        .c1
        .ceil()
        .to_integer()
        .to_u64()
        .expect("C1 is nonnegative")
        + 1;
    let digits = (n as u64 + 1) * per_step + 1;
    let m = num_traits::pow(p.big(), digits as usize);
    // |p^l0| = p^(-l0), so this rescales z to norm one
    let shift = Scalar::prime_power(p, l0.to_integer().to_i64().expect("valuation fits"));
    let mut cur: Vec<BigInt> = z
        .iter()
        .map(|x| reduce_mod((x * &shift).rat(), &m))
        .collect();
    let forms: Vec<Vec<(Vec<u32>, BigInt)>> = ctx
        .f
        .forms()
        .iter()
        .map(|h| {
            h.poly()
                .terms()
                .map(|(e, c)| (e.clone(), reduce_mod(c.rat(), &m)))
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(n + 1);
    let mut g = l0;
    let mut weight = Rat::one();
    out.push(g.clone());
    for _ in 0..n {
        let next: Vec<BigInt> = forms
            .iter()
            .map(|terms| {
                terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
                    let mono = cur.iter().zip(e).fold(c.clone(), |t, (x, &k)| {
                        (t * x.modpow(&BigInt::from(k), &m)) % &m
                    });
                    (acc + mono) % &m
                })
            })
            .collect();
        let v = next
            .iter()
            .filter_map(|x| valuation_mod(p, x, digits))
            .min()
            .ok_or_else(|| Error::InvalidPoint("lost p-adic precision while iterating".into()))?;
        let pv = num_traits::pow(p.big(), v as usize);
        cur = next.into_iter().map(|x| x / &pv).collect();
        weight /= &d;
        g -= Rat::from_integer(BigInt::from(v)) * &weight;
        out.push(g.clone());
    }
    Ok(out)
}

/// Smallest `n` with `C1 / d^n <= eps`.
pub fn steps_for(ctx: &GreenContext, eps: &Rat) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let mut n = 0;
    while ctx.error_bound(n) > *eps {
        n += 1;
    }
    Ok(n)
}

pub fn green_eval(p: Prime, ctx: &GreenContext, z: &[Scalar], eps: &Rat) -> Result<GreenValue> {
    let n = steps_for(ctx, eps)?;
    let gs = green_iterates(p, ctx, z, n)?;
    Ok(GreenValue {
        value: gs[n].clone(),
        n_used: n,
        error_bound: ctx.error_bound(n),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub n: usize,
    /// `|G_{n+1}(z) - G_n(z)|`.
    pub gap: Rat,
    /// `C1 / d^n`.
    pub bound: Rat,
}

impl Gap {
    pub fn within_bound(&self) -> bool {
        self.gap <= self.bound
    }
}

pub fn green_cauchy_check(
    p: Prime,
    ctx: &GreenContext,
    z: &[Scalar],
    n_max: usize,
) -> Result<Vec<Gap>> {
    let gs = green_iterates(p, ctx, z, n_max + 1)?;
    Ok((0..=n_max)
        .map(|n| Gap {
            n,
            gap: (&gs[n + 1] - &gs[n]).abs(),
            bound: ctx.error_bound(n),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftVerdict {
    /// The window stayed within `2 C1` for every `n` tested.
    Bounded,
    /// The observed window grew strictly and left `2 C1`.
    UnboundedTrend,
    Inconclusive,
}

impl std::fmt::Display for LiftVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LiftVerdict::Bounded => "bounded",
            LiftVerdict::UnboundedTrend => "unbounded-trend",
            LiftVerdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

/// One iterate of the probe; all values are `log_p` of `max(|F^n_0|, |F^n_1|)`
/// on the affinoid, before renormalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftRow {
    pub n: usize,
    pub sup: LogNorm,
    pub sup_witness: BerkPoint,
    /// Certified lower bound for the infimum.
    pub inf_lower: LogNorm,
    /// Value at a skeleton point, hence an upper bound for the infimum.
    pub inf_upper: LogNorm,
    pub inf_witness: BerkPoint,
}

impl LiftRow {
    /// Upper bound for `sup - inf` after rescaling so the sup is `0`.
    pub fn window_upper(&self) -> Option<Rat> {
        diff(&self.sup, &self.inf_lower)
    }

    /// Lower bound for `sup - inf`.
    pub fn window_lower(&self) -> Option<Rat> {
        diff(&self.sup, &self.inf_upper)
    }
}

fn diff(a: &LogNorm, b: &LogNorm) -> Option<Rat> {
    Some(a.as_rat()? - b.as_rat()?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub c1: Rat,
    pub rows: Vec<LiftRow>,
    pub verdict: LiftVerdict,
}

fn line_value(coeffs: &[(usize, Rat)], t: &Rat) -> Rat {
    coeffs
        .iter()
        .map(|(i, c)| c + t * Rat::from_integer(BigInt::from(*i)))
        .max()
        .expect("nonzero polynomial")
}

fn log_coeffs(p: Prime, poly: &Poly, center: &Scalar) -> Vec<(usize, Rat)> {
    poly.taylor_shift(center)
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.lognorm(p).as_rat().map(|v| (i, v.clone())))
        .collect()
}

/// Lowest value of `max(log|P0|, log|P1|)` along the skeleton of the
/// affinoid, i.e. the hull of its Shilov points.
fn skeleton_min(p: Prime, polys: [&Poly; 2], a: &StdAffinoid) -> Result<(Rat, BerkPoint)> {
    let tree = hull(p, &a.shilov_boundary())?;
    let mut best: Option<(Rat, BerkPoint)> = None;
    let mut consider = |val: Rat, center: &Scalar, t: &Rat| {
        if best.as_ref().is_none_or(|(b, _)| val < *b) {
            let d = Disk::new(p, center.clone(), Radius::exp(t.clone()));
            best = Some((val, BerkPoint::Ball(d)));
        }
    };
    for v in tree.vertices() {
        let c = v.center();
        let lo = v.radius().exponent();
        let hi = tree
            .parent(p, v)
            .map_or(lo.clone(), |u| u.radius().exponent());
        let lines = [log_coeffs(p, polys[0], c), log_coeffs(p, polys[1], c)];
        let mut ts: Vec<Rat> = vec![lo.clone(), hi.clone()];
        for poly in polys {
            ts.extend(
                breakpoints(p, poly, c)
                    .into_iter()
                    .filter(|t| *t > lo && *t < hi),
            );
        }
        ts.sort();
        ts.dedup();
        let g = |t: &Rat| (line_value(&lines[0], t), line_value(&lines[1], t));
        for w in ts.windows(2).chain(std::iter::once(&ts[..1])) {
            let (a0, a1) = g(&w[0]);
            consider(a0.clone().max(a1.clone()), c, &w[0]);
            if w.len() < 2 {
                continue;
            }
            let (b0, b1) = g(&w[1]);
            consider(b0.clone().max(b1.clone()), c, &w[1]);
            // both pieces are affine on [w0, w1]; look for a crossing
            let (da, db) = (&a0 - &a1, &b0 - &b1);
            if da.is_positive() != db.is_positive() && !da.is_zero() && !db.is_zero() {
                let t = &w[0] + (&w[1] - &w[0]) * &da / (&da - &db);
                let (c0, c1) = g(&t);
                consider(c0.max(c1), c, &t);
            }
        }
    }
    Ok(best.expect("nonempty skeleton"))
}

/// Tracks `max(|F^n_0|, |F^n_1|)` on an affinoid in the affine chart.
pub fn bounded_lift_probe(
    p: Prime,
    ctx: &GreenContext,
    a: &StdAffinoid,
    n_max: usize,
) -> Result<LiftReport> {
    if ctx.f.dim() != 1 {
        return Err(Error::NotOneDimensional(ctx.f.dim()));
    }
    if a.outer().is_none() {
        return Err(Error::OutsideAffineChart);
    }
    if n_max == 0 {
        return Err(Error::Empty("probe iterations"));
    }
    let mut forms: Vec<HomForm> = ctx.f.forms().to_vec();
    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        if n > 1 {
            forms = ctx.f.forms().iter().map(|h| h.compose(&forms)).collect();
        }
        let (p0, p1) = (forms[0].dehomogenize(), forms[1].dehomogenize());
        let s0 = sup_norm(p, &p0, a)?;
        let s1 = sup_norm(p, &p1, a)?;
        let sup = if s1.value > s0.value { s1 } else { s0 };
        let i0 = inf_norm(p, &p0, a)?;
        let i1 = inf_norm(p, &p1, a)?;
        let inf_lower = i0.value.max(i1.value);
        let (upper, inf_witness) = skeleton_min(p, [&p0, &p1], a)?;
        rows.push(LiftRow {
            n,
            sup: sup.value,
            sup_witness: sup.witness,
            inf_lower,
            inf_upper: LogNorm::from_rat(upper),
            inf_witness,
        });
    }
    let window = &ctx.c1 * Rat::from_integer(2.into());
    let bounded = rows
        .iter()
        .all(|r| r.window_upper().is_some_and(|w| w <= window));
    let lows: Vec<Option<Rat>> = rows.iter().map(LiftRow::window_lower).collect();
    let growing = lows.iter().all(Option::is_some)
        && lows.windows(2).all(|w| w[1] > w[0])
        && lows.last().unwrap().as_ref().is_some_and(|w| *w > window);
    let verdict = if bounded {
        LiftVerdict::Bounded
    } else if growing {
        LiftVerdict::UnboundedTrend
    } else {
        LiftVerdict::Inconclusive
    };
    Ok(LiftReport {
        c1: ctx.c1.clone(),
        rows,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::normalize_lift;
    use crate::field::rat;

    fn p2() -> Prime {
        Prime::new(2).unwrap()
    }

    fn binary(cs: &[i64]) -> HomForm {
        HomForm::binary(&cs.iter().map(|&c| Scalar::from_int(c)).collect::<Vec<_>>())
    }

    fn ctx_of(f0: &[i64], f1: &[i64]) -> GreenContext {
        let f = normalize_lift(p2(), vec![binary(f0), binary(f1)]).unwrap();
        make_context(p2(), &f, None).unwrap()
    }

    fn sv(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    fn exact_iterates(ctx: &GreenContext, z: &[Scalar], n: usize) -> Vec<Rat> {
        let d = Rat::from_integer(ctx.degree().into());
        let mut cur = z.to_vec();
        let mut scale = Rat::one();
        let mut out = vec![vec_log(p2(), &cur)];
        for _ in 0..n {
            cur = ctx.map().eval_lift(&cur);
            scale *= &d;
            out.push(vec_log(p2(), &cur) / &scale);
        }
        out
    }

    #[test]
    fn modular_iteration_matches_exact() {
        let cases = [
            ctx_of(&[1, 0, 0], &[0, 0, 2]),
            ctx_of(&[1, -1, 0], &[0, 0, 2]),
            ctx_of(&[3, 1, 4], &[1, 5, 8]),
            ctx_of(&[1, 0, 0, 6], &[0, 4, 0, 1]),
        ];
        let pts = [
            sv(&[1, 1]),
            sv(&[0, 3]),
            sv(&[6, 1]),
            vec![Scalar::from_frac(3, 8), Scalar::from_frac(5, 2)],
        ];
        for ctx in &cases {
            for z in &pts {
                assert_eq!(
                    green_iterates(p2(), ctx, z, 6).unwrap(),
                    exact_iterates(ctx, z, 6),
                    "{z:?}"
                );
            }
        }
    }

    #[test]
    fn context_constants() {
        assert_eq!(ctx_of(&[1, 0, 0], &[0, 0, 1]).c1(), &rat(0, 1));
        assert_eq!(ctx_of(&[1, 0, 2], &[0, 0, 1]).c1(), &rat(0, 1));
        assert_eq!(ctx_of(&[1, 0, 0], &[0, 0, 2]).c1(), &rat(2, 1));
    }

    #[test]
    fn bezout_route_is_no_worse_than_resultant() {
        let p = p2();
        for (f0, f1) in [
            (vec![1, 0, 0], vec![0, 0, 2]),
            (vec![1, 3, 2], vec![0, 4, 1]),
            (vec![1, 0, 0, 4], vec![2, 0, 1, 0]),
        ] {
            let ctx = ctx_of(&f0, &f1);
            let cert = bezout_certificate(ctx.map()).unwrap();
            let c = verify_certificate(p, ctx.map(), &cert).unwrap();
            assert!(c <= *ctx.c1(), "{c} > {}", ctx.c1());
        }
    }

    #[test]
    fn rejects_bad_certificates() {
        let p = p2();
        let ctx = ctx_of(&[1, 0, 0], &[0, 0, 2]);
        let mut cert = bezout_certificate(ctx.map()).unwrap();
        cert.lambdas[0][0] = cert.lambdas[0][0].scale(&3.into());
        assert!(matches!(
            verify_certificate(p, ctx.map(), &cert),
            Err(Error::InvalidCertificate(_))
        ));
    }

    #[test]
    fn higher_dimension_needs_certificate() {
        let p = p2();
        let n = 3;
        let sq = |i: usize| HomForm::new(MPoly::var(n, i).pow(2), 2).unwrap();
        let f = normalize_lift(p, vec![sq(0), sq(1), sq(2)]).unwrap();
        assert_eq!(make_context(p, &f, None), Err(Error::MissingCertificate));
        let one = HomForm::new(MPoly::constant(n, Scalar::one()), 0).unwrap();
        let zero = HomForm::new(MPoly::zero(n), 0).unwrap();
        let lambdas = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { one.clone() } else { zero.clone() })
                    .collect()
            })
            .collect();
        let ctx = make_context(p, &f, Some(NullCertificate { s: 2, lambdas })).unwrap();
        assert_eq!(ctx.c1(), &rat(0, 1));
        let v = green_eval(p, &ctx, &sv(&[1, 2, 4]), &rat(1, 8)).unwrap();
        assert_eq!(v.value, rat(0, 1));
    }

    #[test]
    fn eval_examples() {
        let p = p2();
        let sq = ctx_of(&[1, 0, 0], &[0, 0, 1]);
        let v = green_eval(p, &sq, &sv(&[1, 2]), &rat(1, 1024)).unwrap();
        assert_eq!(
            (v.value, v.n_used, v.error_bound),
            (rat(0, 1), 0, rat(0, 1))
        );
        let bad = ctx_of(&[1, 0, 0], &[0, 0, 2]);
        let v = green_eval(p, &bad, &sv(&[1, 1]), &rat(1, 1024)).unwrap();
        assert_eq!(v.value, rat(0, 1));
        assert_eq!(v.n_used, 11);
        let a = green_eval(p, &sq, &sv(&[2, 2]), &rat(1, 8)).unwrap().value;
        let b = green_eval(p, &sq, &sv(&[1, 1]), &rat(1, 8)).unwrap().value;
        assert_eq!(a, b - rat(1, 1));
        assert_eq!(
            green_eval(p, &sq, &sv(&[0, 0]), &rat(1, 2)).map(|_| ()),
            Err(Error::InvalidPoint("the origin has no Green value".into()))
        );
        assert_eq!(
            green_eval(p, &sq, &sv(&[1, 0]), &rat(0, 1)),
            Err(Error::NonPositiveTolerance)
        );
    }

    #[test]
    fn gaps_respect_bound() {
        let p = p2();
        let bad = ctx_of(&[1, 0, 0], &[0, 0, 2]);
        for z in [sv(&[1, 1]), sv(&[0, 1]), sv(&[3, 8])] {
            for g in green_cauchy_check(p, &bad, &z, 6).unwrap() {
                assert!(g.within_bound(), "{g:?}");
            }
        }
        // closed form for this map: G = max(log|x|, log|y| - 1)
        let gs = green_iterates(p, &bad, &sv(&[0, 1]), 8).unwrap();
        for (n, g) in gs.iter().enumerate() {
            let err = (g - rat(-1, 1)).abs();
            assert!(err <= bad.error_bound(n));
        }
    }

    fn disk(a: i64, e: i64) -> Disk {
        Disk::new(p2(), a.into(), Radius::exp_int(e))
    }

    #[test]
    fn lift_probe_examples() {
        let p = p2();
        let sq = ctx_of(&[1, 0, 0], &[0, 0, 1]);
        let unit = StdAffinoid::new(p, Some(disk(0, 0)), vec![]).unwrap();
        let rep = bounded_lift_probe(p, &sq, &unit, 4).unwrap();
        assert_eq!(rep.verdict, LiftVerdict::Bounded);
        assert!(rep
            .rows
            .iter()
            .all(|r| r.sup == LogNorm::zero() && r.inf_lower == LogNorm::zero()));

        let annulus = StdAffinoid::new(p, Some(disk(0, 1)), vec![disk(0, -1)]).unwrap();
        let rep = bounded_lift_probe(p, &sq, &annulus, 4).unwrap();
        assert_eq!(rep.verdict, LiftVerdict::UnboundedTrend);
        assert_eq!(rep.rows[3].sup, LogNorm::from_int(16));

        let f = ctx_of(&[1, 0, 2], &[0, 0, 1]);
        let small = StdAffinoid::new(p, Some(disk(0, -1)), vec![]).unwrap();
        assert_eq!(
            bounded_lift_probe(p, &f, &small, 4).unwrap().verdict,
            LiftVerdict::Bounded
        );
    }
}
