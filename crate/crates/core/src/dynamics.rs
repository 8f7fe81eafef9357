//! Endomorphisms of the projective line and their polynomial lifts.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::berkline::{BerkPoint, Disk};
use crate::error::{Error, Result};
use crate::field::fp::{det_mod, FpPoly};
use crate::field::resultant::sylvester_matrix;
use crate::field::{count_zeros_in_disk, resultant, HomForm, LogNorm, Poly, Prime, Radius, Scalar};

/// A lift `(F_0, ..., F_N)` of common degree `d >= 2`, scaled so that the
/// largest coefficient has norm one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjMap {
    forms: Vec<HomForm>,
}

/// Scales the forms by a power of `p` so the maximal coefficient norm is 1.
pub fn normalize_lift(p: Prime, forms: Vec<HomForm>) -> Result<ProjMap> {
    let first = forms.first().ok_or(Error::Empty("map forms"))?;
    let d = first.degree();
    let n = first.nvars();
    for f in &forms {
        if f.degree() != d {
            return Err(Error::DegreeMismatch(d, f.degree()));
        }
        if f.nvars() != n || n != forms.len() {
            return Err(Error::InvalidPoint(format!(
                "{} forms in {} variables do not define a self-map",
                forms.len(),
                f.nvars()
            )));
        }
    }
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    if forms.iter().any(HomForm::is_zero) {
        return Err(Error::CommonZero);
    }
    if forms.len() == 2 && resultant(&forms[0], &forms[1])?.is_zero() {
        return Err(Error::CommonZero);
    }
    let top = LogNorm::max_of(forms.iter().map(|f| f.poly().gauss_norm(p)));
    let k = top
        .as_rat()
        .expect("nonzero forms have a finite norm")
        .to_integer();
    let k: i64 = k.try_into().expect("coefficient size out of range");
    // |p^k| = p^(-k) cancels a maximal norm of p^k
    let s = Scalar::prime_power(p, k);
    Ok(ProjMap {
        forms: forms.iter().map(|f| f.scale(&s)).collect(),
    })
}

impl ProjMap {
    /// `z -> num(z) / den(z)` on the projective line.
    pub fn from_rational(p: Prime, num: &Poly, den: &Poly) -> Result<Self> {
        let d = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        normalize_lift(
            p,
            vec![HomForm::homogenize(num, d)?, HomForm::homogenize(den, d)?],
        )
    }

    pub fn polynomial(p: Prime, poly: &Poly) -> Result<Self> {
        Self::from_rational(p, poly, &Poly::constant(Scalar::one()))
    }

    pub fn forms(&self) -> &[HomForm] {
        &self.forms
    }

    pub fn degree(&self) -> usize {
        self.forms[0].degree()
    }

    /// `N` for a map of `P^N`.
    pub fn dim(&self) -> usize {
        self.forms.len() - 1
    }

    fn require_line(&self) -> Result<()> {
        if self.dim() == 1 {
            Ok(())
        } else {
            Err(Error::NotOneDimensional(self.dim()))
        }
    }

    /// The chart representative `F_0(z,1) / F_1(z,1)`.
    pub fn chart(&self) -> Result<(Poly, Poly)> {
        self.require_line()?;
        Ok((self.forms[0].dehomogenize(), self.forms[1].dehomogenize()))
    }

    /// Evaluates the lift on a vector of homogeneous coordinates.
    pub fn eval_lift(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.forms.iter().map(|f| f.eval(x)).collect()
    }

    /// The lift of `f ∘ g`.
    pub fn compose(&self, p: Prime, g: &ProjMap) -> Result<ProjMap> {
        normalize_lift(p, self.forms.iter().map(|f| f.compose(g.forms())).collect())
    }
}

impl fmt::Display for ProjMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .forms
            .iter()
            .map(|h| format!("{:?}", h.poly()))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Exact image of a rigid point (including infinity).
pub fn apply_rigid(f: &ProjMap, x: &BerkPoint) -> Result<BerkPoint> {
    f.require_line()?;
    let coords = match x {
        BerkPoint::TypeI(a) => [a.clone(), Scalar::one()],
        BerkPoint::Infinity => [Scalar::one(), Scalar::zero()],
        other => return Err(Error::InvalidPoint(format!("{other:?} is not rigid"))),
    };
    let v = f.eval_lift(&coords);
    if v[1].is_zero() {
        Ok(BerkPoint::Infinity)
    } else {
        Ok(BerkPoint::TypeI(&v[0] / &v[1]))
    }
}

fn push_disk(p: Prime, num: &Poly, den: &Poly, d: &Disk) -> Result<Disk> {
    if count_zeros_in_disk(p, den, d.center(), d.radius())? > 0 {
        return Err(Error::PoleInBall);
    }
    let c = &num.eval(d.center()) / &den.eval(d.center());
    if d.radius().is_zero() {
        return Ok(Disk::point(c));
    }
    // |phi - phi(a)| = |num - phi(a) den| / |den| on the ball
    let diff = num - &den.scale(&c);
    let s = d.seminorm(p, &diff);
    let t = d.seminorm(p, den);
    let r = match (s, t) {
        (LogNorm::Finite(s), LogNorm::Finite(t)) => LogNorm::Finite(s - t),
        _ => LogNorm::NegInf,
    };
    Ok(Disk::new(p, c, Radius::from_log(r)))
}

/// `log_p |T - c|` at the image of the ball under `num/den`.
fn image_dist(p: Prime, num: &Poly, den: &Poly, d: &Disk, c: &Scalar) -> LogNorm {
    match (d.seminorm(p, &(num - &den.scale(c))), d.seminorm(p, den)) {
        (LogNorm::Finite(a), LogNorm::Finite(b)) => LogNorm::Finite(a - b),
        (a, _) => a,
    }
}

/// Image of a ball of positive radius, located from the seminorm of
/// `T - c` at the image alone, so poles inside the ball are harmless.
/// The image is first moved into the closed unit disk (inverting the
/// target coordinate if needed), then its center is found digit by digit.
fn locate_image(p: Prime, num: &Poly, den: &Poly, d: &Disk) -> BerkPoint {
    let inverted = image_dist(p, num, den, d, &Scalar::zero()) > LogNorm::zero();
    let (n, m) = if inverted { (den, num) } else { (num, den) };
    let mut b = Scalar::zero();
    let mut k: i64 = 0;
    let radius = loop {
        let v = image_dist(p, n, m, d, &b);
        let level = LogNorm::from_int(-k);
        if v <= LogNorm::from_int(-k - 1) {
            k += 1;
        } else if v < level {
            break v;
        } else {
            let step = Scalar::prime_power(p, k);
            let next = (1..p.get() as i64)
                .map(|digit| &b + &(&step * &Scalar::from_int(digit)))
                .find(|c| image_dist(p, n, m, d, c) < level);
            match next {
                Some(c) => {
                    b = c;
                    k += 1;
                }
                None => break level,
            }
        }
    };
    let img = BerkPoint::ball(p, b, Radius::from_log(radius));
    if inverted {
        img.invert(p)
    } else {
        img
    }
}

fn push_any(p: Prime, num: &Poly, den: &Poly, d: &Disk) -> Result<Disk> {
    match push_disk(p, num, den, d) {
        Err(Error::PoleInBall) if !d.radius().is_zero() => match locate_image(p, num, den, d) {
            BerkPoint::Ball(e) => Ok(e),
            other => Err(Error::InvalidPoint(format!(
                "ball image {other:?} is not a ball"
            ))),
        },
        r => r,
    }
}

fn push_with(
    p: Prime,
    f: &ProjMap,
    x: &BerkPoint,
    step: fn(Prime, &Poly, &Poly, &Disk) -> Result<Disk>,
) -> Result<BerkPoint> {
    let (num, den) = f.chart()?;
    match x {
        BerkPoint::TypeI(_) | BerkPoint::Infinity => apply_rigid(f, x),
        BerkPoint::Ball(d) => Ok(BerkPoint::from_disk(step(p, &num, &den, d)?)),
        BerkPoint::TypeIV(ds) => {
            let imgs = ds
                .iter()
                .map(|d| step(p, &num, &den, d).map(|e| (e.center().clone(), e.radius().clone())))
                .collect::<Result<Vec<_>>>()?;
            BerkPoint::type_iv(p, imgs)
        }
    }
}

/// Image of a point under a map of the line, using the closed-ball formula
/// in the affine chart only. Balls containing a pole of the chart
/// representative are rejected.
pub fn pushforward_in_chart(p: Prime, f: &ProjMap, x: &BerkPoint) -> Result<BerkPoint> {
    push_with(p, f, x, push_disk)
}

/// Image of any point under a map of the line. Balls that contain a pole
/// are handled by a change of chart on the target side.
pub fn pushforward(p: Prime, f: &ProjMap, x: &BerkPoint) -> Result<BerkPoint> {
    push_with(p, f, x, push_any)
}

pub fn orbit(p: Prime, f: &ProjMap, x: &BerkPoint, n: usize) -> Result<Vec<BerkPoint>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(x.clone());
    for _ in 0..n {
        let next = pushforward(p, f, out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// Forms reduced modulo `p`, as dense coefficient lists of `X^(d-i) Y^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueMap {
    pub prime: u64,
    pub forms: Vec<Vec<u64>>,
    pub degenerate: bool,
}

impl ResidueMap {
    fn binary_display(&self, cs: &[u64]) -> String {
        let d = cs.len() - 1;
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match (d - i, i) {
                    (0, 0) => String::new(),
                    (a, 0) => pow_str("X", a),
                    (0, b) => pow_str("Y", b),
                    (a, b) => format!("{}{}", pow_str("X", a), pow_str("Y", b)),
                };
                match (c, mono.is_empty()) {
                    (_, true) => c.to_string(),
                    (1, false) => mono,
                    _ => format!("{c}{mono}"),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

fn pow_str(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

impl fmt::Display for ResidueMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.forms.iter().map(|c| self.binary_display(c)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub residue: ResidueMap,
    pub good_reduction: bool,
    /// `log_p |Res(F_0, F_1)|`.
    pub resultant_log: LogNorm,
}

fn reduce_coeffs(p: Prime, cs: &[Scalar]) -> Vec<u64> {
    cs.iter()
        .map(|c| c.residue(p).expect("normalized coefficients are integral"))
        .collect()
}

/// Coefficientwise reduction. Good reduction is read off the resultant; the
/// degenerate flag is computed separately from the reduced Sylvester matrix.
pub fn reduce_map(p: Prime, f: &ProjMap) -> Result<Reduction> {
    f.require_line()?;
    let res = resultant(&f.forms[0], &f.forms[1])?;
    let resultant_log = res.lognorm(p);
    let good_reduction = resultant_log == LogNorm::zero();
    let forms: Vec<Vec<u64>> = f
        .forms
        .iter()
        .map(|h| reduce_coeffs(p, &h.binary_coeffs()))
        .collect();
    let vanishes = forms.iter().any(|c| c.iter().all(|&x| x == 0));
    let syl = sylvester_matrix(&f.forms[0].binary_coeffs(), &f.forms[1].binary_coeffs());
    let reduced: Vec<Vec<u64>> = syl.iter().map(|row| reduce_coeffs(p, row)).collect();
    let degenerate = vanishes || det_mod(reduced, p) == 0;
    Ok(Reduction {
        residue: ResidueMap {
            prime: p.get(),
            forms,
            degenerate,
        },
        good_reduction,
        resultant_log,
    })
}

/// A rational function over the residue field, in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRational {
    pub prime: u64,
    pub num: FpPoly,
    pub den: FpPoly,
}

impl ResidueRational {
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }
}

fn fp_display(poly: &FpPoly) -> String {
    let terms: Vec<String> = poly
        .coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, _) => c.to_string(),
            (_, 1) => pow_str("z", i),
            _ => format!("{c}{}", pow_str("z", i)),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl fmt::Display for ResidueRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.coeffs == [1] {
            write!(f, "{}", fp_display(&self.num))
        } else {
            write!(f, "({})/({})", fp_display(&self.num), fp_display(&self.den))
        }
    }
}

/// The residue map giving the action on tangent directions at the Gauss
/// point. The Gauss point is fixed exactly when the reduction, after
/// cancelling common factors, is nonconstant.
pub fn tangent_map_at_gauss(p: Prime, f: &ProjMap) -> Result<ResidueRational> {
    let (num, den) = f.chart()?;
    let q = p.get();
    let to_fp = |poly: &Poly| FpPoly::new(reduce_coeffs(p, poly.coeffs()));
    let (n, d) = (to_fp(&num), to_fp(&den));
    if n.is_zero() || d.is_zero() {
        return Err(Error::GaussNotFixed);
    }
    let g = n.gcd(&d, q);
    let (n, d) = (n.div_exact(&g, q), d.div_exact(&g, q));
    // make the denominator monic
    let lead = *d.coeffs.last().unwrap();
    let inv = (1..q).find(|&x| (x * lead) % q == 1).unwrap_or(1);
    let scale = |v: &FpPoly| FpPoly::new(v.coeffs.iter().map(|&c| (c * inv) % q).collect());
    let out = ResidueRational {
        prime: q,
        num: scale(&n),
        den: scale(&d),
    };
    if out.degree() == 0 {
        return Err(Error::GaussNotFixed);
    }
    Ok(out)
}

/// `log_p` of the chordal distance between two rigid points.
pub fn chordal(p: Prime, x: &BerkPoint, y: &BerkPoint) -> Result<LogNorm> {
    let pos = |a: &Scalar| {
        let l = a.lognorm(p);
        if l > LogNorm::zero() {
            l
        } else {
            LogNorm::zero()
        }
    };
    let neg = |l: LogNorm| match l {
        LogNorm::Finite(v) => LogNorm::Finite(-v),
        LogNorm::NegInf => unreachable!("max(0, .) is finite"),
    };
    match (x, y) {
        (BerkPoint::Infinity, BerkPoint::Infinity) => Ok(LogNorm::NegInf),
        (BerkPoint::Infinity, BerkPoint::TypeI(a)) | (BerkPoint::TypeI(a), BerkPoint::Infinity) => {
            Ok(neg(pos(a)))
        }
        (BerkPoint::TypeI(a), BerkPoint::TypeI(b)) => {
            let d = (a - b).lognorm(p);
            let s = &pos(a) + &pos(b);
            Ok(match (d, s) {
                (LogNorm::Finite(d), LogNorm::Finite(s)) => LogNorm::Finite(d - s),
                _ => LogNorm::NegInf,
            })
        }
        _ => Err(Error::InvalidPoint(
            "chordal distance needs rigid points".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeVerdict {
    Bounded,
    Expanding,
    Inconclusive,
}

impl fmt::Display for ProbeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProbeVerdict::Bounded => "bounded",
            ProbeVerdict::Expanding => "expanding",
            ProbeVerdict::Inconclusive => "inconclusive",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    /// `E_n` for `n = 1..=N`: the largest observed `log_p` ratio of chordal
    /// distances after and before `n` iterations.
    pub expansion: Vec<LogNorm>,
    pub verdict: ProbeVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeConfig {
    /// Pairs are drawn at distance `p^(-k)` from `x0` for each `k`.
    pub radii: Vec<i64>,
    pub iterations: usize,
    pub samples: usize,
    pub seed: u64,
}

/// Heuristic probe of equicontinuity of the iterates near a rigid point.
/// Never a certificate: it only reports what sampled pairs did.
pub fn equicontinuity_probe(
    p: Prime,
    f: &ProjMap,
    x0: &Scalar,
    cfg: &ProbeConfig,
) -> Result<ProbeReport> {
    f.require_line()?;
    if cfg.iterations == 0 || cfg.radii.is_empty() || cfg.samples == 0 {
        return Err(Error::Empty("probe schedule"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let q = p.get() as i64;
    let unit = |rng: &mut ChaCha8Rng| loop {
        let u: i64 = rng.gen_range(1..(8 * q));
        if u % q != 0 {
            break Scalar::from_int(u);
        }
    };
    let mut expansion = vec![LogNorm::NegInf; cfg.iterations];
    for k in &cfg.radii {
        let h = Scalar::prime_power(p, *k);
        for _ in 0..cfg.samples {
            let y = x0 + &(&h * &unit(&mut rng));
            let y2 = &y + &(&h * &unit(&mut rng));
            let (mut a, mut b) = (BerkPoint::TypeI(y), BerkPoint::TypeI(y2));
            let base = chordal(p, &a, &b)?;
            let base = base.finite().expect("distinct samples").clone();
            for slot in expansion.iter_mut() {
                a = apply_rigid(f, &a)?;
                b = apply_rigid(f, &b)?;
                let d = chordal(p, &a, &b)?;
                let e = match d {
                    LogNorm::Finite(v) => LogNorm::Finite(v - base.clone()),
                    LogNorm::NegInf => LogNorm::NegInf,
                };
                if e > *slot {
                    *slot = e;
                }
            }
        }
    }
    let verdict = probe_verdict(&expansion);
    Ok(ProbeReport { expansion, verdict })
}

fn probe_verdict(e: &[LogNorm]) -> ProbeVerdict {
    let first = e[0].clone().max(LogNorm::zero());
    if e.iter().all(|x| *x <= first) {
        return ProbeVerdict::Bounded;
    }
    let increasing = e.windows(2).all(|w| w[1] > w[0]);
    if increasing && *e.last().unwrap() > LogNorm::zero() {
        ProbeVerdict::Expanding
    } else {
        ProbeVerdict::Inconclusive
    }
}
