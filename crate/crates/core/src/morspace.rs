//! Coefficient points of polynomial maps `A^r -> A^s` of degree at most
//! `δ` in each variable, limits of rigid coefficient sequences, and the
//! evaluation map on product points of the polydisk.

use std::collections::{BTreeMap, BTreeSet};

use crate::berkline::{BerkPoint, Disk};
use crate::error::{Error, Result};
use crate::field::{LogNorm, MPoly, Prime, Radius, Rat, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dims {
    pub r: usize,
    pub s: usize,
    pub delta: u32,
}

impl Dims {
    /// All `(l, I)` with `0 <= l < s` and `I` in `{0..δ}^r`.
    pub fn indices(&self) -> Vec<CoordIndex> {
        let mut exps: Vec<Vec<u32>> = vec![vec![]];
        for _ in 0..self.r {
            exps = exps
                .into_iter()
                .flat_map(|e| {
                    (0..=self.delta).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        (0..self.s)
            .flat_map(|l| exps.iter().map(move |e| (l, e.clone())))
            .collect()
    }
}

/// Output component (0-based) and monomial exponent.
pub type CoordIndex = (usize, Vec<u32>);

fn monomial(z: &[Scalar], e: &[u32]) -> Scalar {
    z.iter()
        .zip(e)
        .fold(Scalar::one(), |acc, (x, &k)| acc * x.pow(k as usize))
}

/// A polynomial map given by its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap {
    components: Vec<MPoly>,
    r: usize,
}

impl PolyMap {
    pub fn new(r: usize, components: Vec<MPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Empty("map components"));
        }
        if let Some(c) = components.iter().find(|c| c.nvars() != r) {
            return Err(Error::CoeffPoint(format!(
                "component in {} variables, expected {r}",
                c.nvars()
            )));
        }
        Ok(PolyMap { components, r })
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    pub fn eval(&self, z: &[Scalar]) -> Vec<Scalar> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }
}

/// A product point of the closed polydisk indexed by `(l, I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffPoint {
    dims: Dims,
    coords: BTreeMap<CoordIndex, BerkPoint>,
}

fn in_unit_disk(p: Prime, x: &BerkPoint) -> bool {
    let unit = Disk::unit();
    match x {
        BerkPoint::TypeI(a) => a.lognorm(p) <= LogNorm::zero(),
        BerkPoint::Ball(d) => d.leq(p, &unit),
        BerkPoint::TypeIV(ds) => ds.last().is_some_and(|d| d.leq(p, &unit)),
        BerkPoint::Infinity => false,
    }
}

impl CoeffPoint {
    /// Missing coordinates default to the rigid point `0`.
    pub fn new(p: Prime, dims: Dims, mut coords: BTreeMap<CoordIndex, BerkPoint>) -> Result<Self> {
        let valid: BTreeSet<CoordIndex> = dims.indices().into_iter().collect();
        for (k, x) in &coords {
            if !valid.contains(k) {
                return Err(Error::CoeffPoint(format!(
                    "index {k:?} outside the index set"
                )));
            }
            if !in_unit_disk(p, x) {
                return Err(Error::CoeffPoint(format!(
                    "coordinate {k:?} = {x:?} leaves the closed unit disk"
                )));
            }
        }
        for k in valid {
            coords
                .entry(k)
                .or_insert_with(|| BerkPoint::TypeI(Scalar::zero()));
        }
        Ok(CoeffPoint { dims, coords })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn coords(&self) -> &BTreeMap<CoordIndex, BerkPoint> {
        &self.coords
    }

    pub fn get(&self, l: usize, e: &[u32]) -> Option<&BerkPoint> {
        self.coords.get(&(l, e.to_vec()))
    }

    /// Projection to a lower degree bound, dropping higher coordinates.
    pub fn truncate(&self, delta: u32) -> Result<CoeffPoint> {
        if delta > self.dims.delta {
            return Err(Error::CoeffPoint(format!(
                "cannot raise δ from {} to {delta}",
                self.dims.delta
            )));
        }
        let coords = self
            .coords
            .iter()
            .filter(|((_, e), _)| e.iter().all(|&k| k <= delta))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(CoeffPoint {
            dims: Dims { delta, ..self.dims },
            coords,
        })
    }
}

pub fn is_rigid(alpha: &CoeffPoint) -> bool {
    alpha
        .coords
        .values()
        .all(|x| matches!(x, BerkPoint::TypeI(_)))
}

/// The rigid coefficient point of a map with coefficients in the closed
/// unit disk.
pub fn alpha_of(p: Prime, f: &PolyMap, delta: u32) -> Result<CoeffPoint> {
    let dims = Dims {
        r: f.r,
        s: f.components.len(),
        delta,
    };
    let mut coords = BTreeMap::new();
    for (l, comp) in f.components.iter().enumerate() {
        if comp.max_var_degree() > delta as usize {
            return Err(Error::CoeffPoint(format!(
                "component {} exceeds degree {delta}",
                l + 1
            )));
        }
        for (e, c) in comp.terms() {
            if c.lognorm(p) > LogNorm::zero() {
                return Err(Error::CoeffPoint(format!(
                    "coefficient {c} has norm above 1"
                )));
            }
            coords.insert((l, e.clone()), BerkPoint::TypeI(c.clone()));
        }
    }
    CoeffPoint::new(p, dims, coords)
}

/// Caller-asserted behaviour of a sequence beyond its known prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TailCertificate {
    /// `log_p |a_m - a_n| <= rates[n]` for all `m > n`, rates strictly
    /// decreasing to `-inf`; `limit` names the limit when it is rational.
    Cauchy {
        rates: Vec<Rat>,
        limit: Option<Scalar>,
    },
    /// All pairwise distances equal this radius.
    Equidistant(Radius),
    /// `a_n` lies in nested balls of the given strictly decreasing radii.
    Nested(Vec<Radius>),
}

fn strictly_decreasing<T: Ord>(xs: &[T]) -> bool {
    xs.windows(2).all(|w| w[1] < w[0])
}

fn inconsistent(msg: String) -> Error {
    Error::InconsistentPrefix(msg)
}

/// Limit point of a rigid sequence whose tail is described by `cert`.
/// The certificate is checked against the prefix; nothing is extrapolated.
pub fn limit_of_rigid_sequence(
    p: Prime,
    prefix: &[Scalar],
    cert: &TailCertificate,
) -> Result<BerkPoint> {
    if prefix.is_empty() {
        return Err(Error::Empty("sequence prefix"));
    }
    let dist = |a: &Scalar, b: &Scalar| (a - b).lognorm(p);
    match cert {
        TailCertificate::Cauchy { rates, limit } => {
            if rates.is_empty() || !strictly_decreasing(rates) {
                return Err(Error::InvalidCertificate(
                    "rates must be nonempty and strictly decreasing".into(),
                ));
            }
            let checked = prefix.len().min(rates.len());
            for n in 0..checked {
                let bound = LogNorm::from_rat(rates[n].clone());
                for m in n + 1..prefix.len() {
                    if dist(&prefix[m], &prefix[n]) > bound {
                        return Err(inconsistent(format!(
                            "|a_{m} - a_{n}| exceeds p^{}",
                            rates[n]
                        )));
                    }
                }
                if let Some(l) = limit {
                    if dist(l, &prefix[n]) > bound {
                        return Err(inconsistent(format!("the limit {l} is too far from a_{n}")));
                    }
                }
            }
            match limit {
                Some(l) => Ok(BerkPoint::TypeI(l.clone())),
                None => BerkPoint::type_iv(
                    p,
                    (0..checked)
                        .map(|n| (prefix[n].clone(), Radius::exp(rates[n].clone())))
                        .collect(),
                ),
            }
        }
        TailCertificate::Equidistant(r) => {
            if prefix.len() < 2 {
                return Err(inconsistent("an equidistance claim needs two terms".into()));
            }
            for (i, a) in prefix.iter().enumerate() {
                for (j, b) in prefix.iter().enumerate().skip(i + 1) {
                    if dist(a, b) != *r.log() {
                        return Err(inconsistent(format!("|a_{i} - a_{j}| differs from {r}")));
                    }
                }
            }
            Ok(BerkPoint::ball(p, prefix[0].clone(), r.clone()))
        }
        TailCertificate::Nested(radii) => {
            if radii.len() != prefix.len() || !strictly_decreasing(radii) {
                return Err(Error::InvalidCertificate(
                    "one strictly decreasing radius per term".into(),
                ));
            }
            for n in 0..prefix.len().saturating_sub(1) {
                if dist(&prefix[n + 1], &prefix[n]) > *radii[n].log() {
                    return Err(inconsistent(format!(
                        "a_{} leaves the ball around a_{n}",
                        n + 1
                    )));
                }
            }
            BerkPoint::type_iv(
                p,
                prefix.iter().cloned().zip(radii.iter().cloned()).collect(),
            )
        }
    }
}

struct Expanded {
    /// `R(c + U)` in the variables of the non-rigid coordinates.
    poly: MPoly,
    radii: Vec<LogNorm>,
}

fn expand(alpha: &CoeffPoint, z: &[Scalar], g: &MPoly) -> Result<Expanded> {
    let dims = alpha.dims;
    if z.len() != dims.r {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            dims.r,
            z.len()
        )));
    }
    if g.nvars() != dims.s {
        return Err(Error::CoeffPoint(format!(
            "test polynomial in {} variables, expected {}",
            g.nvars(),
            dims.s
        )));
    }
    let mut free: Vec<(&CoordIndex, &Disk)> = Vec::new();
    for (k, x) in &alpha.coords {
        match x {
            BerkPoint::TypeI(_) => {}
            BerkPoint::Ball(d) => free.push((k, d)),
            BerkPoint::TypeIV(_) => return Err(Error::TypeFourUndetermined),
            BerkPoint::Infinity => return Err(Error::CoeffPoint("coordinate at infinity".into())),
        }
    }
    let m = free.len();
    let mut linear: Vec<MPoly> = vec![MPoly::zero(m); dims.s];
    for ((l, e), x) in &alpha.coords {
        let c = match x {
            BerkPoint::TypeI(a) => a.clone(),
            BerkPoint::Ball(d) => d.center().clone(),
            _ => unreachable!(),
        };
        let term = MPoly::constant(m, c * monomial(z, e));
        linear[*l] = &linear[*l] + &term;
    }
    for (i, ((l, e), _)) in free.iter().enumerate() {
        let term = MPoly::var(m, i).scale(&monomial(z, e));
        linear[*l] = &linear[*l] + &term;
    }
    let radii = free.iter().map(|(_, d)| d.radius().log().clone()).collect();
    Ok(Expanded {
        poly: g.compose(&linear),
        radii,
    })
}

/// `log_p` of the product-point seminorm of `g(Σ_I S_{l,I} z^I)`.
pub fn ev_norm(p: Prime, alpha: &CoeffPoint, z: &[Scalar], g: &MPoly) -> Result<LogNorm> {
    let ex = expand(alpha, z, g)?;
    Ok(LogNorm::max_of(ex.poly.terms().map(|(k, h)| {
        k.iter()
            .zip(&ex.radii)
            .fold(h.lognorm(p), |acc, (&ki, rho)| {
                &acc + &rho.times(ki as usize)
            })
    })))
}

/// The image point `Ev(α, z)` for maps to the line.
pub fn ev_point_s1(p: Prime, alpha: &CoeffPoint, z: &[Scalar]) -> Result<BerkPoint> {
    let dims = alpha.dims;
    if dims.s != 1 {
        return Err(Error::CoeffPoint(format!("expected s = 1, got {}", dims.s)));
    }
    if z.len() != dims.r {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            dims.r,
            z.len()
        )));
    }
    let mut b = Scalar::zero();
    let mut rho = LogNorm::NegInf;
    for ((_, e), x) in &alpha.coords {
        let zi = monomial(z, e);
        match x {
            BerkPoint::TypeI(a) => b = b + a * &zi,
            BerkPoint::Ball(d) => {
                b = b + d.center() * &zi;
                rho = rho.max(d.radius().log() + &zi.lognorm(p));
            }
            BerkPoint::TypeIV(_) => return Err(Error::TypeFourUndetermined),
            BerkPoint::Infinity => return Err(Error::CoeffPoint("coordinate at infinity".into())),
        }
    }
    Ok(BerkPoint::ball(p, b, Radius::from_log(rho)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowVerdict {
    /// `log|g(f_n(z))|` equals the limit value for every `n >= from`.
    EventuallyEqual {
        from: usize,
    },
    /// The limit value is `-inf` and the sequence decreases strictly.
    Approaching,
    NotConverged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemoRow {
    pub g: MPoly,
    pub z: Vec<Scalar>,
    pub values: Vec<LogNorm>,
    pub ev: LogNorm,
    pub verdict: RowVerdict,
}

fn row_verdict(values: &[LogNorm], ev: &LogNorm) -> RowVerdict {
    if values.last() == Some(ev) {
        let from = values.iter().rposition(|v| v != ev).map_or(0, |i| i + 1);
        return RowVerdict::EventuallyEqual { from };
    }
    if ev.is_neg_inf() && values.windows(2).all(|w| w[1] < w[0]) {
        return RowVerdict::Approaching;
    }
    RowVerdict::NotConverged
}

/// Coordinatewise limit of a family of rigid coefficient points, checked on
/// a panel of `(g, z)` against direct evaluation of the family.
pub fn montel_limit_demo(
    p: Prime,
    family: &[CoeffPoint],
    certs: &BTreeMap<CoordIndex, TailCertificate>,
    panel: &[(MPoly, Vec<Scalar>)],
) -> Result<(CoeffPoint, Vec<DemoRow>)> {
    let first = family.first().ok_or(Error::Empty("family"))?;
    let dims = first.dims;
    if let Some(bad) = family.iter().find(|a| a.dims != dims) {
        return Err(Error::CoeffPoint(format!(
            "mixed dimensions {:?} and {:?}",
            dims, bad.dims
        )));
    }
    if !family.iter().all(is_rigid) {
        return Err(Error::CoeffPoint("family members must be rigid".into()));
    }
    let mut coords = BTreeMap::new();
    for k in dims.indices() {
        let seq: Vec<Scalar> = family
            .iter()
            .map(|a| match &a.coords[&k] {
                BerkPoint::TypeI(c) => c.clone(),
                _ => unreachable!(),
            })
            .collect();
        let limit = match certs.get(&k) {
            Some(cert) => limit_of_rigid_sequence(p, &seq, cert)?,
            None if seq.iter().all(|c| *c == seq[0]) => BerkPoint::TypeI(seq[0].clone()),
            None => return Err(Error::MissingCertificate),
        };
        coords.insert(k, limit);
    }
    let alpha = CoeffPoint::new(p, dims, coords)?;
    let mut rows = Vec::with_capacity(panel.len());
    for (g, z) in panel {
        let values = family
            .iter()
            .map(|a| Ok(g.eval(&rigid_image(a, z)?).lognorm(p)))
            .collect::<Result<Vec<_>>>()?;
        let ev = ev_norm(p, &alpha, z, g)?;
        let verdict = row_verdict(&values, &ev);
        rows.push(DemoRow {
            g: g.clone(),
            z: z.clone(),
            values,
            ev,
            verdict,
        });
    }
    Ok((alpha, rows))
}

/// `f(z)` for the map with rigid coefficient point `alpha`.
pub fn rigid_image(alpha: &CoeffPoint, z: &[Scalar]) -> Result<Vec<Scalar>> {
    if z.len() != alpha.dims.r {
        return Err(Error::InvalidPoint(format!(
            "expected {} coordinates, got {}",
            alpha.dims.r,
            z.len()
        )));
    }
    let mut out = vec![Scalar::zero(); alpha.dims.s];
    for ((l, e), x) in &alpha.coords {
        match x {
            BerkPoint::TypeI(c) => out[*l] = &out[*l] + &(c * &monomial(z, e)),
            _ => return Err(Error::CoeffPoint("not a rigid coefficient point".into())),
        }
    }
    Ok(out)
}
