//! Points of the Berkovich affine and projective line.
//!
//! Ball centers are stored in a canonical form (the truncated p-adic
//! expansion at the precision of the radius), so two closed balls that are
//! equal as sets are also structurally equal.

use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{rat_int, LogNorm, Poly, Prime, Radius, Rat, Scalar};

/// The smallest integer `k` with `p^(-k) <= r`.
fn precision_for(r: &Radius) -> i64 {
    let e = r.exponent();
    let neg = -e.clone();
    let k = neg.ceil().to_integer();
    let mut k: i64 = k.try_into().expect("radius exponent out of range");
    if e.is_integer() && rat_int(-k) == e && r.delta() < Rat::zero() {
        k += 1;
    }
    k
}

/// Closed ball `{ |x - center| <= radius }`; radius zero is a rigid point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Disk {
    center: Scalar,
    radius: Radius,
}

impl Disk {
    pub fn new(p: Prime, center: Scalar, radius: Radius) -> Self {
        let center = if radius.is_zero() {
            center
        } else {
            center.truncate_expansion(p, precision_for(&radius))
        };
        Disk { center, radius }
    }

    pub fn point(a: Scalar) -> Self {
        Disk {
            center: a,
            radius: Radius::zero(),
        }
    }

    /// The closed unit disk, whose boundary point is the Gauss point.
    pub fn unit() -> Self {
        Disk {
            center: Scalar::zero(),
            radius: Radius::exp_int(0),
        }
    }

    pub fn center(&self) -> &Scalar {
        &self.center
    }

    pub fn radius(&self) -> &Radius {
        &self.radius
    }

    fn dist(&self, p: Prime, a: &Scalar) -> LogNorm {
        (&self.center - a).lognorm(p)
    }

    pub fn contains_point(&self, p: Prime, a: &Scalar) -> bool {
        self.dist(p, a) <= *self.radius.log()
    }

    /// Rigid point strictly inside the open disk of the same radius.
    pub fn open_contains_point(&self, p: Prime, a: &Scalar) -> bool {
        self.dist(p, a) < *self.radius.log()
    }

    /// Containment of closed balls.
    pub fn leq(&self, p: Prime, other: &Disk) -> bool {
        self.radius <= other.radius && other.dist(p, &self.center) <= *other.radius.log()
    }

    pub fn join(&self, p: Prime, other: &Disk) -> Disk {
        let d = self.dist(p, &other.center);
        let r = d
            .max(self.radius.log().clone())
            .max(other.radius.log().clone());
        Disk::new(p, self.center.clone(), Radius::from_log(r))
    }

    /// Rescales the radius by `p^s`, keeping the center.
    pub fn grow(&self, p: Prime, s: &Rat) -> Disk {
        Disk::new(p, self.center.clone(), self.radius.shift(s))
    }

    /// `sup_{|y - a| <= r} log_p |P(y)|`.
    pub fn seminorm(&self, p: Prime, poly: &Poly) -> LogNorm {
        if self.radius.is_zero() {
            return poly.eval(&self.center).lognorm(p);
        }
        let shifted = poly.taylor_shift(&self.center);
        LogNorm::max_of(
            shifted
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| &c.lognorm(p) + &self.radius.log().times(i)),
        )
    }
}

impl fmt::Debug for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({}, {})", self.center, self.radius)
    }
}

impl fmt::Display for Disk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Disk relations used by tubes and affinoids. `open` flags the strict
/// inequality version of a disk with the same center and radius.
pub mod relate {
    use super::*;

    fn dist(p: Prime, a: &Disk, b: &Disk) -> LogNorm {
        (a.center() - b.center()).lognorm(p)
    }

    pub fn closed_in_closed(p: Prime, a: &Disk, b: &Disk) -> bool {
        a.radius() <= b.radius() && dist(p, a, b) <= *b.radius().log()
    }

    pub fn closed_in_open(p: Prime, a: &Disk, b: &Disk) -> bool {
        a.radius() < b.radius() && dist(p, a, b) < *b.radius().log()
    }

    pub fn open_in_open(p: Prime, a: &Disk, b: &Disk) -> bool {
        a.radius() <= b.radius() && dist(p, a, b) < *b.radius().log()
    }

    pub fn open_in_closed(p: Prime, a: &Disk, b: &Disk) -> bool {
        a.radius() <= b.radius() && dist(p, a, b) <= *b.radius().log()
    }

    pub fn closed_disjoint_closed(p: Prime, a: &Disk, b: &Disk) -> bool {
        dist(p, a, b) > *a.radius().log().max(b.radius().log())
    }

    /// Open `a` against closed `b`.
    pub fn open_disjoint_closed(p: Prime, a: &Disk, b: &Disk) -> bool {
        let d = dist(p, a, b);
        d >= *a.radius().log() && d > *b.radius().log()
    }

    pub fn open_disjoint_open(p: Prime, a: &Disk, b: &Disk) -> bool {
        dist(p, a, b) >= *a.radius().log().max(b.radius().log())
    }

    /// Whether a Berkovich point (given by its disk) lies in the closed disk.
    pub fn point_in_closed(p: Prime, x: &Disk, b: &Disk) -> bool {
        closed_in_closed(p, x, b)
    }

    /// Whether a Berkovich point lies in the open disk: its ball must sit in
    /// a residue class strictly below the boundary point.
    pub fn point_in_open(p: Prime, x: &Disk, b: &Disk) -> bool {
        closed_in_open(p, x, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointType {
    I,
    II,
    III,
    IV,
}

impl fmt::Display for PointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PointType::I => "I",
            PointType::II => "II",
            PointType::III => "III",
            PointType::IV => "IV",
        };
        write!(f, "{s}")
    }
}

/// A point of the Berkovich projective line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BerkPoint {
    TypeI(Scalar),
    /// Type II or III, depending on the radius.
    Ball(Disk),
    /// Finite prefix of strictly nested balls with decreasing radii.
    TypeIV(Vec<Disk>),
    Infinity,
}

impl BerkPoint {
    pub fn rigid(a: Scalar) -> Self {
        BerkPoint::TypeI(a)
    }

    /// `η_{a,r}`; a zero radius gives the rigid point `a`.
    pub fn ball(p: Prime, a: Scalar, r: Radius) -> Self {
        if r.is_zero() {
            BerkPoint::TypeI(a)
        } else {
            BerkPoint::Ball(Disk::new(p, a, r))
        }
    }

    pub fn from_disk(d: Disk) -> Self {
        if d.radius().is_zero() {
            BerkPoint::TypeI(d.center().clone())
        } else {
            BerkPoint::Ball(d)
        }
    }

    pub fn gauss() -> Self {
        BerkPoint::Ball(Disk::unit())
    }

    pub fn type_iv(p: Prime, prefix: Vec<(Scalar, Radius)>) -> Result<Self> {
        if prefix.is_empty() {
            return Err(Error::Empty("type IV prefix"));
        }
        let disks: Vec<Disk> = prefix
            .into_iter()
            .map(|(a, r)| Disk::new(p, a, r))
            .collect();
        for d in &disks {
            if d.radius().is_zero() {
                return Err(Error::InvalidPoint(
                    "type IV prefix radii must be positive".into(),
                ));
            }
        }
        for w in disks.windows(2) {
            if w[1].radius() >= w[0].radius() || !w[1].leq(p, &w[0]) {
                return Err(Error::InvalidPoint(format!(
                    "type IV prefix not strictly nested at {:?} -> {:?}",
                    w[0], w[1]
                )));
            }
        }
        Ok(BerkPoint::TypeIV(disks))
    }

    /// The closed ball of a point of types I-III.
    pub fn as_disk(&self) -> Option<Disk> {
        match self {
            BerkPoint::TypeI(a) => Some(Disk::point(a.clone())),
            BerkPoint::Ball(d) => Some(d.clone()),
            _ => None,
        }
    }

    pub fn is_rigid(&self) -> bool {
        matches!(self, BerkPoint::TypeI(_) | BerkPoint::Infinity)
    }

    /// `z -> 1/z`, moving between the two standard charts.
    pub fn invert(&self, p: Prime) -> BerkPoint {
        match self {
            BerkPoint::Infinity => BerkPoint::TypeI(Scalar::zero()),
            BerkPoint::TypeI(a) if a.is_zero() => BerkPoint::Infinity,
            BerkPoint::TypeI(a) => BerkPoint::TypeI(a.recip()),
            BerkPoint::Ball(d) => BerkPoint::Ball(invert_disk(p, d)),
            BerkPoint::TypeIV(ds) => {
                BerkPoint::TypeIV(ds.iter().map(|d| invert_disk(p, d)).collect())
            }
        }
    }
}

fn invert_disk(p: Prime, d: &Disk) -> Disk {
    let la = d.center().lognorm(p);
    let r = d.radius().log().clone();
    if la <= r {
        // 0 in the ball: eta_{0,r} -> eta_{0,1/r}
        let v = r.finite().expect("positive radius").clone();
        Disk::new(p, Scalar::zero(), Radius::from_log(LogNorm::Finite(-v)))
    } else {
        // |1/y - 1/a| = |y - a| / |a|^2
        let a = la.finite().expect("nonzero center").clone();
        let v = r.finite().expect("positive radius").clone() - a.scale_int(2);
        Disk::new(p, d.center().recip(), Radius::from_log(LogNorm::Finite(v)))
    }
}

impl fmt::Debug for BerkPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BerkPoint::TypeI(a) => write!(f, "I({a})"),
            BerkPoint::Ball(d) => write!(f, "{d:?}"),
            BerkPoint::TypeIV(ds) => write!(f, "IV{ds:?}"),
            BerkPoint::Infinity => write!(f, "inf"),
        }
    }
}

pub fn classify(x: &BerkPoint) -> PointType {
    match x {
        BerkPoint::TypeI(_) | BerkPoint::Infinity => PointType::I,
        BerkPoint::Ball(d) if d.radius().in_value_group() => PointType::II,
        BerkPoint::Ball(_) => PointType::III,
        BerkPoint::TypeIV(_) => PointType::IV,
    }
}

/// `log_p` of the seminorm `|P|_x` for points of types I-III.
pub fn seminorm_eval(p: Prime, poly: &Poly, x: &BerkPoint) -> Result<LogNorm> {
    match x {
        BerkPoint::TypeI(a) => Ok(poly.eval(a).lognorm(p)),
        BerkPoint::Ball(d) => Ok(d.seminorm(p, poly)),
        BerkPoint::TypeIV(_) => Err(Error::TypeFourUndetermined),
        BerkPoint::Infinity => {
            if poly.degree().unwrap_or(0) == 0 {
                Ok(poly.coeff(0).lognorm(p))
            } else {
                Err(Error::OutsideAffineChart)
            }
        }
    }
}

/// Lower and upper bounds for `log_p |P|_x`; equal for types I-III.
///
/// For a type IV prefix the upper bound is the seminorm of the last ball.
/// The lower bound equals it when `P` has no zero in that ball, and is
/// `-inf` otherwise: the prefix does not pin down how close the limit gets
/// to those zeros.
pub fn seminorm_enclosure(p: Prime, poly: &Poly, x: &BerkPoint) -> Result<(LogNorm, LogNorm)> {
    match x {
        BerkPoint::TypeIV(ds) => {
            let last = ds.last().expect("nonempty prefix");
            let hi = last.seminorm(p, poly);
            if poly.is_zero() {
                return Ok((LogNorm::NegInf, LogNorm::NegInf));
            }
            let zeros = crate::field::count_zeros_in_disk(p, poly, last.center(), last.radius())?;
            let lo = if zeros == 0 {
                hi.clone()
            } else {
                LogNorm::NegInf
            };
            Ok((lo, hi))
        }
        _ => {
            let v = seminorm_eval(p, poly, x)?;
            Ok((v.clone(), v))
        }
    }
}

/// The smallest point above both arguments in the tree rooted at infinity.
pub fn join(p: Prime, x: &BerkPoint, y: &BerkPoint) -> Result<BerkPoint> {
    match (x, y) {
        (BerkPoint::Infinity, _) | (_, BerkPoint::Infinity) => Ok(BerkPoint::Infinity),
        (BerkPoint::TypeIV(xs), BerkPoint::TypeIV(ys)) => {
            if xs == ys {
                return Ok(x.clone());
            }
            let (a, b) = (xs.last().unwrap(), ys.last().unwrap());
            if relate::closed_disjoint_closed(p, a, b) {
                Ok(BerkPoint::from_disk(a.join(p, b)))
            } else {
                Err(Error::TypeFourUndetermined)
            }
        }
        (BerkPoint::TypeIV(xs), other) | (other, BerkPoint::TypeIV(xs)) => {
            // decided once the other point escapes the last prefix ball
            let last = xs.last().unwrap();
            let d = other.as_disk().unwrap();
            if d.leq(p, last) {
                Err(Error::TypeFourUndetermined)
            } else {
                Ok(BerkPoint::from_disk(last.join(p, &d)))
            }
        }
        _ => {
            let (a, b) = (x.as_disk().unwrap(), y.as_disk().unwrap());
            Ok(BerkPoint::from_disk(a.join(p, &b)))
        }
    }
}

/// Ball-containment order; infinity is the top element.
pub fn leq(p: Prime, x: &BerkPoint, y: &BerkPoint) -> Result<bool> {
    match (x, y) {
        (_, BerkPoint::Infinity) => Ok(true),
        (BerkPoint::Infinity, _) => Ok(false),
        (BerkPoint::TypeIV(xs), _) => {
            let last = xs.last().unwrap();
            match y {
                BerkPoint::TypeIV(ys) if xs == ys => Ok(true),
                BerkPoint::TypeIV(_) => Err(Error::TypeFourUndetermined),
                _ => {
                    let yd = y.as_disk().unwrap();
                    if xs.iter().any(|d| d.leq(p, &yd)) {
                        Ok(true)
                    } else if relate::closed_disjoint_closed(p, last, &yd) {
                        Ok(false)
                    } else {
                        Err(Error::TypeFourUndetermined)
                    }
                }
            }
        }
        (_, BerkPoint::TypeIV(ys)) => {
            let xd = x.as_disk().unwrap();
            if !xd.leq(p, ys.last().unwrap()) {
                Ok(false)
            } else {
                Err(Error::TypeFourUndetermined)
            }
        }
        _ => Ok(x.as_disk().unwrap().leq(p, &y.as_disk().unwrap())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DirectionRep {
    /// The residue class of a center `c` with `|c - a| <= r`.
    Toward(Scalar),
    TowardInfinity,
}

/// A tangent direction at a point of type II or III.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentDirection {
    base: Disk,
    rep: DirectionRep,
}

impl TangentDirection {
    pub fn new(p: Prime, base: &BerkPoint, rep: DirectionRep) -> Result<Self> {
        let base = match base {
            BerkPoint::Ball(d) => d.clone(),
            other => {
                return Err(Error::InvalidPoint(format!(
                    "tangent base must be of type II/III, got {other:?}"
                )))
            }
        };
        if let DirectionRep::Toward(c) = &rep {
            if !base.contains_point(p, c) {
                return Err(Error::InvalidPoint(format!(
                    "{c} is not in the ball {base:?}"
                )));
            }
        }
        Ok(TangentDirection { base, rep })
    }

    pub fn base(&self) -> &Disk {
        &self.base
    }

    pub fn rep(&self) -> &DirectionRep {
        &self.rep
    }
}

pub fn same_direction(p: Prime, d1: &TangentDirection, d2: &TangentDirection) -> Result<bool> {
    if d1.base != d2.base {
        return Err(Error::BaseMismatch);
    }
    Ok(match (&d1.rep, &d2.rep) {
        (DirectionRep::TowardInfinity, DirectionRep::TowardInfinity) => true,
        (DirectionRep::Toward(c), DirectionRep::Toward(c2)) => {
            (c - c2).lognorm(p) < *d1.base.radius().log()
        }
        _ => false,
    })
}
