//! Newton polygons and root counting in disks.

use super::lognorm::{LogNorm, Radius};
use super::poly::Poly;
use super::scalar::{Prime, Rat, Scalar};
use crate::error::{Error, Result};

/// One edge of the lower hull of `{(i, v_p(c_i))}`.
///
/// `slope` is also `log_p |x|` of the roots it accounts for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSegment {
    pub slope: Rat,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Roots at `0` (order of vanishing).
    pub zero_roots: usize,
    /// Edges ordered by increasing slope (smallest roots first).
    pub segments: Vec<NewtonSegment>,
}

impl NewtonPolygon {
    pub fn total_roots(&self) -> usize {
        self.zero_roots + self.segments.iter().map(|s| s.multiplicity).sum::<usize>()
    }

    /// Roots `x` with `log_p |x|` at most (or strictly below) `bound`.
    fn count_below(&self, bound: &LogNorm, strict: bool) -> usize {
        let nonzero: usize = self
            .segments
            .iter()
            .filter(|s| {
                let l = LogNorm::from_rat(s.slope.clone());
                if strict {
                    l < *bound
                } else {
                    l <= *bound
                }
            })
            .map(|s| s.multiplicity)
            .sum();
        let zeros = if strict && bound.is_neg_inf() {
            0
        } else {
            self.zero_roots
        };
        zeros + nonzero
    }
}

pub fn newton_polygon(p: Prime, poly: &Poly) -> Result<NewtonPolygon> {
    let zero_roots = poly.order_at_zero().ok_or(Error::ZeroPolynomial)?;
    let pts: Vec<(i64, i64)> = poly
        .coeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation(p).map(|v| (i as i64, v)))
        .collect();

    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(pts.len());
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b unless it lies strictly below the chord a -> pt
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let segments = hull
        .windows(2)
        .map(|w| NewtonSegment {
            slope: Rat::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into()),
            multiplicity: (w[1].0 - w[0].0) as usize,
        })
        .collect();
    Ok(NewtonPolygon {
        zero_roots,
        segments,
    })
}

/// Number of roots (with multiplicity, over an algebraic closure) in the
/// closed disk `|x - a| <= r`.
pub fn count_zeros_in_disk(p: Prime, poly: &Poly, a: &Scalar, r: &Radius) -> Result<usize> {
    let np = newton_polygon(p, &poly.taylor_shift(a))?;
    Ok(np.count_below(r.log(), false))
}

/// Number of roots in the open disk `|x - a| < r`.
pub fn count_zeros_in_open_disk(p: Prime, poly: &Poly, a: &Scalar, r: &Radius) -> Result<usize> {
    let np = newton_polygon(p, &poly.taylor_shift(a))?;
    Ok(np.count_below(r.log(), true))
}
