//! Exact base-field arithmetic: rationals with a p-adic absolute value,
//! log-domain norms, and the polynomial kernels built on them.

pub mod fp;
pub mod lognorm;
pub mod mpoly;
pub mod newton;
pub mod poly;
pub mod resultant;
pub mod scalar;

pub use lognorm::{LogNorm, LogValue, Radius};
pub use mpoly::{HomForm, MPoly};
pub use newton::{
    count_zeros_in_disk, count_zeros_in_open_disk, newton_polygon, NewtonPolygon, NewtonSegment,
};
pub use poly::Poly;
pub use resultant::resultant;
pub use scalar::{parse_rat, rat, rat_int, Prime, Rat, Scalar};

/// `log_p |x|`.
pub fn lognorm(p: Prime, x: &Scalar) -> LogNorm {
    x.lognorm(p)
}

/// Coefficients of `P` expanded around `a`.
pub fn taylor_shift(poly: &Poly, a: &Scalar) -> Poly {
    poly.taylor_shift(a)
}
