use thiserror::Error;

/// Mathematical precondition failures raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error("the zero polynomial has no Newton polygon")]
    ZeroPolynomial,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("form is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
    #[error("forms share a common projective zero (resultant vanishes)")]
    CommonZero,
    #[error("map degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("operation requires a map of P^1 (two binary forms), got {0} forms")]
    NotOneDimensional(usize),
    #[error("expected a type II point: {0}")]
    NotTypeTwo(String),
    #[error("type IV point: only an enclosure is available from a finite prefix")]
    TypeFourUndetermined,
    #[error("point at infinity is outside the affine chart")]
    OutsideAffineChart,
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("tangent directions are based at different points")]
    BaseMismatch,
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("single-vertex tree has empty interior")]
    SingleVertexTree,
    #[error("invalid tube or affinoid: {0}")]
    InvalidDomain(String),
    #[error("exhaustion level must be positive")]
    ZeroLevel,
    #[error("radius schedule collides at level {0}: {1}")]
    DegenerateSchedule(usize, String),
    #[error("unbounded on the domain: {0}")]
    Unbounded(String),
    #[error("pole of the map inside the ball; subdivide into charts that avoid poles")]
    PoleInBall,
    #[error("Gauss point is not mapped to the Gauss point")]
    GaussNotFixed,
    #[error("point is outside the domain: {0}")]
    OutsideDomain(String),
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("tolerance must be positive")]
    NonPositiveTolerance,
    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),
    #[error("maps of P^N with N >= 2 need a Nullstellensatz certificate")]
    MissingCertificate,
    #[error("coefficient point violation: {0}")]
    CoeffPoint(String),
    #[error("prefix inconsistent with tail certificate: {0}")]
    InconsistentPrefix(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
