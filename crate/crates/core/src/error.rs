use thiserror::Error;

/// Errors produced by the geometric and topological routines in this crate.
///
/// Numerical *diagnostics* (a winding number that is undefined because the
/// target sits on the boundary image, a linking number of nearly touching
/// curves) are reported through the `defined` flag on the result types; the
/// variants here are for inputs that cannot be processed at all.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point ({0}, {1}, {2}) lies on the x3-axis, where the angle is undefined")]
    AxisPoint(f64, f64, f64),

    #[error("matrix is singular (|det| = {0:e})")]
    Singular(f64),

    #[error("torus parameter xi must be non-zero")]
    ZeroXi,

    #[error("point lies outside the closed anuloid (distance^2 to core circle = {0})")]
    OutsideAnuloid(f64),

    #[error("point lies on the core circle C_hor, where the tilde chart is undefined")]
    OnCoreCircle,

    #[error("the curve nu_b does not reach the plane x3 = {z}: |b| = {b_norm}")]
    NoIntersection { b_norm: f64, z: f64 },

    #[error("the curve nu_b is tangent to the plane x3 = {0}")]
    Tangential(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid polyline: {0}")]
    InvalidCurve(String),

    #[error("curves touch: minimal separation {separation:e} below threshold {threshold:e}")]
    CurvesTouch { separation: f64, threshold: f64 },

    #[error("projection direction is not generic for these curves")]
    DegenerateProjection,

    #[error("perturbation sup {sup:e} exceeds the admissible bound m*/10 = {bound:e}")]
    PerturbationTooLarge { sup: f64, bound: f64 },

    #[error("target point lies on the boundary image (clearance {0:e})")]
    BoundaryHit(f64),

    #[error("image curves touch (separation {0:e})")]
    ImagesTouch(f64),

    #[error("map is not planar on the slice: plane residual {0:e}")]
    NotPlanar(f64),

    #[error("map is not generalised axisymmetric")]
    NotAxisymmetric,

    #[error("point lies outside the chart ball")]
    OutOfChart,

    #[error("radius {r} outside (0, {r_max}]")]
    RadiusOutOfRange { r: f64, r_max: f64 },

    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    #[error("unknown weak-limit sequence: {0}")]
    UnknownSequence(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
