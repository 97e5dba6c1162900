use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Platform side lengths violate the strict triangle inequality.
    #[error("degenerate platform: sides ({d1}, {d2}, {d3}) do not form a proper triangle")]
    DegeneratePlatform { d1: f64, d2: f64, d3: f64 },

    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// A leg length is (numerically) zero, so its angle and the constraint
    /// derivatives are undefined.
    #[error("degenerate configuration: leg {leg} has length {length:e}")]
    DegenerateConfiguration { leg: usize, length: f64 },

    #[error("configuration is off the constraint manifold (residual {residual:e})")]
    OffManifold { residual: f64 },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    /// The two polynomials of a slice share a factor, so the resultant
    /// vanishes identically and no finite cusp set can be extracted.
    #[error("degenerate slice at l1 = {l1}: singular and cusp polynomials share a factor")]
    DegenerateSlice { l1: f64 },

    #[error("identically zero resultant: inputs share a common factor")]
    SharedFactor,

    #[error("invalid joint lengths: {0}")]
    InvalidJoint(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
