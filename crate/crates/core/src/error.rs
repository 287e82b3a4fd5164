use core::fmt;

/// Everything that can go wrong when building or querying a density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An array does not have the length implied by the breakpoint count.
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },
    /// A height, one-sided limit or point value is negative.
    NegativeValue { field: &'static str, index: usize },
    /// A value is NaN or infinite.
    NonFinite { field: &'static str, index: usize },
    /// Fewer than two breakpoints, or first and last breakpoint coincide.
    EmptySupport,
    /// `breakpoints[index] < breakpoints[index - 1]`.
    NotNondecreasing { index: usize },
    /// A polygonal density must vanish at both ends of its support.
    NonZeroEndpoint { index: usize },
    /// Every height is zero, so there is nothing to normalize.
    ZeroMass,
    /// The operation needs a unit-mass density.
    NotNormalized { mass: f64 },
    /// `x` lies outside `[c_0, c_{n+1}]`.
    OutOfSupport { x: f64 },
    /// Moment order above [`crate::MAX_MOMENT_ORDER`].
    OrderTooLarge { order: u32 },
    /// A probability outside the admissible range.
    BadProbability { p: f64 },
    /// Family parameters out of order (`a <= c <= d <= b`, `a < b`).
    BadOrder,
    /// Tetragonal weight outside `[0, 1]`.
    BadWeight { w: f64 },
    /// Sample abscissae must be strictly increasing.
    NotIncreasing { index: usize },
    /// A fit needs at least three points.
    TooFewPoints { found: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Error::LengthMismatch {
                field,
                expected,
                found,
            } => write!(f, "{field}: expected {expected} entries, found {found}"),
            Error::NegativeValue { field, index } => {
                write!(f, "{field}[{index}] is negative")
            }
            Error::NonFinite { field, index } => write!(f, "{field}[{index}] is not finite"),
            Error::EmptySupport => write!(f, "support is empty"),
            Error::NotNondecreasing { index } => {
                write!(f, "breakpoints[{index}] is smaller than its predecessor")
            }
            Error::NonZeroEndpoint { index } => {
                write!(f, "heights[{index}] must be zero at the end of the support")
            }
            Error::ZeroMass => write!(f, "density has zero total mass"),
            Error::NotNormalized { mass } => {
                write!(f, "density is not normalized (raw mass {mass})")
            }
            Error::OutOfSupport { x } => write!(f, "{x} lies outside the support"),
            Error::OrderTooLarge { order } => write!(f, "moment order {order} is too large"),
            Error::BadProbability { p } => write!(f, "probability {p} is out of range"),
            Error::BadOrder => write!(f, "parameters must satisfy a <= c <= d <= b and a < b"),
            Error::BadWeight { w } => write!(f, "weight {w} is outside [0, 1]"),
            Error::NotIncreasing { index } => {
                write!(f, "sample x[{index}] does not exceed its predecessor")
            }
            Error::TooFewPoints { found } => {
                write!(f, "at least 3 points are required, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
