use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
#[non_exhaustive]
pub enum Error {
    /// Shapes of the operands do not fit together.
    Dimension {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// A NaN or infinite value reached a matrix or vector constructor.
    NonFinite,
    /// Input that must be Hermitian deviates by more than the tolerance.
    NotHermitian { deviation: f64 },
    /// The system is numerically rank deficient.
    Singular { sigma_min: f64, sigma_max: f64 },
    /// An iterative kernel exceeded its iteration budget.
    NoConvergence(&'static str),
    InvalidIndex { index: usize },
    /// Sample spacing exceeds the Nyquist bound for the basis support.
    Nyquist { epsilon: f64, max_epsilon: f64 },
    InvalidParameter(&'static str),
    Unsupported(&'static str),
    /// A signal term has no closed-form transform and quadrature is disabled.
    ClosedFormUnavailable(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension {
                what,
                expected,
                found,
            } => write!(f, "dimension mismatch in {what}: expected {expected}, found {found}"),
            Error::NonFinite => f.write_str("non-finite value in matrix or vector"),
            Error::NotHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:e})")
            }
            Error::Singular {
                sigma_min,
                sigma_max,
            } => write!(
                f,
                "numerically singular system: sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e}, ratio = {:e}",
                if *sigma_max > 0.0 { sigma_min / sigma_max } else { 0.0 }
            ),
            Error::NoConvergence(what) => write!(f, "{what} did not converge"),
            Error::InvalidIndex { index } => write!(f, "invalid basis or sample index {index}"),
            Error::Nyquist {
                epsilon,
                max_epsilon,
            } => write!(
                f,
                "sample spacing {epsilon} exceeds the Nyquist bound {max_epsilon} for this basis"
            ),
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
            Error::ClosedFormUnavailable(term) => write!(
                f,
                "no closed-form Fourier transform for {term} and quadrature is disabled"
            ),
        }
    }
}

impl core::error::Error for Error {}
