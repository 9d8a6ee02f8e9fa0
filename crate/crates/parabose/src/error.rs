use std::fmt;

/// Errors from numerical evaluation of para-Bose state statistics.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A linear-space Pochhammer or factorial product exceeded the f64 range;
    /// the caller should request the sign + log-magnitude form instead.
    OverflowRequiresLogSpace { x: f64, j: u32 },
    /// A series did not reach the requested tolerance within the term cap.
    NonConvergence {
        what: &'static str,
        error_estimate: f64,
        terms: usize,
    },
    /// An argument is outside the supported domain.
    InvalidParameter { what: &'static str },
    /// Adaptive quadrature exceeded its refinement cap before reaching tolerance.
    QuadratureFailure {
        error_estimate: f64,
        intervals: usize,
    },
    /// A statistic is undefined for the vacuum state (alpha = 0).
    DegenerateState,
    /// The scanned bracket contains no sign change of the target function.
    NoRoot { what: &'static str },
    /// The truncated Fock space is too small for the requested state; the
    /// displaced vector lost more norm than the tolerance allows.
    TruncationTooSmall { norm_deviation: f64, dim: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OverflowRequiresLogSpace { x, j } => write!(
                f,
                "pochhammer ({x})_{j} overflows f64; use the log-space form"
            ),
            Self::NonConvergence {
                what,
                error_estimate,
                terms,
            } => write!(
                f,
                "{what}: error estimate {error_estimate:.3e} after {terms} terms exceeds tolerance"
            ),
            Self::InvalidParameter { what } => write!(f, "invalid parameter: {what}"),
            Self::QuadratureFailure {
                error_estimate,
                intervals,
            } => write!(
                f,
                "adaptive quadrature stalled at error {error_estimate:.3e} with {intervals} intervals"
            ),
            Self::DegenerateState => write!(f, "statistic undefined for the vacuum state"),
            Self::NoRoot { what } => write!(f, "no sign change found: {what}"),
            Self::TruncationTooSmall {
                norm_deviation,
                dim,
            } => write!(
                f,
                "truncated space (dim {dim}) too small: norm deviates by {norm_deviation:.3e}"
            ),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
