use std::fmt;

use crate::atinfinity::HypothesisVerdict;

/// Errors surfaced by the analysis kernels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An operation received the zero polynomial.
    ZeroPolynomial,
    /// An operation received a constant polynomial.
    ConstantPolynomial,
    /// A resultant was requested with respect to a variable in which one
    /// of the operands has degree zero.
    DegenerateInput,
    /// The face is not a bad face (its level `d(P;f)` is nonzero).
    NotBadFace,
    /// The face is a bad face where a `d != 0` face was required.
    BadFaceNotAllowed,
    /// The face does not have the class required by the operation.
    WrongFaceClass,
    /// A required fan ray has no negative entry, or is not primitive.
    InvalidCovector,
    /// A local-polygon covector must have both entries positive.
    NonPositiveCovector,
    /// A bad face carries a non-Morse face function.
    MorseViolation,
    /// The hypotheses of the exact bifurcation-set theorem fail; the
    /// verdict lists the offending faces.
    HypothesisViolated(Box<HypothesisVerdict>),
    /// The critical locus is not finite over the reals.
    NonIsolatedSingularities,
    /// The tangency classifier was handed a point that is not a double
    /// root of the chart section.
    NotDoubleRoot,
    /// Polynomial expression parse failure.
    Parse {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },
    /// Filesystem failure while writing a report or image.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroPolynomial => write!(f, "operation undefined for the zero polynomial"),
            Error::ConstantPolynomial => {
                write!(f, "operation undefined for a constant polynomial")
            }
            Error::DegenerateInput => {
                write!(f, "resultant requires positive degree in the eliminated variable")
            }
            Error::NotBadFace => write!(f, "face is not a bad face (d(P;f) != 0)"),
            Error::BadFaceNotAllowed => write!(f, "face has d(P;f) = 0 where d != 0 is required"),
            Error::WrongFaceClass => write!(f, "face does not have the required class"),
            Error::InvalidCovector => {
                write!(f, "covector must be primitive with a negative entry")
            }
            Error::NonPositiveCovector => {
                write!(f, "local covector must have both entries positive")
            }
            Error::MorseViolation => write!(f, "bad-face function is not Morse on R\\{{0}}"),
            Error::HypothesisViolated(v) => write!(
                f,
                "theorem hypotheses violated (non-degenerate: {}, Morse: {})",
                v.nondegenerate_plus_minus, v.morse_bad_faces
            ),
            Error::NonIsolatedSingularities => {
                write!(f, "critical locus is not finite over the reals")
            }
            Error::NotDoubleRoot => {
                write!(f, "point is not a double root of the chart section")
            }
            Error::Parse {
                offset,
                expected,
                found,
            } => write!(
                f,
                "parse error at byte {}: expected {}, found {}",
                offset,
                expected.join(" | "),
                found
            ),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
