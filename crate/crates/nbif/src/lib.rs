//! Exact analysis of the bifurcation set of a real polynomial in two
//! variables.
//!
//! Given `f: R^2 -> R` with rational coefficients, this crate computes
//!
//! * the set of critical values of `f`,
//! * the Newton polygon of `f` and its faces at infinity,
//! * the bifurcation set `B_f` when the faces at infinity are
//!   non-degenerate and every bad face is Morse,
//! * the numbers of cleaving and vanishing families at infinity, and
//! * a certified upper bound on `|B_f|` obtained by successive toric
//!   modifications at degenerate points at infinity.
//!
//! All decisions are made in exact rational arithmetic; real algebraic
//! numbers are represented by a square-free minimal polynomial together
//! with an isolating interval. Floating point is never used on any
//! decision path.

pub mod atinfinity;
pub mod bivar;
pub mod bound;
pub mod cli;
pub mod criticality;
mod error;
pub mod exactmath;
pub mod fan;
pub mod newton;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
