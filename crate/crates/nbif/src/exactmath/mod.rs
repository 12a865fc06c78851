//! Exact arithmetic kernels: arbitrary-precision rationals, univariate
//! polynomial algebra, Sturm-based real root counting and isolation, and
//! certified real algebraic numbers.

mod ran;
mod rat;
mod sturm;
mod unipoly;

pub use ran::{Ran, RatInterval};
pub use rat::{rat, rat_frac, simplest_in_interval, to_decimal_string, Rat};
pub use sturm::{count_real_roots, isolate_real_roots_raw, RootCountMode, SturmChain};
pub use unipoly::{interpolate, sylvester_det_formal, UniPoly};

use crate::Result;

/// Isolates the distinct real roots of `p`, returned in ascending order as
/// certified real algebraic numbers with pairwise disjoint intervals.
pub fn isolate_real_roots(p: &UniPoly) -> Result<Vec<Ran>> {
    Ran::roots_of(p)
}

/// Square-free decomposition `p = lead * prod factor_i^mult_i` with monic,
/// pairwise coprime, square-free factors and strictly increasing
/// multiplicities (Yun's algorithm).
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    p.squarefree_decomposition()
}

/// Exact image `b(alpha)` of a real algebraic number under a rational
/// polynomial map.
pub fn alg_image(b: &UniPoly, alpha: &Ran) -> Ran {
    Ran::image_rat(b, &UniPoly::one(), alpha)
}

/// Exact equality of two real algebraic numbers.
pub fn alg_eq(a: &Ran, b: &Ran) -> bool {
    a == b
}
