//! Exact computation of the critical-value set of a bivariate polynomial
//! and the isolated-singularity test.

mod zerodim;

pub(crate) use zerodim::system_values;

use num_bigint::BigInt;
use num_traits::One;

use crate::bivar::{gcd_bivar, resultant_elim, BiPoly, Var};
use crate::exactmath::{
    alg_image, count_real_roots, isolate_real_roots, Ran, Rat, RootCountMode, UniPoly,
};
use crate::{Error, Result};

fn check_nonconstant(f: &BiPoly) -> Result<()> {
    if f.is_zero() {
        Err(Error::ZeroPolynomial)
    } else if f.is_constant() {
        Err(Error::ConstantPolynomial)
    } else {
        Ok(())
    }
}

// Decomposition of the square-free critical curve into vertical lines,
// horizontal lines, and a mixed part whose factors involve both variables.
struct CurveSplit {
    vertical: UniPoly,   // in x
    horizontal: UniPoly, // in y
    mixed: BiPoly,
}

fn squarefree_bivar(w: &BiPoly) -> BiPoly {
    let wx = w.partial(Var::X);
    let wy = w.partial(Var::Y);
    let g = gcd_bivar(&gcd_bivar(w, &wx), &wy);
    if g.is_constant() {
        return w.clone();
    }
    w.exact_div(&g)
}

fn split_curve(g: &BiPoly) -> CurveSplit {
    let vertical = crate::bivar::content_wrt(g, Var::Y);
    let g2 = if vertical.degree() > 0 {
        g.exact_div(&BiPoly::from_unipoly(Var::X, &vertical))
    } else {
        g.clone()
    };
    let horizontal = crate::bivar::content_wrt(&g2, Var::X);
    let mixed = if horizontal.degree() > 0 {
        g2.exact_div(&BiPoly::from_unipoly(Var::Y, &horizontal))
    } else {
        g2
    };
    CurveSplit {
        vertical,
        horizontal,
        mixed,
    }
}

// Rational sample points meeting every open interval between consecutive
// real roots of xi, plus one point in each unbounded interval.
fn interval_samples(xi: &UniPoly) -> Result<Vec<Rat>> {
    if xi.is_zero() {
        return Ok(vec![Rat::default()]);
    }
    let mut roots = isolate_real_roots(xi)?;
    if roots.is_empty() {
        return Ok(vec![Rat::default()]);
    }
    // Refine to pairwise strictly separated intervals.
    loop {
        let mut ok = true;
        for i in 0..roots.len() - 1 {
            if roots[i].interval().hi >= roots[i + 1].interval().lo {
                ok = false;
            }
        }
        if ok {
            break;
        }
        for r in roots.iter_mut() {
            r.refine();
        }
    }
    let mut samples = Vec::with_capacity(roots.len() + 1);
    samples.push(&roots[0].interval().lo - Rat::one());
    for i in 0..roots.len() - 1 {
        let hi = roots[i].interval().hi;
        let lo = roots[i + 1].interval().lo;
        samples.push((hi + lo) / Rat::from(BigInt::from(2)));
    }
    samples.push(&roots[roots.len() - 1].interval().hi + Rat::one());
    Ok(samples)
}

// Univariate fiber f(sample, y) (or f(x, sample) for Var::X lines).
fn fiber(f: &BiPoly, var_fixed: Var, at: &Rat) -> UniPoly {
    let mut coeffs = Vec::new();
    for p in f.coeffs_wrt(match var_fixed {
        Var::X => Var::Y, // fix x: coefficients of y-powers are polys in x
        Var::Y => Var::X,
    }) {
        coeffs.push(p.eval(at));
    }
    UniPoly::from_coeffs(coeffs)
}

// Critical values along the one-dimensional part of the critical locus.
fn curve_values(f: &BiPoly, w: &BiPoly) -> Result<Vec<Ran>> {
    let mut out = Vec::new();
    let g = squarefree_bivar(w);
    let split = split_curve(&g);

    // Vertical critical lines x = x0: f(x0, .) is constant.
    if split.vertical.degree() > 0 {
        let coeffs = f.coeffs_wrt(Var::Y);
        for x0 in isolate_real_roots(&split.vertical)? {
            for c in coeffs.iter().skip(1) {
                debug_assert!(c.is_zero() || x0.is_root_of(c));
            }
            out.push(alg_image(&coeffs[0], &x0));
        }
    }
    // Horizontal critical lines y = y0.
    if split.horizontal.degree() > 0 {
        let coeffs = f.coeffs_wrt(Var::X);
        for y0 in isolate_real_roots(&split.horizontal)? {
            for c in coeffs.iter().skip(1) {
                debug_assert!(c.is_zero() || y0.is_root_of(c));
            }
            out.push(alg_image(&coeffs[0], &y0));
        }
    }
    // Mixed components: sample every branch interval plus the singular and
    // tangency points of the curve.
    let m = &split.mixed;
    if !m.is_constant() {
        let my = m.partial(Var::Y);
        let xi = if m.deg(Var::Y) >= 2 {
            let r = resultant_elim(m, &my, Var::Y)?;
            let lc = m.coeffs_wrt(Var::Y).pop().unwrap();
            &r * &lc
        } else {
            m.coeffs_wrt(Var::Y).pop().unwrap()
        };
        for sample in interval_samples(&xi)? {
            let fib = fiber(m, Var::X, &sample);
            if fib.is_zero() {
                continue;
            }
            if fib.is_constant() {
                continue;
            }
            let fslice = fiber(f, Var::X, &sample);
            for y0 in isolate_real_roots(&fib)? {
                out.push(alg_image(&fslice, &y0));
            }
        }
        if m.deg(Var::Y) >= 2 {
            out.extend(system_values(m, &my, f)?);
        }
    }
    Ok(out)
}

/// The exact set of critical values of `f` over the reals, ascending.
///
/// Candidates come from resultant elimination of the gradient system; each
/// value is certified by an exhibited real critical point (an exact
/// solution of the system, or a real point of a positive-dimensional
/// critical component).
pub fn critical_values(f: &BiPoly) -> Result<Vec<Ran>> {
    check_nonconstant(f)?;
    let fx = f.partial(Var::X);
    let fy = f.partial(Var::Y);

    // Univariate shortcuts: f depending on one variable only.
    if fx.is_zero() {
        let p = f.to_unipoly(Var::Y).expect("f depends on y only");
        let mut out = Vec::new();
        for r in isolate_real_roots(&p.derivative())? {
            out.push(alg_image(&p, &r));
        }
        return Ok(dedup_sorted(out));
    }
    if fy.is_zero() {
        let p = f.to_unipoly(Var::X).expect("f depends on x only");
        let mut out = Vec::new();
        for r in isolate_real_roots(&p.derivative())? {
            out.push(alg_image(&p, &r));
        }
        return Ok(dedup_sorted(out));
    }

    let w = gcd_bivar(&fx, &fy);
    let mut out = Vec::new();

    // Zero-dimensional part {fx/W = fy/W = 0}.
    let a = fx.exact_div(&w);
    let b = fy.exact_div(&w);
    if !a.is_constant() && !b.is_constant() {
        out.extend(system_values(&a, &b, f)?);
    }

    // Positive-dimensional part along {W = 0}.
    if !w.is_constant() {
        out.extend(curve_values(f, &w)?);
    }
    Ok(dedup_sorted(out))
}

fn dedup_sorted(mut values: Vec<Ran>) -> Vec<Ran> {
    values.sort();
    values.dedup();
    values
}

/// Whether the real critical locus `{f_x = f_y = 0}` is finite.
pub fn has_isolated_singularities(f: &BiPoly) -> Result<bool> {
    check_nonconstant(f)?;
    let fx = f.partial(Var::X);
    let fy = f.partial(Var::Y);
    if fx.is_zero() {
        // f = p(y): critical locus is a union of horizontal lines.
        let p = f.to_unipoly(Var::Y).unwrap();
        return Ok(count_real_roots(&p.derivative(), RootCountMode::All)? == 0);
    }
    if fy.is_zero() {
        let p = f.to_unipoly(Var::X).unwrap();
        return Ok(count_real_roots(&p.derivative(), RootCountMode::All)? == 0);
    }
    let w = gcd_bivar(&fx, &fy);
    if w.is_constant() {
        return Ok(true);
    }
    let g = squarefree_bivar(&w);
    let split = split_curve(&g);
    if split.vertical.degree() > 0
        && count_real_roots(&split.vertical, RootCountMode::All)? > 0
    {
        return Ok(false);
    }
    if split.horizontal.degree() > 0
        && count_real_roots(&split.horizontal, RootCountMode::All)? > 0
    {
        return Ok(false);
    }
    let m = &split.mixed;
    if m.is_constant() {
        return Ok(true);
    }
    let my = m.partial(Var::Y);
    let xi = if m.deg(Var::Y) >= 2 {
        let r = resultant_elim(m, &my, Var::Y)?;
        let lc = m.coeffs_wrt(Var::Y).pop().unwrap();
        &r * &lc
    } else {
        m.coeffs_wrt(Var::Y).pop().unwrap()
    };
    for sample in interval_samples(&xi)? {
        let fib = fiber(m, Var::X, &sample);
        if !fib.is_constant() && count_real_roots(&fib, RootCountMode::All)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    #[test]
    fn paraboloid() {
        // x^2 + y^2: unique critical value 0
        let f = xy(&[(2, 0, 1), (0, 2, 1)]);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals[0].is_zero());
        assert!(has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn example2_has_no_critical_points() {
        // x + 1/2 x^2 y^2 + 4/3 x^3 y^3 + 1/4 x^4 y^4
        let f = BiPoly::from_terms(vec![
            ((1, 0), rat(1)),
            ((2, 2), crate::exactmath::rat_frac(1, 2)),
            ((3, 3), crate::exactmath::rat_frac(4, 3)),
            ((4, 4), crate::exactmath::rat_frac(1, 4)),
        ]);
        assert!(critical_values(&f).unwrap().is_empty());
        assert!(has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn degenerate_circle() {
        // (x^2 + y^2 - 1)^2: critical values {0, 1}, non-isolated
        let w = xy(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let f = w.mul(&w);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 2);
        assert!(vals[0].is_zero());
        assert_eq!(vals[1], Ran::from_rational(&rat(1)));
        assert!(!has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn broughton_no_critical_points() {
        // x + x^2 y: f_y = x^2 forces x = 0, then f_x = 1
        let f = xy(&[(1, 0, 1), (2, 1, 1)]);
        assert!(critical_values(&f).unwrap().is_empty());
        assert!(has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn univariate_in_disguise() {
        // f = y^3 - 3y: critical values at y = ±1 -> {-2, 2}
        let f = xy(&[(0, 3, 1), (0, 1, -3)]);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 2);
        assert_eq!(vals[0], Ran::from_rational(&rat(-2)));
        assert_eq!(vals[1], Ran::from_rational(&rat(2)));
        // crit locus = two horizontal lines
        assert!(!has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn vertical_critical_line() {
        // f = (x - 1)^2: critical locus is the line x = 1, value 0;
        // f depends on x only.
        let f = xy(&[(2, 0, 1), (1, 0, -2), (0, 0, 1)]);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals[0].is_zero());
        assert!(!has_isolated_singularities(&f).unwrap());
        // f = x^2 (1 + y^2) + ... a genuinely bivariate vertical line:
        // f = x^2 y^2 + x^2 = x^2 (y^2 + 1): f_x = 2x(y^2+1), f_y = 2 x^2 y
        // gcd = x: line x = 0 with f ≡ 0 there; isolated part {y^2+1, 2xy}
        // has no real solutions.
        let f = xy(&[(2, 2, 1), (2, 0, 1)]);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 1);
        assert!(vals[0].is_zero());
        assert!(!has_isolated_singularities(&f).unwrap());
    }

    #[test]
    fn saddle_and_extremum() {
        // f = x^3 - 3x + y^2: critical points (±1, 0), values {-2, 2}
        let f = xy(&[(3, 0, 1), (1, 0, -3), (0, 2, 1)]);
        let vals = critical_values(&f).unwrap();
        assert_eq!(vals.len(), 2);
        assert_eq!(vals[0], Ran::from_rational(&rat(-2)));
        assert_eq!(vals[1], Ran::from_rational(&rat(2)));
        assert!(has_isolated_singularities(&f).unwrap());
    }
}
