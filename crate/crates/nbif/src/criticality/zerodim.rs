
use crate::bivar::{resultant_elim, subresultant_coeffs, BiPoly, Var};
use crate::exactmath::{rat, Ran, UniPoly};
use crate::{Error, Result};

// f(x + lambda y, y) is y-regular when its y-degree equals its total
// degree (the top coefficient is then automatically constant).
fn y_regular(f: &BiPoly) -> bool {
    f.deg(Var::Y) == f.total_degree()
}

fn poly_pow(p: &UniPoly, e: usize) -> UniPoly {
    let mut acc = UniPoly::one();
    for _ in 0..e {
        acc = &acc * p;
    }
    acc
}

// Collapse q(x, y) along y = -s0(x)/s1(x): returns the numerator
// sum_k q_k(x) (-s0)^k s1^(D-k), with D = deg_y q.
fn collapse(q: &BiPoly, s0: &UniPoly, s1: &UniPoly) -> UniPoly {
    let coeffs = q.coeffs_wrt(Var::Y);
    let d = coeffs.len() - 1;
    let neg_s0 = -s0;
    let mut acc = UniPoly::zero();
    for (k, qk) in coeffs.iter().enumerate() {
        if qk.is_zero() {
            continue;
        }
        let term = &(qk * &poly_pow(&neg_s0, k)) * &poly_pow(s1, d - k);
        acc = &acc + &term;
    }
    acc
}

/// Values of `val` at the real solutions of the zero-dimensional system
/// `p = q = 0` (one entry per solution, duplicates possible).
///
/// Requires `p`, `q` nonconstant and coprime. Internally shears the system
/// into y-regular shape position, reads off each solution as
/// `(x0, -S10(x0)/S11(x0))` from the degree-one subresultant, certifies it
/// by exact back-substitution, and evaluates `val` through the same
/// rational parametrization.
pub fn system_values(p: &BiPoly, q: &BiPoly, val: &BiPoly) -> Result<Vec<Ran>> {
    assert!(!p.is_constant() && !q.is_constant());
    'shear: for lam in shear_candidates() {
        let lam = rat(lam);
        let ps = p.shear_x(&lam);
        let qs = q.shear_x(&lam);
        if !y_regular(&ps) || !y_regular(&qs) {
            continue 'shear;
        }
        let vs = val.shear_x(&lam);

        let res = resultant_elim(&ps, &qs, Var::Y)?;
        assert!(!res.is_zero(), "coprime system has nonzero resultant");
        let roots = Ran::roots_of(&res)?;
        if roots.is_empty() {
            return Ok(Vec::new());
        }

        let pc = ps.coeffs_wrt(Var::Y);
        let qc = qs.coeffs_wrt(Var::Y);
        let (ac, bc) = if pc.len() >= qc.len() { (pc, qc) } else { (qc, pc) };
        let s1 = subresultant_coeffs(&ac, &bc, 1);
        let (s10, s11) = (&s1[0], &s1[1]);

        let mut out = Vec::new();
        for x0 in &roots {
            if x0.is_root_of(s11) {
                // Shape position fails over this root; try the next shear.
                continue 'shear;
            }
            // The unique partner y0 = -s10(x0)/s11(x0) is real and solves
            // the system; verify by exact back-substitution.
            let up = collapse(&ps, s10, s11);
            let uq = collapse(&qs, s10, s11);
            if !x0.is_root_of(&up) || !x0.is_root_of(&uq) {
                continue 'shear;
            }
            let dv = vs.deg(Var::Y).max(0) as usize;
            let num = collapse(&vs, s10, s11);
            let den = poly_pow(s11, dv);
            out.push(Ran::image_rat(&num, &den, x0));
        }
        return Ok(out);
    }
    Err(Error::DegenerateInput)
}

fn shear_candidates() -> impl Iterator<Item = i64> {
    (0..=24).flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
}
