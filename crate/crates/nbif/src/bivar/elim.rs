use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BiPoly, Var};
use crate::exactmath::{interpolate, rat, sylvester_det_formal, Rat, UniPoly};
use crate::{Error, Result};

fn interpolation_nodes(k: usize) -> Vec<Rat> {
    // 0, 1, -1, 2, -2, ...
    let mut out = Vec::with_capacity(k);
    out.push(rat(0));
    let mut v = 1i64;
    while out.len() < k {
        out.push(rat(v));
        if out.len() < k {
            out.push(rat(-v));
        }
        v += 1;
    }
    out
}

/// Resultant of `f` and `g` with respect to `var`, as a univariate
/// polynomial in the other variable.
///
/// Computed as the determinant of the Sylvester matrix, evaluated by
/// fraction-free elimination at interpolation nodes of the kept variable;
/// specialization commutes with the determinant of the fixed-shape matrix,
/// so no leading-coefficient caveats arise.
pub fn resultant_elim(f: &BiPoly, g: &BiPoly, var: Var) -> Result<UniPoly> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.deg(var) <= 0 || g.deg(var) <= 0 {
        return Err(Error::DegenerateInput);
    }
    let other = match var {
        Var::X => Var::Y,
        Var::Y => Var::X,
    };
    let fc = f.coeffs_wrt(var);
    let gc = g.coeffs_wrt(var);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let bound = (f.deg(other).max(0) as usize) * n + (g.deg(other).max(0) as usize) * m;
    let nodes = interpolation_nodes(bound + 1);
    let mut samples = Vec::with_capacity(nodes.len());
    for t in nodes {
        let av: Vec<Rat> = fc.iter().map(|p| p.eval(&t)).collect();
        let bv: Vec<Rat> = gc.iter().map(|p| p.eval(&t)).collect();
        let det = sylvester_det_formal(&av, &bv);
        samples.push((t, det));
    }
    Ok(interpolate(&samples))
}

/// Coefficients (ascending in the eliminated variable) of the `j`-th
/// subresultant of two polynomials given by their coefficient vectors with
/// respect to the eliminated variable. Requires
/// `a.len()-1 >= b.len()-1 >= 1` and `j <= deg b`; for `j == deg b` the
/// subresultant is `b` itself by convention.
pub fn subresultant_coeffs(a: &[UniPoly], b: &[UniPoly], j: usize) -> Vec<UniPoly> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    assert!(m >= n && n >= 1 && j <= n);
    if j == n {
        return b.to_vec();
    }
    let rows = m + n - 2 * j;
    let max_deg = a
        .iter()
        .chain(b.iter())
        .map(|p| p.degree().max(0) as usize)
        .max()
        .unwrap_or(0);
    let bound = rows * max_deg;
    let nodes = interpolation_nodes(bound + 1);

    // For each node build the numeric row set once, then take the j+1
    // maximal minors that form the determinant polynomial.
    let mut per_coeff_samples: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); j + 1];
    for t in nodes {
        let av: Vec<Rat> = a.iter().map(|p| p.eval(&t)).collect();
        let bv: Vec<Rat> = b.iter().map(|p| p.eval(&t)).collect();
        // Row for y^s * P, P of formal degree d, in columns of descending
        // power m+n-j-1 .. 0: coefficient of power (d - k) + s at column
        // (m+n-j-1) - (d-k+s).
        let cols = m + n - j;
        let mut mat: Vec<Vec<Rat>> = Vec::with_capacity(rows);
        for s in (0..n - j).rev() {
            let mut row = vec![Rat::zero(); cols];
            for (k, c) in av.iter().enumerate() {
                row[cols - 1 - (k + s)] = c.clone();
            }
            mat.push(row);
        }
        for s in (0..m - j).rev() {
            let mut row = vec![Rat::zero(); cols];
            for (k, c) in bv.iter().enumerate() {
                row[cols - 1 - (k + s)] = c.clone();
            }
            mat.push(row);
        }
        for i in 0..=j {
            // Square matrix: first rows-1 columns plus column rows-1+i.
            let mut sq: Vec<Vec<Rat>> = Vec::with_capacity(rows);
            for row in &mat {
                let mut r: Vec<Rat> = row[..rows - 1].to_vec();
                r.push(row[rows - 1 + i].clone());
                sq.push(r);
            }
            let d = det_rat(sq);
            // det_i is the coefficient of y^(j-i).
            per_coeff_samples[j - i].push((t.clone(), d));
        }
    }
    per_coeff_samples
        .into_iter()
        .map(|samples| interpolate(&samples))
        .collect()
}

/// Exact determinant of a rational matrix (fraction-free Bareiss on the
/// denominator-cleared integer matrix).
fn det_rat(mat: Vec<Vec<Rat>>) -> Rat {
    let n = mat.len();
    if n == 0 {
        return Rat::one();
    }
    let mut scale = Rat::one();
    let mut imat: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in mat {
        let mut den = BigInt::one();
        for c in &row {
            den = num_integer::lcm(den, c.denom().clone());
        }
        scale *= Rat::new(BigInt::one(), den.clone());
        imat.push(row.iter().map(|c| c.numer() * (&den / c.denom())).collect());
    }
    scale * Rat::from(bareiss(&mut imat))
}

fn bareiss(mat: &mut [Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if mat[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for jj in k + 1..n {
                let num = &mat[i][jj] * &mat[k][k] - &mat[i][k] * &mat[k][jj];
                mat[i][jj] = num / &prev;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    let d = mat[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Content of `f` viewed as a polynomial in `var`: the gcd of its
/// coefficients, a univariate polynomial in the other variable.
pub fn content_wrt(f: &BiPoly, var: Var) -> UniPoly {
    let mut g = UniPoly::zero();
    for p in f.coeffs_wrt(var) {
        if p.is_zero() {
            continue;
        }
        g = if g.is_zero() { p.integer_primitive() } else { g.gcd(&p) };
        if g.degree() == 0 {
            return UniPoly::one();
        }
    }
    if g.is_zero() {
        UniPoly::zero()
    } else {
        g
    }
}

/// Bivariate polynomial gcd via primitive subresultants; the result is
/// normalized to integer-primitive form with positive lex-leading
/// coefficient (constant 1 for coprime inputs).
pub fn gcd_bivar(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return normalized(g);
    }
    if g.is_zero() {
        return normalized(f);
    }
    if f.is_constant() || g.is_constant() {
        return BiPoly::one();
    }
    // Pure-x operands reduce to univariate gcds against the y-content.
    if f.deg(Var::Y) == 0 && g.deg(Var::Y) == 0 {
        let a = f.to_unipoly(Var::X).unwrap();
        let b = g.to_unipoly(Var::X).unwrap();
        return BiPoly::from_unipoly(Var::X, &a.gcd(&b));
    }
    if f.deg(Var::Y) == 0 {
        let a = f.to_unipoly(Var::X).unwrap();
        return BiPoly::from_unipoly(Var::X, &a.gcd(&content_wrt(g, Var::Y)));
    }
    if g.deg(Var::Y) == 0 {
        let b = g.to_unipoly(Var::X).unwrap();
        return BiPoly::from_unipoly(Var::X, &b.gcd(&content_wrt(f, Var::Y)));
    }

    let cf = content_wrt(f, Var::Y);
    let cg = content_wrt(g, Var::Y);
    let fp = f.exact_div(&BiPoly::from_unipoly(Var::X, &cf));
    let gp = g.exact_div(&BiPoly::from_unipoly(Var::X, &cg));
    let content_gcd = cf.gcd(&cg);

    let pp_gcd = primitive_gcd_y(&fp, &gp);
    normalized(&pp_gcd.mul(&BiPoly::from_unipoly(Var::X, &content_gcd)))
}

// gcd of two y-primitive bivariate polynomials with positive y-degree.
fn primitive_gcd_y(fp: &BiPoly, gp: &BiPoly) -> BiPoly {
    let mut a = fp.clone();
    let mut b = gp.clone();
    if a.deg(Var::Y) < b.deg(Var::Y) {
        std::mem::swap(&mut a, &mut b);
    }
    // Reduce until strictly decreasing degrees (needed by the subresultant
    // matrix layout).
    loop {
        let (da, db) = (a.deg(Var::Y), b.deg(Var::Y));
        if db == 0 {
            // A common divisor would divide a pure-x polynomial and a
            // y-primitive one.
            return BiPoly::one();
        }
        if da > db {
            break;
        }
        let lca = a.coeffs_wrt(Var::Y).pop().unwrap();
        let lcb = b.coeffs_wrt(Var::Y).pop().unwrap();
        let reduced = a
            .mul(&BiPoly::from_unipoly(Var::X, &lcb))
            .sub(&b.mul(&BiPoly::from_unipoly(Var::X, &lca)));
        if reduced.is_zero() {
            return primitive_part_y(&b);
        }
        a = b;
        b = reduced;
        if a.deg(Var::Y) < b.deg(Var::Y) {
            std::mem::swap(&mut a, &mut b);
        }
    }
    let ac = a.coeffs_wrt(Var::Y);
    let bc = b.coeffs_wrt(Var::Y);
    let n = bc.len() - 1;
    for j in 0..=n {
        let s = if j == n {
            bc.clone()
        } else {
            subresultant_coeffs(&ac, &bc, j)
        };
        if s.iter().any(|p| !p.is_zero()) {
            if j == 0 {
                return BiPoly::one();
            }
            let cand = BiPoly::from_coeffs_wrt(Var::Y, &s);
            return primitive_part_y(&cand);
        }
    }
    BiPoly::one()
}

fn primitive_part_y(f: &BiPoly) -> BiPoly {
    let c = content_wrt(f, Var::Y);
    if c.degree() <= 0 {
        return normalized(f);
    }
    normalized(&f.exact_div(&BiPoly::from_unipoly(Var::X, &c)))
}

/// Integer-primitive normalization with positive lex-leading coefficient.
pub fn normalized(f: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return BiPoly::zero();
    }
    let mut den = BigInt::one();
    for (_, c) in f.terms() {
        den = num_integer::lcm(den, c.denom().clone());
    }
    let mut gcd = BigInt::zero();
    for (_, c) in f.terms() {
        gcd = num_integer::gcd(gcd, c.numer() * (&den / c.denom()));
    }
    let lead_positive = {
        use num_traits::Signed;
        let (_, c) = f.terms().last().unwrap();
        c.is_positive()
    };
    let scale = if lead_positive {
        Rat::new(den, gcd)
    } else {
        Rat::new(-den, gcd)
    };
    f.scale(&scale)
}
