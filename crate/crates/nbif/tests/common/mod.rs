//! Shared numeric oracles and corpus generation for the integration
//! suites. Everything here is deliberately independent of the exact
//! kernels it cross-checks: roots come from Aberth iteration in f64,
//! critical points from interval subdivision plus Newton polishing, and
//! fiber topology from marching-squares component counting.

use std::sync::OnceLock;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nbif::atinfinity::counts;
use nbif::bivar::{BiPoly, Var};
use nbif::exactmath::{rat, Rat, UniPoly};

pub fn rat_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

pub fn unipoly_f64(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(rat_f64).collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Aberth-Ehrlich simultaneous root iteration; `None` if it fails to
/// converge cleanly.
pub fn aberth_roots(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Some(Vec::new());
    }
    let lead = coeffs[deg];
    if lead == 0.0 || !coeffs.iter().all(|c| c.is_finite()) {
        return None;
    }
    let radius = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0f64, f64::max);
    let dcoeffs: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.35) / deg as f64 + 0.4;
            Complex64::from_polar(radius * 0.7, theta)
        })
        .collect();
    for _ in 0..600 {
        let mut moved = 0.0f64;
        for k in 0..deg {
            let pv = horner(coeffs, z[k]);
            let dv = horner(&dcoeffs, z[k]);
            if dv.norm() == 0.0 {
                z[k] += Complex64::new(1e-6, 1e-6);
                continue;
            }
            let w = pv / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != k {
                    let d = z[k] - zj;
                    if d.norm() < 1e-14 {
                        continue;
                    }
                    s += Complex64::new(1.0, 0.0) / d;
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() < 1e-14 { w } else { w / denom };
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }
    // Residual check.
    let scale = coeffs.iter().map(|c| c.abs()).fold(1.0f64, f64::max);
    for zk in &z {
        let res = horner(coeffs, *zk).norm();
        let zn = zk.norm().max(1.0);
        if res > 1e-6 * scale * zn.powi(deg as i32) {
            return None;
        }
    }
    Some(z)
}

/// Number of real roots per the numeric oracle: roots with
/// `|Im z| <= tol * (1 + |Re z|)`.
pub fn aberth_real_count(p: &UniPoly, tol: f64) -> Option<usize> {
    let roots = aberth_roots(&unipoly_f64(p))?;
    Some(
        roots
            .iter()
            .filter(|z| z.im.abs() <= tol * (1.0 + z.re.abs()))
            .count(),
    )
}

pub fn bipoly_terms_f64(f: &BiPoly) -> Vec<(i64, i64, f64)> {
    f.terms().map(|(&(m, n), c)| (m, n, rat_f64(c))).collect()
}

pub fn eval_f64(terms: &[(i64, i64, f64)], x: f64, y: f64) -> f64 {
    terms
        .iter()
        .map(|&(m, n, c)| c * x.powi(m as i32) * y.powi(n as i32))
        .sum()
}

#[derive(Clone, Copy, Debug)]
pub struct Iv {
    pub lo: f64,
    pub hi: f64,
}

impl Iv {
    fn new(lo: f64, hi: f64) -> Self {
        Iv { lo, hi }
    }

    fn add(self, o: Iv) -> Iv {
        Iv::new(self.lo + o.lo, self.hi + o.hi)
    }

    fn mul(self, o: Iv) -> Iv {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Iv::new(
            c.iter().cloned().fold(f64::INFINITY, f64::min),
            c.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
        )
    }

    fn powi(self, k: i64) -> Iv {
        let mut acc = Iv::new(1.0, 1.0);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    fn contains_zero(self) -> bool {
        self.lo <= 1e-12 && self.hi >= -1e-12
    }
}

fn eval_iv(terms: &[(i64, i64, f64)], x: Iv, y: Iv) -> Iv {
    let mut acc = Iv::new(0.0, 0.0);
    for &(m, n, c) in terms {
        let t = x.powi(m).mul(y.powi(n)).mul(Iv::new(c, c));
        acc = acc.add(t);
    }
    acc
}

/// Numeric critical points of `f` inside `[-window, window]^2`, via
/// interval subdivision of the gradient system followed by Newton
/// polishing from every surviving box.
pub fn numeric_critical_points(f: &BiPoly, window: f64) -> Vec<(f64, f64)> {
    let fx = f.partial(Var::X);
    let fy = f.partial(Var::Y);
    let fxx = bipoly_terms_f64(&fx.partial(Var::X));
    let fxy = bipoly_terms_f64(&fx.partial(Var::Y));
    let fyy = bipoly_terms_f64(&fy.partial(Var::Y));
    let tfx = bipoly_terms_f64(&fx);
    let tfy = bipoly_terms_f64(&fy);

    let mut boxes = vec![(
        Iv::new(-window, window),
        Iv::new(-window, window),
        0usize,
    )];
    let mut candidates = Vec::new();
    while let Some((bx, by, depth)) = boxes.pop() {
        let vx = eval_iv(&tfx, bx, by);
        let vy = eval_iv(&tfy, bx, by);
        if !vx.contains_zero() || !vy.contains_zero() {
            continue;
        }
        if depth >= 9 {
            candidates.push(((bx.lo + bx.hi) / 2.0, (by.lo + by.hi) / 2.0));
            continue;
        }
        let mx = (bx.lo + bx.hi) / 2.0;
        let my = (by.lo + by.hi) / 2.0;
        for (xlo, xhi) in [(bx.lo, mx), (mx, bx.hi)] {
            for (ylo, yhi) in [(by.lo, my), (my, by.hi)] {
                boxes.push((Iv::new(xlo, xhi), Iv::new(ylo, yhi), depth + 1));
            }
        }
    }

    let mut found: Vec<(f64, f64)> = Vec::new();
    for (sx, sy) in candidates {
        let (mut x, mut y) = (sx, sy);
        let mut ok = false;
        for _ in 0..80 {
            let gx = eval_f64(&tfx, x, y);
            let gy = eval_f64(&tfy, x, y);
            let a = eval_f64(&fxx, x, y);
            let b = eval_f64(&fxy, x, y);
            let d = eval_f64(&fyy, x, y);
            let det = a * d - b * b;
            if det.abs() < 1e-14 {
                break;
            }
            let dx = (gx * d - gy * b) / det;
            let dy = (gy * a - gx * b) / det;
            x -= dx;
            y -= dy;
            if !x.is_finite() || !y.is_finite() {
                break;
            }
            if dx.abs() + dy.abs() < 1e-13 * (1.0 + x.abs() + y.abs()) {
                ok = true;
                break;
            }
        }
        let res = eval_f64(&tfx, x, y).abs() + eval_f64(&tfy, x, y).abs();
        if ok && res < 1e-8 && x.abs() <= 2.0 * window && y.abs() <= 2.0 * window {
            if !found
                .iter()
                .any(|&(px, py)| (px - x).abs() < 1e-6 && (py - y).abs() < 1e-6)
            {
                found.push((x, y));
            }
        }
    }
    found
}

/// Number of connected clusters of sign-change cells of `f = c` on a
/// square window; a crude but effective fiber-topology probe.
pub fn level_set_components(f: &BiPoly, c: f64, window: f64, n: usize) -> usize {
    let terms = bipoly_terms_f64(f);
    let h = 2.0 * window / n as f64;
    let val = |i: usize, j: usize| -> f64 {
        eval_f64(&terms, -window + i as f64 * h, -window + j as f64 * h) - c
    };
    // Corner values.
    let mut corner = vec![vec![0.0f64; n + 1]; n + 1];
    for (i, row) in corner.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = val(i, j);
        }
    }
    let active = |i: usize, j: usize| -> bool {
        let vs = [
            corner[i][j],
            corner[i + 1][j],
            corner[i][j + 1],
            corner[i + 1][j + 1],
        ];
        let has_pos = vs.iter().any(|&v| v > 0.0);
        let has_neg = vs.iter().any(|&v| v < 0.0);
        let has_zero = vs.iter().any(|&v| v == 0.0);
        (has_pos && has_neg) || has_zero
    };
    // Union-find over active cells.
    let idx = |i: usize, j: usize| i * n + j;
    let mut parent: Vec<usize> = (0..n * n).collect();
    fn find(parent: &mut Vec<usize>, mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let mut is_active = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            is_active[idx(i, j)] = active(i, j);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !is_active[idx(i, j)] {
                continue;
            }
            if i + 1 < n && is_active[idx(i + 1, j)] {
                let (a, b) = (find(&mut parent, idx(i, j)), find(&mut parent, idx(i + 1, j)));
                parent[a] = b;
            }
            if j + 1 < n && is_active[idx(i, j + 1)] {
                let (a, b) = (find(&mut parent, idx(i, j)), find(&mut parent, idx(i, j + 1)));
                parent[a] = b;
            }
        }
    }
    let mut roots = std::collections::BTreeSet::new();
    for i in 0..n * n {
        if is_active[i] {
            let r = find(&mut parent, i);
            roots.insert(r);
        }
    }
    roots.len()
}

/// Random sparse polynomial with bidegree at most `(max_deg, max_deg)`.
pub fn random_poly(rng: &mut ChaCha8Rng, max_deg: i64, max_terms: usize) -> BiPoly {
    loop {
        let k = rng.gen_range(2..=max_terms);
        let mut f = BiPoly::zero();
        for _ in 0..k {
            let m = rng.gen_range(0..=max_deg);
            let n = rng.gen_range(0..=max_deg);
            let c = loop {
                let c = rng.gen_range(-9i64..=9);
                if c != 0 {
                    break c;
                }
            };
            f.add_term(m, n, rat(c));
        }
        if !f.is_constant() {
            return f;
        }
    }
}

/// Deterministic corpus of polynomials on which the family-count theorem
/// applies (hypotheses hold and the singularities are isolated).
pub fn hypothesis_corpus() -> &'static Vec<BiPoly> {
    static CORPUS: OnceLock<Vec<BiPoly>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0xbf_2024);
        let mut out = Vec::new();
        while out.len() < 50 {
            let f = random_poly(&mut rng, 5, 5);
            if counts(&f).is_ok() {
                out.push(f);
            }
        }
        out
    })
}
