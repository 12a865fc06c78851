//! Admissible covector families (unimodular fans containing prescribed
//! rays) and per-cone chart expansions
//! `f(u,v) = u^{d(R_i;f)} v^{d(R_{i+1};f)} (g(v) + u h(u,v))`.

use num_integer::Integer;

use crate::bivar::{BiPoly, MonomialMap, Var};
use crate::exactmath::UniPoly;
use crate::newton::{ccw_cmp, det2, PrimitiveCovector};
use crate::{Error, Result};

/// Complete unimodular fan: counter-clockwise rays starting
/// `(1,0), (0,1)`, consecutive determinants 1 including the wrap, every
/// ray from index 3 on carrying a negative entry.
#[derive(Clone, Debug)]
pub struct AdmissibleFan {
    rays: Vec<PrimitiveCovector>,
}

impl AdmissibleFan {
    pub fn rays(&self) -> &[PrimitiveCovector] {
        &self.rays
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ray `R_i` in the 1-based indexing of the construction.
    pub fn ray(&self, i: usize) -> PrimitiveCovector {
        assert!((1..=self.rays.len()).contains(&i));
        self.rays[i - 1]
    }

    /// 1-based index of a covector among the rays.
    pub fn index_of(&self, cov: PrimitiveCovector) -> Option<usize> {
        self.rays.iter().position(|&r| r == cov).map(|k| k + 1)
    }
}

// Unimodular chain from u to v (exclusive) for det(u, v) >= 1, by
// Hirzebruch-Jung insertion: returns the intermediate rays.
fn hj_chain(u: (i64, i64), v: (i64, i64)) -> Vec<(i64, i64)> {
    let k = det2(u, v);
    assert!(k >= 1, "hj_chain requires positively oriented cone");
    if k == 1 {
        return Vec::new();
    }
    // Complete u to a basis (u, w0) with det(u, w0) = 1 via extended gcd.
    let egcd = i64::extended_gcd(&u.0, &u.1);
    debug_assert_eq!(egcd.gcd, 1);
    // det(u, w0) = u.0 * w0.1 - u.1 * w0.0 = 1 with w0 = (-egcd.y, egcd.x).
    let w0 = (-egcd.y, egcd.x);
    debug_assert_eq!(det2(u, w0), 1);
    // v = a*u + k*w0 where a = det(w0, v) * ... solve: det(u, v) = k,
    // det(w0, v) = a * det(w0, u) = -a.
    let a = -det2(w0, v);
    debug_assert_eq!((a * u.0 + k * w0.0, a * u.1 + k * w0.1), v);
    let t = a.div_euclid(k) + 1; // ceil for non-multiples; a % k != 0 here
    debug_assert!(a.rem_euclid(k) != 0, "v would not be primitive");
    let w = (w0.0 + t * u.0, w0.1 + t * u.1);
    debug_assert_eq!(det2(u, w), 1);
    debug_assert!(det2(w, v) >= 1 && det2(w, v) < k);
    let mut out = vec![w];
    out.extend(hj_chain(w, v));
    out
}

/// Completes the prescribed covectors to an admissible fan: rays
/// `(1,0), (0,1)`, all required covectors, sorted counter-clockwise, with
/// all consecutive determinants 1 (including the wrap) after inserting
/// intermediate primitive rays.
pub fn complete_fan(required: &[PrimitiveCovector]) -> Result<AdmissibleFan> {
    for r in required {
        if !r.has_negative_entry() {
            return Err(Error::InvalidCovector);
        }
    }
    let mut rays: Vec<(i64, i64)> = vec![(1, 0), (0, 1)];
    rays.extend(required.iter().map(|r| (r.p, r.q)));
    rays.sort_by(|&a, &b| ccw_cmp(a, b));
    rays.dedup();

    // First make every cyclic gap strongly convex (angle < pi).
    loop {
        let mut inserted = false;
        let n = rays.len();
        for i in 0..n {
            let u = rays[i];
            let v = rays[(i + 1) % n];
            let d = det2(u, v);
            if d >= 1 {
                continue;
            }
            let w = if u == (-v.0, -v.1) {
                // Antiparallel: any w with det(u, w) = 1 splits the
                // half-plane into two unimodular-completable cones; take
                // the shortest such ray.
                let egcd = i64::extended_gcd(&u.0, &u.1);
                let mut w = (-egcd.y, egcd.x);
                let norm = |v: (i64, i64)| v.0.abs() + v.1.abs();
                loop {
                    if norm((w.0 - u.0, w.1 - u.1)) < norm(w) {
                        w = (w.0 - u.0, w.1 - u.1);
                    } else if norm((w.0 + u.0, w.1 + u.1)) < norm(w) {
                        w = (w.0 + u.0, w.1 + u.1);
                    } else {
                        break;
                    }
                }
                w
            } else {
                // Gap of pi or more: split at the antipode of u.
                (-u.0, -u.1)
            };
            let pos = rays.iter().position(|&r| r == u).unwrap();
            rays.insert(pos + 1, w);
            inserted = true;
            break;
        }
        if !inserted {
            break;
        }
    }

    // Hirzebruch-Jung subdivision of each cyclic cone.
    let mut full: Vec<(i64, i64)> = Vec::new();
    let n = rays.len();
    for i in 0..n {
        let u = rays[i];
        let v = rays[(i + 1) % n];
        full.push(u);
        full.extend(hj_chain(u, v));
    }

    // Rotate so the list starts (1,0), (0,1).
    let start = full.iter().position(|&r| r == (1, 0)).unwrap();
    full.rotate_left(start);
    debug_assert_eq!(full[1], (0, 1));
    let rays: Vec<PrimitiveCovector> = full
        .into_iter()
        .map(|(p, q)| PrimitiveCovector::new(p, q).expect("primitive by construction"))
        .collect();

    let fan = AdmissibleFan { rays };
    debug_assert!(fan_invariants_hold(&fan, required));
    Ok(fan)
}

fn fan_invariants_hold(fan: &AdmissibleFan, required: &[PrimitiveCovector]) -> bool {
    let n = fan.rays.len();
    if fan.rays[0] != (PrimitiveCovector { p: 1, q: 0 }) {
        return false;
    }
    if fan.rays[1] != (PrimitiveCovector { p: 0, q: 1 }) {
        return false;
    }
    for i in 0..n {
        let u = fan.rays[i];
        let v = fan.rays[(i + 1) % n];
        if det2((u.p, u.q), (v.p, v.q)) != 1 {
            return false;
        }
    }
    for r in &fan.rays[2..] {
        if !r.has_negative_entry() {
            return false;
        }
    }
    required.iter().all(|r| fan.rays[2..].contains(r))
}

/// One cone's chart data: the coordinate map and the decomposition of
/// `f(u,v) = u^{d_left} v^{d_right} (g(v) + u h(u,v))`.
#[derive(Clone, Debug)]
pub struct Chart {
    /// 1-based cone index: the cone spanned by `(R_i, R_{i+1})`.
    pub index: usize,
    pub left: PrimitiveCovector,
    pub right: PrimitiveCovector,
    pub map: MonomialMap,
    pub d_left: i64,
    pub d_right: i64,
    pub g: UniPoly,
    pub h: BiPoly,
}

/// Expansion of a (possibly Laurent) polynomial in the cone spanned by the
/// rays `left`, `right` with `det(left, right) = 1`.
pub fn expand_in_cone(
    f: &BiPoly,
    left: PrimitiveCovector,
    right: PrimitiveCovector,
    index: usize,
) -> Chart {
    assert!(!f.is_zero());
    debug_assert_eq!(det2((left.p, left.q), (right.p, right.q)), 1);
    let map = MonomialMap::new((left.p, left.q), (right.p, right.q));
    let sub = f.monomial_substitute(&map);
    let d_left = sub.min_exp(Var::X);
    let d_right = sub.min_exp(Var::Y);
    let shifted = sub.mul_monomial(-d_left, -d_right);
    debug_assert!(shifted.min_exp(Var::X) == 0 && shifted.min_exp(Var::Y) == 0);
    let mut g_terms = Vec::new();
    let mut h = BiPoly::zero();
    for (&(u, v), c) in shifted.terms() {
        if u == 0 {
            g_terms.push(((0i64, v), c.clone()));
        } else {
            h.add_term(u - 1, v, c.clone());
        }
    }
    let g = BiPoly::from_terms(g_terms).to_unipoly(Var::Y).expect("g is univariate");
    debug_assert!(!g.is_zero());
    Chart {
        index,
        left,
        right,
        map,
        d_left,
        d_right,
        g,
        h,
    }
}

/// Chart expansion for the `i`-th cone (1-based; cone `i` is spanned by
/// `R_i` and `R_{i+1}`, with `R_{m+1} = R_1`).
pub fn chart_expansion(f: &BiPoly, fan: &AdmissibleFan, i: usize) -> Result<Chart> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = fan.len();
    assert!((1..=m).contains(&i), "cone index out of range");
    let left = fan.ray(i);
    let right = if i == m { fan.ray(1) } else { fan.ray(i + 1) };
    Ok(expand_in_cone(f, left, right, i))
}

/// Fan for a local (origin-cornered) Newton polygon: rays from `(1,0)` to
/// `(0,1)` with positive middle rays and consecutive determinants 1.
#[derive(Clone, Debug)]
pub struct LocalFan {
    rays: Vec<PrimitiveCovector>,
}

impl LocalFan {
    pub fn rays(&self) -> &[PrimitiveCovector] {
        &self.rays
    }

    /// 1-based index of a covector among the rays.
    pub fn index_of(&self, cov: PrimitiveCovector) -> Option<usize> {
        self.rays.iter().position(|&r| r == cov).map(|k| k + 1)
    }

    pub fn ray(&self, i: usize) -> PrimitiveCovector {
        self.rays[i - 1]
    }

    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Completes positive covectors to a local fan between `(1,0)` and `(0,1)`.
pub fn complete_local_fan(required: &[PrimitiveCovector]) -> Result<LocalFan> {
    for r in required {
        if r.p <= 0 || r.q <= 0 {
            return Err(Error::NonPositiveCovector);
        }
    }
    let mut rays: Vec<(i64, i64)> = vec![(1, 0)];
    rays.extend(required.iter().map(|r| (r.p, r.q)));
    rays.push((0, 1));
    rays.sort_by(|&a, &b| ccw_cmp(a, b));
    rays.dedup();
    let mut full = Vec::new();
    for i in 0..rays.len() - 1 {
        full.push(rays[i]);
        full.extend(hj_chain(rays[i], rays[i + 1]));
    }
    full.push((0, 1));
    let rays: Vec<PrimitiveCovector> = full
        .into_iter()
        .map(|(p, q)| PrimitiveCovector::new(p, q).expect("primitive"))
        .collect();
    Ok(LocalFan { rays })
}

/// Chart for the `j`-th local cone (1-based; cones `1..=len-1`).
pub fn local_chart(fhat: &BiPoly, fan: &LocalFan, j: usize) -> Chart {
    assert!((1..fan.len()).contains(&j));
    expand_in_cone(fhat, fan.ray(j), fan.ray(j + 1), j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac};

    fn cov(p: i64, q: i64) -> PrimitiveCovector {
        PrimitiveCovector::new(p, q).unwrap()
    }

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    #[test]
    fn example1_fan_matches_reference_rays() {
        let fan = complete_fan(&[cov(-2, 1), cov(2, -1)]).unwrap();
        let rays: Vec<(i64, i64)> = fan.rays().iter().map(|r| (r.p, r.q)).collect();
        assert_eq!(
            rays,
            vec![(1, 0), (0, 1), (-1, 1), (-2, 1), (-1, 0), (2, -1)]
        );
    }

    #[test]
    fn empty_requirements_still_close_the_cycle() {
        let fan = complete_fan(&[]).unwrap();
        assert!(fan.len() >= 4);
        // Invariants are asserted inside complete_fan (debug); re-check the
        // wrap determinant here for release builds.
        let rays = fan.rays();
        let n = rays.len();
        for i in 0..n {
            let u = rays[i];
            let v = rays[(i + 1) % n];
            assert_eq!(det2((u.p, u.q), (v.p, v.q)), 1);
        }
    }

    #[test]
    fn example2_fan_contains_paper_rays() {
        // m = 8: required (-10, 9), (1, -1), (8, -7)
        let fan = complete_fan(&[cov(-10, 9), cov(1, -1), cov(8, -7)]).unwrap();
        let rays: Vec<(i64, i64)> = fan.rays().iter().map(|r| (r.p, r.q)).collect();
        for k in 1..=5 {
            // paper fill-in rays (m-k, 1-m+k) = (8-k, -7+k)
            assert!(rays.contains(&(8 - k, -7 + k)), "missing {:?}", (8 - k, -7 + k));
        }
        assert!(rays.contains(&(2, -1)));
        assert!(rays.contains(&(-1, 1)));
    }

    #[test]
    fn invalid_required_ray_rejected() {
        assert!(matches!(complete_fan(&[cov(1, 1)]), Err(Error::InvalidCovector)));
    }

    #[test]
    fn example1_chart_u5() {
        // f = x(1+x y^2), cone (R_5, R_6) = ((-1,0), (2,-1)):
        // f = u^-2 v^2 (1 + u)
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let fan = complete_fan(&[cov(-2, 1), cov(2, -1)]).unwrap();
        let chart = chart_expansion(&f, &fan, 5).unwrap();
        assert_eq!((chart.d_left, chart.d_right), (-2, 2));
        assert_eq!(chart.g, UniPoly::from_i64(&[1]));
        assert_eq!(chart.h, BiPoly::one());
    }

    #[test]
    fn identity_cone_chart() {
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let fan = complete_fan(&[cov(-2, 1), cov(2, -1)]).unwrap();
        let chart = chart_expansion(&f, &fan, 1).unwrap();
        // d_left = d((1,0); f) = 1, d_right = d((0,1); f) = 0
        assert_eq!((chart.d_left, chart.d_right), (1, 0));
        // f = u (1 + u v^2): g = 1, h = v^2
        assert_eq!(chart.g, UniPoly::from_i64(&[1]));
        assert_eq!(chart.h, xy(&[(0, 2, 1)]));
    }

    #[test]
    fn chart_reconstructs_f() {
        // Eq-style identity: u^{dl} v^{dr} (g(v) + u h(u,v)) equals the
        // substituted polynomial, hence f at pulled-back points.
        let f = xy(&[(1, 0, 1), (2, 2, 1), (0, 3, 5), (4, 1, -2)]);
        let req: Vec<PrimitiveCovector> = crate::newton::infinity_faces(&f)
            .unwrap()
            .into_iter()
            .map(|face| face.covector)
            .collect();
        let fan = complete_fan(&req).unwrap();
        for i in 1..=fan.len() {
            let chart = chart_expansion(&f, &fan, i).unwrap();
            let sub = f.monomial_substitute(&chart.map);
            // rebuild u^{dl} v^{dr} (g + u h)
            let mut rebuilt = BiPoly::from_unipoly(Var::Y, &chart.g)
                .add(&chart.h.mul_monomial(1, 0));
            rebuilt = rebuilt.mul_monomial(chart.d_left, chart.d_right);
            assert_eq!(rebuilt, sub);
            // evaluation identity at a nonzero rational point
            let (u, v) = (rat_frac(3, 2), rat_frac(-2, 5));
            let x = BiPoly::monomial(chart.map.left.0, chart.map.right.0, rat(1)).eval(&u, &v);
            let y = BiPoly::monomial(chart.map.left.1, chart.map.right.1, rat(1)).eval(&u, &v);
            assert_eq!(f.eval(&x, &y), sub.eval(&u, &v));
        }
    }

    #[test]
    fn local_fan_basics() {
        let fan = complete_local_fan(&[cov(2, 1), cov(1, 3)]).unwrap();
        let rays = fan.rays();
        assert_eq!(rays[0], cov(1, 0));
        assert_eq!(*rays.last().unwrap(), cov(0, 1));
        for w in rays.windows(2) {
            assert_eq!(det2((w[0].p, w[0].q), (w[1].p, w[1].q)), 1);
        }
        assert!(fan.index_of(cov(2, 1)).is_some());
        assert!(fan.index_of(cov(1, 3)).is_some());
        assert!(matches!(
            complete_local_fan(&[cov(-1, 2)]),
            Err(Error::NonPositiveCovector)
        ));
    }

    #[test]
    fn random_fan_invariants() {
        // A spread of required rays with negative entries.
        let cands = [
            (-1i64, 2i64),
            (-3, 1),
            (2, -3),
            (5, -1),
            (-1, -1),
            (-2, -5),
            (0, -1),
            (-1, 0),
            (7, -2),
            (-4, 7),
        ];
        for mask in 1u32..(1 << cands.len()) {
            if mask % 37 != 0 {
                continue; // subsample
            }
            let req: Vec<PrimitiveCovector> = cands
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, &(p, q))| cov(p, q))
                .collect();
            let fan = complete_fan(&req).unwrap();
            let rays = fan.rays();
            let n = rays.len();
            assert_eq!((rays[0].p, rays[0].q), (1, 0));
            assert_eq!((rays[1].p, rays[1].q), (0, 1));
            for i in 0..n {
                let u = rays[i];
                let v = rays[(i + 1) % n];
                assert_eq!(det2((u.p, u.q), (v.p, v.q)), 1, "fan {rays:?}");
            }
            for r in &rays[2..] {
                assert!(r.has_negative_entry());
            }
            for r in &req {
                assert!(rays[2..].contains(r));
            }
        }
    }

    #[test]
    fn monomial_map_identity_application() {
        let f = xy(&[(2, 3, 4), (0, 1, -1)]);
        let id = MonomialMap::identity();
        assert_eq!(f.monomial_substitute(&id), f);
        let m = MonomialMap::new((1, 1), (0, 1));
        let inv = m.inverse();
        assert_eq!(
            f.monomial_substitute(&m).monomial_substitute(&inv),
            f
        );
    }
}
