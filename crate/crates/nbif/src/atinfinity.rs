//! Hypothesis checks and conditions of the exact bifurcation-set
//! characterization, assembly of `B_f`, and the counts of cleaving and
//! vanishing families at infinity.

use std::collections::BTreeSet;


use crate::bound::BoundReport;
use crate::bivar::BiPoly;
use crate::criticality::{critical_values, has_isolated_singularities};
use crate::exactmath::{
    alg_image, count_real_roots, squarefree_decomposition, Ran, RootCountMode, UniPoly,
};
use crate::fan::{chart_expansion, complete_fan, Chart};
use crate::newton::{bad_face_b, infinity_faces, Face, FaceClass, PrimitiveCovector};
use crate::{Error, Result};

/// Verdict of the two hypotheses: non-degeneracy on the faces with
/// `d != 0` and Morse-ness of every bad-face function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub nondegenerate_plus_minus: bool,
    pub offending_nondegenerate: Vec<PrimitiveCovector>,
    pub morse_bad_faces: bool,
    pub offending_morse: Vec<PrimitiveCovector>,
}

impl HypothesisVerdict {
    pub fn all_hold(&self) -> bool {
        self.nondegenerate_plus_minus && self.morse_bad_faces
    }
}

/// Origin of an element of `B_f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Provenance {
    Critical,
    CondII,
    CondIII,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Critical => "critical",
            Provenance::CondII => "cond_ii",
            Provenance::CondIII => "cond_iii",
        }
    }
}

/// Cleaving/vanishing counts of the family-count theorem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub r_plus: usize,
    pub r_zero: usize,
    /// `cleav + vanish = 2 (R+ + R0)`.
    pub total: usize,
    pub vanish_min: usize,
    pub vanish_max: usize,
    /// `(cleav, vanish)` when every bad-face tangency resolves.
    pub exact_split: Option<(usize, usize)>,
}

/// Full analysis result: hypotheses, critical values, the two conditions
/// at infinity, the assembled bifurcation set, and optional counts/bound.
#[derive(Debug, Clone)]
pub struct BifurcationReport {
    pub verdict: HypothesisVerdict,
    pub sigma: Vec<Ran>,
    pub cond_ii: bool,
    pub cond_ii_witnesses: Vec<Face>,
    pub cond_iii: Vec<(Face, Ran, Ran)>,
    pub b_set: Vec<(Ran, BTreeSet<Provenance>)>,
    pub counts: Option<CountReport>,
    pub bound: Option<BoundReport>,
}

impl BifurcationReport {
    pub fn b_values(&self) -> Vec<Ran> {
        self.b_set.iter().map(|(v, _)| v.clone()).collect()
    }
}

/// Tangency type of the section curve against the divisor at a bad-face
/// double point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tangency {
    /// The curve meets one side of the divisor: one cleaving and one
    /// vanishing family.
    OneSide,
    /// The curve crosses to both sides (needs higher-order data).
    BothSides,
    /// The point is isolated on the curve (needs higher-order data).
    Isolated,
    /// First-order test inconclusive.
    Undetermined,
}

/// Non-degeneracy of a face with `d(P;f) != 0`: the gradient system of the
/// face function has no zero in `(R\{0})^2`, equivalently (by the Euler
/// relation) the profile has no nonzero real multiple root.
pub fn is_nondegenerate(face: &Face) -> Result<bool> {
    if face.cls == FaceClass::Zero {
        return Err(Error::BadFaceNotAllowed);
    }
    Ok(!profile_has_nonzero_multiple_root(&face.phi)?)
}

fn profile_has_nonzero_multiple_root(phi: &UniPoly) -> Result<bool> {
    for (factor, mult) in squarefree_decomposition(phi)? {
        if mult >= 2 && count_real_roots(&factor, RootCountMode::NonZero)? > 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Morse test for a bad face: every nonzero real critical point of `b_P`
/// is non-degenerate, i.e. `gcd(b', b'')` has no nonzero real root.
pub fn is_morse_bad_face(face: &Face) -> Result<bool> {
    let b = bad_face_b(face)?;
    let bp = b.derivative();
    let bpp = bp.derivative();
    if bp.is_constant() {
        return Ok(true);
    }
    let g = bp.gcd(&bpp);
    if g.degree() <= 0 {
        return Ok(true);
    }
    Ok(count_real_roots(&g, RootCountMode::NonZero)? == 0)
}

/// Checks both hypotheses over all faces at infinity.
pub fn hypothesis_verdict(f: &BiPoly) -> Result<HypothesisVerdict> {
    let faces = infinity_faces(f)?;
    let mut verdict = HypothesisVerdict {
        nondegenerate_plus_minus: true,
        offending_nondegenerate: Vec::new(),
        morse_bad_faces: true,
        offending_morse: Vec::new(),
    };
    for face in &faces {
        match face.cls {
            FaceClass::Zero => {
                if !is_morse_bad_face(face)? {
                    verdict.morse_bad_faces = false;
                    verdict.offending_morse.push(face.covector);
                }
            }
            _ => {
                if !is_nondegenerate(face)? {
                    verdict.nondegenerate_plus_minus = false;
                    verdict.offending_nondegenerate.push(face.covector);
                }
            }
        }
    }
    Ok(verdict)
}

/// Condition (ii): with `f~ = f - f(0,0)`, some face of `Gamma^+_inf(f~)`
/// has a face function vanishing somewhere in `(R\{0})^2`. Since the step
/// monomial attains every nonzero real value, this holds exactly when the
/// face profile has a nonzero real root.
pub fn condition_ii(f: &BiPoly) -> Result<(bool, Vec<Face>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let c00 = f.coeff(0, 0);
    let mut ftilde = f.clone();
    ftilde.add_term(0, 0, -c00);
    if ftilde.is_zero() {
        return Ok((false, Vec::new()));
    }
    let mut witnesses = Vec::new();
    for face in infinity_faces(&ftilde)? {
        if face.cls != FaceClass::Plus {
            continue;
        }
        if count_real_roots(&face.phi, RootCountMode::NonZero)? > 0 {
            witnesses.push(face);
        }
    }
    Ok((!witnesses.is_empty(), witnesses))
}

/// Condition (iii): the critical values of `b_P` restricted to nonzero
/// reals, over all bad faces. Requires every bad face to be Morse.
pub fn condition_iii(f: &BiPoly) -> Result<Vec<(Face, Ran, Ran)>> {
    let mut out = Vec::new();
    for face in infinity_faces(f)? {
        if face.cls != FaceClass::Zero {
            continue;
        }
        if !is_morse_bad_face(&face)? {
            return Err(Error::MorseViolation);
        }
        let b = bad_face_b(&face)?;
        let bp = b.derivative();
        for t_star in crate::exactmath::isolate_real_roots(&bp)? {
            if t_star.is_zero() {
                continue;
            }
            let value = alg_image(&b, &t_star);
            out.push((face.clone(), t_star, value));
        }
    }
    Ok(out)
}

fn merge_value(
    set: &mut Vec<(Ran, BTreeSet<Provenance>)>,
    value: Ran,
    provenance: Provenance,
) {
    for (v, tags) in set.iter_mut() {
        if *v == value {
            tags.insert(provenance);
            return;
        }
    }
    let mut tags = BTreeSet::new();
    tags.insert(provenance);
    set.push((value, tags));
}

/// Exact bifurcation set under the theorem hypotheses.
///
/// `B_f` is the union of the critical values, `{f(0,0)}` when condition
/// (ii) holds, and the bad-face critical values of condition (iii),
/// deduplicated by exact algebraic equality.
pub fn bifurcation_set(f: &BiPoly) -> Result<BifurcationReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let verdict = hypothesis_verdict(f)?;
    if !verdict.all_hold() {
        return Err(Error::HypothesisViolated(Box::new(verdict)));
    }
    let sigma = critical_values(f)?;
    let (cond_ii, cond_ii_witnesses) = condition_ii(f)?;
    let cond_iii = condition_iii(f)?;

    let mut b_set: Vec<(Ran, BTreeSet<Provenance>)> = Vec::new();
    for v in &sigma {
        merge_value(&mut b_set, v.clone(), Provenance::Critical);
    }
    if cond_ii {
        merge_value(&mut b_set, Ran::from_rational(&f.coeff(0, 0)), Provenance::CondII);
    }
    for (_, _, value) in &cond_iii {
        merge_value(&mut b_set, value.clone(), Provenance::CondIII);
    }
    b_set.sort_by(|(a, _), (b, _)| a.cmp_exact(b));

    let counts = match counts(f) {
        Ok(c) => Some(c),
        Err(Error::NonIsolatedSingularities) => None,
        Err(e) => return Err(e),
    };

    Ok(BifurcationReport {
        verdict,
        sigma,
        cond_ii,
        cond_ii_witnesses,
        cond_iii,
        b_set,
        counts,
        bound: None,
    })
}

/// First-order tangency classification at a bad-face double point.
///
/// With the chart section `W(v) = v^{d_right} g(v)` and a nonzero `s` that
/// is a double root of `W(v) - c`, the sign of `h(0, s)` decides whether
/// the nearby curve lies on one side of the divisor.
pub fn classify_tangency(chart: &Chart, c: &Ran, s: &Ran) -> Result<Tangency> {
    if chart.d_left != 0 {
        return Err(Error::BadFaceNotAllowed);
    }
    if s.is_zero() {
        return Err(Error::NotDoubleRoot);
    }
    let e_plus = chart.d_right.max(0) as usize;
    let e_minus = (-chart.d_right).max(0) as usize;
    let b = chart.g.shift_up(e_plus);
    // Value match: W(s) = c.
    let denom = UniPoly::monomial(crate::exactmath::rat(1), e_minus);
    let w_at_s = Ran::image_rat(&b, &denom, s);
    if w_at_s != *c {
        return Err(Error::NotDoubleRoot);
    }
    // First derivative of W vanishes at s: N1 = v B' - e_minus B.
    let n1 = &(&UniPoly::var() * &b.derivative())
        - &b.scale(&crate::exactmath::rat(e_minus as i64));
    if !s.is_root_of(&n1) {
        return Err(Error::NotDoubleRoot);
    }
    // Second derivative nonzero at s (multiplicity exactly 2).
    if s.is_root_of(&n1.derivative()) {
        return Err(Error::NotDoubleRoot);
    }
    // First-order test: H(0, s) = s^{d_right} h(0, s).
    let h0 = h_at_u0(&chart.h);
    if h0.is_zero() || s.is_root_of(&h0) {
        return Ok(Tangency::Undetermined);
    }
    Ok(Tangency::OneSide)
}

fn h_at_u0(h: &BiPoly) -> UniPoly {
    let mut coeffs = Vec::new();
    for (&(u, v), c) in h.terms() {
        if u == 0 {
            if coeffs.len() <= v as usize {
                coeffs.resize(v as usize + 1, crate::exactmath::rat(0));
            }
            coeffs[v as usize] = c.clone();
        }
    }
    UniPoly::from_coeffs(coeffs)
}

/// Cleaving/vanishing family counts. Requires the theorem hypotheses and
/// isolated singularities.
pub fn counts(f: &BiPoly) -> Result<CountReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let verdict = hypothesis_verdict(f)?;
    if !verdict.all_hold() {
        return Err(Error::HypothesisViolated(Box::new(verdict)));
    }
    if !has_isolated_singularities(f)? {
        return Err(Error::NonIsolatedSingularities);
    }
    let faces = infinity_faces(f)?;
    let mut r_plus = 0usize;
    let mut bad_faces = Vec::new();
    for face in &faces {
        match face.cls {
            FaceClass::Plus => {
                r_plus += count_real_roots(&face.phi, RootCountMode::NonZero)?;
            }
            FaceClass::Zero => bad_faces.push(face.clone()),
            FaceClass::Minus => {}
        }
    }

    let mut r_zero = 0usize;
    let mut one_side = 0usize;
    let mut undetermined = 0usize;
    if !bad_faces.is_empty() {
        let fan = complete_fan(&faces.iter().map(|f| f.covector).collect::<Vec<_>>())?;
        for face in &bad_faces {
            let b = bad_face_b(face)?;
            let bp = b.derivative();
            let roots: Vec<Ran> = crate::exactmath::isolate_real_roots(&bp)?
                .into_iter()
                .filter(|r| !r.is_zero())
                .collect();
            r_zero += roots.len();
            if roots.is_empty() {
                continue;
            }
            let i = fan
                .index_of(face.covector)
                .expect("bad-face covector is a fan ray");
            let chart = chart_expansion(f, &fan, i)?;
            debug_assert_eq!(chart.d_left, 0);
            // Orientation of the step monomial in chart coordinates:
            // t = x^{|q|} y^{|p|} maps to v or to 1/v.
            let w = (face.covector.q.abs(), face.covector.p.abs());
            let eps = chart.right.pair(w);
            debug_assert!(eps == 1 || eps == -1);
            for t_star in roots {
                let c = alg_image(&b, &t_star);
                let s = if eps == 1 { t_star.clone() } else { t_star.inverse() };
                match classify_tangency(&chart, &c, &s)? {
                    Tangency::OneSide => one_side += 1,
                    Tangency::Undetermined => undetermined += 1,
                    Tangency::BothSides | Tangency::Isolated => {}
                }
            }
        }
    }

    let total = 2 * (r_plus + r_zero);
    let vanish_min = one_side;
    let vanish_max = one_side + 2 * undetermined;
    let exact_split = if undetermined == 0 {
        Some((total - one_side, one_side))
    } else {
        None
    };
    debug_assert!(vanish_max <= 2 * r_zero);
    Ok(CountReport {
        r_plus,
        r_zero,
        total,
        vanish_min,
        vanish_max,
        exact_split,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac, Rat};

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    fn example2(a: i64) -> BiPoly {
        // m = 2: x + 1/2 x^2 y^2 + (2a/3) x^3 y^3 + 1/4 x^4 y^4
        BiPoly::from_terms(vec![
            ((1, 0), rat(1)),
            ((2, 2), rat_frac(1, 2)),
            ((3, 3), rat_frac(2 * a, 3)),
            ((4, 4), rat_frac(1, 4)),
        ])
    }

    #[test]
    fn nondegeneracy_via_profile() {
        // f = x + x^2 y^2, P = (-2, 1): phi = 1 + t square-free
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let faces = infinity_faces(&f).unwrap();
        for face in &faces {
            assert!(is_nondegenerate(face).unwrap());
        }
        // a face with phi = (t+1)^2 is degenerate: f_P = x (1 + x y^2)^2
        let f = xy(&[(1, 0, 1), (2, 2, 2), (3, 4, 1)]);
        let faces = infinity_faces(&f).unwrap();
        let minus = faces.iter().find(|fa| fa.cls == FaceClass::Minus).unwrap();
        assert_eq!(minus.phi, UniPoly::from_i64(&[1, 2, 1]));
        assert!(!is_nondegenerate(minus).unwrap());
        // phi = t^2 + 1: no real roots at all -> non-degenerate
        let f = xy(&[(1, 0, 1), (3, 2, 1)]);
        let faces = infinity_faces(&f).unwrap();
        for face in &faces {
            assert!(is_nondegenerate(face).unwrap());
        }
    }

    #[test]
    fn morse_condition_on_bad_faces() {
        // Example 2: Morse iff a != ±1.
        for (a, expect) in [(2, true), (0, true), (1, false), (-1, false)] {
            let faces = infinity_faces(&example2(a)).unwrap();
            let bad = faces.iter().find(|f| f.cls == FaceClass::Zero).unwrap();
            assert_eq!(is_morse_bad_face(bad).unwrap(), expect, "a = {a}");
        }
        // b(t) = t + t^2 with b' = 1 + 2t: simple nonzero critical point
        let f = xy(&[(1, 0, 1), (1, 1, 1), (2, 2, 1)]);
        let faces = infinity_faces(&f).unwrap();
        let bad = faces.iter().find(|f| f.cls == FaceClass::Zero).unwrap();
        assert!(is_morse_bad_face(bad).unwrap());
    }

    #[test]
    fn condition_ii_examples() {
        // x + x^2 y^2 -> true, witness (2,-1) with phi = 1+t
        let (holds, wit) = condition_ii(&xy(&[(1, 0, 1), (2, 2, 1)])).unwrap();
        assert!(holds);
        assert_eq!(wit.len(), 1);
        assert_eq!((wit[0].covector.p, wit[0].covector.q), (2, -1));
        // x + x^3 y^2 -> false (phi = 1 + t^2)
        let (holds, wit) = condition_ii(&xy(&[(1, 0, 1), (3, 2, 1)])).unwrap();
        assert!(!holds);
        assert!(wit.is_empty());
        // Broughton: x + x^2 y -> true
        let (holds, _) = condition_ii(&xy(&[(1, 0, 1), (2, 1, 1)])).unwrap();
        assert!(holds);
    }

    #[test]
    fn condition_iii_example2() {
        // a = 2: critical points -2±sqrt3 with values b(t0), b(t1)
        let out = condition_iii(&example2(2)).unwrap();
        assert_eq!(out.len(), 2);
        let t0 = &out[0].1;
        let t1 = &out[1].1;
        assert!(t0 < t1);
        assert_eq!(t0.sign(), -1);
        assert_eq!(t1.sign(), -1);
        // both values nonzero; the larger is b(-2+sqrt3) ≈ 0.0115
        let v1 = &out[1].2;
        assert_eq!(v1.sign(), 1);
        // a = 0: no nonzero critical points
        assert!(condition_iii(&example2(0)).unwrap().is_empty());
        // no bad face -> empty
        assert!(condition_iii(&xy(&[(1, 0, 1), (2, 1, 1)])).unwrap().is_empty());
        // non-Morse routes to the error
        assert!(matches!(condition_iii(&example2(1)), Err(Error::MorseViolation)));
    }

    #[test]
    fn bifurcation_set_example1() {
        // x(1 + x y^2): B_f = {0}
        let rep = bifurcation_set(&xy(&[(1, 0, 1), (2, 2, 1)])).unwrap();
        assert!(rep.sigma.is_empty());
        assert!(rep.cond_ii);
        assert_eq!(rep.b_set.len(), 1);
        assert!(rep.b_set[0].0.is_zero());
        assert!(rep.b_set[0].1.contains(&Provenance::CondII));
        // x(1 + x^2 y^2): B_f = {}
        let rep = bifurcation_set(&xy(&[(1, 0, 1), (3, 2, 1)])).unwrap();
        assert!(rep.b_set.is_empty());
    }

    #[test]
    fn counts_example1_and_2() {
        // x(1+x y^2): R+=1, R0=0 -> total 2, cleav 2, vanish 0
        let c = counts(&xy(&[(1, 0, 1), (2, 2, 1)])).unwrap();
        assert_eq!((c.r_plus, c.r_zero, c.total), (1, 0, 2));
        assert_eq!(c.exact_split, Some((2, 0)));
        // x(1+x^2 y^2): R+=0, R0=0 -> total 0
        let c = counts(&xy(&[(1, 0, 1), (3, 2, 1)])).unwrap();
        assert_eq!((c.r_plus, c.r_zero, c.total), (0, 0, 0));
        // Example 2 (m=2, a=2): R+=1, R0=2 -> total 6, cleav 4, vanish 2
        let c = counts(&example2(2)).unwrap();
        assert_eq!((c.r_plus, c.r_zero, c.total), (1, 2, 6));
        assert_eq!(c.exact_split, Some((4, 2)));
        assert_eq!((c.vanish_min, c.vanish_max), (2, 2));
    }

    #[test]
    fn tangency_classification_synthetic() {
        // g~ = (v-1)^2, h = 1 -> one_side; h = (v-1) -> undetermined.
        // Build charts directly.
        let mk_chart = |h: BiPoly| Chart {
            index: 3,
            left: PrimitiveCovector::new(1, -1).unwrap(),
            right: PrimitiveCovector::new(2, -1).unwrap(),
            map: crate::bivar::MonomialMap::new((1, -1), (2, -1)),
            d_left: 0,
            d_right: 0,
            g: UniPoly::from_i64(&[1, -2, 1]), // (v-1)^2 ... W = g, c = 0
            h,
        };
        let c = Ran::from_rational(&Rat::zero());
        let s = Ran::from_rational(&rat(1));
        let t = classify_tangency(&mk_chart(BiPoly::one()), &c, &s).unwrap();
        assert_eq!(t, Tangency::OneSide);
        let hv = xy(&[(0, 1, 1), (0, 0, -1)]); // h = v - 1
        let t = classify_tangency(&mk_chart(hv), &c, &s).unwrap();
        assert_eq!(t, Tangency::Undetermined);
        // wrong multiplicity: s not a double root
        let bad = classify_tangency(&mk_chart(BiPoly::one()), &c, &Ran::from_rational(&rat(2)));
        assert_eq!(bad, Err(Error::NotDoubleRoot));
    }
}
