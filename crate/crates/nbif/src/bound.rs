//! Certified upper bound on the size of the bifurcation set: local Newton
//! polygons of chart normal forms, heights, per-covector lambda values,
//! and the ledger of successive toric modifications at rational multiple
//! roots.

use num_integer::Integer;

use crate::bivar::{BiPoly, Var};
use crate::criticality::critical_values;
use crate::exactmath::{
    count_real_roots, isolate_real_roots, squarefree_decomposition, Ran, Rat, RootCountMode,
    UniPoly,
};
use crate::fan::{chart_expansion, complete_fan, complete_local_fan, local_chart, Chart, LocalFan};
use crate::newton::{bad_face_b, convex_hull, infinity_faces, Face, FaceClass, PrimitiveCovector};
use crate::{Error, Result};

/// Itemized components of the closed-form bound
/// `|B_f| <= |Sigma_f| + epsilon + R0 + sum mu(P;f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub sigma_size: usize,
    pub epsilon: usize,
    pub r_zero: usize,
    pub mu_sum: usize,
    pub total: usize,
}

/// Multiplicity excess `mu(P;f)` of a face with `d(P;f) < 0`: the sum of
/// `(multiplicity - 1)` over the nonzero real roots of the chart section,
/// read off the face profile.
pub fn mu_face(face: &Face) -> Result<usize> {
    if face.cls != FaceClass::Minus {
        return Err(Error::WrongFaceClass);
    }
    let mut total = 0usize;
    for (factor, mult) in squarefree_decomposition(&face.phi)? {
        if mult >= 2 {
            total += (mult - 1) * count_real_roots(&factor, RootCountMode::NonZero)?;
        }
    }
    Ok(total)
}

fn face_r0(face: &Face) -> Result<usize> {
    let b = bad_face_b(face)?;
    count_real_roots(&b.derivative(), RootCountMode::NonZero)
}

/// Bound components for a precomputed critical-value count.
pub fn bound_components(f: &BiPoly, sigma_size: usize) -> Result<BoundReport> {
    let faces = infinity_faces(f)?;
    let mut r_plus = 0usize;
    let mut r_zero = 0usize;
    let mut mu_sum = 0usize;
    for face in &faces {
        match face.cls {
            FaceClass::Plus => {
                r_plus += count_real_roots(&face.phi, RootCountMode::NonZero)?;
            }
            FaceClass::Zero => r_zero += face_r0(face)?,
            FaceClass::Minus => mu_sum += mu_face(face)?,
        }
    }
    let epsilon = usize::from(r_plus > 0);
    Ok(BoundReport {
        sigma_size,
        epsilon,
        r_zero,
        mu_sum,
        total: sigma_size + epsilon + r_zero + mu_sum,
    })
}

/// The closed-form upper bound on `|B_f|`, with components itemized.
pub fn theorem5_bound(f: &BiPoly) -> Result<BoundReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let sigma = critical_values(f)?;
    bound_components(f, sigma.len())
}

/// Chart normal form at a translated multiple root:
/// `f^sigma = x^d (y+s)^{d_prime} F(x, y)` with
/// `F = y^mu g(y) + x h(x, y)` and `g(0) != 0`.
#[derive(Debug, Clone)]
pub struct ChartNormalForm {
    pub d: i64,
    pub d_prime: i64,
    /// Translation point (nonzero).
    pub s: Rat,
    /// Multiplicity of the root at the new origin.
    pub mu: usize,
    /// The factor `F`; the unit `(y+s)^{d_prime}` is tracked symbolically
    /// and never expanded.
    pub f_hat: BiPoly,
}

impl ChartNormalForm {
    fn from_chart(chart: &Chart, s: &Rat, mu: usize) -> Self {
        let g_shift = chart.g.translate(s);
        debug_assert_eq!(g_shift.valuation(), mu);
        let h_shift = chart.h.translate_y(s);
        let f_hat = BiPoly::from_unipoly(Var::Y, &g_shift)
            .add(&h_shift.mul_monomial(1, 0));
        ChartNormalForm {
            d: chart.d_left,
            d_prime: chart.d_right,
            s: s.clone(),
            mu,
            f_hat,
        }
    }

    /// The Laurent polynomial `x^d F` carrying all polygon data; the unit
    /// factor contributes only a constant to every face function.
    fn weighted(&self) -> BiPoly {
        self.f_hat.mul_monomial(self.d, 0)
    }
}

/// A compact face of a local Newton polygon, with positive covector.
#[derive(Debug, Clone)]
pub struct LocalFace {
    pub covector: PrimitiveCovector,
    pub d: i64,
    pub base: (i64, i64),
    pub dir: (i64, i64),
    pub ell: usize,
    pub phi: UniPoly,
}

/// Local Newton polygon: the convex hull of the union of the positive
/// quadrants rooted at the support points of `x^d F`.
#[derive(Debug, Clone)]
pub struct LocalPolygon {
    pub support: Vec<(i64, i64)>,
    /// Compact 1-dimensional faces, counter-clockwise by covector.
    pub faces: Vec<LocalFace>,
}

pub fn local_polygon(cnf: &ChartNormalForm) -> LocalPolygon {
    let weighted = cnf.weighted();
    let support = weighted.support();
    let hull = convex_hull(&support);
    let mut faces = Vec::new();
    let mut push_face = |a: (i64, i64), b: (i64, i64)| {
        let e = (b.0 - a.0, b.1 - a.1);
        let cov = PrimitiveCovector::from_direction(-e.1, e.0);
        if cov.p <= 0 || cov.q <= 0 {
            return;
        }
        let (base, other) = if a <= b { (a, b) } else { (b, a) };
        let step = (other.0 - base.0, other.1 - base.1);
        let g = step.0.gcd(&step.1);
        let dir = (step.0 / g, step.1 / g);
        let ell = g as usize;
        let coeffs: Vec<Rat> = (0..=ell as i64)
            .map(|k| weighted.coeff(base.0 + k * dir.0, base.1 + k * dir.1))
            .collect();
        faces.push(LocalFace {
            covector: cov,
            d: cov.pair(base),
            base,
            dir,
            ell,
            phi: UniPoly::from_coeffs(coeffs),
        });
    };
    match hull.len() {
        0 | 1 => {}
        2 => {
            push_face(hull[0], hull[1]);
            push_face(hull[1], hull[0]);
        }
        _ => {
            for i in 0..hull.len() {
                push_face(hull[i], hull[(i + 1) % hull.len()]);
            }
        }
    }
    faces.sort_by(|a, b| {
        crate::newton::ccw_cmp((a.covector.p, a.covector.q), (b.covector.p, b.covector.q))
    });
    LocalPolygon { support, faces }
}

/// `(+)`, `(0)` and `(-)` heights of the local polygon: lattice extents of
/// the second-axis projections of the negative- and zero-level compact
/// faces (0 when the region is empty), with the positive height making up
/// the difference to `mu`.
pub fn heights(cnf: &ChartNormalForm) -> (usize, usize, usize) {
    let lp = local_polygon(cnf);
    let mut ell_minus = 0usize;
    let mut ell_zero = 0usize;
    for face in &lp.faces {
        // dir = (q, -p): the face spans ell * p lattice rows.
        let extent = face.ell * face.covector.p as usize;
        match face.d.cmp(&0) {
            std::cmp::Ordering::Less => ell_minus += extent,
            std::cmp::Ordering::Equal => ell_zero += extent,
            std::cmp::Ordering::Greater => {}
        }
    }
    let ell_plus = cnf
        .mu
        .checked_sub(ell_minus + ell_zero)
        .expect("heights exceed mu");
    (ell_plus, ell_zero, ell_minus)
}

// r0 of a local bad face: nonzero real roots of the derivative of the
// Laurent section b(t) = t^k0 phi(t), i.e. of psi = k0 phi + t phi'.
fn local_face_r0(face: &LocalFace) -> Result<usize> {
    debug_assert_eq!(face.d, 0);
    let k0 = face.base.0 / face.covector.q;
    debug_assert_eq!(k0 * face.covector.q, face.base.0);
    let psi = &face.phi.scale(&crate::exactmath::rat(k0)) + &(&UniPoly::var() * &face.phi.derivative());
    count_real_roots(&psi, RootCountMode::NonZero)
}

// Multiple nonzero real roots (root, multiplicity >= 2) of a chart section.
fn multiple_roots(g: &UniPoly) -> Result<Vec<(Ran, usize)>> {
    let mut out = Vec::new();
    if g.is_constant() {
        return Ok(out);
    }
    for (factor, mult) in squarefree_decomposition(g)? {
        if mult < 2 {
            continue;
        }
        for root in isolate_real_roots(&factor)? {
            if !root.is_zero() {
                out.push((root, mult));
            }
        }
    }
    Ok(out)
}

fn local_fan_for(lp: &LocalPolygon) -> Result<LocalFan> {
    let covs: Vec<PrimitiveCovector> = lp.faces.iter().map(|f| f.covector).collect();
    complete_local_fan(&covs)
}

/// The lambda value of a positive covector whose face is a compact face of
/// the local polygon: 0 at positive level, the count of nonzero real
/// critical points of the bad-face section at level zero, and the
/// multiplicity excess of the untreated nonzero real multiple roots at
/// negative level.
pub fn lambda_value(
    q: PrimitiveCovector,
    cnf: &ChartNormalForm,
    untreated: &[Ran],
) -> Result<usize> {
    if q.p <= 0 || q.q <= 0 {
        return Err(Error::NonPositiveCovector);
    }
    let lp = local_polygon(cnf);
    let Some(face) = lp.faces.iter().find(|f| f.covector == q) else {
        return Err(Error::WrongFaceClass);
    };
    match face.d.cmp(&0) {
        std::cmp::Ordering::Greater => Ok(0),
        std::cmp::Ordering::Equal => local_face_r0(face),
        std::cmp::Ordering::Less => {
            let fan = local_fan_for(&lp)?;
            let j = fan.index_of(q).expect("face covector is a fan ray");
            let chart = local_chart(&cnf.weighted(), &fan, j);
            let mut lam = 0usize;
            for (root, mult) in multiple_roots(&chart.g)? {
                if untreated.iter().any(|u| *u == root) {
                    lam += mult - 1;
                }
            }
            Ok(lam)
        }
    }
}

/// One refinement step of the ledger.
#[derive(Debug, Clone)]
pub struct LedgerEntry {
    /// Human-readable site identifier.
    pub site: String,
    /// Lambda contribution per covector at this step.
    pub lambdas: Vec<(PrimitiveCovector, usize)>,
    pub epsilon_sigma: usize,
    /// The accumulator after this step.
    pub lambda_after: usize,
}

/// The weakly decreasing bound accumulator across successive toric
/// modifications.
#[derive(Debug, Clone)]
pub struct Ledger {
    pub entries: Vec<LedgerEntry>,
    pub sigma_size: usize,
    pub final_bound: usize,
}

struct WorkItem {
    cnf: ChartNormalForm,
    depth: usize,
    site: String,
}

const HARD_DEPTH_CAP: usize = 64;

/// Refines the closed-form bound by successive toric modifications at
/// rational multiple roots up to `max_depth`; irrational or deeper sites
/// keep their closed-form contribution. The ledger records one entry per
/// step and its accumulator never increases.
pub fn refine_bound(f: &BiPoly, max_depth: usize) -> Result<Ledger> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    let max_depth = max_depth.min(HARD_DEPTH_CAP);
    let sigma_size = critical_values(f)?.len();
    let faces = infinity_faces(f)?;

    let mut r_plus = 0usize;
    let mut lambdas = Vec::new();
    let mut queue: Vec<WorkItem> = Vec::new();
    let mut lambda_acc = 0usize;

    let covs: Vec<PrimitiveCovector> = faces.iter().map(|f| f.covector).collect();
    let fan = if covs.is_empty() {
        None
    } else {
        Some(complete_fan(&covs)?)
    };
    for face in &faces {
        let lam = match face.cls {
            FaceClass::Plus => {
                r_plus += count_real_roots(&face.phi, RootCountMode::NonZero)?;
                0
            }
            FaceClass::Zero => face_r0(face)?,
            FaceClass::Minus => {
                let fan = fan.as_ref().unwrap();
                let i = fan.index_of(face.covector).expect("face covector is a ray");
                let chart = chart_expansion(f, fan, i)?;
                let mut lam = 0usize;
                for (root, mult) in multiple_roots(&chart.g)? {
                    lam += mult - 1;
                    if max_depth >= 1 {
                        if let Some(s) = root.as_rational() {
                            queue.push(WorkItem {
                                cnf: ChartNormalForm::from_chart(&chart, &s, mult),
                                depth: 1,
                                site: format!(
                                    "P=({},{}) s={} mu={}",
                                    face.covector.p, face.covector.q, s, mult
                                ),
                            });
                        }
                    }
                }
                lam
            }
        };
        lambdas.push((face.covector, lam));
        lambda_acc += lam;
    }
    let epsilon = usize::from(r_plus > 0);
    lambda_acc += epsilon;

    let mut entries = vec![LedgerEntry {
        site: "global".to_string(),
        lambdas,
        epsilon_sigma: epsilon,
        lambda_after: lambda_acc,
    }];

    let mut qi = 0usize;
    while qi < queue.len() {
        let item_cnf = queue[qi].cnf.clone();
        let item_depth = queue[qi].depth;
        let item_site = queue[qi].site.clone();
        qi += 1;

        let lp = local_polygon(&item_cnf);
        let (ell_plus, _, _) = heights(&item_cnf);
        let eps_sigma = usize::from(ell_plus >= 2);
        let mut lams = Vec::new();
        let mut contribution = eps_sigma;
        if !lp.faces.is_empty() {
            let lfan = local_fan_for(&lp)?;
            for face in &lp.faces {
                let lam = match face.d.cmp(&0) {
                    std::cmp::Ordering::Greater => 0,
                    std::cmp::Ordering::Equal => local_face_r0(face)?,
                    std::cmp::Ordering::Less => {
                        let j = lfan.index_of(face.covector).expect("ray");
                        let chart = local_chart(&item_cnf.weighted(), &lfan, j);
                        let mut lam = 0usize;
                        for (root, mult) in multiple_roots(&chart.g)? {
                            lam += mult - 1;
                            if item_depth < max_depth {
                                if let Some(s) = root.as_rational() {
                                    queue.push(WorkItem {
                                        cnf: ChartNormalForm::from_chart(&chart, &s, mult),
                                        depth: item_depth + 1,
                                        site: format!(
                                            "{} -> Q=({},{}) s={} mu={}",
                                            item_site, face.covector.p, face.covector.q, s, mult
                                        ),
                                    });
                                }
                            }
                        }
                        lam
                    }
                };
                lams.push((face.covector, lam));
                contribution += lam;
            }
        }
        // Replace the site's (mu - 1) by its refined contribution.
        let before = lambda_acc;
        lambda_acc = lambda_acc - (item_cnf.mu - 1) + contribution;
        assert!(
            lambda_acc <= before,
            "ledger accumulator must not increase"
        );
        entries.push(LedgerEntry {
            site: item_site,
            lambdas: lams,
            epsilon_sigma: eps_sigma,
            lambda_after: lambda_acc,
        });
    }

    Ok(Ledger {
        entries,
        sigma_size,
        final_bound: sigma_size + lambda_acc,
    })
}
