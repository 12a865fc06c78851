//! Newton polygon of a bivariate polynomial, faces at infinity classified
//! by the sign of their level, face functions, per-face univariate
//! profiles, and bad-face polynomials.

use num_integer::Integer;
use num_traits::Zero;

use crate::bivar::BiPoly;
use crate::exactmath::{Rat, UniPoly};
use crate::{Error, Result};

/// Primitive integer covector `(p, q)` with `gcd(|p|, |q|) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveCovector {
    pub p: i64,
    pub q: i64,
}

impl PrimitiveCovector {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if (p, q) == (0, 0) || p.gcd(&q) != 1 {
            return Err(Error::InvalidCovector);
        }
        Ok(PrimitiveCovector { p, q })
    }

    /// Primitive vector in the direction of `(p, q)`.
    pub fn from_direction(p: i64, q: i64) -> Self {
        assert!((p, q) != (0, 0));
        let g = p.gcd(&q);
        PrimitiveCovector { p: p / g, q: q / g }
    }

    pub fn has_negative_entry(&self) -> bool {
        self.p < 0 || self.q < 0
    }

    pub fn pair(&self, (m, n): (i64, i64)) -> i64 {
        self.p * m + self.q * n
    }

    /// Counter-clockwise 90-degree rotation `(-q, p)`.
    pub fn rot90(&self) -> (i64, i64) {
        (-self.q, self.p)
    }
}

impl std::fmt::Debug for PrimitiveCovector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

pub fn det2(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Strict counter-clockwise angular order starting just after the positive
/// x-axis direction `(1, 0)`.
pub fn ccw_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    fn half(v: (i64, i64)) -> u8 {
        // 0 for angle in [0, pi), 1 for [pi, 2pi)
        if v.1 > 0 || (v.1 == 0 && v.0 > 0) {
            0
        } else {
            1
        }
    }
    half(a)
        .cmp(&half(b))
        .then_with(|| det2(b, a).cmp(&0))
}

/// Sign class of a face at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceClass {
    /// `d(P;f) > 0`
    Plus,
    /// `d(P;f) = 0` (bad face)
    Zero,
    /// `d(P;f) < 0`
    Minus,
}

/// A one-dimensional face of the Newton polygon together with its exact
/// combinatorial data.
#[derive(Clone, Debug)]
pub struct Face {
    /// Outward primitive covector `P` (the face minimizes `pX + qY`).
    pub covector: PrimitiveCovector,
    /// Level `d(P;f)`.
    pub d: i64,
    pub cls: FaceClass,
    /// Endpoint with lexicographically smallest exponent pair.
    pub base: (i64, i64),
    /// Primitive step along the face, pointing to the other endpoint.
    pub dir: (i64, i64),
    /// Lattice length: the number of lattice points on the face minus 1.
    pub ell: usize,
    /// Profile: `f_P(x,y) = x^{m0} y^{n0} * phi(x^{Dx} y^{Dy})`.
    pub phi: UniPoly,
}

impl Face {
    fn classify(d: i64) -> FaceClass {
        match d.cmp(&0) {
            std::cmp::Ordering::Greater => FaceClass::Plus,
            std::cmp::Ordering::Equal => FaceClass::Zero,
            std::cmp::Ordering::Less => FaceClass::Minus,
        }
    }

    fn from_edge(f: &BiPoly, covector: PrimitiveCovector, a: (i64, i64), b: (i64, i64)) -> Face {
        let (base, other) = if a <= b { (a, b) } else { (b, a) };
        let step = (other.0 - base.0, other.1 - base.1);
        let g = step.0.gcd(&step.1);
        let dir = (step.0 / g, step.1 / g);
        let ell = g as usize;
        let coeffs: Vec<Rat> = (0..=ell as i64)
            .map(|k| f.coeff(base.0 + k * dir.0, base.1 + k * dir.1))
            .collect();
        let phi = UniPoly::from_coeffs(coeffs);
        let d = covector.pair(base);
        debug_assert_eq!(d, covector.pair(other));
        debug_assert!(!phi.coeff(0).is_zero());
        debug_assert_eq!(phi.degree(), ell as isize);
        Face {
            covector,
            d,
            cls: Face::classify(d),
            base,
            dir,
            ell,
            phi,
        }
    }
}

/// Convex hull data of the exponent support.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    pub support: Vec<(i64, i64)>,
    /// Extreme points in counter-clockwise order (1 or 2 points for the
    /// degenerate cases).
    pub vertices: Vec<(i64, i64)>,
}

/// Newton polygon of the exact support; the origin is not adjoined.
pub fn newton_polygon(f: &BiPoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let support = f.support();
    let vertices = convex_hull(&support);
    Ok(NewtonPolygon { support, vertices })
}

/// Strict convex hull (extreme points only), counter-clockwise.
pub(crate) fn convex_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 1 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// All one-dimensional faces whose outward primitive covector has a
/// negative entry, in counter-clockwise covector order.
pub fn infinity_faces(f: &BiPoly) -> Result<Vec<Face>> {
    let polygon = newton_polygon(f)?;
    let mut faces = Vec::new();
    match polygon.vertices.len() {
        0 | 1 => {}
        2 => {
            let (a, b) = (polygon.vertices[0], polygon.vertices[1]);
            let e = (b.0 - a.0, b.1 - a.1);
            let n1 = PrimitiveCovector::from_direction(-e.1, e.0);
            let n2 = PrimitiveCovector::from_direction(e.1, -e.0);
            for cov in [n1, n2] {
                if cov.has_negative_entry() {
                    faces.push(Face::from_edge(f, cov, a, b));
                }
            }
        }
        _ => {
            let vs = &polygon.vertices;
            for i in 0..vs.len() {
                let a = vs[i];
                let b = vs[(i + 1) % vs.len()];
                let e = (b.0 - a.0, b.1 - a.1);
                // CCW polygon: the interior lies to the left of the edge,
                // so rot90(e) is the inward normal, along which the face
                // minimizes.
                let cov = PrimitiveCovector::from_direction(-e.1, e.0);
                if cov.has_negative_entry() {
                    faces.push(Face::from_edge(f, cov, a, b));
                }
            }
        }
    }
    faces.sort_by(|a, b| ccw_cmp((a.covector.p, a.covector.q), (b.covector.p, b.covector.q)));
    Ok(faces)
}

/// Boundary function: the partial sum of `f` over `Delta(P;f)`.
pub fn face_function(f: &BiPoly, cov: PrimitiveCovector) -> Result<BiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f
        .terms()
        .map(|(&mn, _)| cov.pair(mn))
        .min()
        .expect("nonzero polynomial");
    Ok(BiPoly::from_terms(
        f.terms()
            .filter(|(&mn, _)| cov.pair(mn) == d)
            .map(|(&mn, c)| (mn, c.clone())),
    ))
}

/// Level `d(P;f)`: the minimum of `pX + qY` over the support.
pub fn level(f: &BiPoly, cov: PrimitiveCovector) -> i64 {
    f.terms()
        .map(|(&mn, _)| cov.pair(mn))
        .min()
        .expect("nonzero polynomial")
}

/// The one-variable polynomial `b_P` of a bad face:
/// `f_P(x,y) = b_P(x^{|q|} y^{|p|})`.
pub fn bad_face_b(face: &Face) -> Result<UniPoly> {
    if face.cls != FaceClass::Zero {
        return Err(Error::NotBadFace);
    }
    let (p, q) = (face.covector.p, face.covector.q);
    // Support in the closed first quadrant rules out p, q < 0 on a level-0
    // face; primitivity then forces p*q < 0.
    assert!(p * q < 0, "bad face covector must have mixed signs");
    let w = (q.abs(), p.abs());
    debug_assert_eq!(face.dir, w, "bad-face step must align with (|q|, |p|)");
    let k0 = if w.0 != 0 {
        face.base.0 / w.0
    } else {
        face.base.1 / w.1
    };
    debug_assert!(k0 >= 0);
    Ok(face.phi.shift_up(k0 as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac};

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    // Example 2 of the analyses at m=2, a=2:
    // f = x + 1/2 x^2 y^2 + 4/3 x^3 y^3 + 1/4 x^4 y^4
    fn example2() -> BiPoly {
        BiPoly::from_terms(vec![
            ((1, 0), rat(1)),
            ((2, 2), rat_frac(1, 2)),
            ((3, 3), rat_frac(4, 3)),
            ((4, 4), rat_frac(1, 4)),
        ])
    }

    #[test]
    fn polygon_shapes() {
        // x + x^2 y^2: segment
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let p = newton_polygon(&f).unwrap();
        assert_eq!(p.vertices, vec![(1, 0), (2, 2)]);
        // Example 2: triangle; (3,3) interior to an edge
        let p = newton_polygon(&example2()).unwrap();
        assert_eq!(p.vertices.len(), 3);
        assert!(p.vertices.contains(&(1, 0)));
        assert!(p.vertices.contains(&(2, 2)));
        assert!(p.vertices.contains(&(4, 4)));
        assert!(!p.vertices.contains(&(3, 3)));
        // monomial: single point
        let p = newton_polygon(&xy(&[(3, 2, 7)])).unwrap();
        assert_eq!(p.vertices, vec![(3, 2)]);
        assert!(newton_polygon(&BiPoly::zero()).is_err());
    }

    #[test]
    fn faces_of_segment_polygon() {
        // x + x^2 y^2: P=(2,-1) d=2 plus; P=(-2,1) d=-2 minus
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let faces = infinity_faces(&f).unwrap();
        assert_eq!(faces.len(), 2);
        let minus = &faces[0];
        let plus = &faces[1];
        assert_eq!((minus.covector.p, minus.covector.q), (-2, 1));
        assert_eq!(minus.d, -2);
        assert_eq!(minus.cls, FaceClass::Minus);
        assert_eq!((plus.covector.p, plus.covector.q), (2, -1));
        assert_eq!(plus.d, 2);
        assert_eq!(plus.cls, FaceClass::Plus);
        // both profiles are 1 + t
        assert_eq!(plus.phi, UniPoly::from_i64(&[1, 1]));
        assert_eq!(plus.ell, 1);
    }

    #[test]
    fn faces_of_example2() {
        let faces = infinity_faces(&example2()).unwrap();
        let data: Vec<((i64, i64), FaceClass)> = faces
            .iter()
            .map(|f| ((f.covector.p, f.covector.q), f.cls))
            .collect();
        assert_eq!(
            data,
            vec![
                ((-4, 3), FaceClass::Minus),
                ((1, -1), FaceClass::Zero),
                ((2, -1), FaceClass::Plus),
            ]
        );
        // convenient polynomial: all classes minus
        let f = xy(&[(2, 0, 1), (0, 2, 1)]);
        for face in infinity_faces(&f).unwrap() {
            assert_eq!(face.cls, FaceClass::Minus);
        }
    }

    #[test]
    fn face_functions() {
        // f = x + x^2 y^2, P=(2,-1): whole f
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let p = PrimitiveCovector::new(2, -1).unwrap();
        assert_eq!(face_function(&f, p).unwrap(), f);
        // Example 2, P=(1,-1): the three diagonal terms
        let ff = face_function(&example2(), PrimitiveCovector::new(1, -1).unwrap()).unwrap();
        assert_eq!(ff.num_terms(), 3);
        assert_eq!(ff.coeff(2, 2), rat_frac(1, 2));
        assert_eq!(ff.coeff(3, 3), rat_frac(4, 3));
        assert_eq!(ff.coeff(4, 4), rat_frac(1, 4));
        // f = x + y, P=(0,-1): y
        let f = xy(&[(1, 0, 1), (0, 1, 1)]);
        let ff = face_function(&f, PrimitiveCovector::new(0, -1).unwrap()).unwrap();
        assert_eq!(ff, xy(&[(0, 1, 1)]));
    }

    #[test]
    fn bad_face_polynomial() {
        // Example 2 (m=2, a=2): b(t) = 1/2 t^2 + 4/3 t^3 + 1/4 t^4
        let faces = infinity_faces(&example2()).unwrap();
        let bad = faces.iter().find(|f| f.cls == FaceClass::Zero).unwrap();
        let b = bad_face_b(bad).unwrap();
        let expect = UniPoly::from_coeffs(vec![
            rat(0),
            rat(0),
            rat_frac(1, 2),
            rat_frac(4, 3),
            rat_frac(1, 4),
        ]);
        assert_eq!(b, expect);
        // f = xy + x^2 y^2, P=(1,-1): b = t + t^2
        let f = xy(&[(1, 1, 1), (2, 2, 1)]);
        let faces = infinity_faces(&f).unwrap();
        let bad = faces.iter().find(|f| f.cls == FaceClass::Zero).unwrap();
        assert_eq!(bad_face_b(bad).unwrap(), UniPoly::from_i64(&[0, 1, 1]));
        // monomial: no 1-dimensional face at all
        let f = xy(&[(2, 2, 1)]);
        assert!(infinity_faces(&f).unwrap().is_empty());
    }

    #[test]
    fn laurent_profile_identity() {
        // f_P(x,y) = x^{m0} y^{n0} phi(x^{Dx} y^{Dy}) at random nonzero
        // rational points, for every face of a few polynomials.
        let polys = [
            example2(),
            xy(&[(1, 0, 1), (2, 2, 1)]),
            xy(&[(0, 3, 2), (1, 1, -5), (3, 0, 1), (2, 2, 7)]),
        ];
        let samples = [
            (rat_frac(3, 2), rat_frac(-5, 7)),
            (rat_frac(-1, 3), rat_frac(2, 5)),
            (rat(2), rat(-3)),
        ];
        for f in &polys {
            for face in infinity_faces(f).unwrap() {
                let fp = face_function(f, face.covector).unwrap();
                for (x, y) in &samples {
                    let t = crate::bivar::BiPoly::monomial(face.dir.0, face.dir.1, rat(1))
                        .eval(x, y);
                    let lhs = fp.eval(x, y);
                    let mono = crate::bivar::BiPoly::monomial(face.base.0, face.base.1, rat(1))
                        .eval(x, y);
                    let rhs = mono * face.phi.eval(&t);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
