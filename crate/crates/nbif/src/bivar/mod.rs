//! Bivariate and Laurent-bivariate polynomial arithmetic: partial
//! derivatives, monomial coordinate substitutions, translations,
//! resultants, and axis factorization.

mod elim;

pub use elim::{content_wrt, gcd_bivar, normalized, resultant_elim, subresultant_coeffs};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactmath::{Rat, UniPoly};
use crate::{Error, Result};

/// Variable selector for bivariate operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

/// Sparse bivariate (possibly Laurent) polynomial over the rationals,
/// keyed by the exponent pair `(m, n)` of `x^m y^n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(i64, i64), Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::monomial(0, 0, Rat::one())
    }

    pub fn var_x() -> Self {
        BiPoly::monomial(1, 0, Rat::one())
    }

    pub fn var_y() -> Self {
        BiPoly::monomial(0, 1, Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    pub fn monomial(m: i64, n: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, n), c);
        }
        BiPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), Rat)>>(iter: I) -> Self {
        let mut f = BiPoly::zero();
        for ((m, n), c) in iter {
            f.add_term(m, n, c);
        }
        f
    }

    pub fn add_term(&mut self, m: i64, n: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((m, n)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(m, n));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&(0, 0)))
    }

    /// All stored exponents are nonnegative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(m, n)| m >= 0 && n >= 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Rat)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, m: i64, n: i64) -> Rat {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn deg(&self, var: Var) -> i64 {
        self.terms
            .keys()
            .map(|&(m, n)| match var {
                Var::X => m,
                Var::Y => n,
            })
            .max()
            .unwrap_or(-1)
    }

    pub fn min_exp(&self, var: Var) -> i64 {
        self.terms
            .keys()
            .map(|&(m, n)| match var {
                Var::X => m,
                Var::Y => n,
            })
            .min()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(|&(m, n)| m + n).max().unwrap_or(-1)
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&k, c)| (k, -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(m, n), c) in &other.terms {
            out.add_term(m, n, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = BiPoly::zero();
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &other.terms {
                out.add_term(m1 + m2, n1 + n2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, dm: i64, dn: i64) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), c)| ((m + dm, n + dn), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = BiPoly::one();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        assert!(self.is_polynomial() || (!x.is_zero() && !y.is_zero()));
        let mut acc = Rat::zero();
        for (&(m, n), c) in &self.terms {
            acc += c * pow_rat(x, m) * pow_rat(y, n);
        }
        acc
    }

    /// Exact formal partial derivative (polynomial role).
    pub fn partial(&self, var: Var) -> Self {
        let mut out = BiPoly::zero();
        for (&(m, n), c) in &self.terms {
            match var {
                Var::X => {
                    if m != 0 {
                        out.add_term(m - 1, n, c * Rat::from(BigInt::from(m)));
                    }
                }
                Var::Y => {
                    if n != 0 {
                        out.add_term(m, n - 1, c * Rat::from(BigInt::from(n)));
                    }
                }
            }
        }
        out
    }

    /// `f(x, y + s)`, expanded exactly.
    pub fn translate_y(&self, s: &Rat) -> Self {
        assert!(self.is_polynomial(), "translate_y requires polynomial role");
        let mut out = BiPoly::zero();
        for (&(m, n), c) in &self.terms {
            // (y+s)^n expanded by binomials
            let mut binom = Rat::one();
            let mut spow = Rat::one();
            for k in (0..=n).rev() {
                // coefficient of y^k: C(n,k) s^(n-k)
                // iterate k from n down: maintain binom = C(n,k), spow = s^(n-k)
                out.add_term(m, k, c * &binom * &spow);
                if k > 0 {
                    binom = binom * Rat::from(BigInt::from(k)) / Rat::from(BigInt::from(n - k + 1));
                    spow *= s;
                }
            }
        }
        out
    }

    /// `f(x + lambda*y, y)`, expanded exactly.
    pub fn shear_x(&self, lambda: &Rat) -> Self {
        assert!(self.is_polynomial(), "shear_x requires polynomial role");
        let mut out = BiPoly::zero();
        for (&(m, n), c) in &self.terms {
            let mut binom = Rat::one();
            let mut lpow = Rat::one();
            for k in (0..=m).rev() {
                // x^m -> sum_k C(m,k) x^k (lambda y)^(m-k)
                out.add_term(k, n + (m - k), c * &binom * &lpow);
                if k > 0 {
                    binom = binom * Rat::from(BigInt::from(k)) / Rat::from(BigInt::from(m - k + 1));
                    lpow *= lambda;
                }
            }
        }
        out
    }

    pub fn swap_xy(&self) -> Self {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(m, n), c)| ((n, m), c.clone()))
                .collect(),
        }
    }

    /// Applies the monomial coordinate change given by `map`.
    pub fn monomial_substitute(&self, map: &MonomialMap) -> Self {
        let mut out = BiPoly::zero();
        for (&(m, n), c) in &self.terms {
            let (a, b) = map.apply(m, n);
            out.add_term(a, b, c.clone());
        }
        out
    }

    /// `f = x^alpha y^beta F` with `x` and `y` not dividing `F`.
    pub fn factor_axes(&self) -> Result<(u32, u32, BiPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        assert!(self.is_polynomial());
        let alpha = self.min_exp(Var::X);
        let beta = self.min_exp(Var::Y);
        Ok((
            alpha as u32,
            beta as u32,
            self.mul_monomial(-alpha, -beta),
        ))
    }

    /// Coefficient vector with respect to one variable; entry `k` is the
    /// coefficient (a univariate polynomial in the other variable) of the
    /// `k`-th power. Requires polynomial role.
    pub fn coeffs_wrt(&self, var: Var) -> Vec<UniPoly> {
        assert!(self.is_polynomial());
        let d = self.deg(var);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![Vec::new(); (d + 1) as usize];
        for (&(m, n), c) in &self.terms {
            let (main, other) = match var {
                Var::X => (m, n),
                Var::Y => (n, m),
            };
            let row = &mut out[main as usize];
            if row.len() <= other as usize {
                row.resize(other as usize + 1, Rat::zero());
            }
            row[other as usize] = c.clone();
        }
        out.into_iter().map(UniPoly::from_coeffs).collect()
    }

    /// Rebuilds from coefficients with respect to `var`.
    pub fn from_coeffs_wrt(var: Var, coeffs: &[UniPoly]) -> Self {
        let mut out = BiPoly::zero();
        for (k, p) in coeffs.iter().enumerate() {
            for (j, c) in p.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (m, n) = match var {
                    Var::X => (k as i64, j as i64),
                    Var::Y => (j as i64, k as i64),
                };
                out.add_term(m, n, c.clone());
            }
        }
        out
    }

    /// View as univariate in `var` when the other variable is absent.
    pub fn to_unipoly(&self, var: Var) -> Option<UniPoly> {
        let other = match var {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        if self.deg(other) > 0 || self.min_exp(other) < 0 || self.min_exp(var) < 0 {
            return None;
        }
        let d = self.deg(var).max(0);
        let mut coeffs = vec![Rat::zero(); (d + 1) as usize];
        for (&(m, n), c) in &self.terms {
            let k = match var {
                Var::X => m,
                Var::Y => n,
            };
            coeffs[k as usize] = c.clone();
        }
        Some(UniPoly::from_coeffs(coeffs))
    }

    pub fn from_unipoly(var: Var, p: &UniPoly) -> Self {
        let mut out = BiPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            match var {
                Var::X => out.add_term(k as i64, 0, c.clone()),
                Var::Y => out.add_term(0, k as i64, c.clone()),
            }
        }
        out
    }

    /// Exact division, panicking if `div` does not divide `self`.
    pub fn exact_div(&self, div: &BiPoly) -> BiPoly {
        assert!(!div.is_zero());
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        // Lex-leading term of the divisor.
        let (&(dm, dn), dc) = div.terms.iter().next_back().unwrap();
        while !rem.is_zero() {
            let (&(rm, rn), rc) = rem.terms.iter().next_back().unwrap();
            let (qm, qn) = (rm - dm, rn - dn);
            let qc = rc / dc;
            let t = BiPoly::monomial(qm, qn, qc);
            quot = quot.add(&t);
            rem = rem.sub(&div.mul(&t));
        }
        quot
    }
}

fn pow_rat(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let p = {
        let mut acc = Rat::one();
        for _ in 0..e.unsigned_abs() {
            acc *= x;
        }
        acc
    };
    if e < 0 {
        Rat::one() / p
    } else {
        p
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(m, n), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if m != 0 {
                write!(f, "*x^{m}")?;
            }
            if n != 0 {
                write!(f, "*y^{n}")?;
            }
        }
        Ok(())
    }
}

/// Unimodular monomial coordinate change `x = u^a v^b, y = u^c v^d` given
/// by the matrix with columns `(a, c)` and `(b, d)` (the two fan rays).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    /// Column vectors: `left = (a, c)`, `right = (b, d)`.
    pub left: (i64, i64),
    pub right: (i64, i64),
}

impl MonomialMap {
    pub fn new(left: (i64, i64), right: (i64, i64)) -> Self {
        MonomialMap { left, right }
    }

    pub fn identity() -> Self {
        MonomialMap {
            left: (1, 0),
            right: (0, 1),
        }
    }

    pub fn det(&self) -> i64 {
        self.left.0 * self.right.1 - self.left.1 * self.right.0
    }

    /// Exponent image: `(m, n) -> (m*a + n*c, m*b + n*d)`.
    pub fn apply(&self, m: i64, n: i64) -> (i64, i64) {
        (
            m * self.left.0 + n * self.left.1,
            m * self.right.0 + n * self.right.1,
        )
    }

    /// Inverse map (requires `det == 1`).
    pub fn inverse(&self) -> Self {
        assert_eq!(self.det(), 1);
        MonomialMap {
            left: (self.right.1, -self.left.1),
            right: (-self.right.0, self.left.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, rat_frac};

    fn xy(pairs: &[(i64, i64, i64)]) -> BiPoly {
        BiPoly::from_terms(pairs.iter().map(|&(m, n, c)| ((m, n), rat(c))))
    }

    #[test]
    fn partials() {
        // d/dx (x^2 y) = 2xy
        assert_eq!(xy(&[(2, 1, 1)]).partial(Var::X), xy(&[(1, 1, 2)]));
        // d/dy (x + x^2 y^2) = 2 x^2 y
        assert_eq!(
            xy(&[(1, 0, 1), (2, 2, 1)]).partial(Var::Y),
            xy(&[(2, 1, 2)])
        );
        // d/dx constant = 0
        assert!(xy(&[(0, 0, 7)]).partial(Var::X).is_zero());
    }

    #[test]
    fn translation() {
        // y^2 at s=1 -> y^2 + 2y + 1
        assert_eq!(
            xy(&[(0, 2, 1)]).translate_y(&rat(1)),
            xy(&[(0, 2, 1), (0, 1, 2), (0, 0, 1)])
        );
        // x + y at s=-2 -> x + y - 2
        assert_eq!(
            xy(&[(1, 0, 1), (0, 1, 1)]).translate_y(&rat(-2)),
            xy(&[(1, 0, 1), (0, 1, 1), (0, 0, -2)])
        );
        // y^3 - 3y + 2 at s=1 -> y^3 + 3y^2 (double root moves to 0)
        assert_eq!(
            xy(&[(0, 3, 1), (0, 1, -3), (0, 0, 2)]).translate_y(&rat(1)),
            xy(&[(0, 3, 1), (0, 2, 3)])
        );
    }

    #[test]
    fn monomial_substitution() {
        // f = xy with x=u, y=uv: -> u^2 v
        let f = xy(&[(1, 1, 1)]);
        let m = MonomialMap::new((1, 1), (0, 1));
        assert_eq!(f.monomial_substitute(&m), xy(&[(2, 1, 1)]));
        // identity
        assert_eq!(f.monomial_substitute(&MonomialMap::identity()), f);
        // f = x(1+xy^2), cone ((-1,0),(2,-1)): u^-2 v^2 + u^-1 v^2
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let m = MonomialMap::new((-1, 0), (2, -1));
        assert_eq!(
            f.monomial_substitute(&m),
            xy(&[(-1, 2, 1), (-2, 2, 1)])
        );
        // roundtrip under the inverse for unimodular maps
        let back = f.monomial_substitute(&m).monomial_substitute(&m.inverse());
        assert_eq!(back, f);
    }

    #[test]
    fn axes_factorization() {
        // x^2 y (1+x) -> (2, 1, 1+x)
        let f = xy(&[(2, 1, 1), (3, 1, 1)]);
        let (a, b, rest) = f.factor_axes().unwrap();
        assert_eq!((a, b), (2, 1));
        assert_eq!(rest, xy(&[(0, 0, 1), (1, 0, 1)]));
        // x + y -> (0,0,..)
        let f = xy(&[(1, 0, 1), (0, 1, 1)]);
        let (a, b, rest) = f.factor_axes().unwrap();
        assert_eq!((a, b), (0, 0));
        assert_eq!(rest, f);
        // x(1+x y^2) -> (1, 0, 1+x y^2)
        let f = xy(&[(1, 0, 1), (2, 2, 1)]);
        let (a, b, rest) = f.factor_axes().unwrap();
        assert_eq!((a, b), (1, 0));
        assert_eq!(rest, xy(&[(0, 0, 1), (1, 2, 1)]));
        assert!(BiPoly::zero().factor_axes().is_err());
    }

    #[test]
    fn shear_and_eval() {
        let f = xy(&[(2, 0, 1), (0, 1, 3)]); // x^2 + 3y
        let g = f.shear_x(&rat(2)); // (x+2y)^2 + 3y
        let (x0, y0) = (rat_frac(1, 3), rat(-2));
        let lhs = g.eval(&x0, &y0);
        let rhs = f.eval(&(&x0 + rat(2) * &y0), &y0);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn exact_division() {
        let f = xy(&[(1, 0, 1), (0, 1, 1)]); // x+y
        let g = xy(&[(1, 1, 2), (2, 0, 5)]); // 2xy + 5x^2
        let prod = f.mul(&g);
        assert_eq!(prod.exact_div(&f), g);
        assert_eq!(prod.exact_div(&g), f);
    }
}
