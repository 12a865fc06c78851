use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use crate::{Error, Result};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[k]` is the coefficient of `t^k`; the leading coefficient is
/// nonzero unless the polynomial is zero (empty coefficient vector). The
/// degree of the zero polynomial is `-1`.
#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rat::one())
    }

    pub fn var() -> Self {
        UniPoly::from_coeffs(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        UniPoly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rat, deg: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Rat::from(BigInt::from(c))).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rat::from(BigInt::from(k)))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Multiplies by `t^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly { coeffs }
    }

    /// Exact division by `t^k`; panics if a lower coefficient is nonzero.
    pub fn shift_down(&self, k: usize) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        assert!(self.coeffs[..k.min(self.coeffs.len())].iter().all(Zero::is_zero));
        UniPoly::from_coeffs(self.coeffs[k..].to_vec())
    }

    /// Order of vanishing at 0.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// `p(t + q)`, computed by synthetic (Horner) translation.
    pub fn translate(&self, q: &Rat) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            // acc = acc * (t + q) + c
            let shifted = acc.shift_up(1) + acc.scale(q);
            acc = shifted + UniPoly::constant(c.clone());
        }
        acc
    }

    /// `p(c t)`.
    pub fn scale_arg(&self, c: &Rat) -> Self {
        let mut pw = Rat::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &pw;
                pw *= c;
                out
            })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// `p(-t)`.
    pub fn negate_arg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| if k % 2 == 1 { -a.clone() } else { a.clone() })
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// Reversed coefficients `t^deg * p(1/t)`.
    pub fn reverse(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        UniPoly::from_coeffs(coeffs)
    }

    /// `p(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> Self {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dlead = div.leading();
        let dd = div.degree();
        let mut rem = self.clone();
        let mut q = vec![Rat::zero(); (self.degree() - dd + 1).max(0) as usize];
        while !rem.is_zero() && rem.degree() >= dd {
            let k = (rem.degree() - dd) as usize;
            let c = rem.leading() / &dlead;
            q[k] = c.clone();
            rem = &rem - &div.scale(&c).shift_up(k);
        }
        (UniPoly::from_coeffs(q), rem)
    }

    /// Exact division; panics if the remainder is nonzero.
    pub fn exact_div(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let inv = Rat::one() / self.leading();
        self.scale(&inv)
    }

    /// Greatest common divisor, normalized to an integer-primitive
    /// polynomial with positive leading coefficient (1 for coprime inputs).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            UniPoly::zero()
        } else {
            a.integer_primitive()
        }
    }

    /// Scales to integer coefficients with content 1 and positive leading
    /// coefficient.
    pub fn integer_primitive(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = num_integer::gcd(g, c.clone());
        }
        if self.leading().is_negative() {
            g = -g;
        }
        UniPoly::from_coeffs(ints.iter().map(|c| Rat::from(c / &g)).collect())
    }

    /// Integer coefficient vector of the integer-primitive normalization.
    pub fn primitive_int_coeffs(&self) -> Vec<BigInt> {
        self.integer_primitive()
            .coeffs
            .iter()
            .map(|c| c.numer().clone())
            .collect()
    }

    /// `p / gcd(p, p')`: same distinct roots, all simple.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree() <= 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.integer_primitive()
        } else {
            self.exact_div(&g).integer_primitive()
        }
    }

    /// Yun's square-free decomposition with monic factors and strictly
    /// increasing multiplicities: `p = leading * prod f_i^m_i`.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        if self.degree() == 0 {
            return Ok(out);
        }
        let f = self.monic();
        let df = f.derivative();
        let g = f.gcd(&df).monic();
        if g.degree() == 0 {
            out.push((f, 1));
            return Ok(out);
        }
        let mut c = f.exact_div(&g);
        let mut d = &df.exact_div(&g) - &c.derivative();
        let mut i = 1usize;
        while c.degree() > 0 {
            let a = c.gcd(&d).monic();
            if a.degree() > 0 {
                out.push((a.clone(), i));
            }
            c = c.exact_div(&a);
            d = &d.exact_div(&a) - &c.derivative();
            i += 1;
        }
        Ok(out)
    }

    /// Cauchy root bound: every real root lies in `(-B, B)`.
    pub fn root_bound(&self) -> Rat {
        assert!(!self.is_zero());
        let lead = self.leading().abs();
        let mut m = Rat::zero();
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let q = c.abs() / &lead;
            if q > m {
                m = q;
            }
        }
        m + Rat::one()
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) + rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: UniPoly) -> UniPoly {
        &self + &rhs
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: UniPoly) -> UniPoly {
        &self - &rhs
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: UniPoly) -> UniPoly {
        &self * &rhs
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

/// Determinant of the formal Sylvester matrix of `a` (formal degree
/// `a.len()-1`) and `b` (formal degree `b.len()-1`), by fraction-free
/// Bareiss elimination over the integers after clearing denominators.
///
/// Leading entries of `a` or `b` may be zero; the matrix shape is fixed by
/// the slice lengths, so the result is the determinant polynomial evaluated
/// at these coefficients (which is what interpolation over parametric
/// coefficients requires).
pub fn sylvester_det_formal(a: &[Rat], b: &[Rat]) -> Rat {
    let m = a.len() - 1;
    let n = b.len() - 1;
    if m == 0 && n == 0 {
        return Rat::one();
    }
    let size = m + n;
    // Row scale: clear denominators row-wise, tracking the factor.
    let mut mat: Vec<Vec<BigInt>> = Vec::with_capacity(size);
    let mut scale = Rat::one();
    let push_row = |poly: &[Rat], shift: usize, scale: &mut Rat| {
        let mut den = BigInt::one();
        for c in poly {
            den = num_integer::lcm(den, c.denom().clone());
        }
        let mut row = vec![BigInt::zero(); size];
        for (k, c) in poly.iter().enumerate() {
            // coefficient of degree (len-1-k) placed at column shift + k
            row[shift + k] = c.numer() * (&den / c.denom());
        }
        *scale *= Rat::new(BigInt::one(), den);
        row
    };
    for i in 0..n {
        let rev: Vec<Rat> = a.iter().rev().cloned().collect();
        let row = push_row(&rev, i, &mut scale);
        mat.push(row);
    }
    for i in 0..m {
        let rev: Vec<Rat> = b.iter().rev().cloned().collect();
        let row = push_row(&rev, i, &mut scale);
        mat.push(row);
    }
    let det = bareiss_det(&mut mat);
    scale * Rat::from(det)
}

/// Fraction-free Bareiss determinant of an integer matrix (consumed).
fn bareiss_det(mat: &mut [Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !mat[i][k].is_zero()) else {
                return BigInt::zero();
            };
            mat.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                mat[i][j] = num / &prev;
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

/// Newton-form interpolation through exact sample points with distinct
/// nodes.
pub fn interpolate(points: &[(Rat, Rat)]) -> UniPoly {
    let n = points.len();
    assert!(n > 0);
    // Divided differences.
    let mut dd: Vec<Rat> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut acc = UniPoly::zero();
    for i in (0..n).rev() {
        let lin = UniPoly::from_coeffs(vec![-points[i].0.clone(), Rat::one()]);
        acc = if i == n - 1 {
            UniPoly::constant(dd[i].clone())
        } else {
            &(&acc * &lin) + &UniPoly::constant(dd[i].clone())
        };
    }
    acc
}
