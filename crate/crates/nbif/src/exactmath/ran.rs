use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{simplest_in_interval, to_decimal_string, Rat};
use super::sturm::{isolate_real_roots_raw, SturmChain};
use super::unipoly::{interpolate, sylvester_det_formal, UniPoly};
use crate::{Error, Result};

/// Closed rational interval used for certified enclosure arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn point(r: Rat) -> Self {
        RatInterval { lo: r.clone(), hi: r }
    }

    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi);
        RatInterval { lo, hi }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from(BigInt::from(2))
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, other: &Self) -> Self {
        RatInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let mut lo = cands[0].clone();
        let mut hi = cands[0].clone();
        for c in &cands[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        RatInterval::new(lo, hi)
    }

    /// Interval division; the divisor must not contain zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.contains_zero());
        let inv = RatInterval::new(Rat::one() / &other.hi, Rat::one() / &other.lo);
        self.mul(&inv)
    }

    /// Conservative Horner evaluation of `p` over the interval.
    pub fn eval_poly(&self, p: &UniPoly) -> Self {
        let mut acc = RatInterval::point(Rat::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&RatInterval::point(c.clone()));
        }
        acc
    }
}

/// Real algebraic number: a square-free primitive integer polynomial
/// together with an isolating rational interval.
///
/// The interval is either a degenerate point (a rational number) or an open
/// interval whose endpoints are not roots of the polynomial and which
/// contains exactly one real root.
#[derive(Clone)]
pub struct Ran {
    minpoly: UniPoly,
    lo: Rat,
    hi: Rat,
}

impl Ran {
    pub fn from_rational(r: &Rat) -> Self {
        let minpoly = UniPoly::from_coeffs(vec![-r.clone(), Rat::one()]).integer_primitive();
        Ran {
            minpoly,
            lo: r.clone(),
            hi: r.clone(),
        }
    }

    pub fn zero() -> Self {
        Ran::from_rational(&Rat::zero())
    }

    /// All distinct real roots of `p`, ascending.
    pub fn roots_of(p: &UniPoly) -> Result<Vec<Ran>> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sf = p.squarefree_part();
        let intervals = isolate_real_roots_raw(&sf)?;
        Ok(intervals
            .into_iter()
            .map(|(lo, hi)| {
                if lo == hi {
                    Ran::from_rational(&lo)
                } else {
                    Ran {
                        minpoly: sf.clone(),
                        lo,
                        hi,
                    }
                }
            })
            .collect())
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    fn sign_at(&self, x: &Rat) -> i8 {
        let v = self.minpoly.eval(x);
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    }

    /// One bisection step; collapses to a point when the midpoint is the
    /// root.
    pub fn refine(&mut self) {
        if self.is_point() {
            return;
        }
        let mid = (&self.lo + &self.hi) / Rat::from(BigInt::from(2));
        match self.sign_at(&mid) {
            0 => {
                self.lo = mid.clone();
                self.hi = mid;
            }
            s => {
                if s == self.sign_at(&self.lo) {
                    self.lo = mid;
                } else {
                    self.hi = mid;
                }
            }
        }
    }

    pub fn refine_below(&mut self, w: &Rat) {
        while !self.is_point() && &self.width() >= w {
            self.refine();
        }
    }

    /// Sign of the represented number.
    pub fn sign(&self) -> i8 {
        if self.is_point() {
            return if self.lo.is_zero() {
                0
            } else if self.lo.is_negative() {
                -1
            } else {
                1
            };
        }
        if self.sign_at(&Rat::zero()) == 0 && self.lo.is_negative() && self.hi.is_positive() {
            // The unique root in the interval is 0 itself.
            return 0;
        }
        let mut me = self.clone();
        loop {
            if !me.lo.is_negative() {
                return 1;
            }
            if !me.hi.is_positive() {
                return -1;
            }
            me.refine();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == 0
    }

    /// Exact test `p(alpha) == 0` for rational-coefficient `p`.
    pub fn is_root_of(&self, p: &UniPoly) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_point() {
            return p.eval(&self.lo).is_zero();
        }
        let (_, r) = p.divrem(&self.minpoly);
        if r.is_zero() {
            return true;
        }
        if r.is_constant() {
            return false;
        }
        let g = self.minpoly.gcd(&r);
        if g.degree() <= 0 {
            return false;
        }
        let chain = SturmChain::new(&g);
        if chain.is_root(&self.lo) || chain.is_root(&self.hi) {
            // Cannot happen: endpoints are non-roots of minpoly and g
            // divides minpoly.
            unreachable!("isolating endpoints must not be roots of gcd");
        }
        chain.count_half_open(&self.lo, &self.hi) == 1
    }

    /// Negation `-alpha`.
    pub fn neg(&self) -> Ran {
        Ran {
            minpoly: self.minpoly.negate_arg().integer_primitive(),
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    /// `alpha + q` for rational `q`.
    pub fn shift_rational(&self, q: &Rat) -> Ran {
        Ran {
            minpoly: self.minpoly.translate(&-q.clone()).integer_primitive(),
            lo: &self.lo + q,
            hi: &self.hi + q,
        }
    }

    /// `lambda * alpha` for rational `lambda != 0`.
    pub fn scale_rational(&self, lambda: &Rat) -> Ran {
        assert!(!lambda.is_zero());
        let inv = Rat::one() / lambda;
        let minpoly = self.minpoly.scale_arg(&inv).integer_primitive();
        let (a, b) = (&self.lo * lambda, &self.hi * lambda);
        let (lo, hi) = if lambda.is_positive() { (a, b) } else { (b, a) };
        Ran { minpoly, lo, hi }
    }

    /// `1/alpha` for `alpha != 0`.
    pub fn inverse(&self) -> Ran {
        assert!(self.sign() != 0, "inverse of zero");
        if self.is_point() {
            return Ran::from_rational(&(Rat::one() / &self.lo));
        }
        let mut me = self.clone();
        while me.interval().contains_zero() {
            me.refine();
            if me.is_point() {
                return Ran::from_rational(&(Rat::one() / &me.lo));
            }
        }
        let minpoly = me.minpoly.reverse().integer_primitive();
        let lo = Rat::one() / &me.hi;
        let hi = Rat::one() / &me.lo;
        debug_assert!(lo < hi);
        Ran { minpoly, lo, hi }
    }

    /// Midpoint approximation after refining the interval below `width`.
    pub fn approx(&self, width: &Rat) -> Rat {
        let mut me = self.clone();
        me.refine_below(width);
        me.interval().mid()
    }

    /// Decimal approximation with `sig` significant digits, refined to at
    /// least `min_width`.
    pub fn approx_decimal(&self, sig: usize, min_width: &Rat) -> String {
        let mut me = self.clone();
        me.refine_below(min_width);
        if me.is_point() {
            return to_decimal_string(&me.lo, sig.max(20));
        }
        // Refine further until the interval pins `sig` significant digits
        // of a nonzero value, or we learn the magnitude is tiny.
        let mut guard = 0;
        loop {
            let w = me.width();
            let scale = me.lo.abs().min(me.hi.abs());
            if me.interval().contains_zero() {
                if guard > 4096 {
                    return to_decimal_string(&me.interval().mid(), sig);
                }
            } else if w * Rat::from(BigInt::from(10).pow(sig as u32 + 2)) < scale {
                return to_decimal_string(&me.interval().mid(), sig);
            }
            me.refine();
            guard += 1;
            if guard > 8192 {
                return to_decimal_string(&me.interval().mid(), sig);
            }
        }
    }

    /// Exact rational value, when the number is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.is_point() {
            return Some(self.lo.clone());
        }
        if self.minpoly.degree() == 1 {
            let c0 = self.minpoly.coeff(0);
            let c1 = self.minpoly.coeff(1);
            return Some(-c0 / c1);
        }
        // A rational root a/b in lowest terms has b | lc. If the interval
        // width is below 1/lc^2, the simplest rational inside is the root
        // whenever the root is rational.
        let lc = self.minpoly.leading().abs();
        let target = Rat::one() / (&lc * &lc * Rat::from(BigInt::from(2)));
        let mut me = self.clone();
        me.refine_below(&target);
        if me.is_point() {
            return Some(me.lo);
        }
        let cand = simplest_in_interval(&me.lo, &me.hi);
        if me.minpoly.eval(&cand).is_zero() {
            Some(cand)
        } else {
            None
        }
    }

    /// Exact value `num(alpha) / den(alpha)`; `den(alpha)` must be nonzero.
    pub fn image_rat(num: &UniPoly, den: &UniPoly, alpha: &Ran) -> Ran {
        assert!(!den.is_zero());
        if alpha.is_point() {
            let d = den.eval(&alpha.lo);
            assert!(!d.is_zero(), "denominator vanishes at the point");
            return Ran::from_rational(&(num.eval(&alpha.lo) / d));
        }
        let m = &alpha.minpoly;
        let (_, mut n_red) = num.divrem(m);
        let (_, mut d_red) = den.divrem(m);
        debug_assert!(!alpha.is_root_of(&d_red), "denominator vanishes at alpha");
        // Strip factors of m dividing both reduced parts so the resultant
        // below cannot vanish identically.
        let mut m_red = m.clone();
        let common = n_red.gcd(&d_red);
        if common.degree() > 0 {
            let g = m_red.gcd(&common);
            if g.degree() > 0 {
                m_red = m_red.exact_div(&g).integer_primitive();
                let (_, nn) = n_red.divrem(&m_red);
                let (_, dd) = d_red.divrem(&m_red);
                n_red = nn;
                d_red = dd;
            }
        }
        if n_red.is_zero() {
            return Ran::zero();
        }

        // Candidate polynomial for the value: R(c) = res_t(m_red, c*d - n).
        let dm = m_red.degree() as usize;
        let dmax = d_red.degree().max(n_red.degree()).max(0) as usize;
        let mcoeffs = m_red.coeffs().to_vec();
        let mut samples = Vec::with_capacity(dm + 1);
        for k in 0..=dm {
            let c = Rat::from(BigInt::from(k as i64));
            let mut row = Vec::with_capacity(dmax + 1);
            for j in 0..=dmax {
                row.push(&c * d_red.coeff(j) - n_red.coeff(j));
            }
            let det = sylvester_det_formal(&mcoeffs, &row);
            samples.push((c, det));
        }
        let rc = interpolate(&samples);
        assert!(!rc.is_zero(), "value eliminant vanished identically");
        let rsf = rc.squarefree_part();
        let chain = SturmChain::new(&rsf);

        let mut a = alpha.clone();
        loop {
            let iv = a.interval();
            let div = iv.eval_poly(&d_red);
            if div.contains_zero() {
                a.refine();
                if a.is_point() {
                    let d = d_red.eval(&a.lo);
                    return Ran::from_rational(&(n_red.eval(&a.lo) / d));
                }
                continue;
            }
            let val = iv.eval_poly(&n_red).div(&div);
            let step = {
                let w = val.width();
                if w.is_zero() {
                    Rat::one() / Rat::from(BigInt::from(1024))
                } else {
                    w / Rat::from(BigInt::from(1024))
                }
            };
            let mut lo = val.lo.clone();
            let mut hi = val.hi.clone();
            while chain.is_root(&lo) {
                lo -= &step;
            }
            while chain.is_root(&hi) {
                hi += &step;
            }
            if chain.count_half_open(&lo, &hi) == 1 {
                // The unique root in (lo, hi) is the value itself.
                if let Some(r) = (Ran {
                    minpoly: rsf.clone(),
                    lo: lo.clone(),
                    hi: hi.clone(),
                })
                .rational_if_linear()
                {
                    return r;
                }
                return Ran {
                    minpoly: rsf,
                    lo,
                    hi,
                };
            }
            a.refine();
            if a.is_point() {
                let d = d_red.eval(&a.lo);
                return Ran::from_rational(&(n_red.eval(&a.lo) / d));
            }
        }
    }

    fn rational_if_linear(&self) -> Option<Ran> {
        if self.minpoly.degree() == 1 {
            let r = -self.minpoly.coeff(0) / self.minpoly.coeff(1);
            Some(Ran::from_rational(&r))
        } else {
            None
        }
    }

    fn eq_algebraic(&self, other: &Ran) -> bool {
        if self.is_point() && other.is_point() {
            return self.lo == other.lo;
        }
        if self.is_point() {
            return other.is_root_of(&self.minpoly) && other.interval_could_contain(&self.lo);
        }
        if other.is_point() {
            return self.is_root_of(&other.minpoly) && self.interval_could_contain(&other.lo);
        }
        // Quick separation test.
        if self.hi <= other.lo || other.hi <= self.lo {
            // Intervals touch at most at a non-root endpoint.
            return false;
        }
        let g = self.minpoly.gcd(&other.minpoly);
        if g.degree() <= 0 {
            return false;
        }
        if !self.is_root_of(&g) || !other.is_root_of(&g) {
            return false;
        }
        let roots = match Ran::roots_of(&g) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi <= b.lo || b.hi <= a.lo {
                return false;
            }
            for r in &roots {
                if a.inside(r) && b.inside(r) {
                    return true;
                }
            }
            a.refine();
            b.refine();
        }
    }

    // Whether self's interval is contained in r's isolating interval.
    fn inside(&self, r: &Ran) -> bool {
        if r.is_point() {
            self.lo == r.lo && self.hi == r.hi
        } else {
            r.lo <= self.lo && self.hi <= r.hi
        }
    }

    // Point membership allowing for the point being exactly the root.
    fn interval_could_contain(&self, x: &Rat) -> bool {
        if self.is_point() {
            return &self.lo == x;
        }
        &self.lo < x && x < &self.hi
    }

    pub fn cmp_exact(&self, other: &Ran) -> Ordering {
        if self.eq_algebraic(other) {
            return Ordering::Equal;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo || (a.hi == b.lo && (!a.is_point() || !b.is_point())) {
                return Ordering::Less;
            }
            if b.hi < a.lo || (b.hi == a.lo && (!a.is_point() || !b.is_point())) {
                return Ordering::Greater;
            }
            a.refine();
            b.refine();
        }
    }
}

impl PartialEq for Ran {
    fn eq(&self, other: &Self) -> bool {
        self.eq_algebraic(other)
    }
}

impl Eq for Ran {}

impl PartialOrd for Ran {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for Ran {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Debug for Ran {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let approx = self.approx_decimal(8, &Rat::new(BigInt::one(), BigInt::from(1u64 << 40)));
        write!(
            f,
            "Ran({:?}; ({}, {}); ~{})",
            self.minpoly, self.lo, self.hi, approx
        )
    }
}
