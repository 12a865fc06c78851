use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

use super::rat::Rat;
use super::unipoly::UniPoly;
use crate::{Error, Result};

/// Root-counting filter for [`count_real_roots`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootCountMode {
    All,
    NonZero,
    /// Open interval `(a, b)`.
    InInterval(Rat, Rat),
}

/// Sturm chain of the square-free part of a polynomial, with integer
/// coefficients so sign evaluations stay in `BigInt` arithmetic.
pub struct SturmChain {
    // chain[0] is the square-free part, chain[1] its derivative, then
    // negated remainders; ascending coefficient order.
    chain: Vec<Vec<BigInt>>,
}

fn int_content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        g = num_integer::gcd(g, c.clone());
        if g.is_one() {
            break;
        }
    }
    g
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

// Pseudo-remainder of a by b over Z, normalized so that the result equals
// the true remainder of a/b times a positive rational factor.
fn pseudo_rem_signed(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lc = b[db].clone();
    let mut r: Vec<BigInt> = a.to_vec();
    let mut mult_sign = 1i32;
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        if lead.is_zero() {
            r.pop();
            continue;
        }
        // r := lc * r - lead * t^(dr-db) * b
        for c in r.iter_mut() {
            *c *= &lc;
        }
        if lc.sign() == Sign::Minus {
            mult_sign = -mult_sign;
        }
        let shift = dr - db;
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] -= &lead * bc;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    if mult_sign < 0 {
        for c in r.iter_mut() {
            *c = -c.clone();
        }
    }
    r
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Self {
        assert!(!p.is_zero());
        let sf = p.squarefree_part();
        let p0 = sf.primitive_int_coeffs();
        if p0.len() <= 1 {
            return SturmChain { chain: vec![p0] };
        }
        let mut chain = Vec::new();
        let d0: Vec<BigInt> = p0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        chain.push(p0);
        chain.push(trim(d0));
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() || chain[n - 1].len() == 1 {
                break;
            }
            let mut r = pseudo_rem_signed(&chain[n - 2], &chain[n - 1]);
            if r.is_empty() {
                break;
            }
            let g = int_content(&r);
            for c in r.iter_mut() {
                *c = -(&*c / &g);
            }
            chain.push(r);
        }
        SturmChain { chain }
    }

    /// The square-free part underlying the chain.
    pub fn squarefree(&self) -> UniPoly {
        UniPoly::from_coeffs(self.chain[0].iter().map(|c| Rat::from(c.clone())).collect())
    }

    fn sign_of_poly_at(poly: &[BigInt], x: &Rat) -> i8 {
        if poly.is_empty() {
            return 0;
        }
        let a = x.numer();
        let b = x.denom();
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        for c in poly.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        match acc.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn sign_at(&self, x: &Rat) -> i8 {
        Self::sign_of_poly_at(&self.chain[0], x)
    }

    pub fn is_root(&self, x: &Rat) -> bool {
        self.sign_at(x) == 0
    }

    fn variations<F: Fn(&[BigInt]) -> i8>(&self, sign: F) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for poly in &self.chain {
            let s = sign(poly);
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: &Rat) -> usize {
        self.variations(|p| Self::sign_of_poly_at(p, x))
    }

    fn variations_pos_inf(&self) -> usize {
        self.variations(|p| match p.last() {
            None => 0,
            Some(c) => match c.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        })
    }

    fn variations_neg_inf(&self) -> usize {
        self.variations(|p| match p.last() {
            None => 0,
            Some(c) => {
                let s: i8 = match c.sign() {
                    Sign::Minus => -1,
                    Sign::NoSign => 0,
                    Sign::Plus => 1,
                };
                if (p.len() - 1) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        })
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        if self.chain[0].len() <= 1 {
            return 0;
        }
        self.variations_neg_inf() - self.variations_pos_inf()
    }

    /// Number of distinct real roots in `(a, b]`; `a` and `b` must not be
    /// roots (so this equals the open-interval count).
    pub fn count_half_open(&self, a: &Rat, b: &Rat) -> usize {
        assert!(a <= b);
        if self.chain[0].len() <= 1 || a == b {
            return 0;
        }
        debug_assert!(!self.is_root(a) && !self.is_root(b), "root endpoint");
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Exact count of distinct real roots under a filter.
pub fn count_real_roots(p: &UniPoly, mode: RootCountMode) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(0);
    }
    let chain = SturmChain::new(p);
    match mode {
        RootCountMode::All => Ok(chain.count_all()),
        RootCountMode::NonZero => {
            let at_zero = usize::from(chain.is_root(&Rat::zero()));
            Ok(chain.count_all() - at_zero)
        }
        RootCountMode::InInterval(a, b) => {
            if a >= b {
                return Ok(0);
            }
            if !chain.is_root(&a) && !chain.is_root(&b) {
                return Ok(chain.count_half_open(&a, &b));
            }
            // Fall back to isolation when an endpoint is a root.
            let roots = isolate_with_chain(&chain);
            let mut n = 0;
            for (lo, hi) in roots {
                if lo == hi {
                    if lo > a && lo < b {
                        n += 1;
                    }
                } else {
                    // Unique root in (lo, hi); refine until decidable.
                    let (mut lo, mut hi) = (lo, hi);
                    loop {
                        if lo >= a && hi <= b {
                            n += 1;
                            break;
                        }
                        if hi <= a || lo >= b {
                            break;
                        }
                        // Endpoint values a or b may be roots; test directly.
                        if chain.is_root(&a) && a > lo && a < hi {
                            break; // the root is exactly a, outside (a,b)
                        }
                        if chain.is_root(&b) && b > lo && b < hi {
                            break; // the root is exactly b
                        }
                        let mid = (&lo + &hi) / Rat::from(BigInt::from(2));
                        if chain.is_root(&mid) {
                            if mid > a && mid < b {
                                n += 1;
                            }
                            break;
                        }
                        if chain.sign_at(&lo) != chain.sign_at(&mid) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                }
            }
            Ok(n)
        }
    }
}

/// Isolating intervals for the distinct real roots, ascending; point roots
/// are returned as degenerate `[r, r]` intervals, open intervals otherwise,
/// with endpoints that are not roots.
pub fn isolate_real_roots_raw(p: &UniPoly) -> Result<Vec<(Rat, Rat)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let chain = SturmChain::new(p);
    Ok(isolate_with_chain(&chain))
}

fn isolate_with_chain(chain: &SturmChain) -> Vec<(Rat, Rat)> {
    let sf = chain.squarefree();
    if sf.degree() <= 0 {
        return Vec::new();
    }
    let bound = sf.root_bound();
    let mut out = Vec::new();
    let lo = -bound.clone();
    let hi = bound;
    debug_assert!(!chain.is_root(&lo) && !chain.is_root(&hi));
    bisect(chain, &lo, &hi, chain.count_half_open(&lo, &hi), &mut out);
    out
}

fn bisect(chain: &SturmChain, lo: &Rat, hi: &Rat, count: usize, out: &mut Vec<(Rat, Rat)>) {
    if count == 0 {
        return;
    }
    if count == 1 {
        out.push((lo.clone(), hi.clone()));
        return;
    }
    let two = Rat::from(BigInt::from(2));
    let mid = (lo + hi) / &two;
    if chain.is_root(&mid) {
        // Exact root at the midpoint: carve out a root-free collar.
        let mut w = (hi - lo) / Rat::from(BigInt::from(4));
        loop {
            let a = &mid - &w;
            let b = &mid + &w;
            if !chain.is_root(&a)
                && !chain.is_root(&b)
                && chain.count_half_open(&a, &b) == 1
            {
                let left = chain.count_half_open(lo, &a);
                let right = chain.count_half_open(&b, hi);
                bisect(chain, lo, &a, left, out);
                out.push((mid.clone(), mid.clone()));
                bisect(chain, &b, hi, right, out);
                return;
            }
            w /= &two;
        }
    }
    let left = chain.count_half_open(lo, &mid);
    bisect(chain, lo, &mid, left, out);
    bisect(chain, &mid, hi, count - left, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{rat, rat_frac};

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_i64(coeffs)
    }

    #[test]
    fn count_modes() {
        // t^2 - 2 -> 2 real roots
        assert_eq!(count_real_roots(&p(&[-2, 0, 1]), RootCountMode::All).unwrap(), 2);
        // t^2 + 1 -> none
        assert_eq!(count_real_roots(&p(&[1, 0, 1]), RootCountMode::All).unwrap(), 0);
        // t(t^2+4t+1): roots 0, -2±sqrt3 -> nonzero count 2
        let f = &p(&[0, 1]) * &p(&[1, 4, 1]);
        assert_eq!(count_real_roots(&f, RootCountMode::NonZero).unwrap(), 2);
        assert_eq!(count_real_roots(&f, RootCountMode::All).unwrap(), 3);
        // distinct-root semantics: (t-1)^2 counts once
        assert_eq!(count_real_roots(&p(&[1, -2, 1]), RootCountMode::All).unwrap(), 1);
        assert!(count_real_roots(&UniPoly::zero(), RootCountMode::All).is_err());
    }

    #[test]
    fn count_in_interval() {
        let f = p(&[-2, 0, 1]); // roots ±sqrt2
        let m = RootCountMode::InInterval(rat(0), rat(2));
        assert_eq!(count_real_roots(&f, m).unwrap(), 1);
        let m = RootCountMode::InInterval(rat(-2), rat(2));
        assert_eq!(count_real_roots(&f, m).unwrap(), 2);
        // Root endpoints are excluded (open interval), even when rational.
        let g = p(&[0, -1, 1]); // t(t-1)
        let m = RootCountMode::InInterval(rat(0), rat(1));
        assert_eq!(count_real_roots(&g, m).unwrap(), 0);
        let m = RootCountMode::InInterval(rat(0), rat(2));
        assert_eq!(count_real_roots(&g, m).unwrap(), 1);
    }

    #[test]
    fn isolation_basic() {
        let f = p(&[-3, 0, 1]); // ±sqrt3
        let iv = isolate_real_roots_raw(&f).unwrap();
        assert_eq!(iv.len(), 2);
        assert!(iv[0].1 <= iv[1].0);
        // constant -> empty
        assert!(isolate_real_roots_raw(&p(&[5])).unwrap().is_empty());
        // rational roots appear (possibly as exact points)
        let g = &p(&[0, 1]) * &p(&[1, 4, 1]);
        let iv = isolate_real_roots_raw(&g).unwrap();
        assert_eq!(iv.len(), 3);
        for w in iv.windows(2) {
            assert!(w[0].1 <= w[1].0);
        }
    }

    #[test]
    fn interval_count_matches_isolation() {
        let f = &p(&[-1, 3, 0, 1]) * &p(&[2, -5, 1, 1]);
        let n = count_real_roots(&f, RootCountMode::All).unwrap();
        let iv = isolate_real_roots_raw(&f).unwrap();
        assert_eq!(iv.len(), n);
        let m = RootCountMode::InInterval(rat_frac(-100, 1), rat(100));
        assert_eq!(count_real_roots(&f, m).unwrap(), n);
    }
}
