use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number; numerator and denominator are arbitrary-precision
/// integers kept coprime with positive denominator.
pub type Rat = BigRational;

/// Convenience constructor from a machine integer.
pub fn rat(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Convenience constructor for `num/den`.
pub fn rat_frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Decimal rendering of `r` with at least `sig` significant digits.
///
/// Plain decimal notation is used when the magnitude is moderate, falling
/// back to `m.mmm...e+EE` notation for extreme exponents. The output is a
/// deterministic function of `(r, sig)`; no floating point is involved.
pub fn to_decimal_string(r: &Rat, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = r.is_negative();
    let a = r.abs();

    // Decimal exponent e with 10^e <= a < 10^(e+1).
    let ten = Rat::from(BigInt::from(10));
    let mut e: i64 = 0;
    let mut scaled = a.clone();
    let one = Rat::one();
    while scaled >= ten {
        scaled /= &ten;
        e += 1;
    }
    while scaled < one {
        scaled *= &ten;
        e -= 1;
    }

    // Mantissa rounded to `sig` digits: round(a * 10^(sig-1-e)).
    let shift = sig as i64 - 1 - e;
    let mut m = a.clone();
    let p = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    if shift >= 0 {
        m *= Rat::from(p);
    } else {
        m /= Rat::from(p);
    }
    let mut digits = m.round().to_integer().to_string();
    // Rounding can carry over to one extra digit (e.g. 9.99 -> 10.0).
    if digits.len() > sig {
        e += 1;
        digits.truncate(sig);
    }
    debug_assert_eq!(digits.len(), sig);

    let sign = if neg { "-" } else { "" };
    let body = if (-4..16).contains(&e) {
        if e >= 0 {
            let e = e as usize;
            if e + 1 >= digits.len() {
                format!("{}{}", digits, "0".repeat(e + 1 - digits.len()))
            } else {
                format!("{}.{}", &digits[..e + 1], &digits[e + 1..])
            }
        } else {
            format!("0.{}{}", "0".repeat((-e - 1) as usize), digits)
        }
    } else {
        format!("{}.{}e{}", &digits[..1], &digits[1..], e)
    };
    let body = trim_trailing_zeros(&body);
    format!("{sign}{body}")
}

fn trim_trailing_zeros(s: &str) -> String {
    if let Some(dot) = s.find('.') {
        let (head, tail) = match s.find('e') {
            Some(epos) => (&s[..epos], &s[epos..]),
            None => (s, ""),
        };
        if head.len() > dot {
            let trimmed = head.trim_end_matches('0').trim_end_matches('.');
            return format!("{trimmed}{tail}");
        }
    }
    s.to_string()
}

/// The rational with smallest denominator (then smallest numerator) in the
/// open interval `(lo, hi)`, by a Stern-Brocot descent.
pub fn simplest_in_interval(lo: &Rat, hi: &Rat) -> Rat {
    assert!(lo < hi, "empty interval");
    if lo.is_negative() && hi.is_positive() {
        return Rat::zero();
    }
    if hi.is_zero() || hi.is_negative() {
        return -simplest_nonneg(&-hi.clone(), &-lo.clone());
    }
    // 0 <= lo < hi (lo == 0 handled inside).
    simplest_nonneg(lo, hi)
}

// Simplest rational in (lo, hi) for 0 <= lo < hi.
fn simplest_nonneg(lo: &Rat, hi: &Rat) -> Rat {
    let next_int = Rat::from(lo.floor().to_integer() + 1);
    if &next_int < hi {
        // floor(lo)+1 is the smallest integer strictly above lo.
        return next_int;
    }
    let base = lo.floor();
    let lo_f = lo - &base;
    let hi_f = hi - &base;
    // Now 0 <= lo_f < hi_f <= 1 and (lo_f, hi_f) contains no integer.
    if lo_f.is_zero() {
        // Smallest q with 1/q < hi_f.
        let q = (Rat::one() / &hi_f).floor().to_integer() + 1;
        return base + Rat::new(BigInt::one(), q);
    }
    // Reciprocate and recurse: x in (lo_f, hi_f) <=> 1/x in (1/hi_f, 1/lo_f).
    base + Rat::one() / simplest_nonneg(&(Rat::one() / &hi_f), &(Rat::one() / &lo_f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&rat(0), 12), "0");
        assert_eq!(to_decimal_string(&rat(5), 3), "5");
        assert_eq!(to_decimal_string(&rat_frac(1, 2), 3), "0.5");
        assert_eq!(to_decimal_string(&rat_frac(-1, 3), 5), "-0.33333");
        assert_eq!(to_decimal_string(&rat_frac(2, 3), 4), "0.6667");
        assert_eq!(to_decimal_string(&rat(123456), 4), "123500");
        let tiny = rat_frac(1, 1_000_000_000);
        assert_eq!(to_decimal_string(&tiny, 3), "1e-9");
        assert_eq!(to_decimal_string(&rat_frac(9999, 1000), 3), "10");
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_in_interval(&rat_frac(-1, 2), &rat_frac(1, 2)), rat(0));
        assert_eq!(simplest_in_interval(&rat_frac(1, 3), &rat_frac(2, 3)), rat_frac(1, 2));
        assert_eq!(simplest_in_interval(&rat_frac(5, 2), &rat(4)), rat(3));
        assert_eq!(simplest_in_interval(&rat_frac(7, 10), &rat_frac(8, 10)), rat_frac(3, 4));
        assert_eq!(
            simplest_in_interval(&rat_frac(-8, 10), &rat_frac(-7, 10)),
            rat_frac(-3, 4)
        );
        // A tight interval around 22/7.
        let lo = rat_frac(219, 70) + rat_frac(1, 1000);
        let hi = rat_frac(221, 70) - rat_frac(1, 1000);
        assert_eq!(simplest_in_interval(&lo, &hi), rat_frac(22, 7));
    }
}
