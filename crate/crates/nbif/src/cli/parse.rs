use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::bivar::BiPoly;
use crate::exactmath::Rat;
use crate::{Error, Result};

// Grammar:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := primary ('^' nat)*
//   primary:= rational | 'x' | 'y' | '(' expr ')'
//   rational := nat ('/' nat)?
// Whitespace is insignificant; juxtaposition multiplies. Exponents must be
// nonnegative integer literals.

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

const MAX_EXPONENT: u64 = 4096;

fn err(pos: usize, expected: &[&str], found: String) -> Error {
    Error::Parse {
        offset: pos,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn found_desc(&mut self) -> String {
        match self.peek() {
            None => "end of input".to_string(),
            Some(c) => format!("'{}'", c as char),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn natural(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(err(start, &["number"], self.found_desc()));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(text.parse::<BigInt>().unwrap())
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = acc.add(&t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = acc.sub(&t);
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                // Juxtaposition: a factor may start right away.
                Some(c) if c.is_ascii_digit() || c == b'x' || c == b'y' || c == b'(' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let mut acc = self.primary()?;
        while self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {}
                _ => {
                    return Err(err(
                        at,
                        &["nonnegative integer exponent"],
                        self.found_desc(),
                    ))
                }
            }
            let n = self.natural()?;
            if n.is_negative() || n > BigInt::from(MAX_EXPONENT) {
                return Err(err(at, &["exponent <= 4096"], n.to_string()));
            }
            let e: u32 = n.to_string().parse().unwrap();
            acc = acc.pow(e);
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::var_x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::var_y())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(err(self.pos, &["')'"], self.found_desc()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let den = if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.natural()?;
                    if d.is_zero() {
                        return Err(err(at, &["nonzero denominator"], "0".to_string()));
                    }
                    d
                } else {
                    BigInt::one()
                };
                Ok(BiPoly::constant(Rat::new(num, den)))
            }
            _ => Err(err(
                self.pos,
                &["number", "'x'", "'y'", "'('"],
                self.found_desc(),
            )),
        }
    }
}

/// Parses a polynomial expression in `x`, `y` with rational coefficients.
pub fn parse_poly(text: &str) -> Result<BiPoly> {
    let mut p = Parser::new(text);
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(err(0, &["expression"], "end of input".to_string()));
    }
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(err(
            p.pos,
            &["'+'", "'-'", "'*'", "'^'", "end of input"],
            p.found_desc(),
        ));
    }
    Ok(poly)
}

/// Canonical rendering: terms by descending total degree then descending
/// x-exponent, explicit `*` between parts, coefficients as integers or
/// `a/b` fractions. Reparsing yields the identical support map.
pub fn poly_to_string(f: &BiPoly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<((i64, i64), Rat)> = f.terms().map(|(&k, c)| (k, c.clone())).collect();
    terms.sort_by(|a, b| {
        let ta = a.0 .0 + a.0 .1;
        let tb = b.0 .0 + b.0 .1;
        tb.cmp(&ta).then(b.0 .0.cmp(&a.0 .0)).then(b.0 .1.cmp(&a.0 .1))
    });
    let mut out = String::new();
    for (i, ((m, n), c)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut parts: Vec<String> = Vec::new();
        let coeff_one = abs.is_one();
        if !coeff_one || (*m == 0 && *n == 0) {
            if abs.is_integer() {
                parts.push(abs.numer().to_string());
            } else {
                parts.push(format!("{}/{}", abs.numer(), abs.denom()));
            }
        }
        if *m > 0 {
            parts.push(if *m == 1 { "x".to_string() } else { format!("x^{m}") });
        }
        if *n > 0 {
            parts.push(if *n == 1 { "y".to_string() } else { format!("y^{n}") });
        }
        out.push_str(&parts.join("*"));
    }
    out
}
