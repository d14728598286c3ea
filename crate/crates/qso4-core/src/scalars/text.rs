//! Text form `"(num)/(den)"` with a monic denominator.
//!
//! Terms are `c*s^k` (or `c` for `k = 0`); a coefficient is a rational
//! `p` or `p/q`, an imaginary rational `p/qi`, or `(a+bi)` with rational
//! parts. Terms are joined by `+` and `-`.

use super::gauss::GaussInt;
use super::int::Int;
use super::poly::Poly;
use super::scalar::Scalar;
use std::fmt::Write;

#[derive(Debug, thiserror::Error)]
#[error("cannot parse scalar {text:?}: {reason}")]
pub struct ParseScalarError {
    pub text: String,
    pub reason: String,
}

/// A Gaussian rational `(re + im i) / den` with `den > 0`.
#[derive(Clone, Debug)]
struct GaussRat {
    re: Int,
    im: Int,
    den: Int,
}

impl GaussRat {
    fn reduced(re: Int, im: Int, den: Int) -> GaussRat {
        let (re, im, den) = if den.signum() < 0 { (-re, -im, -den) } else { (re, im, den) };
        let g = re.gcd(&im).gcd(&den);
        if g.is_one() || g.is_zero() {
            GaussRat { re, im, den }
        } else {
            GaussRat { re: re.div_exact(&g), im: im.div_exact(&g), den: den.div_exact(&g) }
        }
    }

    /// `c / d` for Gaussian integers.
    fn quotient(c: &GaussInt, d: &GaussInt) -> GaussRat {
        let n = d.norm();
        let p = c.mul(&d.conj());
        GaussRat::reduced(p.re, p.im, n)
    }
}

fn rational(num: &Int, den: &Int) -> String {
    let g = num.gcd(den);
    let (n, d) = if g.is_zero() || g.is_one() { (num.clone(), den.clone()) } else { (num.div_exact(&g), den.div_exact(&g)) };
    if d.is_one() {
        n.to_string()
    } else {
        format!("{n}/{d}")
    }
}

/// Coefficient text and whether it was printed with a leading minus that
/// the caller may turn into a binary `-`.
fn coefficient(c: &GaussRat) -> (bool, String) {
    let re0 = c.re.is_zero();
    let im0 = c.im.is_zero();
    if im0 {
        let neg = c.re.signum() < 0;
        (neg, rational(&c.re.abs(), &c.den))
    } else if re0 {
        let neg = c.im.signum() < 0;
        (neg, format!("{}i", rational(&c.im.abs(), &c.den)))
    } else {
        let sign = if c.im.signum() < 0 { '-' } else { '+' };
        (false, format!("({}{}{}i)", rational(&c.re, &c.den), sign, rational(&c.im.abs(), &c.den)))
    }
}

fn sum(terms: &[(i64, GaussRat)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in terms.iter().enumerate() {
        let (neg, body) = coefficient(c);
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        if *e != 0 {
            write!(out, "*s^{e}").unwrap();
        }
    }
    out
}

pub fn render(x: &Scalar) -> String {
    if x.is_zero() {
        return "(0)/(1)".to_string();
    }
    let lc = x.den_lc().clone();
    let collect = |it: &mut dyn Iterator<Item = (i64, &GaussInt)>| {
        let mut v: Vec<(i64, GaussRat)> = it.map(|(e, c)| (e, GaussRat::quotient(c, &lc))).collect();
        v.reverse();
        v
    };
    let num = collect(&mut x.numerator_terms());
    let den = collect(&mut x.denominator_terms());
    format!("({})/({})", sum(&num), sum(&den))
}

struct Parser<'a> {
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, reason: &str) -> ParseScalarError {
        ParseScalarError { text: self.src.to_string(), reason: format!("{reason} at byte {}", self.pos) }
    }

    fn ws(&mut self) {
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.b.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<Int, ParseScalarError> {
        self.ws();
        let start = self.pos;
        if self.pos < self.b.len() && (self.b[self.pos] == b'-' || self.b[self.pos] == b'+') {
            self.pos += 1;
        }
        while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.src[start..self.pos].parse::<Int>().map_err(|_| self.err("expected integer"))
    }

    /// Unsigned rational `p` or `p/q`; returns `(p, q)`.
    fn rational(&mut self) -> Result<(Int, Int), ParseScalarError> {
        let p = self.integer()?;
        self.ws();
        // A '/' followed by '(' separates numerator and denominator.
        if self.b.get(self.pos) == Some(&b'/') && self.b.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
            let q = self.integer()?;
            if q.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok((p, q));
        }
        Ok((p, Int::ONE))
    }

    fn coefficient(&mut self) -> Result<GaussRat, ParseScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let (a, ad) = self.rational()?;
                let neg = match self.peek() {
                    Some(b'+') => false,
                    Some(b'-') => true,
                    _ => return Err(self.err("expected + or - in complex coefficient")),
                };
                self.pos += 1;
                let (b, bd) = self.rational()?;
                if !self.eat(b'i') || !self.eat(b')') {
                    return Err(self.err("expected i)"));
                }
                let b = if neg { -b } else { b };
                let den = &ad * &bd;
                Ok(GaussRat::reduced(&a * &bd, &b * &ad, den))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(GaussRat::reduced(Int::ZERO, Int::ONE, Int::ONE))
            }
            Some(c) if c.is_ascii_digit() => {
                let (p, q) = self.rational()?;
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    Ok(GaussRat::reduced(Int::ZERO, p, q))
                } else {
                    Ok(GaussRat::reduced(p, Int::ZERO, q))
                }
            }
            Some(b's') => Ok(GaussRat::reduced(Int::ONE, Int::ZERO, Int::ONE)),
            _ => Err(self.err("expected coefficient")),
        }
    }

    fn term(&mut self) -> Result<(i64, GaussRat), ParseScalarError> {
        let c = self.coefficient()?;
        self.eat(b'*');
        let mut e = 0i64;
        if self.eat(b's') {
            e = 1;
            if self.eat(b'^') {
                let v = self.integer()?;
                e = match v {
                    Int::Small(v) => v,
                    Int::Big(_) => return Err(self.err("exponent out of range")),
                };
            }
        }
        Ok((e, c))
    }

    fn sum(&mut self) -> Result<Vec<(i64, GaussRat)>, ParseScalarError> {
        let mut out = Vec::new();
        let mut neg = false;
        if self.eat(b'-') {
            neg = true;
        } else {
            self.eat(b'+');
        }
        loop {
            let (e, c) = self.term()?;
            let c = if neg { GaussRat { re: -c.re, im: -c.im, den: c.den } } else { c };
            out.push((e, c));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => return Ok(out),
            }
        }
    }

    fn done(&mut self) -> Result<(), ParseScalarError> {
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(())
    }
}

fn lcm(a: &Int, b: &Int) -> Int {
    let g = a.gcd(b);
    (a * b).div_exact(&g).abs()
}

/// Laurent polynomial over `Z[i]` times `1/scale`.
fn to_laurent(terms: &[(i64, GaussRat)]) -> (i64, Poly, Int) {
    let mut l = Int::ONE;
    for (_, c) in terms {
        l = lcm(&l, &c.den);
    }
    let low = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let high = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![GaussInt::zero(); (high - low + 1) as usize];
    for (e, c) in terms {
        let f = l.div_exact(&c.den);
        let g = GaussInt::new(&c.re * &f, &c.im * &f);
        let slot = &mut coeffs[(e - low) as usize];
        *slot = slot.add(&g);
    }
    (low, Poly::from_coeffs(coeffs), l)
}

pub fn parse(text: &str) -> Result<Scalar, ParseScalarError> {
    let mut p = Parser { src: text, b: text.as_bytes(), pos: 0 };
    let fraction = split_fraction(text);
    let (num, den) = match fraction {
        Some((a, b)) => {
            let mut pa = Parser { src: text, b: text.as_bytes(), pos: a.0 };
            let mut pb = Parser { src: text, b: text.as_bytes(), pos: b.0 };
            pa.b = &text.as_bytes()[..a.1];
            pb.b = &text.as_bytes()[..b.1];
            let n = pa.sum()?;
            pa.done()?;
            let d = pb.sum()?;
            pb.done()?;
            (n, d)
        }
        None => {
            let n = p.sum()?;
            p.done()?;
            (n, vec![(0, GaussRat::reduced(Int::ONE, Int::ZERO, Int::ONE))])
        }
    };
    let (ns, n, nl) = to_laurent(&num);
    let (ds, d, dl) = to_laurent(&den);
    if d.is_zero() {
        return Err(ParseScalarError { text: text.to_string(), reason: "zero denominator".into() });
    }
    // (n / nl) / (d / dl) = (n * dl) / (d * nl)
    let n = n.scale(&GaussInt::new(dl, Int::ZERO));
    let d = d.scale(&GaussInt::new(nl, Int::ZERO));
    Ok(Scalar::from_parts(ns, n, ds, d))
}

/// Byte ranges of the two bracketed halves of `"(a)/(b)"`.
fn split_fraction(text: &str) -> Option<((usize, usize), (usize, usize))> {
    let t = text.trim_end();
    let b = t.as_bytes();
    let start = t.len() - t.trim_start().len();
    if b.get(start) != Some(&b'(') || b.last() != Some(&b')') {
        return None;
    }
    let mut depth = 0i32;
    let mut close = None;
    for (k, &c) in b.iter().enumerate().skip(start) {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    close = Some(k);
                    break;
                }
            }
            _ => {}
        }
    }
    let close = close?;
    let rest = &t[close + 1..];
    let slash = rest.find('/')?;
    if !rest[..slash].trim().is_empty() {
        return None;
    }
    let open2 = close + 1 + slash + 1 + (rest[slash + 1..].len() - rest[slash + 1..].trim_start().len());
    if b.get(open2) != Some(&b'(') {
        return None;
    }
    Some(((start + 1, close), (open2 + 1, t.len() - 1)))
}
