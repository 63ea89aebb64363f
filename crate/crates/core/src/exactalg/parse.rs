use num::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Parses `3/2*q1^2*p1 + t*q1` style expressions.
///
/// Grammar: sums of signed products of powers; atoms are identifiers,
/// integer or decimal literals, and parenthesised expressions. Division is
/// allowed by numeric atoms only.
pub fn parse_poly<K: Coeff>(src: &str) -> Result<Poly<K>> {
    let mut p = Parser { src: src.as_bytes(), pos: 0 };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn expr<K: Coeff>(&mut self) -> Result<Poly<K>> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn term<K: Coeff>(&mut self) -> Result<Poly<K>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc * f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power::<K>()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(self.err("division only by nonzero constants"));
                    }
                    let inv = K::one() / d.constant_term();
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<K: Coeff>(&mut self) -> Result<Poly<K>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("expected nonnegative integer exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom<K: Coeff>(&mut self) -> Result<Poly<K>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Poly::var(name))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn number<K: Coeff>(&mut self) -> Result<Poly<K>> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int_part = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        let mut frac = String::new();
        if self.pos < self.src.len() && self.src[self.pos] == b'.' {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            frac = std::str::from_utf8(&self.src[fs..self.pos]).unwrap().to_string();
        }
        if int_part.is_empty() && frac.is_empty() {
            return Err(self.err("malformed number"));
        }
        let digits = format!("{int_part}{frac}");
        let num: BigInt = digits.parse().map_err(|_| self.err("malformed number"))?;
        let mut den = BigInt::one();
        for _ in 0..frac.len() {
            den *= 10;
        }
        if num.is_zero() {
            return Ok(Poly::zero());
        }
        Ok(Poly::constant(K::from_ratio(&num, &den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num::BigRational;

    fn p(s: &str) -> Poly<BigRational> {
        parse_poly(s).unwrap()
    }

    #[test]
    fn literal_forms() {
        assert_eq!(p("3/2*q1^2*p1 + t*q1").to_string(), "3/2*q1^2*p1 + q1*t");
        assert_eq!(p("0.25*q"), p("1/4*q"));
        assert_eq!(p("-(q - p)"), p("p - q"));
        assert_eq!(p("(q+1)^2"), p("q^2 + 2*q + 1"));
        assert_eq!(p("2*-q"), Poly::var("q").scale(&rat(-2, 1)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly::<BigRational>("q +").is_err());
        assert!(parse_poly::<BigRational>("q / p").is_err());
        assert!(parse_poly::<BigRational>("q)").is_err());
        assert!(parse_poly::<BigRational>("q^x").is_err());
    }

    #[test]
    fn round_trip_display() {
        for s in ["q1*p1 + 1/2*t", "-3*x^2*y + 7", "0", "q^2 - 2*q*p + p^2"] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a);
        }
    }
}
