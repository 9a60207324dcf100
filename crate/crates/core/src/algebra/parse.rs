//! Inline element syntax, e.g. `c-1^2*c-2 + (0.5+0i)*cbar-3`.
//!
//! Grammar: a sum of products. Factors are `c-n`, `cbar-n` (with optional `^k`),
//! real numbers, `i`, and parenthesised complex literals `(re+imi)`.

use num_complex::Complex64;

use super::element::DescendantElement;
use super::partition::Partition;
use crate::error::{Error, Result};

pub fn parse_element(src: &str) -> Result<DescendantElement> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, src };
    let e = p.sum()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} in {:?}", self.pos + 1, self.src))
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn starts_with(&mut self, lit: &str) -> bool {
        self.ws();
        self.s[self.pos..].starts_with(lit.as_bytes())
    }

    fn sum(&mut self) -> Result<DescendantElement> {
        let mut sign = 1.0;
        if self.eat(b'-') {
            sign = -1.0;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.product()?.scale(Complex64::new(sign, 0.0));
        loop {
            let sign = if self.eat(b'+') {
                1.0
            } else if self.eat(b'-') {
                -1.0
            } else {
                break;
            };
            let t = self.product()?;
            acc = acc.add(&t.scale(Complex64::new(sign, 0.0)))?;
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<DescendantElement> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.mul(&f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<DescendantElement> {
        if self.starts_with("cbar-") {
            self.pos += 5;
            let n = self.integer()?;
            let k = self.exponent()?;
            return Ok(DescendantElement::antichiral(Partition::new(vec![n; k as usize])));
        }
        if self.starts_with("c-") {
            self.pos += 2;
            let n = self.integer()?;
            let k = self.exponent()?;
            return Ok(DescendantElement::chiral(Partition::new(vec![n; k as usize])));
        }
        if self.eat(b'(') {
            let z = self.complex_literal()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(DescendantElement::one().scale(z));
        }
        if self.eat(b'i') {
            return Ok(DescendantElement::one().scale(Complex64::new(0.0, 1.0)));
        }
        match self.peek() {
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let x = self.real()?;
                Ok(DescendantElement::one().scale(Complex64::new(x, 0.0)))
            }
            _ => Err(self.err("expected c-n, cbar-n, a number or a parenthesised complex")),
        }
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat(b'^') {
            let k = self.integer()?;
            if k == 0 {
                return Err(self.err("exponent must be positive"));
            }
            Ok(k)
        } else {
            Ok(1)
        }
    }

    fn integer(&mut self) -> Result<u32> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let txt = &self.src[start..self.pos];
        let n: u32 = txt.parse().map_err(|_| self.err("expected a positive integer"))?;
        if n == 0 {
            return Err(self.err("mode index must be positive"));
        }
        Ok(n)
    }

    fn real(&mut self) -> Result<f64> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() {
            let b = self.s[self.pos];
            let exp_sign = (b == b'+' || b == b'-')
                && self.pos > start
                && matches!(self.s[self.pos - 1], b'e' | b'E');
            if b.is_ascii_digit() || b == b'.' || b == b'e' || b == b'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.src[start..self.pos].parse().map_err(|_| self.err("malformed number"))
    }

    /// `re`, `imi`, `re±imi`, each part optionally signed.
    fn complex_literal(&mut self) -> Result<Complex64> {
        let mut z = Complex64::new(0.0, 0.0);
        let mut first = true;
        loop {
            let sign = if self.eat(b'-') {
                -1.0
            } else if self.eat(b'+') || first {
                1.0
            } else {
                break;
            };
            first = false;
            let mag = if self.peek() == Some(b'i') { 1.0 } else { self.real()? };
            if self.eat(b'i') {
                z.im += sign * mag;
            } else {
                z.re += sign * mag;
            }
            if self.peek() == Some(b')') {
                break;
            }
        }
        Ok(z)
    }
}
