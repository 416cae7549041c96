//! Canonical text form of polynomials and a parser that reads it back.
//!
//! Terms are printed in descending grlex order with explicit `*` and `^`,
//! e.g. `x^2 - 2*x*y + 3/2*y^2 + 1`. Coefficients from a rational function
//! field are parenthesized: `(t + 1)/(t)*x`.

use std::fmt;

use num_bigint::BigInt;

use super::{FieldError, Monomial, Polynomial, RingRef, Scalar};

fn write_monomial(f: &mut fmt::Formatter<'_>, ring: &RingRef, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in ring.vars.iter().zip(m.exps()) {
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Writes a coefficient that is already known to be non-negative in print.
fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Scalar) -> fmt::Result {
    match c {
        Scalar::Function(r) => match r.as_constant() {
            Some(c) => write!(f, "{c}"),
            None if r.is_polynomial() => write!(f, "({r})"),
            None => write!(f, "{r}"),
        },
        other => write!(f, "{other}"),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write_coeff(f, &abs)?;
            } else {
                if !abs.is_one() {
                    write_coeff(f, &abs)?;
                    write!(f, "*")?;
                }
                write_monomial(f, self.ring(), m)?;
            }
        }
        Ok(())
    }
}

/// Recursive-descent parser over `+ - * / ^` and parentheses.
///
/// Identifiers resolve first to ring variables and then to the variables of
/// a rational-function coefficient field. Division is allowed only by
/// nonzero constants of the coefficient field.
pub struct Parser<'a> {
    ring: RingRef,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    pub fn new(ring: &RingRef, src: &'a str) -> Self {
        Parser { ring: ring.clone(), src, pos: 0 }
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    /// Rewinds to an earlier position.
    pub fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    pub fn error<T>(&self, msg: impl Into<String>) -> Result<T, FieldError> {
        Err(FieldError::Parse { pos: self.pos, msg: msg.into() })
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    /// Next non-space character without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<(), FieldError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.error(format!("expected '{c}', found '{found}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    pub fn finish(&mut self) -> Result<(), FieldError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    /// Consumes `word` if the input continues with it.
    pub fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(word) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub fn identifier(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_ascii_alphabetic() || c == '_' => {}
            _ => return None,
        }
        let end = chars.find(|(_, c)| !(c.is_ascii_alphanumeric() || *c == '_')).map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    pub fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return None;
        }
        self.pos += end;
        rest[..end].parse().ok()
    }

    /// Parses one expression over another ring, e.g. constants inside a larger literal.
    pub fn expr_in(&mut self, ring: &RingRef) -> Result<Polynomial, FieldError> {
        let saved = std::mem::replace(&mut self.ring, ring.clone());
        let out = self.expr();
        self.ring = saved;
        out
    }

    /// `expr := term (('+' | '-') term)*`
    pub fn expr(&mut self) -> Result<Polynomial, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let inv = d.as_constant().and_then(|c| c.inv());
                match inv {
                    Some(inv) => acc = acc.scale(&inv),
                    None => {
                        self.pos = at;
                        return self.error("division only by nonzero constants");
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Polynomial, FieldError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, FieldError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = match self.integer() {
                Some(e) => e,
                None => return self.error("expected a non-negative integer exponent"),
            };
            let e: u32 = match e.try_into() {
                Ok(e) if e <= 10_000 => e,
                _ => return self.error("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, FieldError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer().expect("digit present");
                Ok(Polynomial::constant(&self.ring, Scalar::from_bigint(&self.ring.field, &n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let at = self.pos;
                let name = self.identifier().expect("identifier present");
                if let Some(p) = Polynomial::var_named(&self.ring, name) {
                    return Ok(p);
                }
                if let super::FieldSpec::RationalFunctions(fr) = &self.ring.field {
                    if let Some(v) = Polynomial::var_named(fr, name) {
                        let s = Scalar::Function(Box::new(super::RatFn::from_poly(v)));
                        return Ok(Polynomial::constant(&self.ring, s));
                    }
                }
                self.pos = at;
                self.error(format!("unknown variable '{name}'"))
            }
            Some(c) => self.error(format!("unexpected '{c}'")),
            None => self.error("unexpected end of input"),
        }
    }
}

/// Parses a whole string as one polynomial of `ring`.
pub fn parse_polynomial(ring: &RingRef, src: &str) -> Result<Polynomial, FieldError> {
    let mut p = Parser::new(ring, src);
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}
