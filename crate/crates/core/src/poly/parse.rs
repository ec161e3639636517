//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := ('-')? base ('^' natural)?
//! base   := rational | variable | generator | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::mpoly::{MPoly, Vars};
use crate::error::{Error, Result};
use crate::scalar::{Field, Rat};

struct Parser<'a, F: Field> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    gens: &'a [(String, F)],
}

/// Parses `text` into a polynomial in `vars`. `gens` names field elements
/// usable as constants.
pub fn parse_poly<F: Field>(text: &str, vars: &Vars, gens: &[(String, F)]) -> Result<MPoly<F>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars, gens };
    p.skip_ws();
    if p.at_end() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly<F>> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly<F>> {
        if self.eat(b'-') {
            return Ok(-&self.factor()?);
        }
        let b = self.base()?;
        if self.eat(b'^') {
            self.skip_ws();
            let n = self.natural()?;
            let e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn natural(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn base(&mut self) -> Result<MPoly<F>> {
        self.skip_ws();
        match self.peek() {
            None => Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.natural()?;
                let save = self.pos;
                self.skip_ws();
                let mut value = Rat::from_integer(n);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.natural()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    value /= Rat::from_integer(d);
                } else {
                    self.pos = save;
                }
                Ok(MPoly::constant(self.vars, F::from_rat(&value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(i) = self.vars.index(name) {
                    return Ok(MPoly::var(self.vars, i));
                }
                if let Some((_, g)) = self.gens.iter().find(|(n, _)| n == name) {
                    return Ok(MPoly::constant(self.vars, g.clone()));
                }
                if name.len() == 1 {
                    Err(Error::UnknownVariable(name.into()))
                } else {
                    Err(Error::UnknownGenerator(name.into()))
                }
            }
            Some(_) => Err(self.err("unexpected character")),
        }
    }
}
