//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := rational | identifier | '(' expr ')'
//! rational := digits ('/' digits)?
//! ```
//!
//! Identifiers are the names of [`Var`]. Exponents are non-negative integer
//! literals only.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::var::Var;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseContext {
    /// Any variable of the universe.
    General,
    /// Generator components: coordinates and parameters only.
    Generator,
}

pub fn parse_poly(src: &str) -> Result<Poly> {
    parse_poly_in(src, ParseContext::General)
}

pub fn parse_generator_component(src: &str) -> Result<Poly> {
    parse_poly_in(src, ParseContext::Generator)
}

pub fn parse_poly_in(src: &str, ctx: ParseContext) -> Result<Poly> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
        ctx,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ctx: ParseContext,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc * self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        self.skip_ws();
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error("exponent must be a non-negative integer literal"));
        }
        let e: u32 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        Ok(base.pow(e))
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num: BigInt = self.digits().parse().expect("digits");
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        return Err(self.error("expected denominator"));
                    }
                    let den: BigInt = d.parse().expect("digits");
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    Ok(Poly::constant(Rat::new(num, den)))
                } else {
                    Ok(Poly::constant(Rat::from_integer(num)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                let v = Var::from_name(&name).ok_or(Error::Syntax {
                    pos: start,
                    msg: format!("unknown identifier `{name}`"),
                })?;
                if self.ctx == ParseContext::Generator && (v == Var::U || v.is_jet()) {
                    return Err(Error::ForbiddenVariable { pos: start, name });
                }
                Ok(Poly::var(v))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn v1_xi() {
        let p = parse_poly("x*t - x^2*y - y^3").unwrap();
        assert_eq!(p.canonical_string(), "x*t - x^2*y - y^3");
    }

    #[test]
    fn zero_and_fractions() {
        assert!(parse_poly("0").unwrap().is_zero());
        assert_eq!(
            parse_poly("1/2*x").unwrap(),
            Poly::var(Var::X).scale(&rat(1, 2))
        );
        assert_eq!(parse_poly("-x^2").unwrap(), -Poly::var(Var::X).pow(2));
        assert_eq!(
            parse_poly("2/1-p").unwrap(),
            &Poly::from_int(2) - &Poly::var(Var::P)
        );
        assert_eq!(
            parse_poly("(x+y)^2 - 2*x*y").unwrap(),
            parse_poly("x^2 + y^2").unwrap()
        );
        assert_eq!(parse_poly("3").unwrap(), Poly::constant(int(3)));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_poly("x^p") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        match parse_generator_component("x + u^p") {
            Err(Error::ForbiddenVariable { pos, name }) => {
                assert_eq!(pos, 4);
                assert_eq!(name, "u");
            }
            other => panic!("{other:?}"),
        }
        assert!(parse_generator_component("u_xt").is_err());
        assert!(parse_poly("x +").is_err());
        assert!(parse_poly("(x").is_err());
        assert!(parse_poly("x y").is_err());
        assert!(parse_poly("z").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
