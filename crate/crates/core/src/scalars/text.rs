//! Text grammar shared by scalars and polynomials.
//!
//! ```text
//! expr   := sign? term (("+" | "-") term)*
//! term   := power (("*" | "/")? power)*      juxtaposition multiplies
//! power  := atom ("^" digits)?
//! atom   := digits | ident | "(" expr ")"
//! ```
//!
//! Products are evaluated left to right, so `a*b` means the ring product in
//! that order and `a/b` means `a * b^{-1}`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Domain, Scalar};
use crate::error::{Error, Result};

/// Something an expression can be evaluated in.
pub trait ExprTarget {
    type Elem: Clone;
    fn number(&self, n: &BigInt) -> Result<Self::Elem>;
    fn ident(&self, name: &str) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn one(&self) -> Self::Elem;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character {c:?}") });
        }
    }
    Ok(out)
}

struct Parser<'a, T: ExprTarget> {
    target: &'a T,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    len: usize,
}

impl<T: ExprTarget> Parser<'_, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.len)
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.offset(), msg: msg.to_string() }
    }

    fn at_error(&self, e: Error) -> Error {
        match e {
            Error::Parse { .. } => e,
            other => Error::Parse { pos: self.offset(), msg: other.to_string() },
        }
    }

    fn expr(&mut self) -> Result<T::Elem> {
        let mut negate = false;
        if let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            negate = *c == '-';
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.target.neg(&acc);
        }
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek() {
            let minus = *c == '-';
            self.pos += 1;
            let t = self.term()?;
            acc = if minus { self.target.add(&acc, &self.target.neg(&t)) } else { self.target.add(&acc, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<T::Elem> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    let r = self.power()?;
                    acc = self.target.mul(&acc, &r).map_err(|e| self.at_error(e))?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let r = self.power()?;
                    acc = self.target.div(&acc, &r).map_err(|e| self.at_error(e))?;
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) => {
                    let r = self.power()?;
                    acc = self.target.mul(&acc, &r).map_err(|e| self.at_error(e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<T::Elem> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(n)) => u32::try_from(n.clone()).map_err(|_| self.err("exponent too large"))?,
                _ => return Err(self.err("expected exponent")),
            };
            self.pos += 1;
            let mut acc = self.target.one();
            for _ in 0..e {
                acc = self.target.mul(&acc, &base).map_err(|e| self.at_error(e))?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<T::Elem> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.target.number(&n).map_err(|e| self.at_error(e))
            }
            Some(Tok::Ident(name)) => {
                let r = self.target.ident(&name).map_err(|e| self.at_error(e));
                self.pos += 1;
                r
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(v)
                    }
                    _ => Err(self.err("expected ')'")),
                }
            }
            _ => Err(self.err("expected a number, identifier or '('")),
        }
    }
}

pub fn parse_expr<T: ExprTarget>(target: &T, s: &str) -> Result<T::Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty expression".into() });
    }
    let mut p = Parser { target, toks, pos: 0, len: s.len() };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl ExprTarget for Domain {
    type Elem = Scalar;

    fn number(&self, n: &BigInt) -> Result<Scalar> {
        self.try_from_rat(&BigRational::from_integer(n.clone()))
    }

    fn ident(&self, name: &str) -> Result<Scalar> {
        if self.is_quaternion() {
            let idx = match name {
                "i" => 1,
                "j" => 2,
                "k" => 3,
                _ => return Err(Error::Malformed(format!("unknown quaternion unit {name}"))),
            };
            let mut c = [self.prime_field().zero(), self.prime_field().zero(), self.prime_field().zero(), self.prime_field().zero()];
            c[idx] = self.prime_field().one();
            return Ok(self.from_prime_coords(&c));
        }
        match self.gen() {
            Some(g) if name == self.gen_name() => Ok(g),
            _ => Err(Error::Malformed(format!("unknown symbol {name}"))),
        }
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        Domain::add(self, a, b)
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        Domain::neg(self, a)
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(Domain::mul(self, a, b))
    }

    fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Domain::div(self, a, b)
    }

    fn one(&self) -> Scalar {
        Domain::one(self)
    }
}
