//! Text parser for polynomials.
//!
//! Accepts the rendering produced by `Display` for [`Poly`] and the usual
//! hand-written forms: `+ - * / ^`, parentheses, integer and `p/q`
//! literals, and implicit multiplication by juxtaposition (`2 x1 x3^2`).
//! Division is only allowed by constants.

use std::str::FromStr;

use super::poly::Poly;
use super::symbol::Symbol;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse polynomial at byte {pos}: {msg}")]
pub struct ParsePolyError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Sym(Symbol),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>, ParsePolyError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(s[start..i].to_string())));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < b.len() && (b[i] as char).is_ascii_alphanumeric() {
                i += 1;
            }
            if &s[start..i] == "Con" && i < b.len() && b[i] == b'[' {
                while i < b.len() && b[i] != b']' {
                    i += 1;
                }
                i = (i + 1).min(b.len());
            }
            let sym = s[start..i]
                .parse::<Symbol>()
                .map_err(|e| ParsePolyError { pos: start, msg: e.to_string() })?;
            out.push((start, Tok::Sym(sym)));
        } else {
            return Err(ParsePolyError { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(p, _)| *p).unwrap_or(self.len)
    }

    fn err<X>(&self, msg: &str) -> Result<X, ParsePolyError> {
        Err(ParsePolyError { pos: self.pos(), msg: msg.to_string() })
    }

    fn expr<T: Scalar>(&mut self) -> Result<Poly<T>, ParsePolyError> {
        let mut acc = match self.peek() {
            Some(Tok::Op('-')) => {
                self.at += 1;
                -self.term::<T>()?
            }
            Some(Tok::Op('+')) => {
                self.at += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.at += 1;
                    acc += &self.term()?;
                }
                Some(Tok::Op('-')) => {
                    self.at += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<T: Scalar>(&mut self) -> Result<Poly<T>, ParsePolyError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.at += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Op('/')) => {
                    self.at += 1;
                    let d = self.power::<T>()?;
                    if !d.is_constant() || d.is_zero() {
                        return self.err("division by a non-constant or zero");
                    }
                    acc = acc.scale(&(T::one() / d.constant_term()));
                }
                Some(Tok::Num(_)) | Some(Tok::Sym(_)) | Some(Tok::Op('(')) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power<T: Scalar>(&mut self) -> Result<Poly<T>, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Op('^')) {
            self.at += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.at += 1;
                    let e: u32 = n.parse().map_err(|_| ParsePolyError { pos: self.pos(), msg: "bad exponent".into() })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<T: Scalar>(&mut self) -> Result<Poly<T>, ParsePolyError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                let ten = T::from_u32(10).unwrap();
                let v = n.bytes().fold(T::zero(), |acc, d| acc * ten.clone() + T::from_u8(d - b'0').unwrap());
                Ok(Poly::constant(v))
            }
            Some(Tok::Sym(s)) => {
                self.at += 1;
                Ok(Poly::symbol(s))
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Op(')')) {
                    return self.err("expected `)`");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(Tok::Op('-')) => {
                self.at += 1;
                Ok(-self.power::<T>()?)
            }
            _ => self.err("expected a number, symbol or `(`"),
        }
    }
}

impl<T: Scalar> FromStr for Poly<T> {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks = tokenize(s)?;
        let mut p = Parser { toks: &toks, at: 0, len: s.len() };
        let out = p.expr()?;
        if p.at != toks.len() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}
