//! Text form of scalars.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Integers are reduced mod `p`. The printer emits numerators and
//! denominators as sums of `c*v^e*w` terms in graded-lex order with
//! coefficients in `0..p`, e.g. `(s^2*t + 2)/(s + 1)`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::poly::Poly;
use super::scalar::Scalar;
use super::spec::FieldSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let n = s.parse::<u64>().map_err(|_| Error::Parse(format!("integer too large: {s}")))?;
            out.push(Tok::Num(n));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    p: u32,
    names: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Scalar> {
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

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) if e <= u32::MAX as u64 => {
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                _ => Err(Error::Parse("expected a nonnegative integer exponent".to_string())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Scalar::from_int(self.p, (n % self.p as u64) as i64))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let i = self
                    .names
                    .iter()
                    .position(|v| *v == name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {name}")))?;
                Ok(Scalar::var(self.p, i))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".to_string()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected token {t:?}"))),
            None => Err(Error::Parse("unexpected end of input".to_string())),
        }
    }
}

/// Parses with an explicit variable list; variable `i` of the result is `names[i]`.
pub fn parse_with_names(p: u32, names: &[&str], src: &str) -> Result<Scalar> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".to_string()));
    }
    let mut parser = Parser { toks, pos: 0, p, names };
    let e = parser.expr().map_err(|e| match e {
        Error::DivisionByZero => Error::Parse(format!("division by zero in {src:?}")),
        other => other,
    })?;
    if parser.pos != parser.toks.len() {
        return Err(Error::Parse(format!("trailing input in {src:?}")));
    }
    Ok(e)
}

pub fn parse_scalar(spec: &FieldSpec, src: &str) -> Result<Scalar> {
    let names: Vec<&str> = spec.var_names().collect();
    parse_with_names(spec.characteristic(), &names, src)
}

pub fn format_poly(names: &[&str], f: &Poly) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (m, c) in f.terms() {
        let mut factors: Vec<String> = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            let name = names.get(i).copied().map(String::from).unwrap_or_else(|| format!("v{i}"));
            match e {
                0 => {}
                1 => factors.push(name),
                _ => factors.push(format!("{name}^{e}")),
            }
        }
        let s = if factors.is_empty() {
            c.to_string()
        } else if *c == 1 {
            factors.join("*")
        } else {
            format!("{c}*{}", factors.join("*"))
        };
        parts.push(s);
    }
    parts.join(" + ")
}

pub fn format_with_names(names: &[&str], a: &Scalar) -> String {
    let num = format_poly(names, a.numerator());
    if a.denominator().is_one() {
        return num;
    }
    let den = format_poly(names, a.denominator());
    let wrap = |s: String, poly: &Poly| {
        let single_factor = poly.terms().len() == 1 && !s.contains('*');
        if single_factor {
            s
        } else {
            format!("({s})")
        }
    };
    let num = if a.numerator().terms().len() > 1 { format!("({num})") } else { num };
    format!("{num}/{}", wrap(den, a.denominator()))
}

pub fn format_scalar(spec: &FieldSpec, a: &Scalar) -> String {
    let names: Vec<&str> = spec.var_names().collect();
    format_with_names(&names, a)
}
