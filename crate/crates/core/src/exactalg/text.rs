//! Text form of polynomials.
//!
//! ```text
//! poly     ::= term { ("+" | "-") term }
//! term     ::= [sign] [rational] { factor }
//! factor   ::= name [ "^" posint ]
//! rational ::= int [ "/" posint ]
//! ```
//!
//! Factors are separated by whitespace (a `*` is also accepted). Rendering
//! lists terms highest first in graded-lex order.

use std::collections::HashMap;
use std::fmt::Write as _;

use num::{BigInt, One, Signed, Zero};

use super::{Monomial, PolyError, Polynomial, Rational};

/// Variable names for the ambient coordinates of a polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variables {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Variables {
    /// `x1 .. xn`.
    pub fn indexed(n: usize) -> Self {
        Self::named((1..=n).map(|i| format!("x{i}")))
    }

    pub fn named<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let lookup = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Variables { names, lookup }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> PolyError {
        PolyError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("validated digits"))
    }

    fn ident(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier")
    }

    fn term(&mut self, vars: &Variables, negate: bool) -> Result<(Monomial, Rational), PolyError> {
        let mut coeff = Rational::one();
        let mut saw_anything = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let mut den = BigInt::one();
            if self.peek() == Some(b'/') {
                self.pos += 1;
                den = self.integer()?;
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
            }
            coeff = Rational::new(num, den);
            saw_anything = true;
        }
        let mut pairs = Vec::new();
        loop {
            match self.peek() {
                Some(b'*') if saw_anything => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_alphabetic()) {
                        return Err(self.err("expected a variable after '*'"));
                    }
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let at = self.pos;
                    let name = self.ident().to_string();
                    let Some(idx) = vars.index_of(&name) else {
                        self.pos = at;
                        return Err(self.err(format!("unknown variable '{name}'")));
                    };
                    let mut exp = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        let e = self.integer()?;
                        exp = u32::try_from(e)
                            .ok()
                            .filter(|&e| e > 0)
                            .ok_or_else(|| self.err("exponent must be a positive integer"))?;
                    }
                    pairs.push((idx, exp));
                    saw_anything = true;
                }
                _ => break,
            }
        }
        if !saw_anything {
            return Err(self.err("expected a coefficient or variable"));
        }
        if negate {
            coeff = -coeff;
        }
        Ok((Monomial::from_pairs(pairs), coeff))
    }
}

impl Polynomial {
    pub fn parse(text: &str, vars: &Variables) -> Result<Polynomial, PolyError> {
        let mut parser = Parser {
            src: text.as_bytes(),
            pos: 0,
        };
        let mut out = Polynomial::zero(vars.len());
        let mut first = true;
        loop {
            let negate = match parser.peek() {
                None if first => return Err(parser.err("empty polynomial")),
                None => break,
                Some(b'+') => {
                    parser.pos += 1;
                    false
                }
                Some(b'-') => {
                    parser.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(parser.err(format!("unexpected '{}'", c as char))),
            };
            let (m, c) = parser.term(vars, negate)?;
            out.add_term(m, c);
            first = false;
        }
        Ok(out)
    }

    /// Renders with the given names; panics if there are fewer names than
    /// variables in use.
    pub fn render(&self, vars: &Variables) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                parts.push(abs.to_string());
            }
            for (v, e) in m.iter() {
                let mut s = vars.name(v).to_string();
                if e > 1 {
                    let _ = write!(s, "^{e}");
                }
                parts.push(s);
            }
            out.push_str(&parts.join(" "));
        }
        out
    }
}
