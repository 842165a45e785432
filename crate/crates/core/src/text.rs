//! Text syntax for polynomials and module vectors.
//!
//! Terms are joined by `+` (or `-`), factors by `*`. A decimal coefficient
//! may prefix a term, separated by whitespace or `*`: `2 Sq3`, `2*Sq3`.
//! `0` is the zero polynomial and `1` the empty word. Vectors are written
//! `[P1, P2, ...]`, one polynomial per component.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::FreeAlgebra;
use crate::field::FieldElement;
use crate::monomial::{GeneratorTable, Letter, Monomial};
use crate::polynomial::Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Cursor<'s> {
    chars: Vec<char>,
    pos: usize,
    _src: &'s str,
}

impl<'s> Cursor<'s> {
    fn new(src: &'s str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            _src: src,
        }
    }

    fn location(&self, at: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..at.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, at: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(at);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<(u64, usize)> {
        self.skip_ws();
        let start = self.pos;
        let mut v: u64 = 0;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            v = v.saturating_mul(10).saturating_add(d as u64);
            self.pos += 1;
        }
        (self.pos > start).then_some((v, start))
    }

    fn name(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        let first = *self.chars.get(self.pos)?;
        if !(first.is_alphabetic() || first == '_') {
            return None;
        }
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_alphanumeric() || c == '_' || c == '^' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some((self.chars[start..self.pos].iter().collect(), start))
    }
}

fn parse_poly_at(alg: &FreeAlgebra, cur: &mut Cursor<'_>) -> Result<Polynomial, ParseError> {
    let field = alg.field();
    let gens = alg.generators();
    let mut terms: Vec<(Monomial, FieldElement)> = Vec::new();
    let mut negative = cur.eat('-');
    loop {
        let mut coeff: i64 = 1;
        let mut letters: Vec<Letter> = Vec::new();
        if let Some((v, _)) = cur.integer() {
            coeff = (v % field.characteristic() as u64) as i64;
            if !cur.eat('*') && !matches!(cur.peek(), Some(c) if c.is_alphabetic() || c == '_') {
                // bare constant term
                push(&mut terms, field, negative, coeff, &letters, gens);
                if !next_sign(cur, &mut negative) {
                    break;
                }
                continue;
            }
        }
        loop {
            if let Some((name, at)) = cur.name() {
                match gens.lookup(&name) {
                    Some(l) => letters.push(l),
                    None => return Err(cur.error_at(at, alloc::format!("unknown generator `{name}`"))),
                }
            } else if let Some((v, at)) = cur.integer() {
                if v != 1 {
                    return Err(cur.error_at(at, "only `1` may appear as a factor"));
                }
            } else {
                return Err(cur.error_at(cur.pos, "expected a generator name"));
            }
            if !cur.eat('*') {
                break;
            }
        }
        push(&mut terms, field, negative, coeff, &letters, gens);
        if !next_sign(cur, &mut negative) {
            break;
        }
    }
    Ok(alg.polynomial(terms))
}

fn push(
    terms: &mut Vec<(Monomial, FieldElement)>,
    field: crate::field::PrimeField,
    negative: bool,
    coeff: i64,
    letters: &[Letter],
    gens: &GeneratorTable,
) {
    let c = field.element(if negative { -coeff } else { coeff });
    terms.push((Monomial::new(letters, gens), c));
}

fn next_sign(cur: &mut Cursor<'_>, negative: &mut bool) -> bool {
    if cur.eat('+') {
        *negative = false;
        true
    } else if cur.eat('-') {
        *negative = true;
        true
    } else {
        false
    }
}

/// Parses a polynomial; the whole input must be consumed.
pub fn parse_polynomial(alg: &FreeAlgebra, src: &str) -> Result<Polynomial, ParseError> {
    let mut cur = Cursor::new(src);
    let p = parse_poly_at(alg, &mut cur)?;
    if let Some(c) = cur.peek() {
        return Err(cur.error_at(cur.pos, alloc::format!("unexpected `{c}`")));
    }
    Ok(p)
}

/// Parses `[P1, ..., Pm]` into its components.
pub fn parse_components(alg: &FreeAlgebra, src: &str) -> Result<Vec<Polynomial>, ParseError> {
    let mut cur = Cursor::new(src);
    if !cur.eat('[') {
        return Err(cur.error_at(cur.pos, "expected `[`"));
    }
    let mut comps = Vec::new();
    if !cur.eat(']') {
        loop {
            comps.push(parse_poly_at(alg, &mut cur)?);
            if cur.eat(',') {
                continue;
            }
            if cur.eat(']') {
                break;
            }
            return Err(cur.error_at(cur.pos, "expected `,` or `]`"));
        }
    }
    if let Some(c) = cur.peek() {
        return Err(cur.error_at(cur.pos, alloc::format!("unexpected `{c}`")));
    }
    Ok(comps)
}

/// `Display` adapter printing a polynomial with generator names.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    gens: &'a GeneratorTable,
}

impl<'a> PolyDisplay<'a> {
    pub fn new(poly: &'a Polynomial, gens: &'a GeneratorTable) -> Self {
        PolyDisplay { poly, gens }
    }
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.poly.terms().iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let c = t.coeff.value();
            if t.monomial.is_one() {
                write!(f, "{c}")?;
                continue;
            }
            if c != 1 {
                write!(f, "{c} ")?;
            }
            write_word(f, t.monomial.letters(), self.gens)?;
        }
        Ok(())
    }
}

pub(crate) fn write_word(
    f: &mut impl fmt::Write,
    letters: &[Letter],
    gens: &GeneratorTable,
) -> fmt::Result {
    if letters.is_empty() {
        return f.write_str("1");
    }
    for (j, &l) in letters.iter().enumerate() {
        if j > 0 {
            f.write_char('*')?;
        }
        f.write_str(gens.name(l))?;
    }
    Ok(())
}

/// Word in `x*y*z` form.
pub fn word_to_string(m: &Monomial, gens: &GeneratorTable) -> String {
    let mut s = String::new();
    let _ = write_word(&mut s, m.letters(), gens);
    s
}

pub fn components_to_string(comps: &[Polynomial], gens: &GeneratorTable) -> String {
    let mut s = String::from("[");
    for (i, p) in comps.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&PolyDisplay::new(p, gens).to_string());
    }
    s.push(']');
    s
}
