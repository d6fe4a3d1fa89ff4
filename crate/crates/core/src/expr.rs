//! Text syntax for basis expressions.
//!
//! ```text
//! sum    := "0" | term ("+" term)*
//! term   := letter list
//! letter := "S^" | "S_" | "Sq^" | "Sq_" | "xi" | "xi_"
//! list   := "[" (int ("," int)*)? "]"
//! ```
//!
//! Whitespace between tokens is ignored. Repeated terms cancel in pairs.

use crate::composition::{Composition, ExponentVector};
use crate::error::{Error, Result};
use crate::linear::{Basis, F2Sum};

/// A parsed expression. `0` carries no basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Zero,
    Sum(F2Sum),
    Milnor(F2Sum<ExponentVector>),
}

impl Expr {
    pub fn basis(&self) -> Option<Basis> {
        match self {
            Expr::Zero => None,
            Expr::Sum(s) => Some(s.basis()),
            Expr::Milnor(_) => Some(Basis::Milnor),
        }
    }

    /// The composition-indexed sum, reading `0` in `basis`.
    pub fn into_sum(self, basis: Basis) -> Result<F2Sum> {
        match self {
            Expr::Zero => Ok(F2Sum::zero(basis)),
            Expr::Sum(s) if s.basis() == basis => Ok(s),
            Expr::Sum(s) => Err(Error::BasisMismatch {
                left: basis,
                right: s.basis(),
            }),
            Expr::Milnor(_) => Err(Error::BasisMismatch {
                left: basis,
                right: Basis::Milnor,
            }),
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Zero => f.write_str("0"),
            Expr::Sum(s) => write!(f, "{s}"),
            Expr::Milnor(s) => write!(f, "{s}"),
        }
    }
}

struct Cursor {
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(src: &str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n]
                .iter()
                .copied()
                .eq(s.chars())
        {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn letter(&mut self) -> Result<Basis> {
        // longest prefixes first
        for (text, basis) in [
            ("Sq^", Basis::Admissible),
            ("Sq_", Basis::DualAdmissible),
            ("S^", Basis::Free),
            ("S_", Basis::Dual),
            ("xi_", Basis::Milnor),
            ("xi", Basis::Milnor),
        ] {
            if self.eat(text) {
                return Ok(basis);
            }
        }
        self.error("expected a basis letter (S^, S_, Sq^, Sq_, xi)")
    }

    fn number(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.error("integer out of range")
        })
    }

    /// Returns the entries and the column of each entry.
    fn list(&mut self) -> Result<Vec<(u32, usize)>> {
        self.skip_ws();
        if !self.eat("[") {
            return self.error("expected '['");
        }
        let mut out = Vec::new();
        self.skip_ws();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            self.skip_ws();
            let col = self.pos + 1;
            out.push((self.number()?, col));
            self.skip_ws();
            if self.eat("]") {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.error("expected ',' or ']'");
            }
        }
    }
}

fn composition_from(entries: Vec<(u32, usize)>) -> Result<Composition> {
    if let Some(&(_, column)) = entries.iter().find(|(e, _)| *e == 0) {
        return Err(Error::Parse {
            column,
            message: "composition entries must be positive".into(),
        });
    }
    Composition::new(entries.into_iter().map(|(e, _)| e).collect())
}

/// Parses a bracketed list such as `[4,2]` as a composition.
pub fn parse_composition(text: &str) -> Result<Composition> {
    let mut cur = Cursor::new(text);
    let entries = cur.list()?;
    cur.skip_ws();
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    composition_from(entries)
}

/// Parses a bracketed list such as `[0,2]` as an exponent vector.
pub fn parse_exponents(text: &str) -> Result<ExponentVector> {
    let mut cur = Cursor::new(text);
    let entries = cur.list()?;
    cur.skip_ws();
    if !cur.at_end() {
        return cur.error("unexpected trailing input");
    }
    Ok(ExponentVector::new(
        entries.into_iter().map(|(e, _)| e).collect(),
    ))
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    if cur.eat("0") {
        cur.skip_ws();
        if !cur.at_end() {
            return cur.error("unexpected input after 0");
        }
        return Ok(Expr::Zero);
    }
    let mut basis: Option<Basis> = None;
    let mut comps = Vec::new();
    let mut milnor = Vec::new();
    loop {
        cur.skip_ws();
        let letter_col = cur.pos + 1;
        let b = cur.letter()?;
        match basis {
            None => basis = Some(b),
            Some(prev) if prev != b => {
                return Err(Error::Parse {
                    column: letter_col,
                    message: format!("mixed bases {prev} and {b} in one sum"),
                })
            }
            _ => {}
        }
        let entries = cur.list()?;
        if b == Basis::Milnor {
            milnor.push(ExponentVector::new(
                entries.into_iter().map(|(e, _)| e).collect(),
            ));
        } else {
            comps.push(composition_from(entries)?);
        }
        cur.skip_ws();
        if cur.at_end() {
            break;
        }
        if !cur.eat("+") {
            return cur.error("expected '+' or end of input");
        }
    }
    Ok(match basis.expect("at least one term") {
        Basis::Milnor => Expr::Milnor(F2Sum::from_terms(Basis::Milnor, milnor)),
        b => Expr::Sum(F2Sum::from_terms(b, comps)),
    })
}
