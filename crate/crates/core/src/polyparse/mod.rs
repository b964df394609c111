//! Surface syntax for super-elements.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var ['^' nat] | '(' expr ')'
//! rational := int ['/' posint]
//! var    := 'x' nat | 'y' posnat | 'e' posnat
//! ```
//!
//! `eN` is the odd partner of the `N`-th even variable, counting `y`s first.

mod render;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::superalgebra::{Scalar, SuperElement, SuperMonomial, VariableContext};

pub use render::{render, render_monomial};

/// Longest accepted input, in bytes.
pub const MAX_INPUT_LEN: usize = 1 << 20;
/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 10_000;
/// Largest exponent of any single variable in an intermediate monomial.
pub const MAX_MONOMIAL_EXPONENT: u32 = 1_000_000;
/// Largest number of terms in any intermediate element.
pub const MAX_TERMS: usize = 200_000;
/// Deepest accepted parenthesis nesting.
pub const MAX_DEPTH: usize = 128;
/// Longest accepted integer literal, in digits.
pub const MAX_DIGITS: usize = 4096;

/// What went wrong; see [`ParseError`] for the position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    Expected(&'static str),
    ImplicitMultiplication,
    ZeroDenominator,
    LeadingZero,
    VariableOutOfRange { name: String, limit: String },
    OddPower(String),
    ExponentTooLarge,
    NumberTooLong,
    TooManyTerms,
    TooDeep,
    InputTooLong,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            Self::UnexpectedEnd => write!(f, "unexpected end of input"),
            Self::Expected(what) => write!(f, "expected {what}"),
            Self::ImplicitMultiplication => write!(f, "implicit multiplication; use '*'"),
            Self::ZeroDenominator => write!(f, "zero denominator"),
            Self::LeadingZero => write!(f, "variable index has a leading zero"),
            Self::VariableOutOfRange { name, limit } => {
                write!(f, "variable {name} out of range ({limit})")
            }
            Self::OddPower(name) => write!(f, "odd variable {name} raised to a power above 1"),
            Self::ExponentTooLarge => write!(f, "exponent exceeds the supported limit"),
            Self::NumberTooLong => write!(f, "integer literal too long"),
            Self::TooManyTerms => write!(f, "expression expands to too many terms"),
            Self::TooDeep => write!(f, "parentheses nested too deeply"),
            Self::InputTooLong => write!(f, "input exceeds {MAX_INPUT_LEN} bytes"),
        }
    }
}

/// A diagnostic with a 1-based line and column (columns count characters).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Parses `text` into an element over `ctx`.
pub fn parse(text: &str, ctx: &Arc<VariableContext>) -> Result<SuperElement, ParseError> {
    if text.len() > MAX_INPUT_LEN {
        return Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::InputTooLong,
        });
    }
    let mut p = Parser {
        src: text,
        pos: 0,
        ctx,
        depth: 0,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error(ParseErrorKind::Expected("an expression")));
    }
    let value = p.expr()?;
    p.skip_ws();
    match p.peek() {
        None => Ok(value),
        Some(')') => Err(p.error(ParseErrorKind::UnexpectedChar(')'))),
        Some(c) if c.is_ascii_alphanumeric() || c == '(' => Err(p.error(ParseErrorKind::ImplicitMultiplication)),
        Some(c) => Err(p.error(ParseErrorKind::UnexpectedChar(c))),
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    ctx: &'a Arc<VariableContext>,
    depth: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.bump();
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = before[line_start..].chars().count() + 1;
        ParseError { line, column, kind }
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            None => self.error(ParseErrorKind::UnexpectedEnd),
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c)),
        }
    }

    fn check_size(&self, a: &SuperElement, start: usize) -> Result<(), ParseError> {
        if a.len() > MAX_TERMS {
            return Err(self.error_at(start, ParseErrorKind::TooManyTerms));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<SuperElement, ParseError> {
        self.skip_ws();
        let mut negate = false;
        match self.peek() {
            Some('-') => {
                negate = true;
                self.bump();
            }
            Some('+') => {
                self.bump();
            }
            _ => {}
        }
        let start = self.pos;
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => Scalar::one(),
                Some('-') => -Scalar::one(),
                _ => return Ok(acc),
            };
            self.bump();
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            self.check_size(&acc, start)?;
        }
    }

    fn term(&mut self) -> Result<SuperElement, ParseError> {
        let start = self.pos;
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.bump();
                }
                _ => return Ok(acc),
            }
            let at = self.pos;
            let f = self.factor()?;
            if (acc.len() as u128) * (f.len() as u128) > (4 * MAX_TERMS) as u128 {
                return Err(self.error_at(start, ParseErrorKind::TooManyTerms));
            }
            if exponent_overflow(&acc, &f) {
                return Err(self.error_at(at, ParseErrorKind::ExponentTooLarge));
            }
            acc = &acc * &f;
            self.check_size(&acc, start)?;
        }
    }

    fn factor(&mut self) -> Result<SuperElement, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                if self.depth >= MAX_DEPTH {
                    return Err(self.error(ParseErrorKind::TooDeep));
                }
                self.bump();
                self.depth += 1;
                let inner = self.expr()?;
                self.depth -= 1;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(match self.peek() {
                        None => self.error(ParseErrorKind::Expected("')'")),
                        Some(c) if c.is_ascii_alphanumeric() || c == '(' => {
                            self.error(ParseErrorKind::ImplicitMultiplication)
                        }
                        Some(_) => self.error(ParseErrorKind::Expected("')'")),
                    });
                }
                self.bump();
                self.no_juxtaposition()?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let value = self.rational()?;
                Ok(SuperElement::constant(self.ctx, value))
            }
            Some('x' | 'y' | 'e') => self.variable(),
            _ => Err(self.unexpected()),
        }
    }

    /// Rejects `2x0`, `x0x1`, `(x0)(x1)` and similar.
    fn no_juxtaposition(&self) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_alphanumeric() || c == '(' => Err(self.error(ParseErrorKind::ImplicitMultiplication)),
            _ => Ok(()),
        }
    }

    fn digits(&mut self) -> Result<&str, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(match self.peek() {
                None => self.error(ParseErrorKind::UnexpectedEnd),
                Some(_) => self.error(ParseErrorKind::Expected("digits")),
            });
        }
        if self.pos - start > MAX_DIGITS {
            return Err(self.error_at(start, ParseErrorKind::NumberTooLong));
        }
        Ok(&self.src[start..self.pos])
    }

    fn rational(&mut self) -> Result<Scalar, ParseError> {
        let num: BigInt = self.digits()?.parse().expect("ascii digits");
        if self.peek() == Some('/') {
            self.bump();
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("ascii digits");
            if den.is_zero() {
                return Err(self.error_at(at, ParseErrorKind::ZeroDenominator));
            }
            self.no_juxtaposition()?;
            return Ok(Scalar::new(num, den));
        }
        self.no_juxtaposition()?;
        Ok(Scalar::from_integer(num))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let at = self.pos;
        let text = self.digits()?;
        if text.len() > 1 && text.starts_with('0') {
            return Err(self.error_at(at, ParseErrorKind::LeadingZero));
        }
        Ok(text.parse().unwrap_or(usize::MAX))
    }

    fn variable(&mut self) -> Result<SuperElement, ParseError> {
        let start = self.pos;
        let letter = self.bump().expect("peeked");
        let index = self.index()?;
        let name = format!("{letter}{}", &self.src[start + 1..self.pos]);
        let ctx = self.ctx;
        let out_of_range = |limit: String| {
            self.error_at(
                start,
                ParseErrorKind::VariableOutOfRange {
                    name: name.clone(),
                    limit,
                },
            )
        };
        let (mu, odd) = match letter {
            'x' if index <= ctx.n() => (ctx.x(index), false),
            'x' => return Err(out_of_range(format!("x0..x{}", ctx.n()))),
            'y' if (1..=ctx.k()).contains(&index) => (ctx.y(index), false),
            'y' => return Err(out_of_range(format!("y1..y{}", ctx.k()))),
            _ if (1..=ctx.num_vars()).contains(&index) => (index - 1, true),
            _ => return Err(out_of_range(format!("e1..e{}", ctx.num_vars()))),
        };
        let mut exponent = 1u32;
        self.skip_ws_inline();
        if self.peek() == Some('^') {
            self.bump();
            while matches!(self.peek(), Some(' ' | '\t')) {
                self.bump();
            }
            let at = self.pos;
            let text = self.digits()?;
            exponent = match text.parse::<u32>() {
                Ok(e) if e <= MAX_EXPONENT => e,
                _ => return Err(self.error_at(at, ParseErrorKind::ExponentTooLarge)),
            };
            if odd && exponent > 1 {
                return Err(self.error_at(start, ParseErrorKind::OddPower(name)));
            }
        }
        self.no_juxtaposition()?;
        let n = ctx.num_vars();
        let monomial = if odd {
            if exponent == 0 {
                SuperMonomial::one(ctx)
            } else {
                SuperMonomial::new(ctx, vec![0; n], vec![mu]).expect("index in range")
            }
        } else {
            let mut exps = vec![0; n];
            exps[mu] = exponent;
            SuperMonomial::new(ctx, exps, vec![]).expect("index in range")
        };
        Ok(SuperElement::from_monomial(ctx, monomial, Scalar::one()))
    }

    /// Whitespace between a variable and `^` is allowed, but only spaces and tabs.
    fn skip_ws_inline(&mut self) {
        let save = self.pos;
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.bump();
        }
        if self.peek() != Some('^') {
            self.pos = save;
        }
    }
}

fn exponent_overflow(a: &SuperElement, b: &SuperElement) -> bool {
    let max = |e: &SuperElement| {
        let n = e.context().num_vars();
        let mut out = vec![0u64; n];
        for (m, _) in e.terms() {
            for (o, &x) in out.iter_mut().zip(m.exps()) {
                *o = (*o).max(u64::from(x));
            }
        }
        out
    };
    max(a)
        .iter()
        .zip(max(b))
        .any(|(x, y)| x + y > u64::from(MAX_MONOMIAL_EXPONENT))
}
