//! Text syntax for maps in the variable `z`.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/" | <juxtaposition>) unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "z" | "(" expr ")"
//! ```
//!
//! Juxtaposition multiplies when the right operand starts with `z` or `(`,
//! so `2z^2`, `3(z+1)` and `(z+1)(z-1)` are accepted. Sums are brought to
//! a common denominator (`2z + 5/z` becomes `(2z^2 + 5)/z`) but common
//! factors of the final numerator and denominator are never cancelled:
//! such input is degenerate.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::poly::Poly;
use crate::ratmap::RationalMap;

const MAX_EXPONENT: u32 = 16;
const MAX_DEGREE: usize = 64;
const MAX_DEPTH: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnknownVariable(String),
    UnexpectedToken(&'static str),
    UnexpectedEnd,
    ExponentTooLarge,
    DegreeTooLarge,
    TooDeeplyNested,
    DivisionByZero,
    Empty,
}

/// A syntax error at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at offset {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable {v:?}, only z is allowed")
            }
            ParseErrorKind::UnexpectedToken(what) => write!(f, "unexpected {what}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::ExponentTooLarge => write!(f, "exponent larger than {MAX_EXPONENT}"),
            ParseErrorKind::DegreeTooLarge => {
                write!(f, "intermediate degree larger than {MAX_DEGREE}")
            }
            ParseErrorKind::TooDeeplyNested => write!(f, "nesting deeper than {MAX_DEPTH}"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::Empty => write!(f, "empty input"),
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Z,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> &'static str {
        match self {
            Tok::Num(_) => "number",
            Tok::Z => "variable z",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::End => "end of input",
        }
    }
}

fn tokenize(text: &str) -> core::result::Result<alloc::vec::Vec<(usize, Tok)>, ParseError> {
    let mut out = alloc::vec::Vec::new();
    let bytes: alloc::vec::Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut j = i;
                while j < bytes.len() && bytes[j].1.is_ascii_digit() {
                    j += 1;
                }
                let end = bytes.get(j).map_or(text.len(), |b| b.0);
                let n: BigInt = text[pos..end].parse().expect("digits parse");
                out.push((pos, Tok::Num(n)));
                i = j;
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].1.is_alphanumeric() || bytes[j].1 == '_') {
                    j += 1;
                }
                let end = bytes.get(j).map_or(text.len(), |b| b.0);
                let word = &text[pos..end];
                if word != "z" {
                    return Err(ParseError {
                        pos,
                        kind: ParseErrorKind::UnknownVariable(word.into()),
                    });
                }
                out.push((pos, Tok::Z));
                i = j;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

/// A quotient of polynomials, kept unreduced apart from common
/// denominators in sums.
#[derive(Clone, Debug)]
struct Frac<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> Frac<F> {
    fn poly(p: Poly<F>) -> Self {
        let one = Poly::constant(F::one(p.ctx()));
        Frac { num: p, den: one }
    }

    fn add(&self, other: &Self) -> Self {
        let g = self.den.gcd(&other.den);
        let a = other.den.exact_div(&g).expect("gcd divides");
        let b = self.den.exact_div(&g).expect("gcd divides");
        Frac {
            num: &(&self.num * &a) + &(&other.num * &b),
            den: &self.den * &a,
        }
    }

    fn neg(&self) -> Self {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        Frac {
            num: &self.num * &other.num,
            den: &self.den * &other.den,
        }
    }

    fn div(&self, other: &Self) -> Option<Self> {
        if other.num.is_zero() {
            return None;
        }
        Some(Frac {
            num: &self.num * &other.den,
            den: &self.den * &other.num,
        })
    }

    fn pow(&self, e: u32) -> Self {
        Frac {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

type PResult<T> = core::result::Result<T, ParseError>;

fn check_degree<F: Field>(f: Frac<F>, pos: usize) -> PResult<Frac<F>> {
    let deg = f.num.degree().unwrap_or(0).max(f.den.degree().unwrap_or(0));
    if deg > MAX_DEGREE {
        return Err(ParseError {
            pos,
            kind: ParseErrorKind::DegreeTooLarge,
        });
    }
    Ok(f)
}

struct Parser<'a, F: Field> {
    toks: &'a [(usize, Tok)],
    i: usize,
    depth: usize,
    ctx: F::Ctx,
}

impl<F: Field> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].1
    }

    fn pos(&self) -> usize {
        self.toks[self.i].0
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            t => ParseErrorKind::UnexpectedToken(t.describe()),
        };
        ParseError {
            pos: self.pos(),
            kind,
        }
    }

    fn descend(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(ParseError {
                pos: self.pos(),
                kind: ParseErrorKind::TooDeeplyNested,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> PResult<Frac<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.i += 1;
                    let pos = self.pos();
                    acc = check_degree(acc.add(&self.term()?), pos)?;
                }
                Tok::Minus => {
                    self.i += 1;
                    let pos = self.pos();
                    acc = check_degree(acc.add(&self.term()?.neg()), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Frac<F>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.i += 1;
                    let pos = self.pos();
                    acc = check_degree(acc.mul(&self.unary()?), pos)?;
                }
                Tok::Slash => {
                    self.i += 1;
                    let pos = self.pos();
                    let rhs = self.unary()?;
                    let q = acc.div(&rhs).ok_or(ParseError {
                        pos,
                        kind: ParseErrorKind::DivisionByZero,
                    })?;
                    acc = check_degree(q, pos)?;
                }
                Tok::Z | Tok::LParen => {
                    let pos = self.pos();
                    acc = check_degree(acc.mul(&self.unary()?), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<Frac<F>> {
        self.descend()?;
        let out = self.unary_inner();
        self.depth -= 1;
        out
    }

    fn unary_inner(&mut self) -> PResult<Frac<F>> {
        match self.peek() {
            Tok::Minus => {
                self.i += 1;
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.i += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> PResult<Frac<F>> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.i += 1;
        let pos = self.pos();
        let Tok::Num(n) = self.peek().clone() else {
            return Err(self.unexpected());
        };
        self.i += 1;
        let e = u32::try_from(&n)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or(ParseError {
                pos,
                kind: ParseErrorKind::ExponentTooLarge,
            })?;
        check_degree(base.pow(e), pos)
    }

    fn atom(&mut self) -> PResult<Frac<F>> {
        match self.peek().clone() {
            Tok::Num(n) => {
                self.i += 1;
                Ok(Frac::poly(Poly::constant(F::from_bigint(&self.ctx, &n))))
            }
            Tok::Z => {
                self.i += 1;
                Ok(Frac::poly(Poly::z(&self.ctx)))
            }
            Tok::LParen => {
                self.i += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected());
                }
                self.i += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Parse a rational function of `z` over the field described by `ctx`,
/// returning its (unreduced) numerator and denominator.
pub fn parse_fraction<F: Field>(text: &str, ctx: &F::Ctx) -> Result<(Poly<F>, Poly<F>)> {
    let toks = tokenize(text)?;
    if toks.len() == 1 {
        return Err(ParseError {
            pos: 0,
            kind: ParseErrorKind::Empty,
        }
        .into());
    }
    let mut p = Parser::<F> {
        toks: &toks,
        i: 0,
        depth: 0,
        ctx: ctx.clone(),
    };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected().into());
    }
    if f.den.is_zero() {
        return Err(ParseError {
            pos: 0,
            kind: ParseErrorKind::DivisionByZero,
        }
        .into());
    }
    Ok((f.num, f.den))
}

/// Parse a degree-2 map. Fails on syntax errors (with a byte offset), on
/// numerator or denominator of the wrong degree, and on common roots.
pub fn parse_map<F: Field>(text: &str, ctx: &F::Ctx) -> Result<RationalMap<F>> {
    let (num, den) = parse_fraction(text, ctx)?;
    let deg = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
    if deg != 2 {
        return Err(Error::DegreeNotTwo(deg));
    }
    RationalMap::new(num, den)
}

/// Canonical text for a map: descending powers with explicit `*`, and
/// parentheses only where the grammar needs them.
pub fn format_map<F: Field>(m: &RationalMap<F>) -> String {
    let num = m.num().format_with("z");
    let den = m.den();
    if den.degree() == Some(0) && den.coeff(0).is_one() {
        return num;
    }
    let num = if m.num().term_count() > 1 {
        alloc::format!("({num})")
    } else {
        num
    };
    let bare = den.term_count() == 1 && {
        let lead = den.leading().expect("denominator is nonzero");
        den.degree() == Some(0) || lead.is_one()
    };
    let den_text = den.format_with("z");
    if bare && !den_text.starts_with('-') {
        alloc::format!("{num}/{den_text}")
    } else {
        alloc::format!("{num}/({den_text})")
    }
}
