//! Textual syntax for connected sums.
//!
//! ```text
//! expr  := term { "#" term }
//! term  := [ count "*" ] block
//! block := "X(" int "," int ")" | "Y(" int ")" | "K3" | "S1xS3" | "CP2bar"
//!        | "Sigma(" int ")xSigma(" int ")"
//!        | "Block{" key "=" value { "," key "=" value } "}"
//! ```
//!
//! Custom blocks take `chi`, `tau`, `b1`, `bplus` (required), the flags
//! `spin`, `sc`, `symplectic`, `nonessential` (default false), and optional
//! `name` (default `custom`) and `simvol` (a nonnegative rational). `bminus`
//! is derived from `bplus − tau`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::Range;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::blocks::{make_block, BlockError, BlockKind, BlockSpec, CustomBlock, InvariantVector, Violation, MAX_PARAM};
use crate::exactnum::{rational_to_string, Rational};
use crate::sums::ManifoldExpr;

/// Longest integer literal considered before reporting it out of range.
const MAX_LITERAL_DIGITS: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown block {name:?} at byte {offset}")]
    UnknownBlock { offset: usize, name: String },
    #[error("invalid parameter at byte {offset}: {message}")]
    InvalidParameter { offset: usize, message: String },
    #[error("invariant violation at byte {offset}: {violations:?}")]
    InvariantViolation { offset: usize, violations: Vec<Violation> },
    #[error("empty expression")]
    EmptyExpression,
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::UnknownBlock { offset, .. }
            | ParseError::InvalidParameter { offset, .. }
            | ParseError::InvariantViolation { offset, .. } => Some(*offset),
            ParseError::EmptyExpression => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Punct(char),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    tok: Tok,
    span: Range<usize>,
}

fn syntax(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { offset, message: message.into() }
}

fn tokenize(input: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(input[start..i].to_string()), span: start..i });
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Int(input[start..i].to_string()), span: start..i });
        } else if b"()#*,{}=/-".contains(&c) {
            out.push(Token { tok: Tok::Punct(c as char), span: i..i + 1 });
            i += 1;
        } else {
            let ch = input[i..].chars().next().unwrap_or('\u{fffd}');
            return Err(syntax(i, alloc::format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

/// One parsed term with its source location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceTerm {
    pub span: Range<usize>,
    pub count: u64,
    pub block: BlockSpec,
}

/// A parsed expression that keeps the written order and source spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceExpr {
    pub raw: String,
    pub terms: Vec<SourceTerm>,
}

impl SourceExpr {
    pub fn to_expr(&self) -> ManifoldExpr {
        let mut terms = self.terms.iter();
        let first = terms.next().expect("parsed expressions are nonempty");
        let mut e = ManifoldExpr::single(first.block.clone()).with(first.block.clone(), first.count - 1);
        for t in terms {
            e = e.with(t.block.clone(), t.count);
        }
        e
    }
}

struct Parser<'a> {
    toks: &'a [Token],
    pos: usize,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Token> {
        self.toks.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.span.start)
    }

    fn next(&mut self) -> Option<&'a Token> {
        let t = self.toks.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn describe(t: Option<&Token>) -> String {
        match t {
            None => String::from("end of input"),
            Some(Token { tok: Tok::Ident(s), .. }) => alloc::format!("{s:?}"),
            Some(Token { tok: Tok::Int(s), .. }) => alloc::format!("integer {s}"),
            Some(Token { tok: Tok::Punct(c), .. }) => alloc::format!("{c:?}"),
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<usize, ParseError> {
        match self.peek() {
            Some(Token { tok: Tok::Punct(p), span }) if *p == c => {
                self.pos += 1;
                Ok(span.end)
            }
            other => Err(syntax(self.offset(), alloc::format!("expected {c:?}, found {}", Self::describe(other)))),
        }
    }

    fn eat_punct(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Punct(p), .. }) if *p == c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) if s == name => {
                self.pos += 1;
                Ok(())
            }
            other => Err(syntax(self.offset(), alloc::format!("expected {name:?}, found {}", Self::describe(other)))),
        }
    }

    /// A signed integer literal.
    fn signed_int(&mut self) -> Result<(BigInt, usize), ParseError> {
        let start = self.offset();
        let negative = self.eat_punct('-');
        match self.next() {
            Some(Token { tok: Tok::Int(digits), .. }) => {
                let trimmed = digits.trim_start_matches('0');
                if trimmed.len() > MAX_LITERAL_DIGITS {
                    return Err(ParseError::InvalidParameter {
                        offset: start,
                        message: String::from("integer literal out of range"),
                    });
                }
                let v: BigInt = digits.parse().map_err(|_| syntax(start, "malformed integer"))?;
                Ok((if negative { -v } else { v }, start))
            }
            other => Err(syntax(
                if negative { start + 1 } else { start },
                alloc::format!("expected integer, found {}", Self::describe(other)),
            )),
        }
    }

    /// A nonnegative parameter bounded by the catalogue maximum.
    fn param(&mut self, what: &str) -> Result<u64, ParseError> {
        let (v, offset) = self.signed_int()?;
        if v.sign() == num_bigint::Sign::Minus {
            return Err(ParseError::InvalidParameter {
                offset,
                message: alloc::format!("{what} must be nonnegative, got {v}"),
            });
        }
        match v.to_u64() {
            Some(x) if x <= MAX_PARAM => Ok(x),
            _ => Err(ParseError::InvalidParameter {
                offset,
                message: alloc::format!("{what} = {v} exceeds the supported maximum {MAX_PARAM}"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Vec<SourceTerm>, ParseError> {
        let mut terms = alloc::vec![self.term()?];
        while self.eat_punct('#') {
            terms.push(self.term()?);
        }
        if let Some(t) = self.peek() {
            return Err(syntax(t.span.start, alloc::format!("expected '#', found {}", Self::describe(Some(t)))));
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<SourceTerm, ParseError> {
        let start = self.offset();
        let count = if matches!(
            self.peek(),
            Some(Token { tok: Tok::Int(_), .. }) | Some(Token { tok: Tok::Punct('-'), .. })
        ) {
            let count = self.param("summand count")?;
            if count == 0 {
                return Err(ParseError::InvalidParameter {
                    offset: start,
                    message: String::from("summand count must be positive"),
                });
            }
            self.expect_punct('*')?;
            count
        } else {
            1
        };
        let (block, end) = self.block()?;
        Ok(SourceTerm { span: start..end, count, block })
    }

    fn block(&mut self) -> Result<(BlockSpec, usize), ParseError> {
        let offset = self.offset();
        let name = match self.next() {
            Some(Token { tok: Tok::Ident(s), .. }) => s.as_str(),
            other => return Err(syntax(offset, alloc::format!("expected a block, found {}", Self::describe(other)))),
        };
        let wrap = |r: Result<BlockSpec, BlockError>| -> Result<BlockSpec, ParseError> {
            r.map_err(|e| match e {
                BlockError::InvalidParameter(message) => ParseError::InvalidParameter { offset, message },
                BlockError::InvariantViolation(violations) => ParseError::InvariantViolation { offset, violations },
            })
        };
        let last = self.toks[self.pos - 1].span.end;
        match name {
            "X" => {
                self.expect_punct('(')?;
                let m = self.param("Gompf m")?;
                self.expect_punct(',')?;
                let n = self.param("Gompf n")?;
                let end = self.expect_punct(')')?;
                Ok((wrap(BlockSpec::gompf(m, n))?, end))
            }
            "Y" => {
                self.expect_punct('(')?;
                let ell = self.param("homotopy K3 index")?;
                let end = self.expect_punct(')')?;
                Ok((wrap(BlockSpec::homotopy_k3(ell))?, end))
            }
            "Sigma" => {
                self.expect_punct('(')?;
                let g = self.param("surface genus g")?;
                self.expect_punct(')')?;
                // "xSigma" lexes as one identifier unless spaced out
                match self.peek() {
                    Some(Token { tok: Tok::Ident(s), .. }) if s == "xSigma" => self.pos += 1,
                    _ => {
                        self.expect_ident("x")?;
                        self.expect_ident("Sigma")?;
                    }
                }
                self.expect_punct('(')?;
                let h = self.param("surface genus h")?;
                let end = self.expect_punct(')')?;
                Ok((wrap(BlockSpec::surface_product(g, h))?, end))
            }
            "K3" => Ok((BlockSpec::k3(), last)),
            "S1xS3" => Ok((BlockSpec::s1xs3(), last)),
            "CP2bar" => Ok((BlockSpec::cp2bar(), last)),
            "Block" => self.custom(offset),
            other => Err(ParseError::UnknownBlock { offset, name: other.to_string() }),
        }
    }

    fn custom(&mut self, offset: usize) -> Result<(BlockSpec, usize), ParseError> {
        const KEYS: [&str; 10] =
            ["name", "chi", "tau", "b1", "bplus", "spin", "sc", "symplectic", "nonessential", "simvol"];
        let mut name: Option<String> = None;
        let mut ints: [Option<i128>; 4] = [None; 4];
        let mut flags: [Option<bool>; 4] = [None; 4];
        let mut simvol: Option<Rational> = None;
        self.expect_punct('{')?;
        loop {
            let key_offset = self.offset();
            let key = match self.next() {
                Some(Token { tok: Tok::Ident(s), .. }) => s.as_str(),
                other => return Err(syntax(key_offset, alloc::format!("expected a key, found {}", Self::describe(other)))),
            };
            let Some(idx) = KEYS.iter().position(|k| *k == key) else {
                return Err(ParseError::InvalidParameter {
                    offset: key_offset,
                    message: alloc::format!("unknown custom block key {key:?}"),
                });
            };
            self.expect_punct('=')?;
            let duplicate = match idx {
                0 => name.is_some(),
                1..=4 => ints[idx - 1].is_some(),
                5..=8 => flags[idx - 5].is_some(),
                _ => simvol.is_some(),
            };
            if duplicate {
                return Err(syntax(key_offset, alloc::format!("duplicate key {key:?}")));
            }
            match idx {
                0 => {
                    let vo = self.offset();
                    match self.next() {
                        Some(Token { tok: Tok::Ident(s), .. }) => name = Some(s.clone()),
                        other => return Err(syntax(vo, alloc::format!("expected a name, found {}", Self::describe(other)))),
                    }
                }
                1..=4 => {
                    let (v, vo) = self.signed_int()?;
                    let v = v.to_i128().ok_or_else(|| ParseError::InvalidParameter {
                        offset: vo,
                        message: String::from("integer literal out of range"),
                    })?;
                    ints[idx - 1] = Some(v);
                }
                5..=8 => {
                    let vo = self.offset();
                    flags[idx - 5] = Some(match self.next() {
                        Some(Token { tok: Tok::Ident(s), .. }) if s == "true" => true,
                        Some(Token { tok: Tok::Ident(s), .. }) if s == "false" => false,
                        other => {
                            return Err(syntax(vo, alloc::format!("expected true or false, found {}", Self::describe(other))))
                        }
                    });
                }
                _ => {
                    let (num, vo) = self.signed_int()?;
                    let den = if self.eat_punct('/') { self.signed_int()?.0 } else { BigInt::from(1) };
                    if den.sign() != num_bigint::Sign::Plus {
                        return Err(ParseError::InvalidParameter {
                            offset: vo,
                            message: String::from("simvol denominator must be positive"),
                        });
                    }
                    simvol = Some(Rational::new(num, den));
                }
            }
            if self.eat_punct(',') {
                continue;
            }
            let end = self.expect_punct('}')?;
            let missing: Vec<&str> = (0..4).filter(|i| ints[*i].is_none()).map(|i| KEYS[i + 1]).collect();
            if !missing.is_empty() {
                return Err(ParseError::InvalidParameter {
                    offset,
                    message: alloc::format!("custom block is missing {}", missing.join(", ")),
                });
            }
            let [chi, tau, b1, b_plus] = ints.map(|v| v.unwrap_or(0));
            let [spin, simply_connected, symplectic, nonessential] = flags.map(|v| v.unwrap_or(false));
            let kind = BlockKind::Custom(CustomBlock {
                name: name.unwrap_or_else(|| String::from("custom")),
                iv: InvariantVector {
                    chi,
                    tau,
                    b1,
                    b_plus,
                    b_minus: b_plus - tau,
                    spin,
                    simply_connected,
                    symplectic,
                    nonessential,
                    orientable: true,
                },
                simplicial_volume: simvol,
            });
            let block = make_block(kind).map_err(|e| match e {
                BlockError::InvalidParameter(message) => ParseError::InvalidParameter { offset, message },
                BlockError::InvariantViolation(violations) => ParseError::InvariantViolation { offset, violations },
            })?;
            return Ok((block, end));
        }
    }
}

/// Parses an expression, keeping source spans.
pub fn parse_source(input: &str) -> Result<SourceExpr, ParseError> {
    let toks = tokenize(input)?;
    if toks.is_empty() {
        return Err(ParseError::EmptyExpression);
    }
    let mut p = Parser { toks: &toks, pos: 0, end: input.len() };
    let terms = p.expr()?;
    Ok(SourceExpr { raw: input.to_string(), terms })
}

pub fn parse(input: &str) -> Result<ManifoldExpr, ParseError> {
    parse_source(input).map(|s| s.to_expr())
}

/// Parses raw bytes; invalid UTF-8 is a syntax error at the first bad byte.
pub fn parse_bytes(input: &[u8]) -> Result<ManifoldExpr, ParseError> {
    match core::str::from_utf8(input) {
        Ok(s) => parse(s),
        Err(e) => Err(syntax(e.valid_up_to(), "invalid UTF-8")),
    }
}

fn write_block(out: &mut impl fmt::Write, b: &BlockSpec) -> fmt::Result {
    match b.kind() {
        BlockKind::Gompf { m, n } => write!(out, "X({m},{n})"),
        BlockKind::HomotopyK3 { ell } => write!(out, "Y({ell})"),
        BlockKind::K3 => out.write_str("K3"),
        BlockKind::SurfaceProduct { g, h } => write!(out, "Sigma({g})xSigma({h})"),
        BlockKind::S1xS3 => out.write_str("S1xS3"),
        BlockKind::CP2bar => out.write_str("CP2bar"),
        BlockKind::Custom(c) => {
            let iv = &c.iv;
            write!(
                out,
                "Block{{name={}, chi={}, tau={}, b1={}, bplus={}, spin={}, sc={}, symplectic={}, nonessential={}",
                c.name, iv.chi, iv.tau, iv.b1, iv.b_plus, iv.spin, iv.simply_connected, iv.symplectic, iv.nonessential
            )?;
            if let Some(v) = &c.simplicial_volume {
                write!(out, ", simvol={}", rational_to_string(v))?;
            }
            out.write_str("}")
        }
    }
}

/// Canonical text: blocks in catalogue order, `k*` prefixes, `" # "` separators.
pub fn pretty(e: &ManifoldExpr) -> String {
    let mut s = String::new();
    for (i, (b, k)) in e.summands().enumerate() {
        if i > 0 {
            s.push_str(" # ");
        }
        if k > 1 {
            let _ = write!(s, "{k}*");
        }
        let _ = write_block(&mut s, b);
    }
    s
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&pretty(self))
    }
}

impl fmt::Display for BlockSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_block(f, self)
    }
}
