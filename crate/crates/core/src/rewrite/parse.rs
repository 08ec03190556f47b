//! Infix surface syntax for expressions and rules.
//!
//! ```text
//! rule    := expr "=>" expr
//! expr    := term (("+" | "-") term)*
//! term    := unary (("*" | "/") unary)*
//! unary   := ("-" | "+") unary | primary
//! primary := number | "inf" | "nan" | ident | "sqrt" "(" expr ")" | "(" expr ")"
//! ```
//!
//! A sign written directly in front of a literal belongs to the literal, so
//! `-0` is the constant negative zero and `+0` the positive one.

use std::fmt;

use thiserror::Error;

use super::{Expr, RewriteRule};
use crate::szval::SzValue;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at column {column}{}", render_found(.found))]
pub struct ParseError {
    pub message: String,
    /// 1-based character column of the offending token.
    pub column: usize,
    pub found: Option<String>,
}

fn render_found(found: &Option<String>) -> String {
    match found {
        Some(tok) => format!(" (found `{tok}`)"),
        None => " (found end of input)".to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(s) | Tok::Ident(s) => f.write_str(s),
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Arrow => f.write_str("=>"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            out.push((tok, column));
            i += 1;
        } else if c == '=' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, column));
            i += 2;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            if i < chars.len() && matches!(chars[i], 'e' | 'E') {
                let mut j = i + 1;
                if j < chars.len() && matches!(chars[j], '+' | '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push((Tok::Number(chars[start..i].iter().collect()), column));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), column));
        } else {
            return Err(ParseError {
                message: "unexpected character".to_string(),
                column,
                found: Some(c.to_string()),
            });
        }
    }
    Ok(out)
}

fn is_special_word(s: &str) -> bool {
    matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "nan")
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
            end_column: src.chars().count() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn error(&self, message: &str) -> ParseError {
        match self.toks.get(self.pos) {
            Some((tok, column)) => ParseError {
                message: message.to_string(),
                column: *column,
                found: Some(tok.to_string()),
            },
            None => ParseError {
                message: message.to_string(),
                column: self.end_column,
                found: None,
            },
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs.add(self.term()?);
            } else if self.eat(&Tok::Minus) {
                lhs = lhs.sub(self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = lhs.mul(self.unary()?);
            } else if self.eat(&Tok::Slash) {
                lhs = lhs.div(self.unary()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn literal_follows(&self) -> bool {
        match self.peek_at(1) {
            Some(Tok::Number(_)) => true,
            Some(Tok::Ident(s)) => is_special_word(s),
            _ => false,
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(sign @ (Tok::Minus | Tok::Plus)) if self.literal_follows() => {
                let prefix = if *sign == Tok::Minus { "-" } else { "+" };
                self.pos += 1;
                self.literal(prefix)
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.primary(),
        }
    }

    fn literal(&mut self, prefix: &str) -> Result<Expr, ParseError> {
        let text = match self.peek() {
            Some(Tok::Number(s)) | Some(Tok::Ident(s)) => format!("{prefix}{s}"),
            _ => return Err(self.error("expected a number")),
        };
        let value: SzValue = text
            .parse()
            .map_err(|_| self.error("invalid numeric literal"))?;
        self.pos += 1;
        Ok(Expr::Constant(value))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Number(_)) => self.literal(""),
            Some(Tok::Ident(name)) if is_special_word(&name) => self.literal(""),
            Some(Tok::Ident(name)) if name == "sqrt" => {
                self.pos += 1;
                self.expect(Tok::LParen)?;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner.sqrt())
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Variable(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("expected an operand")),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected token")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

/// Parses `LHS => RHS`. Variables are declared in order of first
/// occurrence, scanning the left side first.
pub fn parse_rule(src: &str) -> Result<RewriteRule, ParseError> {
    let mut p = Parser::new(src)?;
    let lhs = p.expr()?;
    p.expect(Tok::Arrow)?;
    let rhs = p.expr()?;
    p.finish()?;
    Ok(RewriteRule::inferred(lhs, rhs))
}
