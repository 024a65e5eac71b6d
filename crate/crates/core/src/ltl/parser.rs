//! Recursive-descent parser for the LTL concrete syntax.
//!
//! Binding from weakest to strongest: `->` (right associative), `|`, `&`,
//! the prefix operators `! X F G`, then `U` and `R` (right associative).
//! The right operand of `U`/`R` may itself start with a prefix operator, so
//! `a U X b` parses as `a U (X b)` while `X a U b` is `X (a U b)`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::LtlFormula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("unexpected `{0}`")]
    UnexpectedToken(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Not,
    And,
    Or,
    Implies,
    Next,
    Eventually,
    Globally,
    Until,
    Release,
    True,
    False,
    Ident(String),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Not => "!".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Implies => "->".into(),
            Tok::Next => "X".into(),
            Tok::Eventually => "F".into(),
            Tok::Globally => "G".into(),
            Tok::Until => "U".into(),
            Tok::Release => "R".into(),
            Tok::True => "true".into(),
            Tok::False => "false".into(),
            Tok::Ident(s) => s.clone(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\'' || c == '.'
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '!' => Tok::Not,
            '&' => Tok::And,
            '|' => Tok::Or,
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => Tok::Implies,
                    _ => {
                        return Err(ParseError {
                            offset: i,
                            kind: ParseErrorKind::UnexpectedChar('-'),
                        })
                    }
                }
            }
            c if is_ident_char(c) => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !is_ident_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                let word = &text[i..end];
                out.push((
                    i,
                    match word {
                        "X" => Tok::Next,
                        "F" => Tok::Eventually,
                        "G" => Tok::Globally,
                        "U" => Tok::Until,
                        "R" => Tok::Release,
                        "true" => Tok::True,
                        "false" => Tok::False,
                        _ => Tok::Ident(word.to_string()),
                    },
                ));
                continue;
            }
            other => {
                return Err(ParseError {
                    offset: i,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        };
        chars.next();
        out.push((i, tok));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn error_here(&self) -> ParseError {
        ParseError {
            offset: self.offset(),
            kind: match self.peek() {
                Some(t) => ParseErrorKind::UnexpectedToken(t.text()),
                None => ParseErrorKind::UnexpectedEnd,
            },
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn implication(&mut self) -> Result<LtlFormula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Implies) {
            let rhs = self.implication()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<LtlFormula, ParseError> {
        let mut lhs = self.conjunction()?;
        while self.eat(&Tok::Or) {
            lhs = lhs.or(self.conjunction()?);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<LtlFormula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<LtlFormula, ParseError> {
        let wrap: fn(Box<LtlFormula>) -> LtlFormula = match self.peek() {
            Some(Tok::Not) => LtlFormula::Not,
            Some(Tok::Next) => LtlFormula::Next,
            Some(Tok::Eventually) => LtlFormula::Eventually,
            Some(Tok::Globally) => LtlFormula::Globally,
            _ => return self.binary_temporal(),
        };
        self.pos += 1;
        Ok(wrap(Box::new(self.unary()?)))
    }

    fn binary_temporal(&mut self) -> Result<LtlFormula, ParseError> {
        let lhs = self.primary()?;
        if self.eat(&Tok::Until) {
            return Ok(lhs.until(self.unary()?));
        }
        if self.eat(&Tok::Release) {
            return Ok(lhs.release(self.unary()?));
        }
        Ok(lhs)
    }

    fn primary(&mut self) -> Result<LtlFormula, ParseError> {
        let f = match self.peek() {
            Some(Tok::True) => LtlFormula::True,
            Some(Tok::False) => LtlFormula::False,
            Some(Tok::Ident(name)) => LtlFormula::Atom(name.clone()),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.implication()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error_here());
                }
                return Ok(inner);
            }
            _ => return Err(self.error_here()),
        };
        self.pos += 1;
        Ok(f)
    }
}

/// Parses LTL concrete syntax without checking atoms against an alphabet
/// (see [`LtlFormula::parse`] for that).
pub fn parse(text: &str) -> Result<LtlFormula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
    };
    let f = p.implication()?;
    if p.pos != p.toks.len() {
        return Err(p.error_here());
    }
    Ok(f)
}
