use thiserror::Error;

use crate::rat::{self, Rat};
use crate::typespace::{NatureSpace, Player};

use super::Expr;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("belief threshold {0} outside [0,1] at byte {1}")]
    ThresholdOutOfRange(String, usize),
    #[error("unknown nature event {0:?}")]
    UnknownNatureEvent(String),
}

/// Recursive-descent parser for the grammar
///
/// ```text
/// expr     := "nat(" name ")" | "not" expr | "and(" expr ("," expr)* ")"
///           | "or(" expr ("," expr)* ")" | "B[" player "," rational "](" expr ")"
/// rational := int "/" posint | int
/// ```
///
/// Whitespace insensitive. `or` is desugared at construction.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != p.text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(expr)
}

/// Parses and additionally resolves every nature-event name against the
/// space's registry, rejecting unknown names.
pub fn parse_for_space(text: &str, nature: &NatureSpace) -> Result<Expr, ParseError> {
    let expr = parse(text)?;
    check_events(&expr, nature)?;
    Ok(expr)
}

fn check_events(expr: &Expr, nature: &NatureSpace) -> Result<(), ParseError> {
    match expr {
        Expr::Nat(name) => {
            if nature.events().contains_key(name) {
                Ok(())
            } else {
                Err(ParseError::UnknownNatureEvent(name.clone()))
            }
        }
        Expr::Not(e) | Expr::Bel(_, _, e) => check_events(e, nature),
        Expr::And(es) => es.iter().try_for_each(|e| check_events(e, nature)),
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an identifier"));
        }
        Ok(String::from_utf8_lossy(&self.text[start..self.pos]).into_owned())
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        let bytes = kw.as_bytes();
        if self.text[self.pos..].starts_with(bytes) {
            let after = self.pos + bytes.len();
            let boundary = self
                .text
                .get(after)
                .is_none_or(|c| !(c.is_ascii_alphanumeric() || *c == b'_'));
            if boundary {
                self.pos = after;
                return true;
            }
        }
        false
    }

    fn rational(&mut self) -> Result<Rat, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
        }
        let s = std::str::from_utf8(&self.text[start..self.pos]).unwrap_or("");
        rat::parse_text(s).ok_or_else(|| ParseError::Syntax {
            position: start,
            message: format!("expected a rational, found {s:?}"),
        })
    }

    fn expr_list(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect(b'(')?;
        let mut items = vec![self.expr()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b',') => {
                    self.pos += 1;
                    items.push(self.expr()?);
                }
                Some(b')') => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return Err(self.err("expected ',' or ')'")),
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        self.skip_ws();
        if self.keyword("nat") {
            self.expect(b'(')?;
            let name = self.ident()?;
            self.expect(b')')?;
            return Ok(Expr::Nat(name));
        }
        if self.keyword("not") {
            return Ok(Expr::not(self.expr()?));
        }
        if self.keyword("and") {
            return Ok(Expr::And(self.expr_list()?));
        }
        if self.keyword("or") {
            return Ok(Expr::or(self.expr_list()?));
        }
        if self.peek() == Some(b'B') {
            self.pos += 1;
            self.expect(b'[')?;
            let player = self.ident()?;
            self.expect(b',')?;
            let p_start = self.pos;
            let p = self.rational()?;
            if !rat::in_unit_interval(&p) {
                return Err(ParseError::ThresholdOutOfRange(rat::to_text(&p), p_start));
            }
            self.expect(b']')?;
            self.expect(b'(')?;
            let inner = self.expr()?;
            self.expect(b')')?;
            return Ok(Expr::Bel(Player(player), p, Box::new(inner)));
        }
        Err(self.err("expected an expression"))
    }
}
