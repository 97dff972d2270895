//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr    := ("+"|"-")? term (("+"|"-") term)*
//! term    := factor (("*"|"/") factor)*
//! factor  := primary (("^"|"**") exponent)?
//! exponent:= ("+"|"-")? primary
//! primary := number | ident | ladder | "(" expr ")"
//!          | "exp" "(" expr ")"
//!          | ("sum"|"prod") "(" ident "," expr "," expr "," expr ")"
//! ladder  := ("b"|"bd") ("_" subscript)?
//! ```

use crate::error::{Error, Result};
use crate::expr::{expand, rational_from_decimal, Expr, LadderPoly, OpKind, RangeKind};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Number(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Number(s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn err(offset: usize, expected: &[&str], found: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b'*' => {
                if bytes.get(i + 1) == Some(&b'*') {
                    i += 1;
                    Some(Tok::Caret)
                } else {
                    Some(Tok::Star)
                }
            }
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() || c == b'.' {
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            out.push((Tok::Number(text[start..i].to_string()), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else {
            let ch = text[start..].chars().next().unwrap();
            return Err(err(
                start,
                &["number", "identifier", "operator", "`(`", "`)`", "`,`"],
                format!("character {ch:?}"),
            ));
        }
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const PRIMARY: &[&str] = &["number", "identifier", "`(`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        err(self.offset(), expected, self.peek().describe())
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&[name]))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = Vec::new();
        let negate_first = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let first = self.term()?;
        terms.push(if negate_first {
            Expr::Neg(Box::new(first))
        } else {
            first
        });
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    terms.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    terms.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Add(terms)
        })
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    factors.push(std::mem::replace(&mut acc, self.factor()?));
                }
                Tok::Slash => {
                    self.bump();
                    let divisor = self.factor()?;
                    factors.push(acc);
                    acc = Expr::Div(
                        Box::new(Expr::Mul(std::mem::take(&mut factors))),
                        Box::new(divisor),
                    );
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            Ok(acc)
        } else {
            factors.push(acc);
            Ok(Expr::Mul(factors))
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exponent = match self.peek() {
            Tok::Minus => {
                self.bump();
                Expr::Neg(Box::new(self.primary()?))
            }
            Tok::Plus => {
                self.bump();
                self.primary()?
            }
            _ => self.primary()?,
        };
        Ok(Expr::pow(base, exponent))
    }

    fn primary(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Number(text) => {
                self.bump();
                let r = rational_from_decimal(&text)
                    .map_err(|_| err(offset, &["number"], format!("`{text}`")))?;
                Ok(Expr::Number(r))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Ident(name) => {
                self.bump();
                let called = *self.peek() == Tok::LParen;
                match name.as_str() {
                    "exp" if called => {
                        self.bump();
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "`)`")?;
                        Ok(Expr::Exp(Box::new(arg)))
                    }
                    "sum" | "prod" if called => self.range(&name),
                    "I" => Ok(Expr::Imaginary),
                    _ => ladder(&name, offset).unwrap_or(Ok(Expr::Symbol(name))),
                }
            }
            _ => Err(self.unexpected(PRIMARY)),
        }
    }

    fn range(&mut self, name: &str) -> Result<Expr> {
        self.bump();
        let index = match self.bump() {
            Tok::Ident(i) => i,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected(&["identifier"]));
            }
        };
        self.expect(Tok::Comma, "`,`")?;
        let lo = self.expr()?;
        self.expect(Tok::Comma, "`,`")?;
        let hi = self.expr()?;
        self.expect(Tok::Comma, "`,`")?;
        let body = self.expr()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(Expr::Range {
            kind: if name == "sum" {
                RangeKind::Sum
            } else {
                RangeKind::Product
            },
            index,
            lo: Box::new(lo),
            hi: Box::new(hi),
            body: Box::new(body),
        })
    }
}

/// `b`, `bd`, `b_<sub>` and `bd_<sub>`; `None` for ordinary identifiers.
fn ladder(name: &str, offset: usize) -> Option<Result<Expr>> {
    let (head, mode) = match name.split_once('_') {
        Some((h, m)) => (h, Some(m)),
        None => (name, None),
    };
    let kind = match head {
        "b" => OpKind::Annihilate,
        "bd" => OpKind::Create,
        _ => return None,
    };
    if mode == Some("") {
        return Some(Err(err(
            offset + name.len(),
            &["mode subscript"],
            "end of identifier",
        )));
    }
    Some(Ok(Expr::Ladder {
        kind,
        mode: mode.unwrap_or("").to_string(),
    }))
}

/// Parses expression text into an unexpanded tree.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    if *p.peek() == Tok::Eof {
        return Err(p.unexpected(&["expression"]));
    }
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected(&["`+`", "`-`", "`*`", "`/`", "`^`", "end of input"]));
    }
    Ok(e)
}

/// Parses and expands in one step.
pub fn parse_poly(text: &str) -> Result<LadderPoly> {
    expand(&parse(text)?)
}
