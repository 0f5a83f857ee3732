//! The s-expression term format.
//!
//! ```text
//! term  := (gen i) | (unit) | (rat p q)
//!        | (+ term term) | (scale (rat p q) term)
//!        | (join term term) | (meet term term)
//! ```
//!
//! Whitespace is insignificant. Printing goes through `Display` on
//! [`PLTerm`], which emits single spaces and no newlines.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::pl::PLTerm;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Atom(String),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        if c == '(' || c == ')' {
            chars.next();
            column += 1;
            out.push(Spanned {
                tok: if c == '(' { Tok::Open } else { Tok::Close },
                line: l,
                column: col,
            });
            continue;
        }
        let mut atom = String::new();
        while let Some(&c) = chars.peek() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            atom.push(c);
            chars.next();
            column += 1;
        }
        out.push(Spanned {
            tok: Tok::Atom(atom),
            line: l,
            column: col,
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
    dim: Option<usize>,
}

impl Parser {
    fn error_at(&self, at: Option<&Spanned>, message: impl Into<String>) -> Error {
        let (line, column) = at.map(|s| (s.line, s.column)).unwrap_or(self.end);
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_open(&mut self) -> Result<()> {
        match self.next() {
            Some(Spanned { tok: Tok::Open, .. }) => Ok(()),
            other => Err(self.error_at(other.as_ref(), "expected '('")),
        }
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next() {
            Some(Spanned {
                tok: Tok::Close, ..
            }) => Ok(()),
            other => Err(self.error_at(other.as_ref(), "expected ')'")),
        }
    }

    fn atom(&mut self, what: &str) -> Result<(String, Spanned)> {
        match self.next() {
            Some(
                s @ Spanned {
                    tok: Tok::Atom(_), ..
                },
            ) => {
                let Tok::Atom(a) = &s.tok else { unreachable!() };
                Ok((a.clone(), s.clone()))
            }
            other => Err(self.error_at(other.as_ref(), format!("expected {what}"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let (a, at) = self.atom("an integer")?;
        a.parse()
            .map_err(|_| self.error_at(Some(&at), format!("invalid integer {a:?}")))
    }

    /// Body of `(rat p q)` after the head.
    fn rat_body(&mut self, at: &Spanned) -> Result<Rational> {
        let p = self.integer()?;
        let q = self.integer()?;
        if q.is_zero() {
            return Err(self.error_at(Some(at), "zero denominator"));
        }
        Ok(Rational::new(p, q))
    }

    fn scalar(&mut self) -> Result<Rational> {
        self.expect_open()?;
        let (head, at) = self.atom("'rat'")?;
        if head != "rat" {
            return Err(self.error_at(Some(&at), "expected (rat p q) scalar"));
        }
        let q = self.rat_body(&at)?;
        self.expect_close()?;
        Ok(q)
    }

    fn term(&mut self) -> Result<PLTerm> {
        self.expect_open()?;
        let (head, at) = self.atom("a form name")?;
        let t = match head.as_str() {
            "gen" => {
                let i = self.integer()?;
                let i: usize = i.try_into().map_err(|_| {
                    self.error_at(Some(&at), "generator index must be a natural number")
                })?;
                if let Some(dim) = self.dim {
                    if i >= dim {
                        return Err(self.error_at(
                            Some(&at),
                            format!("unknown generator index {i} (dimension {dim})"),
                        ));
                    }
                }
                PLTerm::Generator(i)
            }
            "unit" => PLTerm::Unit,
            "rat" => PLTerm::Const(self.rat_body(&at)?),
            "+" => {
                let a = self.term()?;
                let b = self.term()?;
                a.add(&b)
            }
            "scale" => {
                let q = self.scalar()?;
                let t = self.term()?;
                t.scale(q)
            }
            "join" => {
                let a = self.term()?;
                let b = self.term()?;
                a.join(&b)
            }
            "meet" => {
                let a = self.term()?;
                let b = self.term()?;
                a.meet(&b)
            }
            other => {
                return Err(self.error_at(Some(&at), format!("unknown form {other:?}")));
            }
        };
        self.expect_close()?;
        Ok(t)
    }
}

/// Parses one term. With `dim = Some(n)`, generator indices `>= n` are
/// rejected.
pub fn parse_term(text: &str, dim: Option<usize>) -> Result<PLTerm> {
    let toks = tokenize(text)?;
    let lines = text.split('\n').collect::<Vec<_>>();
    let end = (
        lines.len(),
        lines.last().map(|l| l.chars().count() + 1).unwrap_or(1),
    );
    let mut p = Parser {
        toks,
        pos: 0,
        end,
        dim,
    };
    let t = p.term()?;
    if let Some(extra) = p.peek() {
        return Err(p.error_at(Some(extra), "trailing input after term"));
    }
    Ok(t)
}
