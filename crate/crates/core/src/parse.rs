//! Text syntax for arrows.
//!
//! ```text
//! expr := atom | "(" ("comp" | "tens") expr expr+ ")"
//! atom := "id:" N | "tau:" M "," N | "beta" | "gamma" | "eta" | "eps"
//!       | "cyl(" matrix-literal ")" | "cyl(" word ")" | "(cyl" word ")"
//! ```
//!
//! `(comp f g h)` is `f ∘ g ∘ h`; `(tens f g h)` is `f ⊗ g ⊗ h`.

use crate::cobcat::ArrowExpr;
use crate::error::{Error, Result};
use crate::sl2z::{evaluate_word, GenWord, MatSL2};

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(Error::parse(
                self.pos,
                format!("expected `{c}`, found `{d}`"),
            )),
            None => Err(Error::parse(
                self.pos,
                format!("expected `{c}`, found end of input"),
            )),
        }
    }

    /// A run of characters that can form an atom head (`id:3`, `tau:1,2`, `beta`).
    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        self.pos += len;
        (start, &rest[..len])
    }

    fn expr(&mut self) -> Result<ArrowExpr> {
        match self.peek() {
            None => Err(Error::parse(self.pos, "unexpected end of input")),
            Some('(') => {
                let open = self.pos;
                self.pos += 1;
                let (at, head) = self.word();
                if head == "cyl" {
                    // `(cyl a^2 b^-1)` is accepted as a synonym of `cyl(a^2 b^-1)`
                    return self.cyl_body(open);
                }
                let mut args = Vec::new();
                while self.peek().is_some_and(|c| c != ')') {
                    args.push(self.expr()?);
                }
                self.expect(')')?;
                if args.len() < 2 {
                    return Err(Error::parse(
                        open,
                        format!("`{head}` needs at least two arguments"),
                    ));
                }
                match head {
                    "comp" => {
                        ArrowExpr::chain(&args).map_err(|e| Error::Arity(format!("at {open}: {e}")))
                    }
                    "tens" => Ok(ArrowExpr::tensor_all(&args)),
                    _ => Err(Error::parse(at, format!("unknown combinator `{head}`"))),
                }
            }
            Some(')') => Err(Error::parse(self.pos, "unbalanced `)`")),
            Some(_) => self.atom(),
        }
    }

    /// Reads the matrix or word up to the `)` closing the paren at `open`.
    fn cyl_body(&mut self, open: usize) -> Result<ArrowExpr> {
        let start = self.pos;
        let end = self.text[start..]
            .find(')')
            .map(|i| start + i)
            .ok_or_else(|| Error::parse(open, "unterminated cylinder"))?;
        let body = &self.text[start..end];
        self.pos = end + 1;
        let shift = |e: Error| match e {
            Error::Parse { pos, msg } => Error::parse(start + pos, msg),
            other => other,
        };
        let m = if body.trim_start().starts_with('[') {
            body.parse::<MatSL2>().map_err(shift)?
        } else {
            evaluate_word(&body.parse::<GenWord>().map_err(shift)?)
        };
        Ok(ArrowExpr::cyl(m))
    }

    fn atom(&mut self) -> Result<ArrowExpr> {
        let (at, head) = self.word();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| Error::parse(at, format!("bad arity in `{head}`")))
        };
        match head {
            "beta" => Ok(ArrowExpr::beta()),
            "gamma" => Ok(ArrowExpr::gamma()),
            "eta" => Ok(ArrowExpr::eta()),
            "eps" => Ok(ArrowExpr::eps()),
            "cyl" => {
                self.expect('(')?;
                self.cyl_body(self.pos - 1)
            }
            _ => {
                if let Some(n) = head.strip_prefix("id:") {
                    Ok(ArrowExpr::id(num(n)?))
                } else if let Some(mn) = head.strip_prefix("tau:") {
                    let (m, n) = mn
                        .split_once(',')
                        .ok_or_else(|| Error::parse(at, "expected `tau:M,N`"))?;
                    Ok(ArrowExpr::tau(num(m)?, num(n)?))
                } else if head.is_empty() {
                    Err(Error::parse(at, "expected an arrow"))
                } else {
                    Err(Error::parse(at, format!("unknown atom `{head}`")))
                }
            }
        }
    }
}

/// Parses an arrow, checking arities as it goes.
pub fn parse_expr(text: &str) -> Result<ArrowExpr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos, "trailing input after expression"));
    }
    Ok(e)
}
