//! A tiny checked integer-expression evaluator.
//!
//! Verification scripts state exponents, dimensions, and multiplier powers
//! as closed-form expressions in a parameter k (for example `3*2^k - 7` or
//! `2^(2*k+1)`). The grammar is plain arithmetic with right-associative
//! exponentiation; all arithmetic is overflow-checked i64.

use crate::error::{Error, Result};

pub fn eval_in_k(src: &str, k: i64) -> Result<i64> {
    let tokens = tokenize(src)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        k,
        src,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input in expression {src:?}"
        )));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(i64),
    K,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            'k' => {
                out.push(Tok::K);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("number overflow in {src:?}")))?;
                out.push(Tok::Num(v));
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected character {other:?} in expression {src:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Tok],
    pos: usize,
    k: i64,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.tokens.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn overflow(&self) -> Error {
        Error::Parse(format!("arithmetic overflow evaluating {:?}", self.src))
    }

    fn expr(&mut self) -> Result<i64> {
        let mut acc = self.term()?;
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.checked_add(rhs).ok_or_else(|| self.overflow())?;
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.checked_sub(rhs).ok_or_else(|| self.overflow())?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<i64> {
        let mut acc = self.power()?;
        while self.peek() == Some(Tok::Star) {
            self.pos += 1;
            let rhs = self.power()?;
            acc = acc.checked_mul(rhs).ok_or_else(|| self.overflow())?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<i64> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            // Right-associative and non-negative.
            let e = self.power()?;
            if e < 0 {
                return Err(Error::Parse(format!(
                    "negative exponent in expression {:?}",
                    self.src
                )));
            }
            let e = u32::try_from(e).map_err(|_| self.overflow())?;
            return base.checked_pow(e).ok_or_else(|| self.overflow());
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<i64> {
        match self.bump() {
            Some(Tok::Num(v)) => Ok(v),
            Some(Tok::K) => Ok(self.k),
            Some(Tok::Minus) => {
                let v = self.atom()?;
                v.checked_neg().ok_or_else(|| self.overflow())
            }
            Some(Tok::LParen) => {
                let v = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(Error::Parse(format!(
                        "missing ) in expression {:?}",
                        self.src
                    )));
                }
                Ok(v)
            }
            other => Err(Error::Parse(format!(
                "unexpected token {other:?} in expression {:?}",
                self.src
            ))),
        }
    }
}
