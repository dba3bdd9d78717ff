//! Recursive-descent parser for rational-function expressions in `q`.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/')? unary)*      juxtaposition multiplies: 2q, 3(q+1)
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! atom   := integer | 'q' | '(' expr ')'
//! exponent := ['+' | '-'] integer | '(' ['+' | '-'] integer ')'
//! ```

use num_bigint::BigInt;

use super::{RatFun, Rational};
use crate::error::{Error, Result};

/// Parse an expression such as `q^-2`, `3/4`, `(q^2 - 1)/(q - 1)` or `2q`.
pub fn parse_ratfun(input: &str) -> Result<RatFun> {
    let mut p = Parser {
        chars: input.chars().filter(|c| !c.is_whitespace()).map(normalize_char).collect(),
        pos: 0,
    };
    if p.chars.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let v = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected '{}' at position {}",
            p.chars[p.pos], p.pos
        )));
    }
    Ok(v)
}

fn normalize_char(c: char) -> char {
    match c {
        '\u{2212}' => '-',
        '\u{00b7}' | '\u{00d7}' => '*',
        other => other,
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFun> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFun> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else if matches!(self.peek(), Some('q') | Some('(')) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RatFun> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFun> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.eat('(');
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let digits = self.digits()?;
        let v: i64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("exponent '{digits}' out of range")))?;
        if paren && !self.eat(')') {
            return Err(Error::Parse("missing ')' after exponent".into()));
        }
        Ok(if neg { -v } else { v })
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at position {start}")));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn atom(&mut self) -> Result<RatFun> {
        match self.peek() {
            Some('q') => {
                self.pos += 1;
                Ok(RatFun::q())
            }
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().map_err(|_| Error::Parse(d.clone()))?;
                Ok(RatFun::from_rational(Rational::from_integer(n)))
            }
            Some(c) => Err(Error::Parse(format!("unexpected '{c}' at position {}", self.pos))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}
