//! Expression grammar:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := postfix ('*' postfix)*
//! postfix := primary ('^*')*
//! primary := NUMBER ['/' NUMBER] | 'u(' i ',' j ')' | 'nu(' i ',' WORD ')' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored; indices are 1-based.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{QwError, Result};
use crate::ncpart::SnPlus;
use crate::wreath::{Wreath, WreathCtx};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Scalar(Rational),
    U(usize, usize),
    /// Index and the raw group word with its position.
    Nu(usize, String, (usize, usize)),
    Sum(Vec<Ast>),
    Neg(Box<Ast>),
    Product(Vec<Ast>),
    Star(Box<Ast>),
}

struct Parser<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let mut chars = Vec::new();
        for (l, line) in text.lines().enumerate() {
            for (c, ch) in line.chars().enumerate() {
                if !ch.is_whitespace() {
                    chars.push((l + 1, c + 1, ch));
                }
            }
        }
        Parser { chars, pos: 0, text }
    }

    fn here(&self) -> (usize, usize) {
        match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => {
                let lines = self.text.lines().count().max(1);
                let last = self.text.lines().last().map_or(0, |l| l.chars().count());
                (lines, last + 1)
            }
        }
    }

    fn error(&self, msg: impl Into<String>) -> QwError {
        let (line, col) = self.here();
        QwError::Syntax { line, col, msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|x| x.2)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).map(|x| x.2)
    }

    fn eat(&mut self, ch: char) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.eat(ch) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{ch}`")))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = kw.chars().enumerate().all(|(k, c)| self.peek_at(k) == Some(c));
        if matches && self.peek_at(n) == Some('(') {
            self.pos += n + 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|x| x.2).collect();
        Ok(s.parse().unwrap())
    }

    fn index(&mut self) -> Result<usize> {
        let at = self.pos;
        let v = self.integer()?;
        usize::try_from(v).map_err(|_| {
            self.pos = at;
            self.error("index too large")
        })
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut terms = Vec::new();
        let mut negative = self.eat('-');
        if !negative {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            terms.push(if negative { Ast::Neg(Box::new(t)) } else { t });
            if self.eat('+') {
                negative = false;
            } else if self.eat('-') {
                negative = true;
            } else {
                break;
            }
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Ast::Sum(terms) })
    }

    fn term(&mut self) -> Result<Ast> {
        let mut factors = vec![self.postfix()?];
        while self.peek() == Some('*') && self.peek_at(1) != Some('*') {
            self.pos += 1;
            factors.push(self.postfix()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Ast::Product(factors) })
    }

    fn postfix(&mut self) -> Result<Ast> {
        let mut x = self.primary()?;
        while self.peek() == Some('^') && self.peek_at(1) == Some('*') {
            self.pos += 2;
            x = Ast::Star(Box::new(x));
        }
        Ok(x)
    }

    fn primary(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                let q = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
                if q == BigInt::from(0) {
                    return Err(self.error("zero denominator"));
                }
                Ok(Ast::Scalar(Rational::new(p, q)))
            }
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(x)
            }
            Some('-') => {
                self.pos += 1;
                Ok(Ast::Neg(Box::new(self.postfix()?)))
            }
            _ if self.keyword("u") => {
                let i = self.index()?;
                self.expect(',')?;
                let j = self.index()?;
                self.expect(')')?;
                Ok(Ast::U(i, j))
            }
            _ if self.keyword("nu") => {
                let i = self.index()?;
                self.expect(',')?;
                let at = self.here();
                let mut depth = 0;
                let mut word = String::new();
                loop {
                    match self.peek() {
                        None => return Err(self.error("unterminated nu(")),
                        Some(')') if depth == 0 => break,
                        Some(c) => {
                            if c == '(' {
                                depth += 1;
                            } else if c == ')' {
                                depth -= 1;
                            }
                            word.push(c);
                            self.pos += 1;
                        }
                    }
                }
                self.expect(')')?;
                Ok(Ast::Nu(i, word, at))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_ast(text: &str) -> Result<Ast> {
    let mut p = Parser::new(text);
    let x = p.expr()?;
    if p.pos != p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(x)
}

/// Evaluate in C(S_N⁺); `nu(...)` is rejected.
pub fn eval_snplus(ast: &Ast, n: usize) -> Result<SnPlus<Rational>> {
    Ok(match ast {
        Ast::Scalar(c) => SnPlus::scalar(n, c.clone()),
        Ast::U(i, j) => SnPlus::u(n, *i, *j)?,
        Ast::Nu(_, _, (line, col)) => {
            return Err(QwError::Syntax { line: *line, col: *col, msg: "nu(...) needs a group".into() })
        }
        Ast::Sum(ts) => ts.iter().try_fold(SnPlus::zero(n), |acc, t| Ok::<_, QwError>(&acc + &eval_snplus(t, n)?))?,
        Ast::Neg(x) => -&eval_snplus(x, n)?,
        Ast::Product(fs) => fs.iter().try_fold(SnPlus::one(n), |acc, f| Ok::<_, QwError>(&acc * &eval_snplus(f, n)?))?,
        Ast::Star(x) => eval_snplus(x, n)?.star(),
    })
}

/// Evaluate in Pol(Γ̂ ≀*,Λ̂ S_N⁺).
pub fn eval_wreath(ast: &Ast, ctx: &Arc<WreathCtx>) -> Result<Wreath<Rational>> {
    Ok(match ast {
        Ast::Scalar(c) => Wreath::scalar(ctx, c.clone()),
        Ast::U(i, j) => Wreath::u(ctx, *i, *j)?,
        Ast::Nu(i, w, (line, col)) => {
            let g = ctx.group.parse_word(w).map_err(|e| match e {
                QwError::Syntax { col: c, msg, .. } => QwError::Syntax { line: *line, col: col + c - 1, msg },
                other => other,
            })?;
            Wreath::nu(ctx, *i, g)?
        }
        Ast::Sum(ts) => ts.iter().try_fold(Wreath::zero(ctx), |acc, t| acc.plus(&eval_wreath(t, ctx)?))?,
        Ast::Neg(x) => eval_wreath(x, ctx)?.scale(&Rational::from_integer((-1).into())),
        Ast::Product(fs) => fs.iter().try_fold(Wreath::one(ctx), |acc, f| acc.mul(&eval_wreath(f, ctx)?))?,
        Ast::Star(x) => eval_wreath(x, ctx)?.star(),
    })
}

pub fn parse_snplus(text: &str, n: usize) -> Result<SnPlus<Rational>> {
    eval_snplus(&parse_ast(text)?, n)
}

pub fn parse_wreath(text: &str, ctx: &Arc<WreathCtx>) -> Result<Wreath<Rational>> {
    eval_wreath(&parse_ast(text)?, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::GroupSpec;

    #[test]
    fn spec_examples() {
        let x = parse_snplus("u(1,1)", 4).unwrap();
        assert_eq!(x, SnPlus::u(4, 1, 1).unwrap());
        let y = parse_snplus("1/2*u(1,1) + 1/2*u(2,2)", 4).unwrap();
        assert_eq!(y.len(), 2);
        let ctx = WreathCtx::trivial_sub(4, GroupSpec::cyclic(3).unwrap()).unwrap();
        let w = parse_wreath("nu(1,a)*u(1,2)*nu(2,a^-1)", &ctx).unwrap();
        assert_eq!(w.to_string(), "u(1,2)*nu(1,a)*nu(2,a^2)");
    }

    #[test]
    fn round_trip() {
        let ctx = WreathCtx::trivial_sub(3, GroupSpec::free(2).unwrap()).unwrap();
        for text in ["nu(1,a*b^-1)*u(2,3) - 3/4*u(1,1)*nu(2,b)", "(u(1,2) + nu(3,a))^**nu(1,a)"] {
            let x = parse_wreath(text, &ctx).unwrap();
            assert_eq!(parse_wreath(&x.to_string(), &ctx).unwrap(), x);
        }
    }

    #[test]
    fn errors_have_positions() {
        match parse_snplus("u(1,1) +\n  u(2,", 3) {
            Err(QwError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_snplus("u(1,5)", 4), Err(QwError::OutOfRange(_))));
        assert!(matches!(parse_snplus("nu(1,a)", 4), Err(QwError::Syntax { .. })));
    }
}
