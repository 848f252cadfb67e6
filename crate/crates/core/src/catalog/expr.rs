//! Rational expressions in the weight and family parameters.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := integer | ident | '(' expr ')'
//! ```
//! `λ` is accepted as a spelling of `lambda`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
}

pub const VARIABLES: [&str; 11] =
    ["lambda", "p1", "p2", "p3", "alpha_x", "alpha_gx", "beta_gx", "gamma_g", "gamma_gx", "delta_g", "delta_gx"];

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Num(i64),
    Ident(&'a str),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok<'_>>> {
    let mut out = Vec::new();
    let mut it = s.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let n = s[i..end].parse().map_err(|_| Error::Parse(format!("number too large in `{s}`")))?;
            out.push(Tok::Num(n));
        } else if c.is_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                it.next();
            }
            let word = &s[i..end];
            out.push(Tok::Ident(if word == "λ" { "lambda" } else { word }));
        } else if "+-*/()".contains(c) || c == '\u{2212}' {
            out.push(Tok::Op(if c == '\u{2212}' { '-' } else { c }));
            it.next();
        } else {
            return Err(Error::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if !VARIABLES.contains(&name) {
                    return Err(Error::Parse(format!("unknown variable `{name}`")));
                }
                Ok(Expr::Var(name.to_string()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("expected `)`".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in `{s}`")));
        }
        Ok(e)
    }

    /// Evaluates in `field`. Every variable must be bound; a vanishing
    /// denominator yields `DomainViolation` naming it.
    pub fn eval(&self, field: Field, env: &BTreeMap<String, Scalar>) -> Result<Scalar> {
        Ok(match self {
            Expr::Int(n) => field.from_i64(*n),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Parse(format!("unbound variable `{v}`")))?,
            Expr::Neg(a) => -a.eval(field, env)?,
            Expr::Add(a, b) => a.eval(field, env)?.try_add(&b.eval(field, env)?)?,
            Expr::Sub(a, b) => a.eval(field, env)?.try_sub(&b.eval(field, env)?)?,
            Expr::Mul(a, b) => a.eval(field, env)?.try_mul(&b.eval(field, env)?)?,
            Expr::Div(a, b) => {
                let d = b.eval(field, env)?;
                if d.is_zero() {
                    return Err(Error::DomainViolation(format!("{} ≠ 0", b)));
                }
                a.eval(field, env)?.try_div(&d)?
            }
        })
    }

    /// Non-constant denominators, outermost first, without duplicates.
    pub fn denominators(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.collect_denominators(&mut out);
        out
    }

    fn collect_denominators(&self, out: &mut Vec<Expr>) {
        match self {
            Expr::Int(_) | Expr::Var(_) => {}
            Expr::Neg(a) => a.collect_denominators(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_denominators(out);
                b.collect_denominators(out);
            }
            Expr::Div(a, b) => {
                if !b.is_constant() && !out.contains(b) {
                    out.push((**b).clone());
                }
                a.collect_denominators(out);
                b.collect_denominators(out);
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Int(_) => true,
            Expr::Var(_) => false,
            Expr::Neg(a) => a.is_constant(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => a.is_constant() && b.is_constant(),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => out.push(v.clone()),
            Expr::Neg(a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Int(_) | Expr::Var(_) => 3,
            Expr::Neg(_) => 2,
            Expr::Mul(..) | Expr::Div(..) => 1,
            Expr::Add(..) | Expr::Sub(..) => 0,
        }
    }
}

fn display_name(v: &str) -> &str {
    if v == "lambda" {
        "λ"
    } else {
        v
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var(v) => f.write_str(display_name(v)),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 2)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 0)?;
                f.write_str(" + ")?;
                wrap(f, b, 1)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 0)?;
                f.write_str(" - ")?;
                wrap(f, b, 1)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 1)?;
                f.write_str("*")?;
                wrap(f, b, 2)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 1)?;
                f.write_str("/")?;
                wrap(f, b, 2)
            }
        }
    }
}

/// Binds `lambda` and the named parameters.
pub fn environment(lambda: &Scalar, names: &[&str], values: &[Scalar]) -> BTreeMap<String, Scalar> {
    let mut env = BTreeMap::new();
    env.insert("lambda".to_string(), lambda.clone());
    for (n, v) in names.iter().zip(values) {
        env.insert(n.to_string(), v.clone());
    }
    env
}
