//! Prefix expressions for algebraic generating functions.
//!
//! ```text
//! expr := INT | x | t | $ID | [INT, INT, ...]
//!       | (+ expr...) | (- expr expr?) | (* expr...) | (/ expr expr)
//!       | (sqrt expr) | (^ expr INT) | (compose expr expr)
//! ```
//!
//! `[c0, c1, ...]` is the polynomial `c0 + c1 x + ⋯`, `x` and `t` both name
//! the series variable and `$ID` refers to another catalog entry.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::laurent::Laurent;
use super::{Series, Q};
use crate::error::{Error, Result};

/// A parsed expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var,
    Poly(Vec<BigInt>),
    Ref(String),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Mul(Vec<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Sqrt(Box<Expr>),
    Pow(Box<Expr>, i64),
    Compose(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Open,
    Close,
    LBracket,
    RBracket,
    Comma,
    Word(String),
}

fn tokenize(s: &str) -> Vec<Token> {
    let mut out = Vec::new();
    let mut word = String::new();
    let flush = |word: &mut String, out: &mut Vec<Token>| {
        if !word.is_empty() {
            out.push(Token::Word(std::mem::take(word)));
        }
    };
    for ch in s.chars() {
        let tok = match ch {
            '(' => Some(Token::Open),
            ')' => Some(Token::Close),
            '[' => Some(Token::LBracket),
            ']' => Some(Token::RBracket),
            ',' => Some(Token::Comma),
            c if c.is_whitespace() => None,
            c => {
                word.push(c);
                continue;
            }
        };
        flush(&mut word, &mut out);
        out.extend(tok);
    }
    flush(&mut word, &mut out);
    out
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{}: {msg}", self.src))
    }

    fn next(&mut self) -> Result<Token> {
        let t = self.toks.get(self.pos).cloned().ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        Ok(t)
    }

    fn int(&self, w: &str) -> Result<BigInt> {
        w.parse().map_err(|_| self.err(&format!("bad integer {w:?}")))
    }

    fn expr(&mut self) -> Result<Expr> {
        match self.next()? {
            Token::Word(w) => match w.as_str() {
                "x" | "t" => Ok(Expr::Var),
                _ if w.starts_with('$') && w.len() > 1 => Ok(Expr::Ref(w[1..].to_string())),
                _ => Ok(Expr::Int(self.int(&w)?)),
            },
            Token::LBracket => {
                let mut coeffs = Vec::new();
                loop {
                    match self.next()? {
                        Token::Word(w) => coeffs.push(self.int(&w)?),
                        t => return Err(self.err(&format!("unexpected {t:?} in polynomial"))),
                    }
                    match self.next()? {
                        Token::Comma => continue,
                        Token::RBracket => break,
                        t => return Err(self.err(&format!("unexpected {t:?} in polynomial"))),
                    }
                }
                Ok(Expr::Poly(coeffs))
            }
            Token::Open => {
                let op = match self.next()? {
                    Token::Word(w) => w,
                    t => return Err(self.err(&format!("expected an operator, found {t:?}"))),
                };
                let mut args = Vec::new();
                while self.toks.get(self.pos) != Some(&Token::Close) {
                    if op == "^" && args.len() == 1 {
                        match self.next()? {
                            Token::Word(w) => {
                                let k = w.parse::<i64>().map_err(|_| self.err("exponent must be an integer"))?;
                                args.push(Expr::Int(k.into()));
                            }
                            t => return Err(self.err(&format!("unexpected {t:?} as exponent"))),
                        }
                    } else {
                        args.push(self.expr()?);
                    }
                }
                self.pos += 1;
                self.build(&op, args)
            }
            t => Err(self.err(&format!("unexpected {t:?}"))),
        }
    }

    fn build(&self, op: &str, mut args: Vec<Expr>) -> Result<Expr> {
        let arity = |n: usize| -> Result<()> {
            if args.len() == n {
                Ok(())
            } else {
                Err(self.err(&format!("{op} takes {n} argument(s), got {}", args.len())))
            }
        };
        Ok(match op {
            "+" if !args.is_empty() => Expr::Add(args),
            "*" if !args.is_empty() => Expr::Mul(args),
            "-" if args.len() == 1 => Expr::Neg(Box::new(args.pop().unwrap())),
            "-" => {
                arity(2)?;
                let b = args.pop().unwrap();
                Expr::Sub(Box::new(args.pop().unwrap()), Box::new(b))
            }
            "/" => {
                arity(2)?;
                let b = args.pop().unwrap();
                Expr::Div(Box::new(args.pop().unwrap()), Box::new(b))
            }
            "sqrt" => {
                arity(1)?;
                Expr::Sqrt(Box::new(args.pop().unwrap()))
            }
            "^" => {
                arity(2)?;
                let k = match args.pop().unwrap() {
                    Expr::Int(k) => i64::try_from(k).map_err(|_| self.err("exponent too large"))?,
                    _ => unreachable!("exponent parsed as an integer"),
                };
                Expr::Pow(Box::new(args.pop().unwrap()), k)
            }
            "compose" => {
                arity(2)?;
                let g = args.pop().unwrap();
                Expr::Compose(Box::new(args.pop().unwrap()), Box::new(g))
            }
            _ => return Err(self.err(&format!("unknown operator {op:?} with {} argument(s)", args.len()))),
        })
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let mut p = Parser { src: s, toks: tokenize(s), pos: 0 };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, op: &str, xs: &[&Expr]| -> fmt::Result {
            write!(f, "({op}")?;
            for x in xs {
                write!(f, " {x}")?;
            }
            write!(f, ")")
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Var => write!(f, "x"),
            Expr::Poly(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
            Expr::Ref(id) => write!(f, "${id}"),
            Expr::Add(xs) => list(f, "+", &xs.iter().collect::<Vec<_>>()),
            Expr::Mul(xs) => list(f, "*", &xs.iter().collect::<Vec<_>>()),
            Expr::Sub(a, b) => list(f, "-", &[a, b]),
            Expr::Neg(a) => list(f, "-", &[a]),
            Expr::Div(a, b) => list(f, "/", &[a, b]),
            Expr::Sqrt(a) => list(f, "sqrt", &[a]),
            Expr::Pow(a, k) => write!(f, "(^ {a} {k})"),
            Expr::Compose(a, b) => list(f, "compose", &[a, b]),
        }
    }
}

impl Expr {
    /// Catalog entries this expression refers to.
    pub fn references(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs(&self, out: &mut Vec<String>) {
        match self {
            Expr::Ref(id) => out.push(id.clone()),
            Expr::Add(xs) | Expr::Mul(xs) => xs.iter().for_each(|x| x.collect_refs(out)),
            Expr::Sub(a, b) | Expr::Div(a, b) | Expr::Compose(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
            Expr::Neg(a) | Expr::Sqrt(a) | Expr::Pow(a, _) => a.collect_refs(out),
            Expr::Int(_) | Expr::Var | Expr::Poly(_) => {}
        }
    }

    fn eval_at(&self, known: usize, resolve: &mut dyn FnMut(&str, usize) -> Result<Series>) -> Result<Laurent> {
        let poly = |cs: &[Q]| Laurent::from_series(&Series::from_poly(cs, known - 1));
        Ok(match self {
            Expr::Int(n) => poly(&[Q::from_integer(n.clone())]),
            Expr::Var => poly(&[Q::from_integer(0.into()), Q::from_integer(1.into())]),
            Expr::Poly(cs) => poly(&cs.iter().cloned().map(Q::from_integer).collect::<Vec<_>>()),
            Expr::Ref(id) => Laurent::from_series(&resolve(id, known - 1)?),
            Expr::Add(xs) => {
                let mut acc = xs[0].eval_at(known, resolve)?;
                for x in &xs[1..] {
                    acc = acc.add(&x.eval_at(known, resolve)?);
                }
                acc
            }
            Expr::Mul(xs) => {
                let mut acc = xs[0].eval_at(known, resolve)?;
                for x in &xs[1..] {
                    acc = acc.mul(&x.eval_at(known, resolve)?);
                }
                acc
            }
            Expr::Sub(a, b) => a.eval_at(known, resolve)?.sub(&b.eval_at(known, resolve)?),
            Expr::Neg(a) => a.eval_at(known, resolve)?.neg(),
            Expr::Div(a, b) => a.eval_at(known, resolve)?.div(&b.eval_at(known, resolve)?)?,
            Expr::Sqrt(a) => a.eval_at(known, resolve)?.sqrt()?,
            Expr::Pow(a, k) => a.eval_at(known, resolve)?.pow(*k)?,
            Expr::Compose(a, b) => a.eval_at(known, resolve)?.compose(&b.eval_at(known, resolve)?)?,
        })
    }
}

/// Expand `expr` as a power series to `order`. Intermediate steps that divide
/// by powers of `x` lose precision, so evaluation is retried with more
/// working terms until the result is known to `order`.
pub fn eval_expr(expr: &Expr, order: usize, resolve: &mut dyn FnMut(&str, usize) -> Result<Series>) -> Result<Series> {
    let mut slack = 8;
    loop {
        let res = expr.eval_at(order + 1 + slack, resolve).and_then(|l| l.to_series(order));
        match res {
            Err(Error::InsufficientPrecision(_)) if slack < 512 => slack *= 2,
            other => return other,
        }
    }
}
