//! A small parser for textbook-style formulas such as
//! `1 + t y A_1 + t^2 x y A_1^2/(1 - t y A_1)` and two evaluators over
//! truncated series: direct (dividing only by units or monomials) and
//! fraction-valued (never dividing, for cleared identities).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{SparsePoly, TruncatedSeries, VarId};
use crate::error::{Error, Result};

/// Integer expression for exponents, e.g. `m-1` or `(m-a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntExpr {
    Int(i64),
    Sym(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

impl IntExpr {
    pub fn eval(&self, params: &HashMap<String, i64>) -> Result<i64> {
        Ok(match self {
            IntExpr::Int(v) => *v,
            IntExpr::Sym(s) => *params.get(s).ok_or_else(|| Error::Parse {
                offset: 0,
                message: format!("unbound parameter `{s}` in exponent"),
            })?,
            IntExpr::Neg(a) => -a.eval(params)?,
            IntExpr::Add(a, b) => a.eval(params)? + b.eval(params)?,
            IntExpr::Sub(a, b) => a.eval(params)? - b.eval(params)?,
            IntExpr::Mul(a, b) => a.eval(params)? * b.eval(params)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, IntExpr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
            out.push((off, Tok::Num(s)));
        } else if c.is_ascii_alphabetic() {
            let mut name = c.to_string();
            i += 1;
            let digits_from = if i < chars.len() && chars[i].1 == '_' {
                i + 1
            } else {
                i
            };
            let mut j = digits_from;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            if j > digits_from {
                name.extend(chars[digits_from..j].iter().map(|(_, c)| c));
                i = j;
            }
            out.push((off, Tok::Ident(name)));
        } else if "+-*/^(){}=".contains(c) {
            out.push((off, Tok::Op(c)));
            i += 1;
        } else if c == '−' {
            out.push((off, Tok::Op('-')));
            i += 1;
        } else {
            return Err(Error::Parse {
                offset: off,
                message: format!("unexpected character `{c}`"),
            });
        }
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

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = if self.eat('-') {
            Expr::Neg(Box::new(self.term()?))
        } else {
            self.eat('+');
            self.term()?
        };
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

    fn starts_primary(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')) | Some(Tok::Op('{'))
        )
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else if self.starts_primary() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        let base = self.primary()?;
        if self.eat('^') {
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Ok(Expr::Int(s.parse().expect("digits")))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Op('{')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect('}')?;
                Ok(e)
            }
            _ => self.err("expected a number, a symbol or a parenthesis"),
        }
    }

    fn exponent(&mut self) -> Result<IntExpr> {
        if self.eat('-') {
            return Ok(IntExpr::Neg(Box::new(self.exponent()?)));
        }
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                s.parse()
                    .map(IntExpr::Int)
                    .or_else(|_| self.err("exponent too large"))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(IntExpr::Sym(s))
            }
            Some(Tok::Op(open @ ('(' | '{'))) => {
                self.pos += 1;
                let e = self.int_expr()?;
                self.expect(if open == '(' { ')' } else { '}' })?;
                Ok(e)
            }
            _ => self.err("expected an exponent"),
        }
    }

    fn int_expr(&mut self) -> Result<IntExpr> {
        let mut lhs = if self.eat('-') {
            IntExpr::Neg(Box::new(self.int_term()?))
        } else {
            self.int_term()?
        };
        loop {
            if self.eat('+') {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.int_term()?));
            } else if self.eat('-') {
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.int_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn int_term(&mut self) -> Result<IntExpr> {
        let mut lhs = self.int_atom()?;
        while self.eat('*') {
            lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.int_atom()?));
        }
        Ok(lhs)
    }

    fn int_atom(&mut self) -> Result<IntExpr> {
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                s.parse()
                    .map(IntExpr::Int)
                    .or_else(|_| self.err("integer too large"))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(IntExpr::Sym(s))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.int_expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.err("expected an integer expression"),
        }
    }
}

/// Parses a single expression.
pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(src: &str) -> Result<(Expr, Expr)> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        end: src.len(),
    };
    let lhs = p.expr()?;
    p.expect('=')?;
    let rhs = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok((lhs, rhs))
}

/// Bindings for evaluation: named series, plus integer parameters usable in
/// exponents and as constants.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub order: usize,
    pub series: HashMap<String, TruncatedSeries>,
    pub params: HashMap<String, i64>,
}

impl Env {
    pub fn new(order: usize) -> Self {
        Env {
            order,
            ..Env::default()
        }
    }

    pub fn with_param(mut self, name: &str, v: i64) -> Self {
        self.params.insert(name.to_string(), v);
        self
    }

    pub fn bind(&mut self, name: &str, s: TruncatedSeries) {
        self.series.insert(name.to_string(), s);
    }

    fn lookup(&self, name: &str) -> Result<TruncatedSeries> {
        if let Some(s) = self.series.get(name) {
            return Ok(s.truncate(self.order));
        }
        if let Ok(v) = name.parse::<VarId>() {
            return Ok(TruncatedSeries::from_poly(&SparsePoly::var(v), self.order));
        }
        if let Some(&v) = self.params.get(name) {
            return Ok(TruncatedSeries::constant(
                SparsePoly::constant(v),
                self.order,
            ));
        }
        Err(Error::Parse {
            offset: 0,
            message: format!("unbound symbol `{name}`"),
        })
    }

    /// Direct evaluation; division needs a unit or monomial denominator.
    pub fn eval(&self, e: &Expr) -> Result<TruncatedSeries> {
        Ok(match e {
            Expr::Int(v) => TruncatedSeries::constant(SparsePoly::constant(v.clone()), self.order),
            Expr::Sym(s) => self.lookup(s)?,
            Expr::Neg(a) => self.eval(a)?.neg(),
            Expr::Add(a, b) => self.eval(a)?.add(&self.eval(b)?),
            Expr::Sub(a, b) => self.eval(a)?.sub(&self.eval(b)?),
            Expr::Mul(a, b) => self.eval(a)?.mul(&self.eval(b)?),
            Expr::Div(a, b) => self.eval(a)?.div(&self.eval(b)?)?,
            Expr::Pow(base, ex) => {
                let k = ex.eval(&self.params)?;
                let b = self.eval(base)?;
                if k >= 0 {
                    b.pow(k as u32)
                } else {
                    TruncatedSeries::one(b.order())
                        .div(&b)?
                        .pow(k.unsigned_abs() as u32)
                }
            }
        })
    }

    /// Evaluation as an unreduced fraction; never divides.
    pub fn eval_fraction(&self, e: &Expr) -> Result<Fraction> {
        Ok(match e {
            Expr::Int(_) | Expr::Sym(_) => Fraction::whole(self.eval(e)?),
            Expr::Neg(a) => {
                let f = self.eval_fraction(a)?;
                Fraction {
                    num: f.num.neg(),
                    den: f.den,
                }
            }
            Expr::Add(a, b) => self.eval_fraction(a)?.add(&self.eval_fraction(b)?, false),
            Expr::Sub(a, b) => self.eval_fraction(a)?.add(&self.eval_fraction(b)?, true),
            Expr::Mul(a, b) => self.eval_fraction(a)?.mul(&self.eval_fraction(b)?),
            Expr::Div(a, b) => self.eval_fraction(a)?.mul(&self.eval_fraction(b)?.recip()),
            Expr::Pow(base, ex) => {
                let k = ex.eval(&self.params)?;
                let f = self.eval_fraction(base)?;
                let f = if k < 0 { f.recip() } else { f };
                let k = k.unsigned_abs() as u32;
                Fraction {
                    num: f.num.pow(k),
                    den: f.den.map(|d| d.pow(k)),
                }
            }
        })
    }

    /// `num(lhs)·den(rhs) − num(rhs)·den(lhs)` of an equation in fraction form.
    pub fn cleared_residual(&self, lhs: &Expr, rhs: &Expr) -> Result<TruncatedSeries> {
        let l = self.eval_fraction(lhs)?;
        let r = self.eval_fraction(rhs)?;
        Ok(l.cross(&r))
    }
}

/// `num/den` with `den = None` meaning 1.
#[derive(Debug, Clone)]
pub struct Fraction {
    pub num: TruncatedSeries,
    pub den: Option<TruncatedSeries>,
}

impl Fraction {
    fn whole(num: TruncatedSeries) -> Self {
        Fraction { num, den: None }
    }

    fn recip(self) -> Self {
        let order = self.num.order();
        Fraction {
            num: self.den.unwrap_or_else(|| TruncatedSeries::one(order)),
            den: Some(self.num),
        }
    }

    fn times_den(&self, s: &TruncatedSeries) -> TruncatedSeries {
        match &self.den {
            Some(d) => s.mul(d),
            None => s.clone(),
        }
    }

    fn add(&self, other: &Fraction, subtract: bool) -> Fraction {
        let a = other.times_den(&self.num);
        let b = self.times_den(&other.num);
        let num = if subtract { a.sub(&b) } else { a.add(&b) };
        let den = match (&self.den, &other.den) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d), Some(e)) => Some(d.mul(e)),
        };
        Fraction { num, den }
    }

    fn mul(&self, other: &Fraction) -> Fraction {
        let den = match (&self.den, &other.den) {
            (None, None) => None,
            (Some(d), None) | (None, Some(d)) => Some(d.clone()),
            (Some(d), Some(e)) => Some(d.mul(e)),
        };
        Fraction {
            num: self.num.mul(&other.num),
            den,
        }
    }

    fn cross(&self, other: &Fraction) -> TruncatedSeries {
        other.times_den(&self.num).sub(&self.times_den(&other.num))
    }

    /// Whether the denominator is known to be nonzero as a series.
    pub fn has_nonzero_den(&self) -> bool {
        self.den.as_ref().is_none_or(|d| !d.is_zero())
    }
}

/// Integer literal helper used by callers building expressions by hand.
pub fn int(v: i64) -> Expr {
    Expr::Int(BigInt::from(v))
}

impl Expr {
    pub fn is_one(&self) -> bool {
        matches!(self, Expr::Int(v) if v.is_one())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Expr::Int(v) if v.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(src: &str, order: usize) -> TruncatedSeries {
        Env::new(order).eval(&parse(src).unwrap()).unwrap()
    }

    #[test]
    fn implicit_products_and_suffixes() {
        assert_eq!(series("t x_1 y^2", 3), series("t*x1*y^2", 3));
        assert_eq!(series("2x", 1).to_string(), "2*x");
        assert_eq!(series("t^2y", 3), series("t^2*y", 3));
        assert_eq!(series("(1+t)(1-t)", 3).to_string(), "1 - t^2");
        assert_eq!(series("-t + 1", 2).to_string(), "1 - t");
        assert_eq!(series("1 − t", 2).to_string(), "1 - t");
    }

    #[test]
    fn division_and_powers() {
        assert_eq!(series("1/(1-t)", 3).to_string(), "1 + t + t^2 + t^3");
        assert_eq!(series("(1-t)^{-1}", 3).to_string(), "1 + t + t^2 + t^3");
        assert_eq!(series("(t y + t^2 y^2)/y", 3).to_string(), "t + y*t^2");
        let env = Env::new(4).with_param("m", 3);
        assert_eq!(
            env.eval(&parse("t^(m-1)").unwrap()).unwrap().to_string(),
            "t^2"
        );
        assert_eq!(env.eval(&parse("m t").unwrap()).unwrap().to_string(), "3*t");
        assert!(Env::new(3).eval(&parse("1/(t - t^2)").unwrap()).is_err());
    }

    #[test]
    fn fraction_mode_clears_non_unit_denominators() {
        let env = Env::new(4);
        let (l, r) = parse_equation("(t - t^2)/t = 1 - t").unwrap();
        assert!(env.cleared_residual(&l, &r).unwrap().is_zero());
        let (l, r) = parse_equation("1/(1-t) = 1 + t").unwrap();
        assert!(!env.cleared_residual(&l, &r).unwrap().is_zero());
    }

    #[test]
    fn parse_errors_report_offsets() {
        assert!(matches!(parse("1 + "), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(
            parse("1 # 2"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(Env::new(2).eval(&parse("Q").unwrap()).is_err());
    }
}
