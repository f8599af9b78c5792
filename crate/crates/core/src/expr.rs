//! A small expression language over truncated series.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | atom ("^" sint)?
//! atom   := int | "q" ("^" sint | "^" "(" rational ")")? | call | "(" expr ")"
//! ```
//!
//! Calls take argument groups separated by `;` with items separated by `,`:
//! `poch(a; m; inf|n)`, `pochn(n)`, `j(z; m)`, `J(a, m)`, `Jbar(a, m)`,
//! `Jm(m)`, `f(a, b, c; x, y; m)`, `m(x; p; z)`, `nahm("spec")` and
//! `subs(expr; k)`. Monomial arguments are `±q^e` or `±1`; a base may be
//! written `30` or `q^30`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::appell::{appell_m, AppellSpec};
use crate::hecke::{hecke_f, HeckeSpec};
use crate::nahm::{nahm_sum, NahmSpec};
use crate::qfunctions::{
    inv_poch_reciprocal, j_am, j_m, jbar_am, jtheta, poch_finite, poch_inf, ThetaSpec,
};
use crate::{Error, Monomial, QSeries, Rational, Result};

/// Padding added to the requested order for the first evaluation attempt.
pub const INITIAL_PADDING: i64 = 10;
/// Number of doublings of the padding before giving up.
pub const MAX_RETRIES: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// `q^e`.
    Q(Rational),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call(Call),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Call {
    /// `(a; q^m)_n`, infinite when `n` is `None`.
    Poch {
        a: Monomial,
        base: Rational,
        n: Option<u64>,
    },
    /// `1/(q;q)_n`.
    PochN(i64),
    Theta(ThetaSpec),
    Jac(Rational, Rational),
    JacBar(Rational, Rational),
    Euler(Rational),
    Hecke(HeckeSpec),
    Appell(AppellSpec),
    Nahm(NahmSpec),
    Subs(Box<Expr>, Rational),
}

impl Expr {
    pub fn int(n: impl Into<BigInt>) -> Expr {
        Expr::Int(n.into())
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $v:ident) => {
        impl std::ops::$tr for Expr {
            type Output = Expr;
            fn $f(self, rhs: Expr) -> Expr {
                Expr::$v(Box::new(self), Box::new(rhs))
            }
        }
    };
}
binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

// ---------------------------------------------------------------- printing

fn fmt_rational(f: &mut fmt::Formatter<'_>, r: Rational) -> fmt::Result {
    write!(f, "{r}")
}

fn fmt_base(f: &mut fmt::Formatter<'_>, base: Rational) -> fmt::Result {
    write!(f, "{}", Monomial::q_pow(base))
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) if n.is_negative() => write!(f, "(-{})", -n),
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q(e) => {
                if e.is_one() {
                    f.write_str("q")
                } else if e.is_integer() {
                    write!(f, "q^{}", e.numer())
                } else {
                    write!(f, "q^({e})")
                }
            }
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "({a} * {b})"),
            Expr::Div(a, b) => write!(f, "({a} / {b})"),
            Expr::Pow(a, n) => write!(f, "({a})^{n}"),
            Expr::Call(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Call::Poch { a, base, n } => {
                write!(f, "poch({a}; ")?;
                fmt_base(f, *base)?;
                match n {
                    Some(n) => write!(f, "; {n})"),
                    None => f.write_str("; inf)"),
                }
            }
            Call::PochN(n) => write!(f, "pochn({n})"),
            Call::Theta(t) => {
                write!(f, "j({}; ", t.z)?;
                fmt_base(f, t.base)?;
                f.write_str(")")
            }
            Call::Jac(a, m) => write!(f, "J({a}, {m})"),
            Call::JacBar(a, m) => write!(f, "Jbar({a}, {m})"),
            Call::Euler(m) => write!(f, "Jm({m})"),
            Call::Hecke(h) => {
                write!(f, "f({}, {}, {}; {}, {}; ", h.a, h.b, h.c, h.x, h.y)?;
                fmt_base(f, h.base)?;
                f.write_str(")")
            }
            Call::Appell(s) => {
                write!(f, "m({}; ", s.x)?;
                fmt_base(f, s.p)?;
                write!(f, "; {})", s.z)
            }
            Call::Nahm(spec) => write!(f, "nahm(\"{spec}\")"),
            Call::Subs(e, k) => {
                write!(f, "subs({e}; ")?;
                fmt_rational(f, *k)?;
                f.write_str(")")
            }
        }
    }
}

// ------------------------------------------------------------------- lexing

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Str(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Semi,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(_) => f.write_str("a string"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn syntax(offset: usize, message: impl Into<String>, expected: &[&str]) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, start));
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if c == b'"' {
            i += 1;
            while i < bytes.len() && bytes[i] != b'"' {
                i += 1;
            }
            if i == bytes.len() {
                return Err(syntax(start, "unterminated string", &["`\"`"]));
            }
            out.push((Tok::Str(src[start + 1..i].to_string()), start));
            i += 1;
        } else {
            let ch = src[start..].chars().next().unwrap();
            return Err(syntax(start, format!("unexpected character `{ch}`"), &[]));
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

// ------------------------------------------------------------------ parsing

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

const ATOM_START: &[&str] = &["integer", "`q`", "function name", "`(`", "`-`"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &[&str]) -> Error {
        syntax(
            self.offset(),
            format!("unexpected {}", self.peek()),
            expected,
        )
    }

    fn close(&mut self, open: usize) -> Result<()> {
        if self.eat(&Tok::RParen) {
            Ok(())
        } else {
            Err(syntax(
                open,
                format!("unbalanced `(`: expected `)` but found {}", self.peek()),
                &["`)`"],
            ))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = lhs + self.term()?;
            } else if self.eat(&Tok::Minus) {
                lhs = lhs - self.term()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = lhs * self.factor()?;
            } else if self.eat(&Tok::Slash) {
                lhs = lhs / self.factor()?;
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let n = self.sint()?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    fn small(&mut self, n: BigInt, at: usize) -> Result<i64> {
        i64::try_from(n).map_err(|_| syntax(at, "integer out of range", &[]))
    }

    fn sint(&mut self) -> Result<i64> {
        let negative = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        let at = self.offset();
        let n = self.int()?;
        let n = self.small(n, at)?;
        Ok(if negative { -n } else { n })
    }

    fn rational(&mut self) -> Result<Rational> {
        let p = self.sint()?;
        if self.eat(&Tok::Slash) {
            let at = self.offset();
            let d = self.int()?;
            let d = self.small(d, at)?;
            if d == 0 {
                return Err(syntax(at, "zero denominator", &[]));
            }
            return Ok(Rational::new(p, d));
        }
        Ok(Rational::from_integer(p))
    }

    /// Exponent after `q^`: a signed integer or a parenthesized rational.
    fn q_exponent(&mut self) -> Result<Rational> {
        if *self.peek() == Tok::LParen {
            let open = self.offset();
            self.bump();
            let r = self.rational()?;
            self.close(open)?;
            Ok(r)
        } else {
            Ok(Rational::from_integer(self.sint()?))
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.close(at)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "q" => {
                self.bump();
                if self.eat(&Tok::Caret) {
                    Ok(Expr::Q(self.q_exponent()?))
                } else {
                    Ok(Expr::Q(Rational::one()))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if *self.peek() != Tok::LParen {
                    return Err(syntax(
                        at,
                        format!("unknown identifier `{name}`"),
                        &["`q`", "`(`"],
                    ));
                }
                let open = self.offset();
                self.bump();
                let call = self.call(&name, at)?;
                self.close(open)?;
                Ok(Expr::Call(call))
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn sep(&mut self) -> Result<()> {
        if self.eat(&Tok::Semi) || self.eat(&Tok::Comma) {
            Ok(())
        } else {
            Err(self.unexpected(&["`;`", "`,`"]))
        }
    }

    /// `±q^e` or `±1`.
    fn monomial(&mut self) -> Result<Monomial> {
        let negative = self.eat(&Tok::Minus);
        let e = match self.peek().clone() {
            Tok::Int(n) if n.is_one() => {
                self.bump();
                Rational::zero()
            }
            Tok::Ident(name) if name == "q" => {
                self.bump();
                if self.eat(&Tok::Caret) {
                    self.q_exponent()?
                } else {
                    Rational::one()
                }
            }
            _ => return Err(self.unexpected(&["`q`", "`1`"])),
        };
        Ok(Monomial::new(negative, e))
    }

    /// A base written as a rational `m` or as `q^m`.
    fn base(&mut self) -> Result<Rational> {
        if matches!(self.peek(), Tok::Ident(n) if n == "q") {
            let m = self.monomial()?;
            return Ok(m.exponent());
        }
        self.rational()
    }

    fn call(&mut self, name: &str, at: usize) -> Result<Call> {
        Ok(match name {
            "poch" => {
                let a = self.monomial()?;
                self.sep()?;
                let base = self.base()?;
                self.sep()?;
                let n = match self.peek().clone() {
                    Tok::Ident(s) if s == "inf" => {
                        self.bump();
                        None
                    }
                    _ => {
                        let at = self.offset();
                        let n = self.int()?;
                        Some(u64::try_from(n).map_err(|_| syntax(at, "length out of range", &[]))?)
                    }
                };
                Call::Poch { a, base, n }
            }
            "pochn" => Call::PochN(self.sint()?),
            "j" => {
                let z = self.monomial()?;
                self.sep()?;
                Call::Theta(ThetaSpec::new(z, self.base()?))
            }
            "J" | "Jbar" => {
                let a = self.rational()?;
                self.sep()?;
                let m = self.rational()?;
                if name == "J" {
                    Call::Jac(a, m)
                } else {
                    Call::JacBar(a, m)
                }
            }
            "Jm" => Call::Euler(self.rational()?),
            "f" => {
                let a = self.sint()?;
                self.sep()?;
                let b = self.sint()?;
                self.sep()?;
                let c = self.sint()?;
                self.sep()?;
                let x = self.monomial()?;
                self.sep()?;
                let y = self.monomial()?;
                self.sep()?;
                Call::Hecke(HeckeSpec::new(a, b, c, x, y, self.base()?))
            }
            "m" => {
                let x = self.monomial()?;
                self.sep()?;
                let p = self.base()?;
                self.sep()?;
                Call::Appell(AppellSpec::new(x, p, self.monomial()?))
            }
            "nahm" => {
                let at = self.offset();
                match self.bump() {
                    Tok::Str(s) => Call::Nahm(
                        s.parse()
                            .map_err(|e: Error| syntax(at + 1, e.to_string(), &["nahm spec"]))?,
                    ),
                    _ => return Err(syntax(at, "expected a quoted spec", &["string"])),
                }
            }
            "subs" => {
                let e = self.expr()?;
                self.sep()?;
                Call::Subs(Box::new(e), self.rational()?)
            }
            other => {
                return Err(syntax(
                    at,
                    format!("unknown function `{other}`"),
                    &[
                        "poch", "pochn", "j", "J", "Jbar", "Jm", "f", "m", "nahm", "subs",
                    ],
                ))
            }
        })
    }
}

pub fn parse(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected(&["operator", "end of input"]));
    }
    Ok(e)
}

// --------------------------------------------------------------- evaluation

fn wrap(node: &dyn fmt::Display, err: Error) -> Error {
    match err {
        e @ Error::Eval { .. } => e,
        e => Error::Eval {
            expr: node.to_string(),
            source: Box::new(e),
        },
    }
}

impl Call {
    fn eval_at(&self, w: Rational) -> Result<QSeries> {
        match self {
            Call::Poch { a, base, n: None } => poch_inf(*a, *base, w),
            Call::Poch {
                a,
                base,
                n: Some(n),
            } => poch_finite(*a, *base, *n, w),
            Call::PochN(n) => Ok(inv_poch_reciprocal(*n, w)),
            Call::Theta(t) => {
                if t.base <= Rational::zero() {
                    return Err(Error::DivergentProduct(format!(
                        "base exponent {} must be positive",
                        t.base
                    )));
                }
                Ok(jtheta(*t, w))
            }
            Call::Jac(a, m) => j_am(*a, *m, w),
            Call::JacBar(a, m) => jbar_am(*a, *m, w),
            Call::Euler(m) => j_m(*m, w),
            Call::Hecke(h) => hecke_f(h, w),
            Call::Appell(s) => appell_m(s, w),
            Call::Nahm(spec) => nahm_sum(spec, w),
            Call::Subs(e, k) => {
                if *k <= Rational::zero() {
                    return Err(Error::InvalidArgument(format!(
                        "substitution exponent {k} must be positive"
                    )));
                }
                Ok(e.eval_at(w / k)?.rescale(*k))
            }
        }
    }
}

impl Expr {
    /// Evaluates every node at working order `w`; the result may be valid
    /// only below a smaller bound once products and inverses shrink it.
    pub fn eval_at(&self, w: Rational) -> Result<QSeries> {
        let here = |e: Error| wrap(self, e);
        match self {
            Expr::Int(n) => Ok(QSeries::constant(n.clone(), w)),
            Expr::Q(e) => Ok(QSeries::monomial_auto(Monomial::q_pow(*e), w)),
            Expr::Neg(a) => Ok(-a.eval_at(w)?),
            Expr::Add(a, b) => Ok(&a.eval_at(w)? + &b.eval_at(w)?),
            Expr::Sub(a, b) => Ok(&a.eval_at(w)? - &b.eval_at(w)?),
            Expr::Mul(a, b) => {
                // a monomial factor only shifts: evaluate the other side further
                if let Expr::Q(e) = **a {
                    return Ok(b.eval_at(w - e)?.mul_monomial(Monomial::q_pow(e)));
                }
                if let Expr::Q(e) = **b {
                    return Ok(a.eval_at(w - e)?.mul_monomial(Monomial::q_pow(e)));
                }
                Ok(&a.eval_at(w)? * &b.eval_at(w)?)
            }
            Expr::Div(a, b) => {
                if let Expr::Q(e) = **b {
                    return Ok(a.eval_at(w + e)?.mul_monomial(Monomial::q_pow(-e)));
                }
                let inv = b.eval_at(w)?.invert().map_err(|e| wrap(&**b, e))?;
                Ok(&a.eval_at(w)? * &inv)
            }
            Expr::Pow(a, n) => a.eval_at(w)?.pow(*n).map_err(here),
            Expr::Call(c) => c.eval_at(w).map_err(here),
        }
    }

    /// The series through `order`, padding the working order as needed.
    pub fn eval(&self, order: Rational) -> Result<QSeries> {
        eval_padded(order, |w| self.eval_at(w))
    }
}

/// Runs `f` at working orders `order + 10, + 20, + 40, …` until the result is
/// valid through `order`, then truncates to exactly `order`.
pub fn eval_padded<F>(order: Rational, f: F) -> Result<QSeries>
where
    F: Fn(Rational) -> Result<QSeries>,
{
    let mut pad = INITIAL_PADDING;
    let mut available = None;
    for _ in 0..=MAX_RETRIES {
        let s = f(order + pad)?;
        if s.valid_through() >= order {
            return Ok(s.truncate(order));
        }
        available = Some(s.valid_through());
        pad *= 2;
    }
    Err(Error::InsufficientOrder {
        needed: order,
        available: available.expect("at least one attempt"),
    })
}

/// Parses and evaluates `src` through `order`.
pub fn eval_str(src: &str, order: Rational) -> Result<QSeries> {
    parse(src)?.eval(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn parses_calls() {
        let e = parse("f(2,3,2; -q^4, -q^4; q^3)").unwrap();
        let h = HeckeSpec::new(2, 3, 2, Monomial::neg_q_pow(4), Monomial::neg_q_pow(4), 3);
        assert_eq!(e, Expr::Call(Call::Hecke(h)));

        let e = parse("m(-q^14; q^30; q^6) + m(-q^16; q^30; q^-8)").unwrap();
        let m1 = AppellSpec::new(Monomial::neg_q_pow(14), 30, Monomial::q_pow(6));
        let m2 = AppellSpec::new(Monomial::neg_q_pow(16), 30, Monomial::q_pow(-8));
        assert_eq!(
            e,
            Expr::Call(Call::Appell(m1)) + Expr::Call(Call::Appell(m2))
        );
    }

    #[test]
    fn unbalanced_paren() {
        match parse("1/(q;q2").unwrap_err() {
            Error::Syntax { offset, .. } => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        assert_eq!(parse("-q^2").unwrap(), -Expr::Q(rat(2)));
        assert_eq!(parse("q^-8").unwrap(), Expr::Q(rat(-8)));
        assert_eq!(
            parse("1 + 2 * q").unwrap(),
            Expr::int(1) + Expr::int(2) * Expr::Q(rat(1))
        );
        assert_eq!(parse("q^(1/2)").unwrap(), Expr::Q(Rational::new(1, 2)));
    }

    #[test]
    fn evaluates_examples() {
        let s = eval_str("poch(q;1;inf)", rat(8)).unwrap();
        assert_eq!(s.dump(), "0 1\n1 -1\n2 -1\n5 1\n7 1\n# valid_through 8\n");
        assert!(eval_str("j(q;1)", rat(10)).unwrap().is_zero());
        assert_eq!(
            eval_str("q + q", rat(5)).unwrap().dump(),
            "1 2\n# valid_through 5\n"
        );
    }

    #[test]
    fn padding_absorbs_shrinkage() {
        let s = eval_str("q^-3 * (1/(1 - q))^2", rat(5)).unwrap();
        assert_eq!(s.valid_through(), rat(5));
        assert_eq!(s.coeff(rat(4)), BigInt::from(8));
    }

    #[test]
    fn errors_name_the_subexpression() {
        match eval_str("1 + 1/(2 + q)", rat(5)).unwrap_err() {
            Error::Eval { expr, source } => {
                assert_eq!(expr, "(2 + q)");
                assert!(matches!(*source, Error::NonUnitLead(_)));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            eval_str("m(-q^14; 30; q^60)", rat(5)).unwrap_err().root(),
            Error::Pole(_)
        ));
    }

    #[test]
    fn round_trip() {
        for src in [
            "poch(-q^(1/2); q^2; 7) * pochn(3)",
            "J(1/2, 5) - Jbar(2, 6)^-1",
            "subs(Jm(1)^2 * nahm(\"A=[[0,1/2],[1/2,0]] B=[1/2,1/2] C=1/20 v=[0,0] L=[[2,0],[0,2]]\"); 1/2)",
            "j(-1; 2) / (q^0 + q^(-1/3))",
        ] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
