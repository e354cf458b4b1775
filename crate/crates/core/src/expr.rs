//! Rational expressions over named variables.
//!
//! Grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := base ('^' exponent)?
//! base   := integer | ident | '(' expr ')' | '-' base
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! ```
//!
//! A literal `p/q` is parsed as the quotient of two integers; it folds to
//! the same rational when evaluated.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::coeff::Coefficient;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalExpr {
    Const(Coefficient),
    Var(String),
    Neg(Box<RationalExpr>),
    Add(Box<RationalExpr>, Box<RationalExpr>),
    Sub(Box<RationalExpr>, Box<RationalExpr>),
    Mul(Box<RationalExpr>, Box<RationalExpr>),
    Div(Box<RationalExpr>, Box<RationalExpr>),
    Pow(Box<RationalExpr>, i64),
}

impl RationalExpr {
    pub fn var(name: &str) -> Self {
        RationalExpr::Var(name.to_string())
    }

    pub fn int(n: i64) -> Self {
        RationalExpr::Const(BigRational::from_integer(BigInt::from(n)))
    }

    /// Every variable name referenced, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            RationalExpr::Const(_) => {}
            RationalExpr::Var(v) => {
                out.insert(v.clone());
            }
            RationalExpr::Neg(a) | RationalExpr::Pow(a, _) => a.collect_vars(out),
            RationalExpr::Add(a, b)
            | RationalExpr::Sub(a, b)
            | RationalExpr::Mul(a, b)
            | RationalExpr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            RationalExpr::Add(..) | RationalExpr::Sub(..) => 1,
            RationalExpr::Mul(..) | RationalExpr::Div(..) => 2,
            RationalExpr::Neg(_) => 3,
            RationalExpr::Pow(..) => 4,
            RationalExpr::Const(c) if !c.is_integer() || c < &BigRational::default() => 2,
            RationalExpr::Const(_) | RationalExpr::Var(_) => 5,
        }
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &RationalExpr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            RationalExpr::Const(c) => write!(f, "{c}"),
            RationalExpr::Var(v) => write!(f, "{v}"),
            RationalExpr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 4)
            }
            RationalExpr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "+")?;
                wrap(f, b, 2)
            }
            RationalExpr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, "-")?;
                wrap(f, b, 2)
            }
            RationalExpr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            RationalExpr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            RationalExpr::Pow(a, n) => {
                wrap(f, a, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
                out.push((pos, Tok::Int(text[chars[start].0..end].parse().unwrap())));
                continue;
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let end = chars.get(i).map_or(text.len(), |&(p, _)| p);
                out.push((pos, Tok::Ident(text[chars[start].0..end].to_string())));
                continue;
            }
            other => {
                return Err(Error::Syntax { pos, message: format!("unexpected character `{other}`") })
            }
        };
        out.push((pos, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), message: message.into() })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.at += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn expr(&mut self) -> Result<RationalExpr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = RationalExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = RationalExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<RationalExpr> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = RationalExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    lhs = RationalExpr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<RationalExpr> {
        let base = self.base()?;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            let n = self.exponent()?;
            return Ok(RationalExpr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i64> {
        let paren = self.peek() == Some(&Tok::LParen);
        if paren {
            self.at += 1;
        }
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.at += 1;
        }
        let n = match self.peek() {
            Some(Tok::Int(n)) => {
                let n = i64::try_from(n.clone()).or_else(|_| self.err("exponent too large"))?;
                self.at += 1;
                n
            }
            _ => return self.err("expected integer exponent"),
        };
        if paren {
            self.expect(Tok::RParen, "`)`")?;
        }
        Ok(if negative { -n } else { n })
    }

    fn base(&mut self) -> Result<RationalExpr> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(RationalExpr::Const(BigRational::from_integer(n))),
            Some(Tok::Ident(v)) => Ok(RationalExpr::Var(v)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Minus) => Ok(RationalExpr::Neg(Box::new(self.base()?))),
            Some(_) => Err(Error::Syntax { pos, message: "expected a number, variable or `(`".into() }),
            None => Err(Error::Syntax { pos, message: "unexpected end of input".into() }),
        }
    }
}

/// Parses `text` per the module grammar. Variables are not resolved here.
pub fn parse_expr(text: &str) -> Result<RationalExpr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use RationalExpr::*;

    fn b(e: RationalExpr) -> Box<RationalExpr> {
        Box::new(e)
    }

    #[test]
    fn parses_bessel_generator() {
        let e = parse_expr("y*(x+y)^3").unwrap();
        assert_eq!(
            e,
            Mul(b(RationalExpr::var("y")), b(Pow(b(Add(b(RationalExpr::var("x")), b(RationalExpr::var("y")))), 3)))
        );
    }

    #[test]
    fn parses_laguerre_function() {
        let e = parse_expr("s^3/(s-1)^2").unwrap();
        assert_eq!(
            e,
            Div(
                b(Pow(b(RationalExpr::var("s")), 3)),
                b(Pow(b(Sub(b(RationalExpr::var("s")), b(RationalExpr::int(1)))), 2))
            )
        );
    }

    #[test]
    fn division_by_zero_still_parses() {
        assert_eq!(parse_expr("1/0").unwrap(), Div(b(RationalExpr::int(1)), b(RationalExpr::int(0))));
    }

    #[test]
    fn associativity_and_precedence() {
        let e = parse_expr("a-b-c").unwrap();
        assert_eq!(e, Sub(b(Sub(b(RationalExpr::var("a")), b(RationalExpr::var("b")))), b(RationalExpr::var("c"))));
        let e = parse_expr("a/b*c").unwrap();
        assert_eq!(e, Mul(b(Div(b(RationalExpr::var("a")), b(RationalExpr::var("b")))), b(RationalExpr::var("c"))));
        let e = parse_expr("-x^2").unwrap();
        assert_eq!(e, Pow(b(Neg(b(RationalExpr::var("x")))), 2));
        assert_eq!(parse_expr("t^(-2)").unwrap(), Pow(b(RationalExpr::var("t")), -2));
        assert_eq!(parse_expr("t^-2").unwrap(), Pow(b(RationalExpr::var("t")), -2));
    }

    #[test]
    fn syntax_errors_carry_position() {
        assert_eq!(
            parse_expr("x + * y"),
            Err(Error::Syntax { pos: 4, message: "expected a number, variable or `(`".into() })
        );
        assert!(matches!(parse_expr("(x+1"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_expr("x^y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("x $ 1"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("x y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr(""), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn display_reparses() {
        for text in ["y*(x+y)^3", "s^3/(s-1)^2", "1-(a-b)", "a/(b*c)", "-(x+1)^2", "t^(-2)*u"] {
            let e = parse_expr(text).unwrap();
            assert_eq!(parse_expr(&e.to_string()).unwrap(), e, "{text} -> {e}");
        }
    }

    #[test]
    fn collects_variables() {
        let vars = parse_expr("y*(x+y)^2 - 3/t").unwrap().variables();
        assert_eq!(vars.into_iter().collect::<Vec<_>>(), ["t", "x", "y"]);
    }
}
