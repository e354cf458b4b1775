//! Bivariate polynomials `F(u, t) = Σ c_ij u^i t^j` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::expr::RationalExpr;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BivariatePoly {
    /// `(deg_u, deg_t) -> c`, zero coefficients never stored.
    terms: BTreeMap<(u32, u32), Coefficient>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn u() -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, Coefficient::one());
        p
    }

    pub fn t() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 1, Coefficient::one());
        p
    }

    pub fn add_term(&mut self, du: u32, dt: u32, c: Coefficient) {
        let entry = self.terms.entry((du, dt)).or_insert_with(Coefficient::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(du, dt));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Coefficient)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_u(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    fn as_constant(&self) -> Option<Coefficient> {
        match self.terms.len() {
            0 => Some(Coefficient::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &Coefficient) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_term(i, j, c * k);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Coefficient::one()), |acc, _| acc.mul(self))
    }

    /// ∂F/∂u.
    pub fn diff_u(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            if i > 0 {
                out.add_term(i - 1, j, c * Coefficient::from_integer(i.into()));
            }
        }
        out
    }

    /// `F(u, t)` at rational numbers.
    pub fn eval(&self, u: &Coefficient, t: &Coefficient) -> Coefficient {
        self.terms()
            .map(|(i, j, c)| c * num_traits::pow(u.clone(), i as usize) * num_traits::pow(t.clone(), j as usize))
            .fold(Coefficient::zero(), |a, b| a + b)
    }

    /// `F(u(T), T)` modulo `T^(truncation+1)` of `u`, by Horner's rule in `u`.
    pub fn eval_series(&self, u: &TruncatedSeries) -> TruncatedSeries {
        let n = u.truncation();
        let deg = self.degree_u();
        let mut rows: Vec<Vec<Coefficient>> = vec![vec![Coefficient::zero(); n + 1]; deg as usize + 1];
        for (i, j, c) in self.terms() {
            if (j as usize) <= n {
                rows[i as usize][j as usize] += c;
            }
        }
        let mut acc = TruncatedSeries::zero(n);
        for row in rows.into_iter().rev() {
            acc = &(&acc * u) + &TruncatedSeries::new(row);
        }
        acc
    }

    /// Converts an expression in `u` and `t` to a polynomial. Division is only
    /// allowed by nonzero constants and exponents must be non-negative.
    pub fn from_expr(expr: &RationalExpr) -> Result<Self> {
        let not_poly = || Error::NotPolynomial(expr.to_string());
        Ok(match expr {
            RationalExpr::Const(c) => Self::constant(c.clone()),
            RationalExpr::Var(v) if v == "u" => Self::u(),
            RationalExpr::Var(v) if v == "t" => Self::t(),
            RationalExpr::Var(v) => return Err(Error::UnknownVariable(v.clone())),
            RationalExpr::Neg(a) => Self::from_expr(a)?.scale(&-Coefficient::one()),
            RationalExpr::Add(a, b) => Self::from_expr(a)?.add(&Self::from_expr(b)?),
            RationalExpr::Sub(a, b) => {
                Self::from_expr(a)?.add(&Self::from_expr(b)?.scale(&-Coefficient::one()))
            }
            RationalExpr::Mul(a, b) => Self::from_expr(a)?.mul(&Self::from_expr(b)?),
            RationalExpr::Div(a, b) => {
                let den = Self::from_expr(b)?.as_constant().ok_or_else(not_poly)?;
                if den.is_zero() {
                    return Err(Error::ZeroDivision(b.to_string()));
                }
                Self::from_expr(a)?.scale(&den.recip())
            }
            RationalExpr::Pow(a, n) => {
                let base = Self::from_expr(a)?;
                if *n >= 0 {
                    base.pow(*n as u32)
                } else {
                    let c = base.as_constant().ok_or_else(not_poly)?;
                    if c.is_zero() {
                        return Err(Error::ZeroDivision(a.to_string()));
                    }
                    Self::constant(num_traits::pow(c.recip(), n.unsigned_abs() as usize))
                }
            }
        })
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*u^{i}")?;
            }
            if j > 0 {
                write!(f, "*t^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, ratio};
    use crate::expr::parse_expr;

    fn poly(text: &str) -> BivariatePoly {
        BivariatePoly::from_expr(&parse_expr(text).unwrap()).unwrap()
    }

    #[test]
    fn converts_and_differentiates() {
        let f = poly("u^2 - t^2 - 1");
        assert_eq!(f.eval(&int(1), &int(0)), int(0));
        assert_eq!(f.diff_u(), poly("2*u"));
        assert_eq!(poly("(u+t)^2"), poly("u^2 + 2*u*t + t^2"));
        assert_eq!(poly("u/2"), BivariatePoly::u().scale(&ratio(1, 2)));
        assert_eq!(poly("u*2^(-1)"), poly("u/2"));
    }

    #[test]
    fn rejects_non_polynomials() {
        let e = parse_expr("1/u").unwrap();
        assert!(matches!(BivariatePoly::from_expr(&e), Err(Error::NotPolynomial(_))));
        let e = parse_expr("u^(-1)").unwrap();
        assert!(matches!(BivariatePoly::from_expr(&e), Err(Error::NotPolynomial(_))));
        let e = parse_expr("u + x").unwrap();
        assert_eq!(BivariatePoly::from_expr(&e), Err(Error::UnknownVariable("x".into())));
        let e = parse_expr("u/0").unwrap();
        assert!(matches!(BivariatePoly::from_expr(&e), Err(Error::ZeroDivision(_))));
    }

    #[test]
    fn series_evaluation() {
        // u(T) = 1 + T: F = u^2 - t^2 - 1 gives 2T.
        let u = TruncatedSeries::from_ints(&[1, 1], 3);
        let r = poly("u^2 - t^2 - 1").eval_series(&u);
        assert_eq!(r, TruncatedSeries::from_ints(&[0, 2], 3));
    }
}
