//! Truncated Laurent series `T^ord · (b_0 + b_1 T + … + b_N T^N + O(T^(N+1)))`.
//!
//! Nonzero values are normalized so that `b_0 ≠ 0`, which makes the order
//! available in O(1). A value whose stored coefficients all vanish is either
//! the exact zero (flagged at construction) or "zero through `T^P`", whose
//! order cannot be decided from the data and is reported as indeterminate.

use std::fmt;

use num_traits::{One, Zero};

use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use crate::series::TruncatedSeries;

/// Order of a Laurent series; `Infinite` only for the exact zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(i64),
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    ord: i64,
    body: TruncatedSeries,
    exact_zero: bool,
}

impl LaurentSeries {
    /// `T^ord · body`, normalized. Leading zeros of `body` are absorbed into
    /// `ord` at the cost of relative precision.
    pub fn new(ord: i64, body: TruncatedSeries) -> Self {
        match body.valuation() {
            Some(0) => Self { ord, body, exact_zero: false },
            Some(v) => {
                let body = body.shift_by(v).expect("valuation within truncation");
                Self { ord: ord + v as i64, body, exact_zero: false }
            }
            None => Self::zero_through(ord + body.truncation() as i64),
        }
    }

    pub fn from_series(f: TruncatedSeries) -> Self {
        Self::new(0, f)
    }

    /// The zero series, known to vanish identically.
    pub fn exact_zero() -> Self {
        Self { ord: 0, body: TruncatedSeries::zero(0), exact_zero: true }
    }

    /// A series only known to vanish through `T^precision`.
    pub fn zero_through(precision: i64) -> Self {
        Self { ord: precision, body: TruncatedSeries::zero(0), exact_zero: false }
    }

    /// `c` with relative truncation `truncation`; `c = 0` gives the exact zero.
    pub fn constant(c: Coefficient, truncation: usize) -> Self {
        if c.is_zero() {
            return Self::exact_zero();
        }
        Self { ord: 0, body: TruncatedSeries::constant(c, truncation), exact_zero: false }
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(Coefficient::one(), truncation)
    }

    /// `T^k`.
    pub fn monomial(k: i64, truncation: usize) -> Self {
        Self { ord: k, body: TruncatedSeries::one(truncation), exact_zero: false }
    }

    /// Index of the first stored coefficient.
    pub fn ord(&self) -> i64 {
        self.ord
    }

    pub fn body(&self) -> &TruncatedSeries {
        &self.body
    }

    pub fn is_exact_zero(&self) -> bool {
        self.exact_zero
    }

    /// Zero as far as the stored coefficients tell, exact or not.
    pub fn is_zero(&self) -> bool {
        self.exact_zero || self.body.is_zero()
    }

    /// Largest exponent whose coefficient is known; `None` for the exact zero.
    pub fn precision(&self) -> Option<i64> {
        (!self.exact_zero).then(|| self.ord + self.body.truncation() as i64)
    }

    /// Least `n` with `a_n ≠ 0`.
    pub fn order(&self) -> Result<Order> {
        if self.exact_zero {
            Ok(Order::Infinite)
        } else if self.body.is_zero() {
            Err(Error::Indeterminate(self.ord))
        } else {
            Ok(Order::Finite(self.ord))
        }
    }

    /// Coefficient of `T^exp`, or `None` past the known precision.
    pub fn coeff_at(&self, exp: i64) -> Option<Coefficient> {
        if self.exact_zero || exp < self.ord {
            return Some(Coefficient::zero());
        }
        let k = (exp - self.ord) as usize;
        (k <= self.body.truncation()).then(|| self.body.coeff(k).clone())
    }

    /// Canonical fraction `f / T^m` with `m = max(0, -ord)` and `f` a power
    /// series.
    pub fn to_fraction(&self) -> (TruncatedSeries, usize) {
        let m = (-self.ord).max(0) as usize;
        let lift = (self.ord + m as i64) as usize;
        (self.body.mul_monomial(lift), m)
    }

    /// `(ord, relative coefficient count)`; zeros known through `P` count as
    /// `(P + 1, 0)`.
    fn extent(&self) -> (i64, usize) {
        if self.body.is_zero() {
            (self.ord + 1, 0)
        } else {
            (self.ord, self.body.truncation() + 1)
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.exact_zero {
            return rhs.clone();
        }
        if rhs.exact_zero {
            return self.clone();
        }
        let top = self.precision().unwrap().min(rhs.precision().unwrap());
        let start = self.ord.min(rhs.ord).min(top);
        let coeffs = (start..=top)
            .map(|e| self.coeff_at(e).unwrap() + rhs.coeff_at(e).unwrap())
            .collect();
        Self::new(start, TruncatedSeries::new(coeffs))
    }

    pub fn neg(&self) -> Self {
        Self { ord: self.ord, body: -&self.body, exact_zero: self.exact_zero }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        if c.is_zero() {
            return Self::exact_zero();
        }
        Self { ord: self.ord, body: self.body.scale(c), exact_zero: self.exact_zero }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.exact_zero || rhs.exact_zero {
            return Self::exact_zero();
        }
        let (oa, ra) = self.extent();
        let (ob, rb) = rhs.extent();
        if ra == 0 || rb == 0 {
            return Self::zero_through(oa + ob - 1);
        }
        Self { ord: oa + ob, body: &self.body * &rhs.body, exact_zero: false }
    }

    /// Multiplication by `T^k`.
    pub fn mul_monomial(&self, k: i64) -> Self {
        if self.exact_zero {
            return self.clone();
        }
        Self { ord: self.ord + k, ..self.clone() }
    }

    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision(self.to_string()));
        }
        Ok(Self { ord: -self.ord, body: self.body.invert()?, exact_zero: false })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.invert()?))
    }

    /// Integer power; negative exponents go through `invert`. `0^0` is taken
    /// to be the constant 1 with no tracked tail.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.invert()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        if e == 0 {
            let trunc = if self.exact_zero { 0 } else { self.body.truncation() };
            return Ok(Self::one(trunc));
        }
        let mut acc: Option<Self> = None;
        let mut sq = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => sq.clone(),
                    Some(a) => a.mul(&sq),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            sq = sq.mul(&sq);
        }
        Ok(acc.expect("positive exponent"))
    }

    /// Keeps at most `truncation + 1` body coefficients.
    pub fn truncate(&self, truncation: usize) -> Self {
        if self.exact_zero || truncation >= self.body.truncation() {
            return self.clone();
        }
        Self::new(self.ord, self.body.truncate(truncation))
    }

    /// Coefficientwise equality on every exponent both series determine.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let top = match (self.precision(), other.precision()) {
            (None, None) => return true,
            (Some(p), None) | (None, Some(p)) => p,
            (Some(p), Some(q)) => p.min(q),
        };
        let start = self.ord.min(other.ord);
        (start..=top).all(|e| self.coeff_at(e) == other.coeff_at(e))
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exact_zero {
            return write!(f, "0");
        }
        if self.body.is_zero() {
            return write!(f, "O(T^{})", self.ord + 1);
        }
        write!(f, "T^{}·({})", self.ord, self.body)
    }
}
