//! Truncated power series `a_0 + a_1 T + … + a_N T^N + O(T^(N+1))` over ℚ.
//!
//! Every series carries its truncation order `N`. Binary operations keep
//! only what both operands determine, so the result truncation is the
//! minimum of the operand truncations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::coeff::{self, Coefficient};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<Coefficient>,
}

impl TruncatedSeries {
    /// Builds a series known modulo `T^coeffs.len()`.
    ///
    /// Panics on an empty coefficient list: a series always knows at least
    /// its free term.
    pub fn new(coeffs: Vec<Coefficient>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least one coefficient");
        Self { coeffs }
    }

    /// Exact polynomial `p` viewed modulo `T^(truncation+1)`, zero padded or cut.
    pub fn from_poly(poly: &[Coefficient], truncation: usize) -> Self {
        let coeffs = (0..=truncation)
            .map(|k| poly.get(k).cloned().unwrap_or_else(Coefficient::zero))
            .collect();
        Self { coeffs }
    }

    pub fn from_ints(values: &[i64], truncation: usize) -> Self {
        let poly: Vec<_> = values.iter().map(|&v| coeff::int(v)).collect();
        Self::from_poly(&poly, truncation)
    }

    pub fn zero(truncation: usize) -> Self {
        Self { coeffs: vec![Coefficient::zero(); truncation + 1] }
    }

    pub fn one(truncation: usize) -> Self {
        Self::constant(Coefficient::one(), truncation)
    }

    pub fn constant(c: Coefficient, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = c;
        s
    }

    /// `c·T^k` modulo `T^(truncation+1)`.
    pub fn monomial(k: usize, c: Coefficient, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Coefficient] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Coefficient> {
        self.coeffs
    }

    /// Coefficient of `T^k`. Panics past the truncation order.
    pub fn coeff(&self, k: usize) -> &Coefficient {
        &self.coeffs[k]
    }

    pub fn free_term(&self) -> &Coefficient {
        &self.coeffs[0]
    }

    /// True when every stored coefficient vanishes. This says nothing about
    /// the coefficients beyond the truncation.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero stored coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Forgets everything past `T^truncation`. Asking for more precision than
    /// is stored is a logic error.
    pub fn truncate(&self, truncation: usize) -> Self {
        assert!(
            truncation <= self.truncation(),
            "cannot extend truncation {} to {truncation}",
            self.truncation()
        );
        Self { coeffs: self.coeffs[..=truncation].to_vec() }
    }

    /// Like `truncate`, but zero pads when asked for more terms. Only valid
    /// for series known to be polynomials.
    pub(crate) fn resize(&self, truncation: usize) -> Self {
        Self::from_poly(&self.coeffs, truncation)
    }

    pub fn scale(&self, c: &Coefficient) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `T^k`. The product is known `k` orders further.
    pub fn mul_monomial(&self, k: usize) -> Self {
        let mut coeffs = vec![Coefficient::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// σ: drops the free term and shifts every coefficient down one place.
    /// On E-transforms this is differentiation.
    pub fn shift(&self) -> Result<Self> {
        self.shift_by(1)
    }

    /// σ^k.
    pub fn shift_by(&self, k: usize) -> Result<Self> {
        if k > self.truncation() {
            return Err(Error::InsufficientTruncation {
                needed: k as i64,
                have: self.truncation() as i64,
            });
        }
        Ok(Self { coeffs: self.coeffs[k..].to_vec() })
    }

    /// Multiplicative inverse; exists iff the free term is nonzero.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.free_term();
        if a0.is_zero() {
            return Err(Error::ZeroFreeTerm);
        }
        let inv_a0 = a0.recip();
        let n = self.coeffs.len();
        let mut out: Vec<Coefficient> = Vec::with_capacity(n);
        out.push(inv_a0.clone());
        for k in 1..n {
            let mut acc = Coefficient::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc += &self.coeffs[i] * &out[k - i];
                }
            }
            out.push(-(acc * &inv_a0));
        }
        Ok(Self { coeffs: out })
    }

    /// Square root with positive free term, by Newton iteration
    /// `s ← (s + a/s) / 2` doubling the number of correct terms per step.
    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.free_term();
        if a0.is_zero() {
            return Err(Error::ZeroFreeTerm);
        }
        let root = coeff::rational_sqrt(a0)
            .ok_or_else(|| Error::NonSquareFreeTerm(coeff::to_string(a0)))?;
        let target = self.truncation();
        let half = coeff::ratio(1, 2);
        let mut s = Self::constant(root, 0);
        let mut prec = 0;
        while prec < target {
            prec = (2 * prec + 1).min(target);
            let s_ext = s.resize(prec);
            let quotient = &self.truncate(prec) * &s_ext.invert()?;
            s = (&s_ext + &quotient).scale(&half);
        }
        Ok(s)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.truncation());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficientwise equality on the indices both series determine.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.truncation().min(other.truncation());
        self.coeffs[..=n] == other.coeffs[..=n]
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match k {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => write!(f, "T")?,
                1 => write!(f, "{mag}*T")?,
                _ if mag.is_one() => write!(f, "T^{k}")?,
                _ => write!(f, "{mag}*T^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(T^{})", self.coeffs.len())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        TruncatedSeries { coeffs }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Cauchy product, `c_k = Σ_{i+j=k} a_i b_j` for `k ≤ min truncation`.
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut coeffs = vec![Coefficient::zero(); n];
        for (i, a) in self.coeffs[..n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        TruncatedSeries { coeffs }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for TruncatedSeries {
            type Output = TruncatedSeries;
            fn $method(self, rhs: TruncatedSeries) -> TruncatedSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coeff::{int, ratio};
    use proptest::prelude::*;

    fn s(values: &[i64], n: usize) -> TruncatedSeries {
        TruncatedSeries::from_ints(values, n)
    }

    /// Long division of 1 by `den`, one quotient term at a time.
    fn long_division_inverse(den: &[Coefficient], n: usize) -> Vec<Coefficient> {
        let mut rem: Vec<Coefficient> = vec![Coefficient::zero(); n + den.len() + 1];
        rem[0] = Coefficient::one();
        let mut q = Vec::new();
        for k in 0..=n {
            let t = &rem[k] / &den[0];
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &t * d;
            }
            q.push(t);
        }
        q
    }

    #[test]
    fn add_cancels_and_takes_min_truncation() {
        assert_eq!(&s(&[1, 1], 2) + &s(&[1, -1], 2), s(&[2], 2));
        let f = s(&[3, 1, 4], 5);
        assert_eq!(&f + &TruncatedSeries::zero(5), f);

        let a = TruncatedSeries::from_poly(&[int(1), int(0), ratio(1, 2)], 4);
        let b = TruncatedSeries::from_poly(&[int(0), int(0), ratio(-1, 2)], 2);
        let sum = &a + &b;
        assert_eq!(sum.truncation(), 2);
        assert_eq!(sum, s(&[1], 2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&s(&[1, 1], 3) * &s(&[1, -1], 3), s(&[1, 0, -1], 3));
        let f = s(&[2, -1, 5, 7], 3);
        assert_eq!(&f * &TruncatedSeries::one(3), f);
        let r = s(&[1, 0, 1], 7).sqrt().unwrap();
        assert_eq!(&r * &r, s(&[1, 0, 1], 7));
    }

    #[test]
    fn invert_examples() {
        let inv = s(&[1, 0, 1], 6).invert().unwrap();
        let oracle = long_division_inverse(&[int(1), int(0), int(1)], 6);
        assert_eq!(inv.coeffs(), oracle.as_slice());
        assert_eq!(inv, s(&[1, 0, -1, 0, 1, 0, -1], 6));
        assert_eq!(TruncatedSeries::one(0).invert().unwrap(), TruncatedSeries::one(0));
        assert_eq!(
            TruncatedSeries::constant(int(2), 2).invert().unwrap(),
            TruncatedSeries::constant(ratio(1, 2), 2)
        );
        assert_eq!(s(&[0, 1], 3).invert(), Err(Error::ZeroFreeTerm));
    }

    #[test]
    fn sqrt_examples() {
        let r = s(&[1, 0, 1], 7).sqrt().unwrap();
        let expected = TruncatedSeries::from_poly(
            &[int(1), int(0), ratio(1, 2), int(0), ratio(-1, 8), int(0), ratio(1, 16), int(0)],
            7,
        );
        assert_eq!(r, expected);
        assert_eq!(TruncatedSeries::one(4).sqrt().unwrap(), TruncatedSeries::one(4));

        // 2·√(1+T) = 2 + T − T²/4; squaring back is the oracle.
        let r = s(&[4, 4], 2).sqrt().unwrap();
        assert_eq!(r, TruncatedSeries::from_poly(&[int(2), int(1), ratio(-1, 4)], 2));
        assert_eq!(&r * &r, s(&[4, 4], 2));

        assert!(matches!(s(&[2, 1], 3).sqrt(), Err(Error::NonSquareFreeTerm(_))));
        assert_eq!(s(&[0, 0, 1], 3).sqrt(), Err(Error::ZeroFreeTerm));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(s(&[1, 1, 1], 2).shift().unwrap(), s(&[1, 1], 1));
        assert_eq!(s(&[5], 3).shift().unwrap(), TruncatedSeries::zero(2));
        let inv = s(&[1, 0, 1], 6).invert().unwrap();
        assert_eq!(inv.shift().unwrap(), s(&[0, -1, 0, 1, 0, -1], 5));
        assert!(TruncatedSeries::one(0).shift().is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[1, -1, 2], 3).to_string(), "1 - T + 2*T^2 + O(T^4)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(T^2)");
    }

    pub(crate) fn small_rational() -> impl Strategy<Value = Coefficient> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| ratio(n, d))
    }

    pub(crate) fn series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        proptest::collection::vec(small_rational(), n + 1).prop_map(TruncatedSeries::new)
    }

    fn unit(n: usize) -> impl Strategy<Value = TruncatedSeries> {
        series(n).prop_filter("unit", |s| !s.free_term().is_zero())
    }

    proptest! {
        #[test]
        fn ring_axioms(a in series(6), b in series(6), c in series(6)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn inverse_is_two_sided(a in unit(8)) {
            let inv = a.invert().unwrap();
            prop_assert_eq!(&a * &inv, TruncatedSeries::one(8));
            prop_assert_eq!(inv.invert().unwrap(), a);
        }

        #[test]
        fn sqrt_squares_back(a in unit(9), k in 1i64..6, d in 1i64..4) {
            // force a square free term
            let mut coeffs = a.into_coeffs();
            coeffs[0] = ratio(k * k, d * d);
            let a = TruncatedSeries::new(coeffs);
            let r = a.sqrt().unwrap();
            prop_assert_eq!(&r * &r, a);
            prop_assert_eq!(r.free_term(), &ratio(k, d));
        }
    }
}
