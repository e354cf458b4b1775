//! Exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An element of ℚ, always kept in lowest terms with positive denominator.
pub type Coefficient = BigRational;

pub fn int(n: i64) -> Coefficient {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Coefficient {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn zero() -> Coefficient {
    Coefficient::zero()
}

pub fn one() -> Coefficient {
    Coefficient::one()
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Coefficient {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    BigRational::from_integer(acc)
}

/// Canonical `"p/q"` (or `"p"` when q = 1) rendering.
pub fn to_string(c: &Coefficient) -> String {
    c.to_string()
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse(text: &str) -> Result<Coefficient> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Format(format!("bad rational `{text}`")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Format(format!("bad rational `{text}`")))?;
    if den.is_zero() {
        return Err(Error::Format(format!("zero denominator in `{text}`")));
    }
    Ok(BigRational::new(num, den))
}

/// Non-negative rational square root, if one exists.
pub fn rational_sqrt(c: &Coefficient) -> Option<Coefficient> {
    if c.is_negative() {
        return None;
    }
    let num = exact_isqrt(c.numer())?;
    let den = exact_isqrt(c.denom())?;
    Some(BigRational::new(num, den))
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}
