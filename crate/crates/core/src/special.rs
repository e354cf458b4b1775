//! Bessel functions and Laguerre polynomials from the hyperbola `y² − x² = 1`.
//!
//! With `r = √(1+T²)`, the rational function `j_n = y(x+y)^n` embeds as
//! `T^(−(n+1)) · r(1+r)^n`, and
//!
//! ```text
//! g_n = T^n / (r (1+r)^n),     J_n = E(g_n)
//! ```
//!
//! is the solution of `j_n(D) w = 0` with `w^(k)(0) = 0` for `k < n` and
//! `w^(n)(0) = 1/2^n`: the Bessel function of the first kind of order `n`.

use num_traits::{One, Zero};

use crate::coeff::{self, factorial, Coefficient};
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::operator::{e_transform, initial_value_rank, DiffOperator, SeriesFunction};
use crate::series::TruncatedSeries;

/// `√(1+T²)` modulo `T^(N+1)`.
pub fn sqrt_one_plus_t2(truncation: usize) -> TruncatedSeries {
    TruncatedSeries::from_ints(&[1, 0, 1], truncation)
        .sqrt()
        .expect("free term 1 is a square")
}

/// `1/√(1+T²) = Σ (−1)^k (2k)! / (4^k (k!)²) T^(2k)` from the closed form.
pub fn inv_sqrt_series(truncation: usize) -> TruncatedSeries {
    let coeffs = (0..=truncation)
        .map(|i| {
            if i % 2 == 1 {
                return Coefficient::zero();
            }
            let k = i / 2;
            let sign = if k % 2 == 0 { coeff::one() } else { -coeff::one() };
            let four_k = num_traits::pow(coeff::int(4), k);
            let kf = factorial(k);
            sign * factorial(2 * k) / (four_k * &kf * &kf)
        })
        .collect();
    TruncatedSeries::new(coeffs)
}

/// `r(1+r)^n`, the unit in `♯(j_n)`.
pub fn bessel_unit(n: u32, truncation: usize) -> TruncatedSeries {
    let r = sqrt_one_plus_t2(truncation);
    let one_plus = &TruncatedSeries::one(truncation) + &r;
    &r * &one_plus.pow(n)
}

/// `g_n = T^n / (r(1+r)^n)`.
pub fn g_series(n: u32, truncation: usize) -> TruncatedSeries {
    let inv = bessel_unit(n, truncation).invert().expect("free term 2^n");
    inv.mul_monomial(n as usize).truncate(truncation)
}

/// `J_n` as a Taylor model at 0.
pub fn bessel_series(n: u32, truncation: usize) -> SeriesFunction {
    e_transform(g_series(n, truncation))
}

/// `j_n(D)`, from `♯(j_n) = T^(−(n+1)) r(1+r)^n`.
pub fn bessel_operator(n: u32, truncation: usize) -> DiffOperator {
    DiffOperator::new(LaurentSeries::new(-(n as i64 + 1), bessel_unit(n, truncation)))
        .expect("unit body")
}

/// `L_n = E((1−T)^n)`, a polynomial model of degree `n`.
pub fn laguerre(n: u32) -> SeriesFunction {
    let base = TruncatedSeries::from_ints(&[1, -1], n as usize);
    SeriesFunction::polynomial(base.pow(n))
}

/// Checks `2J′_n = J_{n−1} − J_{n+1}` on three consecutive models.
pub fn check_recurrence(prev: &SeriesFunction, cur: &SeriesFunction, next: &SeriesFunction) -> bool {
    let Ok(d) = cur.derivative() else {
        return false;
    };
    let lhs = d.h().scale(&coeff::int(2));
    let rhs = prev.h() - next.h();
    lhs.agrees_with(&rhs)
}

/// Identities behind the recurrence, for `n ≥ 1` at truncation
/// `N`:
///
/// * `2(1+r) = (1+r)² − T²`,
/// * `2T^(−1) g_n = g_{n−1} − g_{n+1}` in Laurent arithmetic,
/// * `2J′_n = J_{n−1} − J_{n+1}` on the Taylor models.
pub fn verify_recurrence(n: u32, truncation: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::Precondition("recurrence needs n ≥ 1".into()));
    }
    let r = sqrt_one_plus_t2(truncation);
    let one_plus = &TruncatedSeries::one(truncation) + &r;
    let t2 = TruncatedSeries::monomial(2, coeff::one(), truncation);
    let identity = one_plus.scale(&coeff::int(2)) == &(&one_plus * &one_plus) - &t2;

    let g = |k| LaurentSeries::from_series(g_series(k, truncation));
    let lhs = LaurentSeries::monomial(-1, truncation).mul(&g(n)).scale(&coeff::int(2));
    let rhs = g(n - 1).sub(&g(n + 1));
    let g_level = lhs.agrees_with(&rhs);

    let j_level = check_recurrence(
        &bessel_series(n - 1, truncation),
        &bessel_series(n, truncation),
        &bessel_series(n + 1, truncation),
    );
    Ok(identity && g_level && j_level)
}

/// `[J_n, DJ_n, …, DⁿJ_n]`; `DᵏJ_n` is known to order `N − k`.
pub fn fundamental_system(n: u32, truncation: usize) -> Result<Vec<SeriesFunction>> {
    let n_us = n as usize;
    if truncation < 2 * n_us {
        return Err(Error::InsufficientTruncation { needed: 2 * n as i64, have: truncation as i64 });
    }
    let mut out = vec![bessel_series(n, truncation)];
    for _ in 0..n {
        let next = out.last().unwrap().derivative()?;
        out.push(next);
    }
    Ok(out)
}

/// Outcome of checking a fundamental system against `j_n(D)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemCheck {
    pub residuals_vanish: bool,
    pub rank: usize,
}

/// Every member is annihilated by `j_n(D)`, and the `(n+1)×(n+1)` matrix of
/// initial values has the stated rank. Needs `N ≥ 2n + 1`.
pub fn check_fundamental_system(n: u32, system: &[SeriesFunction]) -> Result<SystemCheck> {
    let truncation = system.first().map_or(0, SeriesFunction::truncation);
    let op = bessel_operator(n, truncation);
    let mut residuals_vanish = true;
    for w in system {
        residuals_vanish &= op.apply(w)?.is_zero();
    }
    Ok(SystemCheck { residuals_vanish, rank: initial_value_rank(system, n as usize + 1) })
}

/// `(−1)^k / (k! (k+n)! 2^(2k+n))`, the ξ^(n+2k) coefficient of the
/// ascending series of `J_n`.
pub fn ascending_series_coeff(n: u32, k: u32) -> Coefficient {
    let sign = if k.is_multiple_of(2) { coeff::one() } else { -coeff::one() };
    let pow2 = num_traits::pow(coeff::int(2), (2 * k + n) as usize);
    sign / (factorial(k as usize) * factorial((k + n) as usize) * pow2)
}

/// `Σ_k C(n,k) (−1)^k / k! ξ^k`, the Maclaurin coefficients of `L_n`.
pub fn laguerre_sum_coeffs(n: u32) -> Vec<Coefficient> {
    let n_f = factorial(n as usize);
    (0..=n as usize)
        .map(|k| {
            let binom = &n_f / (factorial(k) * factorial(n as usize - k));
            let sign = if k % 2 == 0 { Coefficient::one() } else { -Coefficient::one() };
            sign * binom / factorial(k)
        })
        .collect()
}
