//! The operators `D_φ` and the analytic functions they act on.
//!
//! An analytic function near 0 is modeled by its derivatives at 0:
//! `w = E(h)`, `w(ξ) = Σ h_k ξ^k / k!`, so `w^(k)(0) = h_k`. On such models
//! differentiation is the shift σ, the normalized integral `∫_0^ξ` is
//! multiplication by `T`, and a power series `f` acts by
//! `fw = Σ a_n ∫ⁿ w`, i.e. by plain series multiplication of `h`.
//!
//! For `φ = f / T^m`, `D_φ w = D^m(f w)`.

use num_traits::{One, Zero};

use crate::coeff::{self, Coefficient};
use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, Order};
use crate::linalg;
use crate::series::TruncatedSeries;

/// Taylor model `E(h)` of an analytic function at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesFunction {
    h: TruncatedSeries,
    /// Set when `h` is known to vanish past its truncation (a polynomial).
    exact: bool,
}

impl SeriesFunction {
    pub fn new(h: TruncatedSeries) -> Self {
        Self { h, exact: false }
    }

    /// A polynomial function: `h` is exactly zero beyond what is stored.
    pub fn polynomial(h: TruncatedSeries) -> Self {
        Self { h, exact: true }
    }

    pub fn h(&self) -> &TruncatedSeries {
        &self.h
    }

    pub fn into_h(self) -> TruncatedSeries {
        self.h
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn truncation(&self) -> usize {
        self.h.truncation()
    }

    /// `w^(k)(0)`.
    pub fn derivative_at_zero(&self, k: usize) -> &Coefficient {
        self.h.coeff(k)
    }

    /// Maclaurin coefficients `h_k / k!`.
    pub fn taylor_coeffs(&self) -> Vec<Coefficient> {
        let mut fact = Coefficient::one();
        self.h
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= Coefficient::from_integer(k.into());
                }
                c / &fact
            })
            .collect()
    }

    /// `w′`, one order less precise.
    pub fn derivative(&self) -> Result<Self> {
        Ok(Self { h: self.h.shift()?, exact: self.exact })
    }

    /// `ξ ↦ ∫_0^ξ w`, one order more precise.
    pub fn integral(&self) -> Self {
        Self { h: self.h.mul_monomial(1), exact: self.exact }
    }

    /// True when every stored derivative vanishes.
    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.h.agrees_with(&other.h)
    }
}

/// `E(f)`: the function `ξ ↦ Σ a_n ξ^n / n!`.
pub fn e_transform(f: TruncatedSeries) -> SeriesFunction {
    SeriesFunction::new(f)
}

/// `fw = Σ a_n ∫ⁿ w`.
pub fn module_action(f: &TruncatedSeries, w: &SeriesFunction) -> SeriesFunction {
    let n = f.truncation().min(w.truncation());
    let mut out = TruncatedSeries::zero(n);
    let mut integral = w.h.truncate(n);
    for a in &f.coeffs()[..=n] {
        if !a.is_zero() {
            out = &out + &integral.scale(a);
        }
        // ∫ raises the known order by one; cut back to the common truncation.
        integral = integral.mul_monomial(1).truncate(n);
    }
    SeriesFunction::new(out)
}

/// `D_φ` for `φ = f / T^m`, `m = max(0, −ord φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffOperator {
    phi: LaurentSeries,
    f: TruncatedSeries,
    m: usize,
}

impl DiffOperator {
    /// Fails on the exact zero and on series whose order is undecidable.
    pub fn new(phi: LaurentSeries) -> Result<Self> {
        match phi.order()? {
            Order::Infinite => Err(Error::ZeroOperator),
            Order::Finite(_) => {
                let (f, m) = phi.to_fraction();
                Ok(Self { phi, f, m })
            }
        }
    }

    /// `f(D)` for a polynomial `f(s) = a_0 s^n + … + a_n`, given highest
    /// coefficient first; `φ = T^(−n)(a_0 + a_1 T + … + a_n T^n)`.
    pub fn from_polynomial(coeffs: &[Coefficient], truncation: usize) -> Result<Self> {
        let n = coeffs.len().saturating_sub(1) as i64;
        let body = TruncatedSeries::from_poly(coeffs, truncation.max(coeffs.len().saturating_sub(1)));
        Self::new(LaurentSeries::new(-n, body))
    }

    pub fn phi(&self) -> &LaurentSeries {
        &self.phi
    }

    /// `(f, m)` with `φ = f / T^m`.
    pub fn fraction(&self) -> (&TruncatedSeries, usize) {
        (&self.f, self.m)
    }

    /// Minus the order of φ; the dimension of the solution space when
    /// positive.
    pub fn degree(&self) -> i64 {
        -self.phi.ord()
    }

    /// `D^m(f w)`. Needs at least `m` derivatives of `w`.
    pub fn apply(&self, w: &SeriesFunction) -> Result<SeriesFunction> {
        if w.truncation() < self.m {
            return Err(Error::InsufficientTruncation {
                needed: self.m as i64,
                have: w.truncation() as i64,
            });
        }
        let fw = module_action(&self.f, w);
        Ok(SeriesFunction::new(fw.h.shift_by(self.m)?))
    }

    /// The unit `u` in `φ = u / T^n`, at truncation `N`.
    fn unit(&self, truncation: usize) -> Result<TruncatedSeries> {
        let n = self.degree();
        if n <= 0 {
            return Err(Error::NotPositiveDegree(n));
        }
        let body = self.phi.body();
        if body.truncation() < truncation {
            return Err(Error::InsufficientTruncation {
                needed: truncation as i64,
                have: body.truncation() as i64,
            });
        }
        Ok(body.truncate(truncation))
    }

    /// Solution basis `E(T^k / u)`, `k = 0..n−1`, of `D_φ w = 0` for
    /// `φ = u / T^n` with `n ≥ 1`.
    pub fn solve(&self, truncation: usize) -> Result<Vec<SeriesFunction>> {
        let u_inv = self.unit(truncation)?.invert()?;
        Ok((0..self.degree() as usize)
            .map(|k| SeriesFunction::new(u_inv.mul_monomial(k).truncate(truncation)))
            .collect())
    }

    /// The solution with `w^(k)(0) = init[k]` for `k < n`: `E(p / u)` with
    /// `p = (c·u) mod T^n`, `c = Σ init_k T^k`.
    pub fn solve_ivp(&self, init: &[Coefficient], truncation: usize) -> Result<SeriesFunction> {
        let u = self.unit(truncation)?;
        let n = self.degree() as usize;
        if init.len() != n {
            return Err(Error::InitLength { expected: n, got: init.len() });
        }
        let c = TruncatedSeries::from_poly(init, n - 1);
        let p = &c * &u.resize(n - 1);
        let w = &p.resize(truncation) * &u.invert()?;
        Ok(SeriesFunction::new(w))
    }
}

/// Checks `D^m(f w) = D^n(g w)` on Taylor models for `T^n f = T^m g`.
pub fn lemma1_equal(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    m: usize,
    n: usize,
    w: &SeriesFunction,
) -> Result<bool> {
    if !f.mul_monomial(n).agrees_with(&g.mul_monomial(m)) {
        return Err(Error::Precondition("T^n f ≠ T^m g".into()));
    }
    let need = m.max(n);
    if w.truncation() < need {
        return Err(Error::InsufficientTruncation { needed: need as i64, have: w.truncation() as i64 });
    }
    let lhs = module_action(f, w).h.shift_by(m)?;
    let rhs = module_action(g, w).h.shift_by(n)?;
    Ok(lhs.agrees_with(&rhs))
}

/// Rank over ℚ of the matrix whose rows are the first `cols` derivatives at
/// 0 of each function.
pub fn initial_value_rank(functions: &[SeriesFunction], cols: usize) -> usize {
    let rows: Vec<Vec<Coefficient>> = functions
        .iter()
        .map(|w| (0..cols).map(|k| w.h.coeffs().get(k).cloned().unwrap_or_else(coeff::zero)).collect())
        .collect();
    linalg::rank(&rows)
}
