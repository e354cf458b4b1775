//! End-to-end verification of the hyperbola/Bessel results.
//!
//! Each check is run against one shared family `J_0 … J_{n_max+1}` so that
//! an injected perturbation surfaces as a named failure.

use std::fmt;

use num_traits::Zero;

use crate::coeff::{self, factorial, Coefficient};
use crate::curve::{sharp_embed, CurveChart};
use crate::expr::parse_expr;
use crate::operator::{DiffOperator, SeriesFunction};
use crate::series::TruncatedSeries;
use crate::special::{self, ascending_series_coeff};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {} ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Adds `delta` to `h_index` of `J_order` before any check runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perturbation {
    pub order: u32,
    pub index: usize,
    pub delta: Coefficient,
}

/// `J_0` ξ-coefficients: `(−1)^k / (4^k (k!)²)` at `ξ^(2k)`.
fn j0_closed_form(i: usize) -> Coefficient {
    if i % 2 == 1 {
        return Coefficient::zero();
    }
    let k = i / 2;
    let sign = if k.is_multiple_of(2) { coeff::one() } else { -coeff::one() };
    let kf = factorial(k);
    sign / (num_traits::pow(coeff::int(4), k) * &kf * &kf)
}

/// `J_1` ξ-coefficients: `(−1)^(k+1) / (2^(2k−1) (k−1)! k!)` at `ξ^(2k−1)`.
fn j1_closed_form(i: usize) -> Coefficient {
    if i.is_multiple_of(2) {
        return Coefficient::zero();
    }
    let k = i.div_ceil(2);
    let sign = if k % 2 == 1 { coeff::one() } else { -coeff::one() };
    sign / (num_traits::pow(coeff::int(2), 2 * k - 1) * factorial(k - 1) * factorial(k))
}

fn first_mismatch(w: &SeriesFunction, expected: impl Fn(usize) -> Coefficient) -> Option<usize> {
    w.taylor_coeffs().iter().enumerate().find(|(i, c)| **c != expected(*i)).map(|(i, _)| i)
}

fn mismatch_detail(at: Option<usize>) -> String {
    at.map(|i| format!("first mismatch at ξ^{i}")).unwrap_or_default()
}

/// Runs every check for orders up to `n_max` at truncation `N`.
/// With `n_max = 0` only the `J_0` closed form is checked.
pub fn verify_bessel(n_max: u32, truncation: usize, perturb: Option<&Perturbation>) -> Report {
    let mut family: Vec<SeriesFunction> =
        (0..=n_max + 1).map(|n| special::bessel_series(n, truncation)).collect();
    if let Some(p) = perturb {
        if let Some(w) = family.get_mut(p.order as usize) {
            let mut coeffs = w.h().coeffs().to_vec();
            if let Some(c) = coeffs.get_mut(p.index) {
                *c += &p.delta;
            }
            *w = SeriesFunction::new(TruncatedSeries::new(coeffs));
        }
    }

    let mut report = Report::default();
    let at = first_mismatch(&family[0], j0_closed_form);
    report.push("closed-form/J0", at.is_none(), mismatch_detail(at));
    if n_max == 0 {
        return report;
    }
    let at = first_mismatch(&family[1], j1_closed_form);
    report.push("closed-form/J1", at.is_none(), mismatch_detail(at));

    for n in 0..=n_max {
        let at = first_mismatch(&family[n as usize], |i| {
            let i = i as u32;
            if i >= n && (i - n).is_multiple_of(2) {
                ascending_series_coeff(n, (i - n) / 2)
            } else {
                Coefficient::zero()
            }
        });
        report.push(format!("oracle/J{n}-ascending-series"), at.is_none(), mismatch_detail(at));
    }

    for n in 1..=n_max {
        let idx = n as usize;
        let j_level = special::check_recurrence(&family[idx - 1], &family[idx], &family[idx + 1]);
        let g_level = special::verify_recurrence(n, truncation).unwrap_or(false);
        let detail = match (g_level, j_level) {
            (true, true) => String::new(),
            (false, _) => "g-level identity failed".into(),
            (true, false) => "2J'_n = J_{n-1} - J_{n+1} failed".into(),
        };
        report.push(format!("recurrence/n={n}"), g_level && j_level, detail);
    }

    let hyperbola = CurveChart::hyperbola();
    for n in 0..=n_max {
        let idx = n as usize;
        let name = format!("fundamental-system/n={n}");
        if truncation < 2 * idx + 1 {
            report.push(name, false, format!("needs truncation ≥ {}", 2 * n + 1));
            continue;
        }
        let mut system = vec![family[idx].clone()];
        for _ in 0..n {
            match system.last().unwrap().derivative() {
                Ok(d) => system.push(d),
                Err(e) => {
                    report.push(name.clone(), false, e.to_string());
                    break;
                }
            }
        }
        match special::check_fundamental_system(n, &system) {
            Ok(c) if c.residuals_vanish && c.rank == idx + 1 => report.push(name, true, ""),
            Ok(c) => report.push(
                name,
                false,
                format!("residuals vanish: {}, rank {} of {}", c.residuals_vanish, c.rank, n + 1),
            ),
            Err(e) => report.push(name, false, e.to_string()),
        }

        let mut init = vec![Coefficient::zero(); idx + 1];
        init[idx] = coeff::ratio(1, 1 << n);
        let ivp = parse_expr(&format!("y*(x+y)^{n}"))
            .and_then(|e| sharp_embed(&e, &hyperbola, truncation))
            .and_then(DiffOperator::new)
            .and_then(|op| op.solve_ivp(&init, truncation));
        let name = format!("ivp/n={n}");
        match ivp {
            Ok(w) if w.h() == family[idx].h() => report.push(name, true, ""),
            Ok(_) => report.push(name, false, "curve-route solution differs from J_n"),
            Err(e) => report.push(name, false, e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn everything_passes_unperturbed() {
        let r = verify_bessel(4, 24, None);
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks.len(), 2 + 5 + 4 + 5 * 2);
    }

    #[test]
    fn zero_order_only_checks_j0() {
        let r = verify_bessel(0, 20, None);
        assert_eq!(r.checks.len(), 1);
        assert!(r.all_passed());
    }

    #[test]
    fn perturbation_is_named() {
        let p = Perturbation { order: 1, index: 5, delta: coeff::ratio(1, 1000) };
        let r = verify_bessel(3, 20, Some(&p));
        let failed: Vec<_> = r.failures().map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"closed-form/J1"));
        assert!(failed.contains(&"oracle/J1-ascending-series"));
        assert!(failed.contains(&"recurrence/n=1"));
        assert!(failed.contains(&"recurrence/n=2"));
        assert!(failed.contains(&"ivp/n=1"));
        assert!(!failed.contains(&"closed-form/J0"));
    }

    #[test]
    fn short_truncation_fails_fundamental_system() {
        let r = verify_bessel(3, 6, None);
        assert!(r.failures().any(|c| c.name == "fundamental-system/n=3"));
    }
}
