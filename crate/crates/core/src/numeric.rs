//! Floating-point sampling of Taylor models with a heuristic tail estimate.
//!
//! The partial sum `Σ_{k≤N} c_k ξ^k`, `c_k = h_k / k!`, is evaluated in
//! double precision. The omitted tail is estimated from the decay of the last
//! few nonzero `c_k`: they give a radius estimate `ρ`, and for `|ξ| < ρ` the
//! tail is bounded by a geometric series in `q = |ξ| / ρ`. Outside that
//! range the sample is flagged unreliable instead of guessing.

use std::fmt::Write as _;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::operator::SeriesFunction;

/// Number of trailing nonzero coefficients used for the radius estimate.
const RADIUS_WINDOW: usize = 4;

/// Sample points `lo = ξ_0 < … < ξ_{count−1} = hi`, one of which is 0.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalGrid {
    lo: f64,
    hi: f64,
    count: usize,
}

impl EvalGrid {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidGrid("endpoints must be finite".into()));
        }
        if lo > 0.0 || hi < 0.0 {
            return Err(Error::InvalidGrid(format!("[{lo}, {hi}] does not contain 0")));
        }
        if count < 2 {
            return Err(Error::InvalidGrid("need at least 2 points".into()));
        }
        if lo == hi {
            return Err(Error::InvalidGrid("empty interval".into()));
        }
        let grid = Self { lo, hi, count };
        if grid.origin_index().is_none() {
            return Err(Error::InvalidGrid(format!(
                "0 is not a grid point of {lo}:{hi}:{count}"
            )));
        }
        Ok(grid)
    }

    /// Parses `lo:hi:count`.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = || Error::InvalidGrid(format!("expected lo:hi:count, got `{spec}`"));
        let parts: Vec<&str> = spec.split(':').collect();
        let [lo, hi, count] = parts.as_slice() else {
            return Err(bad());
        };
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        let count: usize = count.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi, count)
    }

    fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.count - 1) as f64
    }

    fn origin_index(&self) -> Option<usize> {
        let i = (-self.lo / self.step()).round();
        let x = self.lo + i * self.step();
        (x.abs() <= 1e-9 * self.step()).then_some(i as usize)
    }

    /// Grid points; the one nearest 0 is snapped to exactly 0.
    pub fn points(&self) -> Vec<f64> {
        let origin = self.origin_index();
        (0..self.count)
            .map(|i| {
                if Some(i) == origin {
                    0.0
                } else if i == self.count - 1 {
                    self.hi
                } else {
                    self.lo + i as f64 * self.step()
                }
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sample {
    pub xi: f64,
    pub value: f64,
    /// Estimated bound on the omitted tail; `+∞` when unreliable.
    pub tail_bound: f64,
    /// Set when `|ξ|` lies outside the estimated convergence radius.
    pub tail_unreliable: bool,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SampleTable {
    pub rows: Vec<Sample>,
}

impl SampleTable {
    pub fn any_unreliable(&self) -> bool {
        self.rows.iter().any(|r| r.tail_unreliable)
    }

    /// `xi,value,tail_bound` with one row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("xi,value,tail_bound\n");
        for r in &self.rows {
            let tail = if r.tail_bound.is_finite() { format!("{:e}", r.tail_bound) } else { "inf".into() };
            let _ = writeln!(out, "{},{},{}", r.xi, r.value, tail);
        }
        out
    }
}

/// Precomputed float coefficients and radius estimate for one model.
struct Evaluator {
    coeffs: Vec<f64>,
    last_nonzero: Option<usize>,
    radius: Option<f64>,
    exact: bool,
}

impl Evaluator {
    fn new(w: &SeriesFunction) -> Self {
        let coeffs: Vec<f64> = w
            .taylor_coeffs()
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect();
        let nonzero: Vec<usize> = coeffs.iter().enumerate().filter(|(_, c)| **c != 0.0).map(|(k, _)| k).collect();
        let window = &nonzero[nonzero.len().saturating_sub(RADIUS_WINDOW)..];
        // ρ = min over consecutive pairs of (|c_i| / |c_j|)^(1/(j−i))
        let radius = window
            .windows(2)
            .map(|p| (coeffs[p[0]].abs() / coeffs[p[1]].abs()).powf(1.0 / (p[1] - p[0]) as f64))
            .reduce(f64::min);
        Self { coeffs, last_nonzero: nonzero.last().copied(), radius, exact: w.is_exact() }
    }

    fn sample(&self, xi: f64) -> Sample {
        let value = self.coeffs.iter().rev().fold(0.0, |acc, c| acc * xi + c);
        let (tail_bound, tail_unreliable) = self.tail(xi);
        Sample { xi, value, tail_bound, tail_unreliable }
    }

    fn tail(&self, xi: f64) -> (f64, bool) {
        if self.exact || xi == 0.0 {
            return (0.0, false);
        }
        let (Some(last), Some(rho)) = (self.last_nonzero, self.radius) else {
            return (f64::INFINITY, true);
        };
        let q = xi.abs() / rho;
        if q.is_nan() || q >= 1.0 {
            return (f64::INFINITY, true);
        }
        // |c_{last+j}| ≈ |c_last| ρ^(−j); sum the terms past the truncation.
        let n = self.coeffs.len() - 1;
        let lead = self.coeffs[last].abs() * xi.abs().powi(last as i32);
        (lead * q.powi((n + 1 - last) as i32) / (1.0 - q), false)
    }
}

/// Samples `w` on `grid`.
pub fn eval_function(w: &SeriesFunction, grid: &EvalGrid) -> SampleTable {
    let ev = Evaluator::new(w);
    SampleTable { rows: grid.points().into_iter().map(|x| ev.sample(x)).collect() }
}

/// A single sample at `xi`.
pub fn eval_at(w: &SeriesFunction, xi: f64) -> Sample {
    Evaluator::new(w).sample(xi)
}
