//! Plane-curve charts, branch expansion by Newton lifting, and the
//! embedding ♯ of rational functions on the curve into Laurent series in
//! the local parameter.
//!
//! A chart is an affine equation `F(u, t) = 0` with a smooth point `(u0, 0)`
//! where `∂F/∂u ≠ 0`, so `t` is a local parameter and the branch `u(t)` is a
//! power series. The function-field generators (e.g. `x`, `y`) are given as
//! rational expressions in `u` and `t`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::coeff::{self, Coefficient};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, RationalExpr};
use crate::laurent::LaurentSeries;
use crate::poly::BivariatePoly;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveChart {
    equation: BivariatePoly,
    u0: Coefficient,
    coords: BTreeMap<String, RationalExpr>,
}

/// On-disk form of a chart; every exact value is a string.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ChartFile {
    #[serde(rename = "F")]
    pub equation: String,
    pub u0: String,
    #[serde(default)]
    pub coords: BTreeMap<String, String>,
}

impl CurveChart {
    pub fn new(
        equation: BivariatePoly,
        u0: Coefficient,
        coords: BTreeMap<String, RationalExpr>,
    ) -> Result<Self> {
        let at_point = equation.eval(&u0, &Coefficient::zero());
        if !at_point.is_zero() {
            return Err(Error::NotOnCurve(coeff::to_string(&at_point)));
        }
        if equation.diff_u().eval(&u0, &Coefficient::zero()).is_zero() {
            return Err(Error::DegenerateBranch);
        }
        for expr in coords.values() {
            if let Some(v) = expr.variables().into_iter().find(|v| v != "u" && v != "t") {
                return Err(Error::UnknownVariable(v));
            }
        }
        Ok(Self { equation, u0, coords })
    }

    pub fn from_file(file: &ChartFile) -> Result<Self> {
        let equation = BivariatePoly::from_expr(&parse_expr(&file.equation)?)?;
        let u0 = coeff::parse(&file.u0)?;
        let coords = file
            .coords
            .iter()
            .map(|(name, text)| Ok((name.clone(), parse_expr(text)?)))
            .collect::<Result<_>>()?;
        Self::new(equation, u0, coords)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ChartFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    /// `y² − x² = 1` near the point at infinity `(1:1:0)`, in the chart
    /// `u = Y/X`, `t = Z/X`: `u² − 1 = t²`, point `(1, 0)`, `x = 1/t`, `y = u/t`.
    pub fn hyperbola() -> Self {
        Self::from_file(&ChartFile {
            equation: "u^2 - t^2 - 1".into(),
            u0: "1".into(),
            coords: [("x", "1/t"), ("y", "u/t")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        })
        .expect("hyperbola chart is valid")
    }

    /// The projective line at infinity: trivial curve `u = t`, `s = 1/t`.
    pub fn projective_line() -> Self {
        Self::from_file(&ChartFile {
            equation: "u - t".into(),
            u0: "0".into(),
            coords: [("s".to_string(), "1/t".to_string())].into_iter().collect(),
        })
        .expect("projective line chart is valid")
    }

    pub fn equation(&self) -> &BivariatePoly {
        &self.equation
    }

    pub fn u0(&self) -> &Coefficient {
        &self.u0
    }

    pub fn coords(&self) -> &BTreeMap<String, RationalExpr> {
        &self.coords
    }

    /// Names an expression on this chart may use: the coordinates, plus the
    /// chart variables `u` and `t` unless a coordinate shadows them.
    pub fn declared_names(&self) -> BTreeSet<String> {
        let mut names: BTreeSet<String> = self.coords.keys().cloned().collect();
        names.insert("u".into());
        names.insert("t".into());
        names
    }
}

/// Newton lifting `u ← u − F(u,t)/F_u(u,t)`. Returns every iterate; the
/// `k`-th one satisfies `F(u_k(t), t) ≡ 0 mod T^(2^k)` (cut at `N + 1`).
pub fn expand_branch_steps(chart: &CurveChart, truncation: usize) -> Result<Vec<TruncatedSeries>> {
    let f = &chart.equation;
    let fu = f.diff_u();
    let mut u = TruncatedSeries::constant(chart.u0.clone(), 0);
    let mut steps = vec![u.clone()];
    // `prec` counts correct coefficients: 1, 2, 4, …
    let mut prec = 1usize;
    while prec < truncation + 1 {
        prec = (2 * prec).min(truncation + 1);
        let guess = u.resize(prec - 1);
        let residual = f.eval_series(&guess);
        let slope = fu.eval_series(&guess).invert().map_err(|_| Error::DegenerateBranch)?;
        u = &guess - &(&residual * &slope);
        steps.push(u.clone());
    }
    Ok(steps)
}

/// The branch `u(t)` through `(u0, 0)` modulo `T^(N+1)`.
pub fn expand_branch(chart: &CurveChart, truncation: usize) -> Result<TruncatedSeries> {
    let u = expand_branch_steps(chart, truncation)?.pop().expect("at least one step");
    debug_assert!(chart.equation.eval_series(&u).is_zero());
    Ok(u)
}

/// Laurent expansion of `expr` at the chart point with `t ↦ T`, each
/// coordinate evaluated on the branch expanded to `N`.
pub fn sharp_embed(expr: &RationalExpr, chart: &CurveChart, truncation: usize) -> Result<LaurentSeries> {
    let names = chart.declared_names();
    if let Some(v) = expr.variables().into_iter().find(|v| !names.contains(v)) {
        return Err(Error::UnknownVariable(v));
    }
    let branch = expand_branch(chart, truncation)?;
    let mut env = Env { truncation, base: BTreeMap::new(), coords: BTreeMap::new() };
    env.base.insert("u".into(), LaurentSeries::from_series(branch));
    env.base.insert("t".into(), LaurentSeries::monomial(1, truncation));
    for name in &expr.variables() {
        if let Some(def) = chart.coords.get(name) {
            let value = env.eval(def, true)?;
            env.coords.insert(name.clone(), value);
        }
    }
    let value = env.eval(expr, false)?;
    if !value.is_exact_zero() && value.is_zero() {
        return Err(Error::PrecisionExhausted(value.precision().unwrap_or_default()));
    }
    Ok(value)
}

/// `sharp_embed` with the working truncation raised until the Laurent body
/// keeps at least `relative` coefficients past the leading one. Cancellation
/// in sums can eat relative precision; this retries with up to 16× the
/// requested working precision before giving up.
pub fn sharp_embed_relative(expr: &RationalExpr, chart: &CurveChart, relative: usize) -> Result<LaurentSeries> {
    let mut working = relative.max(1);
    loop {
        let phi = sharp_embed(expr, chart, working)?;
        if phi.is_exact_zero() || phi.body().truncation() >= relative {
            return Ok(phi.truncate(relative));
        }
        if working >= 16 * relative.max(1) {
            return Err(Error::PrecisionExhausted(phi.precision().unwrap_or_default()));
        }
        working *= 2;
    }
}

struct Env {
    truncation: usize,
    base: BTreeMap<String, LaurentSeries>,
    coords: BTreeMap<String, LaurentSeries>,
}

impl Env {
    fn eval(&self, e: &RationalExpr, chart_level: bool) -> Result<LaurentSeries> {
        Ok(match e {
            RationalExpr::Const(c) => LaurentSeries::constant(c.clone(), self.truncation),
            RationalExpr::Var(v) => {
                let hit = if chart_level { None } else { self.coords.get(v) };
                hit.or_else(|| self.base.get(v))
                    .cloned()
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))?
            }
            RationalExpr::Neg(a) => self.eval(a, chart_level)?.neg(),
            RationalExpr::Add(a, b) => self.eval(a, chart_level)?.add(&self.eval(b, chart_level)?),
            RationalExpr::Sub(a, b) => self.eval(a, chart_level)?.sub(&self.eval(b, chart_level)?),
            RationalExpr::Mul(a, b) => self.eval(a, chart_level)?.mul(&self.eval(b, chart_level)?),
            RationalExpr::Div(a, b) => {
                let den = self.eval(b, chart_level)?;
                if den.is_zero() {
                    return Err(Error::ZeroDivision(b.to_string()));
                }
                self.eval(a, chart_level)?.div(&den)?
            }
            RationalExpr::Pow(_, 0) => LaurentSeries::one(self.truncation),
            RationalExpr::Pow(a, n) => {
                let base = self.eval(a, chart_level)?;
                if *n < 0 && base.is_zero() {
                    return Err(Error::ZeroDivision(a.to_string()));
                }
                base.pow(*n)?
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{int, ratio};
    use crate::laurent::Order;

    fn chart(f: &str, u0: &str, coords: &[(&str, &str)]) -> Result<CurveChart> {
        CurveChart::from_file(&ChartFile {
            equation: f.into(),
            u0: u0.into(),
            coords: coords.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
        })
    }

    #[test]
    fn hyperbola_branch_is_binomial_series() {
        let u = expand_branch(&CurveChart::hyperbola(), 7).unwrap();
        let expected = [int(1), int(0), ratio(1, 2), int(0), ratio(-1, 8), int(0), ratio(1, 16), int(0)];
        assert_eq!(u.coeffs(), &expected);
    }

    #[test]
    fn linear_and_cubic_branches() {
        let u = expand_branch(&chart("u - t", "0", &[]).unwrap(), 4).unwrap();
        assert_eq!(u, TruncatedSeries::from_ints(&[0, 1], 4));

        let c = chart("u^3 - 1 - t", "1", &[]).unwrap();
        let u = expand_branch(&c, 3).unwrap();
        assert_eq!(u.coeffs(), &[int(1), ratio(1, 3), ratio(-1, 9), ratio(5, 81)]);
        // cubing gives back 1 + T
        assert_eq!(u.pow(3), TruncatedSeries::from_ints(&[1, 1], 3));
    }

    #[test]
    fn newton_residual_doubles() {
        let c = chart("u^3 + t*u - 2*t^2 - 1 - t", "1", &[]).unwrap();
        let steps = expand_branch_steps(&c, 30).unwrap();
        for (k, u) in steps.iter().enumerate() {
            let r = c.equation().eval_series(u);
            let exact = (1usize << k).min(31);
            assert!(r.coeffs()[..exact.min(r.coeffs().len())].iter().all(Zero::is_zero), "step {k}");
        }
        assert_eq!(steps.last().unwrap().truncation(), 30);
    }

    #[test]
    fn chart_validation() {
        assert!(matches!(chart("u^2 - t^2 - 1", "2", &[]), Err(Error::NotOnCurve(_))));
        assert_eq!(chart("u^2 - t^3", "0", &[]), Err(Error::DegenerateBranch));
        assert_eq!(
            chart("u - t", "0", &[("s", "1/z")]),
            Err(Error::UnknownVariable("z".into()))
        );
        let json = r#"{"F": "u^2 - t^2 - 1", "u0": "1", "coords": {"x": "1/t", "y": "u/t"}}"#;
        assert_eq!(CurveChart::from_json(json).unwrap(), CurveChart::hyperbola());
        assert!(matches!(CurveChart::from_json("{"), Err(Error::Format(_))));
    }

    #[test]
    fn embeds_y_on_hyperbola() {
        let h = CurveChart::hyperbola();
        let y = sharp_embed(&parse_expr("y").unwrap(), &h, 8).unwrap();
        assert_eq!(y.ord(), -1);
        assert_eq!(y.body(), &expand_branch(&h, 8).unwrap());
    }

    #[test]
    fn embeds_bessel_generators() {
        let h = CurveChart::hyperbola();
        let u = expand_branch(&h, 12).unwrap();
        for n in 0..5u32 {
            let e = parse_expr(&format!("y*(x+y)^{n}")).unwrap();
            let phi = sharp_embed(&e, &h, 12).unwrap();
            assert_eq!(phi.order(), Ok(Order::Finite(-(n as i64 + 1))));
            let body = &u * &(&TruncatedSeries::one(12) + &u).pow(n);
            assert_eq!(phi.body(), &body);
            assert_eq!(phi.body().free_term(), &int(1 << n));
        }
    }

    #[test]
    fn classical_substitution_on_projective_line() {
        let line = CurveChart::projective_line();
        let phi = sharp_embed(&parse_expr("2*s^3 - s + 5").unwrap(), &line, 6).unwrap();
        assert_eq!(phi.ord(), -3);
        assert_eq!(phi.body(), &TruncatedSeries::from_ints(&[2, 0, -1, 5], 6));

        let phi = sharp_embed(&parse_expr("s^3/(s-1)^2").unwrap(), &line, 6).unwrap();
        assert_eq!(phi.ord(), -1);
        // (1 - T)^-2
        assert_eq!(phi.body(), &TruncatedSeries::from_ints(&[1, 2, 3, 4, 5, 6, 7], 6));
    }

    #[test]
    fn embedding_errors() {
        let h = CurveChart::hyperbola();
        assert_eq!(
            sharp_embed(&parse_expr("1/0").unwrap(), &h, 4),
            Err(Error::ZeroDivision("0".into()))
        );
        assert_eq!(
            sharp_embed(&parse_expr("x/(y-y)").unwrap(), &h, 4),
            Err(Error::ZeroDivision("y-y".into()))
        );
        assert!(matches!(
            sharp_embed(&parse_expr("y^2 - x^2 - 1").unwrap(), &h, 4),
            Err(Error::PrecisionExhausted(_))
        ));
        assert_eq!(
            sharp_embed(&parse_expr("z").unwrap(), &h, 4),
            Err(Error::UnknownVariable("z".into()))
        );
        assert!(sharp_embed(&parse_expr("0*y").unwrap(), &h, 4).unwrap().is_exact_zero());
    }

    #[test]
    fn relative_precision_is_restored() {
        // y − x = (u − 1)/t cancels its two leading terms
        let h = CurveChart::hyperbola();
        let e = parse_expr("y - x").unwrap();
        let direct = sharp_embed(&e, &h, 10).unwrap();
        assert_eq!(direct.ord(), 1);
        assert!(direct.body().truncation() < 10);
        let phi = sharp_embed_relative(&e, &h, 10).unwrap();
        assert_eq!(phi.ord(), 1);
        assert_eq!(phi.body().truncation(), 10);
        assert!(phi.agrees_with(&direct));
    }

    #[test]
    fn curve_relation_is_preserved() {
        let h = CurveChart::hyperbola();
        let x = sharp_embed(&RationalExpr::var("x"), &h, 20).unwrap();
        let y = sharp_embed(&RationalExpr::var("y"), &h, 20).unwrap();
        let lhs = y.mul(&y).sub(&x.mul(&x));
        assert!(lhs.agrees_with(&LaurentSeries::one(20)));
        assert_eq!(lhs.precision(), Some(18));
    }
}
