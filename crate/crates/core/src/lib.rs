//! Exact-arithmetic engine for linear differential equations attached to
//! plane algebraic curves.
//!
//! A rational function on a curve chart is expanded at a smooth point into a
//! Laurent series `φ = f / T^m` ([`curve`]); that series defines the operator
//! `D_φ = D^m ∘ f` acting on Taylor models of analytic functions
//! ([`operator`]). Equations of positive degree have closed-form solution
//! bases built from the E-transform `Σ a_n T^n ↦ Σ a_n ξ^n / n!`.
//!
//! All coefficients are exact rationals; floating point only appears in
//! [`numeric`].

pub mod coeff;
pub mod curve;
pub mod error;
pub mod expr;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod numeric;
pub mod operator;
pub mod poly;
pub mod series;
pub mod special;
pub mod verify;

pub use coeff::Coefficient;
pub use curve::{expand_branch, sharp_embed, sharp_embed_relative, CurveChart};
pub use error::{Error, Result};
pub use expr::{parse_expr, RationalExpr};
pub use laurent::{LaurentSeries, Order};
pub use numeric::{eval_function, EvalGrid, Sample, SampleTable};
pub use operator::{DiffOperator, SeriesFunction};
pub use series::TruncatedSeries;
