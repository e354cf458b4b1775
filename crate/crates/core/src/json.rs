//! JSON forms of series and Taylor models.
//!
//! ```json
//! {"ord": -1, "truncation": 3, "coeffs": ["1", "0", "1/2", "0"]}
//! ```
//!
//! Exact numbers are always strings `"p/q"` (or `"p"`), never floats.
//! Taylor models add `"e_transform": true`; polynomial models also carry
//! `"exact": true`.

use serde::{Deserialize, Serialize};

use crate::coeff;
use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::operator::SeriesFunction;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub ord: i64,
    pub truncation: usize,
    pub coeffs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_transform: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_zero: Option<bool>,
}

impl SeriesJson {
    fn plain(ord: i64, s: &TruncatedSeries) -> Self {
        Self {
            ord,
            truncation: s.truncation(),
            coeffs: s.coeffs().iter().map(coeff::to_string).collect(),
            e_transform: None,
            exact: None,
            exact_zero: None,
        }
    }

    pub fn from_series(s: &TruncatedSeries) -> Self {
        Self::plain(0, s)
    }

    pub fn from_laurent(l: &LaurentSeries) -> Self {
        let mut out = Self::plain(l.ord(), l.body());
        if l.is_exact_zero() {
            out.exact_zero = Some(true);
        }
        out
    }

    pub fn from_function(w: &SeriesFunction) -> Self {
        let mut out = Self::plain(0, w.h());
        out.e_transform = Some(true);
        if w.is_exact() {
            out.exact = Some(true);
        }
        out
    }

    fn body(&self) -> Result<TruncatedSeries> {
        if self.coeffs.len() != self.truncation + 1 {
            return Err(Error::Format(format!(
                "truncation {} needs {} coefficients, got {}",
                self.truncation,
                self.truncation + 1,
                self.coeffs.len()
            )));
        }
        let coeffs = self.coeffs.iter().map(|c| coeff::parse(c)).collect::<Result<_>>()?;
        Ok(TruncatedSeries::new(coeffs))
    }

    pub fn to_series(&self) -> Result<TruncatedSeries> {
        if self.ord != 0 {
            return Err(Error::Format(format!("power series must have ord 0, got {}", self.ord)));
        }
        self.body()
    }

    pub fn to_laurent(&self) -> Result<LaurentSeries> {
        if self.exact_zero == Some(true) {
            return Ok(LaurentSeries::exact_zero());
        }
        Ok(LaurentSeries::new(self.ord, self.body()?))
    }

    pub fn to_function(&self) -> Result<SeriesFunction> {
        let h = self.to_series()?;
        Ok(if self.exact == Some(true) { SeriesFunction::polynomial(h) } else { SeriesFunction::new(h) })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}
