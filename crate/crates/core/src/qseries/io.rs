use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::QSeries;
use crate::error::{Error, Result};
use crate::ring::TRat;

/// JSON record `{"r": .., "trunc": .., "coeffs": [TRat, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub r: usize,
    pub trunc: usize,
    pub coeffs: Vec<TRat>,
}

impl SeriesRecord {
    pub fn new(r: usize, series: &QSeries) -> Self {
        SeriesRecord { r, trunc: series.trunc(), coeffs: series.coeffs().to_vec() }
    }

    pub fn into_series(self) -> Result<QSeries> {
        if self.coeffs.len() != self.trunc + 1 {
            return Err(Error::DimensionMismatch { expected: self.trunc + 1, got: self.coeffs.len() });
        }
        Ok(QSeries::new(self.coeffs))
    }
}

/// CSV with header `n,t_exponent,coefficient`, one row per nonzero term.
/// Only Laurent-polynomial coefficients can be written this way.
pub fn series_to_csv(series: &QSeries) -> Result<String> {
    let mut out = String::from("n,t_exponent,coefficient\n");
    for (n, c) in series.coeffs().iter().enumerate() {
        let p = c.as_laurent().ok_or_else(|| {
            Error::InvalidArgument(format!("coefficient of q^{n} is not a Laurent polynomial"))
        })?;
        for (e, v) in p.terms() {
            writeln!(out, "{n},{e},{v}").unwrap();
        }
    }
    Ok(out)
}
