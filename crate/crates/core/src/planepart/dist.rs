//! Exact distribution of `S_{n,r}` under the uniform measure on
//! `r`-coloured plane partitions of `n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::m_poly_enum;
use crate::error::{Error, Result};
use crate::qseries::expand_dt_polys;
use crate::ring::TPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistSource {
    /// Enumerate coloured plane partitions.
    Enum,
    /// Read `M_{n,r}(T)` off the closed-form DT product.
    MPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub r: usize,
    pub n: u32,
    /// `S` value to number of coloured plane partitions.
    pub hist: BTreeMap<i64, BigInt>,
}

impl Distribution {
    pub fn from_poly(r: usize, n: u32, m: &TPoly) -> Result<Self> {
        let mut hist = BTreeMap::new();
        for (e, c) in m.terms() {
            if c.sign() == num_bigint::Sign::Minus {
                return Err(Error::Verification(format!("negative count {c} at S = {e}")));
            }
            hist.insert(e, c.clone());
        }
        Ok(Distribution { r, n, hist })
    }

    pub fn total(&self) -> BigInt {
        self.hist.values().sum()
    }

    fn raw_moment(&self, k: u32) -> BigRational {
        let total = self.total();
        if total.is_zero() {
            return BigRational::zero();
        }
        let s: BigInt = self.hist.iter().map(|(&v, c)| BigInt::from(v).pow(k) * c).sum();
        BigRational::new(s, total)
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.raw_moment(2) - &m * &m
    }

    pub fn mean_f64(&self) -> f64 {
        self.mean().to_f64().unwrap_or(f64::NAN)
    }

    pub fn variance_f64(&self) -> f64 {
        self.variance().to_f64().unwrap_or(f64::NAN)
    }

    /// `(value, probability)` pairs in increasing value order.
    pub fn probabilities(&self) -> Vec<(i64, f64)> {
        let total = self.total();
        self.hist
            .iter()
            .map(|(&v, c)| (v, BigRational::new(c.clone(), total.clone()).to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

pub fn distribution(r: usize, n: u32, source: DistSource) -> Result<Distribution> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    let m = match source {
        DistSource::Enum => m_poly_enum(r, n)?,
        DistSource::MPoly => expand_dt_polys(r, n as usize).swap_remove(n as usize),
    };
    Distribution::from_poly(r, n, &m)
}

/// CSV with header `r,n,s_value,count`.
pub fn distribution_csv(dists: &[Distribution]) -> String {
    let mut out = String::from("r,n,s_value,count\n");
    for d in dists {
        for (v, c) in &d.hist {
            writeln!(out, "{},{},{v},{c}", d.r, d.n).unwrap();
        }
    }
    out
}
