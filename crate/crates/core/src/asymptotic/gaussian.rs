//! Distance of exact distributions from their Gaussian limit, and the
//! tabulated saddle sweep.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use super::{
    mu_sigma_tol, qn_saddle_approx, solve_saddle, theorem_constants, Combination, SaddleProblem, DEFAULT_TAIL_TOL,
};
use crate::error::{Error, Result};
use crate::planepart::{count_colored, distribution, DistSource, Distribution};

/// Natural log of a positive big integer.
pub fn log_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `sup_x |P(S / scale <= x) - Phi((x - mu) / sigma)|`, checked on both
/// sides of every atom.
pub fn kolmogorov_distance(dist: &Distribution, scale: f64, mu: f64, sigma2: f64) -> Result<f64> {
    let normal = Normal::new(mu, sigma2.sqrt()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let mut cdf = 0.0;
    let mut worst: f64 = 0.0;
    for (v, p) in dist.probabilities() {
        let x = v as f64 / scale;
        let phi = normal.cdf(x);
        worst = worst.max((cdf - phi).abs());
        cdf += p;
        worst = worst.max((cdf - phi).abs());
    }
    Ok(worst.min(1.0))
}

/// Kolmogorov distance between `S_{n,r} / n^(2/3)` (exact, from the DT
/// product) and its normal limit.
pub fn gaussian_distance(r: usize, n: u32) -> Result<f64> {
    let dist = distribution(r, n, DistSource::MPoly)?;
    let (mu, sigma2) = theorem_constants(r);
    kolmogorov_distance(&dist, (n as f64).powf(2.0 / 3.0), mu, sigma2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u64,
    pub r: usize,
    pub rho: f64,
    pub mu_n: f64,
    pub sigma2_n: f64,
    pub ks_distance: Option<f64>,
    pub log_qn_exact: Option<f64>,
    pub log_qn_approx: f64,
}

/// Sizes above which the exact columns are left empty, and the tail
/// tolerance for the moment sums.
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub ks_max_n: u64,
    pub exact_max_n: u64,
    pub tail_tol: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { ks_max_n: 60, exact_max_n: 5000, tail_tol: DEFAULT_TAIL_TOL }
    }
}

pub fn saddle_sweep(r: usize, ns: &[u64], w: Combination, opts: SweepOptions) -> Result<Vec<SweepRow>> {
    ns.par_iter()
        .map(|&n| {
            let nf = n as f64;
            let rho = solve_saddle(&SaddleProblem::untilted(r, nf)?)?.rho;
            let m = mu_sigma_tol(nf, r, w, opts.tail_tol)?;
            let ks_distance = if n <= opts.ks_max_n { Some(gaussian_distance(r, n as u32)?) } else { None };
            let log_qn_exact =
                if n <= opts.exact_max_n { Some(log_bigint(&count_colored(r, n as usize))) } else { None };
            Ok(SweepRow {
                n,
                r,
                rho,
                mu_n: m.mu_n,
                sigma2_n: m.sigma2_n,
                ks_distance,
                log_qn_exact,
                log_qn_approx: qn_saddle_approx(nf, r)?,
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
    let mut out = String::from("n,r,rho,mu_n,sigma2_n,ks_distance,log_qn_exact,log_qn_approx\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.n,
            row.r,
            row.rho,
            row.mu_n,
            row.sigma2_n,
            opt(row.ks_distance),
            opt(row.log_qn_exact),
            row.log_qn_approx
        )
        .unwrap();
    }
    out
}
