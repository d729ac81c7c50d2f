//! Plethystic exponential and the plethystic form of the DT series.

use num_bigint::BigInt;

use super::QSeries;
use crate::error::{Error, Result};
use crate::ring::{TPoly, TRat};

/// How the Adams operations `psi_k` act on `T = L^{1/2}` (they always send
/// `q -> q^k`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AdamsConvention {
    /// `-T` is a line element: `psi_k(T) = -(-T)^k`. This is the convention
    /// under which the plethystic form reproduces the DT series for all `r`.
    #[default]
    SignedLineElement,
    /// `psi_k(T) = T^k`. Agrees with the above only on even powers of `T`.
    Naive,
}

impl AdamsConvention {
    /// Sign `s` such that `psi_k(T) = s * T^k`.
    fn sign(self, k: u32) -> i8 {
        match self {
            AdamsConvention::SignedLineElement if k.is_multiple_of(2) => -1,
            _ => 1,
        }
    }

    pub fn psi(self, f: &QSeries, k: u32) -> QSeries {
        f.map_t_power(k, self.sign(k)).q_power(k as usize)
    }
}

/// `Exp(f) = exp(sum_{k>=1} psi_k(f) / k)` truncated at `trunc` (and at the
/// truncation of `f`).
pub fn plethystic_exp(f: &QSeries, trunc: usize, conv: AdamsConvention) -> Result<QSeries> {
    if !f.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let t = trunc.min(f.trunc());
    let f = f.truncate(t);

    // log-series: sum_k psi_k(f) / k
    let mut log = QSeries::zero(t);
    for k in 1..=t {
        let inv_k = TRat::canonicalize(TPoly::one(), TPoly::constant(k as i64))?;
        log = log.add(&conv.psi(&f, k as u32).scale(&inv_k));
    }

    // E' = log' E  =>  n E_n = sum_{k=1}^n k log_k E_{n-k}
    let mut e: Vec<TRat> = Vec::with_capacity(t + 1);
    e.push(TRat::one());
    for n in 1..=t {
        let mut acc = TRat::zero();
        for k in 1..=n {
            let lk = log.coeff(k);
            if lk.is_zero() || e[n - k].is_zero() {
                continue;
            }
            acc = &acc + &(&lk.scale_int(&BigInt::from(k)) * &e[n - k]);
        }
        let inv_n = TRat::canonicalize(TPoly::one(), TPoly::constant(n as i64))?;
        e.push(&acc * &inv_n);
    }
    Ok(QSeries::new(e))
}

/// The argument of the plethystic form of `DT_r((-1)^r q)`:
///
/// `(-1)^r q L^{3/2} / ((1 - (-L^{-1/2})^r q)(1 - (-L^{1/2})^r q))
///   * (L^{-r/2} - L^{r/2}) / (L^{-1/2} - L^{1/2})`
///
/// assembled from its rational pieces and expanded by series division.
pub fn dt_plethystic_argument(r: usize, trunc: usize) -> QSeries {
    assert!(r >= 1);
    let r_i = r as i64;
    let sign: i64 = if r.is_multiple_of(2) { 1 } else { -1 };
    let quantum_r = TRat::canonicalize(
        TPoly::from_terms([(-r_i, 1), (r_i, -1)]),
        TPoly::from_terms([(-1, 1), (1, -1)]),
    )
    .expect("nonzero denominator");
    let prefactor = &TRat::monomial(3, sign) * &quantum_r;
    let numerator = QSeries::monomial(1, prefactor, trunc);

    let linear = |c: TRat| {
        let mut s = QSeries::one(trunc);
        if trunc >= 1 {
            s.set_coeff(1, -c);
        }
        s
    };
    let d1 = linear(TRat::monomial(-r_i, sign));
    let d2 = linear(TRat::monomial(r_i, sign));
    let den = d1.mul(&d2);
    numerator.div(&den).expect("unit constant term")
}

/// `DT_r(q)` recovered from the plethystic form: `Exp(arg)` evaluated at
/// `q -> (-1)^r q`.
pub fn dt_via_plethystic(r: usize, trunc: usize, conv: AdamsConvention) -> Result<QSeries> {
    let e = plethystic_exp(&dt_plethystic_argument(r, trunc), trunc, conv)?;
    Ok(if r % 2 == 1 { e.q_negate() } else { e })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::expand_dt;

    #[test]
    fn exp_of_single_monomial() {
        let q = QSeries::monomial(1, TRat::one(), 4);
        let e = plethystic_exp(&q, 4, AdamsConvention::Naive).unwrap();
        assert!(e.coeffs().iter().all(TRat::is_one));
    }

    #[test]
    fn rejects_constant_term() {
        assert_eq!(
            plethystic_exp(&QSeries::one(3), 3, AdamsConvention::default()),
            Err(Error::NonzeroConstantTerm)
        );
    }

    #[test]
    fn conventions_agree_for_even_rank_only() {
        let target = expand_dt(1, 5);
        assert_eq!(dt_via_plethystic(1, 5, AdamsConvention::SignedLineElement).unwrap(), target);
        assert_ne!(dt_via_plethystic(1, 5, AdamsConvention::Naive).unwrap(), target);
        let target2 = expand_dt(2, 5);
        assert_eq!(dt_via_plethystic(2, 5, AdamsConvention::Naive).unwrap(), target2);
    }
}
