use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ring::{TPoly, TRat};

/// Power series in `q` with [`TRat`] coefficients, known exactly up to and
/// including `q^trunc`.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<TRat>,
}

impl QSeries {
    /// Panics on an empty coefficient vector: a series always knows `q^0`.
    pub fn new(coeffs: Vec<TRat>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least the q^0 coefficient");
        QSeries { coeffs }
    }

    pub fn from_polys(polys: Vec<TPoly>) -> Self {
        Self::new(polys.into_iter().map(TRat::from_poly).collect())
    }

    pub fn from_ints<I: IntoIterator<Item = BigInt>>(ints: I) -> Self {
        Self::new(ints.into_iter().map(TRat::from_int).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        Self::new(vec![TRat::zero(); trunc + 1])
    }

    pub fn one(trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        s.coeffs[0] = TRat::one();
        s
    }

    /// `c * q^n`, truncated at `trunc` (zero if `n > trunc`).
    pub fn monomial(n: usize, c: TRat, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if n <= trunc {
            s.coeffs[n] = c;
        }
        s
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &TRat {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[TRat] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, n: usize, c: TRat) {
        self.coeffs[n] = c;
    }

    pub fn into_coeffs(self) -> Vec<TRat> {
        self.coeffs
    }

    pub fn truncate(&self, trunc: usize) -> Self {
        let t = trunc.min(self.trunc());
        Self::new(self.coeffs[..=t].to_vec())
    }

    /// True when every coefficient is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.coeffs.iter().all(TRat::is_laurent)
    }

    /// Index of the first coefficient with a nontrivial denominator.
    pub fn first_non_laurent(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_laurent())
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        QSeries::new((0..=t).map(|n| &self.coeffs[n] + &rhs.coeffs[n]).collect())
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        QSeries::new((0..=t).map(|n| &self.coeffs[n] - &rhs.coeffs[n]).collect())
    }

    pub fn neg(&self) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Cauchy product truncated at the smaller truncation. Output
    /// coefficients are computed independently, so the parallel evaluation is
    /// bit-identical to a sequential one.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        let t = self.trunc().min(rhs.trunc());
        let coeffs = (0..=t)
            .into_par_iter()
            .map(|n| {
                let mut acc = TRat::zero();
                for k in 0..=n {
                    let (a, b) = (&self.coeffs[k], &rhs.coeffs[n - k]);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect();
        QSeries::new(coeffs)
    }

    /// Formal inverse; the constant term must be a nonzero element of the
    /// coefficient field.
    pub fn inv(&self) -> Result<QSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::NonUnitConstant);
        }
        let c0_inv = c0.recip()?;
        let t = self.trunc();
        let mut out: Vec<TRat> = Vec::with_capacity(t + 1);
        out.push(c0_inv.clone());
        for n in 1..=t {
            let terms: Vec<TRat> = (1..=n)
                .into_par_iter()
                .filter(|&k| !self.coeffs[k].is_zero() && !out[n - k].is_zero())
                .map(|k| &self.coeffs[k] * &out[n - k])
                .collect();
            let s = terms.iter().fold(TRat::zero(), |acc, x| &acc + x);
            out.push(-(&s * &c0_inv));
        }
        Ok(QSeries::new(out))
    }

    pub fn div(&self, rhs: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// Substitution `q -> T^a q`: the `q^n` coefficient is multiplied by `T^(a n)`.
    pub fn q_scale(&self, a: i64) -> QSeries {
        QSeries::new(self.coeffs.iter().enumerate().map(|(n, c)| c.shift(a * n as i64)).collect())
    }

    /// Substitution `q -> -q`.
    pub fn q_negate(&self) -> QSeries {
        QSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| if n % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Substitution `q -> q^k` (keeping the same truncation).
    pub fn q_power(&self, k: usize) -> QSeries {
        assert!(k >= 1);
        let t = self.trunc();
        let mut out = vec![TRat::zero(); t + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            if n * k > t {
                break;
            }
            out[n * k] = c.clone();
        }
        QSeries::new(out)
    }

    /// Applies `T -> sign * T^k` to every coefficient.
    pub fn map_t_power(&self, k: u32, sign_of_t: i8) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|c| c.substitute_power(k, sign_of_t)).collect())
    }

    pub fn scale(&self, c: &TRat) -> QSeries {
        QSeries::new(self.coeffs.iter().map(|x| x * c).collect())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.trunc() + 1)
    }
}

/// Multiplies a Laurent-coefficient series in place by `(1 - c T^exp q^m)^{-1}`.
pub(crate) fn geometric_factor(series: &mut [TPoly], exp: i64, m: usize, c: &BigInt) {
    for n in m..series.len() {
        let (head, tail) = series.split_at_mut(n);
        let prev = &head[n - m];
        if !prev.is_zero() {
            tail[0].add_scaled_shifted(prev, exp, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_series(xs: &[i64]) -> QSeries {
        QSeries::from_ints(xs.iter().map(|&x| BigInt::from(x)))
    }

    #[test]
    fn geometric_inverse() {
        let s = poly_series(&[1, -1, 0, 0]);
        assert_eq!(s.inv().unwrap(), poly_series(&[1, 1, 1, 1]));
    }

    #[test]
    fn monomial_geometric_inverse() {
        let mut s = QSeries::one(2);
        s.set_coeff(1, TRat::monomial(3, -1));
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeff(2), &TRat::monomial(6, 1));
    }

    #[test]
    fn non_unit_constant_rejected() {
        assert_eq!(poly_series(&[0, 1]).inv(), Err(Error::NonUnitConstant));
    }

    #[test]
    fn mixed_truncation_takes_minimum() {
        let a = poly_series(&[1, 1, 1, 1, 1]);
        let b = poly_series(&[1, 2]);
        assert_eq!(a.mul(&b).trunc(), 1);
        assert_eq!(a.add(&b).trunc(), 1);
    }

    #[test]
    fn scaling_and_negation() {
        let s = poly_series(&[1, 1]);
        let scaled = s.q_scale(2);
        assert_eq!(scaled.coeff(1), &TRat::monomial(2, 1));
        assert_eq!(scaled.q_scale(-2), s);
        assert_eq!(poly_series(&[1, 1, 1]).q_negate(), poly_series(&[1, -1, 1]));
    }

    #[test]
    fn geometric_factor_in_place() {
        let mut v = vec![TPoly::one(), TPoly::zero(), TPoly::zero()];
        geometric_factor(&mut v, 3, 1, &BigInt::from(1));
        assert_eq!(v[2], TPoly::monomial(6, 1));
    }
}
