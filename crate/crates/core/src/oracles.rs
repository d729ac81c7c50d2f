//! Brute-force ground truth over finite fields. Nothing here uses the
//! series code except `feit_fine_point_check`, which compares against it.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qseries::feit_fine;

/// Largest number of matrix pairs an exhaustive count may visit.
pub const PAIR_BUDGET: u64 = 1 << 22;

/// `n x n` matrix over `F_q`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FFMatrix {
    n: usize,
    q: u8,
    entries: Vec<u8>,
}

impl FFMatrix {
    pub fn new(n: usize, q: u8, entries: Vec<u8>) -> Result<Self> {
        check_field(q)?;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        let entries = entries.into_iter().map(|x| x % q).collect();
        Ok(FFMatrix { n, q, entries })
    }

    /// The `index`-th matrix in base-`q` order of its entries.
    fn from_index(n: usize, q: u8, mut index: u64) -> Self {
        let mut entries = vec![0u8; n * n];
        for e in entries.iter_mut() {
            *e = (index % q as u64) as u8;
            index /= q as u64;
        }
        FFMatrix { n, q, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, rhs: &FFMatrix) -> FFMatrix {
        let (n, q) = (self.n, self.q as u32);
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: u32 = (0..n).map(|k| self.get(i, k) as u32 * rhs.get(k, j) as u32).sum();
                entries[i * n + j] = (s % q) as u8;
            }
        }
        FFMatrix { n, q: self.q, entries }
    }

    /// Leibniz expansion mod `q`.
    pub fn det(&self) -> u8 {
        let n = self.n;
        let q = self.q as i64;
        let mut total: i64 = 0;
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p, sign| {
            let prod: i64 = (0..n).map(|i| self.get(i, p[i]) as i64).product();
            total += sign * prod;
        });
        total.rem_euclid(q) as u8
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize], i64)) {
    if k == p.len() {
        let mut inversions = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        f(p, if inversions % 2 == 0 { 1 } else { -1 });
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

fn check_field(q: u8) -> Result<()> {
    if q < 2 || (2..q).any(|d| q.is_multiple_of(d)) {
        return Err(Error::InvalidArgument(format!("field order {q} is not prime")));
    }
    Ok(())
}

fn all_matrices(n: usize, q: u8) -> Result<Vec<FFMatrix>> {
    let count = (q as u64)
        .checked_pow((n * n) as u32)
        .filter(|&c| c.checked_mul(c).is_some_and(|pairs| pairs <= PAIR_BUDGET))
        .ok_or_else(|| Error::BudgetExceeded(format!("M_{n}(F_{q}) pairs exceed {PAIR_BUDGET}")))?;
    Ok((0..count).map(|i| FFMatrix::from_index(n, q, i)).collect())
}

/// `#{(A, B) in M_n(F_q)^2 : AB = BA}` by exhaustion.
pub fn commuting_pairs_count(n: usize, q: u8) -> Result<BigInt> {
    check_field(q)?;
    let mats = all_matrices(n, q)?;
    let products: Vec<_> = mats.iter().map(|a| mats.iter().map(|b| a.mul(b)).collect::<Vec<_>>()).collect();
    let count: u64 = (0..mats.len())
        .into_par_iter()
        .map(|i| (0..mats.len()).filter(|&j| products[i][j] == products[j][i]).count() as u64)
        .sum();
    Ok(count.into())
}

/// `|GL_n(F_q)|` by counting matrices with nonzero determinant.
pub fn gl_count(n: usize, q: u8) -> Result<BigInt> {
    check_field(q)?;
    let size = (q as u64)
        .checked_pow((n * n) as u32)
        .filter(|&c| c <= PAIR_BUDGET)
        .ok_or_else(|| Error::BudgetExceeded(format!("|M_{n}(F_{q})| exceeds {PAIR_BUDGET}")))?;
    let count = (0..size).into_par_iter().filter(|&i| FFMatrix::from_index(n, q, i).det() != 0).count();
    Ok(BigInt::from(count))
}

/// Compares the `y^n` coefficient of the Feit–Fine series at `L = q` with
/// the brute-force ratio `#commuting pairs / |GL_n(F_q)|`.
pub fn feit_fine_point_check(n: usize, q: u8) -> Result<bool> {
    let (predicted, observed) = feit_fine_point_values(n, q)?;
    Ok(predicted == observed)
}

/// `(series value at L = q, brute-force ratio)` for the `y^n` coefficient.
pub fn feit_fine_point_values(n: usize, q: u8) -> Result<(BigRational, BigRational)> {
    let series = feit_fine(n);
    let l = BigRational::from_integer(q.into());
    let predicted = series.coeff(n).eval_at_lefschetz(&l)?;
    let observed = BigRational::new(commuting_pairs_count(n, q)?, gl_count(n, q)?);
    Ok((predicted, observed))
}

/// The `(n, q)` pairs small enough for exhaustive checking.
pub const POINT_CHECKS: [(usize, u8); 5] = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::gl_class;

    #[test]
    fn small_counts() {
        assert_eq!(commuting_pairs_count(1, 2).unwrap(), BigInt::from(4));
        assert_eq!(commuting_pairs_count(2, 2).unwrap(), BigInt::from(88));
        assert_eq!(gl_count(1, 2).unwrap(), BigInt::from(1));
        assert_eq!(gl_count(2, 2).unwrap(), BigInt::from(6));
        assert_eq!(gl_count(2, 3).unwrap(), BigInt::from(48));
        assert!(matches!(commuting_pairs_count(3, 3), Err(Error::BudgetExceeded(_))));
        assert!(commuting_pairs_count(2, 4).is_err());
    }

    #[test]
    fn gl_matches_class() {
        for (n, q) in [(1u32, 2u8), (2, 2), (2, 3), (3, 2)] {
            let predicted = gl_class(n).eval_even_at(&BigRational::from_integer(q.into())).unwrap().unwrap();
            assert_eq!(predicted, BigRational::from_integer(gl_count(n as usize, q).unwrap()));
        }
    }

    #[test]
    fn point_checks() {
        for (n, q) in [(1, 2), (1, 3), (2, 2), (2, 3)] {
            assert!(feit_fine_point_check(n, q).unwrap(), "n={n} q={q}");
        }
    }
}
