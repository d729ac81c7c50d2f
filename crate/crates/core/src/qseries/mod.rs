//! Truncated `q`-series over the coefficient ring and the product formulas
//! built on them: the rank-`r` DT series, its rank-1 factorisation, the
//! MacMahon function, the Feit–Fine series of the commuting variety, and the
//! wall-crossing quotient.

mod io;
mod plethystic;
mod series;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{TPoly, TRat};

pub use io::{series_to_csv, SeriesRecord};
pub use plethystic::{
    dt_plethystic_argument, dt_via_plethystic, plethystic_exp, AdamsConvention,
};
pub(crate) use series::geometric_factor;
pub use series::QSeries;

/// Exponent of `T` in the factor `(1 - L^{2+k-rm/2} q^m)^{-1}`.
fn dt_factor_exponent(r: usize, m: usize, k: usize) -> i64 {
    4 + 2 * k as i64 - (r * m) as i64
}

/// `q`-coefficients of the DT product as Laurent polynomials.
pub(crate) fn expand_dt_polys(r: usize, trunc: usize) -> Vec<TPoly> {
    assert!(r >= 1, "rank must be positive");
    let mut s = vec![TPoly::zero(); trunc + 1];
    s[0] = TPoly::one();
    let one = BigInt::one();
    for m in 1..=trunc {
        for k in 0..r * m {
            geometric_factor(&mut s, dt_factor_exponent(r, m, k), m, &one);
        }
    }
    s
}

/// The closed product
/// `prod_{m>=1} prod_{k=0}^{rm-1} (1 - L^{2+k-rm/2} q^m)^{-1}`
/// expanded through `q^trunc`.
pub fn expand_dt(r: usize, trunc: usize) -> QSeries {
    QSeries::from_polys(expand_dt_polys(r, trunc))
}

/// `prod_{i=1}^r DT_1(q L^{(-r-1)/2 + i})`.
pub fn expand_dt_factored(r: usize, trunc: usize) -> QSeries {
    assert!(r >= 1, "rank must be positive");
    let rank_one = expand_dt(1, trunc);
    (1..=r as i64).fold(QSeries::one(trunc), |acc, i| {
        acc.mul(&rank_one.q_scale(-(r as i64) - 1 + 2 * i))
    })
}

/// `q`-shift exponents (in `T`) used by [`expand_dt_factored`].
pub fn factor_shifts(r: usize) -> Vec<i64> {
    (1..=r as i64).map(|i| -(r as i64) - 1 + 2 * i).collect()
}

/// Coefficients of `M(q)^r` via `n a_n = r sum_k sigma_2(k) a_{n-k}`.
pub(crate) fn macmahon_pow_ints(r: usize, trunc: usize) -> Vec<BigInt> {
    let sigma2: Vec<BigInt> = (0..=trunc)
        .map(|k| {
            if k == 0 {
                return BigInt::zero();
            }
            (1..=k).filter(|d| k % d == 0).map(|d| BigInt::from(d * d)).sum()
        })
        .collect();
    let mut a = vec![BigInt::zero(); trunc + 1];
    a[0] = BigInt::one();
    let r_big = BigInt::from(r);
    for n in 1..=trunc {
        let s: BigInt = (1..=n).map(|k| &sigma2[k] * &a[n - k]).sum();
        a[n] = (s * &r_big) / BigInt::from(n);
    }
    a
}

/// The MacMahon function `prod (1 - q^m)^{-m}`.
pub fn macmahon(trunc: usize) -> QSeries {
    macmahon_pow(1, 1, trunc)
}

/// `M(sign * q)^r`.
pub fn macmahon_pow(r: usize, sign: i8, trunc: usize) -> QSeries {
    assert!(r >= 1 && (sign == 1 || sign == -1));
    let ints = macmahon_pow_ints(r, trunc);
    let ints = ints
        .into_iter()
        .enumerate()
        .map(|(n, c)| if sign < 0 && n % 2 == 1 { -c } else { c });
    QSeries::from_ints(ints)
}

/// Euler specialisation `T -> -1`, coefficientwise.
pub fn specialize_euler(f: &QSeries) -> Result<Vec<BigInt>> {
    let minus_one = -BigRational::one();
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let v = c.eval_at(&minus_one).map_err(|_| Error::EulerPole { degree: n })?;
            if !v.is_integer() {
                return Err(Error::InvalidArgument(format!(
                    "Euler specialisation of the q^{n} coefficient is not integral: {v}"
                )));
            }
            Ok(v.to_integer())
        })
        .collect()
}

/// `j`-th term `L^j L^{j(j+1)/2} / prod_{i=1}^j (L^i - 1)` of the
/// q-exponential expansion of `prod_{k>=1} (1 - x L^{-k})^{-1}` at `x = L^2`.
fn feit_fine_term(j: usize) -> TRat {
    let j_i = j as i64;
    let num = TPoly::monomial(2 * j_i + j_i * (j_i + 1), 1);
    let den = (1..=j_i).fold(TPoly::one(), |acc, i| &acc * &TPoly::from_terms([(2 * i, 1), (0, -1)]));
    TRat::canonicalize(num, den).expect("nonzero denominator")
}

/// The Feit–Fine series `prod_{m>=1} prod_{k>=1} (1 - L^{2-k} y^m)^{-1}`
/// through `y^trunc`. The infinite `k`-product for each `m` is summed exactly
/// with Euler's q-exponential identity, so coefficients are genuine rational
/// functions in `T`.
pub fn feit_fine(trunc: usize) -> QSeries {
    let terms: Vec<TRat> = (0..=trunc).map(feit_fine_term).collect();
    let mut acc = QSeries::one(trunc);
    for m in 1..=trunc {
        let mut factor = QSeries::zero(trunc);
        for (j, t) in terms.iter().enumerate().take(trunc / m + 1) {
            factor.set_coeff(m * j, t.clone());
        }
        acc = acc.mul(&factor);
    }
    acc
}

/// `A_U(L^{r/2} q) / A_U(L^{-r/2} q)`; every coefficient must reduce to a
/// Laurent polynomial.
pub fn wall_cross_dt(r: usize, trunc: usize) -> Result<QSeries> {
    wall_cross_from(&feit_fine(trunc), r)
}

/// Wall-crossing quotient from a given universal series (exposed so that
/// perturbed inputs can be checked).
pub fn wall_cross_from(a_u: &QSeries, r: usize) -> Result<QSeries> {
    assert!(r >= 1, "rank must be positive");
    let r = r as i64;
    let out = a_u.q_scale(r).div(&a_u.q_scale(-r))?;
    if let Some(n) = out.first_non_laurent() {
        return Err(Error::Verification(format!(
            "wall-crossing quotient keeps a denominator at q^{n}: {}",
            out.coeff(n)
        )));
    }
    Ok(out)
}

/// Checks the telescoping step of the wall-crossing derivation for one `m`:
/// on a window of `window` values of `j`, the multiset
/// `{1-j+rm/2} \ {1-j-rm/2}` equals `{1-j+rm/2 : 0 <= j < rm}`, and the latter
/// is the reindexed set `{2+k-rm/2 : 0 <= k < rm}`. Exponents are in units of
/// `T` (doubled `L`-exponents).
pub fn telescope_check(r: usize, m: usize, window: usize) -> Result<bool> {
    let rm = r * m;
    if window < 2 * rm {
        return Err(Error::WindowTooSmall { window, required: 2 * rm });
    }
    let rm_i = rm as i64;
    let upper: Vec<i64> = (0..window as i64).map(|j| 2 - 2 * j + rm_i).collect();
    let lower: Vec<i64> = (0..window as i64).map(|j| 2 - 2 * j - rm_i).collect();

    let mut remaining = lower.clone();
    let mut survivors = Vec::new();
    for e in &upper {
        if let Some(pos) = remaining.iter().position(|x| x == e) {
            remaining.swap_remove(pos);
        } else {
            survivors.push(*e);
        }
    }
    // Survivors of `lower` sit at the bottom edge of the window and stand for
    // the cancelled tail j -> infinity; they must be its last rm entries.
    let mut edge: Vec<i64> = lower[window - rm..].to_vec();
    remaining.sort_unstable();
    edge.sort_unstable();
    let edge_ok = remaining == edge;

    let mut expected: Vec<i64> = (0..rm_i).map(|j| 2 - 2 * j + rm_i).collect();
    let mut reindexed: Vec<i64> = (0..rm_i).map(|k| 4 + 2 * k - rm_i).collect();
    survivors.sort_unstable();
    expected.sort_unstable();
    reindexed.sort_unstable();
    Ok(edge_ok && survivors == expected && expected == reindexed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64)]) -> TRat {
        TRat::from_poly(TPoly::from_terms(terms.iter().copied()))
    }

    #[test]
    fn rank_one_low_order() {
        let s = expand_dt(1, 2);
        assert_eq!(s.coeff(0), &TRat::one());
        assert_eq!(s.coeff(1), &p(&[(3, 1)]));
        assert_eq!(s.coeff(2), &p(&[(2, 1), (4, 1), (6, 1)]));
    }

    #[test]
    fn rank_three_first_coefficient() {
        assert_eq!(expand_dt(3, 1).coeff(1), &p(&[(1, 1), (3, 1), (5, 1)]));
    }

    #[test]
    fn factored_rank_one_is_identity() {
        assert_eq!(expand_dt_factored(1, 6), expand_dt(1, 6));
        assert_eq!(factor_shifts(2), vec![-1, 1]);
    }

    #[test]
    fn factored_rank_two() {
        assert_eq!(expand_dt_factored(2, 8), expand_dt(2, 8));
    }

    #[test]
    fn macmahon_values() {
        let ints = |s: QSeries| specialize_euler(&s).unwrap();
        let b = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(ints(macmahon(5)), b(&[1, 1, 3, 6, 13, 24]));
        assert_eq!(ints(macmahon(5).q_negate()), b(&[1, -1, 3, -6, 13, -24]));
        assert_eq!(ints(macmahon_pow(2, 1, 2))[2], BigInt::from(7));
        assert_eq!(ints(macmahon_pow(1, -1, 2))[2], BigInt::from(3));
    }

    #[test]
    fn euler_specialisation() {
        let b = |xs: &[i64]| xs.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(specialize_euler(&expand_dt(1, 3)).unwrap(), b(&[1, -1, 3, -6]));
        assert_eq!(specialize_euler(&expand_dt(2, 2)).unwrap(), b(&[1, 2, 7]));
        let s = QSeries::new(vec![TRat::one(), TRat::monomial(3, 1)]);
        assert_eq!(specialize_euler(&s).unwrap(), b(&[1, -1]));
        let pole = QSeries::new(vec![
            TRat::one(),
            TRat::canonicalize(TPoly::one(), TPoly::from_terms([(1, 1), (0, 1)])).unwrap(),
        ]);
        assert_eq!(specialize_euler(&pole), Err(Error::EulerPole { degree: 1 }));
    }

    #[test]
    fn feit_fine_low_order() {
        let ff = feit_fine(2);
        let expected = TRat::canonicalize(TPoly::monomial(4, 1), TPoly::from_terms([(2, 1), (0, -1)])).unwrap();
        assert_eq!(ff.coeff(1), &expected);
        let two = BigRational::from_integer(2.into());
        assert_eq!(ff.coeff(1).eval_at_lefschetz(&two).unwrap(), BigRational::from_integer(4.into()));
        assert_eq!(
            ff.coeff(2).eval_at_lefschetz(&two).unwrap(),
            BigRational::new(44.into(), 3.into())
        );
    }

    #[test]
    fn wall_crossing_low_order() {
        let w = wall_cross_dt(1, 4).unwrap();
        assert_eq!(w.coeff(0), &TRat::one());
        assert_eq!(w.coeff(1), &p(&[(3, 1)]));
        assert_eq!(w, expand_dt(1, 4));
    }

    #[test]
    fn telescoping() {
        assert!(telescope_check(1, 1, 2).unwrap());
        assert!(telescope_check(2, 3, 12).unwrap());
        assert!(telescope_check(3, 2, 40).unwrap());
        assert_eq!(
            telescope_check(1, 1, 1),
            Err(Error::WindowTooSmall { window: 1, required: 2 })
        );
    }
}
