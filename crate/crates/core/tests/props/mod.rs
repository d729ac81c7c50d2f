//! Randomised and exhaustive invariant checks, shared by the `properties`
//! and `acceptance` targets. Each check returns `Err` with a description of
//! the first counterexample.

#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use quotdt::asymptotic::{
    check_sandwich, g_partials, inner_linear, inner_quadratic, moment_asymptotics, mu_sigma, neg_f_x, solve_saddle,
    Combination, SaddleProblem, Weights,
};
use quotdt::oracles::{commuting_pairs_count, gl_count, POINT_CHECKS};
use quotdt::planepart::{
    count_colored, enumerate_colored, enumerate_pp, m_from_q, m_poly_enum, q_poly_enum, q_poly_series, ColoredPP,
    PlanePartition,
};
use quotdt::qseries::{expand_dt, wall_cross_dt, QSeries};
use quotdt::quiver::{framed_span_basis, is_stable_neg, torus_mul, wall_crossing_check, FramedRep, QMatrix};
use quotdt::ring::gl_class;
use quotdt::{DimVector, Quiver, TPoly, TRat, TorusElement};

pub const CASES: u32 = 1000;

pub type Check = fn() -> Result<(), String>;

/// Every check, by name.
pub const ALL: &[(&str, Check)] = &[
    ("ring_axioms", ring_axioms),
    ("ring_canonical_form", ring_canonical_form),
    ("ring_gl_class", ring_gl_class),
    ("series_algebra", series_algebra),
    ("series_dt_coefficients", series_dt_coefficients),
    ("quiver_skew_form", quiver_skew_form),
    ("quiver_torus_associative", quiver_torus_associative),
    ("quiver_framed_span_closed", quiver_framed_span_closed),
    ("quiver_stability_base_change", quiver_stability_base_change),
    ("quiver_routes_agree", quiver_routes_agree),
    ("pp_statistics_exhaustive", pp_statistics_exhaustive),
    ("pp_colored_x_formulas", pp_colored_x_formulas),
    ("pp_polynomials", pp_polynomials),
    ("saddle_sandwich", saddle_sandwich),
    ("saddle_tilted", saddle_tilted),
    ("saddle_monotone", saddle_monotone),
    ("faulhaber_forms", faulhaber_forms),
    ("partials_direct_sums", partials_direct_sums),
    ("moments_converge", moments_converge),
    ("oracle_ratio_denominator", oracle_ratio_denominator),
];

fn run<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- strategies

fn small_poly() -> impl Strategy<Value = TPoly> {
    (-2i64..=2, prop::collection::vec(-3i64..=3, 1..4))
        .prop_map(|(low, c)| TPoly::from_dense(low, c.into_iter().map(BigInt::from).collect()))
}

fn small_rat() -> impl Strategy<Value = TRat> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| TRat::canonicalize(n, d).unwrap())
}

fn small_series(trunc: usize) -> impl Strategy<Value = QSeries> {
    prop::collection::vec(small_rat(), trunc + 1).prop_map(QSeries::new)
}

fn int_matrix(n: usize) -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), n).prop_map(|rows| {
        let rows: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
        QMatrix::from_i64(&rows).unwrap()
    })
}

fn framed_rep() -> impl Strategy<Value = FramedRep> {
    (1usize..=3, 1usize..=2).prop_flat_map(|(n, r)| {
        (
            [int_matrix(n), int_matrix(n), int_matrix(n)],
            prop::collection::vec(prop::collection::vec(-1i64..=1, n), r),
        )
            .prop_map(|(a, u)| {
                let u = u.into_iter().map(|v| v.into_iter().map(|x| BigRational::from_integer(x.into())).collect());
                FramedRep::new(a, u.collect()).unwrap()
            })
    })
}

fn pp_table() -> &'static Vec<Vec<PlanePartition>> {
    static TABLE: OnceLock<Vec<Vec<PlanePartition>>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=12).map(enumerate_pp).collect())
}

fn random_pp() -> impl Strategy<Value = PlanePartition> {
    (0usize..=12, any::<prop::sample::Index>()).prop_map(|(n, i)| {
        let all = &pp_table()[n];
        all[i.index(all.len())].clone()
    })
}

// ---- ring

pub fn ring_axioms() -> Result<(), String> {
    run((small_rat(), small_rat(), small_rat()), |(a, b, c)| {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
        Ok(())
    })
}

pub fn ring_canonical_form() -> Result<(), String> {
    run(small_rat(), |a| {
        let again = TRat::canonicalize(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert!(a.denom().leading_coeff().unwrap().is_positive());
        if !a.is_zero() {
            let inv = TRat::one().div(&a).unwrap();
            prop_assert!(a.mul(&inv).is_one());
        }
        Ok(())
    })
}

pub fn ring_gl_class() -> Result<(), String> {
    for n in 1..=2u32 {
        for q in [2u8, 3] {
            let l = BigRational::from_integer(q.into());
            let predicted = gl_class(n).eval_even_at(&l).map_err(|e| format!("odd power {e}"))?.unwrap();
            let counted = BigRational::from_integer(gl_count(n as usize, q).map_err(|e| e.to_string())?);
            ensure(predicted == counted, || format!("|GL_{n}(F_{q})|: {predicted} vs {counted}"))?;
        }
    }
    Ok(())
}

// ---- qseries

pub fn series_algebra() -> Result<(), String> {
    run((small_series(2), small_series(2), small_series(2)), |(a, b, c)| {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !b.coeff(0).is_zero() {
            prop_assert_eq!(a.mul(&b).div(&b).unwrap(), a.clone());
        }
        Ok(())
    })
}

pub fn series_dt_coefficients() -> Result<(), String> {
    for r in 1..=4 {
        let dt = expand_dt(r, 12);
        for n in 0..=12 {
            let c = dt.coeff(n).as_laurent().ok_or_else(|| format!("r={r} q^{n}: not a Laurent polynomial"))?;
            ensure(c.terms().all(|(_, x)| !x.is_negative()), || format!("r={r} q^{n}: negative coefficient"))?;
            let colored = count_colored(r, n);
            ensure(c.eval_one() == colored, || format!("r={r} q^{n}: T=1 gives {} not {colored}", c.eval_one()))?;
        }
    }
    Ok(())
}

// ---- quiver

pub fn quiver_skew_form() -> Result<(), String> {
    let quiver = (1usize..=4).prop_flat_map(|v| {
        let edges = prop::collection::vec((0..v, 0..v), 0..7);
        let dim = move || prop::collection::vec(0u32..6, v).prop_map(DimVector::new);
        (edges.prop_map(move |e| Quiver::new(v, e).unwrap()), dim(), dim(), dim())
    });
    run(quiver, |(q, a, b, c)| {
        let s = |x: &DimVector, y: &DimVector| q.skew_form(x, y).unwrap();
        prop_assert_eq!(s(&a, &b), -s(&b, &a));
        prop_assert_eq!(s(&a, &a), 0);
        let ab = a.checked_add(&b).unwrap();
        prop_assert_eq!(s(&ab, &c), s(&a, &c) + s(&b, &c));
        prop_assert_eq!(s(&c, &ab), s(&c, &a) + s(&c, &b));
        Ok(())
    })
}

pub fn quiver_torus_associative() -> Result<(), String> {
    const TRUNC: u64 = 4;
    let element = |r: usize| {
        prop::collection::vec((0u32..=1, 0u32..=3, -2i64..=2, -2i64..=2), 0..4).prop_map(move |terms| {
            let q = Quiver::three_loop().r_framing(0, r).unwrap();
            let mut e = TorusElement::zero(q, TRUNC);
            for (d, n, exp, c) in terms {
                e.add_term(DimVector::new(vec![d, n]), TRat::monomial(exp, c)).unwrap();
            }
            e
        })
    };
    let strategy = (1usize..=3).prop_flat_map(move |r| (element(r), element(r), element(r)));
    run(strategy, |(a, b, c)| {
        let left = torus_mul(&torus_mul(&a, &b).unwrap(), &c).unwrap();
        let right = torus_mul(&a, &torus_mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    })
}

pub fn quiver_framed_span_closed() -> Result<(), String> {
    run(framed_rep(), |rep| {
        let basis = framed_span_basis(&rep);
        prop_assert!(basis.dim() <= rep.n());
        for u in rep.framing() {
            prop_assert!(basis.contains(u));
        }
        for v in basis.vectors() {
            for m in rep.matrices() {
                prop_assert!(basis.contains(&m.apply(&v).unwrap()));
            }
        }
        Ok(())
    })
}

pub fn quiver_stability_base_change() -> Result<(), String> {
    let strategy = framed_rep().prop_flat_map(|rep| {
        let n = rep.n();
        (Just(rep), int_matrix(n).prop_filter("invertible", |g| g.inverse().is_some()))
    });
    run(strategy, |(rep, g)| {
        let moved = rep.conjugate(&g).unwrap();
        prop_assert_eq!(is_stable_neg(&rep), is_stable_neg(&moved));
        prop_assert_eq!(framed_span_basis(&rep).dim(), framed_span_basis(&moved).dim());
        Ok(())
    })
}

pub fn quiver_routes_agree() -> Result<(), String> {
    for r in 1..=2 {
        for n in 0..=5 {
            let torus = wall_crossing_check(r, n).map_err(|e| e.to_string())?.holds();
            let series = wall_cross_dt(r, n).map_err(|e| e.to_string())? == expand_dt(r, n);
            ensure(torus && series, || format!("r={r} N={n}: torus {torus}, series {series}"))?;
        }
    }
    Ok(())
}

// ---- planepart

pub fn pp_statistics_exhaustive() -> Result<(), String> {
    for (n, all) in pp_table().iter().enumerate() {
        for p in all {
            let s = p.stats();
            let t = p.transpose().stats();
            ensure(s.size == n as u64 && s.size == s.diag + s.upper + s.lower, || format!("{p:?}: {s:?}"))?;
            ensure((t.diag, t.upper, t.lower) == (s.diag, s.lower, s.upper), || format!("transpose of {p:?}"))?;
            ensure(p.transpose().transpose() == *p, || format!("double transpose of {p:?}"))?;
        }
    }
    Ok(())
}

fn check_x_formulas(c: &ColoredPP) -> Result<(), TestCaseError> {
    let st = c.stats();
    let n: u64 = c.parts().iter().map(|p| p.stats().size).sum();
    let (mut x, mut twice_x, mut y, mut z) = (0i64, n as i64, 0u64, 0u64);
    for (l, p) in c.parts().iter().enumerate() {
        let s = p.stats();
        x += (s.diag + s.upper) as i64;
        twice_x += s.diag as i64 + s.upper as i64 - s.lower as i64;
        y += (l as u64 + 1) * s.size;
        z += s.diag;
    }
    prop_assert_eq!(st.x as i64, x);
    prop_assert_eq!(2 * x, twice_x);
    prop_assert_eq!((st.y, st.z), (y, z));
    let r = c.r() as i64;
    prop_assert_eq!(st.s, 4 * z as i64 - 2 * x - 2 * y as i64 + (r + 2) * n as i64);
    Ok(())
}

pub fn pp_colored_x_formulas() -> Result<(), String> {
    for r in 1..=3 {
        for n in 0..=5 {
            for c in enumerate_colored(r, n) {
                check_x_formulas(&c).map_err(|e| format!("r={r} n={n}: {e}"))?;
            }
        }
    }
    run(prop::collection::vec(random_pp(), 1..=4), |parts| check_x_formulas(&ColoredPP::new(parts).unwrap()))
}

pub fn pp_polynomials() -> Result<(), String> {
    for (r, max_n) in [(1, 8), (2, 6), (3, 4)] {
        for n in 0..=max_n {
            let q = q_poly_enum(r, n).map_err(|e| e.to_string())?;
            let series = q_poly_series(r, n).map_err(|e| e.to_string())?;
            ensure(q == series, || format!("r={r} n={n}: Q by enumeration {q} vs series {series}"))?;
            ensure(q.terms().all(|(_, c)| c.is_positive()), || format!("r={r} n={n}: Q has a nonpositive term"))?;
            let m = m_poly_enum(r, n).map_err(|e| e.to_string())?;
            ensure(m.terms().all(|(_, c)| !c.is_negative()), || format!("r={r} n={n}: M has a negative term"))?;
            let via = m_from_q(r, n, &q).map_err(|e| e.to_string())?;
            ensure(via == m, || format!("r={r} n={n}: substitution {via} vs {m}"))?;
            ensure(q.eval_ones() == count_colored(r, n as usize), || format!("r={r} n={n}: Q(1,1,1)"))?;
        }
    }
    Ok(())
}

// ---- asymptotic

fn log_uniform(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    (lo.ln()..hi.ln()).prop_map(f64::exp)
}

fn assert_solved(p: &SaddleProblem) -> Result<(), TestCaseError> {
    let res = solve_saddle(p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert!(res.rho > 0.0);
    prop_assert!(res.residual < 1e-9, "residual {} for {:?}", res.residual, p);
    prop_assert!(check_sandwich(p, res.rho).is_ok());
    Ok(())
}

pub fn saddle_sandwich() -> Result<(), String> {
    // a = 0 keeps each evaluation linear in the number of m terms
    let strategy = (1usize..=4, log_uniform(5.0, 1e6), -0.2f64..0.2, -0.2f64..0.2);
    run(strategy, |(r, n, b, c)| {
        let b = b / r as f64;
        assert_solved(&SaddleProblem::new(r, n, Weights { a: 0.0, b, c }).unwrap())
    })
}

pub fn saddle_tilted() -> Result<(), String> {
    let strategy = (1usize..=3, log_uniform(5.0, 300.0), -0.15f64..0.15, -0.15f64..0.15, -0.15f64..0.15);
    run(strategy, |(r, n, a, b, c)| {
        let b = b / r as f64;
        assert_solved(&SaddleProblem::new(r, n, Weights { a, b, c }).unwrap())
    })
}

pub fn saddle_monotone() -> Result<(), String> {
    run((1usize..=4, log_uniform(2.0, 1e7), 1.001f64..10.0), |(r, n, factor)| {
        let rho = |n| solve_saddle(&SaddleProblem::untilted(r, n).unwrap()).unwrap().rho;
        prop_assert!(rho(n * factor) < rho(n));
        let p = SaddleProblem::untilted(r, n).unwrap();
        prop_assert!((neg_f_x(rho(n), r, Weights::default()) - n).abs() <= 1e-9 * n, "{p:?}");
        Ok(())
    })
}

fn combination() -> impl Strategy<Value = Combination> {
    (-3.0f64..3.0, -3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b, g)| Combination::new(a, b, g))
}

pub fn faulhaber_forms() -> Result<(), String> {
    run((combination(), 1usize..=20, 1usize..=4), |(w, m, r)| {
        let (mut lin, mut quad) = (0.0, 0.0);
        for k in 1..=m {
            for l in 1..=r {
                let v = w.gamma + w.alpha * k as f64 + m as f64 * w.beta * l as f64;
                lin += v;
                quad += v * v;
            }
        }
        let scale = (1.0f64).max(quad);
        prop_assert!((inner_linear(m, r, w) - lin).abs() <= 1e-10 * scale, "{w:?} m={m} r={r}");
        prop_assert!((inner_quadratic(m, r, w) - quad).abs() <= 1e-10 * scale, "{w:?} m={m} r={r}");
        Ok(())
    })
}

/// `g_y` and `g_yy` by summing over `(m, k, l)` with a fixed cutoff.
fn direct_y_partials(rho: f64, r: usize, w: Combination) -> (f64, f64) {
    let cutoff = (60.0 / rho) as usize + 10;
    let (mut gy, mut gyy) = (0.0, 0.0);
    for m in 1..=cutoff {
        let e = (-rho * m as f64).exp();
        let (b1, b2) = (e / (1.0 - e), e / ((1.0 - e) * (1.0 - e)));
        for k in 1..=m {
            for l in 1..=r {
                let v = w.gamma + w.alpha * k as f64 + m as f64 * w.beta * l as f64;
                gy += v * b1;
                gyy += v * v * b2;
            }
        }
    }
    (gy, gyy)
}

pub fn partials_direct_sums() -> Result<(), String> {
    run((combination(), 1usize..=4, 0.3f64..2.0), |(w, r, rho)| {
        let d = g_partials(rho, r, w);
        let (gy, gyy) = direct_y_partials(rho, r, w);
        let scale = |x: f64| x.abs().max(1e-3);
        prop_assert!((d.g_y - gy).abs() <= 1e-10 * scale(gy), "g_y {} vs {gy}", d.g_y);
        prop_assert!((d.g_yy - gyy).abs() <= 1e-10 * scale(gyy), "g_yy {} vs {gyy}", d.g_yy);
        Ok(())
    })
}

/// Relative gaps of `mu_n` and `sigma_n^2` from their leading asymptotics
/// shrink along `n = 10^3 .. 10^6`.
pub fn moments_converge() -> Result<(), String> {
    for r in 1..=3 {
        let c = moment_asymptotics(r, Combination::S);
        let gaps: Vec<(f64, f64)> = [1e3, 1e4, 1e5, 1e6]
            .into_iter()
            .map(|n: f64| {
                let m = mu_sigma(n, r, Combination::S).unwrap();
                let mu = c.linear * n + c.two_thirds * n.powf(2.0 / 3.0);
                let s2 = c.four_thirds * n.powf(4.0 / 3.0);
                ((m.mu_n - mu).abs() / mu.abs(), (m.sigma2_n - s2).abs() / s2)
            })
            .collect();
        ensure(gaps.windows(2).all(|w| w[1].0 < w[0].0 && w[1].1 < w[0].1), || format!("r={r}: gaps {gaps:?}"))?;
    }
    Ok(())
}

// ---- oracles

pub fn oracle_ratio_denominator() -> Result<(), String> {
    for (n, q) in POINT_CHECKS {
        let pairs = commuting_pairs_count(n, q).map_err(|e| e.to_string())?;
        let gl = gl_count(n, q).map_err(|e| e.to_string())?;
        let ratio = BigRational::new(pairs.clone(), gl.clone());
        ensure((&gl % ratio.denom()).is_zero() && !pairs.is_zero(), || format!("n={n} q={q}: {pairs}/{gl}"))?;
        ensure(ratio >= BigRational::one(), || format!("n={n} q={q}: ratio {ratio} below 1"))?;
    }
    Ok(())
}
