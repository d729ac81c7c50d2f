//! Saddle-point numerics for the trivariate generating function: the saddle
//! equation, first and second moments of `aX + bY + cZ`, the limiting
//! constants for `S_{n,r}`, and the log-count approximation.
//!
//! Every infinite sum over `m` stops once a geometric bound on the
//! remaining tail drops below a relative tolerance of the partial sum.

mod gaussian;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use gaussian::{
    gaussian_distance, kolmogorov_distance, log_bigint, saddle_sweep, sweep_csv, SweepOptions, SweepRow,
};

pub const ZETA2: f64 = PI * PI / 6.0;
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// Relative tail tolerance for the saddle equation sums.
pub const FX_TAIL_TOL: f64 = 1e-18;
/// Default relative tail tolerance for the remaining sums.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

const MAX_TERMS: usize = 50_000_000;

/// Bound `u(m) = coef * m^p * E / (1 - E)^k` with `E = exp(-(lambda m - shift))`,
/// dominating the `m`-th term. Since `E` decreases in `m`, consecutive bounds
/// have ratio at most `((m+1)/m)^p e^-lambda`.
struct TailModel {
    coef: f64,
    p: i32,
    k: i32,
    lambda: f64,
    shift: f64,
}

impl TailModel {
    fn bound(&self, m: usize) -> Option<f64> {
        let e = (-(self.lambda * m as f64 - self.shift)).exp();
        if e >= 1.0 {
            return None;
        }
        let mf = m as f64;
        let ratio = ((mf + 1.0) / mf).powi(self.p) * (-self.lambda).exp();
        if ratio >= 1.0 {
            return None;
        }
        let u = self.coef * mf.powi(self.p) * e / (1.0 - e).powi(self.k);
        Some(u / (1.0 - ratio))
    }
}

/// `sum_{m>=1} term(m)` until the bound on `sum_{j>m}` is at most
/// `tol * |partial|`.
fn sum_m(term: impl Fn(usize) -> f64, tail: &TailModel, tol: f64) -> f64 {
    let mut acc = 0.0;
    let mut comp = 0.0;
    for m in 1..=MAX_TERMS {
        // Kahan summation
        let y = term(m) - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        if let Some(b) = tail.bound(m + 1) {
            if b <= tol * acc.abs() {
                return acc;
            }
        }
    }
    acc
}

/// `e^-t / (1 - e^-t)`.
fn b1(t: f64) -> f64 {
    let e = (-t).exp();
    e / -(-t).exp_m1()
}

/// `e^-t / (1 - e^-t)^2`.
fn b2(t: f64) -> f64 {
    let d = -(-t).exp_m1();
    (-t).exp() / (d * d)
}

/// Tilt parameters of the saddle equation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Weights {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Weights {
    /// `|c| + |a| + r|b|`.
    pub fn epsilon(&self, r: usize) -> f64 {
        self.c.abs() + self.a.abs() + r as f64 * self.b.abs()
    }
}

/// `-f_x(rho, rho) = sum_l sum_m sum_{k<=m} m E / (1 - E)`,
/// `E = exp(-rho (m + c + a k + m b l))`.
pub fn neg_f_x(rho: f64, r: usize, w: Weights) -> f64 {
    let tail = TailModel {
        coef: r as f64,
        p: 2,
        k: 1,
        lambda: rho * (1.0 - w.a.abs() - r as f64 * w.b.abs()),
        shift: rho * w.c.abs(),
    };
    let term = |m: usize| {
        let mf = m as f64;
        let mut s = 0.0;
        for l in 1..=r {
            let base = mf + w.c + mf * w.b * l as f64;
            if w.a == 0.0 {
                s += mf * mf * b1(rho * base);
            } else {
                for k in 1..=m {
                    s += mf * b1(rho * (base + w.a * k as f64));
                }
            }
        }
        s
    };
    sum_m(term, &tail, FX_TAIL_TOL)
}

/// `f_x` itself (negative).
pub fn f_x(rho: f64, r: usize, w: Weights) -> f64 {
    -neg_f_x(rho, r, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleProblem {
    pub r: usize,
    pub n: f64,
    pub weights: Weights,
}

impl SaddleProblem {
    pub fn new(r: usize, n: f64, weights: Weights) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidArgument(format!("target size {n} must be positive")));
        }
        if weights.epsilon(r) >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "weights violate |c| + |a| + r|b| < 1 (got {})",
                weights.epsilon(r)
            )));
        }
        Ok(SaddleProblem { r, n, weights })
    }

    pub fn untilted(r: usize, n: f64) -> Result<Self> {
        Self::new(r, n, Weights::default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SaddleResult {
    pub rho: f64,
    /// `|n + f_x(rho)| / n`.
    pub residual: f64,
    pub iterations: u32,
}

/// Relative bisection width at which the solver stops.
pub const SADDLE_REL_TOL: f64 = 1e-12;
/// Relative slack allowed in the sandwich inequalities.
pub const SANDWICH_SLACK: f64 = 1e-9;

/// Positive root of `n = -f_x(rho)` by bisection on
/// `[seed / 4, 4 seed]`, `seed = (2 r zeta(3) / n)^(1/3)`.
pub fn solve_saddle(p: &SaddleProblem) -> Result<SaddleResult> {
    let (r, n, w) = (p.r, p.n, p.weights);
    let seed = rho0_asymptotic(n, r);
    let (mut lo, mut hi) = (seed / 4.0, 4.0 * seed);
    let g = |rho: f64| neg_f_x(rho, r, w) - n;
    if g(lo) < 0.0 || g(hi) > 0.0 {
        return Err(Error::BracketFailure { lo, hi });
    }
    let mut iterations = 0;
    while (hi - lo) > SADDLE_REL_TOL * 0.5 * (hi + lo) {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let rho = 0.5 * (lo + hi);
    let residual = g(rho).abs() / n;
    check_sandwich(p, rho)?;
    Ok(SaddleResult { rho, residual, iterations })
}

/// `-f_x((1+eps) rho, 0) <= n <= -f_x((1-eps) rho, 0)` with
/// `eps = |c| + |a| + r|b|`.
pub fn check_sandwich(p: &SaddleProblem, rho: f64) -> Result<()> {
    let eps = p.weights.epsilon(p.r);
    let zero = Weights::default();
    let upper = neg_f_x((1.0 - eps) * rho, p.r, zero);
    let lower = neg_f_x((1.0 + eps) * rho, p.r, zero);
    let slack = SANDWICH_SLACK * p.n;
    if lower > p.n + slack || p.n > upper + slack {
        return Err(Error::SandwichViolated(format!(
            "n = {} outside [{lower}, {upper}] at rho = {rho}, eps = {eps}",
            p.n
        )));
    }
    Ok(())
}

/// Leading term `(2 r zeta(3) / n)^(1/3)`.
pub fn rho0_asymptotic(n: f64, r: usize) -> f64 {
    (2.0 * r as f64 * ZETA3 / n).cbrt()
}

/// Linear combination `alpha X + beta Y + gamma Z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Combination {
    /// `4Z - 2X - 2Y`, which together with the shift `(r+2) n` is `S_{n,r}`.
    pub const S: Combination = Combination { alpha: -2.0, beta: -2.0, gamma: 4.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Combination { alpha, beta, gamma }
    }
}

fn s1(n: f64) -> f64 {
    n * (n + 1.0) / 2.0
}

fn s2(n: f64) -> f64 {
    n * (n + 1.0) * (2.0 * n + 1.0) / 6.0
}

/// `sum_{k<=m, l<=r} (gamma + alpha k + m beta l)`.
pub fn inner_linear(m: usize, r: usize, w: Combination) -> f64 {
    let (m, r) = (m as f64, r as f64);
    r * m * w.gamma + r * w.alpha * s1(m) + m * w.beta * m * s1(r)
}

/// `sum_{k<=m, l<=r} (gamma + alpha k + m beta l)^2`.
pub fn inner_quadratic(m: usize, r: usize, w: Combination) -> f64 {
    let (m, r) = (m as f64, r as f64);
    let Combination { alpha: a, beta: b, gamma: g } = w;
    r * m * g * g
        + r * a * a * s2(m)
        + m * m * m * b * b * s2(r)
        + 2.0 * g * a * r * s1(m)
        + 2.0 * g * b * m * m * s1(r)
        + 2.0 * a * b * m * s1(m) * s1(r)
}

/// Partial derivatives of `g(x, y) = log F(e^(alpha y), e^(beta y), e^(gamma y), e^-x)`
/// at `(rho, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GPartials {
    pub g: f64,
    pub g_x: f64,
    pub g_y: f64,
    pub g_xx: f64,
    pub g_xy: f64,
    pub g_yy: f64,
}

pub fn g_partials(rho: f64, r: usize, w: Combination) -> GPartials {
    g_partials_tol(rho, r, w, DEFAULT_TAIL_TOL)
}

pub fn g_partials_tol(rho: f64, r: usize, w: Combination, tol: f64) -> GPartials {
    let rf = r as f64;
    // |inner_linear| <= m^2 c1 and |inner_quadratic| <= m^3 c2 for m >= 1
    let c1 = rf * (w.gamma.abs() + w.alpha.abs() + w.beta.abs() * s1(rf));
    let c2 = rf * (w.gamma.abs() + w.alpha.abs() + w.beta.abs() * rf).powi(2);
    let tail = |coef: f64, p: i32, k: i32| TailModel { coef, p, k, lambda: rho, shift: 0.0 };

    let g = sum_m(|m| -rf * m as f64 * (-(-rho * m as f64).exp()).ln_1p(), &tail(rf, 1, 1), tol);
    let g_x = -sum_m(|m| rf * (m as f64).powi(2) * b1(rho * m as f64), &tail(rf, 2, 1), tol);
    let g_y = sum_m(|m| inner_linear(m, r, w) * b1(rho * m as f64), &tail(c1, 2, 1), tol);
    let g_xx = sum_m(|m| rf * (m as f64).powi(3) * b2(rho * m as f64), &tail(rf, 3, 2), tol);
    let g_xy = -sum_m(|m| m as f64 * inner_linear(m, r, w) * b2(rho * m as f64), &tail(c1, 3, 2), tol);
    let g_yy = sum_m(|m| inner_quadratic(m, r, w) * b2(rho * m as f64), &tail(c2, 3, 2), tol);
    GPartials { g, g_x, g_y, g_xx, g_xy, g_yy }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentEstimates {
    pub mu_n: f64,
    pub sigma2_n: f64,
    pub rho0: f64,
}

/// `mu_n = g_y`, `sigma_n^2 = (g_yy g_xx - g_xy^2) / g_xx` at the untilted
/// saddle.
pub fn mu_sigma(n: f64, r: usize, w: Combination) -> Result<MomentEstimates> {
    mu_sigma_tol(n, r, w, DEFAULT_TAIL_TOL)
}

pub fn mu_sigma_tol(n: f64, r: usize, w: Combination, tail_tol: f64) -> Result<MomentEstimates> {
    let rho0 = solve_saddle(&SaddleProblem::untilted(r, n)?)?.rho;
    let d = g_partials_tol(rho0, r, w, tail_tol);
    Ok(MomentEstimates {
        mu_n: d.g_y,
        sigma2_n: (d.g_yy * d.g_xx - d.g_xy * d.g_xy) / d.g_xx,
        rho0,
    })
}

/// Leading-order coefficients: `mu_n ~ linear n + two_thirds n^(2/3)`,
/// `sigma_n^2 ~ four_thirds n^(4/3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentAsymptotics {
    pub linear: f64,
    pub two_thirds: f64,
    pub four_thirds: f64,
}

pub fn moment_asymptotics(r: usize, w: Combination) -> MomentAsymptotics {
    let rf = r as f64;
    let Combination { alpha: a, beta: b, gamma: g } = w;
    MomentAsymptotics {
        linear: 0.5 * a + 0.5 * (rf + 1.0) * b,
        two_thirds: rf.cbrt() * ZETA2 * (a + 2.0 * g) / (2f64.powf(5.0 / 3.0) * ZETA3.powf(2.0 / 3.0)),
        four_thirds: (a * a + (rf * rf - 1.0) * b * b) / (2f64.powf(7.0 / 3.0) * (rf * ZETA3).cbrt()),
    }
}

/// Limiting mean and variance of `S_{n,r} / n^(2/3)`.
pub fn theorem_constants(r: usize) -> (f64, f64) {
    let rf = r as f64;
    let mu = rf.cbrt() * PI * PI / (2f64.powf(5.0 / 3.0) * ZETA3.powf(2.0 / 3.0));
    let sigma2 = rf.powf(5.0 / 3.0) / (2.0 * ZETA3).cbrt();
    (mu, sigma2)
}

/// Largest absolute gap between the moment coefficients of `4Z - 2X - 2Y`
/// plus the shift `(r + 2) n`, and the limiting constants: the linear
/// coefficient must vanish and the others must equal `(mu, sigma^2)`.
pub fn constants_consistency_gap(r: usize) -> f64 {
    let c = moment_asymptotics(r, Combination::S);
    let (mu, sigma2) = theorem_constants(r);
    let linear = c.linear + (r as f64 + 2.0);
    linear.abs().max((c.two_thirds - mu).abs()).max((c.four_thirds - sigma2).abs())
}

/// `log Q_n(1,1,1) ~ g(rho0, 0) + n rho0 - log(2 pi g_xx(rho0, 0)) / 2`.
pub fn qn_saddle_approx(n: f64, r: usize) -> Result<f64> {
    let rho0 = solve_saddle(&SaddleProblem::untilted(r, n)?)?.rho;
    let d = g_partials(rho0, r, Combination::new(0.0, 0.0, 0.0));
    Ok(d.g + n * rho0 - 0.5 * (2.0 * PI * d.g_xx).ln())
}
