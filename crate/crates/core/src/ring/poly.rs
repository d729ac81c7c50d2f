//! Laurent polynomials in `T` with arbitrary-precision integer coefficients.
//!
//! Storage is dense: `coeffs[i]` is the coefficient of `T^(low + i)`, and both
//! the first and the last stored coefficient are nonzero. The zero polynomial
//! has no coefficients at all.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modgcd;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * T^exp`.
    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero();
        }
        TPoly { low: exp, coeffs: vec![c] }
    }

    /// The variable `T` itself.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// `L = T^2`.
    pub fn lefschetz() -> Self {
        Self::monomial(2, 1)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Builds `sum coeffs[i] * T^(low+i)`, trimming zeros at both ends.
    pub fn from_dense(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead);
        TPoly { low: low + lead as i64, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `c * T^0` (including zero).
    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.low == 0 && self.coeffs.len() == 1)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient; `None` for zero.
    pub fn low_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient; `None` for zero.
    pub fn high_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Number of stored (dense) coefficients, i.e. exponent span + 1.
    pub fn span(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let i = exp - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiplication by `T^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        TPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TPoly { low: self.low, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Exact division of every coefficient by `c`. Panics if `c` does not
    /// divide the content.
    pub(crate) fn div_scalar_exact(&self, c: &BigInt) -> Self {
        TPoly {
            low: self.low,
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        }
    }

    /// Gcd of the coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Substitutes `T -> sign * T^k` for `k >= 1`. With `sign = -1` and odd
    /// exponent parity the coefficient flips.
    pub fn substitute_power(&self, k: u32, sign_of_t: i8) -> Self {
        assert!(k >= 1);
        let k = k as i64;
        let terms = self.terms().map(|(e, c)| {
            let neg = sign_of_t < 0 && e.rem_euclid(2) == 1;
            (e * k, if neg { -c.clone() } else { c.clone() })
        });
        Self::from_terms(terms)
    }

    /// `self(T) -> self(-T)`.
    pub fn reflect(&self) -> Self {
        self.substitute_power(1, -1)
    }

    /// Sum of all coefficients, i.e. the value at `T = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Exact evaluation at a rational `t`. Returns `None` if `t = 0` and a
    /// negative power is present.
    pub fn eval_rational(&self, t: &BigRational) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if t.is_zero() {
            return match self.low.cmp(&0) {
                Ordering::Less => None,
                Ordering::Equal => Some(BigRational::from_integer(self.coeffs[0].clone())),
                Ordering::Greater => Some(BigRational::zero()),
            };
        }
        // Horner over the dense block, then the T^low factor.
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + BigRational::from_integer(c.clone());
        }
        Some(acc * pow_rational(t, self.low))
    }

    /// Evaluates at `T^2 = l`; only valid when every exponent is even.
    pub fn eval_even_at(&self, l: &BigRational) -> Result<Option<BigRational>, i64> {
        if let Some((e, _)) = self.terms().find(|(e, _)| e.rem_euclid(2) == 1) {
            return Err(e);
        }
        let halved = TPoly::from_terms(self.terms().map(|(e, c)| (e / 2, c.clone())));
        Ok(halved.eval_rational(l))
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.to_f64().unwrap_or(f64::NAN);
        }
        acc * t.powi(self.low as i32)
    }

    /// Formal derivative in `T`.
    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e - 1, c * BigInt::from(e))))
    }

    /// Exact quotient `self / rhs` over `Z[T, 1/T]`, if it exists.
    pub fn div_exact(&self, rhs: &TPoly) -> Option<TPoly> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TPoly::zero());
        }
        let q = modgcd::div_exact(&self.coeffs, &rhs.coeffs)?;
        Some(TPoly::from_dense(self.low - rhs.low, q))
    }

    /// Greatest common divisor in `Z[T]` of the polynomial parts, with the
    /// integer content gcd and a positive leading coefficient. Pure powers of
    /// `T` are units in the Laurent ring, so the result has `low = 0`.
    pub fn gcd(&self, rhs: &TPoly) -> TPoly {
        if self.is_zero() {
            return rhs.normalized_associate();
        }
        if rhs.is_zero() {
            return self.normalized_associate();
        }
        let g = modgcd::gcd(&self.coeffs, &rhs.coeffs);
        TPoly::from_dense(0, g)
    }

    fn normalized_associate(&self) -> TPoly {
        let p = TPoly::from_dense(0, self.coeffs.clone());
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }
}

fn pow_rational(t: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "T")?,
                (1, false) => write!(f, "{mag}*T")?,
                (_, true) => write!(f, "T^{e}")?,
                (_, false) => write!(f, "{mag}*T^{e}")?,
            }
        }
        Ok(())
    }
}

fn add_dense(a: &TPoly, b: &TPoly, negate_b: bool) -> TPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b.clone() } else { b.clone() };
    }
    let lo = a.low.min(b.low);
    let hi = a.high_exp().unwrap().max(b.high_exp().unwrap());
    let mut out = vec![BigInt::zero(); (hi - lo + 1) as usize];
    for (i, c) in a.coeffs.iter().enumerate() {
        out[(a.low - lo) as usize + i] += c;
    }
    for (i, c) in b.coeffs.iter().enumerate() {
        let slot = &mut out[(b.low - lo) as usize + i];
        if negate_b {
            *slot -= c;
        } else {
            *slot += c;
        }
    }
    TPoly::from_dense(lo, out)
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        add_dense(self, rhs, false)
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        add_dense(self, rhs, true)
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        TPoly::from_dense(self.low + rhs.low, modgcd::mul_dense(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly { low: self.low, coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TPoly {
            type Output = TPoly;
            fn $m(self, rhs: TPoly) -> TPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl TPoly {
    /// In-place `self += c * T^shift * rhs`; the workhorse of product expansions.
    pub fn add_scaled_shifted(&mut self, rhs: &TPoly, shift: i64, c: &BigInt) {
        if rhs.is_zero() || c.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.shift(shift).scale(c);
            return;
        }
        let r_lo = rhs.low + shift;
        let r_hi = r_lo + rhs.coeffs.len() as i64 - 1;
        let lo = self.low.min(r_lo);
        let hi = self.high_exp().unwrap().max(r_hi);
        if lo < self.low {
            let pad = (self.low - lo) as usize;
            let mut v = vec![BigInt::zero(); pad];
            v.append(&mut self.coeffs);
            self.coeffs = v;
            self.low = lo;
        }
        let need = (hi - self.low + 1) as usize;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, BigInt::zero());
        }
        let off = (r_lo - self.low) as usize;
        if c.is_one() {
            for (i, x) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + i] += x;
            }
        } else {
            for (i, x) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + i] += x * c;
            }
        }
        let taken = std::mem::take(&mut self.coeffs);
        *self = TPoly::from_dense(self.low, taken);
    }
}
