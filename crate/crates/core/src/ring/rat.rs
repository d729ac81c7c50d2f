//! Rational functions in `T` in a unique canonical form.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::TPoly;
use crate::error::{Error, Result};

/// `num / den` with `den` a polynomial in `T` (no negative powers) that has a
/// nonzero constant term and positive leading coefficient, and with `num`,
/// `den` coprime both as polynomials and in integer content.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TRat {
    num: TPoly,
    den: TPoly,
}

impl TRat {
    pub fn zero() -> Self {
        TRat { num: TPoly::zero(), den: TPoly::one() }
    }

    pub fn one() -> Self {
        TRat { num: TPoly::one(), den: TPoly::one() }
    }

    pub fn from_poly(p: TPoly) -> Self {
        TRat { num: p, den: TPoly::one() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(TPoly::constant(c))
    }

    pub fn monomial(exp: i64, c: impl Into<BigInt>) -> Self {
        Self::from_poly(TPoly::monomial(exp, c))
    }

    /// Reduces `num / den` to the canonical representative.
    pub fn canonicalize(num: TPoly, den: TPoly) -> Result<Self> {
        let Some(den_low) = den.low_exp() else {
            return Err(Error::ZeroDenominator);
        };
        if num.is_zero() {
            return Ok(Self::zero());
        }
        // T-powers of the denominator are units: move them to the numerator.
        let mut num = num.shift(-den_low);
        let mut den = den.shift(-den_low);
        if den.is_monomial() {
            // den is now an integer constant
            let d = den.leading_coeff().unwrap().clone();
            return Ok(Self::reduce_scalar(num, d));
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(TRat { num, den })
    }

    fn reduce_scalar(num: TPoly, d: BigInt) -> Self {
        let c = num.content().gcd(&d);
        let (mut num, mut d) = (num.div_scalar_exact(&c), d / &c);
        if d.is_negative() {
            num = -num;
            d = -d;
        }
        TRat { num, den: TPoly::constant(d) }
    }

    pub fn numer(&self) -> &TPoly {
        &self.num
    }

    pub fn denom(&self) -> &TPoly {
        &self.den
    }

    pub fn into_parts(self) -> (TPoly, TPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&TPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// Multiplication by `T^k`; stays canonical.
    pub fn shift(&self, k: i64) -> Self {
        TRat { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.scale(c));
        }
        Self::canonicalize(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn add(&self, rhs: &TRat) -> TRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return TRat::from_poly(num);
            }
            return TRat::canonicalize(num, self.den.clone()).unwrap();
        }
        if self.den.is_one() {
            let num = &(&self.num * &rhs.den) + &rhs.num;
            return TRat { num, den: rhs.den.clone() };
        }
        if rhs.den.is_one() {
            let num = &self.num + &(&rhs.num * &self.den);
            return TRat { num, den: self.den.clone() };
        }
        let g = self.den.gcd(&rhs.den);
        let a_cof = self.den.div_exact(&g).unwrap();
        let b_cof = rhs.den.div_exact(&g).unwrap();
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        let den = &self.den * &b_cof;
        TRat::canonicalize(num, den).unwrap()
    }

    pub fn sub(&self, rhs: &TRat) -> TRat {
        self.add(&rhs.neg_ref())
    }

    fn neg_ref(&self) -> TRat {
        TRat { num: -&self.num, den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &TRat) -> TRat {
        if self.is_zero() || rhs.is_zero() {
            return TRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return TRat::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying so the gcds stay small.
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        // Inputs are canonical, so only the integer content may remain shared.
        TRat::canonicalize_content(num, den)
    }

    pub fn div(&self, rhs: &TRat) -> Result<TRat> {
        Ok(self.mul(&rhs.recip()?))
    }

    pub fn recip(&self) -> Result<TRat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        TRat::canonicalize(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> TRat {
        let mut acc = TRat::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn canonicalize_content(num: TPoly, den: TPoly) -> TRat {
        let low = den.low_exp().expect("nonzero denominator");
        let mut num = num.shift(-low);
        let mut den = den.shift(-low);
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar_exact(&c);
            den = den.div_scalar_exact(&c);
        }
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        TRat { num, den }
    }

    /// Applies `T -> sign * T^k` to numerator and denominator.
    pub fn substitute_power(&self, k: u32, sign_of_t: i8) -> TRat {
        let num = self.num.substitute_power(k, sign_of_t);
        if self.den.is_one() {
            return TRat::from_poly(num);
        }
        TRat::canonicalize(num, self.den.substitute_power(k, sign_of_t)).unwrap()
    }

    /// Exact evaluation at a rational value of `T`.
    pub fn eval_at(&self, t: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(t).expect("denominator has no negative powers");
        if d.is_zero() {
            return Err(Error::Pole { denominator: self.den.to_string(), point: format!("T = {t}") });
        }
        let n = self.num.eval_rational(t).ok_or_else(|| Error::Pole {
            denominator: format!("T^{}", -self.num.low_exp().unwrap_or(0)),
            point: format!("T = {t}"),
        })?;
        Ok(n / d)
    }

    /// Exact evaluation at a rational value of `L = T^2`; requires only even
    /// powers of `T` in numerator and denominator.
    pub fn eval_at_lefschetz(&self, l: &BigRational) -> Result<BigRational> {
        let odd = |exponent| Error::OddExponent { exponent };
        let pole = || Error::Pole { denominator: self.den.to_string(), point: format!("L = {l}") };
        let d = self.den.eval_even_at(l).map_err(odd)?.ok_or_else(pole)?;
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval_even_at(l).map_err(odd)?.ok_or_else(pole)?;
        Ok(n / d)
    }

    pub fn eval_f64(&self, t: f64) -> Result<f64> {
        let d = self.den.eval_f64(t);
        if d == 0.0 {
            return Err(Error::Pole { denominator: self.den.to_string(), point: format!("T = {t}") });
        }
        Ok(self.num.eval_f64(t) / d)
    }
}

/// Removes the common polynomial factor of `a` and `b`.
fn cancel(a: &TPoly, b: &TPoly) -> (TPoly, TPoly) {
    if b.is_constant() || a.is_monomial() {
        return (a.clone(), b.clone());
    }
    let g = a.gcd(b);
    if g.span() <= 1 {
        return (a.clone(), b.clone());
    }
    (a.div_exact(&g).unwrap(), b.div_exact(&g).unwrap())
}

impl fmt::Debug for TRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl From<TPoly> for TRat {
    fn from(p: TPoly) -> Self {
        TRat::from_poly(p)
    }
}

impl Add for &TRat {
    type Output = TRat;
    fn add(self, rhs: &TRat) -> TRat {
        TRat::add(self, rhs)
    }
}

impl Sub for &TRat {
    type Output = TRat;
    fn sub(self, rhs: &TRat) -> TRat {
        TRat::sub(self, rhs)
    }
}

impl Mul for &TRat {
    type Output = TRat;
    fn mul(self, rhs: &TRat) -> TRat {
        TRat::mul(self, rhs)
    }
}

/// Panics on division by zero; use [`TRat::div`] for the fallible form.
impl Div for &TRat {
    type Output = TRat;
    fn div(self, rhs: &TRat) -> TRat {
        TRat::div(self, rhs).expect("division by zero")
    }
}

impl Neg for &TRat {
    type Output = TRat;
    fn neg(self) -> TRat {
        self.neg_ref()
    }
}

impl Neg for TRat {
    type Output = TRat;
    fn neg(self) -> TRat {
        TRat { num: -self.num, den: self.den }
    }
}
