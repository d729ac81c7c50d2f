use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Exp3 = (u64, u64, u64);

/// Polynomial in `u, v, w` with big-integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriPoly {
    terms: BTreeMap<Exp3, BigInt>,
}

impl TriPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), 1)
    }

    pub fn monomial(e: Exp3, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exp3, BigInt)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp3, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp3, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: Exp3) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term((a.0 + b.0, a.1 + b.1, a.2 + b.2), ca * cb);
            }
        }
        out
    }

    /// Multiplies by the monomial `u^a v^b w^c`.
    pub fn shift(&self, (a, b, c): Exp3) -> TriPoly {
        TriPoly { terms: self.terms.iter().map(|(e, v)| ((e.0 + a, e.1 + b, e.2 + c), v.clone())).collect() }
    }

    /// Value at `u = v = w = 1`.
    pub fn eval_ones(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl fmt::Display for TriPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b, c), v) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut factors = Vec::new();
            if !v.is_one() || (a, b, c) == (0, 0, 0) {
                factors.push(v.to_string());
            }
            for (name, e) in [("u", a), ("v", b), ("w", c)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for TriPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<String, String> =
            self.terms.iter().map(|((a, b, c), v)| (format!("{a},{b},{c}"), v.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TriPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut p = TriPoly::zero();
        for (k, v) in m {
            let e: Vec<u64> = k
                .split(',')
                .map(|x| x.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|e| D::Error::custom(format!("bad exponent key {k:?}: {e}")))?;
            let [a, b, c] = e[..] else {
                return Err(D::Error::custom(format!("exponent key {k:?} needs three entries")));
            };
            let c_val: BigInt = v.parse().map_err(|e| D::Error::custom(format!("bad coefficient {v:?}: {e}")))?;
            p.add_term((a, b, c), c_val);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_json() {
        let a = TriPoly::from_terms([((1, 0, 0), BigInt::from(1)), ((0, 1, 0), BigInt::from(2))]);
        let sq = a.mul(&a);
        assert_eq!(sq.coeff((1, 1, 0)), BigInt::from(4));
        assert_eq!(sq.eval_ones(), BigInt::from(9));
        let cancel = a.add(&TriPoly::monomial((1, 0, 0), -1));
        assert_eq!(cancel, TriPoly::monomial((0, 1, 0), 2));
        let s = serde_json::to_string(&sq).unwrap();
        assert_eq!(s, r#"{"0,2,0":"4","1,1,0":"4","2,0,0":"1"}"#);
        assert_eq!(serde_json::from_str::<TriPoly>(&s).unwrap(), sq);
        assert!(serde_json::from_str::<TriPoly>(r#"{"1,2":"1"}"#).is_err());
        assert_eq!(TriPoly::monomial((1, 1, 1), 1).to_string(), "u*v*w");
    }
}
