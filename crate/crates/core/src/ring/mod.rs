//! Coefficient ring: Laurent polynomials and rational functions in `T`,
//! where the Lefschetz motive is `L = T^2`.

mod modgcd;
mod poly;
mod rat;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use poly::TPoly;
pub use rat::TRat;

/// Class of `GL_n`: `prod_{i=0}^{n-1} (L^n - L^i)` with `L = T^2`.
pub fn gl_class(n: u32) -> TPoly {
    let n = n as i64;
    (0..n).fold(TPoly::one(), |acc, i| {
        let factor = TPoly::from_terms([(2 * n, 1), (2 * i, -1)]);
        &acc * &factor
    })
}

impl Serialize for TPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<i64, String> = self.terms().map(|(e, c)| (e, c.to_string())).collect();
        // String keys as required by JSON; numeric order is kept by BTreeMap<i64>.
        s.collect_map(map.iter().map(|(e, c)| (e.to_string(), c)))
    }
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, String> = BTreeMap::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let e: i64 = e.parse().map_err(D::Error::custom)?;
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            terms.push((e, c));
        }
        Ok(TPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct TRatRepr {
    num: TPoly,
    den: TPoly,
}

impl Serialize for TRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        TRatRepr { num: self.numer().clone(), den: self.denom().clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = TRatRepr::deserialize(d)?;
        TRat::canonicalize(r.num, r.den).map_err(D::Error::custom)
    }
}
