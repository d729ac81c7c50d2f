//! Small dense matrices over `Q` for exact rank decisions.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type QVector = Vec<BigRational>;

#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    n: usize,
    rows: Vec<QVector>,
}

impl QMatrix {
    pub fn zero(n: usize) -> Self {
        QMatrix { n, rows: vec![vec![BigRational::zero(); n]; n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.rows[i][i] = BigRational::one();
        }
        m
    }

    /// Elementary matrix `E_{ij}` (0-based indices).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.rows[i][j] = BigRational::one();
        m
    }

    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        Ok(QMatrix { n, rows })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.rows[i][j] = v;
    }

    fn check_same(&self, rhs: &QMatrix) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: rhs.n });
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.check_same(rhs)?;
        let n = self.n;
        let mut out = QMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.check_same(rhs)?;
        let rows = self
            .rows
            .iter()
            .zip(&rhs.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(QMatrix { n: self.n, rows })
    }

    /// `[self, rhs] = self*rhs - rhs*self`.
    pub fn commutator(&self, rhs: &QMatrix) -> Result<QMatrix> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.n).map(|i| self.rows[i][i].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Zero::is_zero)
    }

    pub fn apply(&self, v: &[BigRational]) -> Result<QVector> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: v.len() });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Gauss–Jordan inverse; `None` if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        let n = self.n;
        let mut a = self.rows.clone();
        let mut inv = QMatrix::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
        Some(QMatrix { n, rows: inv })
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        write!(f, "{rows:?}")
    }
}

/// Row-echelon basis of a growing subspace; pivot is the first nonzero entry.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, QVector)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub fn reduce(&self, mut v: QVector) -> QVector {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    /// Inserts `v` if independent; returns whether the dimension grew.
    pub fn insert(&mut self, v: QVector) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        let v: QVector = v.into_iter().map(|x| x / &lead).collect();
        // keep existing rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    pub fn vectors(&self) -> Vec<QVector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }
}

pub(crate) mod rational_str {
    //! Serde helpers: rationals as `"p/q"` strings.
    use super::*;
    use serde::de::Error as _;

    pub fn to_string(x: &BigRational) -> String {
        x.to_string()
    }

    pub fn parse(s: &str) -> std::result::Result<BigRational, String> {
        s.trim().parse::<BigRational>().map_err(|e| format!("bad rational {s:?}: {e}"))
    }

    pub fn serialize_matrix<S: Serializer>(m: &QMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            m.rows.iter().map(|r| r.iter().map(to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize_matrix<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<QMatrix, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        let rows = raw
            .iter()
            .map(|r| r.iter().map(|x| parse(x)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        QMatrix::from_rows(rows).map_err(D::Error::custom)
    }

    pub fn serialize_vectors<S: Serializer>(v: &[QVector], s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(to_string).collect()).collect();
        rows.serialize(s)
    }

    pub fn deserialize_vectors<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<QVector>, D::Error> {
        let raw: Vec<Vec<String>> = Vec::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(|x| parse(x)).collect::<std::result::Result<Vec<_>, _>>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)
    }
}
