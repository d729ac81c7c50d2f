//! Framed representations of the 3-loop quiver and the potential
//! `W = A3 [A1, A2]`.

use std::collections::VecDeque;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::linalg::{rational_str, EchelonBasis, QMatrix, QVector};
use crate::error::{Error, Result};

/// `(u, rho)`: three endomorphisms of `C^n` and `r` framing vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FramedRepJson", into = "FramedRepJson")]
pub struct FramedRep {
    a: [QMatrix; 3],
    u: Vec<QVector>,
}

#[derive(Serialize, Deserialize)]
struct FramedRepJson {
    n: usize,
    #[serde(serialize_with = "rational_str::serialize_matrix", deserialize_with = "rational_str::deserialize_matrix")]
    a1: QMatrix,
    #[serde(serialize_with = "rational_str::serialize_matrix", deserialize_with = "rational_str::deserialize_matrix")]
    a2: QMatrix,
    #[serde(serialize_with = "rational_str::serialize_matrix", deserialize_with = "rational_str::deserialize_matrix")]
    a3: QMatrix,
    #[serde(serialize_with = "rational_str::serialize_vectors", deserialize_with = "rational_str::deserialize_vectors")]
    u: Vec<QVector>,
}

impl TryFrom<FramedRepJson> for FramedRep {
    type Error = Error;
    fn try_from(j: FramedRepJson) -> Result<Self> {
        let rep = FramedRep::new([j.a1, j.a2, j.a3], j.u)?;
        if rep.n() != j.n {
            return Err(Error::DimensionMismatch { expected: j.n, got: rep.n() });
        }
        Ok(rep)
    }
}

impl From<FramedRep> for FramedRepJson {
    fn from(r: FramedRep) -> Self {
        let n = r.n();
        let [a1, a2, a3] = r.a;
        FramedRepJson { n, a1, a2, a3, u: r.u }
    }
}

impl FramedRep {
    pub fn new(a: [QMatrix; 3], u: Vec<QVector>) -> Result<Self> {
        let n = a[0].size();
        for m in &a[1..] {
            if m.size() != n {
                return Err(Error::DimensionMismatch { expected: n, got: m.size() });
            }
        }
        if let Some(bad) = u.iter().find(|v| v.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, got: bad.len() });
        }
        Ok(FramedRep { a, u })
    }

    pub fn n(&self) -> usize {
        self.a[0].size()
    }

    pub fn r(&self) -> usize {
        self.u.len()
    }

    pub fn matrices(&self) -> &[QMatrix; 3] {
        &self.a
    }

    pub fn framing(&self) -> &[QVector] {
        &self.u
    }

    /// Base change by `g`: `A_i -> g A_i g^-1`, `u -> g u`.
    pub fn conjugate(&self, g: &QMatrix) -> Result<FramedRep> {
        let g_inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidArgument("base change matrix is singular".into()))?;
        let mut a = self.a.clone();
        for m in a.iter_mut() {
            *m = g.mul(m)?.mul(&g_inv)?;
        }
        let u = self.u.iter().map(|v| g.apply(v)).collect::<Result<Vec<_>>>()?;
        FramedRep::new(a, u)
    }
}

/// Basis of the smallest subspace containing every `u_l` and stable under
/// `A1, A2, A3`, grown breadth first.
pub fn framed_span_basis(rep: &FramedRep) -> EchelonBasis {
    let mut basis = EchelonBasis::new();
    let mut queue: VecDeque<QVector> = rep.u.iter().cloned().collect();
    while let Some(v) = queue.pop_front() {
        if basis.dim() == rep.n() {
            break;
        }
        if !basis.insert(v.clone()) {
            continue;
        }
        for m in &rep.a {
            queue.push_back(m.apply(&v).expect("shapes validated"));
        }
    }
    basis
}

pub fn framed_span(rep: &FramedRep) -> usize {
    framed_span_basis(rep).dim()
}

/// Stability for `zeta < 0`: the framing vectors generate everything.
pub fn is_stable_neg(rep: &FramedRep) -> bool {
    framed_span(rep) == rep.n()
}

/// `Tr(A3 (A1 A2 - A2 A1))`.
pub fn trace_potential(a1: &QMatrix, a2: &QMatrix, a3: &QMatrix) -> Result<BigRational> {
    Ok(a3.mul(&a1.commutator(a2)?)?.trace())
}

/// All three cyclic derivatives of the potential vanish, i.e. the matrices
/// pairwise commute.
pub fn is_critical(a1: &QMatrix, a2: &QMatrix, a3: &QMatrix) -> Result<bool> {
    Ok(a1.commutator(a2)?.is_zero() && a2.commutator(a3)?.is_zero() && a3.commutator(a1)?.is_zero())
}
