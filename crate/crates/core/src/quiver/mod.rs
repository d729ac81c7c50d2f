//! Quivers, their bilinear forms, the twisted quantum torus and the framed
//! 3-loop quiver used by the wall-crossing check.

mod framed;
pub mod linalg;
mod torus;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use framed::{framed_span, framed_span_basis, is_critical, is_stable_neg, trace_potential, FramedRep};
pub use linalg::{EchelonBasis, QMatrix, QVector};
pub use torus::{
    torus_mul, wall_crossing_check, wall_crossing_check_with, TorusElement, WallCrossing,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiverJson", into = "QuiverJson")]
pub struct Quiver {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: QuiverJson) -> Result<Self> {
        Quiver::new(j.vertices, j.edges.into_iter().map(|[t, h]| (t, h)).collect())
    }
}

impl From<Quiver> for QuiverJson {
    fn from(q: Quiver) -> Self {
        QuiverJson { vertices: q.vertex_count, edges: q.edges.into_iter().map(|(t, h)| [t, h]).collect() }
    }
}

impl Quiver {
    /// Edges are `(tail, head)` pairs of vertex indices.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidArgument("a quiver needs at least one vertex".into()));
        }
        for &(t, h) in &edges {
            for index in [t, h] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange { index, vertices: vertex_count });
                }
            }
        }
        Ok(Quiver { vertex_count, edges })
    }

    /// One vertex with `k` loops.
    pub fn loops(k: usize) -> Self {
        Quiver { vertex_count: 1, edges: vec![(0, 0); k] }
    }

    pub fn three_loop() -> Self {
        Self::loops(3)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn check(&self, v: &DimVector) -> Result<()> {
        if v.len() != self.vertex_count {
            return Err(Error::DimensionMismatch { expected: self.vertex_count, got: v.len() });
        }
        Ok(())
    }

    /// `chi(a, b) = sum_i a_i b_i - sum_{edges t->h} a_t b_h`.
    pub fn euler_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        self.check(a)?;
        self.check(b)?;
        let diag: i64 = a.0.iter().zip(&b.0).map(|(&x, &y)| x as i64 * y as i64).sum();
        let arrows: i64 = self.edges.iter().map(|&(t, h)| a.0[t] as i64 * b.0[h] as i64).sum();
        Ok(diag - arrows)
    }

    /// `<a, b> = chi(a, b) - chi(b, a)`.
    pub fn skew_form(&self, a: &DimVector, b: &DimVector) -> Result<i64> {
        Ok(self.euler_form(a, b)? - self.euler_form(b, a)?)
    }

    /// Adds a framing vertex with `r` arrows into `vertex0`. The new vertex
    /// takes index 0 and the original vertices move up by one, so dimension
    /// vectors of the framed quiver read `(d_inf, d_0, d_1, ...)`.
    pub fn r_framing(&self, vertex0: usize, r: usize) -> Result<Quiver> {
        if r == 0 {
            return Err(Error::InvalidArgument("framing rank must be at least 1".into()));
        }
        if vertex0 >= self.vertex_count {
            return Err(Error::VertexOutOfRange { index: vertex0, vertices: self.vertex_count });
        }
        let mut edges: Vec<(usize, usize)> = self.edges.iter().map(|&(t, h)| (t + 1, h + 1)).collect();
        edges.extend(std::iter::repeat_n((0, vertex0 + 1), r));
        Ok(Quiver { vertex_count: self.vertex_count + 1, edges })
    }
}

/// Nonnegative dimension vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn zero(len: usize) -> Self {
        DimVector(vec![0; len])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn checked_add(&self, rhs: &DimVector) -> Result<DimVector> {
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: rhs.len() });
        }
        Ok(DimVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect()))
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}

impl<const N: usize> From<[u32; N]> for DimVector {
    fn from(v: [u32; N]) -> Self {
        DimVector(v.to_vec())
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Phase of `Z(a) = -zeta.a + |a| i`, as a fraction of `pi`.
pub fn phase(zeta: &[f64], a: &DimVector) -> Result<f64> {
    if zeta.len() != a.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: zeta.len() });
    }
    if a.is_zero() {
        return Err(Error::ZeroDimensionVector);
    }
    let re: f64 = -zeta.iter().zip(a.entries()).map(|(z, &x)| z * x as f64).sum::<f64>();
    let im = a.total() as f64;
    Ok(im.atan2(re) / std::f64::consts::PI)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_form_examples() {
        let q = Quiver::three_loop();
        assert_eq!(q.euler_form(&[2].into(), &[2].into()).unwrap(), -8);
        assert_eq!(q.euler_form(&[0].into(), &[5].into()).unwrap(), 0);
        let f = q.r_framing(0, 2).unwrap();
        assert_eq!(f.euler_form(&[0, 3].into(), &[1, 0].into()).unwrap(), 0);
        assert_eq!(f.skew_form(&[0, 3].into(), &[1, 0].into()).unwrap(), 6);
        assert!(matches!(q.euler_form(&[1, 1].into(), &[1].into()), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn framing_counts() {
        let f = Quiver::three_loop().r_framing(0, 2).unwrap();
        assert_eq!((f.vertex_count(), f.edges().len()), (2, 5));
        let g = Quiver::new(1, vec![]).unwrap().r_framing(0, 1).unwrap();
        assert_eq!((g.vertex_count(), g.edges().len()), (2, 1));
        assert!(Quiver::three_loop().r_framing(0, 0).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(matches!(Quiver::new(2, vec![(0, 2)]), Err(Error::VertexOutOfRange { index: 2, .. })));
    }

    #[test]
    fn json_round_trip() {
        let q: Quiver = serde_json::from_str(r#"{"vertices":1,"edges":[[0,0],[0,0],[0,0]]}"#).unwrap();
        assert_eq!(q, Quiver::three_loop());
        let back = serde_json::to_string(&q).unwrap();
        assert_eq!(back, r#"{"vertices":1,"edges":[[0,0],[0,0],[0,0]]}"#);
        assert!(serde_json::from_str::<Quiver>(r#"{"vertices":1,"edges":[[0,1]]}"#).is_err());
    }

    #[test]
    fn phases() {
        assert_eq!(phase(&[0.0], &[3].into()).unwrap(), 0.5);
        // zeta.a < 0 gives phase below 1/2
        assert!(phase(&[-1.0], &[2].into()).unwrap() < 0.5);
        // framed chamber: zeta_tilde = (-n zeta, zeta)
        let (n, z) = (3u32, 0.7);
        let zt = [-(n as f64) * z, z];
        let rho = phase(&zt, &[0, n].into()).unwrap();
        let framed = phase(&zt, &[1, n].into()).unwrap();
        assert!(rho > 0.5);
        assert!((framed - 0.5).abs() < 1e-12);
        assert_eq!(phase(&[1.0], &[0].into()), Err(Error::ZeroDimensionVector));
    }
}
