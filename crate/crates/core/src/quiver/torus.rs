//! Truncated quantum torus `y^a * y^b = T^<a,b> y^(a+b)`.

use std::collections::BTreeMap;

use super::{DimVector, Quiver};
use crate::error::{Error, Result};
use crate::qseries::{expand_dt, feit_fine, QSeries};
use crate::ring::TRat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    quiver: Quiver,
    trunc: u64,
    coeffs: BTreeMap<DimVector, TRat>,
}

impl TorusElement {
    /// Zero element; terms of total dimension above `trunc` are dropped.
    pub fn zero(quiver: Quiver, trunc: u64) -> Self {
        TorusElement { quiver, trunc, coeffs: BTreeMap::new() }
    }

    pub fn one(quiver: Quiver, trunc: u64) -> Self {
        let n = quiver.vertex_count();
        Self::monomial(quiver, trunc, DimVector::zero(n), TRat::one()).expect("unit has matching length")
    }

    pub fn monomial(quiver: Quiver, trunc: u64, dim: DimVector, c: TRat) -> Result<Self> {
        let mut e = Self::zero(quiver, trunc);
        e.add_term(dim, c)?;
        Ok(e)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn trunc(&self) -> u64 {
        self.trunc
    }

    pub fn add_term(&mut self, dim: DimVector, c: TRat) -> Result<()> {
        self.quiver.check(&dim)?;
        if dim.total() > self.trunc || c.is_zero() {
            return Ok(());
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(dim) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn coeff(&self, dim: &DimVector) -> TRat {
        self.coeffs.get(dim).cloned().unwrap_or_else(TRat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DimVector, &TRat)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &TorusElement) -> Result<TorusElement> {
        if self.quiver != rhs.quiver {
            return Err(Error::QuiverMismatch);
        }
        let mut out = self.clone();
        out.trunc = self.trunc.min(rhs.trunc);
        out.coeffs.retain(|d, _| d.total() <= out.trunc);
        for (d, c) in &rhs.coeffs {
            out.add_term(d.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, rhs: &TorusElement) -> Result<TorusElement> {
        torus_mul(self, rhs)
    }
}

/// Twisted product; the result keeps the smaller truncation.
pub fn torus_mul(a: &TorusElement, b: &TorusElement) -> Result<TorusElement> {
    if a.quiver != b.quiver {
        return Err(Error::QuiverMismatch);
    }
    let mut out = TorusElement::zero(a.quiver.clone(), a.trunc.min(b.trunc));
    for (da, ca) in &a.coeffs {
        for (db, cb) in &b.coeffs {
            if da.total() + db.total() > out.trunc {
                continue;
            }
            let twist = a.quiver.skew_form(da, db)?;
            out.add_term(da.checked_add(db)?, (ca * cb).shift(twist))?;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WallCrossing {
    Holds,
    /// First dimension vector (by increasing `n`) where the sides differ.
    Mismatch(DimVector),
}

impl WallCrossing {
    pub fn holds(&self) -> bool {
        matches!(self, WallCrossing::Holds)
    }
}

/// `Z+ * A_U = A_U * Z-` on the `r`-framed 3-loop quiver up to `y^(1,n)`,
/// `n <= trunc`, with `A_U` the Feit–Fine series and `Z+` built from the
/// closed-form DT product.
pub fn wall_crossing_check(r: usize, trunc: usize) -> Result<WallCrossing> {
    wall_crossing_check_with(r, &feit_fine(trunc), &expand_dt(r, trunc))
}

/// Same check with caller-supplied `A_U` and DT series (both graded by the
/// unframed dimension `n`).
pub fn wall_crossing_check_with(r: usize, a_u: &QSeries, dt: &QSeries) -> Result<WallCrossing> {
    let quiver = Quiver::three_loop().r_framing(0, r)?;
    let n_max = a_u.trunc().min(dt.trunc());
    let trunc = n_max as u64 + 1;
    let y = |d: u32, n: u32, c: TRat| TorusElement::monomial(quiver.clone(), trunc, [d, n].into(), c);

    let y_inf = y(1, 0, TRat::one())?;
    let y01 = y(0, 1, TRat::one())?;

    let mut a = TorusElement::zero(quiver.clone(), trunc);
    for n in 0..=n_max {
        a.add_term([0, n as u32].into(), a_u.coeff(n).clone())?;
    }

    // DT(T^-r y^(0,1)) as a sum of twisted powers of y^(0,1)
    let mut dt_part = TorusElement::zero(quiver.clone(), trunc);
    let mut power = TorusElement::one(quiver.clone(), trunc);
    for n in 0..=n_max {
        for (d, c) in power.terms() {
            dt_part.add_term(d.clone(), (dt.coeff(n) * c).shift(-((r * n) as i64)))?;
        }
        power = torus_mul(&power, &y01)?;
    }
    let z_plus = torus_mul(&dt_part, &y_inf)?;

    let lhs = torus_mul(&z_plus, &a)?;
    let rhs = torus_mul(&a, &y_inf)?;
    for n in 0..=n_max as u32 {
        let d: DimVector = [1, n].into();
        if lhs.coeff(&d) != rhs.coeff(&d) {
            return Ok(WallCrossing::Mismatch(d));
        }
    }
    Ok(WallCrossing::Holds)
}
