//! Plane partitions, their diagonal statistics, and the polynomials
//! `M_{n,r}(T)` and `Q_n(u,v,w)` computed by enumeration and by series.

mod dist;
mod tripoly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qseries::macmahon_pow_ints;
use crate::ring::TPoly;

pub use dist::{distribution, distribution_csv, DistSource, Distribution};
pub use tripoly::TriPoly;

/// Row-major plane partition with positive entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl TryFrom<Vec<Vec<u32>>> for PlanePartition {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        PlanePartition::new(rows)
    }
}

impl From<PlanePartition> for Vec<Vec<u32>> {
    fn from(p: PlanePartition) -> Self {
        p.rows
    }
}

impl PlanePartition {
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                return bad(format!("row {i} is empty"));
            }
            if row.contains(&0) {
                return bad(format!("row {i} has a zero entry"));
            }
            if row.windows(2).any(|w| w[0] < w[1]) {
                return bad(format!("row {i} is not weakly decreasing"));
            }
            if i > 0 {
                let above = &rows[i - 1];
                if row.len() > above.len() || row.iter().zip(above).any(|(b, a)| b > a) {
                    return bad(format!("row {i} is not dominated by the row above"));
                }
            }
        }
        Ok(PlanePartition { rows })
    }

    pub fn empty() -> Self {
        PlanePartition { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> u64 {
        self.rows.iter().flatten().map(|&x| x as u64).sum()
    }

    pub fn transpose(&self) -> PlanePartition {
        let width = self.rows.first().map_or(0, Vec::len);
        let rows = (0..width)
            .map(|j| self.rows.iter().take_while(|r| r.len() > j).map(|r| r[j]).collect())
            .collect();
        PlanePartition { rows }
    }

    pub fn stats(&self) -> PPStats {
        let mut s = PPStats::default();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                let x = x as u64;
                s.size += x;
                match j.cmp(&i) {
                    std::cmp::Ordering::Equal => s.diag += x,
                    std::cmp::Ordering::Greater => s.upper += x,
                    std::cmp::Ordering::Less => s.lower += x,
                }
            }
        }
        s
    }
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join(" / "))
    }
}

/// Size and the diagonal, upper (`j > i`) and lower (`i > j`) sums.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PPStats {
    pub size: u64,
    pub diag: u64,
    pub upper: u64,
    pub lower: u64,
}

/// All plane partitions of `n`, in decreasing lexicographic order of the
/// row sequence.
pub fn enumerate_pp(n: u32) -> Vec<PlanePartition> {
    let mut out = Vec::new();
    let mut rows = Vec::new();
    stack_rows(n, None, &mut rows, &mut out);
    out
}

fn stack_rows(rem: u32, above: Option<&[u32]>, rows: &mut Vec<Vec<u32>>, out: &mut Vec<PlanePartition>) {
    if rem == 0 {
        out.push(PlanePartition { rows: rows.clone() });
        return;
    }
    let mut candidates = Vec::new();
    dominated_rows(rem, above, &mut Vec::new(), &mut candidates);
    candidates.sort_unstable_by(|a, b| b.cmp(a));
    for row in candidates {
        let s: u32 = row.iter().sum();
        rows.push(row);
        let last = rows.last().unwrap().clone();
        stack_rows(rem - s, Some(&last), rows, out);
        rows.pop();
    }
}

/// Nonempty weakly decreasing rows with sum `<= rem`, entrywise below `above`.
fn dominated_rows(rem: u32, above: Option<&[u32]>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let j = cur.len();
    let cap = match above {
        Some(a) if j >= a.len() => return,
        Some(a) => a[j],
        None => u32::MAX,
    };
    let cap = cap.min(cur.last().copied().unwrap_or(u32::MAX)).min(rem);
    for x in 1..=cap {
        cur.push(x);
        out.push(cur.clone());
        dominated_rows(rem - x, above, cur, out);
        cur.pop();
    }
}

/// An `r`-tuple of plane partitions; colours are numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredPP {
    parts: Vec<PlanePartition>,
}

/// `X = sum (diag + upper)`, `Y = sum l |pi_l|`, `Z = sum diag`,
/// `S = 4Z - 2X - 2Y + (r + 2) n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColoredStats {
    pub x: u64,
    pub y: u64,
    pub z: u64,
    pub s: i64,
}

impl ColoredPP {
    pub fn new(parts: Vec<PlanePartition>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument("need at least one colour".into()));
        }
        Ok(ColoredPP { parts })
    }

    pub fn r(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[PlanePartition] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().map(PlanePartition::size).sum()
    }

    pub fn stats(&self) -> ColoredStats {
        let (mut x, mut y, mut z) = (0, 0, 0);
        for (l, p) in self.parts.iter().enumerate() {
            let st = p.stats();
            x += st.diag + st.upper;
            y += (l as u64 + 1) * st.size;
            z += st.diag;
        }
        let n = self.size() as i64;
        let r = self.r() as i64;
        let s = 4 * z as i64 - 2 * x as i64 - 2 * y as i64 + (r + 2) * n;
        ColoredStats { x, y, z, s }
    }
}

/// Weak compositions of `n` into `r` ordered parts.
pub fn compositions(n: u32, r: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, r: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if r == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=n {
            cur.push(k);
            go(n - k, r - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        go(n, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `r`-coloured plane partition of total size `n`.
pub fn enumerate_colored(r: usize, n: u32) -> Vec<ColoredPP> {
    let by_size: Vec<Vec<PlanePartition>> = (0..=n).map(enumerate_pp).collect();
    let mut out = Vec::new();
    for comp in compositions(n, r) {
        let mut acc: Vec<Vec<PlanePartition>> = vec![Vec::new()];
        for &s in &comp {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    by_size[s as usize].iter().map(move |p| {
                        let mut v = prefix.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(|parts| ColoredPP { parts }));
    }
    out
}

/// For each size `s <= n`: counts of plane partitions keyed by
/// `(diag + upper, diag)`.
fn stat_tables(n: u32) -> Vec<BTreeMap<(u64, u64), u64>> {
    (0..=n)
        .into_par_iter()
        .map(|s| {
            let mut t = BTreeMap::new();
            for p in enumerate_pp(s) {
                let st = p.stats();
                *t.entry((st.diag + st.upper, st.diag)).or_insert(0) += 1;
            }
            t
        })
        .collect()
}

fn check_rank(r: usize) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be at least 1".into()));
    }
    Ok(())
}

/// `M_{n,r}(T) = sum T^S` over `r`-coloured plane partitions of `n`, by
/// enumeration.
pub fn m_poly_enum(r: usize, n: u32) -> Result<TPoly> {
    check_rank(r)?;
    let tables = stat_tables(n);
    let shift = r as i64 + 2;
    // per (colour, size): sum over partitions of T^(4z - 2x - 2 l s + (r+2) s)
    let piece = |l: usize, s: u32| -> TPoly {
        let s_i = s as i64;
        TPoly::from_terms(tables[s as usize].iter().map(|(&(x, z), &c)| {
            (4 * z as i64 - 2 * x as i64 - 2 * l as i64 * s_i + shift * s_i, BigInt::from(c))
        }))
    };
    Ok(compositions(n, r)
        .into_par_iter()
        .map(|comp| {
            comp.iter().enumerate().fold(TPoly::one(), |acc, (i, &s)| &acc * &piece(i + 1, s))
        })
        .reduce(TPoly::zero, |a, b| &a + &b))
}

/// `Q_n(u, v, w) = sum u^X v^Y w^Z` by enumeration.
pub fn q_poly_enum(r: usize, n: u32) -> Result<TriPoly> {
    check_rank(r)?;
    let tables = stat_tables(n);
    let piece = |l: usize, s: u32| -> TriPoly {
        let y = l as u64 * s as u64;
        TriPoly::from_terms(tables[s as usize].iter().map(|(&(x, z), &c)| ((x, y, z), BigInt::from(c))))
    };
    Ok(compositions(n, r)
        .into_par_iter()
        .map(|comp| comp.iter().enumerate().fold(TriPoly::one(), |acc, (i, &s)| acc.mul(&piece(i + 1, s))))
        .reduce(TriPoly::zero, |a, b| a.add(&b)))
}

/// Coefficient of `z^n` in `prod_l prod_m prod_{k<=m} (1 - w u^k v^(ml) z^m)^-1`.
pub fn q_poly_series(r: usize, n: u32) -> Result<TriPoly> {
    check_rank(r)?;
    let n = n as usize;
    let mut series = vec![TriPoly::zero(); n + 1];
    series[0] = TriPoly::one();
    for l in 1..=r as u64 {
        for m in 1..=n {
            for k in 1..=m as u64 {
                let mono = (k, m as u64 * l, 1u64);
                for d in m..=n {
                    let (lo, hi) = series.split_at_mut(d);
                    let add = lo[d - m].shift(mono);
                    hi[0] = hi[0].add(&add);
                }
            }
        }
    }
    Ok(series.swap_remove(n))
}

/// `T^((r+2)n) Q(T^-2, T^-2, T^4)`; coefficients of `Q` must be nonnegative.
pub fn m_from_q(r: usize, n: u32, q: &TriPoly) -> Result<TPoly> {
    let shift = (r as i64 + 2) * n as i64;
    if let Some(((x, y, z), c)) = q.terms().find(|(_, c)| c.sign() == num_bigint::Sign::Minus) {
        return Err(Error::Verification(format!("negative coefficient {c} at u^{x} v^{y} w^{z}")));
    }
    Ok(TPoly::from_terms(
        q.terms().map(|(&(x, y, z), c)| (shift - 2 * x as i64 - 2 * y as i64 + 4 * z as i64, c.clone())),
    ))
}

/// Number of `r`-coloured plane partitions of `n`.
pub fn count_colored(r: usize, n: usize) -> BigInt {
    macmahon_pow_ints(r, n).swap_remove(n)
}
