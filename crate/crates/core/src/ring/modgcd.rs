//! Dense integer polynomial kernels: multiplication, exact division and a
//! modular (CRT) gcd. Slices are coefficient vectors indexed by exponent and
//! are expected to be trimmed (nonzero first and last entry).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) fn mul_dense(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Quotient `a / b` if `b` divides `a` exactly over `Z[T]`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut rem: Vec<BigInt> = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut q = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                rem[k + j] -= &c * y;
            }
        }
        q[k] = c;
    }
    if rem.iter().all(Zero::is_zero) {
        Some(q)
    } else {
        None
    }
}

fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn normalize_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -std::mem::take(c);
        }
    }
    v
}

/// Gcd in `Z[T]` of two trimmed dense polynomials, with positive leading
/// coefficient. Powers of `T` are ignored (both inputs have nonzero constant
/// terms after trimming, up to the caller's offset).
pub(crate) fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(!a.is_empty() && !b.is_empty());
    let ca = content(a);
    let cb = content(b);
    let c = ca.gcd(&cb);
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let pa: Vec<BigInt> = a.iter().map(|x| x / &ca).collect();
    let pb: Vec<BigInt> = b.iter().map(|x| x / &cb).collect();

    // Cheap exits: one side divides the other.
    let (small, large) = if pa.len() <= pb.len() { (&pa, &pb) } else { (&pb, &pa) };
    if div_exact(large, small).is_some() {
        return normalize_sign(small.iter().map(|x| x * &c).collect());
    }

    let lc_a = pa.last().unwrap();
    let lc_b = pb.last().unwrap();
    let h = lc_a.gcd(lc_b);

    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut last_candidate: Option<Vec<BigInt>> = None;

    for p in Primes::below(1u64 << 31) {
        let pb_big = BigInt::from(p);
        if (lc_a % &pb_big).is_zero() || (lc_b % &pb_big).is_zero() {
            continue;
        }
        let ap = reduce(&pa, p);
        let bp = reduce(&pb, p);
        let mut g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return vec![c];
        }
        let hp = big_mod(&h, p);
        for x in g.iter_mut() {
            *x = mulmod(*x, hp, p);
        }
        match deg.cmp(&best_deg) {
            std::cmp::Ordering::Greater => continue,
            std::cmp::Ordering::Less => {
                best_deg = deg;
                modulus = pb_big;
                acc = g.iter().map(|&x| BigInt::from(x)).collect();
                last_candidate = None;
                continue;
            }
            std::cmp::Ordering::Equal => {}
        }
        // CRT step
        let m_mod = big_mod(&modulus, p);
        let inv = invmod(m_mod, p);
        for (slot, &r) in acc.iter_mut().zip(g.iter()) {
            let cur = big_mod(slot, p);
            let diff = (r + p - cur) % p;
            let t = mulmod(diff, inv, p);
            *slot += &modulus * BigInt::from(t);
        }
        modulus *= &pb_big;

        let half = &modulus >> 1;
        let sym: Vec<BigInt> = acc
            .iter()
            .map(|x| if x > &half { x - &modulus } else { x.clone() })
            .collect();
        if last_candidate.as_ref() == Some(&sym) {
            let cont = content(&sym);
            let prim: Vec<BigInt> = sym.iter().map(|x| x / &cont).collect();
            if div_exact(&pa, &prim).is_some() && div_exact(&pb, &prim).is_some() {
                return normalize_sign(prim.into_iter().map(|x| x * &c).collect());
            }
        }
        last_candidate = Some(sym);
    }
    unreachable!("prime supply exhausted")
}

fn big_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|x| big_mod(x, p)).collect();
    trim_mod(&mut v);
    v
}

fn trim_mod(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Monic gcd over `F_p`. Inputs are trimmed and nonzero (leading coefficient
/// survives reduction because `p` does not divide it).
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        rem_mod(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = invmod(*a.last().unwrap(), p);
    a.iter().map(|&x| mulmod(x, inv, p)).collect()
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let inv = invmod(*b.last().unwrap(), p);
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let top = *a.last().unwrap();
        if top != 0 {
            let f = mulmod(top, inv, p);
            let off = a.len() - b.len();
            for (j, &y) in b.iter().enumerate() {
                let s = mulmod(f, y, p);
                a[off + j] = (a[off + j] + p - s) % p;
            }
        }
        a.pop();
        if a.is_empty() {
            a.push(0);
            break;
        }
    }
    trim_mod(a);
}

/// Descending iterator over primes below a bound.
struct Primes {
    next: u64,
}

impl Primes {
    fn below(bound: u64) -> Self {
        Primes { next: bound - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            let n = self.next;
            self.next -= 1;
            if is_prime(n) {
                return Some(n);
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
