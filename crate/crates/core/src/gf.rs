//! Table-driven arithmetic in `F_q = F_p[x]/(f)` for small `q`.
//!
//! An element is stored as the index `sum_i c_i p^i` of its coordinate vector
//! `(c_0, ..., c_{n-1})` in the power basis `1, x, ..., x^{n-1}`. The prime
//! subfield is therefore exactly the indices `0..p`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;

/// Largest supported field size; indices must fit in a byte.
pub const MAX_FIELD_SIZE: usize = 256;

/// Element of `F_q`, as an index into the context's tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub u8);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    p: u32,
    n: u32,
    q: usize,
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `frob[k][a] = a^(p^k)` for `k` in `0..n`.
    frob: Vec<Vec<u8>>,
}

/// Context for `F_q`. Cheap to clone.
#[derive(Clone)]
pub struct Gf(Arc<Tables>);

impl core::fmt::Debug for Gf {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Gf(p={}, n={}, f={:?})", self.0.p, self.0.n, self.0.modulus)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Gf {}

fn to_coords(mut idx: usize, p: u32, n: u32) -> Vec<u32> {
    let mut c = vec![0u32; n as usize];
    for slot in c.iter_mut() {
        *slot = (idx % p as usize) as u32;
        idx /= p as usize;
    }
    c
}

fn from_coords(c: &[u32], p: u32) -> usize {
    c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize)
}

/// Product of coordinate vectors modulo the monic `modulus` (length `n + 1`).
fn mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let mut prod = vec![0u32; 2 * n - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            // x^k = x^{k-n} * x^n and x^n = -sum f_i x^i
            let sub = c * modulus[i] % p;
            prod[k - n + i] = (prod[k - n + i] + p - sub) % p;
        }
    }
    prod.truncate(n);
    prod
}

impl Gf {
    /// Builds the tables for `F_p[x]/(modulus)`. The modulus is given low
    /// degree first and must be monic; irreducibility is the caller's concern
    /// but is confirmed here by checking that every nonzero element is invertible.
    pub fn new(p: u32, modulus: &[u32]) -> Result<Gf> {
        let n = modulus.len().checked_sub(1).ok_or(Error::BadModulus)? as u32;
        if n == 0 || modulus[n as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::BadModulus);
        }
        let q = (p as usize).checked_pow(n).filter(|&q| q <= MAX_FIELD_SIZE).ok_or(Error::ScaleCap {
            what: "field size p^n",
            limit: MAX_FIELD_SIZE,
            requested: (p as usize).saturating_pow(n),
        })?;
        let coords: Vec<Vec<u32>> = (0..q).map(|i| to_coords(i, p, n)).collect();
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = coords[a].iter().zip(&coords[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = from_coords(&s, p) as u8;
                mul[a * q + b] = from_coords(&mul_mod(&coords[a], &coords[b], modulus, p), p) as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            let na: Vec<u32> = coords[a].iter().map(|&x| (p - x) % p).collect();
            neg[a] = from_coords(&na, p) as u8;
            if a != 0 {
                let b = (1..q).find(|&b| mul[a * q + b] == 1).ok_or(Error::BadModulus)?;
                inv[a] = b as u8;
            }
        }
        let mut frob = Vec::with_capacity(n as usize);
        let mut cur: Vec<u8> = (0..q).map(|a| a as u8).collect();
        for _ in 0..n {
            frob.push(cur.clone());
            cur = cur
                .iter()
                .map(|&a| {
                    let mut acc = 1u8;
                    for _ in 0..p {
                        acc = mul[acc as usize * q + a as usize];
                    }
                    acc
                })
                .collect();
        }
        Ok(Gf(Arc::new(Tables { p, n, q, modulus: modulus.to_vec(), add, mul, neg, inv, frob })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.n
    }

    pub fn size(&self) -> usize {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.add[a.0 as usize * self.0.q + b.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.0.mul[a.0 as usize * self.0.q + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            None
        } else {
            Some(Fq(self.0.inv[a.0 as usize]))
        }
    }

    /// `a^(p^k)`; `k` is taken modulo the degree.
    #[inline]
    pub fn frobenius(&self, k: u32, a: Fq) -> Fq {
        Fq(self.0.frob[(k % self.0.n) as usize][a.0 as usize])
    }

    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.0.p as i64) as u8)
    }

    pub fn in_prime_field(&self, a: Fq) -> bool {
        (a.0 as u32) < self.0.p
    }

    pub fn coords(&self, a: Fq) -> Vec<u32> {
        to_coords(a.0 as usize, self.0.p, self.0.n)
    }

    /// Element with the given power-basis coordinates (each reduced mod p).
    pub fn from_coords(&self, c: &[u32]) -> Result<Fq> {
        if c.len() != self.0.n as usize {
            return Err(Error::DimensionMismatch { expected: self.0.n as usize, got: c.len() });
        }
        let reduced: Vec<u32> = c.iter().map(|&x| x % self.0.p).collect();
        Ok(Fq(from_coords(&reduced, self.0.p) as u8))
    }

    /// The `k`-th power-basis element `x^k`.
    pub fn basis_element(&self, k: usize) -> Fq {
        let mut c = vec![0u32; self.0.n as usize];
        c[k] = 1;
        Fq(from_coords(&c, self.0.p) as u8)
    }

    /// The class of `x` in `F_p[x]/(f)`.
    pub fn generator(&self) -> Fq {
        if self.0.n == 1 {
            Fq(((self.0.p - self.0.modulus[0]) % self.0.p) as u8)
        } else {
            self.basis_element(1)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.0.q).map(|i| Fq(i as u8))
    }
}

impl Field for Gf {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq::ZERO
    }
    fn one(&self) -> Fq {
        Fq::ONE
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        Gf::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        Gf::sub(self, *a, *b)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        Gf::mul(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        Gf::neg(self, *a)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        Gf::inv(self, *a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_frobenius_negates_generator() {
        // x^2 + 1 over F_3
        let gf = Gf::new(3, &[1, 0, 1]).unwrap();
        let x = gf.generator();
        assert_eq!(gf.frobenius(1, x), gf.neg(x));
        assert_eq!(gf.frobenius(2, x), x);
    }

    #[test]
    fn every_nonzero_element_has_inverse() {
        let gf = Gf::new(2, &[1, 1, 0, 1]).unwrap();
        for a in gf.elements().skip(1) {
            assert_eq!(gf.mul(a, gf.inv(a).unwrap()), Fq::ONE);
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 2 = (x+1)(x+2) over F_3
        assert_eq!(Gf::new(3, &[2, 0, 1]).unwrap_err(), Error::BadModulus);
    }

    #[test]
    fn degree_one_field_is_prime_field() {
        let gf = Gf::new(5, &[0, 1]).unwrap();
        assert_eq!(gf.size(), 5);
        assert_eq!(gf.generator(), Fq::ZERO);
        assert_eq!(gf.mul(Fq(3), Fq(4)), Fq(2));
    }
}
