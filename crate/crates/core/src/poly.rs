//! Dense univariate polynomials in `t` over `F_q`.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf::{Fq, Gf};

/// Coefficients low degree first, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly(Vec<Fq>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn one() -> Poly {
        Poly(vec![Fq::ONE])
    }

    pub fn constant(c: Fq) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Poly {
        let mut c = vec![Fq::ZERO; k + 1];
        c[k] = Fq::ONE;
        Poly(c)
    }

    pub fn from_coeffs(mut c: Vec<Fq>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0] == Fq::ONE
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<Fq> {
        self.0.last().copied()
    }

    pub fn coeff(&self, i: usize) -> Fq {
        self.0.get(i).copied().unwrap_or(Fq::ZERO)
    }

    /// Order of vanishing at `t = 0`; `None` for zero.
    pub fn t_order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Multiply by `t^k`.
    pub fn shl(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Fq::ZERO; k];
        c.extend_from_slice(&self.0);
        Poly(c)
    }

    /// Divide by `t^k`; the low `k` coefficients must vanish.
    pub fn shr(&self, k: usize) -> Poly {
        debug_assert!(self.0.iter().take(k).all(|c| c.is_zero()));
        Poly(self.0.iter().skip(k).copied().collect())
    }

    pub fn add(&self, gf: &Gf, other: &Poly) -> Poly {
        let (long, short) = if self.0.len() >= other.0.len() { (self, other) } else { (other, self) };
        let mut c = long.0.clone();
        for (slot, &b) in c.iter_mut().zip(&short.0) {
            *slot = gf.add(*slot, b);
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self, gf: &Gf) -> Poly {
        Poly(self.0.iter().map(|&a| gf.neg(a)).collect())
    }

    pub fn sub(&self, gf: &Gf, other: &Poly) -> Poly {
        let mut c = self.0.clone();
        if c.len() < other.0.len() {
            c.resize(other.0.len(), Fq::ZERO);
        }
        for (slot, &b) in c.iter_mut().zip(&other.0) {
            *slot = gf.sub(*slot, b);
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, gf: &Gf, s: Fq) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly(self.0.iter().map(|&a| gf.mul(a, s)).collect())
    }

    pub fn mul(&self, gf: &Gf, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut c = vec![Fq::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                c[i + j] = gf.add(c[i + j], gf.mul(a, b));
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, gf: &Gf, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        if d.is_one() {
            return (self.clone(), Poly::zero());
        }
        let lead_inv = gf.inv(d.0[dd]).expect("nonzero lead");
        let mut r = self.0.clone();
        let mut qc = vec![Fq::ZERO; sd - dd + 1];
        for k in (dd..=sd).rev() {
            let c = r[k];
            if c.is_zero() {
                continue;
            }
            let f = gf.mul(c, lead_inv);
            qc[k - dd] = f;
            for (i, &di) in d.0.iter().enumerate() {
                r[k - dd + i] = gf.sub(r[k - dd + i], gf.mul(f, di));
            }
        }
        r.truncate(dd);
        (Poly::from_coeffs(qc), Poly::from_coeffs(r))
    }

    /// Exact quotient; the remainder must be zero.
    pub fn div_exact(&self, gf: &Gf, d: &Poly) -> Poly {
        let (q, r) = self.divrem(gf, d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn make_monic(&self, gf: &Gf) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l == Fq::ONE => self.clone(),
            Some(l) => self.scale(gf, gf.inv(l).expect("nonzero lead")),
        }
    }

    /// Monic gcd (zero iff both inputs are zero).
    pub fn gcd(&self, gf: &Gf, other: &Poly) -> Poly {
        if self.is_one() || other.is_one() {
            return Poly::one();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(gf, &b);
            a = b;
            b = r;
        }
        a.make_monic(gf)
    }

    pub fn eval(&self, gf: &Gf, x: Fq) -> Fq {
        self.0.iter().rev().fold(Fq::ZERO, |acc, &c| gf.add(gf.mul(acc, x), c))
    }

    /// Apply `a -> a^(p^k)` to every coefficient.
    pub fn frobenius(&self, gf: &Gf, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        Poly(self.0.iter().map(|&a| gf.frobenius(k, a)).collect())
    }

    pub fn in_prime_field(&self, gf: &Gf) -> bool {
        self.0.iter().all(|&a| gf.in_prime_field(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Gf {
        Gf::new(3, &[1, 0, 1]).unwrap()
    }

    fn p(c: &[u8]) -> Poly {
        Poly::from_coeffs(c.iter().map(|&x| Fq(x)).collect())
    }

    #[test]
    fn divrem_reconstructs() {
        let gf = f3();
        let a = p(&[1, 2, 0, 1, 5]);
        let d = p(&[2, 1, 4]);
        let (q, r) = a.divrem(&gf, &d);
        assert!(r.degree().is_none_or(|x| x < 2));
        assert_eq!(q.mul(&gf, &d).add(&gf, &r), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let gf = f3();
        let f = p(&[1, 1]);
        let a = f.mul(&gf, &p(&[2, 0, 1]));
        let b = f.mul(&gf, &p(&[0, 1]));
        assert_eq!(a.gcd(&gf, &b), f);
    }

    #[test]
    fn t_order_counts_low_zeros() {
        assert_eq!(p(&[0, 0, 1]).t_order(), Some(2));
        assert_eq!(Poly::zero().t_order(), None);
    }
}
