//! The unramified tower `L = F_{p^n}(t) / K = F_p(t)` with cyclic Galois group
//! generated by the coefficientwise Frobenius.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf::{Gf, MAX_FIELD_SIZE};
use crate::linalg::Matrix;
use crate::ratfn::{FnField, RatFn};

/// `frobenius^exp`, with `exp` taken modulo the degree of the tower.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GaloisElement {
    pub exp: u32,
}

impl GaloisElement {
    pub const IDENTITY: GaloisElement = GaloisElement { exp: 0 };

    pub fn new(exp: u32) -> Self {
        GaloisElement { exp }
    }

    pub fn index(self) -> usize {
        self.exp as usize
    }
}

struct Inner {
    p: u32,
    n: u32,
    l: FnField,
}

/// Field data for the concrete tower. Cheap to clone.
#[derive(Clone)]
pub struct Tower(Arc<Inner>);

impl core::fmt::Debug for Tower {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Tower(p={}, n={}, f={:?})", self.0.p, self.0.n, self.modulus())
    }
}

impl PartialEq for Tower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.l == other.0.l
    }
}

impl Eq for Tower {}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Remainder of `a` modulo monic `m` over `F_p`, coefficients low degree first.
fn rem_mod_p(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c == 0 {
            continue;
        }
        let base = r.len() - dm;
        for i in 0..dm {
            r[base + i] = (r[base + i] + p - c * m[i] % p) % p;
        }
    }
    r
}

/// Monic polynomials of degree `d` over `F_p`, in increasing order of
/// `sum_i c_i p^i` (high-degree coefficients most significant).
fn monic_polys(p: u32, d: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |mut k| {
        let mut c = vec![0u32; d as usize + 1];
        for slot in c.iter_mut().take(d as usize) {
            *slot = (k % p as u64) as u32;
            k /= p as u64;
        }
        c[d as usize] = 1;
        c
    })
}

pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() as u32 - 1;
    if n <= 1 {
        return n == 1;
    }
    (1..=n / 2).all(|d| monic_polys(p, d).all(|g| rem_mod_p(f, &g, p).iter().any(|&c| c != 0)))
}

/// Smallest monic irreducible of degree `n` over `F_p` in the order of [`monic_polys`].
pub fn smallest_irreducible(p: u32, n: u32) -> Option<Vec<u32>> {
    monic_polys(p, n).find(|f| is_irreducible(f, p))
}

impl Tower {
    /// The tower for `(p, n)` with the deterministic defining polynomial.
    pub fn new(p: u32, n: u32) -> Result<Tower> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        check_size(p, n)?;
        let f = smallest_irreducible(p, n).ok_or(Error::BadModulus)?;
        Tower::with_modulus(p, &f)
    }

    /// The tower with an explicitly chosen defining polynomial (low degree first).
    pub fn with_modulus(p: u32, f: &[u32]) -> Result<Tower> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = f.len().checked_sub(1).ok_or(Error::BadModulus)? as u32;
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        check_size(p, n)?;
        if f[n as usize] != 1 || f.iter().any(|&c| c >= p) || !is_irreducible(f, p) {
            return Err(Error::BadModulus);
        }
        let gf = Gf::new(p, f)?;
        // Frobenius must have exact order n: it moves the generator for 0 < k < n
        let x = gf.generator();
        if (1..n).any(|k| gf.frobenius(k, x) == x) {
            return Err(Error::BadModulus);
        }
        Ok(Tower(Arc::new(Inner { p, n, l: FnField::new(gf) })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Degree `[L:K]`, which is also the order of the Galois group.
    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn modulus(&self) -> &[u32] {
        self.0.l.gf().modulus()
    }

    pub fn gf(&self) -> &Gf {
        self.0.l.gf()
    }

    /// The function field `L`.
    pub fn l(&self) -> &FnField {
        &self.0.l
    }

    pub fn frobenius(&self) -> GaloisElement {
        GaloisElement::new(1 % self.0.n)
    }

    pub fn galois(&self) -> impl Iterator<Item = GaloisElement> {
        (0..self.0.n).map(GaloisElement::new)
    }

    pub fn compose(&self, a: GaloisElement, b: GaloisElement) -> GaloisElement {
        GaloisElement::new((a.exp + b.exp) % self.0.n)
    }

    pub fn inverse(&self, a: GaloisElement) -> GaloisElement {
        GaloisElement::new((self.0.n - a.exp % self.0.n) % self.0.n)
    }

    /// Galois action on `L`.
    pub fn act(&self, sigma: GaloisElement, x: &RatFn) -> RatFn {
        self.0.l.frobenius(sigma.exp, x)
    }

    /// Entrywise Galois action on a matrix.
    pub fn act_matrix(&self, sigma: GaloisElement, m: &Matrix<RatFn>) -> Matrix<RatFn> {
        if sigma.exp.is_multiple_of(self.0.n) {
            return m.clone();
        }
        m.map(|x| self.act(sigma, x))
    }

    /// Normalized valuation `w`, with `w(t) = 1`; `None` is `+inf`.
    pub fn valuation(&self, x: &RatFn) -> Option<i64> {
        x.valuation()
    }

    pub fn in_base(&self, x: &RatFn) -> bool {
        self.0.l.in_base(x)
    }

    pub fn zero(&self) -> RatFn {
        self.0.l.zero()
    }
}

fn check_size(p: u32, n: u32) -> Result<()> {
    match (p as usize).checked_pow(n) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        other => Err(Error::ScaleCap {
            what: "field size p^n",
            limit: MAX_FIELD_SIZE,
            requested: other.unwrap_or(usize::MAX),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn defining_polynomials() {
        assert_eq!(Tower::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Tower::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Tower::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Tower::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn argument_errors() {
        assert_eq!(Tower::new(4, 2).unwrap_err(), Error::NotPrime(4));
        assert_eq!(Tower::new(3, 0).unwrap_err(), Error::ZeroDegree);
        assert!(matches!(Tower::new(3, 6).unwrap_err(), Error::ScaleCap { .. }));
        assert_eq!(Tower::with_modulus(3, &[2, 0, 1]).unwrap_err(), Error::BadModulus);
    }

    #[test]
    fn frobenius_on_generator_of_f9() {
        let tw = Tower::new(3, 2).unwrap();
        let x = tw.l().constant(tw.gf().generator());
        let phi = tw.frobenius();
        let expected = tw.l().constant(tw.gf().neg(tw.gf().generator()));
        assert_eq!(tw.act(phi, &x), expected);
        assert_eq!(tw.act(GaloisElement::IDENTITY, &x), x);
    }

    #[test]
    fn frobenius_fixes_t_and_base() {
        let tw = Tower::new(5, 2).unwrap();
        let l = tw.l();
        let a = l
            .fraction(Poly::from_coeffs(alloc::vec![tw.gf().from_int(3), tw.gf().from_int(1)]), Poly::monomial(2))
            .unwrap();
        assert!(tw.in_base(&a));
        assert_eq!(tw.act(tw.frobenius(), &a), a);
    }
}
