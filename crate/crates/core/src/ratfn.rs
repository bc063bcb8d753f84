//! The function field `L = F_q(t)` with its t-adic valuation and Frobenius.
//!
//! Elements are kept reduced: `gcd(num, den) = 1` and `den` monic, so equality
//! is structural. `K = F_p(t)` is the subset with all coefficients in `F_p`.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;
use crate::gf::{Fq, Gf};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFn {
        RatFn { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// t-adic valuation, `None` standing for `+inf` at zero.
    pub fn valuation(&self) -> Option<i64> {
        let on = self.num.t_order()? as i64;
        let od = self.den.t_order().expect("nonzero denominator") as i64;
        Some(on - od)
    }

    /// Nonnegative valuation (zero counts as integral).
    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }
}

/// `gcd` with a fast path for monomials `t^k`, the common case here.
fn gcd(gf: &Gf, a: &Poly, b: &Poly) -> Poly {
    fn monomial_degree(p: &Poly) -> Option<usize> {
        let d = p.degree()?;
        (p.t_order() == Some(d) && p.lead() == Some(Fq::ONE)).then_some(d)
    }
    if a.is_one() || b.is_one() {
        return Poly::one();
    }
    if let Some(k) = monomial_degree(b) {
        return match a.t_order() {
            None => b.clone(),
            Some(o) => Poly::monomial(o.min(k)),
        };
    }
    if let Some(k) = monomial_degree(a) {
        return match b.t_order() {
            None => a.clone(),
            Some(o) => Poly::monomial(o.min(k)),
        };
    }
    a.gcd(gf, b)
}

/// Context for `L = F_q(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FnField {
    gf: Gf,
}

impl FnField {
    pub fn new(gf: Gf) -> FnField {
        FnField { gf }
    }

    pub fn gf(&self) -> &Gf {
        &self.gf
    }

    /// Reduces `num/den`; `None` if `den` is zero.
    pub fn fraction(&self, num: Poly, den: Poly) -> Option<RatFn> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(RatFn::zero());
        }
        let g = gcd(&self.gf, &num, &den);
        let (num, den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&self.gf, &g), den.div_exact(&self.gf, &g)) };
        let lead = den.lead().expect("nonzero");
        if lead == Fq::ONE {
            Some(RatFn { num, den })
        } else {
            let li = self.gf.inv(lead).expect("nonzero");
            Some(RatFn { num: num.scale(&self.gf, li), den: den.scale(&self.gf, li) })
        }
    }

    pub fn constant(&self, c: Fq) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn from_int(&self, v: i64) -> RatFn {
        self.constant(self.gf.from_int(v))
    }

    pub fn t(&self) -> RatFn {
        RatFn::from_poly(Poly::monomial(1))
    }

    /// `t^k` for any integer `k`.
    pub fn t_pow(&self, k: i64) -> RatFn {
        if k >= 0 {
            RatFn::from_poly(Poly::monomial(k as usize))
        } else {
            RatFn { num: Poly::one(), den: Poly::monomial((-k) as usize) }
        }
    }

    /// Multiply by `t^k` without a general product.
    pub fn shift(&self, x: &RatFn, k: i64) -> RatFn {
        if x.is_zero() || k == 0 {
            return x.clone();
        }
        if k > 0 {
            self.fraction(x.num.shl(k as usize), x.den.clone()).expect("nonzero den")
        } else {
            self.fraction(x.num.clone(), x.den.shl((-k) as usize)).expect("nonzero den")
        }
    }

    /// Coefficientwise `a -> a^(p^k)`; fixes `t` and preserves reducedness.
    pub fn frobenius(&self, k: u32, x: &RatFn) -> RatFn {
        if k.is_multiple_of(self.gf.degree()) {
            return x.clone();
        }
        RatFn { num: x.num.frobenius(&self.gf, k), den: x.den.frobenius(&self.gf, k) }
    }

    /// Whether `x` lies in `K = F_p(t)`.
    pub fn in_base(&self, x: &RatFn) -> bool {
        x.num.in_prime_field(&self.gf) && x.den.in_prime_field(&self.gf)
    }

    /// Value at `t = a`, or `None` if the denominator vanishes there.
    pub fn eval(&self, x: &RatFn, a: Fq) -> Option<Fq> {
        let d = x.den.eval(&self.gf, a);
        let di = self.gf.inv(d)?;
        Some(self.gf.mul(x.num.eval(&self.gf, a), di))
    }

    /// Image in the residue field `O_L / t O_L`; `None` if `x` is not integral.
    pub fn reduce(&self, x: &RatFn) -> Option<Fq> {
        match x.valuation() {
            None => Some(Fq::ZERO),
            Some(v) if v > 0 => Some(Fq::ZERO),
            Some(0) => self.eval(x, Fq::ZERO),
            Some(_) => None,
        }
    }

    /// The part of the Laurent expansion of `x` with exponents below `bound`.
    /// `x - truncate(x, bound)` has valuation at least `bound`.
    pub fn truncate(&self, x: &RatFn, bound: i64) -> RatFn {
        let Some(v) = x.valuation() else {
            return RatFn::zero();
        };
        if v >= bound {
            return RatFn::zero();
        }
        let gf = &self.gf;
        let u = x.num.shr(x.num.t_order().unwrap());
        let w = x.den.shr(x.den.t_order().unwrap());
        let w0_inv = gf.inv(w.coeff(0)).expect("unit");
        let terms = (bound - v) as usize;
        let mut c: Vec<Fq> = Vec::with_capacity(terms);
        for i in 0..terms {
            let mut acc = u.coeff(i);
            for j in 1..=i.min(w.degree().unwrap_or(0)) {
                acc = gf.sub(acc, gf.mul(w.coeff(j), c[i - j]));
            }
            c.push(gf.mul(acc, w0_inv));
        }
        self.shift(&RatFn::from_poly(Poly::from_coeffs(c)), v)
    }

    /// Coordinates of `x` over `K` in the power basis `1, x, ..., x^{n-1}` of `F_q/F_p`.
    pub fn base_coords(&self, x: &RatFn) -> Vec<RatFn> {
        let n = self.gf.degree() as usize;
        if x.is_zero() {
            return vec![RatFn::zero(); n];
        }
        let (num, den) = if x.den.in_prime_field(&self.gf) {
            (x.num.clone(), x.den.clone())
        } else {
            // multiply through by the Galois conjugates of the denominator
            let mut num = x.num.clone();
            let mut den = x.den.clone();
            for k in 1..n as u32 {
                let conj = x.den.frobenius(&self.gf, k);
                num = num.mul(&self.gf, &conj);
                den = den.mul(&self.gf, &conj);
            }
            debug_assert!(den.in_prime_field(&self.gf));
            (num, den)
        };
        let mut parts: Vec<Vec<Fq>> = vec![vec![Fq::ZERO; num.coeffs().len()]; n];
        for (i, &c) in num.coeffs().iter().enumerate() {
            for (j, d) in self.gf.coords(c).into_iter().enumerate() {
                parts[j][i] = Fq(d as u8);
            }
        }
        parts.into_iter().map(|cs| self.fraction(Poly::from_coeffs(cs), den.clone()).expect("nonzero den")).collect()
    }

    /// Inverse of [`FnField::base_coords`].
    pub fn from_base_coords(&self, coords: &[RatFn]) -> RatFn {
        coords.iter().enumerate().fold(RatFn::zero(), |acc, (k, y)| {
            if y.is_zero() {
                acc
            } else {
                self.add(&acc, &self.mul(&self.constant(self.gf.basis_element(k)), y))
            }
        })
    }

    pub fn pow(&self, x: &RatFn, e: i64) -> Option<RatFn> {
        let (mut base, mut e) = if e < 0 { (self.inv(x)?, -e) } else { (x.clone(), e) };
        let mut acc = RatFn::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Some(acc)
    }
}

impl Field for FnField {
    type Elem = RatFn;

    fn zero(&self) -> RatFn {
        RatFn::zero()
    }

    fn one(&self) -> RatFn {
        RatFn::one()
    }

    fn is_zero(&self, a: &RatFn) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let gf = &self.gf;
        if a.den == b.den {
            return self.fraction(a.num.add(gf, &b.num), a.den.clone()).expect("nonzero");
        }
        let num = a.num.mul(gf, &b.den).add(gf, &b.num.mul(gf, &a.den));
        self.fraction(num, a.den.mul(gf, &b.den)).expect("nonzero")
    }

    fn sub(&self, a: &RatFn, b: &RatFn) -> RatFn {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFn, b: &RatFn) -> RatFn {
        if a.is_zero() || b.is_zero() {
            return RatFn::zero();
        }
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        let gf = &self.gf;
        // cross-cancel so the result is already reduced
        let g1 = gcd(gf, &a.num, &b.den);
        let g2 = gcd(gf, &b.num, &a.den);
        let an = if g1.is_one() { a.num.clone() } else { a.num.div_exact(gf, &g1) };
        let bd = if g1.is_one() { b.den.clone() } else { b.den.div_exact(gf, &g1) };
        let bn = if g2.is_one() { b.num.clone() } else { b.num.div_exact(gf, &g2) };
        let ad = if g2.is_one() { a.den.clone() } else { a.den.div_exact(gf, &g2) };
        let num = an.mul(gf, &bn);
        let den = ad.mul(gf, &bd);
        let lead = den.lead().expect("nonzero");
        if lead == Fq::ONE {
            RatFn { num, den }
        } else {
            let li = gf.inv(lead).expect("nonzero");
            RatFn { num: num.scale(gf, li), den: den.scale(gf, li) }
        }
    }

    fn neg(&self, a: &RatFn) -> RatFn {
        RatFn { num: a.num.neg(&self.gf), den: a.den.clone() }
    }

    fn inv(&self, a: &RatFn) -> Option<RatFn> {
        if a.is_zero() {
            return None;
        }
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn is_one(&self, a: &RatFn) -> bool {
        a.is_one()
    }

    fn weight(&self, a: &RatFn) -> usize {
        a.num.coeffs().len() + a.den.coeffs().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l9() -> FnField {
        FnField::new(Gf::new(3, &[1, 0, 1]).unwrap())
    }

    #[test]
    fn valuation_of_quotient() {
        let l = l9();
        // (t^2 + t) / t^3
        let num = Poly::from_coeffs(vec![Fq(0), Fq(1), Fq(1)]);
        let x = l.fraction(num, Poly::monomial(3)).unwrap();
        assert_eq!(x.valuation(), Some(-2));
        assert_eq!(RatFn::zero().valuation(), None);
        assert_eq!(l.t().valuation(), Some(1));
    }

    #[test]
    fn reduced_form_is_canonical() {
        let l = l9();
        let a = l.fraction(Poly::from_coeffs(vec![Fq(2), Fq(2)]), Poly::from_coeffs(vec![Fq(1), Fq(1)]));
        assert_eq!(a, Some(l.from_int(2)));
        let b = l.fraction(Poly::one(), Poly::from_coeffs(vec![Fq(0), Fq(2)])).unwrap();
        assert_eq!(b.den(), &Poly::monomial(1));
        assert_eq!(b.num(), &Poly::constant(Fq(2)));
    }

    #[test]
    fn truncation_leaves_high_valuation_remainder() {
        let l = l9();
        // 1/(1 - t) = 1 + t + t^2 + ...
        let x = l.inv(&l.sub(&RatFn::one(), &l.t())).unwrap();
        let r = l.truncate(&x, 3);
        assert_eq!(r, RatFn::from_poly(Poly::from_coeffs(vec![Fq(1), Fq(1), Fq(1)])));
        assert_eq!(l.sub(&x, &r).valuation(), Some(3));
        let y = l.mul(&x, &l.t_pow(-2));
        let ry = l.truncate(&y, 0);
        assert_eq!(l.sub(&y, &ry).valuation(), Some(0));
    }

    #[test]
    fn base_coords_round_trip() {
        let l = l9();
        let gf = l.gf().clone();
        let xb = gf.generator();
        let den = Poly::from_coeffs(vec![xb, Fq(1)]);
        let x = l.fraction(Poly::from_coeffs(vec![Fq(1), xb, Fq(2)]), den).unwrap();
        let c = l.base_coords(&x);
        assert!(c.iter().all(|y| l.in_base(y)));
        assert_eq!(l.from_base_coords(&c), x);
    }
}
