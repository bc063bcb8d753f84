//! PGL_n-valued 1-cocycles with chosen GL_n lifts, L^x-valued 2-cocycles,
//! the coboundary between them and the residue map computed two ways.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::ratfn::RatFn;
use crate::tower::{GaloisElement, Tower};

pub type LMatrix = Matrix<RatFn>;

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// An element of `H^1(Gamma, Q/Z) = Hom(Gamma, Q/Z)` for cyclic `Gamma`, stored as
/// its value at the Frobenius generator: the reduced fraction `num/den` with
/// `0 <= num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ResidueClass {
    num: u32,
    den: u32,
}

impl ResidueClass {
    pub const ZERO: ResidueClass = ResidueClass { num: 0, den: 1 };

    /// The class of `num/den` modulo 1. `den` must be nonzero.
    pub fn from_fraction(num: i64, den: i64) -> ResidueClass {
        assert!(den != 0, "zero denominator");
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        let r = num.rem_euclid(den);
        let g = gcd_u64(r as u64, den as u64).max(1);
        ResidueClass { num: (r as u64 / g) as u32, den: (den as u64 / g) as u32 }
    }

    pub fn num(&self) -> u32 {
        self.num
    }

    pub fn den(&self) -> u32 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Value of the homomorphism at `frobenius^k`.
    pub fn value_at(&self, k: u32) -> ResidueClass {
        ResidueClass::from_fraction(self.num as i64 * k as i64, self.den as i64)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A 2-cocycle `Gamma x Gamma -> L^x`, entries indexed by `(sigma, tau)` exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    tower: Tower,
    entries: Vec<RatFn>,
}

impl TwoCocycle {
    /// Validates nonvanishing and `sigma(d[tau,gamma]) d[sigma,tau gamma] = d[sigma,tau] d[sigma tau,gamma]`.
    pub fn new(tower: &Tower, entries: Vec<RatFn>) -> Result<TwoCocycle> {
        let n = tower.n() as usize;
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, got: entries.len() });
        }
        if let Some(i) = entries.iter().position(|e| e.is_zero()) {
            return Err(Error::ZeroEntry { sigma: (i / n) as u32, tau: (i % n) as u32 });
        }
        let d = TwoCocycle { tower: tower.clone(), entries };
        if let Some([s, t, g]) = d.first_failing_triple() {
            return Err(Error::CocycleIdentity { sigma: s, tau: t, gamma: g });
        }
        Ok(d)
    }

    fn first_failing_triple(&self) -> Option<[u32; 3]> {
        let tw = &self.tower;
        let l = tw.l();
        for s in tw.galois() {
            for t in tw.galois() {
                for g in tw.galois() {
                    let lhs = l.mul(&tw.act(s, self.entry(t, g)), self.entry(s, tw.compose(t, g)));
                    let rhs = l.mul(self.entry(s, t), self.entry(tw.compose(s, t), g));
                    if lhs != rhs {
                        return Some([s.exp, t.exp, g.exp]);
                    }
                }
            }
        }
        None
    }

    /// The constant cocycle 1.
    pub fn trivial(tower: &Tower) -> TwoCocycle {
        let n = tower.n() as usize;
        TwoCocycle { tower: tower.clone(), entries: alloc::vec![RatFn::one(); n * n] }
    }

    /// The coboundary `lambda_sigma * sigma(lambda_tau) / lambda_{sigma tau}` of nonzero scalars.
    pub fn coboundary_of(tower: &Tower, lambda: &[RatFn]) -> Result<TwoCocycle> {
        let n = tower.n() as usize;
        if lambda.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: lambda.len() });
        }
        let l = tower.l();
        let mut entries = Vec::with_capacity(n * n);
        for s in tower.galois() {
            for t in tower.galois() {
                let st = tower.compose(s, t);
                let inv = l.inv(&lambda[st.index()]).ok_or(Error::ZeroElement)?;
                let v = l.mul(&l.mul(&lambda[s.index()], &tower.act(s, &lambda[t.index()])), &inv);
                entries.push(v);
            }
        }
        Ok(TwoCocycle { tower: tower.clone(), entries })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn entry(&self, sigma: GaloisElement, tau: GaloisElement) -> &RatFn {
        &self.entries[sigma.index() * self.tower.n() as usize + tau.index()]
    }

    pub fn entries(&self) -> &[RatFn] {
        &self.entries
    }

    /// Entrywise inverse (`a = d^{-1}`).
    pub fn inverse(&self) -> TwoCocycle {
        let l = self.tower.l();
        TwoCocycle {
            tower: self.tower.clone(),
            entries: self.entries.iter().map(|e| l.inv(e).expect("nonzero entry")).collect(),
        }
    }

    /// Entrywise product; a valid 2-cocycle since `L^x` is abelian.
    pub fn mul(&self, other: &TwoCocycle) -> TwoCocycle {
        let l = self.tower.l();
        TwoCocycle {
            tower: self.tower.clone(),
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| l.mul(a, b)).collect(),
        }
    }

    /// `u_sigma = sum_tau w(a[sigma, tau])`. The rational lift of the residue is
    /// `u_sigma / n`, which solves `b_s + b_t - b_st = w(a[s,t])`.
    pub fn residue_lift_numerators(&self) -> Vec<i64> {
        let tw = &self.tower;
        tw.galois().map(|s| tw.galois().map(|t| self.entry(s, t).valuation().expect("nonzero entry")).sum()).collect()
    }

    /// Residue map `H^2(L/K, L^x) -> H^1(L/K, Q/Z)` applied to this cocycle.
    pub fn residue(&self) -> ResidueClass {
        let u = self.residue_lift_numerators();
        let phi = self.tower.frobenius();
        ResidueClass::from_fraction(u[phi.index()], self.tower.n() as i64)
    }

    /// Checks that the averaged lift satisfies `b_s + b_t - b_st = w(a[s,t])` exactly.
    pub fn verify_residue_lift(&self) -> Result<()> {
        let tw = &self.tower;
        let n = tw.n() as i64;
        let u = self.residue_lift_numerators();
        for s in tw.galois() {
            for t in tw.galois() {
                let st = tw.compose(s, t);
                let w = self.entry(s, t).valuation().expect("nonzero entry");
                if u[s.index()] + u[t.index()] - u[st.index()] != n * w {
                    return Err(Error::IdentityFailure { identity: "residue lift", indices: [s.exp, t.exp, 0] });
                }
            }
        }
        Ok(())
    }
}

/// A cocycle `Gamma -> PGL_m(L)` given by chosen lifts `c_sigma` in `GL_m(L)`.
///
/// Lifts are kept exactly as supplied; nothing is renormalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCocycle {
    tower: Tower,
    size: usize,
    lifts: Vec<LMatrix>,
    /// `d[sigma, tau]` read off while validating.
    defect: Vec<RatFn>,
}

impl OneCocycle {
    /// Accepts iff every lift is invertible and every `c_s s(c_t) c_{st}^{-1}` is scalar.
    pub fn new(tower: &Tower, lifts: Vec<LMatrix>) -> Result<OneCocycle> {
        let n = tower.n() as usize;
        if lifts.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: lifts.len() });
        }
        let size = lifts[0].rows();
        for m in &lifts {
            if !m.is_square() {
                return Err(Error::DimensionMismatch { expected: m.rows(), got: m.cols() });
            }
            if m.rows() != size {
                return Err(Error::DimensionMismatch { expected: size, got: m.rows() });
            }
        }
        if size == 0 {
            return Err(Error::DimensionMismatch { expected: 1, got: 0 });
        }
        let l = tower.l();
        let mut inverses = Vec::with_capacity(n);
        for (s, m) in lifts.iter().enumerate() {
            inverses.push(linalg::inverse(l, m).ok_or(Error::SingularLift { sigma: s as u32 })?);
        }
        let mut defect = Vec::with_capacity(n * n);
        for s in tower.galois() {
            for t in tower.galois() {
                let st = tower.compose(s, t);
                let prod = linalg::mul(l, &lifts[s.index()], &tower.act_matrix(s, &lifts[t.index()]));
                let prod = linalg::mul(l, &prod, &inverses[st.index()]);
                let d = linalg::as_scalar(l, &prod).ok_or(Error::NonScalarDefect { sigma: s.exp, tau: t.exp })?;
                defect.push(d);
            }
        }
        Ok(OneCocycle { tower: tower.clone(), size, lifts, defect })
    }

    /// All lifts equal to the identity of `GL_size`.
    pub fn trivial(tower: &Tower, size: usize) -> OneCocycle {
        let id = linalg::identity(tower.l(), size);
        OneCocycle::new(tower, alloc::vec![id; tower.n() as usize]).expect("trivial cocycle")
    }

    /// The cyclic-algebra cocycle: `c_{phi^k} = T_a^k` where `T_a e_i = e_{i+1}`
    /// for `i < n` and `T_a e_n = a e_1`. Requires `a` in `K^x`.
    pub fn symbol(tower: &Tower, a: &RatFn) -> Result<OneCocycle> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        if !tower.in_base(a) {
            return Err(Error::NotInBaseField);
        }
        let l = tower.l();
        let n = tower.n() as usize;
        let shift = Matrix::from_fn(n, n, |i, j| {
            if j + 1 == n && i == 0 {
                a.clone()
            } else if i == j + 1 {
                l.one()
            } else {
                l.zero()
            }
        });
        let mut lifts = Vec::with_capacity(n);
        let mut cur = linalg::identity(l, n);
        for _ in 0..n {
            lifts.push(cur.clone());
            cur = linalg::mul(l, &cur, &shift);
        }
        OneCocycle::new(tower, lifts)
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    /// Matrix size `m` of the lifts.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn lifts(&self) -> &[LMatrix] {
        &self.lifts
    }

    pub fn lift(&self, sigma: GaloisElement) -> &LMatrix {
        &self.lifts[sigma.index()]
    }

    /// Coboundary `Delta(c)`: `d[s,t] I = c_s s(c_t) c_{st}^{-1}`.
    pub fn coboundary(&self) -> TwoCocycle {
        TwoCocycle { tower: self.tower.clone(), entries: self.defect.clone() }
    }

    /// `w(det c_sigma)` for every sigma.
    pub fn det_valuations(&self) -> Vec<i64> {
        let l = self.tower.l();
        self.lifts.iter().map(|m| linalg::det(l, m).valuation().expect("invertible lift")).collect()
    }

    /// Closed-form residue `b_sigma = -w(det c_sigma)/m mod Z`, checked to be a
    /// homomorphism on all pairs before the value at Frobenius is returned.
    pub fn residue_theorem1(&self) -> Result<ResidueClass> {
        let tw = &self.tower;
        let m = self.size as i64;
        let w = self.det_valuations();
        for s in tw.galois() {
            for t in tw.galois() {
                let st = tw.compose(s, t);
                if (w[s.index()] + w[t.index()] - w[st.index()]).rem_euclid(m) != 0 {
                    return Err(Error::IdentityFailure {
                        identity: "residue homomorphism",
                        indices: [s.exp, t.exp, 0],
                    });
                }
            }
        }
        Ok(ResidueClass::from_fraction(-w[tw.frobenius().index()], m))
    }

    /// Reference route: residue of the factor set `a = Delta(c)^{-1}`.
    pub fn residue_reference(&self) -> ResidueClass {
        self.coboundary().inverse().residue()
    }

    pub fn is_unramified(&self) -> Result<bool> {
        Ok(self.residue_theorem1()?.is_zero())
    }

    /// The cohomologous cocycle with lifts `g^{-1} c_sigma sigma(g)`.
    pub fn conjugate(&self, g: &LMatrix) -> Result<OneCocycle> {
        if !g.is_square() || g.rows() != self.size {
            return Err(Error::DimensionMismatch { expected: self.size, got: g.rows() });
        }
        let l = self.tower.l();
        let gi = linalg::inverse(l, g).ok_or(Error::SingularMatrix)?;
        let lifts = self
            .tower
            .galois()
            .map(|s| {
                let m = linalg::mul(l, &gi, &self.lifts[s.index()]);
                linalg::mul(l, &m, &self.tower.act_matrix(s, g))
            })
            .collect();
        OneCocycle::new(&self.tower, lifts)
    }

    /// Same projective cocycle with lifts `lambda_sigma c_sigma`.
    pub fn rescale(&self, lambda: &[RatFn]) -> Result<OneCocycle> {
        if lambda.len() != self.lifts.len() {
            return Err(Error::DimensionMismatch { expected: self.lifts.len(), got: lambda.len() });
        }
        if lambda.iter().any(|x| x.is_zero()) {
            return Err(Error::ZeroElement);
        }
        let l = self.tower.l();
        let lifts = self.lifts.iter().zip(lambda).map(|(m, s)| linalg::scale(l, s, m)).collect();
        OneCocycle::new(&self.tower, lifts)
    }

    /// Whether every lift is a scalar multiple of an element of `GL_m(O_L)`.
    pub fn has_integral_lifts(&self) -> bool {
        let w = self.det_valuations();
        self.lifts.iter().zip(w).all(|(m, wd)| {
            let min = min_entry_valuation(m).expect("invertible lift");
            wd == self.size as i64 * min
        })
    }
}

/// Smallest valuation among the entries; `None` for the zero matrix.
pub fn min_entry_valuation(m: &LMatrix) -> Option<i64> {
    m.data().iter().filter_map(|x| x.valuation()).min()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Fq;
    use crate::poly::Poly;
    use alloc::string::ToString;

    fn t3() -> Tower {
        Tower::new(3, 2).unwrap()
    }

    fn mat(tw: &Tower, rows: &[&[RatFn]]) -> LMatrix {
        let _ = tw;
        Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn residue_class_reduction() {
        assert_eq!(ResidueClass::from_fraction(-1, 2), ResidueClass::from_fraction(1, 2));
        assert_eq!(ResidueClass::from_fraction(-1, 3).to_string(), "2/3");
        assert_eq!(ResidueClass::from_fraction(-2, 2), ResidueClass::ZERO);
        assert_eq!(ResidueClass::from_fraction(4, -6).to_string(), "1/3");
    }

    #[test]
    fn symbol_cocycle_accepts_and_has_expected_defect() {
        let tw = t3();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.t()).unwrap();
        let phi = tw.frobenius();
        let id = GaloisElement::IDENTITY;
        let d = c.coboundary();
        assert_eq!(d.entry(phi, phi), &l.t());
        assert!(d.entry(id, phi).is_one() && d.entry(phi, id).is_one() && d.entry(id, id).is_one());
    }

    #[test]
    fn non_scalar_defect_is_reported_at_phi_phi() {
        let tw = t3();
        let l = tw.l();
        let id = linalg::identity(l, 2);
        let bad = mat(&tw, &[&[l.one(), l.zero()], &[l.zero(), l.t()]]);
        assert_eq!(
            OneCocycle::new(&tw, alloc::vec![id, bad]).unwrap_err(),
            Error::NonScalarDefect { sigma: 1, tau: 1 }
        );
    }

    #[test]
    fn singular_lift_rejected() {
        let tw = t3();
        let l = tw.l();
        let z = Matrix::from_fn(2, 2, |_, _| l.zero());
        let id = linalg::identity(l, 2);
        assert_eq!(OneCocycle::new(&tw, alloc::vec![id, z]).unwrap_err(), Error::SingularLift { sigma: 1 });
    }

    #[test]
    fn rescaled_lift_defect_in_f3() {
        let tw = t3();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.t()).unwrap();
        let c2 = c.rescale(&[l.one(), l.from_int(2)]).unwrap();
        let phi = tw.frobenius();
        // (2T)(2T) = 4 t I = t I in F_3
        assert_eq!(c2.coboundary().entry(phi, phi), &l.t());
    }

    #[test]
    fn corrupted_two_cocycle_rejected() {
        let tw = t3();
        let l = tw.l();
        // with d[1, .] = d[., 1] = 1 the identity at (phi, phi, phi) reads
        // phi(d[phi,phi]) = d[phi,phi]; any entry of K passes, one outside K fails
        let t1 = l.add(&l.t(), &l.one());
        TwoCocycle::new(&tw, alloc::vec![l.one(), l.one(), l.one(), t1]).unwrap();
        let moved = l.add(&l.t(), &l.constant(tw.gf().generator()));
        let entries = alloc::vec![l.one(), l.one(), l.one(), moved];
        assert_eq!(TwoCocycle::new(&tw, entries).unwrap_err(), Error::CocycleIdentity { sigma: 1, tau: 1, gamma: 1 });
    }

    #[test]
    fn symbol_residues_both_routes() {
        let tw = t3();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.t()).unwrap();
        assert_eq!(c.residue_theorem1().unwrap(), ResidueClass::from_fraction(1, 2));
        assert_eq!(c.residue_reference(), ResidueClass::from_fraction(1, 2));
        assert!(!c.is_unramified().unwrap());
        let c2 = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        assert!(c2.is_unramified().unwrap());
        let c3 = OneCocycle::symbol(&tw, &l.t_pow(2)).unwrap();
        assert!(c3.is_unramified().unwrap());
    }

    #[test]
    fn symbol_rejects_zero_and_non_base() {
        let tw = t3();
        let l = tw.l();
        assert_eq!(OneCocycle::symbol(&tw, &RatFn::zero()).unwrap_err(), Error::ZeroElement);
        let xb = l.constant(tw.gf().generator());
        assert_eq!(OneCocycle::symbol(&tw, &xb).unwrap_err(), Error::NotInBaseField);
    }

    #[test]
    fn n3_symbol_reference_residue() {
        let tw = Tower::new(2, 3).unwrap();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.t()).unwrap();
        let d = c.coboundary();
        for i in tw.galois() {
            for j in tw.galois() {
                let expect = if i.exp + j.exp >= 3 { l.t() } else { l.one() };
                assert_eq!(d.entry(i, j), &expect);
            }
        }
        let a = d.inverse();
        assert_eq!(a.residue_lift_numerators()[1], -1);
        assert_eq!(a.residue(), ResidueClass::from_fraction(2, 3));
        a.verify_residue_lift().unwrap();
    }

    #[test]
    fn conjugation_by_diag_keeps_residue() {
        let tw = t3();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        let g = mat(&tw, &[&[l.one(), l.zero()], &[l.zero(), l.t()]]);
        let c2 = c.conjugate(&g).unwrap();
        assert!(c2.lifts()[1].data().iter().any(|x| !x.is_integral()));
        assert_eq!(c2.residue_theorem1().unwrap(), ResidueClass::ZERO);
        let gi = linalg::inverse(l, &g).unwrap();
        assert_eq!(c2.conjugate(&gi).unwrap().lifts(), c.lifts());
    }

    #[test]
    fn integral_lift_detection() {
        let tw = t3();
        let l = tw.l();
        assert!(OneCocycle::symbol(&tw, &l.from_int(2)).unwrap().has_integral_lifts());
        assert!(!OneCocycle::symbol(&tw, &l.t()).unwrap().has_integral_lifts());
        let u = l.fraction(Poly::from_coeffs(alloc::vec![Fq(1), Fq(1)]), Poly::monomial(3)).unwrap();
        let c = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap().rescale(&[u.clone(), u]).unwrap();
        assert!(c.has_integral_lifts());
    }
}
