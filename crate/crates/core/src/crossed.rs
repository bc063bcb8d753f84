//! Twisted forms of `M_m(K)` as fixed subalgebras of `M_m(L)`, and the explicit
//! crossed-product model attached to a 2-cocycle `d`: the monomial matrices
//! `p_sigma`, the elements `q_rho`, `r_rho = q_rho^{-1}`, the diagonal embedding
//! `phi(l) = diag(sigma(l))` and the factor set they determine.
//!
//! All matrices here act on `L^n` with basis `e_sigma` indexed by the Galois
//! group; index `i` is `frobenius^i`, so the identity is index 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Base, KSubspace, StructureConstantAlgebra};
use crate::cohomology::{LMatrix, OneCocycle, TwoCocycle};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::ratfn::RatFn;
use crate::tower::{GaloisElement, Tower};

/// Coordinates of `x` in `M_m(L)` viewed as `K^{m*m*n}`: index `(i*m + j)*n + k`
/// is the `k`-th power-basis coordinate of entry `(i, j)`.
pub fn matrix_to_base(tower: &Tower, x: &LMatrix) -> Vec<RatFn> {
    let l = tower.l();
    x.data().iter().flat_map(|e| l.base_coords(e)).collect()
}

/// Inverse of [`matrix_to_base`].
pub fn base_to_matrix(tower: &Tower, m: usize, v: &[RatFn]) -> LMatrix {
    let n = tower.n() as usize;
    let l = tower.l();
    Matrix::from_fn(m, m, |i, j| {
        let at = (i * m + j) * n;
        l.from_base_coords(&v[at..at + n])
    })
}

/// Which group elements the fixed-point equations are imposed for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointSolve {
    /// Only the Frobenius generator; enough for a cyclic group.
    Generator,
    /// Every element of the group.
    FullGroup,
}

/// A `K`-subalgebra of `M_m(L)` together with its structure constants.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub algebra: StructureConstantAlgebra,
    pub(crate) basis: Vec<LMatrix>,
    pub(crate) span: KSubspace,
}

impl MatrixAlgebra {
    pub fn basis(&self) -> &[LMatrix] {
        &self.basis
    }

    /// The `K`-span of the basis inside `K^{m*m*n}`, in canonical form.
    pub fn span(&self) -> &KSubspace {
        &self.span
    }

    /// Membership in the `K`-span.
    pub fn contains(&self, x: &LMatrix) -> bool {
        let tw = self.algebra.tower();
        self.span.contains(tw.l(), &matrix_to_base(tw, x))
    }
}

/// Structure constants of the algebra with basis `basis`, where `coords` returns
/// the coordinates of a vector of `K^{m*m*n}` in that basis (or `None` outside
/// the span). Closure under products is checked exactly.
pub(crate) fn present(
    tower: &Tower,
    base: Base,
    basis: &[LMatrix],
    coords: impl Fn(&[RatFn]) -> Option<Vec<RatFn>>,
) -> Result<StructureConstantAlgebra> {
    let l = tower.l();
    let dim = basis.len();
    let m = basis.first().map_or(0, |b| b.rows());
    let mut constants = Vec::with_capacity(dim * dim * dim);
    for bi in basis {
        for bj in basis {
            let prod = matrix_to_base(tower, &linalg::mul(l, bi, bj));
            constants.extend(coords(&prod).ok_or(Error::NotInSpan)?);
        }
    }
    let unit = coords(&matrix_to_base(tower, &linalg::identity(l, m))).ok_or(Error::NotInSpan)?;
    StructureConstantAlgebra::new(tower, base, dim, constants, unit)
}

/// `A(c) = { x in M_m(L) : c_sigma sigma(x) c_sigma^{-1} = x }` as a `K`-algebra.
pub fn twisted_algebra(c: &OneCocycle) -> Result<MatrixAlgebra> {
    twisted_algebra_with(c, FixedPointSolve::Generator)
}

pub fn twisted_algebra_with(c: &OneCocycle, solve: FixedPointSolve) -> Result<MatrixAlgebra> {
    let tw = c.tower();
    let l = tw.l();
    let gf = tw.gf();
    let n = tw.n() as usize;
    let m = c.size();
    let big = m * m * n;
    let elements: Vec<GaloisElement> = match solve {
        FixedPointSolve::Generator => vec![tw.frobenius()],
        FixedPointSolve::FullGroup => tw.galois().collect(),
    };
    let mut blocks: Vec<Vec<RatFn>> = Vec::new();
    for &sigma in &elements {
        let lift = c.lift(sigma);
        let lift_inv = linalg::inverse(l, lift).ok_or(Error::SingularMatrix)?;
        // column for basis vector beta_k E_ij: sigma(beta_k) c[:, i] c^{-1}[j, :] - beta_k E_ij
        let mut columns: Vec<Vec<RatFn>> = Vec::with_capacity(big);
        for i in 0..m {
            for j in 0..m {
                for k in 0..n {
                    let beta = l.constant(gf.basis_element(k));
                    let sb = tw.act(sigma, &beta);
                    let mut img = Matrix::from_fn(m, m, |a, b| {
                        let ca = lift.get(a, i);
                        let cb = lift_inv.get(j, b);
                        if ca.is_zero() || cb.is_zero() {
                            RatFn::zero()
                        } else {
                            l.mul(&sb, &l.mul(ca, cb))
                        }
                    });
                    let cur = img.get(i, j).clone();
                    img.set(i, j, l.sub(&cur, &beta));
                    columns.push(matrix_to_base(tw, &img));
                }
            }
        }
        for r in 0..big {
            blocks.push(columns.iter().map(|col| col[r].clone()).collect());
        }
    }
    let sys = Matrix::from_rows(blocks).expect("rectangular system");
    let kernel = linalg::kernel(l, &sys);
    if kernel.len() != m * m {
        return Err(Error::WrongDimension { expected: m * m, got: kernel.len() });
    }
    let span = KSubspace::span(l, kernel, true);
    let basis: Vec<LMatrix> = span.basis().iter().map(|v| base_to_matrix(tw, m, v)).collect();
    for x in &basis {
        for sigma in tw.galois() {
            // c sigma(x) = x c, avoiding the inverse
            let lhs = linalg::mul(l, c.lift(sigma), &tw.act_matrix(sigma, x));
            let rhs = linalg::mul(l, x, c.lift(sigma));
            if lhs != rhs {
                return Err(Error::IdentityFailure { identity: "fixed point", indices: [sigma.exp, 0, 0] });
            }
        }
    }
    let algebra = present(tw, Base::K, &basis, |v| span.coordinates(l, v))?;
    Ok(MatrixAlgebra { algebra, basis, span })
}

/// `p_sigma(e_tau) = d[sigma, tau] e_{sigma tau}`.
pub fn build_p_tilde(d: &TwoCocycle) -> Vec<LMatrix> {
    let tw = d.tower();
    let n = tw.n() as usize;
    tw.galois()
        .map(|s| {
            let mut m = Matrix::from_fn(n, n, |_, _| RatFn::zero());
            for t in tw.galois() {
                m.set(tw.compose(s, t).index(), t.index(), d.entry(s, t).clone());
            }
            m
        })
        .collect()
}

/// Index triple at which `d[s,t] x[s r, s t] = d[s,r] s(x[r,t])` fails, if any.
/// These identities say `x p_sigma = p_sigma sigma(x)` for every sigma.
pub fn membership_failure(d: &TwoCocycle, x: &LMatrix) -> Option<[u32; 3]> {
    let tw = d.tower();
    let l = tw.l();
    for s in tw.galois() {
        for r in tw.galois() {
            for t in tw.galois() {
                let lhs = l.mul(d.entry(s, t), x.get(tw.compose(s, r).index(), tw.compose(s, t).index()));
                let rhs = l.mul(d.entry(s, r), &tw.act(s, x.get(r.index(), t.index())));
                if lhs != rhs {
                    return Some([s.exp, r.exp, t.exp]);
                }
            }
        }
    }
    None
}

/// The crossed-product presentation built from a 2-cocycle `d`.
#[derive(Clone, Debug)]
pub struct CrossedProduct {
    d: TwoCocycle,
    p_tilde: Vec<LMatrix>,
    q: Vec<LMatrix>,
    r: Vec<LMatrix>,
}

/// `q_rho(e_sigma) = d[sigma, rho] e_{sigma rho}` and `r_rho = q_rho^{-1}`.
pub fn build_crossed_product(d: &TwoCocycle) -> Result<CrossedProduct> {
    let tw = d.tower();
    let l = tw.l();
    let n = tw.n() as usize;
    let q: Vec<LMatrix> = tw
        .galois()
        .map(|rho| {
            let mut m = Matrix::from_fn(n, n, |_, _| RatFn::zero());
            for s in tw.galois() {
                m.set(tw.compose(s, rho).index(), s.index(), d.entry(s, rho).clone());
            }
            m
        })
        .collect();
    let r = q.iter().map(|m| linalg::inverse(l, m).ok_or(Error::SingularMatrix)).collect::<Result<Vec<_>>>()?;
    Ok(CrossedProduct { d: d.clone(), p_tilde: build_p_tilde(d), q, r })
}

impl CrossedProduct {
    pub fn d(&self) -> &TwoCocycle {
        &self.d
    }

    pub fn p_tilde(&self) -> &[LMatrix] {
        &self.p_tilde
    }

    pub fn q(&self) -> &[LMatrix] {
        &self.q
    }

    pub fn r(&self) -> &[LMatrix] {
        &self.r
    }

    fn tower(&self) -> &Tower {
        self.d.tower()
    }

    /// `phi(l) = diag(sigma(l))_sigma`.
    pub fn phi(&self, ell: &RatFn) -> LMatrix {
        let tw = self.tower();
        let n = tw.n() as usize;
        Matrix::from_fn(n, n, |i, j| if i == j { tw.act(GaloisElement::new(i as u32), ell) } else { RatFn::zero() })
    }

    /// The PGL_n cocycle given by the lifts `p_sigma`.
    pub fn p_cocycle(&self) -> Result<OneCocycle> {
        OneCocycle::new(self.tower(), self.p_tilde.clone())
    }

    /// `p_s s(p_t) p_{st}^{-1} = d[s,t] I` for all pairs.
    pub fn verify_p_tilde(&self) -> Result<()> {
        let tw = self.tower();
        let l = tw.l();
        for s in tw.galois() {
            for t in tw.galois() {
                let st = tw.compose(s, t);
                let lhs = linalg::mul(l, &self.p_tilde[s.index()], &tw.act_matrix(s, &self.p_tilde[t.index()]));
                // compare against d[s,t] p_{st} to stay inverse-free
                let rhs = linalg::scale(l, self.d.entry(s, t), &self.p_tilde[st.index()]);
                if lhs != rhs {
                    return Err(Error::IdentityFailure { identity: "p-tilde cocycle", indices: [s.exp, t.exp, 0] });
                }
            }
        }
        Ok(())
    }

    /// Every `q_rho` and `r_rho` satisfies the membership identities of `A(p)`.
    pub fn verify_membership(&self) -> Result<()> {
        for x in self.q.iter().chain(&self.r) {
            if let Some(idx) = membership_failure(&self.d, x) {
                return Err(Error::IdentityFailure { identity: "A(p) membership", indices: idx });
            }
        }
        Ok(())
    }

    /// `r_sigma phi(l) r_sigma^{-1} = phi(sigma(l))` for every sigma.
    pub fn verify_conjugation(&self, ell: &RatFn) -> Result<()> {
        let tw = self.tower();
        let l = tw.l();
        let phi_l = self.phi(ell);
        for s in tw.galois() {
            // r phi(l) q = phi(s(l)), with q = r^{-1}
            let lhs = linalg::mul(l, &linalg::mul(l, &self.r[s.index()], &phi_l), &self.q[s.index()]);
            if lhs != self.phi(&tw.act(s, ell)) {
                return Err(Error::IdentityFailure { identity: "phi conjugation", indices: [s.exp, 0, 0] });
            }
        }
        Ok(())
    }

    /// A spanning set for the conjugation check: the power basis of `F_q`, `t`, and `1/t + 1`.
    pub fn test_elements(tower: &Tower) -> Vec<RatFn> {
        let l = tower.l();
        let mut out: Vec<RatFn> = (0..tower.n() as usize).map(|k| l.constant(tower.gf().basis_element(k))).collect();
        out.push(l.t());
        out.push(l.add(&l.t_pow(-1), &l.one()));
        out
    }

    /// Solves `r_s r_t = phi(b[s,t]) r_{st}` for the factor set `b`.
    pub fn extract_factor_set(&self) -> Result<TwoCocycle> {
        let tw = self.tower();
        let l = tw.l();
        let n = tw.n() as usize;
        let mut entries = Vec::with_capacity(n * n);
        for s in tw.galois() {
            for t in tw.galois() {
                let st = tw.compose(s, t);
                let m = linalg::mul(l, &linalg::mul(l, &self.r[s.index()], &self.r[t.index()]), &self.q[st.index()]);
                let b = m.get(0, 0).clone();
                if b.is_zero() || m != self.phi(&b) {
                    return Err(Error::IdentityFailure { identity: "factor set", indices: [s.exp, t.exp, 0] });
                }
                entries.push(b);
            }
        }
        TwoCocycle::new(tw, entries)
    }

    /// The `n^2` elements `phi(beta_i) r_sigma` are `K`-independent and span `A(p)`.
    pub fn verify_direct_sum(&self) -> Result<()> {
        let tw = self.tower();
        let l = tw.l();
        let n = tw.n() as usize;
        let ap = twisted_algebra(&self.p_cocycle()?)?;
        let mut vectors = Vec::with_capacity(n * n);
        for k in 0..n {
            let phi_beta = self.phi(&l.constant(tw.gf().basis_element(k)));
            for s in tw.galois() {
                let x = linalg::mul(l, &phi_beta, &self.r[s.index()]);
                let v = matrix_to_base(tw, &x);
                if !ap.span().contains(l, &v) {
                    return Err(Error::NotInSpan);
                }
                vectors.push(v);
            }
        }
        let got = KSubspace::span(l, vectors, false).dim();
        if got != n * n {
            return Err(Error::WrongDimension { expected: n * n, got });
        }
        Ok(())
    }

    /// All identities of the construction, then `b[s,t] d[s,t] = 1` entrywise.
    /// Returns the extracted factor set.
    pub fn verify_all(&self) -> Result<TwoCocycle> {
        self.verify_p_tilde()?;
        self.verify_membership()?;
        for ell in CrossedProduct::test_elements(self.tower()) {
            self.verify_conjugation(&ell)?;
        }
        let b = self.extract_factor_set()?;
        let tw = self.tower();
        for s in tw.galois() {
            for t in tw.galois() {
                if !tw.l().mul(b.entry(s, t), self.d.entry(s, t)).is_one() {
                    return Err(Error::IdentityFailure { identity: "b d = 1", indices: [s.exp, t.exp, 0] });
                }
            }
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ResidueClass;

    fn t3() -> Tower {
        Tower::new(3, 2).unwrap()
    }

    #[test]
    fn twisted_algebra_of_trivial_cocycle_is_matrix_algebra() {
        let tw = t3();
        let a = twisted_algebra(&OneCocycle::trivial(&tw, 2)).unwrap();
        assert_eq!(a.algebra.dim(), 4);
        // canonical basis is E_ij in row-major order, matching the standard constants
        assert_eq!(a.algebra, StructureConstantAlgebra::matrix_algebra(&tw, 2, Base::K));
    }

    #[test]
    fn symbol_algebras_are_central_simple() {
        let tw = t3();
        let l = tw.l();
        for a in [l.t(), l.from_int(2)] {
            let c = OneCocycle::symbol(&tw, &a).unwrap();
            let alg = twisted_algebra(&c).unwrap();
            assert_eq!(alg.algebra.dim(), 4);
            assert_eq!(alg.algebra.center().len(), 1);
            assert!(alg.algebra.is_central_simple());
            for x in alg.basis() {
                assert!(alg.contains(x));
            }
        }
        let c = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        assert_eq!(c.residue_theorem1().unwrap(), ResidueClass::ZERO);
    }

    #[test]
    fn generator_and_full_group_solves_agree() {
        let tw = Tower::new(2, 3).unwrap();
        let c = OneCocycle::symbol(&tw, &tw.l().t()).unwrap();
        let a = twisted_algebra_with(&c, FixedPointSolve::Generator).unwrap();
        let b = twisted_algebra_with(&c, FixedPointSolve::FullGroup).unwrap();
        assert_eq!(a.span(), b.span());
        assert_eq!(a.algebra.dim(), 9);
    }

    #[test]
    fn p_tilde_for_symbol() {
        let tw = t3();
        let l = tw.l();
        let d = OneCocycle::symbol(&tw, &l.t()).unwrap().coboundary();
        let p = build_p_tilde(&d);
        let expect = Matrix::from_rows(vec![vec![l.zero(), l.t()], vec![l.one(), l.zero()]]).unwrap();
        assert_eq!(p[1], expect);
        let trivial = build_p_tilde(&TwoCocycle::trivial(&tw));
        let swap = Matrix::from_rows(vec![vec![l.zero(), l.one()], vec![l.one(), l.zero()]]).unwrap();
        assert_eq!(trivial[1], swap);
        let cp = build_crossed_product(&d).unwrap();
        cp.verify_p_tilde().unwrap();
        // p_phi phi(p_phi) p_1^{-1} = t I
        let prod = linalg::mul(l, &p[1], &tw.act_matrix(tw.frobenius(), &p[1]));
        assert_eq!(prod, linalg::scalar(l, 2, &l.t()));
    }

    #[test]
    fn crossed_product_for_symbol_t() {
        let tw = t3();
        let l = tw.l();
        let d = OneCocycle::symbol(&tw, &l.t()).unwrap().coboundary();
        let cp = build_crossed_product(&d).unwrap();
        // q_phi(e_1) = d[1, phi] e_phi, q_phi(e_phi) = t e_1
        let q = &cp.q()[1];
        assert!(q.get(1, 0).is_one());
        assert_eq!(q.get(0, 1), &l.t());
        cp.verify_membership().unwrap();
        let xb = l.constant(tw.gf().generator());
        let lhs = linalg::mul(l, &linalg::mul(l, &cp.r()[1], &cp.phi(&xb)), &cp.q()[1]);
        let two_xb = l.constant(tw.gf().neg(tw.gf().generator()));
        let expect = Matrix::from_rows(vec![vec![two_xb, l.zero()], vec![l.zero(), xb.clone()]]).unwrap();
        assert_eq!(lhs, expect);
        let b = cp.verify_all().unwrap();
        assert_eq!(b.entry(tw.frobenius(), tw.frobenius()), &l.t_pow(-1));
        cp.verify_direct_sum().unwrap();
    }

    #[test]
    fn trivial_factor_set() {
        let tw = Tower::new(2, 2).unwrap();
        let cp = build_crossed_product(&TwoCocycle::trivial(&tw)).unwrap();
        let b = cp.verify_all().unwrap();
        assert!(b.entries().iter().all(|e| e.is_one()));
    }
}
