//! Finite-dimensional algebras over `K` (or over `O`) given by structure
//! constants, and the linear algebra over `K` needed to present subalgebras of
//! `M_m(L)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf::{Fq, Gf, MAX_FIELD_SIZE};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::ratfn::{FnField, RatFn};
use crate::tower::{smallest_irreducible, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Base {
    /// The field `K = F_p(t)`.
    K,
    /// The valuation ring `O` of `K`.
    O,
}

/// `b_i b_j = sum_k constants[(i*dim + j)*dim + k] b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    tower: Tower,
    base: Base,
    dim: usize,
    constants: Vec<RatFn>,
    unit: Vec<RatFn>,
}

impl StructureConstantAlgebra {
    /// Validates that constants lie in the base, associativity on all basis
    /// triples, and the two-sided unit axiom.
    pub fn new(
        tower: &Tower,
        base: Base,
        dim: usize,
        constants: Vec<RatFn>,
        unit: Vec<RatFn>,
    ) -> Result<StructureConstantAlgebra> {
        if constants.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: constants.len() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: unit.len() });
        }
        if constants.iter().chain(&unit).any(|c| !tower.in_base(c)) {
            return Err(Error::NotInBaseField);
        }
        if base == Base::O && constants.iter().chain(&unit).any(|c| !c.is_integral()) {
            return Err(Error::InvalidAlgebra("constants of an O-algebra must be integral"));
        }
        let a = StructureConstantAlgebra { tower: tower.clone(), base, dim, constants, unit };
        a.check_associative()?;
        a.check_unit()?;
        Ok(a)
    }

    /// `M_m` over the base, basis `E_ij` at index `i*m + j`.
    pub fn matrix_algebra(tower: &Tower, m: usize, base: Base) -> StructureConstantAlgebra {
        let dim = m * m;
        let mut constants = vec![RatFn::zero(); dim * dim * dim];
        for i in 0..m {
            for j in 0..m {
                for l in 0..m {
                    // E_ij E_jl = E_il
                    let (a, b, c) = (i * m + j, j * m + l, i * m + l);
                    constants[(a * dim + b) * dim + c] = RatFn::one();
                }
            }
        }
        let unit = (0..dim).map(|k| if k % (m + 1) == 0 { RatFn::one() } else { RatFn::zero() }).collect();
        StructureConstantAlgebra::new(tower, base, dim, constants, unit).expect("matrix algebra")
    }

    /// The product algebra `base^k` with orthogonal idempotent basis.
    pub fn diagonal(tower: &Tower, k: usize, base: Base) -> StructureConstantAlgebra {
        let mut constants = vec![RatFn::zero(); k * k * k];
        for i in 0..k {
            constants[(i * k + i) * k + i] = RatFn::one();
        }
        StructureConstantAlgebra::new(tower, base, k, constants, vec![RatFn::one(); k]).expect("diagonal algebra")
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[RatFn] {
        &self.constants
    }

    pub fn unit(&self) -> &[RatFn] {
        &self.unit
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &RatFn {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[RatFn], y: &[RatFn]) -> Vec<RatFn> {
        let l = self.tower.l();
        let d = self.dim;
        let mut out = vec![RatFn::zero(); d];
        for i in (0..d).filter(|&i| !x[i].is_zero()) {
            for j in (0..d).filter(|&j| !y[j].is_zero()) {
                let xy = l.mul(&x[i], &y[j]);
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = self.constant(i, j, k);
                    if !c.is_zero() {
                        *slot = l.add(slot, &l.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    fn basis_vector(&self, i: usize) -> Vec<RatFn> {
        let mut v = vec![RatFn::zero(); self.dim];
        v[i] = RatFn::one();
        v
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim;
        let basis: Vec<Vec<RatFn>> = (0..d).map(|i| self.basis_vector(i)).collect();
        let products: Vec<Vec<RatFn>> = (0..d * d).map(|ij| self.constants[ij * d..(ij + 1) * d].to_vec()).collect();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.multiply(&products[i * d + j], &basis[k]);
                    let right = self.multiply(&basis[i], &products[j * d + k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra("not associative"));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_vector(i);
            if self.multiply(&self.unit, &b) != b || self.multiply(&b, &self.unit) != b {
                return Err(Error::InvalidAlgebra("unit axiom fails"));
            }
        }
        Ok(())
    }

    /// Basis of the center, from the linear system `z b_i = b_i z`.
    pub fn center(&self) -> Vec<Vec<RatFn>> {
        let l = self.tower.l();
        let d = self.dim;
        // rows indexed by (i, k): sum_m z_m (C[m,i,k] - C[i,m,k]) = 0
        let sys = Matrix::from_fn(d * d, d, |row, m| {
            let (i, k) = (row / d, row % d);
            l.sub(self.constant(m, i, k), self.constant(i, m, k))
        });
        let kernel = linalg::kernel(l, &sys);
        KSubspace::span(l, kernel, true).basis().to_vec()
    }

    /// Bijectivity of `A (x) A^op -> End(A)`, `a (x) b -> (x -> a x b)`.
    ///
    /// A full-rank specialization `t -> a` certifies invertibility cheaply.
    /// Points are drawn from `F_q` and, for constants in `K`, from the largest
    /// field `F_{p^e}` in range; the rank is computed exactly over `K` only if
    /// every specialization is degenerate.
    pub fn is_central_simple(&self) -> bool {
        let d = self.dim;
        let gf = self.tower.gf();
        let full_rank_at = |field: &Gf, a: Fq| {
            let special: Option<Vec<Fq>> = self
                .constants
                .iter()
                .map(|c| {
                    let den = c.den().eval(field, a);
                    field.inv(den).map(|di| field.mul(c.num().eval(field, a), di))
                })
                .collect();
            special.is_some_and(|c| linalg::rank(field, &tensor_opposite_matrix(field, d, &c)) == d * d)
        };
        if gf.elements().any(|a| full_rank_at(gf, a)) {
            return true;
        }
        if let Some(big) = self.specialization_field() {
            if big.elements().any(|a| full_rank_at(&big, a)) {
                return true;
            }
        }
        let l = self.tower.l();
        linalg::rank(l, &tensor_opposite_matrix(l, d, &self.constants)) == d * d
    }

    /// `F_{p^e}` for the largest `e > n` with `p^e` in range, when every
    /// constant has coefficients in `F_p` (so `t` may be sent anywhere in it).
    fn specialization_field(&self) -> Option<Gf> {
        let gf = self.tower.gf();
        let p = gf.p();
        let in_k = self
            .constants
            .iter()
            .all(|c| c.num().coeffs().iter().chain(c.den().coeffs()).all(|&x| gf.in_prime_field(x)));
        let mut e = 1;
        while (p as usize).pow(e + 1) <= MAX_FIELD_SIZE {
            e += 1;
        }
        if !in_k || e <= gf.degree() {
            return None;
        }
        Gf::new(p, &smallest_irreducible(p, e)?).ok()
    }

    /// Constants reduced modulo `t`; `None` unless every constant is integral.
    pub fn reduce_mod_t(&self) -> Option<Vec<Fq>> {
        let l = self.tower.l();
        self.constants.iter().map(|c| l.reduce(c)).collect()
    }
}

/// The `dim^2 x dim^2` matrix of `A (x) A^op -> End(A)`: row `(i, j)` holds the
/// coordinates of `x -> b_i x b_j` in the basis of `End(A)` indexed `(k, l)`.
pub fn tensor_opposite_matrix<F: Field>(f: &F, dim: usize, c: &[F::Elem]) -> Matrix<F::Elem> {
    let at = |i: usize, j: usize, k: usize| &c[(i * dim + j) * dim + k];
    let mut out = Matrix::from_fn(dim * dim, dim * dim, |_, _| f.zero());
    for i in 0..dim {
        for k in 0..dim {
            for m in 0..dim {
                let cikm = at(i, k, m);
                if f.is_zero(cikm) {
                    continue;
                }
                for j in 0..dim {
                    for o in 0..dim {
                        let cmjo = at(m, j, o);
                        if f.is_zero(cmjo) {
                            continue;
                        }
                        let (r, col) = (i * dim + j, k * dim + o);
                        let v = f.add(out.get(r, col), &f.mul(cikm, cmjo));
                        out.set(r, col, v);
                    }
                }
            }
        }
    }
    out
}

/// Central simplicity over a finite field, for reductions of `O`-algebras.
pub fn is_central_simple_over(gf: &Gf, dim: usize, constants: &[Fq]) -> bool {
    linalg::rank(gf, &tensor_opposite_matrix(gf, dim, constants)) == dim * dim
}

pub(crate) fn lcm(gf: &Gf, a: &Poly, b: &Poly) -> Poly {
    let g = a.gcd(gf, b);
    a.mul(gf, &b.div_exact(gf, &g))
}

/// A `K`-subspace of `K^N`, held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSubspace {
    rows: Vec<Vec<RatFn>>,
    pivots: Vec<usize>,
    len: usize,
}

impl KSubspace {
    /// Span of `vectors` (all of equal length). With `clear`, each echelon row is
    /// scaled to a primitive polynomial vector whose pivot entry is monic.
    pub fn span(l: &FnField, vectors: Vec<Vec<RatFn>>, clear: bool) -> KSubspace {
        let len = vectors.first().map_or(0, |v| v.len());
        if vectors.is_empty() || len == 0 {
            return KSubspace { rows: Vec::new(), pivots: Vec::new(), len };
        }
        let m = Matrix::from_rows(vectors).expect("equal lengths");
        let (r, pivots) = linalg::rref(l, &m);
        let mut rows: Vec<Vec<RatFn>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        if clear {
            for (row, &pc) in rows.iter_mut().zip(&pivots) {
                *row = clear_denominators(l, row, pc);
            }
        }
        KSubspace { rows, pivots, len }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.len
    }

    pub fn basis(&self) -> &[Vec<RatFn>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in [`KSubspace::basis`], or `None` if `v` is not in the span.
    pub fn coordinates(&self, l: &FnField, v: &[RatFn]) -> Option<Vec<RatFn>> {
        if v.len() != self.len {
            return None;
        }
        let coords: Vec<RatFn> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &pc)| l.div(&v[pc], &row[pc]).expect("nonzero pivot"))
            .collect();
        let mut rest: Vec<RatFn> = v.to_vec();
        for (c, row) in coords.iter().zip(&self.rows) {
            if c.is_zero() {
                continue;
            }
            for (slot, x) in rest.iter_mut().zip(row) {
                if !x.is_zero() {
                    *slot = l.sub(slot, &l.mul(c, x));
                }
            }
        }
        rest.iter().all(|x| x.is_zero()).then_some(coords)
    }

    pub fn contains(&self, l: &FnField, v: &[RatFn]) -> bool {
        self.coordinates(l, v).is_some()
    }
}

fn clear_denominators(l: &FnField, row: &[RatFn], pivot: usize) -> Vec<RatFn> {
    let gf = l.gf();
    let den = row.iter().filter(|x| !x.is_zero()).fold(Poly::one(), |acc, x| lcm(gf, &acc, x.den()));
    let nums: Vec<Poly> = row
        .iter()
        .map(|x| if x.is_zero() { Poly::zero() } else { x.num().mul(gf, &den.div_exact(gf, x.den())) })
        .collect();
    let content = nums.iter().fold(Poly::zero(), |acc, p| acc.gcd(gf, p));
    let lead_inv = gf.inv(nums[pivot].div_exact(gf, &content).lead().expect("nonzero pivot")).expect("nonzero");
    nums.iter().map(|p| RatFn::from_poly(p.div_exact(gf, &content).scale(gf, lead_inv))).collect()
}
