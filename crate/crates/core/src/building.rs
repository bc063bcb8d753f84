//! Vertices of the building of `PGL_m(L)` as homothety classes of
//! `O_L`-lattices, the twisted Galois action of a cocycle on them, fixed-vertex
//! search, and the Azumaya order of fixed integral elements.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{is_central_simple_over, lcm, Base, KSubspace, StructureConstantAlgebra};
use crate::cohomology::{min_entry_valuation, LMatrix, OneCocycle};
use crate::crossed::{base_to_matrix, present, twisted_algebra, MatrixAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gf::{Fq, Gf};
use crate::linalg::{self, Matrix};
use crate::poly::Poly;
use crate::ratfn::{FnField, RatFn};
use crate::tower::{GaloisElement, Tower};

/// Default bound on the number of neighbors enumerated around one vertex.
pub const MAX_NEIGHBORS: usize = 20_000;
/// Default bound on the number of vertices a search may visit.
pub const MAX_VISITED: usize = 200_000;

/// Column Hermite form over `O_L`: upper triangular, diagonal `t^{a_i}` with
/// `min a_i = 0`, and entry `(i, j)` reduced to a Laurent polynomial with
/// exponents below `a_i`.
pub fn hermite_form(l: &FnField, g: &LMatrix) -> Result<LMatrix> {
    let n = g.rows();
    if !g.is_square() {
        return Err(Error::DimensionMismatch { expected: n, got: g.cols() });
    }
    let mut m = g.clone();
    let mut a = vec![0i64; n];
    for i in (0..n).rev() {
        let best =
            (0..=i).filter_map(|j| m.get(i, j).valuation().map(|v| (v, j))).min().ok_or(Error::SingularMatrix)?;
        let (v, j0) = best;
        m.swap_cols(j0, i);
        let unit_inv = l.inv(&l.shift(m.get(i, i), -v)).expect("nonzero");
        for r in 0..=i {
            let x = l.mul(m.get(r, i), &unit_inv);
            m.set(r, i, x);
        }
        for j in 0..i {
            if m.get(i, j).is_zero() {
                continue;
            }
            let f = l.shift(m.get(i, j), -v);
            column_axpy(l, &mut m, j, i, &f, i);
        }
        a[i] = v;
    }
    for i in (0..n).rev() {
        for j in i + 1..n {
            let x = m.get(i, j);
            let r = l.truncate(x, a[i]);
            if &r == x {
                continue;
            }
            let f = l.shift(&l.sub(x, &r), -a[i]);
            column_axpy(l, &mut m, j, i, &f, i);
        }
    }
    let lo = a.iter().copied().min().unwrap_or(0);
    if lo != 0 {
        m = m.map(|x| l.shift(x, -lo));
    }
    Ok(m)
}

/// `col_dst -= f * col_src` on rows `0..=last`.
fn column_axpy(l: &FnField, m: &mut LMatrix, dst: usize, src: usize, f: &RatFn, last: usize) {
    for r in 0..=last {
        let s = m.get(r, src);
        if s.is_zero() {
            continue;
        }
        let v = l.sub(m.get(r, dst), &l.mul(f, s));
        m.set(r, dst, v);
    }
}

/// The homothety class of the lattice spanned by the columns of `rep`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct LatticeVertex {
    rep: LMatrix,
}

impl LatticeVertex {
    /// Canonicalizes an invertible representative.
    pub fn new(tower: &Tower, g: &LMatrix) -> Result<LatticeVertex> {
        Ok(LatticeVertex { rep: hermite_form(tower.l(), g)? })
    }

    /// The class of the standard lattice `O_L^m`.
    pub fn standard(tower: &Tower, m: usize) -> LatticeVertex {
        LatticeVertex { rep: linalg::identity(tower.l(), m) }
    }

    /// Canonical representative.
    pub fn rep(&self) -> &LMatrix {
        &self.rep
    }

    pub fn size(&self) -> usize {
        self.rep.rows()
    }

    /// `w(det g) mod m`.
    pub fn vertex_type(&self) -> u32 {
        let m = self.size() as i64;
        let w: i64 = self.diagonal_valuations().sum();
        w.rem_euclid(m) as u32
    }

    fn diagonal_valuations(&self) -> impl Iterator<Item = i64> + '_ {
        (0..self.size()).map(|i| self.rep.get(i, i).valuation().expect("pivot"))
    }
}

/// `max - min` of the elementary divisors over `O_L` of an invertible matrix,
/// which is the graph distance between `[I]` and `[g]`.
pub fn elementary_divisor_spread(l: &FnField, g: &LMatrix) -> Result<i64> {
    let gi = linalg::inverse(l, g).ok_or(Error::SingularMatrix)?;
    // the smallest divisor of g is its minimal entry valuation; the largest is
    // minus the smallest divisor of g^{-1}
    let lo = min_entry_valuation(g).expect("invertible");
    let hi = -min_entry_valuation(&gi).expect("invertible");
    Ok(hi - lo)
}

/// Graph distance between two vertices.
pub fn distance(tower: &Tower, v1: &LatticeVertex, v2: &LatticeVertex) -> Result<i64> {
    let l = tower.l();
    let h = relative(l, v1.rep(), v2.rep())?;
    elementary_divisor_spread(l, &h)
}

fn relative(l: &FnField, g1: &LMatrix, g2: &LMatrix) -> Result<LMatrix> {
    if g1.rows() != g2.rows() {
        return Err(Error::DimensionMismatch { expected: g1.rows(), got: g2.rows() });
    }
    let g1i = linalg::inverse(l, g1).ok_or(Error::SingularMatrix)?;
    Ok(linalg::mul(l, &g1i, g2))
}

/// Whether `[g1] = [g2]`: with `h = g1^{-1} g2` and `m` its minimal entry
/// valuation, `t^{-m} h` must lie in `GL(O_L)`.
pub fn same_class(l: &FnField, g1: &LMatrix, g2: &LMatrix) -> Result<bool> {
    let h = relative(l, g1, g2)?;
    Ok(in_scaled_units(l, &h).is_some())
}

/// `Some(m)` if `t^{-m} h` lies in `GL(O_L)` for `m` the minimal entry valuation.
fn in_scaled_units(l: &FnField, h: &LMatrix) -> Option<i64> {
    let m = min_entry_valuation(h)?;
    let w = linalg::det(l, h).valuation()?;
    (w == h.rows() as i64 * m).then_some(m)
}

pub fn vertex_equal(tower: &Tower, v1: &LatticeVertex, v2: &LatticeVertex) -> Result<bool> {
    same_class(tower.l(), v1.rep(), v2.rep())
}

/// `w(det h) = 0 mod m`, i.e. the class of `h` preserves vertex types.
pub fn is_type_preserving(tower: &Tower, h: &LMatrix) -> Result<bool> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch { expected: h.rows(), got: h.cols() });
    }
    let w = linalg::det(tower.l(), h).valuation().ok_or(Error::SingularMatrix)?;
    Ok(w.rem_euclid(h.rows() as i64) == 0)
}

/// Gaussian binomial `[m choose k]_q`, saturating.
fn gaussian_binomial(q: usize, m: usize, k: usize) -> usize {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let q = q as u128;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((m - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32) - 1);
    }
    usize::try_from(num / den).unwrap_or(usize::MAX)
}

/// Number of proper nonzero subspaces of `F_q^m`.
pub fn neighbor_count(q: usize, m: usize) -> usize {
    (1..m).fold(0usize, |acc, k| acc.saturating_add(gaussian_binomial(q, m, k)))
}

/// Proper nonzero subspaces of `F_q^m` as reduced row echelon bases, ordered by
/// dimension, then pivot columns, then free entries (lexicographic).
fn subspaces(q_elems: &[Fq], m: usize) -> Vec<Vec<Vec<Fq>>> {
    let mut out = Vec::new();
    for k in 1..m {
        for pivots in combinations(m, k) {
            // free slots: row r, column c > pivots[r], c not a pivot
            let slots: Vec<(usize, usize)> = (0..k)
                .flat_map(|r| {
                    let pv = pivots.clone();
                    (pivots[r] + 1..m).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let q = q_elems.len();
            let total = q.pow(slots.len() as u32);
            for mut code in 0..total {
                let mut rows = vec![vec![Fq::ZERO; m]; k];
                for (r, &pc) in pivots.iter().enumerate() {
                    rows[r][pc] = Fq::ONE;
                }
                // most significant digit first, so the order is lexicographic in slot order
                let mut digits = vec![0usize; slots.len()];
                for d in digits.iter_mut().rev() {
                    *d = code % q;
                    code /= q;
                }
                for (&(r, c), &d) in slots.iter().zip(&digits) {
                    rows[r][c] = q_elems[d];
                }
                out.push(rows);
            }
        }
    }
    out
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices adjacent to `v`: classes of lattices strictly between `t L` and `L`,
/// in the order of their residue subspaces.
pub fn neighbors(tower: &Tower, v: &LatticeVertex) -> Result<Vec<LatticeVertex>> {
    neighbors_capped(tower, v, MAX_NEIGHBORS)
}

pub fn neighbors_capped(tower: &Tower, v: &LatticeVertex, cap: usize) -> Result<Vec<LatticeVertex>> {
    let l = tower.l();
    let m = v.size();
    let q = tower.gf().size();
    let count = neighbor_count(q, m);
    if count > cap {
        return Err(Error::ScaleCap { what: "neighbors per vertex", limit: cap, requested: count });
    }
    let elems: Vec<Fq> = tower.gf().elements().collect();
    let mut out = Vec::with_capacity(count);
    for rows in subspaces(&elems, m) {
        let pivots: Vec<usize> = rows.iter().map(|r| r.iter().position(|x| !x.is_zero()).unwrap()).collect();
        let mut cols: Vec<Vec<RatFn>> = rows.iter().map(|r| r.iter().map(|&x| l.constant(x)).collect()).collect();
        for j in (0..m).filter(|j| !pivots.contains(j)) {
            let mut e = vec![RatFn::zero(); m];
            e[j] = l.t();
            cols.push(e);
        }
        let basis = Matrix::from_fn(m, m, |i, j| cols[j][i].clone());
        out.push(LatticeVertex::new(tower, &linalg::mul(l, v.rep(), &basis))?);
    }
    Ok(out)
}

/// The action `sigma . [g] = [c_sigma sigma(g)]` of the Galois group twisted by `c`.
#[derive(Clone, Debug)]
pub struct TwistedAction {
    c: OneCocycle,
}

impl TwistedAction {
    pub fn new(c: &OneCocycle) -> TwistedAction {
        TwistedAction { c: c.clone() }
    }

    pub fn cocycle(&self) -> &OneCocycle {
        &self.c
    }

    fn image_rep(&self, sigma: GaloisElement, v: &LatticeVertex) -> LMatrix {
        let tw = self.c.tower();
        linalg::mul(tw.l(), self.c.lift(sigma), &tw.act_matrix(sigma, v.rep()))
    }

    pub fn act(&self, sigma: GaloisElement, v: &LatticeVertex) -> Result<LatticeVertex> {
        LatticeVertex::new(self.c.tower(), &self.image_rep(sigma, v))
    }

    /// `sigma . v = v`, without computing a canonical form.
    pub fn fixes(&self, sigma: GaloisElement, v: &LatticeVertex) -> Result<bool> {
        same_class(self.c.tower().l(), v.rep(), &self.image_rep(sigma, v))
    }

    /// Checks `(s t) . v = s . (t . v)` for all pairs at the given vertex.
    pub fn check_action(&self, v: &LatticeVertex) -> Result<()> {
        let tw = self.c.tower();
        for s in tw.galois() {
            for t in tw.galois() {
                let lhs = self.act(tw.compose(s, t), v)?;
                let rhs = self.act(s, &self.act(t, v)?)?;
                if lhs != rhs {
                    return Err(Error::IdentityFailure { identity: "group action", indices: [s.exp, t.exp, 0] });
                }
            }
        }
        Ok(())
    }
}

pub fn twisted_act(c: &OneCocycle, sigma: GaloisElement, v: &LatticeVertex) -> Result<LatticeVertex> {
    TwistedAction::new(c).act(sigma, v)
}

/// Result of a bounded breadth-first search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub vertex: Option<LatticeVertex>,
    /// Distance of the found vertex, or the largest radius fully explored.
    pub radius: u32,
    /// Number of vertices tested for fixedness.
    pub visited: usize,
}

/// Breadth-first search from the standard vertex for a vertex fixed by the
/// Frobenius under the twisted action. Each sphere is built completely before
/// its vertices are tested, in order.
pub fn find_fixed_vertex(c: &OneCocycle, radius: u32) -> Result<SearchOutcome> {
    find_fixed_vertex_capped(c, radius, MAX_VISITED)
}

pub fn find_fixed_vertex_capped(c: &OneCocycle, radius: u32, max_visited: usize) -> Result<SearchOutcome> {
    let tw = c.tower();
    let action = TwistedAction::new(c);
    let phi = tw.frobenius();
    let start = LatticeVertex::standard(tw, c.size());
    let mut seen: BTreeSet<LatticeVertex> = BTreeSet::new();
    seen.insert(start.clone());
    let mut sphere = vec![start];
    let mut visited = 0usize;
    let mut r = 0u32;
    loop {
        for v in &sphere {
            visited += 1;
            if action.fixes(phi, v)? {
                return Ok(SearchOutcome { vertex: Some(v.clone()), radius: r, visited });
            }
        }
        if r == radius {
            return Ok(SearchOutcome { vertex: None, radius: r, visited });
        }
        let mut next = Vec::new();
        for v in &sphere {
            for u in neighbors(tw, v)? {
                if !seen.contains(&u) {
                    seen.insert(u.clone());
                    next.push(u);
                    if seen.len() > max_visited {
                        return Err(Error::ScaleCap {
                            what: "vertices visited",
                            limit: max_visited,
                            requested: seen.len(),
                        });
                    }
                }
            }
        }
        sphere = next;
        r += 1;
    }
}

/// Largest spread `max w - min w` of the nonzero entry valuations over all lifts.
/// Used as the search radius for unramified cocycles; it is a heuristic, not a
/// proven bound on the distance to a fixed vertex.
pub fn radius_bound(c: &OneCocycle) -> u32 {
    c.lifts()
        .iter()
        .map(|m| {
            let vals: Vec<i64> = m.data().iter().filter_map(|x| x.valuation()).collect();
            let lo = vals.iter().min().copied().unwrap_or(0);
            let hi = vals.iter().max().copied().unwrap_or(0);
            (hi - lo) as u32
        })
        .max()
        .unwrap_or(0)
}

/// Conjugates `c` by the canonical representative of a fixed vertex and rescales
/// each lift by a power of `t` so that it lies in `GL_m(O_L)`.
pub fn integral_form(c: &OneCocycle, v: &LatticeVertex) -> Result<OneCocycle> {
    let tw = c.tower();
    let l = tw.l();
    if v.size() != c.size() {
        return Err(Error::DimensionMismatch { expected: c.size(), got: v.size() });
    }
    let action = TwistedAction::new(c);
    for s in tw.galois() {
        if !action.fixes(s, v)? {
            return Err(Error::VertexNotFixed { sigma: s.exp });
        }
    }
    let conj = c.conjugate(v.rep())?;
    let scales: Vec<RatFn> =
        conj.lifts().iter().map(|m| l.t_pow(-min_entry_valuation(m).expect("invertible lift"))).collect();
    let out = conj.rescale(&scales)?;
    for (s, m) in out.lifts().iter().enumerate() {
        if linalg::det(l, m).valuation() != Some(0) {
            return Err(Error::VertexNotFixed { sigma: s as u32 });
        }
    }
    Ok(out)
}

/// Every lift has entries in `O_L` and a unit determinant.
fn check_integral(c: &OneCocycle) -> Result<()> {
    let l = c.tower().l();
    for (s, m) in c.lifts().iter().enumerate() {
        let integral = m.data().iter().all(|x| x.is_integral());
        if !integral || linalg::det(l, m).valuation() != Some(0) {
            return Err(Error::NonIntegralLift { sigma: s as u32 });
        }
    }
    Ok(())
}

/// The `O`-order of fixed elements in `M_m(O_L)`. Its basis is the identity on
/// a set of pivot coordinates, so coordinates are read off those positions.
pub fn azumaya_order(c_int: &OneCocycle) -> Result<MatrixAlgebra> {
    check_integral(c_int)?;
    let tw = c_int.tower();
    let a = twisted_algebra(c_int)?;
    let (rows, pivots) = saturate(tw, a.span().basis().to_vec())?;
    let m = c_int.size();
    let basis: Vec<LMatrix> = rows.iter().map(|v| base_to_matrix(tw, m, v)).collect();
    let solver = PivotSolver::new(tw, &rows, &pivots)?;
    let algebra = present(tw, Base::O, &basis, |v| solver.coordinates(v))?;
    let span = KSubspace::span(tw.l(), rows, true);
    Ok(MatrixAlgebra { algebra, basis, span })
}

/// Coordinates in a basis of polynomial rows whose pivot block `B_S` is
/// invertible, via `adj = den * B_S^{-1}` so that only polynomial arithmetic
/// touches the vectors being solved.
struct PivotSolver<'a> {
    l: &'a FnField,
    rows: Vec<Vec<Poly>>,
    pivots: &'a [usize],
    adj: Vec<Vec<Poly>>,
    den: Poly,
}

impl<'a> PivotSolver<'a> {
    fn new(tower: &'a Tower, rows: &[Vec<RatFn>], pivots: &'a [usize]) -> Result<Self> {
        let l = tower.l();
        let gf = l.gf();
        let d = rows.len();
        if rows.iter().flatten().any(|x| !x.den().is_one()) {
            return Err(Error::InvalidAlgebra("order basis is not polynomial"));
        }
        let bs = Matrix::from_fn(d, d, |i, j| rows[i][pivots[j]].clone());
        let inv = linalg::inverse(l, &bs).ok_or(Error::SingularMatrix)?;
        let den = inv.data().iter().filter(|x| !x.is_zero()).fold(Poly::one(), |acc, x| lcm(gf, &acc, x.den()));
        let adj = (0..d).map(|i| (0..d).map(|j| scaled_num(gf, inv.get(i, j), &den)).collect()).collect();
        let rows = rows.iter().map(|r| r.iter().map(|x| x.num().clone()).collect()).collect();
        Ok(PivotSolver { l, rows, pivots, adj, den })
    }

    fn coordinates(&self, v: &[RatFn]) -> Option<Vec<RatFn>> {
        let gf = self.l.gf();
        let vd = v.iter().filter(|x| !x.is_zero()).fold(Poly::one(), |acc, x| lcm(gf, &acc, x.den()));
        let vp: Vec<Poly> = v.iter().map(|x| scaled_num(gf, x, &vd)).collect();
        let d = self.rows.len();
        let nums: Vec<Poly> = (0..d)
            .map(|j| (0..d).fold(Poly::zero(), |acc, i| acc.add(gf, &vp[self.pivots[i]].mul(gf, &self.adj[i][j]))))
            .collect();
        for (x, target) in vp.iter().enumerate() {
            let lhs = nums.iter().zip(&self.rows).fold(Poly::zero(), |acc, (c, row)| acc.add(gf, &c.mul(gf, &row[x])));
            if lhs != target.mul(gf, &self.den) {
                return None;
            }
        }
        let total = self.den.mul(gf, &vd);
        nums.into_iter().map(|c| self.l.fraction(c, total.clone())).collect()
    }
}

/// Numerator of `x` over the common denominator `den` (a multiple of `x.den()`).
fn scaled_num(gf: &Gf, x: &RatFn, den: &Poly) -> Poly {
    if x.is_zero() {
        Poly::zero()
    } else {
        x.num().mul(gf, &den.div_exact(gf, x.den()))
    }
}

/// Basis of `V ∩ O^N` for `V` spanned by `rows`, as polynomial vectors whose
/// reductions mod `t` are independent; returns the rows and the pivot columns of
/// those reductions.
fn saturate(tower: &Tower, rows: Vec<Vec<RatFn>>) -> Result<(Vec<Vec<RatFn>>, Vec<usize>)> {
    let l = tower.l();
    let gf = tower.gf();
    let mut rows: Vec<Vec<RatFn>> = rows
        .into_iter()
        .map(|r| {
            let lo = r.iter().filter_map(|x| x.valuation()).min().unwrap_or(0);
            r.iter().map(|x| l.shift(x, -lo)).collect()
        })
        .collect();
    let d = rows.len();
    if d == 0 {
        return Ok((rows, Vec::new()));
    }
    let len = rows[0].len();
    loop {
        let red = Matrix::from_fn(d, len, |i, j| l.reduce(&rows[i][j]).expect("integral"));
        // a dependency among the reduced rows is a kernel vector of the transpose
        let deps = linalg::kernel(gf, &red.transpose());
        let Some(dep) = deps.first() else {
            let (_, pivots) = linalg::rref(gf, &red);
            return Ok((rows, pivots));
        };
        let j0 = dep.iter().rposition(|x| !x.is_zero()).expect("nonzero dependency");
        let mut combo = vec![RatFn::zero(); len];
        for (a, row) in dep.iter().zip(&rows) {
            if a.is_zero() {
                continue;
            }
            let a = l.constant(*a);
            for (slot, x) in combo.iter_mut().zip(row) {
                *slot = l.add(slot, &l.mul(&a, x));
            }
        }
        rows[j0] = combo.iter().map(|x| l.shift(x, -1)).collect();
    }
}

/// `O`-algebra whose reduction mod `t` is central simple over `F_p`.
pub fn is_azumaya(a: &StructureConstantAlgebra) -> bool {
    if a.base() != Base::O {
        return false;
    }
    match a.reduce_mod_t() {
        Some(c) => is_central_simple_over(a.tower().gf(), a.dim(), &c),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ResidueClass;

    fn t3() -> Tower {
        Tower::new(3, 2).unwrap()
    }

    fn diag(tw: &Tower, d: &[RatFn]) -> LMatrix {
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i].clone() } else { tw.zero() })
    }

    #[test]
    fn hermite_form_is_canonical() {
        let tw = t3();
        let l = tw.l();
        let v0 = LatticeVertex::standard(&tw, 2);
        assert_eq!(LatticeVertex::new(&tw, &diag(&tw, &[l.t(), l.t()])).unwrap(), v0);
        let u =
            Matrix::from_rows(vec![vec![l.one(), l.add(&l.t(), &l.from_int(2))], vec![l.from_int(2), l.from_int(2)]])
                .unwrap();
        let g = diag(&tw, &[l.one(), l.t()]);
        let a = LatticeVertex::new(&tw, &g).unwrap();
        let b = LatticeVertex::new(&tw, &linalg::mul(l, &g, &u)).unwrap();
        assert_eq!(a, b);
        assert!(vertex_equal(&tw, &a, &b).unwrap());
        assert!(!vertex_equal(&tw, &a, &v0).unwrap());
        assert_eq!(a.vertex_type(), 1);
        assert_eq!(v0.vertex_type(), 0);
        // diag(1, 1/t) is homothetic to diag(t, 1)
        let c = LatticeVertex::new(&tw, &diag(&tw, &[l.one(), l.t_pow(-1)])).unwrap();
        assert_eq!(c, LatticeVertex::new(&tw, &diag(&tw, &[l.t(), l.one()])).unwrap());
    }

    #[test]
    fn type_preservation() {
        let tw = t3();
        let l = tw.l();
        assert!(is_type_preserving(&tw, &linalg::identity(l, 2)).unwrap());
        assert!(!is_type_preserving(&tw, &diag(&tw, &[l.one(), l.t()])).unwrap());
        assert!(is_type_preserving(&tw, &diag(&tw, &[l.t(), l.t()])).unwrap());
    }

    #[test]
    fn neighbor_counts() {
        let tw = t3();
        let l = tw.l();
        let v0 = LatticeVertex::standard(&tw, 2);
        let nb = neighbors(&tw, &v0).unwrap();
        assert_eq!(nb.len(), 10);
        assert!(nb.contains(&LatticeVertex::new(&tw, &diag(&tw, &[l.one(), l.t()])).unwrap()));
        let set: BTreeSet<_> = nb.iter().cloned().collect();
        assert_eq!(set.len(), 10);
        assert!(nb.iter().all(|v| distance(&tw, &v0, v).unwrap() == 1));
        let t2 = Tower::new(2, 2).unwrap();
        assert_eq!(neighbors(&t2, &LatticeVertex::standard(&t2, 2)).unwrap().len(), 5);
        let t23 = Tower::new(2, 3).unwrap();
        assert_eq!(neighbors(&t23, &LatticeVertex::standard(&t23, 3)).unwrap().len(), 146);
        assert_eq!(neighbor_count(27, 3), 1514);
    }

    #[test]
    fn twisted_action_examples() {
        let tw = t3();
        let l = tw.l();
        let v0 = LatticeVertex::standard(&tw, 2);
        let phi = tw.frobenius();
        assert_eq!(twisted_act(&OneCocycle::trivial(&tw, 2), phi, &v0).unwrap(), v0);
        let c2 = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        assert_eq!(twisted_act(&c2, phi, &v0).unwrap(), v0);
        let ct = OneCocycle::symbol(&tw, &l.t()).unwrap();
        let moved = twisted_act(&ct, phi, &v0).unwrap();
        assert_ne!(moved, v0);
        assert_eq!(moved.vertex_type(), 1);
        TwistedAction::new(&ct).check_action(&moved).unwrap();
    }

    #[test]
    fn fixed_vertex_search() {
        let tw = t3();
        let l = tw.l();
        let c2 = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        let found = find_fixed_vertex(&c2, 0).unwrap();
        assert_eq!(found.vertex, Some(LatticeVertex::standard(&tw, 2)));
        assert_eq!(found.radius, 0);

        let g = diag(&tw, &[l.one(), l.t()]);
        let cg = c2.conjugate(&g).unwrap();
        let found = find_fixed_vertex(&cg, radius_bound(&cg)).unwrap();
        let expect = LatticeVertex::new(&tw, &diag(&tw, &[l.t(), l.one()])).unwrap();
        assert_eq!(found.vertex.as_ref(), Some(&expect));
        assert_eq!(found.radius, 1);

        let ci = integral_form(&cg, &expect).unwrap();
        assert!(ci.lifts().iter().flat_map(|m| m.data()).all(|x| x.is_integral()));
        assert_eq!(ci.det_valuations(), vec![0, 0]);
        assert_eq!(ci.residue_theorem1().unwrap(), ResidueClass::ZERO);
        assert_eq!(
            integral_form(&cg, &LatticeVertex::standard(&tw, 2)).unwrap_err(),
            Error::VertexNotFixed { sigma: 1 }
        );

        let ct = OneCocycle::symbol(&tw, &l.t()).unwrap();
        let none = find_fixed_vertex(&ct, 3).unwrap();
        assert_eq!(none.vertex, None);
        assert_eq!(none.visited, 1 + 10 + 90 + 810);
    }

    #[test]
    fn azumaya_orders() {
        let tw = t3();
        let l = tw.l();
        let trivial = azumaya_order(&OneCocycle::trivial(&tw, 2)).unwrap();
        assert_eq!(trivial.algebra, StructureConstantAlgebra::matrix_algebra(&tw, 2, Base::O));
        assert!(is_azumaya(&trivial.algebra));

        let c2 = OneCocycle::symbol(&tw, &l.from_int(2)).unwrap();
        let o = azumaya_order(&c2).unwrap();
        assert_eq!(o.algebra.dim(), 4);
        assert!(is_azumaya(&o.algebra));
        assert_eq!(o.span(), twisted_algebra(&c2).unwrap().span());

        let g = diag(&tw, &[l.one(), l.t()]);
        let cg = c2.conjugate(&g).unwrap();
        assert_eq!(azumaya_order(&cg).unwrap_err(), Error::NonIntegralLift { sigma: 1 });
        let v = find_fixed_vertex(&cg, 2).unwrap().vertex.unwrap();
        let ci = integral_form(&cg, &v).unwrap();
        let o = azumaya_order(&ci).unwrap();
        assert!(is_azumaya(&o.algebra));
        assert_eq!(o.span(), twisted_algebra(&ci).unwrap().span());

        assert!(!is_azumaya(&StructureConstantAlgebra::diagonal(&tw, 2, Base::O)));
    }

    #[test]
    fn saturation_enlarges_non_saturated_basis() {
        // the symbol for t^2 is unramified but not integral; after moving to a
        // fixed vertex the naive basis of the fixed algebra is not saturated
        let tw = t3();
        let l = tw.l();
        let c = OneCocycle::symbol(&tw, &l.t_pow(2)).unwrap();
        let found = find_fixed_vertex(&c, radius_bound(&c)).unwrap();
        let v = found.vertex.unwrap();
        assert_eq!(found.radius, 1);
        let ci = integral_form(&c, &v).unwrap();
        let o = azumaya_order(&ci).unwrap();
        assert!(is_azumaya(&o.algebra));
        assert!(o.basis().iter().flat_map(|m| m.data()).all(|x| x.is_integral()));
    }
}
