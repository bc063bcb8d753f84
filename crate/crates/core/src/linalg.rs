//! Dense matrices and Gaussian elimination over any [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Row-major data; `None` if the length does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Option<Self> {
        (data.len() == rows * cols).then_some(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return None;
        }
        Some(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn map<F: Clone>(&self, f: impl FnMut(&E) -> F) -> Matrix<F> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn scalar<F: Field>(f: &F, n: usize, s: &F::Elem) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { s.clone() } else { f.zero() })
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "matrix product shape mismatch");
    let mut out = Matrix::from_fn(a.rows, b.cols, |_, _| f.zero());
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if f.is_zero(aik) {
                continue;
            }
            for j in 0..b.cols {
                let bkj = b.get(k, j);
                if f.is_zero(bkj) {
                    continue;
                }
                let cur = out.get(i, j);
                let v = f.add(cur, &f.mul(aik, bkj));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, s: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    a.map(|x| f.mul(s, x))
}

pub fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| f.sub(a.get(i, j), b.get(i, j)))
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| f.add(a.get(i, j), b.get(i, j)))
}

/// `Some(s)` if `a` equals `s * I`.
pub fn as_scalar<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<F::Elem> {
    if !a.is_square() || a.rows == 0 {
        return None;
    }
    let s = a.get(0, 0).clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            let ok = if i == j { *x == s } else { f.is_zero(x) };
            if !ok {
                return None;
            }
        }
    }
    Some(s)
}

/// Index of the lightest nonzero entry in column `col` among rows `from..`.
fn pick_pivot<F: Field>(f: &F, a: &Matrix<F::Elem>, col: usize, from: usize) -> Option<usize> {
    (from..a.rows).filter(|&r| !f.is_zero(a.get(r, col))).min_by_key(|&r| f.weight(a.get(r, col)))
}

fn swap_rows<E>(a: &mut Matrix<E>, r1: usize, r2: usize) {
    if r1 == r2 {
        return;
    }
    let c = a.cols;
    for j in 0..c {
        a.data.swap(r1 * c + j, r2 * c + j);
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = pick_pivot(f, &m, c, r) else {
            continue;
        };
        swap_rows(&mut m, r, pr);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let rj = m.get(r, j);
                if f.is_zero(rj) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, rj));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

/// Rank via forward elimination only.
pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    let mut m = a.clone();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = pick_pivot(f, &m, c, r) else {
            continue;
        };
        swap_rows(&mut m, r, pr);
        let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
        for i in r + 1..m.rows {
            let factor = f.mul(m.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let rj = m.get(r, j);
                if f.is_zero(rj) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, rj));
                m.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Basis of `{x : a x = 0}`, one vector per free column of the echelon form.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (m, pivots) = rref(f, a);
    let mut out = Vec::new();
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..a.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![f.zero(); a.cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m.get(row, free));
        }
        out.push(v);
    }
    out
}

pub fn det<F: Field>(f: &F, a: &Matrix<F::Elem>) -> F::Elem {
    assert!(a.is_square());
    let mut m = a.clone();
    let n = m.rows;
    let mut d = f.one();
    for c in 0..n {
        let Some(pr) = pick_pivot(f, &m, c, c) else {
            return f.zero();
        };
        if pr != c {
            swap_rows(&mut m, c, pr);
            d = f.neg(&d);
        }
        let piv = m.get(c, c).clone();
        d = f.mul(&d, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = f.mul(m.get(i, c), &inv);
            if f.is_zero(&factor) {
                continue;
            }
            for j in c + 1..n {
                let rj = m.get(c, j);
                if f.is_zero(rj) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, rj));
                m.set(i, j, v);
            }
        }
    }
    d
}

pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    if !a.is_square() {
        return None;
    }
    let n = a.rows;
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a.get(i, j).clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let (m, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| m.get(i, n + j).clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fq, Gf};

    fn f5() -> Gf {
        Gf::new(5, &[0, 1]).unwrap()
    }

    fn m(rows: &[&[u8]]) -> Matrix<Fq> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Fq(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let f = f5();
        let a = m(&[&[1, 2, 0], &[3, 1, 4], &[0, 2, 2]]);
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &ai), identity(&f, 3));
    }

    #[test]
    fn singular_has_zero_det_and_kernel() {
        let f = f5();
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(det(&f, &a), Fq(0));
        assert!(inverse(&f, &a).is_none());
        let k = kernel(&f, &a);
        assert_eq!(k.len(), 1);
        let v = Matrix::from_vec(2, 1, k[0].clone()).unwrap();
        assert_eq!(mul(&f, &a, &v), Matrix::from_fn(2, 1, |_, _| Fq(0)));
        assert_eq!(rank(&f, &a), 1);
    }

    #[test]
    fn det_tracks_row_swaps() {
        let f = f5();
        assert_eq!(det(&f, &m(&[&[0, 1], &[1, 0]])), Fq(4));
    }
}
