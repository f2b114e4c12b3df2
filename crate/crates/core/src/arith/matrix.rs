//! Dense matrices over an arbitrary [`Field`] with exact elimination.
//!
//! Subspaces of `F^n` are represented by matrices whose columns form a basis.

use super::field::{Field, PrimeField};
use super::q::Q;
use crate::error::{Error, Result};
use std::fmt::Debug;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

/// Matrix over the rationals.
pub type QMatrix = Matrix<Q>;

impl<E: Debug> Debug for Matrix<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl<E: Clone> Matrix<E> {
    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, v: E) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    /// Builds a matrix from row vectors; `cols` is used when `rows` is empty.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        let r = rows.len();
        let c = if r == 0 { cols } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `len`.
    pub fn from_cols(cols: &[Vec<E>], len: usize, zero: E) -> Self {
        let mut m = Matrix::filled(len, cols.len(), zero);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), len);
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<E>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix<E>) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    /// Concatenates matrices side by side; all must have `rows` rows.
    pub fn hstack(parts: &[&Matrix<E>], rows: usize) -> Self {
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for m in parts {
                assert_eq!(m.rows, rows);
                data.extend_from_slice(m.row(i));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Stacks matrices vertically; all must have `cols` columns.
    pub fn vstack(parts: &[&Matrix<E>], cols: usize) -> Self {
        let rows: usize = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols);
            data.extend_from_slice(&m.data);
        }
        Matrix { rows, cols, data }
    }

    pub fn map<E2: Clone>(&self, g: impl Fn(&E) -> E2) -> Matrix<E2> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(g).collect() }
    }

    pub fn try_map<E2: Clone>(&self, g: impl Fn(&E) -> Option<E2>) -> Option<Matrix<E2>> {
        let data: Option<Vec<E2>> = self.data.iter().map(g).collect();
        data.map(|data| Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }
}

impl<E: Clone + PartialEq + Debug> Matrix<E> {
    pub fn zeros<F: Field<E = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix::filled(rows, cols, f.zero())
    }

    pub fn identity<F: Field<E = E>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn is_zero<F: Field<E = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    pub fn mul<F: Field<E = E>>(&self, f: &F, b: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.cols, b.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(f, self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..b.cols {
                    let bv = b.get(k, j);
                    if f.is_zero(bv) {
                        continue;
                    }
                    let idx = i * b.cols + j;
                    out.data[idx] = f.add(&out.data[idx], &f.mul(a, bv));
                }
            }
        }
        out
    }

    pub fn mul_vec<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add<F: Field<E = E>>(&self, f: &F, b: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.shape(), b.shape());
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
    }

    pub fn sub<F: Field<E = E>>(&self, f: &F, b: &Matrix<E>) -> Matrix<E> {
        assert_eq!(self.shape(), b.shape());
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
    }

    pub fn scale<F: Field<E = E>>(&self, f: &F, c: &E) -> Matrix<E> {
        self.map(|x| f.mul(c, x))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref<F: Field<E = E>>(&self, f: &F) -> (Matrix<E>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
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
                    let pv = m.get(r, j);
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub(m.get(i, j), &f.mul(&factor, pv));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<E = E>>(&self, f: &F) -> usize {
        if self.rows <= self.cols {
            self.rref(f).1.len()
        } else {
            self.transpose().rref(f).1.len()
        }
    }

    /// Basis of the null space `{x : Ax = 0}` as columns.
    pub fn kernel<F: Field<E = E>>(&self, f: &F) -> Matrix<E> {
        let (r, piv) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut k = Matrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, f.one());
            for (i, &pc) in piv.iter().enumerate() {
                let v = f.neg(r.get(i, fc));
                k.set(pc, t, v);
            }
        }
        k
    }

    /// Solves `A X = B`, returning one particular solution and a kernel basis.
    pub fn solve<F: Field<E = E>>(&self, f: &F, b: &Matrix<E>) -> Result<(Matrix<E>, Matrix<E>)> {
        assert_eq!(self.rows, b.rows, "shape mismatch in solve");
        let aug = Matrix::hstack(&[self, b], self.rows);
        let (r, piv) = aug.rref(f);
        if piv.iter().any(|&c| c >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = Matrix::zeros(f, self.cols, b.cols);
        for (i, &pc) in piv.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok((x, self.kernel(f)))
    }

    pub fn inverse<F: Field<E = E>>(&self, f: &F) -> Option<Matrix<E>> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let (r, piv) = Matrix::hstack(&[self, &Matrix::identity(f, n)], n).rref(f);
        if n > 0 && (piv.len() < n || piv[n - 1] != n - 1) {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    /// Canonical basis of the column space (transposed nonzero rows of the rref of the transpose).
    pub fn col_space<F: Field<E = E>>(&self, f: &F) -> Matrix<E> {
        let (r, piv) = self.transpose().rref(f);
        r.block(0, piv.len(), 0, self.rows).transpose()
    }

    /// Whether the vector lies in the column span.
    pub fn spans<F: Field<E = E>>(&self, f: &F, v: &[E]) -> bool {
        let vm = Matrix::from_cols(&[v.to_vec()], v.len(), f.zero());
        let aug = Matrix::hstack(&[self, &vm], self.rows);
        aug.rank(f) == self.rank(f)
    }

    /// Coordinates of `v` in the basis given by the columns (which must be independent).
    pub fn coords<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Option<Vec<E>> {
        let vm = Matrix::from_cols(&[v.to_vec()], v.len(), f.zero());
        self.solve(f, &vm).ok().map(|(x, _)| x.col(0))
    }
}

/// Subspace helpers; subspaces are matrices of basis columns in `F^n`.
pub mod subspace {
    use super::*;

    pub fn span<F: Field>(f: &F, n: usize, cols: &[&Matrix<F::E>]) -> Matrix<F::E> {
        Matrix::hstack(cols, n).col_space(f)
    }

    pub fn dim<E>(s: &Matrix<E>) -> usize {
        s.cols
    }

    pub fn contains<F: Field>(f: &F, big: &Matrix<F::E>, small: &Matrix<F::E>) -> bool {
        let n = big.rows;
        Matrix::hstack(&[big, small], n).rank(f) == big.rank(f)
    }

    pub fn equal<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> bool {
        a.rank(f) == b.rank(f) && contains(f, a, b)
    }

    pub fn intersect<F: Field>(f: &F, a: &Matrix<F::E>, b: &Matrix<F::E>) -> Matrix<F::E> {
        let n = a.rows;
        let neg_b = b.map(|x| f.neg(x));
        let k = Matrix::hstack(&[a, &neg_b], n).kernel(f);
        let coeffs = k.block(0, a.cols, 0, k.cols);
        a.mul(f, &coeffs).col_space(f)
    }

    /// Preimage `{x : M x ∈ S}` of a subspace under a linear map.
    pub fn preimage<F: Field>(f: &F, m: &Matrix<F::E>, s: &Matrix<F::E>) -> Matrix<F::E> {
        let n = m.rows;
        let neg_s = s.map(|x| f.neg(x));
        let k = Matrix::hstack(&[m, &neg_s], n).kernel(f);
        k.block(0, m.cols, 0, k.cols).col_space(f)
    }

    pub fn image<F: Field>(f: &F, m: &Matrix<F::E>, s: &Matrix<F::E>) -> Matrix<F::E> {
        m.mul(f, s).col_space(f)
    }

    /// Columns extending a basis of `sub` to a basis of `sup` (assumes `sub ⊆ sup`).
    pub fn complement<F: Field>(f: &F, sub: &Matrix<F::E>, sup: &Matrix<F::E>) -> Matrix<F::E> {
        let n = sup.rows;
        let aug = Matrix::hstack(&[sub, sup], n);
        let (_, piv) = aug.rref(f);
        let chosen: Vec<usize> = piv.into_iter().filter(|&c| c >= sub.cols).collect();
        aug.select_cols(&chosen)
    }

    /// Projection data for the quotient `sup/sub`: a complement basis `C` and a
    /// map `v ↦ coordinates of v mod sub in C`.
    #[derive(Clone, Debug)]
    pub struct Quotient<E> {
        pub sub: Matrix<E>,
        pub comp: Matrix<E>,
        /// Left inverse of `[sub | comp]` restricted to the complement rows.
        proj: Matrix<E>,
        ambient: usize,
    }

    impl<E: Clone + PartialEq + Debug> Quotient<E> {
        pub fn new<F: Field<E = E>>(f: &F, sub: &Matrix<E>, sup: &Matrix<E>) -> Self {
            let n = sup.rows;
            let comp = complement(f, sub, sup);
            let basis = Matrix::hstack(&[sub, &comp], n);
            // Left inverse via a full-rank extension to F^n.
            let ext = complement(f, &basis, &Matrix::identity(f, n));
            let full = Matrix::hstack(&[&basis, &ext], n);
            let inv = full.inverse(f).expect("extension to a basis is invertible");
            let proj = inv.block(sub.cols, sub.cols + comp.cols, 0, n);
            Quotient { sub: sub.clone(), comp, proj, ambient: n }
        }

        pub fn dim(&self) -> usize {
            self.comp.cols
        }

        pub fn ambient(&self) -> usize {
            self.ambient
        }

        /// Coordinates in the complement basis of a vector of `sup`.
        pub fn project<F: Field<E = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
            self.proj.mul_vec(f, v)
        }

        /// Matrix sending ambient coordinates to quotient coordinates.
        pub fn proj_matrix(&self) -> &Matrix<E> {
            &self.proj
        }
    }
}

impl QMatrix {
    /// Reduction mod p; `None` if some denominator vanishes.
    pub fn mod_p(&self, p: u64) -> Option<Matrix<u64>> {
        self.try_map(|x| x.mod_p(p))
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> QMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from_int(v)).collect()).collect(), cols)
    }

    /// Integer entries, or `None` if some entry is not an integer.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows()).map(|i| self.row(i).iter().map(|x| x.to_i64()).collect()).collect()
    }
}

/// Rank-preservation check used for good-prime detection.
pub fn rank_preserved(m: &QMatrix, p: u64) -> bool {
    match m.mod_p(p) {
        Some(mp) => mp.rank(&PrimeField::new(p)) == m.rank(&super::field::QQ),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::QQ;

    fn qm(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_i64_rows(rows, rows.first().map_or(0, |r| r.len()))
    }

    #[test]
    fn identity_system_has_trivial_kernel() {
        let id = QMatrix::identity(&QQ, 3);
        assert_eq!(id.kernel(&QQ).cols(), 0);
    }

    #[test]
    fn kernel_of_rank_one_over_f2() {
        let f2 = PrimeField::new(2);
        let m = Matrix::from_rows(vec![vec![1u64, 1]], 2);
        let k = m.kernel(&f2);
        assert_eq!(k.columns(), vec![vec![1, 1]]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[vec![2, 1], vec![7, 4]]);
        let inv = m.inverse(&QQ).unwrap();
        assert_eq!(m.mul(&QQ, &inv), QMatrix::identity(&QQ, 2));
    }

    #[test]
    fn inconsistent_system_is_reported() {
        let m = qm(&[vec![1, 1], vec![1, 1]]);
        let b = qm(&[vec![0], vec![1]]);
        assert!(matches!(m.solve(&QQ, &b), Err(Error::Inconsistent)));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = qm(&[vec![1, 0], vec![0, 1], vec![0, 0]]);
        let b = qm(&[vec![0, 0], vec![1, 0], vec![0, 1]]);
        let i = subspace::intersect(&QQ, &a, &b);
        assert_eq!(i.cols(), 1);
        let proj = qm(&[vec![1, 0, 0], vec![0, 0, 0]]);
        let zero = QMatrix::zeros(&QQ, 2, 0);
        assert_eq!(subspace::preimage(&QQ, &proj, &zero).cols(), 2);
    }

    #[test]
    fn quotient_projection() {
        let sup = QMatrix::identity(&QQ, 3);
        let sub = qm(&[vec![1], vec![1], vec![0]]);
        let qt = subspace::Quotient::new(&QQ, &sub, &sup);
        assert_eq!(qt.dim(), 2);
        assert!(qt.project(&QQ, &[Q::one(), Q::one(), Q::zero()]).iter().all(|x| x.is_zero()));
    }
}
