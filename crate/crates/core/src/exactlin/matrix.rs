use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::field::Field;
use crate::error::{Error, Result};

/// A dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.field.format(self.get(r, c)))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data length");
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        Matrix { field: field.clone(), rows: nrows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix column");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(field: &F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        Self::from_vec(field, rows, cols, entries.iter().map(|&v| field.from_i64(v)).collect())
    }

    pub fn from_fn(
        field: &F,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> F::Elem,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn field(&self) -> &F {
        &self.field
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
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn into_data(self) -> Vec<F::Elem> {
        self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        self.field.is_one(v)
                    } else {
                        self.field.is_zero(v)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Shape { expected: (self.cols, rhs.cols), found: rhs.shape() });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, rhs.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if f.is_zero(a) {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(rrow) {
                    f.mul_add_assign(o, a, b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on a shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    f.mul_add_assign(&mut acc, a, b);
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, rhs: &Self, op: impl Fn(&F::Elem, &F::Elem) -> F::Elem) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "elementwise shape mismatch");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| op(a, b)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| self.field.add(a, b))
    }
    pub fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, |a, b| self.field.sub(a, b))
    }
    pub fn scale(&self, s: &F::Elem) -> Self {
        let data = self.data.iter().map(|a| self.field.mul(a, s)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }
    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|a| self.field.neg(a)).collect();
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row mismatch");
        Self::from_fn(&self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Matrix { field: self.field.clone(), rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(field: &F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, idx.len(), self.cols, |r, c| self.get(idx[r], c).clone())
    }
    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, idx.len(), |r, c| self.get(r, idx[c]).clone())
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let f = &self.field;
        Self::from_fn(f, self.rows * rhs.rows, self.cols * rhs.cols, |r, c| {
            f.mul(self.get(r / rhs.rows, c / rhs.cols), rhs.get(r % rhs.rows, c % rhs.cols))
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !f.is_zero(self.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("nonzero pivot");
            if !f.is_one(&inv) {
                for j in c..cols {
                    let v = f.mul(self.get(r, j), &inv);
                    self.set(r, j, v);
                }
            }
            let pivot_row: Vec<F::Elem> = self.data[r * cols + c..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                let factor = f.neg(&factor);
                let row = &mut self.data[i * cols + c..(i + 1) * cols];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    f.mul_add_assign(x, &factor, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space: column vectors `v` with `self · v = 0`.
    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, vectors)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_rows(&self.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let (r, pivots) = self.hstack(&Self::identity(&self.field, n)).rref();
        (pivots.len() >= n && pivots[n - 1] == n - 1).then(|| r.block(0, n, n, n))
    }

    /// Solves `self · X = rhs`, returning a particular solution and the
    /// homogeneous kernel.
    pub fn solve(&self, rhs: &Self) -> Result<Solution<F>> {
        if self.rows != rhs.rows {
            return Err(Error::Shape { expected: (self.rows, rhs.cols), found: rhs.shape() });
        }
        let n = self.cols;
        let (r, pivots) = self.hstack(rhs).rref();
        if pivots.iter().any(|&p| p >= n) {
            return Err(Error::Inconsistent);
        }
        let mut x = Self::zeros(&self.field, n, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for k in 0..rhs.cols {
                x.set(p, k, r.get(i, n + k).clone());
            }
        }
        debug_assert!(self.mul(&x) == *rhs);
        Ok(Solution { particular: x, kernel: self.kernel() })
    }

    /// Solves `self · x = b` for a single vector.
    pub fn solve_vec(&self, b: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let rhs = Self::from_columns(&self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve(&rhs)?.particular.col(0))
    }
}

/// Result of [`Matrix::solve`].
#[derive(Debug, Clone)]
pub struct Solution<F: Field> {
    pub particular: Matrix<F>,
    pub kernel: Subspace<F>,
}

/// A linear subspace of `F^n`, stored as a reduced-row-echelon basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// The row space of `m`.
    pub fn from_rows(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.block(0, 0, pivots.len(), m.cols);
        Subspace { ambient: m.cols, basis, pivots }
    }

    pub fn span(field: &F, ambient: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        Self::from_rows(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn field(&self) -> &F {
        self.basis.field()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    /// Basis vectors as the rows of a matrix in reduced row echelon form.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }
    /// Matrix whose columns are the basis vectors (the inclusion map).
    pub fn inclusion(&self) -> Matrix<F> {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in
    /// the subspace.
    pub fn coords(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = self.field();
        let c: Vec<F::Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (i, ci) in c.iter().enumerate() {
            if f.is_zero(ci) {
                continue;
            }
            let nc = f.neg(ci);
            for (x, b) in residual.iter_mut().zip(self.basis.row(i)) {
                f.mul_add_assign(x, &nc, b);
            }
        }
        residual.iter().all(|x| f.is_zero(x)).then_some(c)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    /// Vector with the given coordinates.
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(coords.len(), self.dim(), "coordinate length");
        let f = self.field();
        let mut v = alloc::vec![f.zero(); self.ambient];
        for (i, c) in coords.iter().enumerate() {
            for (x, b) in v.iter_mut().zip(self.basis.row(i)) {
                f.mul_add_assign(x, c, b);
            }
        }
        v
    }

    pub fn sum(&self, other: &Self) -> Self {
        Self::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // solve a·B1 = b·B2 via the kernel of [B1; -B2]^T
        let f = self.field();
        let stacked = self.basis.vstack(&other.basis.neg()).transpose();
        let k = stacked.kernel();
        let vectors = k
            .basis_vectors()
            .into_iter()
            .map(|c| self.combine(&c[..self.dim()]))
            .collect();
        Self::span(f, self.ambient, vectors)
    }

    /// Projection onto a canonical complement of this subspace.
    ///
    /// The complement is spanned by the standard coordinates that are not
    /// pivots of the echelon basis.
    pub fn quotient(&self) -> Quotient<F> {
        let f = self.field();
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        // π(v) = (v - Σ v[p_i] b_i) restricted to the complement coordinates
        let mut projection = Matrix::zeros(f, complement.len(), n);
        for (qi, &c) in complement.iter().enumerate() {
            projection.set(qi, c, f.one());
            for (i, &p) in self.pivots.iter().enumerate() {
                let b = self.basis.get(i, c);
                if !f.is_zero(b) {
                    projection.set(qi, p, f.neg(b));
                }
            }
        }
        let mut lift = Matrix::zeros(f, n, complement.len());
        for (qi, &c) in complement.iter().enumerate() {
            lift.set(c, qi, f.one());
        }
        Quotient { complement, projection, lift }
    }
}

/// A quotient `F^n / U` with canonical complement coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient<F: Field> {
    /// Standard coordinates spanning the chosen complement of `U`.
    pub complement: Vec<usize>,
    /// `π: F^n → F^n/U`, kernel exactly `U`.
    pub projection: Matrix<F>,
    /// Section of `π` sending quotient basis vector `j` to `e_{complement[j]}`.
    pub lift: Matrix<F>,
}

impl<F: Field> Quotient<F> {
    pub fn dim(&self) -> usize {
        self.complement.len()
    }
}

/// `quotient_basis(ambient, sub)`: complement coordinates and projection.
pub fn quotient_basis<F: Field>(ambient: usize, sub: &Subspace<F>) -> Quotient<F> {
    assert_eq!(ambient, sub.ambient_dim(), "ambient dimension");
    sub.quotient()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::field::{PrimeField, Rationals};

    fn q(rows: usize, cols: usize, e: &[i64]) -> Matrix<Rationals> {
        Matrix::from_i64(&Rationals, rows, cols, e)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = q(1, 1, &[0]).rref();
        assert_eq!(r, q(1, 1, &[0]));
        assert!(p.is_empty());
        let (r, p) = Matrix::identity(&Rationals, 2).rref();
        assert!(r.is_identity());
        assert_eq!(p, [0, 1]);
        let (r, p) = q(2, 2, &[2, 4, 1, 2]).rref();
        assert_eq!(r, q(2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, [0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(&Rationals, 3).kernel().dim(), 0);
        assert_eq!(q(2, 3, &[0; 6]).kernel().dim(), 3);
        let f5 = PrimeField::new(5).unwrap();
        let k = Matrix::from_i64(&f5, 1, 2, &[1, 1]).kernel();
        assert_eq!(k.basis_vectors(), [vec![1, 4]]);
    }

    #[test]
    fn image_examples() {
        assert_eq!(Matrix::identity(&Rationals, 3).image().dim(), 3);
        assert_eq!(q(2, 2, &[0; 4]).image().dim(), 0);
        let im = q(2, 2, &[1, 2, 2, 4]).image();
        assert_eq!(im.basis(), &q(1, 2, &[1, 2]));
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(&Rationals, 2);
        let v = q(2, 1, &[3, -1]);
        assert_eq!(id.solve(&v).unwrap().particular, v);
        assert_eq!(q(2, 2, &[0; 4]).solve(&q(2, 1, &[1, 0])).unwrap_err(), Error::Inconsistent);
        let s = q(1, 2, &[1, 1]).solve(&q(1, 1, &[3])).unwrap();
        assert_eq!(s.particular, q(2, 1, &[3, 0]));
        assert_eq!(s.kernel.basis(), &q(1, 2, &[1, -1]));
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::full(&Rationals, 2);
        assert_eq!(quotient_basis(2, &full).dim(), 0);
        let zero = Subspace::zero(&Rationals, 2);
        assert!(quotient_basis(2, &zero).projection.is_identity());
        let line = Subspace::span(&Rationals, 2, vec![q(1, 2, &[1, 2]).into_data()]);
        let qb = quotient_basis(2, &line);
        assert_eq!(qb.complement, [1]);
        assert!(qb.projection.mul(&line.inclusion()).is_zero());
        assert!(qb.projection.mul(&qb.lift).is_identity());
    }

    #[test]
    fn inverse_and_intersection() {
        let m = q(2, 2, &[1, 2, 3, 4]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(q(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let a = Subspace::span(&Rationals, 3, vec![q(1, 3, &[1, 0, 0]).into_data(), q(1, 3, &[0, 1, 0]).into_data()]);
        let b = Subspace::span(&Rationals, 3, vec![q(1, 3, &[0, 1, 0]).into_data(), q(1, 3, &[0, 0, 1]).into_data()]);
        assert_eq!(a.intersection(&b).basis(), &q(1, 3, &[0, 1, 0]));
        assert_eq!(a.sum(&b).dim(), 3);
    }
}
