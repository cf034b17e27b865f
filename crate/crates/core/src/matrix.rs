//! Dense matrices over exact rationals: arithmetic, reduced row-echelon form,
//! nullspaces and exact linear solves.
//!
//! The row-echelon machinery is shared by everything above it: subspace
//! canonicalization, constraint-system nullspaces and eigenspace extraction
//! all funnel through [`RowAccumulator`], which keeps an exact RREF basis
//! while rows are inserted one at a time. Constraint rows produced by the
//! algebra layers are extremely sparse, and the accumulator skips zero
//! coefficients aggressively, which is what keeps the larger systems (a few
//! thousand rows over a hundred-plus columns) fast.

use crate::scalar::Scalar;
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// Coordinate vector helpers. Vectors are plain `Vec<Scalar>` throughout.
pub fn zero_vector(len: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); len]
}

/// The standard basis vector `e_index` of the given length.
pub fn basis_vector(len: usize, index: usize) -> Vec<Scalar> {
    assert!(index < len, "basis index {index} out of range {len}");
    let mut v = zero_vector(len);
    v[index] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| c * x).collect()
}

/// Adds `c * v` into `acc` in place, skipping zero coefficients.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(c * x);
        }
    }
}

/// A dense rows x cols matrix in row-major order.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have width `cols`;
    /// the explicit width keeps the empty-row-list case unambiguous.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n_rows = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row in matrix construction");
            entries.extend(row);
        }
        Matrix {
            rows: n_rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Reinterprets a flat row-major coordinate vector as a matrix.
    pub fn from_flat(rows: usize, cols: usize, flat: &[Scalar]) -> Self {
        assert_eq!(flat.len(), rows * cols);
        Matrix {
            rows,
            cols,
            entries: flat.to_vec(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major flattening; the inverse of [`Matrix::from_flat`].
    pub fn to_flat(&self) -> Vec<Scalar> {
        self.entries.clone()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| c * x).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(r, c) + &(a * b);
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut out = Matrix::identity(self.rows);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in apply");
        let mut out = zero_vector(self.rows);
        for r in 0..self.rows {
            let mut acc = Scalar::zero();
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() && !v[c].is_zero() {
                    acc = &acc + &(a * &v[c]);
                }
            }
            out[r] = acc;
        }
        out
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut acc = Scalar::zero();
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental reduced-row-echelon builder.
///
/// Rows can be inserted in any order; after every insertion the stored rows
/// form the (unique) RREF basis of the span of everything inserted so far,
/// sorted by pivot column.
pub struct RowAccumulator {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowAccumulator {
    pub fn new(cols: usize) -> Self {
        RowAccumulator {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn insert(&mut self, mut row: Vec<Scalar>) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        // Reduce the incoming row against the current basis.
        for (idx, &p) in self.pivots.iter().enumerate() {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            let pivot_row = &self.rows[idx];
            for c in p..self.cols {
                if !pivot_row[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot_row[c]);
                }
            }
        }
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            return; // dependent row
        };
        if !row[lead].is_one() {
            let inv = row[lead].clone();
            for c in lead..self.cols {
                if !row[c].is_zero() {
                    row[c] = &row[c] / &inv;
                }
            }
        }
        // Clear the new pivot column from every existing row.
        for existing in self.rows.iter_mut() {
            if existing[lead].is_zero() {
                continue;
            }
            let factor = existing[lead].clone();
            for c in lead..self.cols {
                if !row[c].is_zero() {
                    existing[c] = &existing[c] - &(&factor * &row[c]);
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows_ref(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn into_parts(self) -> (Vec<Vec<Scalar>>, Vec<usize>) {
        (self.rows, self.pivots)
    }
}

/// Reduced row-echelon form. Returns the echelon matrix (same shape as the
/// input, zero rows at the bottom) together with the pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut acc = RowAccumulator::new(m.cols());
    for r in 0..m.rows() {
        acc.insert(m.row(r).to_vec());
    }
    let (mut rows, pivots) = acc.into_parts();
    while rows.len() < m.rows() {
        rows.push(zero_vector(m.cols()));
    }
    (Matrix::from_rows(m.cols(), rows), pivots)
}

/// A basis (as rows, in RREF) for `{ x : m x = 0 }`.
pub fn nullspace_rows(m: &Matrix) -> Vec<Vec<Scalar>> {
    let mut acc = RowAccumulator::new(m.cols());
    for r in 0..m.rows() {
        acc.insert(m.row(r).to_vec());
    }
    let (rows, pivots) = acc.into_parts();
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; m.cols()];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..m.cols() {
        if pivot_set[free] {
            continue;
        }
        let mut v = zero_vector(m.cols());
        v[free] = Scalar::one();
        for (idx, &p) in pivots.iter().enumerate() {
            let coeff = &rows[idx][free];
            if !coeff.is_zero() {
                v[p] = -coeff.clone();
            }
        }
        basis.push(v);
    }
    // The free-column construction is not itself in RREF; canonicalize.
    let mut canon = RowAccumulator::new(m.cols());
    for row in basis {
        canon.insert(row);
    }
    canon.into_parts().0
}

/// One exact solution of `a x = b`, with free variables pinned to zero
/// (so the result is the least-index particular solution for the given
/// column order). `None` when the system is inconsistent.
pub fn solve_exact(a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let cols = a.cols();
    let mut acc = RowAccumulator::new(cols + 1);
    for r in 0..a.rows() {
        let mut row = a.row(r).to_vec();
        row.push(b[r].clone());
        acc.insert(row);
    }
    let (rows, pivots) = acc.into_parts();
    let mut x = zero_vector(cols);
    for (idx, &p) in pivots.iter().enumerate() {
        if p == cols {
            return None; // pivot in the augmented column: inconsistent
        }
        x[p] = rows[idx][cols].clone();
    }
    Some(x)
}
