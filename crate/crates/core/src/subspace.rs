//! Canonical subspaces of F^d.
//!
//! A [`Subspace`] stores the unique reduced-row-echelon basis of its span, so
//! two values compare equal exactly when they are the same subspace. All the
//! theorem checks in this crate bottom out in equalities and containments of
//! these canonical forms.

use crate::matrix::{
    is_zero_vector, nullspace_rows, rref, zero_vector, LinalgError, Matrix, RowAccumulator,
};
use crate::scalar::Scalar;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix, // RREF rows, full row rank
}

impl Subspace {
    /// The span of the given rows, canonicalized.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let mut acc = RowAccumulator::new(ambient_dim);
        for row in rows {
            acc.insert(row);
        }
        let (rows, _) = acc.into_parts();
        Subspace {
            ambient_dim,
            basis: Matrix::from_rows(ambient_dim, rows),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
        }
    }

    /// `{ x : m x = 0 }` as a canonical subspace of F^(m.cols()).
    pub fn nullspace_of(m: &Matrix) -> Self {
        let rows = nullspace_rows(m);
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::from_rows(m.cols(), rows),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// The canonical (RREF) basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            Err(LinalgError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ))
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::from_rows(self.ambient_dim, rows))
    }

    /// Intersection via annihilators: U cap V = (U^perp + V^perp)^perp,
    /// where the annihilator of a row space is the nullspace of its basis.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut dual_rows = nullspace_rows(&self.basis);
        dual_rows.extend(nullspace_rows(&other.basis));
        let stacked = Matrix::from_rows(self.ambient_dim, dual_rows);
        Ok(Subspace::nullspace_of(&stacked))
    }

    /// Whether `other` is contained in `self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok((0..other.basis.rows()).all(|r| self.contains_vector(other.basis.row(r))))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        is_zero_vector(&self.reduce(v))
    }

    /// Reduces `v` modulo this subspace (the residual is zero iff `v` lies
    /// in the span).
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for r in 0..self.basis.rows() {
            let row = self.basis.row(r);
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if w[lead].is_zero() {
                continue;
            }
            let factor = w[lead].clone();
            for c in lead..self.ambient_dim {
                if !row[c].is_zero() {
                    w[c] = &w[c] - &(&factor * &row[c]);
                }
            }
        }
        w
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not in
    /// the subspace. Because the basis is in RREF, the coordinate of basis
    /// row `r` is just the entry of `v` at that row's pivot column.
    pub fn coordinates_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        let mut coords = Vec::with_capacity(self.basis.rows());
        let mut residual = v.to_vec();
        for r in 0..self.basis.rows() {
            let row = self.basis.row(r);
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            let factor = residual[lead].clone();
            if !factor.is_zero() {
                for c in lead..self.ambient_dim {
                    if !row[c].is_zero() {
                        residual[c] = &residual[c] - &(&factor * &row[c]);
                    }
                }
            }
            coords.push(factor);
        }
        if is_zero_vector(&residual) {
            Some(coords)
        } else {
            None
        }
    }

    /// The coordinate complement: the span of the standard basis vectors at
    /// the non-pivot columns of the canonical basis. Deterministic, and a
    /// true complement (direct sum with `self` is the whole ambient space).
    pub fn complement(&self) -> Subspace {
        let (_, pivots) = rref(&self.basis);
        let mut is_pivot = vec![false; self.ambient_dim];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows: Vec<Vec<Scalar>> = (0..self.ambient_dim)
            .filter(|&c| !is_pivot[c])
            .map(|c| {
                let mut v = zero_vector(self.ambient_dim);
                v[c] = Scalar::one();
                v
            })
            .collect();
        Subspace::from_rows(self.ambient_dim, rows)
    }
}
