//! Finite-dimensional 3-Lie algebras presented by structure constants.
//!
//! An [`Algebra`] is a vector space F^n with a trilinear, fully
//! skew-symmetric bracket `[x, y, z]` satisfying the fundamental identity
//!
//! ```text
//! [[x1,x2,x3], y2, y3] = [[x1,y2,y3], x2, x3]
//!                      + [x1, [x2,y2,y3], x3]
//!                      + [x1, x2, [x3,y2,y3]]
//! ```
//!
//! Structure constants are stored only for ordered basis triples i < j < k;
//! every other basis bracket is derived from the permutation sign. Validation
//! checks the fundamental identity on all basis 5-tuples exactly, so a value
//! of this type is a genuine 3-Lie algebra, not just a candidate table.

use crate::matrix::{basis_vector, is_zero_vector, zero_vector, Matrix};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("vector length {got} does not match algebra dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("bracket indices ({0}, {1}, {2}) out of range for dimension {3}")]
    IndexOutOfRange(usize, usize, usize, usize),
    #[error("bracket indices ({0}, {1}, {2}) are not strictly increasing")]
    IndicesNotOrdered(usize, usize, usize),
    #[error("duplicate bracket entry for indices ({0}, {1}, {2})")]
    DuplicateTriple(usize, usize, usize),
    #[error("bracket value has length {got}, expected {expected}")]
    ValueLength { expected: usize, got: usize },
    #[error("fundamental identity fails on {} basis 5-tuple(s)", .0.len())]
    FundamentalIdentity(Vec<FiViolation>),
}

/// One failed instance of the fundamental identity, on basis vectors
/// `(x1, x2, x3)` with `x1 < x2 < x3` replaced through `(y2, y3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiViolation {
    pub x: [usize; 3],
    pub y: [usize; 2],
    pub residual: Vec<Scalar>,
}

/// A validated 3-Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Algebra {
    dim: usize,
    labels: Option<Vec<String>>,
    table: BTreeMap<(usize, usize, usize), Vec<Scalar>>,
}

fn sort_triple(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), i64)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut idx = [i, j, k];
    let mut sign = 1i64;
    // Three comparisons sort a triple; each swap flips the sign.
    if idx[0] > idx[1] {
        idx.swap(0, 1);
        sign = -sign;
    }
    if idx[1] > idx[2] {
        idx.swap(1, 2);
        sign = -sign;
    }
    if idx[0] > idx[1] {
        idx.swap(0, 1);
        sign = -sign;
    }
    Some(((idx[0], idx[1], idx[2]), sign))
}

impl Algebra {
    /// Builds and validates an algebra from `(i, j, k) -> value` entries with
    /// 0-based, strictly increasing indices.
    pub fn new(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: Vec<((usize, usize, usize), Vec<Scalar>)>,
    ) -> Result<Self, AlgebraError> {
        let algebra = Self::new_unchecked(dim, labels, entries)?;
        let violations = algebra.fundamental_identity_violations();
        if violations.is_empty() {
            Ok(algebra)
        } else {
            Err(AlgebraError::FundamentalIdentity(violations))
        }
    }

    /// Structural validation only: the fundamental identity is not checked.
    /// Useful for diagnosing a broken table; everything downstream of a value
    /// built this way is answered relative to the raw table.
    pub fn new_unchecked(
        dim: usize,
        labels: Option<Vec<String>>,
        entries: Vec<((usize, usize, usize), Vec<Scalar>)>,
    ) -> Result<Self, AlgebraError> {
        if let Some(ref l) = labels {
            if l.len() != dim {
                return Err(AlgebraError::ValueLength {
                    expected: dim,
                    got: l.len(),
                });
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j, k), value) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::IndexOutOfRange(i, j, k, dim));
            }
            if !(i < j && j < k) {
                return Err(AlgebraError::IndicesNotOrdered(i, j, k));
            }
            if value.len() != dim {
                return Err(AlgebraError::ValueLength {
                    expected: dim,
                    got: value.len(),
                });
            }
            if table.contains_key(&(i, j, k)) {
                return Err(AlgebraError::DuplicateTriple(i, j, k));
            }
            if !is_zero_vector(&value) {
                table.insert((i, j, k), value);
            }
        }
        Ok(Algebra { dim, labels, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Self {
        self.labels = labels;
        self
    }

    pub fn label(&self, index: usize) -> String {
        match &self.labels {
            Some(l) => l[index].clone(),
            None => format!("e{}", index + 1),
        }
    }

    /// The stored entries, 0-based with i < j < k and nonzero values.
    pub fn stored_entries(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Vec<Scalar>)> {
        self.table.iter()
    }

    /// Bracket of basis vectors `[e_i, e_j, e_k]` in any order.
    pub fn basis_bracket(&self, i: usize, j: usize, k: usize) -> Vec<Scalar> {
        match sort_triple(i, j, k) {
            None => zero_vector(self.dim),
            Some((key, sign)) => match self.table.get(&key) {
                None => zero_vector(self.dim),
                Some(v) => {
                    if sign == 1 {
                        v.clone()
                    } else {
                        v.iter().map(|x| -x).collect()
                    }
                }
            },
        }
    }

    /// Trilinear bracket of arbitrary coordinate vectors. Expands through the
    /// stored triples: the coefficient of `[e_i, e_j, e_k]` in `[x, y, z]` is
    /// the 3x3 minor of the coordinates of x, y, z at columns i, j, k.
    pub fn bracket(
        &self,
        x: &[Scalar],
        y: &[Scalar],
        z: &[Scalar],
    ) -> Result<Vec<Scalar>, AlgebraError> {
        for v in [x, y, z] {
            if v.len() != self.dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: self.dim,
                    got: v.len(),
                });
            }
        }
        let mut out = zero_vector(self.dim);
        for (&(i, j, k), value) in &self.table {
            let minor = {
                let m00 = &x[i];
                let m01 = &x[j];
                let m02 = &x[k];
                let m10 = &y[i];
                let m11 = &y[j];
                let m12 = &y[k];
                let m20 = &z[i];
                let m21 = &z[j];
                let m22 = &z[k];
                &(m00 * &(&(m11 * m22) - &(m12 * m21)))
                    - &(&(m01 * &(&(m10 * m22) - &(m12 * m20)))
                        - &(m02 * &(&(m10 * m21) - &(m11 * m20))))
            };
            if minor.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(value) {
                if !v.is_zero() {
                    *o = &*o + &(&minor * v);
                }
            }
        }
        Ok(out)
    }

    /// Checks the fundamental identity on every basis 5-tuple
    /// `(x1 < x2 < x3, y2, y3)` and reports each failure with its residual.
    pub fn fundamental_identity_violations(&self) -> Vec<FiViolation> {
        let table = BracketTable::new(self);
        let n = self.dim;
        let mut violations = Vec::new();
        for x1 in 0..n {
            for x2 in (x1 + 1)..n {
                for x3 in (x2 + 1)..n {
                    let lhs_inner = table.get(x1, x2, x3);
                    for y2 in 0..n {
                        for y3 in 0..n {
                            let w1 = table.get(x1, y2, y3);
                            let w2 = table.get(x2, y2, y3);
                            let w3 = table.get(x3, y2, y3);
                            if lhs_inner.is_none()
                                && w1.is_none()
                                && w2.is_none()
                                && w3.is_none()
                            {
                                continue;
                            }
                            let mut residual = match lhs_inner {
                                Some(w) => table.bracket_v_e_e(w, y2, y3),
                                None => zero_vector(n),
                            };
                            if let Some(w) = w1 {
                                let t = table.bracket_v_e_e(w, x2, x3);
                                for (r, v) in residual.iter_mut().zip(&t) {
                                    *r = &*r - v;
                                }
                            }
                            if let Some(w) = w2 {
                                let t = table.bracket_e_v_e(x1, w, x3);
                                for (r, v) in residual.iter_mut().zip(&t) {
                                    *r = &*r - v;
                                }
                            }
                            if let Some(w) = w3 {
                                let t = table.bracket_e_e_v(x1, x2, w);
                                for (r, v) in residual.iter_mut().zip(&t) {
                                    *r = &*r - v;
                                }
                            }
                            if !is_zero_vector(&residual) {
                                violations.push(FiViolation {
                                    x: [x1, x2, x3],
                                    y: [y2, y3],
                                    residual,
                                });
                            }
                        }
                    }
                }
            }
        }
        violations
    }

    /// The derived ideal `[A, A, A]`: span of all basis brackets.
    pub fn derived_algebra(&self) -> Subspace {
        let rows: Vec<Vec<Scalar>> = self.table.values().cloned().collect();
        Subspace::from_rows(self.dim, rows)
    }

    /// The center `Z(A) = { x : [x, A, A] = 0 }`, computed as the joint
    /// kernel of the inner maps `ad(e_i, e_j)` for i < j.
    pub fn center(&self) -> Subspace {
        let n = self.dim;
        let mut stacked: Vec<Vec<Scalar>> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let ad = self.ad_basis(i, j);
                stacked.extend(ad.row_vectors());
            }
        }
        Subspace::nullspace_of(&Matrix::from_rows(n, stacked))
    }

    /// Inner map `ad(e_i, e_j) : z -> [e_i, e_j, z]`.
    fn ad_basis(&self, i: usize, j: usize) -> Matrix {
        let n = self.dim;
        Matrix::from_fn(n, n, |r, c| self.basis_bracket(i, j, c)[r].clone())
    }

    /// Inner map `ad(x, y) : z -> [x, y, z]` for arbitrary x, y.
    pub fn ad_map(&self, x: &[Scalar], y: &[Scalar]) -> Result<Matrix, AlgebraError> {
        let n = self.dim;
        let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(n);
        for c in 0..n {
            cols.push(self.bracket(x, y, &basis_vector(n, c))?);
        }
        Ok(Matrix::from_fn(n, n, |r, c| cols[c][r].clone()))
    }

    /// `[s, A, A] contained in s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        let table = BracketTable::new(self);
        for b in s.basis_rows() {
            for i in 0..self.dim {
                for j in (i + 1)..self.dim {
                    if !s.contains_vector(&table.bracket_v_e_e(&b, i, j)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[s, s, s] contained in s`.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        let rows = s.basis_rows();
        for p in 0..rows.len() {
            for q in (p + 1)..rows.len() {
                for r in (q + 1)..rows.len() {
                    let w = self
                        .bracket(&rows[p], &rows[q], &rows[r])
                        .expect("basis rows have ambient length");
                    if !s.contains_vector(&w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[s, s, s] = 0`.
    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        assert_eq!(s.ambient_dim(), self.dim);
        let rows = s.basis_rows();
        for p in 0..rows.len() {
            for q in (p + 1)..rows.len() {
                for r in (q + 1)..rows.len() {
                    let w = self
                        .bracket(&rows[p], &rows[q], &rows[r])
                        .expect("basis rows have ambient length");
                    if !is_zero_vector(&w) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Direct sum: blocks bracket internally, mixed brackets vanish.
    pub fn direct_sum(&self, other: &Algebra) -> Algebra {
        let n = self.dim + other.dim;
        let mut entries: Vec<((usize, usize, usize), Vec<Scalar>)> = Vec::new();
        for (&(i, j, k), value) in &self.table {
            let mut v = zero_vector(n);
            v[..self.dim].clone_from_slice(value);
            entries.push(((i, j, k), v));
        }
        let o = self.dim;
        for (&(i, j, k), value) in &other.table {
            let mut v = zero_vector(n);
            v[o..].clone_from_slice(value);
            entries.push(((i + o, j + o, k + o), v));
        }
        Algebra::new(n, None, entries).expect("direct sum of valid algebras is valid")
    }

    /// The abelian algebra of the given dimension: every bracket vanishes.
    pub fn abelian(dim: usize) -> Algebra {
        Algebra {
            dim,
            labels: None,
            table: BTreeMap::new(),
        }
    }
}

/// Fully expanded ordered-bracket lookup table, used by the constraint
/// assemblers and the identity checkers. Entry `(i, j, k)` is
/// `[e_i, e_j, e_k]`, `None` when zero.
pub struct BracketTable {
    n: usize,
    entries: Vec<Option<Vec<Scalar>>>,
}

impl BracketTable {
    pub fn new(a: &Algebra) -> Self {
        let n = a.dim;
        let mut entries = vec![None; n * n * n];
        for (&(i, j, k), value) in &a.table {
            let perms: [([usize; 3], i64); 6] = [
                ([i, j, k], 1),
                ([j, k, i], 1),
                ([k, i, j], 1),
                ([j, i, k], -1),
                ([i, k, j], -1),
                ([k, j, i], -1),
            ];
            for (idx, sign) in perms {
                let v = if sign == 1 {
                    value.clone()
                } else {
                    value.iter().map(|x| -x).collect()
                };
                entries[idx[0] * n * n + idx[1] * n + idx[2]] = Some(v);
            }
        }
        BracketTable { n, entries }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<&Vec<Scalar>> {
        self.entries[i * self.n * self.n + j * self.n + k].as_ref()
    }

    /// `[w, e_j, e_k]` for a coordinate vector `w`.
    pub fn bracket_v_e_e(&self, w: &[Scalar], j: usize, k: usize) -> Vec<Scalar> {
        let mut out = zero_vector(self.n);
        for (r, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(v) = self.get(r, j, k) {
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
        }
        out
    }

    /// `[e_i, w, e_k]`.
    pub fn bracket_e_v_e(&self, i: usize, w: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = zero_vector(self.n);
        for (r, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(v) = self.get(i, r, k) {
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
        }
        out
    }

    /// `[e_i, e_j, w]`.
    pub fn bracket_e_e_v(&self, i: usize, j: usize, w: &[Scalar]) -> Vec<Scalar> {
        let mut out = zero_vector(self.n);
        for (r, c) in w.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if let Some(v) = self.get(i, j, r) {
                for (o, x) in out.iter_mut().zip(v) {
                    if !x.is_zero() {
                        *o = &*o + &(c * x);
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn a3() -> Algebra {
        catalog::algebra("a3").unwrap().algebra
    }

    fn b4() -> Algebra {
        catalog::algebra("b4").unwrap().algebra
    }

    #[test]
    fn basis_bracket_signs_follow_permutation_parity() {
        let a = a3();
        let e1 = basis_vector(3, 0);
        assert_eq!(a.basis_bracket(0, 1, 2), e1);
        assert_eq!(a.basis_bracket(1, 2, 0), e1); // even rotation
        let neg_e1: Vec<Scalar> = e1.iter().map(|x| -x).collect();
        assert_eq!(a.basis_bracket(1, 0, 2), neg_e1); // one transposition
        assert!(is_zero_vector(&a.basis_bracket(0, 0, 1)));
    }

    #[test]
    fn bracket_is_trilinear_on_concrete_vectors() {
        let a = a3();
        let x = vec![int(1), int(2), int(0)];
        let y = vec![int(0), int(1), int(0)];
        let z = vec![int(0), int(0), int(3)];
        // [x, y, z] = det [[1,2,0],[0,1,0],[0,0,3]] * e1 = 3 e1
        assert_eq!(
            a.bracket(&x, &y, &z).unwrap(),
            vec![int(3), int(0), int(0)]
        );
    }

    #[test]
    fn bracket_rejects_wrong_length() {
        let a = a3();
        let short = vec![int(1)];
        let x = basis_vector(3, 0);
        assert_eq!(
            a.bracket(&short, &x, &x),
            Err(AlgebraError::DimensionMismatch {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn fundamental_identity_holds_on_catalog_algebras() {
        for name in catalog::names() {
            let entry = catalog::algebra(&name).unwrap();
            assert!(
                entry.algebra.fundamental_identity_violations().is_empty(),
                "{name}"
            );
        }
    }

    #[test]
    fn corrupted_structure_constant_breaks_fundamental_identity() {
        // In dimension 3 every single-triple bracket is a multiple of the
        // determinant form and satisfies the identity, so a genuine failure
        // needs dimension 4: here [[e1,e2,e4],e2,e3] = [e1,e2,e3] = e4 but
        // [[e1,e2,e3],e2,e4] = [e4,e2,e4] = 0.
        let entries = vec![
            ((0, 1, 2), vec![int(0), int(0), int(0), int(1)]),
            ((0, 1, 3), vec![int(1), int(0), int(0), int(0)]),
        ];
        let bad = Algebra::new_unchecked(4, None, entries.clone()).unwrap();
        let violations = bad.fundamental_identity_violations();
        assert!(!violations.is_empty());
        assert!(matches!(
            Algebra::new(4, None, entries),
            Err(AlgebraError::FundamentalIdentity(_))
        ));
    }

    #[test]
    fn structural_validation_rejects_bad_entries() {
        assert_eq!(
            Algebra::new(3, None, vec![((0, 2, 1), vec![int(0); 3])]),
            Err(AlgebraError::IndicesNotOrdered(0, 2, 1))
        );
        assert_eq!(
            Algebra::new(3, None, vec![((0, 1, 3), vec![int(0); 3])]),
            Err(AlgebraError::IndexOutOfRange(0, 1, 3, 3))
        );
        assert_eq!(
            Algebra::new(
                3,
                None,
                vec![
                    ((0, 1, 2), vec![int(1), int(0), int(0)]),
                    ((0, 1, 2), vec![int(0), int(0), int(0)])
                ]
            ),
            Err(AlgebraError::DuplicateTriple(0, 1, 2))
        );
        assert_eq!(
            Algebra::new(3, None, vec![((0, 1, 2), vec![int(1)])]),
            Err(AlgebraError::ValueLength {
                expected: 3,
                got: 1
            })
        );
    }

    #[test]
    fn derived_algebra_and_center_of_fixtures() {
        let a = a3();
        assert_eq!(
            a.derived_algebra(),
            Subspace::from_rows(3, vec![basis_vector(3, 0)])
        );
        assert!(a.center().is_zero());

        let b = b4();
        assert_eq!(
            b.derived_algebra(),
            Subspace::from_rows(4, vec![basis_vector(4, 0)])
        );
        assert_eq!(
            b.center(),
            Subspace::from_rows(4, vec![basis_vector(4, 3)])
        );

        let ab = Algebra::abelian(2);
        assert!(ab.derived_algebra().is_zero());
        assert_eq!(ab.center(), Subspace::full(2));
    }

    #[test]
    fn ideals_and_subalgebras_of_fixtures() {
        let a = a3();
        let derived = a.derived_algebra();
        assert!(a.is_ideal(&derived));
        let t = Subspace::from_rows(3, vec![basis_vector(3, 1), basis_vector(3, 2)]);
        assert!(!a.is_ideal(&t)); // [e2, e3, e1] = e1 leaves the span
        assert!(a.is_subalgebra(&t));
        assert!(a.is_abelian_subspace(&t));
        assert!(!a.is_abelian_subspace(&Subspace::full(3)));

        let b = b4();
        assert!(b.is_ideal(&b.center()));
    }

    #[test]
    fn ad_map_of_fixture_basis_pairs() {
        let a = a3();
        let ad23 = a
            .ad_map(&basis_vector(3, 1), &basis_vector(3, 2))
            .unwrap();
        // z -> [e2, e3, z] projects onto the e1 coordinate.
        let mut expected = Matrix::zero(3, 3);
        expected.set(0, 0, int(1));
        assert_eq!(ad23, expected);

        let ad12 = a
            .ad_map(&basis_vector(3, 0), &basis_vector(3, 1))
            .unwrap();
        let mut expected = Matrix::zero(3, 3);
        expected.set(0, 2, int(1));
        assert_eq!(ad12, expected);
    }

    #[test]
    fn ad_maps_are_derivations() {
        // The fundamental identity says exactly that ad(x, y) is a
        // derivation of the bracket; spot-check on concrete vectors.
        let a = b4();
        let x = vec![int(1), int(-2), int(0), int(3)];
        let y = vec![int(0), int(1), int(5), int(0)];
        let ad = a.ad_map(&x, &y).unwrap();
        let u = basis_vector(4, 0);
        let v = basis_vector(4, 1);
        let w = basis_vector(4, 2);
        let lhs = ad.apply(&a.bracket(&u, &v, &w).unwrap());
        let mut rhs = a.bracket(&ad.apply(&u), &v, &w).unwrap();
        for (r, t) in rhs
            .iter_mut()
            .zip(a.bracket(&u, &ad.apply(&v), &w).unwrap())
        {
            *r = &*r + &t;
        }
        for (r, t) in rhs
            .iter_mut()
            .zip(a.bracket(&u, &v, &ad.apply(&w)).unwrap())
        {
            *r = &*r + &t;
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn direct_sum_blocks_do_not_interact() {
        let sum = a3().direct_sum(&a3());
        assert_eq!(sum.dim(), 6);
        // In-block bracket lands in the block.
        assert_eq!(sum.basis_bracket(3, 4, 5), basis_vector(6, 3));
        // Mixed brackets vanish.
        for k in 3..6 {
            assert!(is_zero_vector(&sum.basis_bracket(0, 1, k)));
        }
        let derived = sum.derived_algebra();
        assert_eq!(
            derived,
            Subspace::from_rows(6, vec![basis_vector(6, 0), basis_vector(6, 3)])
        );
        assert!(sum.center().is_zero());

        let with_line = a3().direct_sum(&Algebra::abelian(1));
        assert_eq!(
            with_line.center(),
            Subspace::from_rows(4, vec![basis_vector(4, 3)])
        );
    }

    prop_compose! {
        fn small_vec(n: usize)(coords in prop::collection::vec(-5i64..=5, n)) -> Vec<Scalar> {
            coords.into_iter().map(int).collect()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn bracket_is_alternating_on_random_vectors(
            x in small_vec(4),
            y in small_vec(4),
        ) {
            let b = b4();
            prop_assert!(is_zero_vector(&b.bracket(&x, &x, &y).unwrap()));
            prop_assert!(is_zero_vector(&b.bracket(&x, &y, &x).unwrap()));
            prop_assert!(is_zero_vector(&b.bracket(&y, &x, &x).unwrap()));
        }

        #[test]
        fn bracket_changes_sign_under_transpositions(
            x in small_vec(4),
            y in small_vec(4),
            z in small_vec(4),
        ) {
            let b = b4();
            let xyz = b.bracket(&x, &y, &z).unwrap();
            let yxz = b.bracket(&y, &x, &z).unwrap();
            let xzy = b.bracket(&x, &z, &y).unwrap();
            let zyx = b.bracket(&z, &y, &x).unwrap();
            let neg: Vec<Scalar> = xyz.iter().map(|v| -v).collect();
            prop_assert_eq!(&yxz, &neg);
            prop_assert_eq!(&xzy, &neg);
            prop_assert_eq!(&zyx, &neg);
        }
    }
}
