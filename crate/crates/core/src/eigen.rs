//! Exact simultaneous eigendecomposition of commuting operator families.
//!
//! Eigenvalues are found symbolically: the characteristic polynomial is
//! computed by the Faddeev-LeVerrier recursion, cleared to an integer
//! polynomial, and its rational roots are enumerated with the rational-root
//! theorem. If the rational roots do not account for the full degree, or the
//! geometric multiplicities do not fill the space, the decomposition fails
//! loudly instead of returning an approximate answer.

use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EigenError {
    #[error("operators do not commute pairwise")]
    NotCommuting,
    #[error("an operator has irrational eigenvalues")]
    NonRationalSpectrum,
    #[error("an operator is not diagonalizable")]
    NotDiagonalizable,
    #[error("the subspace is not invariant under the operators")]
    SpaceNotInvariant,
}

/// Characteristic polynomial coefficients, constant term first, leading
/// coefficient 1. Faddeev-LeVerrier: exact over the rationals.
pub fn char_poly(m: &Matrix) -> Vec<Scalar> {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = Matrix::identity(n);
    for k in 1..=n {
        let am = m.mul(&aux);
        let c = -(am.trace() / Scalar::from_integer(BigInt::from(k as i64)));
        coeffs[n - k] = c.clone();
        let mut shifted = am;
        for i in 0..n {
            let v = shifted.get(i, i) + &c;
            shifted.set(i, i, v);
        }
        aux = shifted;
    }
    coeffs
}

fn positive_divisors(value: &BigUint) -> Vec<BigUint> {
    assert!(!value.is_zero());
    let mut small = Vec::new();
    let mut large = Vec::new();
    let one = BigUint::one();
    let mut d = one.clone();
    while &d * &d <= *value {
        if (value % &d).is_zero() {
            small.push(d.clone());
            let q = value / &d;
            if q != d {
                large.push(q);
            }
        }
        d += &one;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Divides `poly` by `(x - root)`; `poly` must vanish at `root`.
fn deflate(poly: &[Scalar], root: &Scalar) -> Vec<Scalar> {
    let deg = poly.len() - 1;
    let mut quotient = vec![Scalar::zero(); deg];
    let mut carry = Scalar::zero();
    for i in (0..deg).rev() {
        carry = &poly[i + 1] + &(root * &carry);
        quotient[i] = carry.clone();
    }
    let remainder = &poly[0] + &(root * &quotient[0]);
    debug_assert!(remainder.is_zero(), "deflation at a non-root");
    quotient
}

fn eval_poly(poly: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = Scalar::zero();
    for c in poly.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// All rational roots with multiplicity, via the rational-root theorem on the
/// integer-cleared polynomial. `None` when the roots found do not exhaust the
/// degree (an irrational or complex eigenvalue exists).
pub fn rational_roots(poly: &[Scalar]) -> Option<Vec<(Scalar, usize)>> {
    assert!(!poly.is_empty());
    let mut work = poly.to_vec();
    let mut roots: Vec<(Scalar, usize)> = Vec::new();

    // Roots at zero first.
    let mut zero_mult = 0usize;
    while work.len() > 1 && work[0].is_zero() {
        work.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        roots.push((Scalar::zero(), zero_mult));
    }
    if work.len() == 1 {
        return Some(roots);
    }

    // Clear denominators to get an integer polynomial.
    let mut lcm = BigInt::one();
    for c in &work {
        lcm = lcm.lcm(c.denom());
    }
    let int_coeffs: Vec<BigInt> = work
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let lead = int_coeffs.last().unwrap().magnitude().clone();
    let constant = int_coeffs[0].magnitude().clone();

    let mut candidates: Vec<Scalar> = Vec::new();
    for p in positive_divisors(&constant) {
        for q in positive_divisors(&lead) {
            let pos = BigRational::new(BigInt::from(p.clone()), BigInt::from(q.clone()));
            candidates.push(-pos.clone());
            candidates.push(pos);
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        let mut mult = 0usize;
        while work.len() > 1 && eval_poly(&work, &cand).is_zero() {
            work = deflate(&work, &cand);
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
        if work.len() == 1 {
            break;
        }
    }

    if work.len() == 1 {
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Some(roots)
    } else {
        None // an irreducible factor of positive degree has no rational root
    }
}

/// Restricts `op` to an invariant subspace, expressing it in the subspace's
/// canonical basis. Fails if the subspace is not actually invariant.
fn restrict(op: &Matrix, space: &Subspace) -> Result<Matrix, EigenError> {
    let k = space.dim();
    let mut cols: Vec<Vec<Scalar>> = Vec::with_capacity(k);
    for r in 0..k {
        let image = op.apply(space.basis().row(r));
        let coords = space
            .coordinates_of(&image)
            .ok_or(EigenError::SpaceNotInvariant)?;
        cols.push(coords);
    }
    Ok(Matrix::from_fn(k, k, |r, c| cols[c][r].clone()))
}

fn eigenspaces_within(
    op: &Matrix,
    space: &Subspace,
) -> Result<Vec<(Scalar, Subspace)>, EigenError> {
    let k = space.dim();
    if k == 0 {
        return Ok(Vec::new());
    }
    let restricted = restrict(op, space)?;
    let poly = char_poly(&restricted);
    let roots = rational_roots(&poly).ok_or(EigenError::NonRationalSpectrum)?;
    let mut out = Vec::new();
    let mut total_geometric = 0usize;
    for (value, _) in roots {
        let mut shifted = restricted.clone();
        for i in 0..k {
            let v = shifted.get(i, i) - &value;
            shifted.set(i, i, v);
        }
        let kernel = Subspace::nullspace_of(&shifted);
        total_geometric += kernel.dim();
        // Lift from subspace coordinates back to the ambient space.
        let lifted: Vec<Vec<Scalar>> = kernel
            .basis_rows()
            .into_iter()
            .map(|coords| {
                let m = Matrix::from_rows(k, vec![coords]);
                m.mul(space.basis()).row(0).to_vec()
            })
            .collect();
        out.push((
            value,
            Subspace::from_rows(space.ambient_dim(), lifted),
        ));
    }
    if total_geometric != k {
        return Err(EigenError::NotDiagonalizable);
    }
    Ok(out)
}

/// Joint eigenspace decomposition of a family of commuting operators with
/// rational spectra. Returns `(eigenvalue tuple, eigenspace)` pairs sorted by
/// tuple; the spaces are independent and sum to the whole ambient space. An
/// empty family yields a single entry: the empty tuple with the full space.
pub fn simultaneous_eigenspaces(
    ops: &[Matrix],
) -> Result<Vec<(Vec<Scalar>, Subspace)>, EigenError> {
    let dim = ops.first().map_or(0, |m| m.rows());
    simultaneous_eigenspaces_within(ops, &Subspace::full(dim))
}

/// Like [`simultaneous_eigenspaces`] but decomposing a given subspace, which
/// must be invariant under every operator. The returned eigenspaces sum to
/// `initial`.
pub fn simultaneous_eigenspaces_within(
    ops: &[Matrix],
    initial: &Subspace,
) -> Result<Vec<(Vec<Scalar>, Subspace)>, EigenError> {
    let dim = initial.ambient_dim();
    for op in ops {
        assert!(op.is_square() && op.rows() == dim, "operators must be square of equal size");
    }
    for i in 0..ops.len() {
        for j in (i + 1)..ops.len() {
            if ops[i].mul(&ops[j]) != ops[j].mul(&ops[i]) {
                return Err(EigenError::NotCommuting);
            }
        }
    }
    let mut parts: Vec<(Vec<Scalar>, Subspace)> = vec![(Vec::new(), initial.clone())];
    for op in ops {
        let mut refined = Vec::new();
        for (tuple, space) in parts {
            for (value, sub) in eigenspaces_within(op, &space)? {
                let mut t = tuple.clone();
                t.push(value);
                refined.push((t, sub));
            }
        }
        parts = refined;
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn m(rows: Vec<Vec<i64>>) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            cols,
            rows.into_iter()
                .map(|r| r.into_iter().map(int).collect())
                .collect(),
        )
    }

    fn diag(values: Vec<i64>) -> Matrix {
        let n = values.len();
        Matrix::from_fn(n, n, |r, c| if r == c { int(values[r]) } else { int(0) })
    }

    #[test]
    fn char_poly_of_companion_like_matrix() {
        // [[0, -1], [1, 0]] has characteristic polynomial x^2 + 1.
        let p = char_poly(&m(vec![vec![0, -1], vec![1, 0]]));
        assert_eq!(p, vec![int(1), int(0), int(1)]);
    }

    #[test]
    fn rational_roots_of_integer_polynomial() {
        // (x - 2)(x + 1/2) * 2 = 2x^2 - 3x - 2
        let poly = vec![int(-2), int(-3), int(2)];
        let roots = rational_roots(&poly).unwrap();
        assert_eq!(roots, vec![(frac(-1, 2), 1), (int(2), 1)]);
    }

    #[test]
    fn rational_roots_reports_irrational_spectra() {
        // x^2 - 2 has no rational roots.
        assert!(rational_roots(&[int(-2), int(0), int(1)]).is_none());
    }

    #[test]
    fn empty_family_yields_full_space() {
        let parts = simultaneous_eigenspaces(&[]).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, Vec::<Scalar>::new());
        assert_eq!(parts[0].1, Subspace::full(0));
    }

    #[test]
    fn single_diagonal_operator_splits_by_eigenvalue() {
        let parts = simultaneous_eigenspaces(&[diag(vec![1, 1, 0])]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].0, vec![int(0)]);
        assert_eq!(parts[0].1.dim(), 1);
        assert!(parts[0].1.contains_vector(&[int(0), int(0), int(1)]));
        assert_eq!(parts[1].0, vec![int(1)]);
        assert_eq!(parts[1].1.dim(), 2);
    }

    #[test]
    fn two_commuting_operators_refine_each_other() {
        let a = diag(vec![1, 1, 0]);
        let b = diag(vec![2, 3, 3]);
        let parts = simultaneous_eigenspaces(&[a, b]).unwrap();
        let dims: Vec<usize> = parts.iter().map(|(_, s)| s.dim()).collect();
        assert_eq!(parts.len(), 3);
        assert_eq!(dims.iter().sum::<usize>(), 3);
        assert!(parts.iter().all(|(_, s)| s.dim() == 1));
    }

    #[test]
    fn eigenvalues_reproduce_on_eigenvectors() {
        // A non-diagonal but diagonalizable pair: conjugate diagonals by an
        // integer change of basis.
        let p = m(vec![vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let p_inv = m(vec![vec![1, -1, 1], vec![0, 1, -1], vec![0, 0, 1]]);
        let a = p.mul(&diag(vec![2, 2, 5])).mul(&p_inv);
        let b = p.mul(&diag(vec![7, 1, 1])).mul(&p_inv);
        let parts = simultaneous_eigenspaces(&[a.clone(), b.clone()]).unwrap();
        let mut total = 0;
        for (tuple, space) in &parts {
            total += space.dim();
            for row in space.basis_rows() {
                let im_a = a.apply(&row);
                let im_b = b.apply(&row);
                let expect_a: Vec<Scalar> = row.iter().map(|x| &tuple[0] * x).collect();
                let expect_b: Vec<Scalar> = row.iter().map(|x| &tuple[1] * x).collect();
                assert_eq!(im_a, expect_a);
                assert_eq!(im_b, expect_b);
            }
        }
        assert_eq!(total, 3);
    }

    #[test]
    fn non_commuting_operators_are_rejected() {
        let a = m(vec![vec![0, 1], vec![0, 0]]);
        let b = m(vec![vec![1, 0], vec![0, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(&[a, b]),
            Err(EigenError::NotCommuting)
        );
    }

    #[test]
    fn irrational_spectrum_is_rejected() {
        let rot = m(vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(&[rot]),
            Err(EigenError::NonRationalSpectrum)
        );
    }

    #[test]
    fn nilpotent_operator_is_rejected_as_non_diagonalizable() {
        let nil = m(vec![vec![0, 1], vec![0, 0]]);
        assert_eq!(
            simultaneous_eigenspaces(&[nil]),
            Err(EigenError::NotDiagonalizable)
        );
    }
}
