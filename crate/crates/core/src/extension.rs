//! The tensor extension of an algebra and the embedding of
//! quasiderivations as derivations of it.
//!
//! For an n-dimensional algebra A, the extension à lives on F^(3n) with
//! basis blocks (At, At², At³) ordered t-block first; the only nonzero
//! brackets are [a t, b t, c t] = [a, b, c] t³, landing in the third block.
//! A quasiderivation pair (f, f') embeds as the map
//!
//! ```text
//! l(f)(at + bt² + (c + u)t³) = f(a)t + f'(c)t³
//! ```
//!
//! where the t³ component is split as c + u with c in the derived ideal
//! [A,A,A] and u in a fixed complement U. The embedded map is always a
//! derivation of Ã, and when A has trivial center, the derivations of Ã
//! decompose as the embedded quasiderivations plus the central derivations
//! of Ã (maps into the center of Ã that kill its derived ideal), with zero
//! intersection; the central derivations form an ideal of der(Ã).

use crate::algebra::Algebra;
use crate::map_spaces::{der, map_bracket, qder_pairs, zder, MapSpace, QDerPair};
use crate::matrix::{basis_vector, sub_vectors, zero_vector, Matrix};
use crate::subspace::Subspace;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtensionError {
    #[error("the pair does not satisfy the quasiderivation identity on the base algebra")]
    InvalidPair,
    #[error("the base algebra has nonzero center; the decomposition needs Z = 0")]
    CenterNotZero,
}

#[derive(Debug, Clone)]
pub struct ExtendedAlgebra {
    pub base: Algebra,
    pub algebra: Algebra,
    /// Complement U with [A,A,A] ⊕ U = A, fixed from non-pivot coordinates.
    pub u_complement: Subspace,
}

pub fn extend(a: &Algebra) -> ExtendedAlgebra {
    let n = a.dim();
    let mut entries = Vec::new();
    for (&(i, j, k), value) in a.stored_entries() {
        let mut v = zero_vector(3 * n);
        for (r, c) in value.iter().enumerate() {
            v[2 * n + r] = c.clone();
        }
        entries.push(((i, j, k), v));
    }
    let algebra = Algebra::new(3 * n, None, entries)
        .expect("extension of a valid algebra is valid");
    ExtendedAlgebra {
        base: a.clone(),
        algebra,
        u_complement: a.derived_algebra().complement(),
    }
}

impl ExtendedAlgebra {
    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    /// The subspace At^(block+1) of the extension, block in 0..3.
    pub fn block(&self, block: usize) -> Subspace {
        assert!(block < 3);
        let n = self.base.dim();
        let rows = (0..n)
            .map(|r| basis_vector(3 * n, block * n + r))
            .collect();
        Subspace::from_rows(3 * n, rows)
    }
}

/// Embeds a quasiderivation pair of the base as a map on the extension.
pub fn embed_qder(e: &ExtendedAlgebra, p: &QDerPair) -> Result<Matrix, ExtensionError> {
    let n = e.base.dim();
    if (p.f.rows(), p.f.cols()) != (n, n) || (p.fprime.rows(), p.fprime.cols()) != (n, n) {
        return Err(ExtensionError::InvalidPair);
    }
    if !p.satisfies(&e.base) {
        return Err(ExtensionError::InvalidPair);
    }
    let derived = e.base.derived_algebra();
    let mut m = Matrix::zero(3 * n, 3 * n);
    for c in 0..n {
        // The t-block moves by f.
        for r in 0..n {
            m.set(r, c, p.f.get(r, c).clone());
        }
        // The t²-block dies; the t³-block splits into derived + complement
        // and only the derived part moves, by f'.
        let basis = basis_vector(n, c);
        let u_part = derived.reduce(&basis);
        let derived_part = sub_vectors(&basis, &u_part);
        let image = p.fprime.apply(&derived_part);
        for (r, value) in image.iter().enumerate() {
            m.set(2 * n + r, 2 * n + c, value.clone());
        }
    }
    Ok(m)
}

/// The central derivations of the extension: maps whose image lies in the
/// center of Ã and which vanish on the derived ideal of Ã.
pub fn zder_center_of_extension(e: &ExtendedAlgebra) -> MapSpace {
    zder(&e.algebra)
}

/// The embedded image of all quasiderivation pairs of the base.
pub fn embedded_qder_image(e: &ExtendedAlgebra) -> MapSpace {
    let pairs = qder_pairs(&e.base);
    let maps: Vec<Matrix> = pairs
        .basis_tuples()
        .into_iter()
        .map(|t| {
            let p = QDerPair {
                f: t[0].clone(),
                fprime: t[1].clone(),
            };
            embed_qder(e, &p).expect("pair-space basis elements are valid pairs")
        })
        .collect();
    MapSpace::from_matrices(3 * e.base.dim(), &maps)
}

/// Quantitative decomposition check for centerless base algebras:
/// der(Ã) = embedded quasiderivations ⊕ central derivations of Ã, with the
/// second summand an ideal under the map bracket.
#[derive(Debug, Clone, PartialEq)]
pub struct SemidirectReport {
    pub der_extension_dim: usize,
    pub image_dim: usize,
    pub central_der_dim: usize,
    pub intersection_dim: usize,
    pub image_contained: bool,
    pub sum_is_whole: bool,
    pub summand_is_ideal: bool,
}

impl SemidirectReport {
    pub fn holds(&self) -> bool {
        self.image_contained
            && self.intersection_dim == 0
            && self.sum_is_whole
            && self.summand_is_ideal
            && self.der_extension_dim == self.image_dim + self.central_der_dim
    }
}

pub fn semidirect_check(e: &ExtendedAlgebra) -> Result<SemidirectReport, ExtensionError> {
    if !e.base.center().is_zero() {
        return Err(ExtensionError::CenterNotZero);
    }
    let der_ext = der(&e.algebra);
    let image = embedded_qder_image(e);
    let central = zder_center_of_extension(e);
    let intersection = image.intersect(&central);
    let sum = image.sum(&central);
    let mut summand_is_ideal = true;
    for d in der_ext.basis_matrices() {
        for z in central.basis_matrices() {
            if !central.contains(&map_bracket(&d, &z)) {
                summand_is_ideal = false;
            }
        }
    }
    Ok(SemidirectReport {
        der_extension_dim: der_ext.dim(),
        image_dim: image.dim(),
        central_der_dim: central.dim(),
        intersection_dim: intersection.dim(),
        image_contained: der_ext.contains_space(&image),
        sum_is_whole: sum == der_ext,
        summand_is_ideal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::map_spaces::map_bracket;
    use crate::matrix::is_zero_vector;
    use crate::scalar::int;

    fn a3() -> Algebra {
        catalog::algebra("a3").unwrap().algebra
    }

    #[test]
    fn extension_of_abelian_is_abelian() {
        let e = extend(&Algebra::abelian(2));
        assert_eq!(e.algebra.dim(), 6);
        assert!(e.algebra.derived_algebra().is_zero());
        assert_eq!(e.u_complement, Subspace::full(2));
    }

    #[test]
    fn extension_of_a3_has_one_bracket_into_the_third_block() {
        let e = extend(&a3());
        assert_eq!(e.algebra.dim(), 9);
        let entries: Vec<_> = e.algebra.stored_entries().collect();
        assert_eq!(entries.len(), 1);
        let (&(i, j, k), value) = entries[0];
        assert_eq!((i, j, k), (0, 1, 2));
        assert_eq!(value, &basis_vector(9, 6));
        // Brackets not fully inside the t-block vanish.
        assert!(is_zero_vector(&e.algebra.basis_bracket(0, 1, 6)));
        assert!(is_zero_vector(&e.algebra.basis_bracket(3, 4, 5)));
    }

    #[test]
    fn center_of_extension_is_the_last_two_blocks_when_base_is_centerless() {
        let e = extend(&a3());
        let expected = e.block(1).sum(&e.block(2)).unwrap();
        assert_eq!(e.algebra.center(), expected);
    }

    #[test]
    fn embed_zero_pair_gives_zero() {
        let e = extend(&a3());
        let p = QDerPair {
            f: Matrix::zero(3, 3),
            fprime: Matrix::zero(3, 3),
        };
        assert!(embed_qder(&e, &p).unwrap().is_zero());
    }

    #[test]
    fn embed_identity_pair_explicitly() {
        let e = extend(&a3());
        let p = QDerPair {
            f: Matrix::identity(3),
            fprime: Matrix::identity(3).scale(&int(3)),
        };
        let m = embed_qder(&e, &p).unwrap();
        // e_i t -> e_i t for all i; e_1 t³ -> 3 e_1 t³ (the derived part);
        // everything else dies.
        let mut expected = Matrix::zero(9, 9);
        for i in 0..3 {
            expected.set(i, i, int(1));
        }
        expected.set(6, 6, int(3));
        assert_eq!(m, expected);
        assert!(der(&e.algebra).contains(&m));
    }

    #[test]
    fn embedding_ignores_fprime_off_the_derived_ideal() {
        let e = extend(&a3());
        let base = QDerPair {
            f: Matrix::identity(3),
            fprime: Matrix::identity(3).scale(&int(3)),
        };
        // Perturb f' by a map killing the derived ideal span{e1}.
        let mut shifted = base.clone();
        shifted.fprime.set(1, 1, int(7));
        shifted.fprime.set(0, 2, int(-2));
        assert!(shifted.satisfies(&e.base));
        assert_eq!(
            embed_qder(&e, &base).unwrap(),
            embed_qder(&e, &shifted).unwrap()
        );
    }

    #[test]
    fn embed_rejects_invalid_pairs() {
        let e = extend(&a3());
        let bad = QDerPair {
            f: Matrix::identity(3),
            fprime: Matrix::zero(3, 3),
        };
        assert_eq!(embed_qder(&e, &bad), Err(ExtensionError::InvalidPair));
    }

    #[test]
    fn embedded_basis_pairs_are_derivations_of_the_extension() {
        let e = extend(&a3());
        let d = der(&e.algebra);
        let image = embedded_qder_image(&e);
        assert!(d.contains_space(&image));
        // The embedding is injective in f, so the image is as big as qder.
        assert_eq!(image.dim(), 9);
    }

    #[test]
    fn embedding_respects_map_brackets_on_the_first_block() {
        let e = extend(&a3());
        let pairs = qder_pairs(&e.base);
        let tuples = pairs.basis_tuples();
        let embed = |t: &Vec<Matrix>| {
            embed_qder(
                &e,
                &QDerPair {
                    f: t[0].clone(),
                    fprime: t[1].clone(),
                },
            )
            .unwrap()
        };
        let (p, q) = (&tuples[0], &tuples[5]);
        let big = map_bracket(&embed(p), &embed(q));
        let small = map_bracket(&p[0], &q[0]);
        for r in 0..3 {
            for c in 0..3 {
                assert_eq!(big.get(r, c), small.get(r, c));
            }
        }
    }

    #[test]
    fn semidirect_decomposition_for_a3() {
        let e = extend(&a3());
        let report = semidirect_check(&e).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.image_dim, 9);
        // Central derivations: Hom(Ã/Ã¹, Z(Ã)) with dim 8 * 6.
        assert_eq!(report.central_der_dim, 48);
        assert_eq!(report.der_extension_dim, 57);
    }

    #[test]
    fn semidirect_check_requires_trivial_center() {
        let e = extend(&catalog::algebra("b4").unwrap().algebra);
        assert!(matches!(
            semidirect_check(&e),
            Err(ExtensionError::CenterNotZero)
        ));
    }
}
