//! Built-in example algebras used by the test suite and the CLI.
//!
//! Each entry carries the algebra itself, a default torus (a maximal
//! ad-diagonalizable abelian subalgebra, given as basis rows), and for
//! direct sums the block dimensions of the summands.

use crate::algebra::Algebra;
use crate::matrix::basis_vector;
use crate::scalar::{int, Scalar};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub description: String,
    pub algebra: Algebra,
    /// Basis rows of the default torus, when the entry has a useful one.
    pub torus: Option<Vec<Vec<Scalar>>>,
    /// Dimensions of the direct summands, for entries built as direct sums.
    pub blocks: Option<Vec<usize>>,
}

fn a3_algebra() -> Algebra {
    Algebra::new(
        3,
        None,
        vec![((0, 1, 2), vec![int(1), int(0), int(0)])],
    )
    .expect("catalog algebra is valid")
}

fn b4_algebra() -> Algebra {
    Algebra::new(
        4,
        None,
        vec![((0, 1, 2), vec![int(1), int(0), int(0), int(0)])],
    )
    .expect("catalog algebra is valid")
}

fn rows(dim: usize, indices: &[usize]) -> Vec<Vec<Scalar>> {
    indices.iter().map(|&i| basis_vector(dim, i)).collect()
}

/// The names listed by `names()`; `algebra()` additionally accepts
/// `abelianN` for any N between 1 and 32.
pub fn names() -> Vec<String> {
    ["a3", "b4", "a3+a3", "a3+abelian1", "abelian3"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

pub fn algebra(name: &str) -> Option<CatalogEntry> {
    match name {
        "a3" => Some(CatalogEntry {
            name: name.to_string(),
            description: "3-dimensional algebra with [e1,e2,e3] = e1; trivial center"
                .to_string(),
            algebra: a3_algebra(),
            torus: Some(rows(3, &[1, 2])),
            blocks: None,
        }),
        "b4" => Some(CatalogEntry {
            name: name.to_string(),
            description:
                "4-dimensional algebra with [e1,e2,e3] = e1; center spanned by e4"
                    .to_string(),
            algebra: b4_algebra(),
            torus: Some(rows(4, &[1, 2, 3])),
            blocks: None,
        }),
        "a3+a3" => Some(CatalogEntry {
            name: name.to_string(),
            description: "direct sum of two copies of a3".to_string(),
            algebra: a3_algebra().direct_sum(&a3_algebra()),
            torus: Some(rows(6, &[1, 2, 4, 5])),
            blocks: Some(vec![3, 3]),
        }),
        "a3+abelian1" => Some(CatalogEntry {
            name: name.to_string(),
            description: "a3 plus a one-dimensional abelian summand".to_string(),
            algebra: a3_algebra().direct_sum(&Algebra::abelian(1)),
            torus: Some(rows(4, &[1, 2, 3])),
            blocks: Some(vec![3, 1]),
        }),
        _ => {
            let n: usize = name.strip_prefix("abelian")?.parse().ok()?;
            if n == 0 || n > 32 {
                return None;
            }
            Some(CatalogEntry {
                name: name.to_string(),
                description: format!("abelian algebra of dimension {n}"),
                algebra: Algebra::abelian(n),
                // Every bracket vanishes, so the whole space is the only
                // torus whose zero weight space does not exceed it.
                torus: Some(rows(n, &(0..n).collect::<Vec<_>>())),
                blocks: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::Subspace;

    #[test]
    fn every_named_entry_loads_and_validates() {
        for name in names() {
            let entry = algebra(&name).expect("listed name resolves");
            assert_eq!(entry.name, name);
            assert!(entry
                .algebra
                .fundamental_identity_violations()
                .is_empty());
            if let Some(torus) = &entry.torus {
                for row in torus {
                    assert_eq!(row.len(), entry.algebra.dim());
                }
            }
            if let Some(blocks) = &entry.blocks {
                assert_eq!(blocks.iter().sum::<usize>(), entry.algebra.dim());
            }
        }
    }

    #[test]
    fn abelian_names_parse_dimension() {
        assert_eq!(algebra("abelian5").unwrap().algebra.dim(), 5);
        assert!(algebra("abelian0").is_none());
        assert!(algebra("abelian33").is_none());
        assert!(algebra("abelianx").is_none());
        assert!(algebra("nosuch").is_none());
    }

    #[test]
    fn fixture_centers_match_descriptions() {
        assert!(algebra("a3").unwrap().algebra.center().is_zero());
        let b4 = algebra("b4").unwrap().algebra;
        assert_eq!(
            b4.center(),
            Subspace::from_rows(4, vec![basis_vector(4, 3)])
        );
        assert!(algebra("a3+a3").unwrap().algebra.center().is_zero());
    }

    #[test]
    fn default_tori_are_abelian_subalgebras() {
        for name in names() {
            let entry = algebra(&name).unwrap();
            if let Some(torus) = entry.torus {
                let t = Subspace::from_rows(entry.algebra.dim(), torus);
                assert!(entry.algebra.is_subalgebra(&t), "{name}");
                assert!(entry.algebra.is_abelian_subspace(&t), "{name}");
            }
        }
    }
}
