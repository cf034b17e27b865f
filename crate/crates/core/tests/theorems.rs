//! Cross-cutting checks of the structural facts relating the derivation
//! type map spaces, run over every built-in example algebra: bracket
//! closure, the inclusion lattice, module actions, the sum decomposition
//! of generalized derivations, blockwise splitting over direct sums, and
//! the pointwise quasicentroid identities.

use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use trilie::algebra::Algebra;
use trilie::catalog;
use trilie::map_spaces::{
    centroid, complete_to_quadruple, der, gder, gder_quadruples, inner_der, map_bracket, qder,
    quasicentroid, split_gder, GenDerQuadruple, MapSpace,
};
use trilie::matrix::{basis_vector, is_zero_vector, Matrix};
use trilie::scalar::{int, Scalar};
use trilie::subspace::Subspace;

fn catalog_algebras() -> Vec<(String, Algebra)> {
    catalog::names()
        .into_iter()
        .map(|name| {
            let a = catalog::algebra(&name).unwrap().algebra;
            (name, a)
        })
        .collect()
}

fn random_vector(n: usize, rng: &mut ChaCha12Rng) -> Vec<Scalar> {
    (0..n).map(|_| int(rng.gen_range(-3i64..=3))).collect()
}

fn column_space(m: &Matrix) -> Subspace {
    Subspace::from_rows(m.rows(), (0..m.cols()).map(|c| m.column(c)).collect())
}

fn embed_block(m: &Matrix, n_total: usize, offset: usize) -> Matrix {
    let mut big = Matrix::zero(n_total, n_total);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                big.set(offset + r, offset + c, v.clone());
            }
        }
    }
    big
}

#[test]
fn derivation_type_spaces_close_under_the_map_bracket() {
    for (name, a) in catalog_algebras() {
        let spaces = [
            ("der", der(&a)),
            ("qder", qder(&a)),
            ("gder", gder(&a)),
            ("centroid", centroid(&a)),
            ("quasicentroid", quasicentroid(&a)),
        ];
        for (label, space) in &spaces {
            let basis = space.basis_matrices();
            for f in &basis {
                for g in &basis {
                    assert!(
                        space.contains(&map_bracket(f, g)),
                        "{name}: {label} not closed under the bracket"
                    );
                }
            }
        }
    }
}

#[test]
fn quasicentroid_brackets_vanish_for_centerless_algebras() {
    for (name, a) in catalog_algebras() {
        if !a.center().is_zero() {
            continue;
        }
        let basis = quasicentroid(&a).basis_matrices();
        for f in &basis {
            for g in &basis {
                assert!(
                    map_bracket(f, g).is_zero(),
                    "{name}: quasicentroid bracket is nonzero despite Z = 0"
                );
            }
        }
    }
}

#[test]
fn inclusion_lattice_of_map_spaces() {
    for (name, a) in catalog_algebras() {
        let inner = inner_der(&a);
        let d = der(&a);
        let qd = qder(&a);
        let gd = gder(&a);
        let qg = quasicentroid(&a);
        let c = centroid(&a);
        assert!(d.contains_space(&inner), "{name}: ad not inside der");
        assert!(qd.contains_space(&d), "{name}: der not inside qder");
        assert!(gd.contains_space(&qd), "{name}: qder not inside gder");
        assert!(gd.contains_space(&qg), "{name}: quasicentroid not inside gder");
        assert!(qd.contains_space(&c), "{name}: centroid not inside qder");
        assert!(qg.contains_space(&c), "{name}: centroid not inside quasicentroid");
    }
}

#[test]
fn bracket_actions_preserve_the_smaller_space() {
    for (name, a) in catalog_algebras() {
        let d = der(&a);
        let qd = qder(&a);
        let gd = gder(&a);
        let qg = quasicentroid(&a);
        let c = centroid(&a);
        for f in d.basis_matrices() {
            for g in c.basis_matrices() {
                assert!(
                    c.contains(&map_bracket(&f, &g)),
                    "{name}: [der, centroid] leaves the centroid"
                );
            }
        }
        for f in qd.basis_matrices() {
            for g in qg.basis_matrices() {
                assert!(
                    qg.contains(&map_bracket(&f, &g)),
                    "{name}: [qder, quasicentroid] leaves the quasicentroid"
                );
            }
        }
        // The quasicentroid is an ideal of the full generalized derivation
        // algebra, not just a module over qder.
        for f in gd.basis_matrices() {
            for g in qg.basis_matrices() {
                assert!(
                    qg.contains(&map_bracket(&f, &g)),
                    "{name}: [gder, quasicentroid] leaves the quasicentroid"
                );
            }
        }
    }
}

#[test]
fn gder_is_the_sum_of_qder_and_the_quasicentroid() {
    for (name, a) in catalog_algebras() {
        let qd = qder(&a);
        let gd = gder(&a);
        let qg = quasicentroid(&a);
        let sum = qd.sum(&qg);
        assert_eq!(
            sum.subspace(),
            gd.subspace(),
            "{name}: qder + quasicentroid is not gder"
        );
    }
}

#[test]
fn quadruples_split_into_a_pair_plus_quasicentroid_parts() {
    for (name, a) in catalog_algebras() {
        let qg = quasicentroid(&a);
        for t in gder_quadruples(&a).basis_tuples() {
            let quad = GenDerQuadruple {
                f1: t[0].clone(),
                f2: t[1].clone(),
                f3: t[2].clone(),
                fprime: t[3].clone(),
            };
            let split = split_gder(&a, &quad).unwrap();
            assert!(
                split.quasiderivation.satisfies(&a),
                "{name}: averaged map is not a quasiderivation"
            );
            for part in &split.quasicentroid_parts {
                assert!(
                    qg.contains(part),
                    "{name}: split part leaves the quasicentroid"
                );
            }
            let rebuilt = split.quasiderivation.f.add(&split.quasicentroid_parts[0]);
            assert_eq!(rebuilt, quad.f1, "{name}: split does not reconstruct f1");
        }
    }
}

#[test]
fn quadruple_first_three_slots_permute() {
    for (name, a) in catalog_algebras() {
        for t in gder_quadruples(&a).basis_tuples() {
            for perm in [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]] {
                let quad = GenDerQuadruple {
                    f1: t[perm[0]].clone(),
                    f2: t[perm[1]].clone(),
                    f3: t[perm[2]].clone(),
                    fprime: t[3].clone(),
                };
                assert!(
                    quad.satisfies(&a),
                    "{name}: permutation {perm:?} breaks the quadruple identity"
                );
            }
        }
    }
}

#[test]
fn centerless_direct_sums_split_blockwise() {
    let sum_alg = catalog::algebra("a3+a3").unwrap().algebra;
    let gd = gder(&sum_alg);
    let qd = qder(&sum_alg);

    // Every generalized derivation preserves both summands.
    for m in gd.basis_matrices() {
        for r in 0..6 {
            for c in 0..6 {
                if (r < 3) != (c < 3) {
                    assert!(m.get(r, c).is_zero(), "off-block entry at ({r}, {c})");
                }
            }
        }
    }

    let a = catalog::algebra("a3").unwrap().algebra;
    assert_eq!(gd.dim(), 2 * gder(&a).dim());
    assert_eq!(qd.dim(), 2 * qder(&a).dim());

    let embed_all = |small: &MapSpace| {
        let mut maps = Vec::new();
        for offset in [0, 3] {
            for m in small.basis_matrices() {
                maps.push(embed_block(&m, 6, offset));
            }
        }
        MapSpace::from_matrices(6, &maps)
    };
    assert_eq!(embed_all(&gder(&a)).subspace(), gd.subspace());
    assert_eq!(embed_all(&qder(&a)).subspace(), qd.subspace());
}

#[test]
fn quasicentroid_pointwise_identities() {
    for (name, a) in catalog_algebras() {
        let n = a.dim();
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        // The identities are quadratic in x, so basis pairs alone would not
        // cover them; mix in random vectors.
        let mut xy_samples: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                xy_samples.push((basis_vector(n, i), basis_vector(n, j)));
            }
        }
        for _ in 0..4 {
            xy_samples.push((random_vector(n, &mut rng), random_vector(n, &mut rng)));
        }

        for f in quasicentroid(&a).basis_matrices() {
            for (x, y) in &xy_samples {
                let fx = f.apply(x);
                assert!(
                    is_zero_vector(&a.bracket(x, &fx, y).unwrap()),
                    "{name}: [x, f(x), y] is nonzero"
                );

                let ad_xy = a.ad_map(x, y).unwrap();
                let ad_fxy = a.ad_map(&fx, y).unwrap();
                assert_eq!(
                    ad_xy.mul(&ad_fxy),
                    ad_fxy.mul(&ad_xy),
                    "{name}: the two bracket operators do not commute"
                );

                for m in 1..=3usize {
                    assert_eq!(
                        ad_fxy.pow(m),
                        ad_xy.pow(m).mul(&f.pow(m)),
                        "{name}: power identity fails at m = {m}"
                    );
                    assert_eq!(
                        ad_xy.pow(m + 1).mul(&f),
                        ad_fxy.mul(&ad_xy.pow(m)),
                        "{name}: shifted power identity fails at m = {m}"
                    );
                }

                // Cyclic symmetry of the action (x, y)f applied to z.
                let action = |u: &[Scalar], v: &[Scalar], w: &[Scalar]| {
                    let lhs = a.bracket(u, v, &f.apply(w)).unwrap();
                    let rhs = f.apply(&a.bracket(u, v, w).unwrap());
                    lhs.iter().zip(rhs).map(|(p, q)| p - q).collect::<Vec<_>>()
                };
                let mut z_samples: Vec<Vec<Scalar>> =
                    (0..n).map(|i| basis_vector(n, i)).collect();
                z_samples.push(random_vector(n, &mut rng));
                for z in &z_samples {
                    let a1 = action(x, y, z);
                    let a2 = action(y, z, x);
                    let a3 = action(z, x, y);
                    assert_eq!(a1, a2, "{name}: cyclic action identity fails");
                    assert_eq!(a2, a3, "{name}: cyclic action identity fails");
                }
            }
        }
    }
}

#[test]
fn centroid_brackets_are_central_and_centroid_maps_have_ideal_kernels_and_images() {
    for (name, a) in catalog_algebras() {
        let n = a.dim();
        let center = a.center();
        let c = centroid(&a);
        let qg = quasicentroid(&a);
        for f in c.basis_matrices() {
            for g in qg.basis_matrices() {
                let h = map_bracket(&f, &g);
                for col in 0..n {
                    assert!(
                        center.contains_vector(&h.column(col)),
                        "{name}: [centroid, quasicentroid] image leaves the center"
                    );
                }
            }
        }
        for f in c.basis_matrices() {
            assert!(
                a.is_ideal(&Subspace::nullspace_of(&f)),
                "{name}: kernel of a centroid map is not an ideal"
            );
            assert!(
                a.is_ideal(&column_space(&f)),
                "{name}: image of a centroid map is not an ideal"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // On the three-dimensional example every linear map is a generalized
    // derivation, so completion and splitting must round-trip for
    // arbitrary integer matrices.
    #[test]
    fn completing_and_splitting_arbitrary_maps_roundtrips(
        entries in prop::collection::vec(-4i64..=4, 9)
    ) {
        let a = catalog::algebra("a3").unwrap().algebra;
        let g = Matrix::from_fn(3, 3, |r, c| int(entries[r * 3 + c]));
        let quad = complete_to_quadruple(&a, &g).unwrap();
        prop_assert!(quad.satisfies(&a));
        prop_assert_eq!(&quad.f1, &g);
        let split = split_gder(&a, &quad).unwrap();
        prop_assert!(split.quasiderivation.satisfies(&a));
        let qg = quasicentroid(&a);
        for part in &split.quasicentroid_parts {
            prop_assert!(qg.contains(part));
        }
        let rebuilt = split.quasiderivation.f.add(&split.quasicentroid_parts[0]);
        prop_assert_eq!(rebuilt, g);
    }
}
