mod common;

use std::collections::BTreeSet;

use cellmac_core::cm::{is_cm_cell, is_l_cm, simplicial_is_cm};
use cellmac_core::free::minimal_free_resolution;
use cellmac_core::hexagon::enriched_complex;
use cellmac_core::homology::reduced_homology_dims;
use cellmac_core::linalg::sparse_rank;
use cellmac_core::sqfree::{l_complex, SqModComplex, SquareFreeModule};
use cellmac_core::{CellComplex, Field, Matrix, Scalar, VertexSet};
use common::*;
use proptest::prelude::*;

const Q: Field = Field::Rational;

fn complex_strategy() -> impl Strategy<Value = (usize, BTreeSet<Vec<usize>>)> {
    (1usize..=5).prop_flat_map(|n| {
        prop::collection::vec(1u32..(1u32 << n), 1..5).prop_map(move |masks| {
            let facets: Vec<Vec<usize>> = masks.into_iter().map(bits).collect();
            (n, closure(&facets))
        })
    })
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Q), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn relabeled(n: usize, faces: &BTreeSet<Vec<usize>>, perm: &[usize]) -> BTreeSet<Vec<usize>> {
    faces
        .iter()
        .map(|f| {
            let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
            g.sort_unstable();
            g
        })
        .filter(|f| f.iter().all(|&v| v < n))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(rows in matrix_strategy(), field in field_strategy()) {
        let a = Matrix::from_rows(field, &rows);
        prop_assert_eq!(a.rank() + a.nullity(), a.cols());
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let k = a.kernel_basis();
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(k.rank(), a.nullity());
    }

    #[test]
    fn rational_rank_bounds_modular_rank(rows in matrix_strategy(), p in prop::sample::select(vec![2u32, 3, 5, 7])) {
        let q = Matrix::from_rows(Q, &rows).rank();
        let fp = Matrix::from_rows(Field::Prime(p), &rows).rank();
        prop_assert!(q >= fp);
        prop_assert_eq!(fp, rank_mod_p(&rows, p as i64));
    }

    #[test]
    fn sparse_and_dense_ranks_agree(rows in matrix_strategy(), field in field_strategy()) {
        let a = Matrix::from_rows(field, &rows);
        let cols: Vec<Vec<(usize, Scalar)>> =
            a.columns().into_iter().map(|c| c.into_iter().enumerate().collect()).collect();
        prop_assert_eq!(sparse_rank(cols), a.rank());
    }

    #[test]
    fn solve_returns_exact_preimages(rows in matrix_strategy(), field in field_strategy()) {
        let a = Matrix::from_rows(field, &rows);
        let x: Vec<Scalar> = (0..a.cols()).map(|j| field.from_i64(j as i64 - 1)).collect();
        let b = a.mul_vec(&x);
        let y = a.solve(&b).expect("b is in the image");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn homology_matches_oracle((n, faces) in complex_strategy()) {
        let cx = to_cell_complex(n, &faces);
        let lib = reduced_homology_dims(&cx, Q).dims_from_minus_one().to_vec();
        prop_assert_eq!(lib, reduced_betti(&faces));
    }

    #[test]
    fn euler_characteristic((n, faces) in complex_strategy()) {
        let cx = to_cell_complex(n, &faces);
        let chi: i64 = cx.f_vector().iter().enumerate().map(|(k, &f)| if k % 2 == 0 { -(f as i64) } else { f as i64 }).sum();
        let h = reduced_homology_dims(&cx, Q);
        let hchi: i64 = h.dims_from_minus_one().iter().enumerate().map(|(k, &b)| if k % 2 == 0 { -(b as i64) } else { b as i64 }).sum();
        prop_assert_eq!(chi, hchi);
    }

    #[test]
    fn restriction_composes((n, faces) in complex_strategy(), r in 0u32..32, s in 0u32..32) {
        let cx = to_cell_complex(n, &faces);
        let full = VertexSet::full(n);
        let (r, s) = (VertexSet(r).intersection(full), VertexSet(s).intersection(full));
        let twice = cx.restriction(r).restriction(s);
        let once = cx.restriction(r.intersection(s));
        let key = |c: &CellComplex| c.cells().iter().map(|x| x.vertices).collect::<Vec<_>>();
        prop_assert_eq!(key(&twice), key(&once));
        prop_assert_eq!(cx.deletion(r).cell_count(), cx.restriction(r.complement(n)).cell_count());
    }

    #[test]
    fn cm_verdicts_agree_with_reisner((n, faces) in complex_strategy()) {
        let cx = to_cell_complex(n, &faces);
        let want = reisner_cm(&faces);
        prop_assert_eq!(is_cm_cell(&cx, Q).0, want);
        prop_assert_eq!(simplicial_is_cm(&cx.to_simplicial().unwrap(), Q), want);
    }

    #[test]
    fn lcm_is_monotone((n, faces) in complex_strategy()) {
        let cx = to_cell_complex(n, &faces);
        for l in 1..=n {
            if is_l_cm(&cx, l + 1, Q) {
                prop_assert!(is_l_cm(&cx, l, Q));
            }
        }
    }

    #[test]
    fn verdicts_ignore_vertex_order((n, faces) in complex_strategy(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = to_cell_complex(n, &faces);
        let b = to_cell_complex(n, &relabeled(n, &faces, &perm));
        prop_assert_eq!(is_cm_cell(&a, Q).0, is_cm_cell(&b, Q).0);
        prop_assert_eq!(reduced_homology_dims(&a, Q), reduced_homology_dims(&b, Q));
        let (ea, eb) = (enriched_complex(&a, Q), enriched_complex(&b, Q));
        prop_assert_eq!(ea.total_betti(), eb.total_betti());
        prop_assert_eq!(ea.homology_table().total(), eb.homology_table().total());
    }

    #[test]
    fn alexander_dual_is_an_involution((n, faces) in complex_strategy(), field in field_strategy()) {
        let cx = to_cell_complex(n, &faces);
        let sr = SquareFreeModule::indicator(field, n, |t| faces.contains(&bits(t.0)));
        let mut modules = vec![sr];
        modules.extend(enriched_complex(&cx, field).homology_modules().into_iter().map(|(_, m)| m));
        for m in modules {
            let d = m.alexander_dual();
            prop_assert!(d.check().is_ok());
            prop_assert_eq!(d.alexander_dual(), m);
        }
    }

    #[test]
    fn dualizing_free_complexes_twice((n, faces) in complex_strategy()) {
        let e = enriched_complex(&to_cell_complex(n, &faces), Q);
        let dd = e.dual().dual();
        prop_assert!(e.dual().squares_to_zero());
        prop_assert_eq!(dd.betti_table(), e.betti_table());
        prop_assert_eq!(dd.homology_table(), e.homology_table());
    }

    #[test]
    fn l_complex_is_a_complex((n, faces) in complex_strategy(), field in field_strategy()) {
        let m = SquareFreeModule::indicator(field, n, |t| faces.contains(&bits(t.0)));
        prop_assert!(l_complex(&m).squares_to_zero());
    }

    #[test]
    fn resolutions_are_minimal_and_quasi_isomorphic((n, faces) in complex_strategy()) {
        let m = SquareFreeModule::indicator(Q, n, |t| faces.contains(&bits(t.0)));
        let r = minimal_free_resolution(&SqModComplex::single(m.clone(), 0));
        prop_assert!(r.squares_to_zero());
        prop_assert!(r.is_minimal());
        prop_assert_eq!(r.homology_table(), m.dimension_table());
    }
}
