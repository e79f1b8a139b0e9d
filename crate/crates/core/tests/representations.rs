use proptest::prelude::*;

use weylpath_core::littelmann::*;
use weylpath_core::pitman::{is_dominant, is_integral};
use weylpath_core::typea::*;
use weylpath_core::{CoxeterDatum, Rational, Scalar, Weight};

fn exact(label: &str) -> CoxeterDatum<Rational> {
    CoxeterDatum::build(label).unwrap()
}

fn w(c: &[i64]) -> Weight {
    Weight::from_ints(c)
}

fn straight(d: &CoxeterDatum<Rational>, lambda: &Weight) -> weylpath_core::Path<Rational> {
    straight_highest_path(d, lambda, Rational::from_i64(1)).unwrap()
}

#[test]
fn modules_have_weyl_dimension_and_invariant_characters() {
    for (label, weights) in [
        ("A1", vec![vec![3]]),
        ("A2", vec![vec![1, 0], vec![1, 1], vec![2, 1], vec![0, 3]]),
        ("A3", vec![vec![1, 0, 1], vec![0, 1, 0]]),
        ("B2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
        ("G2", vec![vec![1, 0], vec![0, 1]]),
    ] {
        let d = exact(label);
        for c in weights {
            let lambda = w(&c);
            let module = generate_module(&d, &straight(&d, &lambda)).unwrap();
            assert_eq!(module.len() as u64, d.weyl_dimension(&lambda).unwrap(), "{label} {c:?}");
            assert!(module.paths().iter().all(|p| is_integral(&d, p)));
            assert!(is_stable(&d, &module).unwrap());
            let ch = character_of_module(&d, &module);
            assert!(ch.is_w_invariant(&d));
            assert_eq!(ch.multiplicity(&lambda), 1);
        }
    }
}

#[test]
fn adjoint_square_in_a2() {
    let d = exact("A2");
    let lr = lr_decompose(&d, &straight(&d, &w(&[1, 1])), &straight(&d, &w(&[1, 1]))).unwrap();
    let mut dims: Vec<(u64, u64)> = lr.decomposition.iter().map(|(k, &m)| (d.weyl_dimension(k).unwrap(), m)).collect();
    dims.sort();
    assert!(lr.concatenations.iter().all(|c| is_dominant(&d, c)));
    assert_eq!(dims, vec![(1, 1), (8, 2), (10, 1), (10, 1), (27, 1)]);
    assert!(lr_symmetry(&d, &straight(&d, &w(&[1, 1])), &straight(&d, &w(&[1, 1]))).unwrap().holds());
    assert!(lr_symmetry(&d, &straight(&d, &w(&[1, 0])), &straight(&d, &w(&[0, 1]))).unwrap().holds());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn b2_tensor_dimensions_add_up(a in 0i64..3, b in 0i64..3, c in 0i64..2, e in 0i64..2) {
        let d = exact("B2");
        let (x, y) = (w(&[a, b]), w(&[c, e]));
        let lr = lr_decompose(&d, &straight(&d, &x), &straight(&d, &y)).unwrap();
        prop_assert_eq!(
            lr.decomposition.total_dimension(&d).unwrap(),
            d.weyl_dimension(&x).unwrap() * d.weyl_dimension(&y).unwrap()
        );
    }

    #[test]
    fn rsk_tableaux_are_well_formed(word in proptest::collection::vec(1usize..=4, 0..9)) {
        let r = rsk(&word);
        prop_assert!(r.p.is_semistandard());
        prop_assert!(r.q.is_standard());
        prop_assert_eq!(r.p.shape(), r.q.shape());
        prop_assert_eq!(r.p.size(), word.len());
    }
}

#[test]
fn rsk_shapes_follow_pitman_exhaustively() {
    for len in 1..=4 {
        for word in all_words(3, len) {
            assert!(shape_path_equals_pitman(&word, 3).unwrap(), "{word:?}");
        }
    }
    for len in 1..=5 {
        for word in all_words(2, len) {
            assert!(schutzenberger_check(&word, 2).unwrap(), "{word:?}");
        }
    }
}
