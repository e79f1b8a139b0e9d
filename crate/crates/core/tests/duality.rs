use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylpath_core::duality::*;
use weylpath_core::pitman::{is_dominant, pitman_w0};
use weylpath_core::sample::{random_path, PathShape};
use weylpath_core::{CoxeterDatum, Path, Rational, Scalar};

fn exact(label: &str) -> CoxeterDatum<Rational> {
    CoxeterDatum::build(label).unwrap()
}

fn rpath(seed: u64, d: &CoxeterDatum<Rational>) -> Path<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_path(&mut rng, d.rank(), &Rational::from_i64(1), &PathShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn involution_squares_to_pitman_w0(seed in any::<u64>()) {
        for label in ["A2", "B2"] {
            let d = exact(label);
            let p = rpath(seed, &d);
            let pw = pitman_w0(&d, &p).unwrap();
            let ip = involution_i(&d, &p).unwrap();
            prop_assert_eq!(&involution_i(&d, &ip).unwrap(), &pw);
            prop_assert_eq!(ip.endpoint(), pw.endpoint());
            prop_assert_eq!(&involution_i(&d, &pw).unwrap(), &ip);
            prop_assert_eq!(&involution_i(&d, &ip).unwrap(), &pw);
            let e = co_pitman_w0(&d, &p).unwrap();
            prop_assert_eq!(e.endpoint().to_vec(), d.longest_matrix().mul_vec(pw.endpoint()));
        }
    }

    #[test]
    fn involution_is_involutive_on_dominant_paths(seed in any::<u64>()) {
        for label in ["A2", "B2", "G2"] {
            let d = exact(label);
            let pi = pitman_w0(&d, &rpath(seed, &d)).unwrap();
            prop_assert!(is_dominant(&d, &pi));
            let ipi = involution_i(&d, &pi).unwrap();
            prop_assert!(is_dominant(&d, &ipi));
            prop_assert_eq!(involution_i(&d, &ipi).unwrap(), pi);
        }
    }

    #[test]
    fn q_inverts_d_on_dominant_paths(seed in any::<u64>()) {
        for label in ["A2", "B2"] {
            let d = exact(label);
            let w0 = d.longest_element();
            let pi = pitman_w0(&d, &rpath(seed, &d)).unwrap();
            let dp = d_w0(&d, &pi, &w0).unwrap();
            prop_assert_eq!(q_w0(&d, &dp, &w0).unwrap(), pi);
        }
    }

    #[test]
    fn q_w0_is_pitman_after_w0(seed in any::<u64>()) {
        let d = exact("A2");
        let w0 = d.longest_element();
        let p = rpath(seed, &d);
        let expected = pitman_w0(&d, &p.apply_map(d.longest_matrix())).unwrap();
        prop_assert_eq!(q_w0(&d, &p, &w0).unwrap(), expected);
    }

    #[test]
    fn y_coordinates_are_nonnegative(seed in any::<u64>()) {
        let d = exact("B2");
        let w0 = d.longest_element();
        let y = y_coordinates(&d, &rpath(seed, &d), &w0).unwrap();
        prop_assert_eq!(y.len(), 4);
        prop_assert!(y.iter().all(|v| !v.is_negative()));
    }
}

#[test]
fn beta_sequence_enumerates_positive_roots() {
    for label in ["A2", "A3", "B2", "G2"] {
        let d = exact(label);
        for word in d.reduced_words(&d.longest_element()).unwrap().iter().take(6) {
            let seq = beta_sequence(&d, word).unwrap();
            let mut got: Vec<Vec<Rational>> = seq.roots.iter().map(|r| r.vector.clone()).collect();
            let mut all: Vec<Vec<Rational>> = d.positive_roots().iter().map(|r| r.vector.clone()).collect();
            got.sort();
            all.sort();
            assert_eq!(got, all, "{label} {word}");
        }
    }
}

#[test]
fn straight_dominant_paths_are_fixed_by_involution() {
    let d = exact("A2");
    let p = Path::straight(&d.fundamental_weight(0), Rational::from_i64(1));
    let ip = involution_i(&d, &p).unwrap();
    assert_eq!(ip, p);
}
