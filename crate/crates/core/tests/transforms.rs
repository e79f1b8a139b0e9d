use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weylpath_core::pathcore::ScalarPath;
use weylpath_core::pitman::*;
use weylpath_core::sample::{random_path, random_scalar_path, PathShape};
use weylpath_core::{CoxeterDatum, Path, Rational, Scalar, WeylWord};

fn exact(label: &str) -> CoxeterDatum<Rational> {
    CoxeterDatum::build(label).unwrap()
}

fn rpath(seed: u64, d: &CoxeterDatum<Rational>) -> Path<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_path(&mut rng, d.rank(), &Rational::from_i64(1), &PathShape::default())
}

fn rscalar(rng: &mut ChaCha8Rng) -> ScalarPath<Rational> {
    random_scalar_path(rng, &Rational::from_i64(2), &PathShape::default())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn braid_relations_hold_exactly(seed in any::<u64>()) {
        for (label, m) in [("A1xA1", 2), ("A2", 3), ("B2", 4), ("G2", 6)] {
            let d = exact(label);
            prop_assert_eq!(d.coxeter_m(0, 1), m as u32);
            let p = rpath(seed, &d);
            let a = alternating_product(&d, &p, 0, 1, m).unwrap();
            let b = alternating_product(&d, &p, 1, 0, m).unwrap();
            prop_assert_eq!(a, b, "{}", label);
        }
    }

    #[test]
    fn braid_relation_i2_5_in_floating_point(seed in any::<u64>()) {
        let d: CoxeterDatum<f64> = CoxeterDatum::build("I2(5)").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path(&mut rng, 2, &1.0, &PathShape::default());
        let a = alternating_product(&d, &p, 0, 1, 5).unwrap();
        let b = alternating_product(&d, &p, 1, 0, 5).unwrap();
        prop_assert!(a.sup_distance(&b) <= 1e-9);
    }

    #[test]
    fn closed_dihedral_formula_matches_composition(seed in any::<u64>()) {
        for (label, m) in [("A2", 3), ("B2", 4), ("G2", 6)] {
            let d = exact(label);
            let p = rpath(seed, &d);
            for (i, j) in [(0, 1), (1, 0)] {
                let pair = DihedralPair::from_datum(&d, i, j);
                for n in 1..=m {
                    let closed = dihedral_closed_form(&p, &pair, n).unwrap();
                    prop_assert_eq!(closed, alternating_pair(&p, &pair, n), "{} n={}", label, n);
                }
            }
        }
    }

    #[test]
    fn pitman_inverse_roundtrip(seed in any::<u64>()) {
        let d = exact("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = rng.random_range(0..2);
        let eta = pitman(&d, &rpath(seed, &d), i).unwrap();
        let top = d.pair(i, eta.endpoint());
        let x = top * Rational::from_ratio(rng.random_range(0..=12), 12);
        let pi = pitman_inverse(&d, &eta, i, &x).unwrap();
        prop_assert_eq!(pitman(&d, &pi, i).unwrap(), eta);
        prop_assert_eq!(-pi.functional(d.coroot(i)).inf(), x);
    }

    #[test]
    fn w0_image_is_dominant_and_word_independent(seed in any::<u64>()) {
        let d = exact("A3");
        let p = rpath(seed, &d);
        let words = d.reduced_words(&d.longest_element()).unwrap();
        prop_assert_eq!(words.len(), 16);
        let reference = pitman_w0(&d, &p).unwrap();
        prop_assert!(is_dominant(&d, &reference));
        for w in words.iter().take(4) {
            prop_assert_eq!(&pitman_word(&d, &p, w).unwrap(), &reference);
        }
    }

    #[test]
    fn string_coordinates_lie_in_polytope_and_rebuild(seed in any::<u64>()) {
        let d = exact("B2");
        let eta = rpath(seed, &d);
        let w0 = d.longest_element();
        let pi = pitman_w0(&d, &eta).unwrap();
        let sc = string_coordinates(&d, &eta, &w0).unwrap();
        prop_assert!(in_string_polytope(&d, pi.endpoint(), &sc));
        prop_assert_eq!(from_string_coordinates(&d, &pi, &sc).unwrap(), eta);
    }

    #[test]
    fn scalar_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (rscalar(&mut rng), rscalar(&mut rng), rscalar(&mut rng));
        let (l, r) = inf_splitting_sides(&x, &y);
        prop_assert_eq!(l, r);
        let (l, r) = tropical_identity_sides(&x, &y, &z);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn pitman_is_idempotent(seed in any::<u64>()) {
        let d = exact("G2");
        let p = rpath(seed, &d);
        for i in 0..2 {
            let once = pitman(&d, &p, i).unwrap();
            prop_assert!(is_alpha_dominant(&d, &once, i));
            prop_assert_eq!(pitman(&d, &once, i).unwrap(), once);
        }
    }
}

#[test]
fn running_inf_matches_dense_grid() {
    let q = |n: i64| Rational::from_i64(n);
    let f = ScalarPath::new(vec![q(0), q(1), q(2)], vec![q(0), q(-1), q(0)]).unwrap();
    let inf = f.running_inf();
    let mut m = 0.0f64;
    for k in 0..=2000 {
        let t = Rational::from_ratio(k, 1000);
        m = m.min(f.evaluate(&t).unwrap().to_f64());
        assert!((inf.evaluate(&t).unwrap().to_f64() - m).abs() < 1e-12);
    }
}

#[test]
fn rank_one_pitman_matches_two_max_minus_x() {
    let d = exact("A1");
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let p = random_path(&mut rng, 1, &Rational::from_i64(1), &PathShape::default());
        let out = pitman(&d, &p, 0).unwrap();
        let mut times: Vec<Rational> = (0..=400).map(|k| Rational::from_ratio(k, 400)).chain(p.times().iter().cloned()).collect();
        times.sort();
        let mut lo = 0.0f64;
        for t in times {
            let x = p.evaluate(&t).unwrap()[0].to_f64();
            lo = lo.min(x);
            assert!((out.evaluate(&t).unwrap()[0].to_f64() - (x - 2.0 * lo)).abs() < 1e-12);
        }
    }
}

#[test]
fn non_reduced_words_are_rejected() {
    let d = exact("A2");
    let p = rpath(1, &d);
    assert!(pitman_word(&d, &p, &WeylWord::new(vec![0, 0])).is_err());
}
