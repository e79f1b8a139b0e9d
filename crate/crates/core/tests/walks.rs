use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylpath_core::itrail::*;
use weylpath_core::pitman::{is_dominant, pitman_word};
use weylpath_core::sample::{random_path, PathShape};
use weylpath_core::stochsim::*;
use weylpath_core::{CoxeterDatum, Rational, Scalar, TypeLabel, Weight, WeylWord};

fn exact(label: &str) -> CoxeterDatum<Rational> {
    CoxeterDatum::build(label).unwrap()
}

#[test]
fn markov_property_for_a2_walk_of_four_steps() {
    let d = exact("A2");
    let report = exhaustive_verify_markov(&d, &Weight::from_ints(&[1, 0]), 4, 1_000_000).unwrap();
    assert_eq!(report.concatenations, 81);
    assert!(report.kernels_agree);
    assert!(report.holds());
    for h in &report.histories {
        assert_eq!(h.total_pairs(), h.dim_mu * h.dim_omega);
    }
}

#[test]
fn kernels_agree_up_to_level_four() {
    for (label, omega) in [("A2", vec![1, 0]), ("A2", vec![1, 1]), ("B2", vec![1, 0])] {
        let d = exact(label);
        let omega = Weight::from_ints(&omega);
        let m = q_omega_matrix(&d, &omega, 4, 100_000).unwrap();
        assert!(m.rows_sum_to_one());
        assert!(cross_check_q(&d, &omega, &m).unwrap());
    }
}

#[test]
fn walk_config_validation() {
    let mut c = WalkConfig::new(TypeLabel::A(2), Weight::from_ints(&[1, 0]), 10, 42);
    assert!(c.validate().is_ok());
    c.resolution = 1000;
    assert!(c.validate().is_err());
    c.resolution = 1024;
    c.omega = Weight::from_ints(&[0, 0]);
    assert!(c.validate().is_err());
    c.omega = Weight::from_ints(&[1, 0, 0]);
    assert!(c.validate().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn transformed_walks_are_dominant_and_reproducible(seed in any::<u64>(), n in 1usize..12) {
        let d = exact("B2");
        let s: WalkSampler<Rational> = WalkSampler::new(&d, &Weight::from_ints(&[0, 1])).unwrap();
        let (z, pz) = transformed_walk(&d, &s, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let (z2, pz2) = transformed_walk(&d, &s, n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(&z, &z2);
        prop_assert_eq!(&pz, &pz2);
        prop_assert!(is_dominant(&d, &pz));
        prop_assert_eq!(z.horizon().clone(), Rational::from_i64(n as i64));
        for k in 0..=n {
            let v = z.evaluate(&Rational::from_i64(k as i64)).unwrap();
            prop_assert!(d.weight_of(&v).is_integral());
        }
    }

    #[test]
    fn itrail_formula_matches_pitman_word(seed in any::<u64>()) {
        let d = exact("A2");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_path(&mut rng, 2, &Rational::from_i64(1), &PathShape::default());
        for word in ["1", "1,2", "2,1", "1,2,1"] {
            let w = WeylWord::parse(word).unwrap();
            prop_assert_eq!(pitman_via_itrails(&d, &p, &w).unwrap(), pitman_word(&d, &p, &w).unwrap());
        }
    }

    #[test]
    fn killed_kernel_is_bounded_by_free_kernel(a in 0.0f64..3.0, b in 0.0f64..3.0, c in 0.0f64..3.0, e in 0.0f64..3.0, t in 0.1f64..4.0) {
        let d: CoxeterDatum<f64> = CoxeterDatum::build("B2").unwrap();
        let (w1, w2) = (d.fundamental_weight(0), d.fundamental_weight(1));
        let x: Vec<f64> = w1.iter().zip(&w2).map(|(p, q)| a * p + b * q).collect();
        let y: Vec<f64> = w1.iter().zip(&w2).map(|(p, q)| c * p + e * q).collect();
        let k = chamber_kernels(&d, &x, &y, t, None).unwrap();
        prop_assert!(k.p0 >= -1e-15);
        prop_assert!(k.p0 <= k.p + 1e-15);
    }
}

#[test]
fn itrail_content_matches_weight_difference() {
    let d = exact("A3");
    for e in d.elements().iter().take(12) {
        for i in 0..3 {
            let rep = fundamental_rep(3, i).unwrap();
            for trail in enumerate_itrails(&d, &rep, &e.word).unwrap() {
                assert!(!trail.coefficient.is_negative());
                let content = trail_content(&d, i, &e.word).unwrap();
                let mut count = vec![0i64; 3];
                for &l in &trail.letters {
                    count[l] += 1;
                }
                let as_rational: Vec<Rational> = count.iter().map(|&c| Rational::from_i64(c)).collect();
                assert_eq!(as_rational, content);
            }
        }
    }
}
