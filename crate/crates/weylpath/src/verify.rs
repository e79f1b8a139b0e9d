//! The named verification suite. Each check covers one acceptance criterion,
//! has a wall-clock budget, and returns a one-line description of what it
//! verified or the first assertion that failed.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use weylpath_core::duality::{co_pitman_w0, d_w0, involution_i, q_w0};
use weylpath_core::itrail::{t_word, verify_theorem_main, GridPath};
use weylpath_core::littelmann::{lr_decompose, lr_symmetry, straight_highest_path};
use weylpath_core::pathcore::ScalarPath;
use weylpath_core::pitman::{
    alternating_pair, alternating_product, dihedral_closed_form, inf_splitting_sides, is_dominant, pitman, pitman_inverse, pitman_w0,
    pitman_word, tropical_identity_sides, DihedralPair,
};
use weylpath_core::sample::{random_grid_path, random_path, random_scalar_path, PathShape};
use weylpath_core::stochsim::{exhaustive_verify_markov, q_omega_matrix};
use weylpath_core::typea::{all_words, schutzenberger_check, shape_path_equals_pitman};
use weylpath_core::{CoxeterDatum, Error, Path, Rational, Scalar, TypeLabel, Weight, WeylWord};

use crate::error::{CliError, CliResult};
use crate::oracle;
use crate::simulate::{brownian_endpoint_test, d_invariance_test};

/// Grid resolution and bridge refinement used for the Brownian check.
pub const BROWNIAN_RESOLUTION: usize = 1 << 12;
pub const BROWNIAN_REFINEMENT: u32 = 8;
/// Pre-registered seeds for the statistical checks.
pub const STATISTICAL_SEEDS: [u64; 3] = [42, 7, 2024];
/// Smallest acceptable chi-square p-value.
pub const P_THRESHOLD: f64 = 0.001;

/// Enumeration budget for exhaustive checks.
const BUDGET: u64 = 1_000_000;

/// Options shared by all checks.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    pub seed: u64,
    /// Reduced sample counts for a fast smoke run.
    pub quick: bool,
    /// Restricts checks that take a type to this one.
    pub type_label: Option<TypeLabel>,
    pub omega: Option<Weight>,
    pub n: Option<usize>,
    /// Overrides the numerical tolerance of the floating-point checks.
    pub tolerance: Option<f64>,
}

impl Settings {
    pub fn new(seed: u64) -> Self {
        Settings { seed, ..Settings::default() }
    }

    fn count(&self, full: usize, quick: usize) -> usize {
        if self.quick {
            quick
        } else {
            full
        }
    }

    fn tolerance_or(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    /// Independent stream for check `id`.
    fn rng(&self, id: u8) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(u64::from(id));
        rng
    }

    fn types(&self, defaults: &[&str]) -> CliResult<Vec<TypeLabel>> {
        match self.type_label {
            Some(t) => Ok(vec![t]),
            None => defaults.iter().map(|s| TypeLabel::parse(s).map_err(CliError::from)).collect(),
        }
    }
}

type Runner = fn(&Settings) -> CliResult<String>;

/// One named check.
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub aliases: &'static [&'static str],
    pub budget_secs: f64,
    pub description: &'static str,
    run: Runner,
}

/// Result of running one check.
#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub within_budget: bool,
    pub seconds: f64,
    pub budget_secs: f64,
    pub detail: String,
    /// Exit code of the failure, zero on success.
    pub code: i32,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.passed && self.within_budget
    }

    pub fn line(&self) -> String {
        let status = if self.ok() { "PASS" } else { "FAIL" };
        let budget = if self.within_budget { String::new() } else { " OVER BUDGET".to_string() };
        format!(
            "{status} [{:>2}] {:<10} {:>7.2}s / {:>4}s{budget}  {}",
            self.id, self.name, self.seconds, self.budget_secs, self.detail
        )
    }
}

impl Check {
    pub fn matches(&self, name: &str) -> bool {
        self.name == name || self.aliases.contains(&name) || name.parse::<u8>().ok() == Some(self.id)
    }

    pub fn run(&self, settings: &Settings) -> Outcome {
        let start = Instant::now();
        let result = (self.run)(settings);
        let seconds = start.elapsed().as_secs_f64();
        let (passed, detail, code) = match result {
            Ok(d) => (true, d, 0),
            Err(e) => (false, e.to_string(), e.exit_code()),
        };
        Outcome {
            id: self.id,
            name: self.name.to_string(),
            passed,
            within_budget: seconds <= self.budget_secs,
            seconds,
            budget_secs: self.budget_secs,
            detail,
            code,
        }
    }
}

pub static CHECKS: [Check; 14] = [
    Check { id: 1, name: "braid", aliases: &[], budget_secs: 10.0, description: "braid relations of the Pitman transforms", run: braid },
    Check { id: 2, name: "dihedral", aliases: &[], budget_secs: 10.0, description: "closed dihedral formula", run: dihedral },
    Check { id: 3, name: "matsumoto", aliases: &[], budget_secs: 30.0, description: "P_w0 is independent of the reduced word", run: matsumoto },
    Check { id: 4, name: "inverse", aliases: &[], budget_secs: 5.0, description: "Pitman inverse roundtrip", run: inverse },
    Check { id: 5, name: "duality", aliases: &[], budget_secs: 10.0, description: "duality involution I", run: duality },
    Check { id: 6, name: "lr", aliases: &["tensor"], budget_secs: 10.0, description: "Littlewood-Richardson rule and its symmetry", run: lr },
    Check { id: 7, name: "itrail", aliases: &["itrails"], budget_secs: 60.0, description: "i-trail formula for P_w", run: itrail },
    Check { id: 8, name: "gauss", aliases: &["gauss-check"], budget_secs: 60.0, description: "Gauss decomposition against T_w", run: gauss },
    Check { id: 9, name: "tbraid", aliases: &[], budget_secs: 30.0, description: "braid relation of the T operators", run: tbraid },
    Check { id: 10, name: "markov", aliases: &["thm510"], budget_secs: 30.0, description: "exhaustive Markov property of the transformed walk", run: markov },
    Check { id: 11, name: "brownian", aliases: &[], budget_secs: 300.0, description: "endpoint law of P_w0 of Brownian motion", run: brownian },
    Check { id: 12, name: "rsk", aliases: &[], budget_secs: 30.0, description: "RSK shapes and Schutzenberger involution", run: rsk },
    Check { id: 13, name: "tropical", aliases: &[], budget_secs: 5.0, description: "scalar infimum identities", run: tropical },
    Check { id: 14, name: "qd", aliases: &[], budget_secs: 5.0, description: "Q_w0 inverts D_w0 on dominant paths", run: qd },
];

pub fn find(name: &str) -> Option<&'static Check> {
    CHECKS.iter().find(|c| c.matches(name))
}

/// Runs `name`, or every check for `"all"`.
pub fn run_named(name: &str, settings: &Settings) -> CliResult<Vec<Outcome>> {
    if name == "all" {
        return Ok(CHECKS.iter().map(|c| c.run(settings)).collect());
    }
    let check = find(name).ok_or_else(|| {
        let names: Vec<&str> = CHECKS.iter().map(|c| c.name).collect();
        CliError::Usage(format!("unknown check '{name}' (expected all or one of {})", names.join(", ")))
    })?;
    Ok(vec![check.run(settings)])
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        Err(CliError::Assertion(msg()))
    }
}

fn exact(label: TypeLabel) -> CliResult<CoxeterDatum<Rational>> {
    if !label.is_crystallographic() {
        return Err(CliError::Unsupported(format!("{label} (exact check needs a crystallographic type)")));
    }
    Ok(CoxeterDatum::from_label(label)?)
}

fn one() -> Rational {
    Rational::one()
}

fn rpath<R: Rng>(rng: &mut R, rank: usize) -> Path<Rational> {
    random_path(rng, rank, &one(), &PathShape::default())
}

fn braid(s: &Settings) -> CliResult<String> {
    let count = s.count(200, 40);
    let tol = s.tolerance_or(1e-9);
    let mut rng = s.rng(1);
    let mut done = Vec::new();
    for label in s.types(&["A1xA1", "A2", "B2", "G2", "I2(5)"])? {
        let pairs: Vec<(usize, usize, usize)> = {
            let d: CoxeterDatum<f64> = CoxeterDatum::from_label(label)?;
            (0..d.rank()).flat_map(|i| (i + 1..d.rank()).map(move |j| (i, j))).map(|(i, j)| (i, j, d.coxeter_m(i, j) as usize)).collect()
        };
        if pairs.is_empty() {
            return Err(CliError::Usage(format!("{label} has rank one, no braid relations")));
        }
        if label.is_crystallographic() {
            let d = exact(label)?;
            for _ in 0..count {
                let p = rpath(&mut rng, d.rank());
                for &(i, j, m) in &pairs {
                    let a = alternating_product(&d, &p, i, j, m)?;
                    let b = alternating_product(&d, &p, j, i, m)?;
                    ensure(a == b, || format!("{label}: braid relation of length {m} fails for s{} s{}", i + 1, j + 1))?;
                }
            }
        } else {
            let d: CoxeterDatum<f64> = CoxeterDatum::from_label(label)?;
            let mut worst: f64 = 0.0;
            for _ in 0..count {
                let p = random_path(&mut rng, d.rank(), &1.0, &PathShape::default());
                for &(i, j, m) in &pairs {
                    let a = alternating_product(&d, &p, i, j, m)?;
                    let b = alternating_product(&d, &p, j, i, m)?;
                    worst = worst.max(a.sup_distance(&b));
                }
            }
            ensure(worst <= tol, || format!("{label}: sup distance {worst:.3e} > {tol:e}"))?;
        }
        done.push(label.to_string());
    }
    Ok(format!("{count} paths per type, {}", done.join(" ")))
}

fn dihedral(s: &Settings) -> CliResult<String> {
    let count = s.count(100, 20);
    let mut rng = s.rng(2);
    let q = |n: i64| Rational::from_i64(n);
    let mut cases: Vec<(String, DihedralPair<Rational>, usize)> = Vec::new();
    for label in s.types(&["A1xA1", "A2", "B2", "G2"])? {
        let d = exact(label)?;
        if d.rank() != 2 {
            return Err(CliError::Unsupported(format!("{label} (dihedral check needs rank two)")));
        }
        let m = d.coxeter_m(0, 1) as usize;
        for (i, j) in [(0, 1), (1, 0)] {
            cases.push((label.to_string(), DihedralPair::from_datum(&d, i, j), m));
        }
    }
    if s.type_label.is_none() {
        // Affine and hyperbolic pairs: the formula holds for every length.
        for (a, b) in [(-2, -2), (-1, -4), (-4, -1), (-3, -3)] {
            cases.push((format!("cartan({a},{b})"), DihedralPair::from_cartan(q(a), q(b)), usize::MAX));
        }
    }
    for _ in 0..count {
        let p = rpath(&mut rng, 2);
        for (name, pair, m) in &cases {
            for n in 1..=6 {
                let composed = alternating_pair(&p, pair, n);
                match dihedral_closed_form(&p, pair, n) {
                    Ok(closed) => {
                        ensure(n <= *m, || format!("{name}: closed formula accepted n = {n} beyond the group order"))?;
                        ensure(closed == composed, || format!("{name}: closed formula differs at n = {n}"))?;
                    }
                    Err(Error::FormulaHypothesis(_)) => {
                        ensure(n > *m, || format!("{name}: closed formula rejected n = {n}"))?;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(format!("{count} paths, {} ordered pairs, n = 1..6", cases.len()))
}

fn matsumoto(s: &Settings) -> CliResult<String> {
    let count = s.count(50, 10);
    let mut rng = s.rng(3);
    let mut detail = Vec::new();
    for label in s.types(&["A3"])? {
        let d = exact(label)?;
        let words = d.reduced_words(&d.longest_element())?;
        for _ in 0..count {
            let p = rpath(&mut rng, d.rank());
            let mut it = words.iter();
            let first = it.next().expect("w0 has a reduced word");
            let reference = pitman_word(&d, &p, first)?;
            ensure(is_dominant(&d, &reference), || format!("{label}: P_w0 image is not dominant"))?;
            for w in it {
                ensure(pitman_word(&d, &p, w)? == reference, || format!("{label}: word {w} disagrees with {first}"))?;
            }
        }
        detail.push(format!("{label}: {} reduced words", words.len()));
    }
    Ok(format!("{count} paths, {}", detail.join(", ")))
}

fn inverse(s: &Settings) -> CliResult<String> {
    let count = s.count(200, 40);
    let mut rng = s.rng(4);
    let types = s.types(&["A2", "B2", "G2"])?;
    for k in 0..count {
        let label = types[k % types.len()];
        let d = exact(label)?;
        let i = rng.random_range(0..d.rank());
        let eta = pitman(&d, &rpath(&mut rng, d.rank()), i)?;
        let top = d.pair(i, eta.endpoint());
        let x = top * Rational::from_ratio(rng.random_range(0..=24), 24);
        let pi = pitman_inverse(&d, &eta, i, &x)?;
        ensure(pitman(&d, &pi, i)? == eta, || format!("{label}: P(P^-1(eta, x)) != eta"))?;
        ensure(-pi.functional(d.coroot(i)).inf() == x, || format!("{label}: recovered x differs"))?;
    }
    Ok(format!("{count} pairs (eta, x)"))
}

fn duality(s: &Settings) -> CliResult<String> {
    let count = s.count(100, 20);
    let mut rng = s.rng(5);
    let types = s.types(&["A2", "B2"])?;
    for label in &types {
        let d = exact(*label)?;
        for _ in 0..count {
            let p = rpath(&mut rng, d.rank());
            let pw = pitman_w0(&d, &p)?;
            let ip = involution_i(&d, &p)?;
            ensure(involution_i(&d, &ip)? == pw, || format!("{label}: I^2 != P_w0"))?;
            ensure(ip.endpoint() == pw.endpoint(), || format!("{label}: I(pi)(T) != P_w0 pi(T)"))?;
            let ipw = involution_i(&d, &pw)?;
            ensure(is_dominant(&d, &ipw) && involution_i(&d, &ipw)? == pw, || format!("{label}: I is not involutive on a dominant path"))?;
            let e = co_pitman_w0(&d, &p)?;
            ensure(e.endpoint().to_vec() == d.longest_matrix().mul_vec(pw.endpoint()), || format!("{label}: E_w0 pi(T) != w0 P_w0 pi(T)"))?;
        }
    }
    let names: Vec<String> = types.iter().map(ToString::to_string).collect();
    Ok(format!("{count} paths per type, {}", names.join(" ")))
}

fn lr(s: &Settings) -> CliResult<String> {
    let label = s.type_label.unwrap_or(TypeLabel::A(2));
    let d = exact(label)?;
    let lambda = match &s.omega {
        Some(w) => w.clone(),
        None if s.type_label.is_none() => Weight::from_ints(&[1, 1]),
        None => d.weight_of(&d.rho_vector()),
    };
    if lambda.rank() != d.rank() || !lambda.is_dominant() || !lambda.is_integral() {
        return Err(CliError::Usage(format!("{lambda} is not a dominant integral weight of {label}")));
    }
    let pi = straight_highest_path(&d, &lambda, one())?;
    let lr = lr_decompose(&d, &pi, &pi)?;
    ensure(lr.concatenations.iter().all(|c| is_dominant(&d, c)), || "a concatenation in LR(pi, pi) is not dominant".into())?;
    let got: BTreeMap<Weight, u64> = lr.decomposition.iter().map(|(k, &m)| (k.clone(), m)).collect();
    let expected = oracle::tensor_product(&d, &lambda, &lambda);
    ensure(got == expected, || format!("path model {got:?} != character oracle {expected:?}"))?;
    let dim = d.weyl_dimension(&lambda)?;
    let total = lr.decomposition.total_dimension(&d)?;
    ensure(total == dim * dim, || format!("total dimension {total} != {}", dim * dim))?;
    let mut dims: Vec<(u64, u64)> = got.iter().map(|(k, &m)| Ok((d.weyl_dimension(k)?, m))).collect::<CliResult<_>>()?;
    dims.sort_unstable_by(|a, b| b.cmp(a));
    if s.type_label.is_none() && s.omega.is_none() {
        ensure(dims == vec![(27, 1), (10, 1), (10, 1), (8, 2), (1, 1)], || format!("dimensions {dims:?}"))?;
    }
    let sym = lr_symmetry(&d, &pi, &pi)?;
    ensure(sym.holds(), || "I does not map LR(pi, eta) onto LR(I eta, I pi)".into())?;
    let text: Vec<String> = dims.iter().map(|(dm, m)| format!("{dm}:{m}")).collect();
    Ok(format!("{label} V({lambda})^2 = {{{}}}, total {total}, symmetry on {} paths", text.join(", "), sym.size))
}

fn itrail(s: &Settings) -> CliResult<String> {
    use weylpath_core::itrail::pitman_via_itrails;
    let plan: Vec<(TypeLabel, usize)> = match s.type_label {
        Some(t) => vec![(t, s.count(50, 10))],
        None => vec![(TypeLabel::A(2), s.count(100, 20)), (TypeLabel::A(3), s.count(20, 4))],
    };
    let mut rng = s.rng(7);
    let mut detail = Vec::new();
    for (label, count) in plan {
        let d = exact(label)?;
        let words: Vec<WeylWord> = d.elements().iter().map(|e| e.word.clone()).filter(|w| !w.is_empty()).collect();
        for _ in 0..count {
            let p = rpath(&mut rng, d.rank());
            for w in &words {
                ensure(pitman_via_itrails(&d, &p, w)? == pitman_word(&d, &p, w)?, || format!("{label}: i-trail formula differs for {w}"))?;
            }
        }
        detail.push(format!("{label}: {count} paths x {} words", words.len()));
    }
    Ok(detail.join(", "))
}

fn gauss(s: &Settings) -> CliResult<String> {
    let tol = s.tolerance_or(1e-6);
    let label = s.type_label.unwrap_or(TypeLabel::A(2));
    let d = exact(label)?;
    let mut words = vec![WeylWord::from_one_based(&[1])?];
    if d.rank() >= 2 {
        words.push(WeylWord::from_one_based(&[1, 2])?);
    }
    words.push(d.longest_element());
    let intervals = if s.quick { 1 << 10 } else { 1 << 12 };
    let count = s.count(3, 1);
    let mut rng = s.rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let a = random_grid_path(&mut rng, d.rank(), 8);
        for w in &words {
            let err = verify_theorem_main(&d, &a, w, intervals)?;
            ensure(err <= tol, || format!("{label} {w}: relative error {err:.3e} > {tol:e}"))?;
            worst = worst.max(err);
        }
    }
    let names: Vec<String> = words.iter().map(ToString::to_string).collect();
    Ok(format!("{label}, {count} paths, grid {intervals}, words {}, max relative error {worst:.2e}", names.join(" ")))
}

fn tbraid(s: &Settings) -> CliResult<String> {
    let tol = s.tolerance_or(1e-6);
    let label = s.type_label.unwrap_or(TypeLabel::A(2));
    if !label.is_crystallographic() {
        return Err(CliError::Unsupported(format!("{label} (T operators need a crystallographic type)")));
    }
    let d: CoxeterDatum<f64> = CoxeterDatum::from_label(label)?;
    if d.rank() < 2 {
        return Err(CliError::Usage(format!("{label} has rank one, no braid relations")));
    }
    let m = d.coxeter_m(0, 1) as usize;
    let alt = |a: usize, b: usize| WeylWord::new((0..m).map(|k| if k % 2 == 0 { a } else { b }).collect());
    let (w1, w2) = (alt(0, 1), alt(1, 0));
    let count = s.count(20, 4);
    let intervals = 1 << 12;
    let mut rng = s.rng(9);
    let mut worst: f64 = 0.0;
    for _ in 0..count {
        let g = GridPath::sample(&random_grid_path(&mut rng, d.rank(), 8), intervals)?;
        let err = t_word(&d, &g, &w1)?.max_relative_error(&t_word(&d, &g, &w2)?);
        ensure(err <= tol, || format!("{label}: T_{w1} vs T_{w2} relative error {err:.3e} > {tol:e}"))?;
        worst = worst.max(err);
    }
    Ok(format!("{label}, {count} grid paths of {intervals} steps, T_{w1} = T_{w2}, max relative error {worst:.2e}"))
}

fn markov(s: &Settings) -> CliResult<String> {
    let label = s.type_label.unwrap_or(TypeLabel::A(2));
    let d = exact(label)?;
    let omega = match &s.omega {
        Some(w) => w.clone(),
        None => {
            let mut c = vec![0; d.rank()];
            c[0] = 1;
            Weight::from_ints(&c)
        }
    };
    let n = s.n.unwrap_or(4);
    let report = exhaustive_verify_markov(&d, &omega, n, BUDGET)?;
    ensure(report.kernels_agree, || "q_omega from LR multiplicities differs from the alternating sum".into())?;
    for h in &report.histories {
        ensure(h.holds(), || format!("history at level {} ending at {}: continuation counts differ", h.level, h.mu))?;
        ensure(h.total_pairs() == h.dim_mu * h.dim_omega, || format!("pair count {} != dim mu dim omega", h.total_pairs()))?;
    }
    let matrix = q_omega_matrix(&d, &omega, n, BUDGET)?;
    ensure(matrix.rows_sum_to_one(), || "a row of q_omega does not sum to one".into())?;
    Ok(format!("{label} omega={omega} n={n}: {} concatenations, {} histories, {} kernel rows", report.concatenations, report.histories.len(), matrix.len()))
}

fn brownian(s: &Settings) -> CliResult<String> {
    let samples = s.count(20_000, 4_000);
    let mut runs: Vec<(TypeLabel, u64, (usize, usize))> = Vec::new();
    match s.type_label {
        Some(t) => runs.extend(STATISTICAL_SEEDS.iter().map(|&seed| (t, seed, crate::simulate::default_bins(t.rank())))),
        None => {
            runs.extend(STATISTICAL_SEEDS.iter().map(|&seed| (TypeLabel::A(1), seed, (20, 1))));
            runs.push((TypeLabel::A(2), STATISTICAL_SEEDS[0], (10, 5)));
        }
    }
    let mut parts = Vec::new();
    for (label, seed, bins) in runs {
        let r = brownian_endpoint_test(label, samples, BROWNIAN_RESOLUTION, BROWNIAN_REFINEMENT, seed, Some(bins))?;
        ensure(r.total_observed() == samples as u64, || "bin counts do not add up to the sample size".into())?;
        ensure(r.p_value > P_THRESHOLD, || format!("{label} seed {seed}: chi-square p = {:.2e} <= {P_THRESHOLD}", r.p_value))?;
        let z: Vec<String> = r.moments.iter().map(|m| format!("{:+.2}", m.z)).collect();
        parts.push(format!("{label}/{seed} p={:.3} z=[{}]", r.p_value, z.join(",")));
    }
    // Informational: the law of D_w0 X under drift.
    let dinv = d_invariance_test(s.type_label.unwrap_or(TypeLabel::A(2)), None, s.count(2_000, 400), 64, s.seed)?;
    parts.push(format!(
        "D-invariance p={:.3} mean-z max {:.2} corr-z {:.2}",
        dinv.p_value,
        dinv.mean_z.iter().fold(0.0f64, |a, z| a.max(z.abs())),
        dinv.max_correlation_z
    ));
    Ok(format!("{samples} samples: {}", parts.join("; ")))
}

fn rsk(s: &Settings) -> CliResult<String> {
    let (max3, max2) = if s.quick { (3, 4) } else { (4, 5) };
    let mut shapes = 0;
    for len in 1..=max3 {
        for word in all_words(3, len) {
            ensure(shape_path_equals_pitman(&word, 3)?, || format!("shape path differs from P_w0 for {word:?}"))?;
            shapes += 1;
        }
    }
    let mut dual = 0;
    for len in 1..=max2 {
        for word in all_words(2, len) {
            ensure(schutzenberger_check(&word, 2)?, || format!("Schutzenberger check fails for {word:?}"))?;
            dual += 1;
        }
    }
    Ok(format!("{shapes} words in 3 letters, {dual} words in 2 letters"))
}

fn tropical(s: &Settings) -> CliResult<String> {
    let count = s.count(100, 20);
    let mut rng = s.rng(13);
    let two = Rational::from_i64(2);
    let mut draw = || -> ScalarPath<Rational> { random_scalar_path(&mut rng, &two, &PathShape::default()) };
    for _ in 0..count {
        let (x, y, z) = (draw(), draw(), draw());
        let (l, r) = inf_splitting_sides(&x, &y);
        ensure(l == r, || "infimum splitting identity fails".into())?;
        let (l, r) = tropical_identity_sides(&x, &y, &z);
        ensure(l == r, || "tropical identity fails".into())?;
    }
    Ok(format!("{count} pairs and triples"))
}

fn qd(s: &Settings) -> CliResult<String> {
    let count = s.count(50, 10);
    let mut rng = s.rng(14);
    let label = s.type_label.unwrap_or(TypeLabel::A(2));
    let d = exact(label)?;
    let w0 = d.longest_element();
    for _ in 0..count {
        let pi = pitman_w0(&d, &rpath(&mut rng, d.rank()))?;
        ensure(is_dominant(&d, &pi), || "P_w0 image is not dominant".into())?;
        ensure(q_w0(&d, &d_w0(&d, &pi, &w0)?, &w0)? == pi, || format!("{label}: Q_w0 D_w0 pi != pi"))?;
    }
    Ok(format!("{label}, {count} dominant paths"))
}
