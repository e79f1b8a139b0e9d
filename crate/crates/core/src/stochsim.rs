//! Random walks built from Littelmann modules, the kernel `q_omega` of the
//! Pitman-transformed walk, heat kernels of the Weyl chamber and the
//! samplers behind the statistical checks.
//!
//! Brownian motion has identity covariance in the Euclidean structure given
//! by the Gram matrix, so in simple-root coordinates its covariance is the
//! inverse Gram matrix.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::duality::d_w0;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::littelmann::{check_budget, character_of_module, generate_module, lr_decompose, straight_highest_path, WeightMultiset};
use crate::pathcore::Path;
use crate::pitman::pitman_w0;
use crate::rootsys::{CoxeterDatum, TypeLabel, Weight};
use crate::scalar::{Rational, Scalar};

/// Parameters of a walk or Brownian simulation.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    pub label: TypeLabel,
    pub omega: Weight,
    pub steps: usize,
    pub seed: u64,
    /// Drift in simple-root coordinates.
    pub drift: Option<Vec<f64>>,
    /// Grid intervals per unit time for Brownian paths.
    pub resolution: usize,
}

/// Default Brownian grid resolution.
pub const DEFAULT_RESOLUTION: usize = 1 << 12;

impl WalkConfig {
    pub fn new(label: TypeLabel, omega: Weight, steps: usize, seed: u64) -> Self {
        WalkConfig { label, omega, steps, seed, drift: None, resolution: DEFAULT_RESOLUTION }
    }

    pub fn datum(&self) -> Result<CoxeterDatum<Rational>> {
        CoxeterDatum::from_label(self.label)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.datum()?;
        if self.omega.rank() != d.rank() {
            return Err(Error::DimensionMismatch { expected: d.rank(), got: self.omega.rank() });
        }
        if self.omega.is_zero() {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        if !self.omega.is_dominant() {
            return Err(Error::NotDominant);
        }
        if !self.omega.is_integral() {
            return Err(Error::NotIntegral);
        }
        if !self.resolution.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("resolution {} is not a power of two", self.resolution)));
        }
        if let Some(xi) = &self.drift {
            d.check_vector(&xi.iter().map(|_| Rational::zero()).collect::<Vec<_>>())?;
        }
        Ok(())
    }
}

/// `q_omega(mu, lambda)` on the dominant weights reached from 0.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransitionMatrix {
    rows: BTreeMap<Weight, BTreeMap<Weight, Rational>>,
}

impl TransitionMatrix {
    pub fn get(&self, mu: &Weight, lambda: &Weight) -> Rational {
        self.rows.get(mu).and_then(|r| r.get(lambda)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn row(&self, mu: &Weight) -> Option<&BTreeMap<Weight, Rational>> {
        self.rows.get(mu)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BTreeMap<Weight, Rational>)> {
        self.rows.iter()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows_sum_to_one(&self) -> bool {
        self.rows.values().all(|r| r.values().fold(Rational::zero(), |a, b| a + b) == Rational::one())
    }
}

fn dim_q(d: &CoxeterDatum<Rational>, w: &Weight) -> Result<Rational> {
    Ok(Rational::from_i64(d.weyl_dimension(w)? as i64))
}

/// Row `mu` of `q_omega` from tensor multiplicities:
/// `M^lambda_{omega, mu} dim lambda / (dim omega dim mu)`.
pub fn q_omega_row(d: &CoxeterDatum<Rational>, omega: &Weight, mu: &Weight) -> Result<BTreeMap<Weight, Rational>> {
    let one = Rational::one();
    let pi_mu = straight_highest_path(d, mu, one.clone())?;
    let pi_omega = straight_highest_path(d, omega, one)?;
    let lr = lr_decompose(d, &pi_mu, &pi_omega)?;
    let denom = dim_q(d, omega)? * dim_q(d, mu)?;
    lr.decomposition
        .iter()
        .map(|(lambda, &m)| Ok((lambda.clone(), Rational::from_i64(m as i64) * dim_q(d, lambda)? / denom.clone())))
        .collect()
}

/// Rows of `q_omega` for every dominant weight reachable from 0 in at most
/// `level` steps.
pub fn q_omega_matrix(d: &CoxeterDatum<Rational>, omega: &Weight, level: usize, budget: u64) -> Result<TransitionMatrix> {
    let mut rows = BTreeMap::new();
    let mut frontier: BTreeSet<Weight> = BTreeSet::from([Weight::zero(d.rank())]);
    for _ in 0..=level {
        let mut next = BTreeSet::new();
        for mu in frontier {
            if rows.contains_key(&mu) {
                continue;
            }
            if d.weyl_dimension(&mu)? > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            let row = q_omega_row(d, omega, &mu)?;
            next.extend(row.keys().cloned());
            rows.insert(mu, row);
        }
        frontier = next;
    }
    Ok(TransitionMatrix { rows })
}

/// The alternating sum
/// `(dim lambda / dim mu) sum_w eps(w) m^omega_{w(lambda + rho) - (mu + rho)} / dim omega`.
pub fn q_omega_alternating(
    d: &CoxeterDatum<Rational>,
    character: &WeightMultiset,
    omega: &Weight,
    mu: &Weight,
    lambda: &Weight,
) -> Result<Rational> {
    let rho = d.rho();
    let shifted = lambda.add(&rho);
    let base = mu.add(&rho);
    let mut sum = 0i64;
    for e in d.elements() {
        let diff = d.act_on_weight(&e.matrix, &shifted).sub(&base);
        sum += i64::from(e.sign()) * character.multiplicity(&diff) as i64;
    }
    Ok(dim_q(d, lambda)? * Rational::from_i64(sum) / (dim_q(d, mu)? * dim_q(d, omega)?))
}

/// Compares every row of the tensor-based matrix with the alternating sum,
/// including all `lambda = mu + weight of omega` outside the support.
pub fn cross_check_q(d: &CoxeterDatum<Rational>, omega: &Weight, matrix: &TransitionMatrix) -> Result<bool> {
    let module = generate_module(d, &straight_highest_path(d, omega, Rational::one())?)?;
    let character = character_of_module(d, &module);
    for (mu, row) in matrix.iter() {
        let candidates: BTreeSet<Weight> =
            character.iter().map(|(w, _)| mu.add(w)).filter(Weight::is_dominant).chain(row.keys().cloned()).collect();
        for lambda in candidates {
            if q_omega_alternating(d, &character, omega, mu, &lambda)? != matrix.get(mu, &lambda) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn rational_to<S: Scalar>(x: &Rational) -> S {
    match (x.numer().to_i64(), x.denom().to_i64()) {
        (Some(n), Some(m)) => S::from_ratio(n, m),
        _ => S::try_from_f64(Scalar::to_f64(x)).unwrap_or_else(|| S::from_i64(x.floor_i64())),
    }
}

/// Uniform draws from a Littelmann module `B pi_omega`, concatenated
/// without rescaling time.
#[derive(Clone, Debug)]
pub struct WalkSampler<S> {
    paths: Vec<Path<S>>,
}

impl<S: Scalar> WalkSampler<S> {
    /// Sampler for the module of the straight path to `omega` on `[0, 1]`.
    pub fn new(d: &CoxeterDatum<Rational>, omega: &Weight) -> Result<Self> {
        if omega.is_zero() {
            return Err(Error::InvalidArgument("omega must be nonzero".into()));
        }
        let module = generate_module(d, &straight_highest_path(d, omega, Rational::one())?)?;
        let paths = module.paths().iter().map(|p| p.map_scalars(rational_to::<S>)).collect();
        Ok(WalkSampler { paths })
    }

    pub fn paths(&self) -> &[Path<S>] {
        &self.paths
    }

    pub fn module_size(&self) -> usize {
        self.paths.len()
    }

    /// `eta_{k_1} * ... * eta_{k_n}` for the given member indices.
    pub fn concatenate(&self, indices: &[usize]) -> Result<Path<S>> {
        let dim = self.paths[0].dim();
        let mut times = vec![S::zero()];
        let mut values = vec![vec![S::zero(); dim]];
        for (k, &idx) in indices.iter().enumerate() {
            let p = self.paths.get(idx).ok_or_else(|| Error::OutOfRange(format!("module index {idx}")))?;
            let offset = values.last().expect("nonempty").clone();
            let shift = S::from_i64(k as i64);
            for (t, v) in p.breakpoints().skip(1) {
                times.push(shift.clone() + t.clone());
                values.push(offset.iter().zip(v).map(|(a, b)| a.clone() + b.clone()).collect());
            }
        }
        if indices.is_empty() {
            return Err(Error::InvalidArgument("a walk needs at least one step".into()));
        }
        Path::new(times, values)
    }

    /// The path `Z` on `[0, n]`.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Path<S>> {
        let indices: Vec<usize> = (0..n).map(|_| rng.random_range(0..self.paths.len())).collect();
        self.concatenate(&indices)
    }

    /// `Z(n)` alone: a sum of `n` draws from `nu_omega`.
    pub fn sample_endpoint<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<S> {
        let mut out = vec![S::zero(); self.paths[0].dim()];
        for _ in 0..n {
            let p = &self.paths[rng.random_range(0..self.paths.len())];
            for (o, v) in out.iter_mut().zip(p.endpoint()) {
                *o = o.clone() + v.clone();
            }
        }
        out
    }
}

/// `(Z, P_{w0} Z)` on `[0, n]`.
pub fn transformed_walk<S: Scalar, R: Rng + ?Sized>(
    d: &CoxeterDatum<S>,
    sampler: &WalkSampler<S>,
    n: usize,
    rng: &mut R,
) -> Result<(Path<S>, Path<S>)> {
    let z = sampler.sample(n, rng)?;
    let pz = pitman_w0(d, &z)?;
    Ok((z, pz))
}

/// Covariance of `nu_omega` in simple-root coordinates.
pub fn nu_covariance(d: &CoxeterDatum<Rational>, omega: &Weight) -> Result<Matrix<f64>> {
    let sampler: WalkSampler<f64> = WalkSampler::new(d, omega)?;
    let samples: Vec<Vec<f64>> = sampler.paths().iter().map(|p| p.endpoint().to_vec()).collect();
    Ok(covariance(&samples, false))
}

/// Covariance of a sample, centred at the sample mean when `centred` is set
/// and at 0 otherwise.
pub fn covariance(samples: &[Vec<f64>], centred: bool) -> Matrix<f64> {
    let r = samples.first().map_or(0, Vec::len);
    let n = samples.len().max(1) as f64;
    let mut mean = vec![0.0; r];
    if centred {
        for s in samples {
            for (m, x) in mean.iter_mut().zip(s) {
                *m += x / n;
            }
        }
    }
    Matrix::from_fn(r, r, |i, j| samples.iter().map(|s| (s[i] - mean[i]) * (s[j] - mean[j])).sum::<f64>() / n)
}

/// One dominant history `gamma` at a level of the exhaustive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistoryCheck {
    pub level: usize,
    /// `P_{w0}` of the prefix; `None` at level 0.
    pub history: Option<Path<Rational>>,
    pub mu: Weight,
    /// Number of prefixes with this history.
    pub fiber: u64,
    pub dim_mu: u64,
    /// Continuations `(prefix, eta)` counted by the next endpoint `lambda`.
    pub counts: BTreeMap<Weight, u64>,
    /// `M^lambda_{omega, mu} dim lambda`.
    pub expected: BTreeMap<Weight, u64>,
    pub dim_omega: u64,
    /// Conditional frequencies equal `q_omega(mu, .)`.
    pub frequencies_match: bool,
}

impl HistoryCheck {
    pub fn total_pairs(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn holds(&self) -> bool {
        self.counts == self.expected
            && self.fiber == self.dim_mu
            && self.total_pairs() == self.dim_mu * self.dim_omega
            && self.frequencies_match
    }
}

/// Result of the exhaustive Markov-property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkovReport {
    pub omega: Weight,
    pub steps: usize,
    pub concatenations: u64,
    pub histories: Vec<HistoryCheck>,
    /// The tensor-based and alternating-sum kernels agree.
    pub kernels_agree: bool,
}

impl MarkovReport {
    pub fn holds(&self) -> bool {
        self.kernels_agree && self.histories.iter().all(HistoryCheck::holds)
    }
}

/// Enumerates `B(pi_omega)^{*n}` and checks that `P_{w0} Z(k + 1)` given the
/// history `P_{w0} Z` on `[0, k]` has law `q_omega(mu, .)`, for `k < n`.
pub fn exhaustive_verify_markov(d: &CoxeterDatum<Rational>, omega: &Weight, n: usize, budget: u64) -> Result<MarkovReport> {
    let sampler: WalkSampler<Rational> = WalkSampler::new(d, omega)?;
    let size = sampler.module_size();
    let concatenations = check_budget(size, n, budget)?;
    let matrix = q_omega_matrix(d, omega, n.saturating_sub(1), budget)?;
    let kernels_agree = cross_check_q(d, omega, &matrix)?;
    let dim_omega = d.weyl_dimension(omega)?;
    let mut histories = Vec::new();
    let mut prefixes: Vec<Vec<usize>> = vec![Vec::new()];
    for level in 0..n {
        let mut fibers: BTreeMap<Option<Path<Rational>>, (u64, BTreeMap<Weight, u64>)> = BTreeMap::new();
        for prefix in &prefixes {
            let history = if prefix.is_empty() { None } else { Some(pitman_w0(d, &sampler.concatenate(prefix)?)?) };
            let entry = fibers.entry(history).or_default();
            entry.0 += 1;
            for k in 0..size {
                let mut word = prefix.clone();
                word.push(k);
                let lambda = d.weight_of(pitman_w0(d, &sampler.concatenate(&word)?)?.endpoint());
                *entry.1.entry(lambda).or_insert(0) += 1;
            }
        }
        for (history, (fiber, counts)) in fibers {
            let mu = history.as_ref().map_or_else(|| Weight::zero(d.rank()), |h| d.weight_of(h.endpoint()));
            let dim_mu = d.weyl_dimension(&mu)?;
            let row = q_omega_row(d, omega, &mu)?;
            let expected = row
                .iter()
                .map(|(lambda, q)| {
                    let c = q.clone() * Rational::from_i64((dim_omega * dim_mu) as i64);
                    (lambda.clone(), c.floor_i64() as u64)
                })
                .collect();
            let total = Rational::from_i64(counts.values().sum::<u64>() as i64);
            let frequencies_match = counts.len() == row.len()
                && counts.iter().all(|(lambda, &c)| Rational::from_i64(c as i64) / total.clone() == matrix.get(&mu, lambda));
            histories.push(HistoryCheck { level, history, mu, fiber, dim_mu, counts, expected, dim_omega, frequencies_match });
        }
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                (0..size).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    Ok(MarkovReport { omega: omega.clone(), steps: n, concatenations, histories, kernels_agree })
}

fn check_time(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("time {t} must be positive")))
    }
}

fn check_closed_chamber(d: &CoxeterDatum<f64>, v: &[f64]) -> Result<()> {
    d.check_vector(v)?;
    if (0..d.rank()).all(|i| d.pair(i, v) >= -1e-12) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{v:?} is outside the closed chamber")))
    }
}

fn norm_sq(d: &CoxeterDatum<f64>, v: &[f64]) -> f64 {
    d.inner(v, v)
}

fn diff(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Gaussian kernel `p_t(x, y)` with identity covariance in the Euclidean structure.
pub fn gaussian_kernel(d: &CoxeterDatum<f64>, x: &[f64], y: &[f64], t: f64) -> Result<f64> {
    check_time(t)?;
    d.check_vector(x)?;
    d.check_vector(y)?;
    let r = d.rank() as f64;
    Ok((2.0 * core::f64::consts::PI * t).powf(-r / 2.0) * (-norm_sq(d, &diff(x, y)) / (2.0 * t)).exp())
}

/// Killed kernel `p^0_t(x, y) = sum_w eps(w) p_t(x, w y)`.
pub fn killed_kernel(d: &CoxeterDatum<f64>, x: &[f64], y: &[f64], t: f64) -> Result<f64> {
    check_closed_chamber(d, x)?;
    check_closed_chamber(d, y)?;
    let mut s = 0.0;
    for e in d.elements() {
        s += f64::from(e.sign()) * gaussian_kernel(d, x, &e.matrix.mul_vec(y), t)?;
    }
    Ok(s)
}

/// `h_xi(x) = sum_w eps(w) exp(<xi, w x - x>)`.
pub fn h_xi(d: &CoxeterDatum<f64>, xi: &[f64], x: &[f64]) -> Result<f64> {
    d.check_vector(xi)?;
    d.check_vector(x)?;
    Ok(d.elements().iter().map(|e| f64::from(e.sign()) * d.inner(xi, &diff(&e.matrix.mul_vec(x), x)).exp()).sum())
}

fn drift_factor(d: &CoxeterDatum<f64>, xi: &[f64], x: &[f64], y: &[f64], t: f64) -> f64 {
    (d.inner(xi, &diff(y, x)) - norm_sq(d, xi) * t / 2.0).exp()
}

/// Doob kernel `q_t(x, y) = h(y) / h(x) p^0_t(x, y)`, continued to `x = 0`.
pub fn doob_kernel(d: &CoxeterDatum<f64>, x: &[f64], y: &[f64], t: f64) -> Result<f64> {
    check_closed_chamber(d, x)?;
    check_closed_chamber(d, y)?;
    check_time(t)?;
    let hx = d.h_function(x);
    if hx > 1e-300 {
        return Ok(d.h_function(y) / hx * killed_kernel(d, x, y, t)?);
    }
    if x.iter().all(|v| *v == 0.0) {
        return ChamberFrame::new(d)?.limit_density(d, y, t);
    }
    Err(Error::InvalidArgument("q_t(x, .) is continued only to x = 0 on the boundary".into()))
}

/// Values of the chamber kernels at one `(x, y, t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChamberKernels {
    pub p: f64,
    pub p0: f64,
    pub q: f64,
    /// Present when a drift is given.
    pub p_xi: Option<f64>,
    pub q_xi: Option<f64>,
    pub h_xi_x: Option<f64>,
    pub h_xi_y: Option<f64>,
}

/// All kernels at once. `xi` must lie in the open chamber.
pub fn chamber_kernels(d: &CoxeterDatum<f64>, x: &[f64], y: &[f64], t: f64, xi: Option<&[f64]>) -> Result<ChamberKernels> {
    let p = gaussian_kernel(d, x, y, t)?;
    let p0 = killed_kernel(d, x, y, t)?;
    let q = doob_kernel(d, x, y, t)?;
    let mut out = ChamberKernels { p, p0, q, p_xi: None, q_xi: None, h_xi_x: None, h_xi_y: None };
    if let Some(xi) = xi {
        d.check_vector(xi)?;
        if xi.iter().any(|v| *v != 0.0) && !(0..d.rank()).all(|i| d.pair(i, xi) > 0.0) {
            return Err(Error::OutOfRange("drift must lie in the open chamber".into()));
        }
        let f = drift_factor(d, xi, x, y, t);
        let hx = h_xi(d, xi, x)?;
        let hy = h_xi(d, xi, y)?;
        out.p_xi = Some(p * f);
        out.q_xi = if hx > 0.0 { Some(p0 * hy / hx * f) } else { None };
        out.h_xi_x = Some(hx);
        out.h_xi_y = Some(hy);
    }
    Ok(out)
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky(g: &Matrix<f64>) -> Result<Matrix<f64>> {
    let n = g.rows();
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = (0..j).map(|k| l[(i, k)] * l[(j, k)]).sum();
            if i == j {
                let v = g[(i, i)] - s;
                if !(v > 0.0) {
                    return Err(Error::InvalidArgument("matrix is not positive definite".into()));
                }
                l[(i, j)] = v.sqrt();
            } else {
                l[(i, j)] = (g[(i, j)] - s) / l[(j, j)];
            }
        }
    }
    Ok(l)
}

/// Polar coordinates adapted to the chamber of a rank 1 or 2 system, and
/// the law of Brownian motion in the chamber started at 0.
///
/// With `k = N + r / 2` (`N` positive roots, rank `r`), the density
/// `q_1(0, y)` is proportional to `h(y)^2 exp(-|y|^2 / 2)`; `|y|^2 / 2` has
/// the Gamma(k) law and the angle has density proportional to `h^2` on the
/// unit circle.
#[derive(Clone, Debug)]
pub struct ChamberFrame {
    rank: usize,
    /// Euclidean coordinates `y = upper c`.
    upper: Matrix<f64>,
    /// Simple-root coordinates `c = upper_inv y`.
    upper_inv: Matrix<f64>,
    /// Orthonormal frame: `e1` along `omega_1`, `e2` towards `omega_2`.
    frame: [Vec<f64>; 2],
    opening: f64,
    positive_roots: usize,
    angular_mass: f64,
    angular_table: Vec<f64>,
}

const ANGULAR_PANELS: usize = 1 << 14;

impl ChamberFrame {
    pub fn new(d: &CoxeterDatum<f64>) -> Result<Self> {
        let rank = d.rank();
        if rank > 2 {
            return Err(Error::UnsupportedType(format!("{} (chamber frame needs rank <= 2)", d.label())));
        }
        let l = cholesky(d.gram())?;
        let upper = l.transpose();
        let upper_inv = upper.inverse().ok_or_else(|| Error::InvalidArgument("singular Gram matrix".into()))?;
        let unit = |v: Vec<f64>| {
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.into_iter().map(|x| x / n).collect::<Vec<f64>>()
        };
        let e1 = unit(upper.mul_vec(&d.fundamental_weight(0)));
        let (e2, opening) = if rank == 2 {
            let w2 = upper.mul_vec(&d.fundamental_weight(1));
            let along: f64 = w2.iter().zip(&e1).map(|(a, b)| a * b).sum();
            let e2 = unit(w2.iter().zip(&e1).map(|(a, b)| a - along * b).collect());
            let across: f64 = w2.iter().zip(&e2).map(|(a, b)| a * b).sum();
            (e2, across.atan2(along))
        } else {
            (vec![0.0], 0.0)
        };
        let mut frame = ChamberFrame {
            rank,
            upper,
            upper_inv,
            frame: [e1, e2],
            opening,
            positive_roots: d.positive_roots().len(),
            angular_mass: 0.0,
            angular_table: Vec::new(),
        };
        if rank == 1 {
            frame.angular_mass = frame.angular_weight(d, 0.0);
        } else {
            let h = opening / ANGULAR_PANELS as f64;
            let mut table = vec![0.0; ANGULAR_PANELS + 1];
            let mut prev = frame.angular_weight(d, 0.0);
            for k in 1..=ANGULAR_PANELS {
                let mid = frame.angular_weight(d, (k as f64 - 0.5) * h);
                let cur = frame.angular_weight(d, k as f64 * h);
                table[k] = table[k - 1] + h * (prev + 4.0 * mid + cur) / 6.0;
                prev = cur;
            }
            frame.angular_mass = table[ANGULAR_PANELS];
            frame.angular_table = table;
        }
        Ok(frame)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Angle between the two walls (0 in rank 1).
    pub fn opening(&self) -> f64 {
        self.opening
    }

    /// Shape `k` of the Gamma law of `|y|^2 / 2`.
    pub fn radial_shape(&self) -> f64 {
        self.positive_roots as f64 + self.rank as f64 / 2.0
    }

    pub fn euclidean(&self, c: &[f64]) -> Vec<f64> {
        self.upper.mul_vec(c)
    }

    pub fn root_coordinates(&self, y: &[f64]) -> Vec<f64> {
        self.upper_inv.mul_vec(y)
    }

    /// `(|y|, theta)` with `theta` measured from the `omega_1` wall.
    pub fn polar(&self, c: &[f64]) -> (f64, f64) {
        let y = self.euclidean(c);
        let r = y.iter().map(|x| x * x).sum::<f64>().sqrt();
        if self.rank == 1 {
            return (r, 0.0);
        }
        let a: f64 = y.iter().zip(&self.frame[0]).map(|(p, q)| p * q).sum();
        let b: f64 = y.iter().zip(&self.frame[1]).map(|(p, q)| p * q).sum();
        (r, b.atan2(a))
    }

    /// Unit vector at angle `theta`, in simple-root coordinates.
    pub fn direction(&self, theta: f64) -> Vec<f64> {
        if self.rank == 1 {
            return self.root_coordinates(&self.frame[0]);
        }
        let y: Vec<f64> = self.frame[0].iter().zip(&self.frame[1]).map(|(a, b)| theta.cos() * a + theta.sin() * b).collect();
        self.root_coordinates(&y)
    }

    /// Point with polar coordinates `(r, theta)`, in simple-root coordinates.
    pub fn point(&self, r: f64, theta: f64) -> Vec<f64> {
        self.direction(theta).into_iter().map(|x| r * x).collect()
    }

    /// `h(u(theta))^2`.
    pub fn angular_weight(&self, d: &CoxeterDatum<f64>, theta: f64) -> f64 {
        let h = d.h_function(&self.direction(theta));
        h * h
    }

    /// Probability that the angle is at most `theta`.
    pub fn angular_cdf(&self, theta: f64) -> f64 {
        if self.rank == 1 {
            return 1.0;
        }
        let x = (theta / self.opening * ANGULAR_PANELS as f64).clamp(0.0, ANGULAR_PANELS as f64);
        let k = (x.floor() as usize).min(ANGULAR_PANELS - 1);
        let f = x - k as f64;
        (self.angular_table[k] * (1.0 - f) + self.angular_table[k + 1] * f) / self.angular_mass
    }

    /// Inverse of [`angular_cdf`](Self::angular_cdf).
    pub fn angular_quantile(&self, p: f64) -> f64 {
        if self.rank == 1 {
            return 0.0;
        }
        let target = p.clamp(0.0, 1.0) * self.angular_mass;
        let k = self.angular_table.partition_point(|&v| v < target).clamp(1, ANGULAR_PANELS);
        let (lo, hi) = (self.angular_table[k - 1], self.angular_table[k]);
        let f = if hi > lo { (target - lo) / (hi - lo) } else { 0.0 };
        (k as f64 - 1.0 + f) / ANGULAR_PANELS as f64 * self.opening
    }

    /// `int_C h(y)^2 exp(-|y|^2 / 2) dy`.
    pub fn normalizer(&self) -> f64 {
        let k = self.radial_shape();
        self.angular_mass * (k - 1.0).exp2() * libm::tgamma(k)
    }

    /// `q_t(0, y) = h(y)^2 exp(-|y|^2 / 2t) / (Z t^k)`.
    pub fn limit_density(&self, d: &CoxeterDatum<f64>, y: &[f64], t: f64) -> Result<f64> {
        check_time(t)?;
        check_closed_chamber(d, y)?;
        let h = d.h_function(y);
        Ok(h * h * (-norm_sq(d, y) / (2.0 * t)).exp() / (self.normalizer() * t.powf(self.radial_shape())))
    }

    /// `E[alpha_i^vee(Y)]` for `Y` with density `q_1(0, .)`.
    pub fn mean_coroot(&self, d: &CoxeterDatum<f64>, i: usize) -> f64 {
        let k = self.radial_shape();
        let mean_r = core::f64::consts::SQRT_2 * (libm::lgamma(k + 0.5) - libm::lgamma(k)).exp();
        if self.rank == 1 {
            return mean_r * d.pair(i, &self.direction(0.0));
        }
        let f = |theta: f64| d.pair(i, &self.direction(theta)) * self.angular_weight(d, theta);
        let h = self.opening / 4096.0;
        let mut s = 0.0;
        for k in 0..4096 {
            let a = k as f64 * h;
            s += h * (f(a) + 4.0 * f(a + h / 2.0) + f(a + h)) / 6.0;
        }
        mean_r * s / self.angular_mass
    }
}

/// Brownian paths on a uniform grid, interpolated linearly.
///
/// With refinement enabled, cells in which a Pitman transform could still
/// reach a new infimum are halved repeatedly by sampling Brownian bridge
/// midpoints, which is exact in law and removes most of the bias a coarse
/// grid puts on running infima.
#[derive(Clone, Debug)]
pub struct BrownianSampler {
    factor: Matrix<f64>,
    drift: Vec<f64>,
    horizon: f64,
    intervals: usize,
    levels: u32,
}

/// A cell is left alone once its bridge falls below the running infimum with
/// probability under `exp(-REFINE_EXPONENT)`.
const REFINE_EXPONENT: f64 = 20.0;

impl BrownianSampler {
    /// Grid of `resolution` intervals per unit time on `[0, horizon]`.
    pub fn new(d: &CoxeterDatum<f64>, horizon: f64, resolution: usize, drift: Option<&[f64]>) -> Result<Self> {
        check_time(horizon)?;
        if resolution == 0 {
            return Err(Error::EmptyGrid);
        }
        let upper = cholesky(d.gram())?.transpose();
        let factor = upper.inverse().ok_or_else(|| Error::InvalidArgument("singular Gram matrix".into()))?;
        let drift = match drift {
            Some(xi) => {
                d.check_vector(xi)?;
                xi.to_vec()
            }
            None => vec![0.0; d.rank()],
        };
        let intervals = ((horizon * resolution as f64).round() as usize).max(1);
        Ok(BrownianSampler { factor, drift, horizon, intervals, levels: 0 })
    }

    /// Allows cells near a running infimum to be halved up to `levels` times.
    pub fn with_refinement(mut self, levels: u32) -> Self {
        self.levels = levels;
        self
    }

    pub fn refinement(&self) -> u32 {
        self.levels
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn intervals(&self) -> usize {
        self.intervals
    }

    fn sample_flat<R: Rng + ?Sized>(&self, rng: &mut R) -> FlatPath {
        let r = self.drift.len();
        let dt = self.horizon / self.intervals as f64;
        let sd = dt.sqrt();
        let mut times = Vec::with_capacity(self.intervals + 1);
        let mut values = Vec::with_capacity(r * (self.intervals + 1));
        let mut cur = vec![0.0; r];
        let mut z = vec![0.0; r];
        times.push(0.0);
        values.extend_from_slice(&cur);
        for k in 1..=self.intervals {
            for x in z.iter_mut() {
                *x = rng.sample(StandardNormal);
            }
            for (i, c) in cur.iter_mut().enumerate() {
                let step: f64 = (0..r).map(|j| self.factor[(i, j)] * z[j]).sum();
                *c += sd * step + self.drift[i] * dt;
            }
            times.push(k as f64 * dt);
            values.extend_from_slice(&cur);
        }
        FlatPath { dim: r, times, values }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Path<f64>> {
        self.sample_flat(rng).to_path()
    }

    /// Grid sample refined around the infima met while applying the
    /// transforms of `word`, rightmost letter first.
    fn sample_refined<R: Rng + ?Sized>(&self, d: &CoxeterDatum<f64>, word: &[usize], rng: &mut R) -> FlatPath {
        let mut path = self.sample_flat(rng);
        if self.levels == 0 {
            return path;
        }
        let r = path.dim;
        // Stages in the order the transforms are applied; stage `s` reads
        // `alpha_{i_s}^vee(X) - sum_{e < s} coupling[s][e] inf alpha_{i_e}^vee(stage e)`.
        let order: Vec<usize> = word.iter().rev().copied().collect();
        let coupling: Vec<Vec<f64>> = order.iter().map(|&i| order.iter().map(|&j| d.pair(i, &d.simple_root(j))).collect()).collect();
        let spread: Vec<f64> = order
            .iter()
            .map(|&i| {
                let c = d.coroot(i);
                let var: f64 = (0..r).map(|j| (0..r).map(|k| c[k] * self.factor[(k, j)]).sum::<f64>().powi(2)).sum();
                var.sqrt()
            })
            .collect();
        let pull: Vec<f64> = order.iter().map(|&i| d.coroot(i).iter().zip(&self.drift).map(|(a, b)| a * b).sum::<f64>().abs()).collect();
        let finest = self.horizon / self.intervals as f64 / f64::from(1u32 << self.levels.min(30));
        let stages = order.len();
        let mut z = vec![0.0; r];
        let (mut prev, mut cur, mut mins) = (vec![0.0; stages], vec![0.0; stages], vec![0.0; stages]);
        for _ in 0..self.levels {
            let n = path.times.len();
            let mut marked = vec![false; n];
            for k in 0..n {
                let x = path.point(k);
                let dt = if k > 0 { path.times[k] - path.times[k - 1] } else { 0.0 };
                for s in 0..stages {
                    let mut f: f64 = d.coroot(order[s]).iter().zip(x).map(|(a, b)| a * b).sum();
                    for e in 0..s {
                        f -= coupling[s][e] * mins[e];
                    }
                    cur[s] = f;
                    if k == 0 {
                        mins[s] = f;
                        continue;
                    }
                    let gap = (prev[s].min(f) - mins[s] - pull[s] * dt).max(0.0);
                    if dt > 1.5 * finest && 2.0 * gap * (gap + (f - prev[s]).abs()) < REFINE_EXPONENT * spread[s] * spread[s] * dt {
                        marked[k] = true;
                    }
                    mins[s] = mins[s].min(f);
                }
                core::mem::swap(&mut prev, &mut cur);
            }
            if !marked.iter().any(|&b| b) {
                break;
            }
            let extra = marked.iter().filter(|&&b| b).count();
            let mut out = FlatPath { dim: r, times: Vec::with_capacity(n + extra), values: Vec::with_capacity(r * (n + extra)) };
            out.times.push(path.times[0]);
            out.values.extend_from_slice(path.point(0));
            for k in 1..n {
                if marked[k] {
                    let (t0, t1) = (path.times[k - 1], path.times[k]);
                    let sd = ((t1 - t0) / 4.0).sqrt();
                    for x in z.iter_mut() {
                        *x = rng.sample(StandardNormal);
                    }
                    let (a, b) = (path.point(k - 1), path.point(k));
                    out.times.push((t0 + t1) / 2.0);
                    out.values.extend((0..r).map(|i| (a[i] + b[i]) / 2.0 + sd * (0..r).map(|j| self.factor[(i, j)] * z[j]).sum::<f64>()));
                }
                out.times.push(path.times[k]);
                out.values.extend_from_slice(path.point(k));
            }
            path = out;
        }
        path
    }
}

/// Piecewise-linear `f64` path with breakpoints stored contiguously.
#[derive(Clone, Debug)]
struct FlatPath {
    dim: usize,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl FlatPath {
    fn point(&self, k: usize) -> &[f64] {
        &self.values[k * self.dim..(k + 1) * self.dim]
    }

    fn pair(&self, k: usize, coroot: &[f64]) -> f64 {
        self.point(k).iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    fn push_shifted(&self, out: &mut FlatPath, t: f64, v: impl Iterator<Item = f64>, m: f64, root: &[f64]) {
        out.times.push(t);
        out.values.extend(v.zip(root).map(|(x, a)| x - m * a));
    }

    /// `P pi = pi - inf_{s <= t} phi(pi(s)) root`, inserting the crossing points.
    fn pitman(&self, root: &[f64], coroot: &[f64]) -> FlatPath {
        let n = self.times.len();
        let mut out = FlatPath { dim: self.dim, times: Vec::with_capacity(n + n / 2), values: Vec::with_capacity(self.dim * (n + n / 2)) };
        let mut f0 = self.pair(0, coroot);
        let mut m = f0;
        self.push_shifted(&mut out, self.times[0], self.point(0).iter().copied(), m, root);
        for k in 1..n {
            let f1 = self.pair(k, coroot);
            if f1 >= m {
                self.push_shifted(&mut out, self.times[k], self.point(k).iter().copied(), m, root);
            } else {
                if f0 > m {
                    let lambda = (f0 - m) / (f0 - f1);
                    let (t0, t1) = (self.times[k - 1], self.times[k]);
                    let (v0, v1) = (self.point(k - 1), self.point(k));
                    let v = v0.iter().zip(v1).map(|(a, b)| a + lambda * (b - a));
                    self.push_shifted(&mut out, t0 + lambda * (t1 - t0), v, m, root);
                }
                m = f1;
                self.push_shifted(&mut out, self.times[k], self.point(k).iter().copied(), m, root);
            }
            f0 = f1;
        }
        out
    }

    fn pitman_w0(&self, d: &CoxeterDatum<f64>) -> FlatPath {
        let word = d.longest_element();
        let mut p = self.clone();
        for &i in word.letters().iter().rev() {
            p = p.pitman(&d.simple_root(i), d.coroot(i));
        }
        p
    }

    fn endpoint(&self) -> &[f64] {
        self.point(self.times.len() - 1)
    }

    fn to_path(&self) -> Result<Path<f64>> {
        Path::new(self.times.clone(), self.values.chunks(self.dim).map(<[f64]>::to_vec).collect())
    }
}

/// `P_{w0} p(T)` for an `f64` path, through the contiguous representation.
pub fn pitman_w0_endpoint(d: &CoxeterDatum<f64>, p: &Path<f64>) -> Result<Vec<f64>> {
    d.check_vector(p.endpoint())?;
    let flat = FlatPath { dim: p.dim(), times: p.times().to_vec(), values: p.values().concat() };
    Ok(flat.pitman_w0(d).endpoint().to_vec())
}

/// `P_{w0} X(T)` for one Brownian path `X`.
pub fn brownian_endpoint<R: Rng + ?Sized>(d: &CoxeterDatum<f64>, sampler: &BrownianSampler, rng: &mut R) -> Result<Vec<f64>> {
    d.check_vector(&sampler.drift)?;
    let word = d.longest_element();
    Ok(sampler.sample_refined(d, word.letters(), rng).pitman_w0(d).endpoint().to_vec())
}

/// One draw for the check that `D_{w0} X` has the law of `X` and is
/// independent of the infima of `alpha^vee(X)` when `X` has drift in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct DInvarianceSample {
    pub original: Vec<f64>,
    pub transformed: Vec<f64>,
    /// `inf_t alpha_i^vee(X(t))` for each simple root.
    pub infima: Vec<f64>,
}

/// Samples `X` on `[0, T]` and evaluates `X` and `D_{w0} X` at `t0`.
pub fn d_invariance_sample<R: Rng + ?Sized>(
    d: &CoxeterDatum<f64>,
    sampler: &BrownianSampler,
    t0: f64,
    rng: &mut R,
) -> Result<DInvarianceSample> {
    let x = sampler.sample(rng)?;
    let dx = d_w0(d, &x, &d.longest_element())?;
    let infima = (0..d.rank()).map(|i| x.functional(d.coroot(i)).inf()).collect();
    Ok(DInvarianceSample { original: x.evaluate(&t0)?, transformed: dx.evaluate(&t0)?, infima })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitman::is_dominant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn datum(label: &str) -> CoxeterDatum<Rational> {
        CoxeterDatum::build(label).unwrap()
    }

    fn fdatum(label: &str) -> CoxeterDatum<f64> {
        CoxeterDatum::build(label).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn q(n: i64, m: i64) -> Rational {
        Rational::from_ratio(n, m)
    }

    #[test]
    fn q_rows_in_a2() {
        let d = datum("A2");
        let m = q_omega_matrix(&d, &w(&[1, 0]), 1, 1000).unwrap();
        assert_eq!(m.get(&w(&[0, 0]), &w(&[1, 0])), q(1, 1));
        assert_eq!(m.get(&w(&[1, 0]), &w(&[2, 0])), q(2, 3));
        assert_eq!(m.get(&w(&[1, 0]), &w(&[0, 1])), q(1, 3));
        assert!(m.rows_sum_to_one());
    }

    #[test]
    fn q_rows_sum_to_one_and_match_alternating_sums() {
        for (label, omega, level) in [("A2", vec![1, 0], 4), ("A2", vec![1, 1], 3), ("B2", vec![1, 0], 4), ("G2", vec![1, 0], 2)] {
            let d = datum(label);
            let m = q_omega_matrix(&d, &w(&omega), level, 10_000).unwrap();
            assert!(m.rows_sum_to_one(), "{label}");
            assert!(cross_check_q(&d, &w(&omega), &m).unwrap(), "{label} {omega:?}");
        }
    }

    #[test]
    fn exhaustive_markov_a2() {
        let d = datum("A2");
        for n in 1..=4 {
            let r = exhaustive_verify_markov(&d, &w(&[1, 0]), n, 1_000_000).unwrap();
            assert_eq!(r.concatenations, 3u64.pow(n as u32));
            assert!(r.holds(), "n = {n}");
        }
        let r = exhaustive_verify_markov(&d, &w(&[1, 0]), 3, 1_000_000).unwrap();
        let top = r.histories.iter().find(|h| h.level == 1 && h.mu == w(&[1, 0])).unwrap();
        assert_eq!(top.counts.get(&w(&[2, 0])), Some(&6));
        assert_eq!(top.counts.get(&w(&[0, 1])), Some(&3));
        assert!(matches!(exhaustive_verify_markov(&d, &w(&[1, 0]), 20, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn exhaustive_markov_b2_adjoint_like() {
        let d = datum("B2");
        assert!(exhaustive_verify_markov(&d, &w(&[0, 1]), 3, 1_000_000).unwrap().holds());
    }

    #[test]
    fn walks_are_deterministic_and_dominant_after_transform() {
        let d = datum("A2");
        let s: WalkSampler<Rational> = WalkSampler::new(&d, &w(&[1, 0])).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let mut b = ChaCha8Rng::seed_from_u64(1);
        let (z1, p1) = transformed_walk(&d, &s, 12, &mut a).unwrap();
        let (z2, p2) = transformed_walk(&d, &s, 12, &mut b).unwrap();
        assert_eq!(z1, z2);
        assert_eq!(p1, p2);
        assert!(is_dominant(&d, &p1));
        assert_eq!(*z1.horizon(), Rational::from_i64(12));
        let one = s.sample(1, &mut a).unwrap();
        assert!(s.paths().contains(&one));
    }

    #[test]
    fn walk_increments_follow_nu() {
        let d = datum("A2");
        let s: WalkSampler<f64> = WalkSampler::new(&d, &w(&[1, 0])).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts = BTreeMap::new();
        for _ in 0..3000 {
            let e = s.sample_endpoint(1, &mut rng);
            let key: Vec<i64> = e.iter().map(|x| (x * 3.0).round() as i64).collect();
            *counts.entry(key).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert!(counts.values().all(|&c| (c as f64 - 1000.0).abs() < 120.0));
    }

    #[test]
    fn donsker_covariance() {
        let d = datum("A2");
        let omega = w(&[1, 0]);
        let s: WalkSampler<f64> = WalkSampler::new(&d, &omega).unwrap();
        let cov = nu_covariance(&d, &omega).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 10_000;
        let samples: Vec<Vec<f64>> = (0..2000)
            .map(|_| s.sample_endpoint(n, &mut rng).into_iter().map(|x| x / (n as f64).sqrt()).collect())
            .collect();
        let emp = covariance(&samples, true);
        for i in 0..2 {
            for j in 0..2 {
                assert!((emp[(i, j)] - cov[(i, j)]).abs() <= 0.05 * cov[(i, i)].max(cov[(j, j)]));
            }
        }
        // W-invariance makes the covariance a multiple of the inverse Gram matrix.
        let g = fdatum("A2").gram().inverse().unwrap();
        let c = cov[(0, 0)] / g[(0, 0)];
        assert!(cov.approx_eq(&g.scale(&c), 1e-12));
    }

    #[test]
    fn rank_one_killed_kernel() {
        let d = fdatum("A1");
        // Root coordinate c has Euclidean length sqrt(2) |c|.
        for x in [0.3, 1.0, 2.0] {
            let t: f64 = 0.7;
            let p0 = killed_kernel(&d, &[x], &[x], t).unwrap();
            let ex: f64 = 2.0f64.sqrt() * x;
            let expected = (2.0 * core::f64::consts::PI * t).powf(-0.5) * (1.0 - (-2.0 * ex * ex / t).exp());
            assert!((p0 - expected).abs() < 1e-14);
        }
        assert_eq!(killed_kernel(&d, &[0.0], &[1.0], 1.0).unwrap(), 0.0);
        assert!(gaussian_kernel(&d, &[0.0], &[1.0], 0.0).is_err());
    }

    #[test]
    fn wall_points_are_killed() {
        let d = fdatum("A2");
        let wall = d.fundamental_weight(0);
        assert!(killed_kernel(&d, &wall, &[1.0, 1.0], 1.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn killed_mass_is_sub_probability() {
        let d = fdatum("A2");
        let frame = ChamberFrame::new(&d).unwrap();
        let mass = |x: &[f64]| {
            let (nr, nt) = (400, 64);
            let (rmax, hr, ht) = (12.0, 12.0 / 400.0, frame.opening() / 64.0);
            let mut s = 0.0;
            for a in 0..nr {
                for b in 0..nt {
                    let r = (a as f64 + 0.5) * hr;
                    let y = frame.point(r, (b as f64 + 0.5) * ht);
                    s += killed_kernel(&d, x, &y, 1.0).unwrap() * r * hr * ht;
                }
            }
            let _ = rmax;
            s
        };
        let rho = d.rho_vector();
        let near = mass(&rho.iter().map(|v| v * 0.2).collect::<Vec<_>>());
        let deep = mass(&rho.iter().map(|v| v * 6.0).collect::<Vec<_>>());
        assert!(near < deep && deep <= 1.0 + 1e-6);
        assert!(deep > 0.999);
    }

    #[test]
    fn doob_limit_is_h_squared_gaussian() {
        for label in ["A1", "A2", "B2", "G2"] {
            let d = fdatum(label);
            let frame = ChamberFrame::new(&d).unwrap();
            let rho = d.rho_vector();
            let eps = if label == "G2" { 3e-2 } else { 1e-2 };
            let x: Vec<f64> = rho.iter().map(|v| v * eps).collect();
            let ys: Vec<Vec<f64>> = [0.5, 1.0, 2.0].iter().flat_map(|&r| [0.3, 0.5, 0.8].map(|f| frame.point(r, f * frame.opening()))).collect();
            let ratios: Vec<f64> = ys
                .iter()
                .map(|y| doob_kernel(&d, &x, y, 1.0).unwrap() / frame.limit_density(&d, y, 1.0).unwrap())
                .collect();
            let tol = if label == "G2" { 1e-2 } else { 2e-3 };
            for r in &ratios {
                assert!((r - 1.0).abs() < tol, "{label}: {ratios:?}");
            }
            let zero = vec![0.0; d.rank()];
            assert_eq!(doob_kernel(&d, &zero, &ys[0], 1.0).unwrap(), frame.limit_density(&d, &ys[0], 1.0).unwrap());
        }
    }

    #[test]
    fn limit_density_integrates_to_one() {
        let d = fdatum("A2");
        let frame = ChamberFrame::new(&d).unwrap();
        let (nr, nt) = (2000, 200);
        let (hr, ht) = (14.0 / nr as f64, frame.opening() / nt as f64);
        let mut s = 0.0;
        for a in 0..nr {
            for b in 0..nt {
                let r = (a as f64 + 0.5) * hr;
                s += frame.limit_density(&d, &frame.point(r, (b as f64 + 0.5) * ht), 1.0).unwrap() * r * hr * ht;
            }
        }
        assert!((s - 1.0).abs() < 1e-4, "{s}");
        let d1 = fdatum("A1");
        let f1 = ChamberFrame::new(&d1).unwrap();
        let mut s1 = 0.0;
        for a in 0..20000 {
            let r = (a as f64 + 0.5) * 1e-3;
            s1 += f1.limit_density(&d1, &f1.point(r, 0.0), 1.0).unwrap() * 1e-3;
        }
        assert!((s1 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn angular_quantiles_invert_cdf() {
        let d = fdatum("B2");
        let frame = ChamberFrame::new(&d).unwrap();
        assert!((frame.opening() - core::f64::consts::FRAC_PI_4).abs() < 1e-12);
        for p in [0.1, 0.25, 0.5, 0.9] {
            assert!((frame.angular_cdf(frame.angular_quantile(p)) - p).abs() < 1e-9);
        }
        let (r, t) = frame.polar(&frame.point(2.0, 0.3));
        assert!((r - 2.0).abs() < 1e-12 && (t - 0.3).abs() < 1e-12);
        assert!(ChamberFrame::new(&fdatum("A3")).is_err());
    }

    #[test]
    fn h_xi_ratio_tends_to_h_ratio() {
        let d = fdatum("A2");
        let x = [0.7, 0.9];
        let y = [1.5, 0.8];
        let target = d.h_function(&y) / d.h_function(&x);
        let mut prev = f64::INFINITY;
        for k in 1..11 {
            let s = 0.5f64.powi(k);
            let xi = [s, s];
            let err = (h_xi(&d, &xi, &y).unwrap() / h_xi(&d, &xi, &x).unwrap() - target).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 2e-3 * target);
        let k = chamber_kernels(&d, &x, &y, 1.0, Some(&[0.5, 0.5])).unwrap();
        assert!(k.q_xi.unwrap() > 0.0 && k.p_xi.unwrap() > 0.0);
        assert!(chamber_kernels(&d, &x, &y, 1.0, Some(&[-0.5, 0.5])).is_err());
    }

    #[test]
    fn brownian_endpoint_is_dominant_and_rank_one_mean_matches() {
        let d = fdatum("A1");
        let sampler = BrownianSampler::new(&d, 1.0, 1024, None).unwrap();
        let frame = ChamberFrame::new(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 4000;
        let mut s = 0.0;
        let mut s2 = 0.0;
        for _ in 0..n {
            let e = brownian_endpoint(&d, &sampler, &mut rng).unwrap();
            assert!(e[0] >= 0.0);
            let v = d.pair(0, &e);
            s += v;
            s2 += v * v;
        }
        let mean = s / n as f64;
        let se = ((s2 / n as f64 - mean * mean) / n as f64).sqrt();
        // The grid maximum of the reflected coordinate lags by about 1.65 sqrt(dt).
        let bias = 1.65 * (1.0f64 / 1024.0).sqrt();
        assert!((mean - frame.mean_coroot(&d, 0)).abs() < 4.0 * se + bias, "{mean} vs {}", frame.mean_coroot(&d, 0));
    }

    #[test]
    fn refinement_keeps_the_grid_and_halves_cells() {
        let d = fdatum("A2");
        let word = d.longest_element();
        let coarse = BrownianSampler::new(&d, 1.0, 256, None).unwrap();
        let fine = coarse.clone().with_refinement(6);
        for seed in 0..5 {
            let a = coarse.sample_flat(&mut ChaCha8Rng::seed_from_u64(seed));
            let b = fine.sample_refined(&d, word.letters(), &mut ChaCha8Rng::seed_from_u64(seed));
            assert!(b.times.len() > a.times.len());
            assert!(b.times.windows(2).all(|w| w[1] - w[0] >= 1.0 / (256.0 * 64.0) * (1.0 - 1e-9)));
            let mut j = 0;
            for k in 0..a.times.len() {
                while b.times[j] < a.times[k] {
                    j += 1;
                }
                assert_eq!(b.times[j], a.times[k]);
                assert_eq!(b.point(j), a.point(k));
            }
            let e = b.pitman_w0(&d);
            assert!((0..2).all(|i| d.pair(i, e.endpoint()) >= -1e-12));
        }
    }

    #[test]
    fn refinement_removes_the_grid_bias() {
        let d = fdatum("A1");
        let sampler = BrownianSampler::new(&d, 1.0, 64, None).unwrap().with_refinement(10);
        let frame = ChamberFrame::new(&d).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 6000;
        let v: Vec<f64> = (0..n).map(|_| d.pair(0, &brownian_endpoint(&d, &sampler, &mut rng).unwrap())).collect();
        let mean = v.iter().sum::<f64>() / n as f64;
        let se = (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64 / n as f64).sqrt();
        // On the bare 64-point grid the lag is about 0.2, dozens of standard errors.
        assert!((mean - frame.mean_coroot(&d, 0)).abs() < 4.0 * se, "{mean} vs {}", frame.mean_coroot(&d, 0));
    }

    #[test]
    fn flat_transform_matches_path_transform() {
        for label in ["A1", "A2", "B2", "G2"] {
            let d = fdatum(label);
            let sampler = BrownianSampler::new(&d, 1.0, 128, None).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            let flat = sampler.sample_flat(&mut rng);
            let exact = pitman_w0(&d, &flat.to_path().unwrap()).unwrap();
            let fast = flat.pitman_w0(&d).to_path().unwrap();
            assert!(fast.approx_eq(&exact, 1e-12), "{label}");
            let end = pitman_w0_endpoint(&d, &flat.to_path().unwrap()).unwrap();
            assert!(end.iter().zip(exact.endpoint()).all(|(a, b)| (a - b).abs() < 1e-12));
        }
    }

    #[test]
    fn d_transform_keeps_brownian_law() {
        let d = fdatum("A2");
        let xi: Vec<f64> = d.rho_vector().iter().map(|v| 2.0 * v).collect();
        let sampler = BrownianSampler::new(&d, 6.0, 64, Some(&xi)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 1500;
        let samples: Vec<DInvarianceSample> = (0..n).map(|_| d_invariance_sample(&d, &sampler, 1.0, &mut rng).unwrap()).collect();
        let cov_inv = d.gram().inverse().unwrap();
        for i in 0..2 {
            let mean: f64 = samples.iter().map(|s| s.transformed[i]).sum::<f64>() / n as f64;
            let se = (cov_inv[(i, i)] / n as f64).sqrt();
            assert!((mean - xi[i]).abs() < 4.0 * se, "{i}: {mean} vs {}", xi[i]);
        }
        let cov = covariance(&samples.iter().map(|s| s.transformed.clone()).collect::<Vec<_>>(), true);
        assert!(cov.approx_eq(&cov_inv, 0.15 * cov_inv[(0, 0)]));
    }
}
