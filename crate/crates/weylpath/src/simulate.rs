//! Seeded Monte Carlo checks of the chamber Brownian motion: endpoint laws
//! of `P_{w0} X(1)` and of rescaled walks, and the law of `D_{w0} X` under drift.
//!
//! Brownian motion has identity covariance in Euclidean coordinates, so its
//! covariance in simple-root coordinates is the inverse Gram matrix.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF, Gamma};
use weylpath_core::stochsim::{
    brownian_endpoint, covariance, d_invariance_sample, nu_covariance, pitman_w0_endpoint, BrownianSampler, ChamberFrame, WalkSampler,
};
use weylpath_core::{CoxeterDatum, Matrix, Rational, TypeLabel, Weight};

use crate::error::{CliError, CliResult};
use crate::format::BinRow;

/// Samples drawn per random stream.
pub const BATCH: usize = 500;

/// Minimum expected count per bin.
pub const MIN_EXPECTED: f64 = 5.0;

pub const COVARIANCE_CONVENTION: &str = "identity in Euclidean coordinates; inverse Gram matrix in simple-root coordinates";

/// Draws `samples` vectors, batch `b` using stream `b` of the seed, so the
/// output does not depend on the number of worker threads.
pub fn parallel_samples<F>(samples: usize, seed: u64, draw: F) -> CliResult<Vec<Vec<f64>>>
where
    F: Fn(&mut ChaCha8Rng) -> CliResult<Vec<f64>> + Sync,
{
    let batches = samples.div_ceil(BATCH);
    let chunks: Vec<CliResult<Vec<Vec<f64>>>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let len = BATCH.min(samples - b * BATCH);
            (0..len).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    let mut out = Vec::with_capacity(samples);
    for c in chunks {
        out.extend(c?);
    }
    Ok(out)
}

/// Equal-probability bins for the law with density proportional to
/// `h(y)^2 exp(-|y|^2 / 2)`: radial bins from the Gamma law of `|y|^2 / 2`
/// times angular bins from the `h^2` law on the arc.
pub struct ChamberBins {
    frame: ChamberFrame,
    radial_edges: Vec<f64>,
    angular_edges: Vec<f64>,
    radial_mid: Vec<f64>,
    angular_mid: Vec<f64>,
}

impl ChamberBins {
    pub fn new(d: &CoxeterDatum<f64>, radial: usize, angular: usize) -> CliResult<Self> {
        let frame = ChamberFrame::new(d)?;
        let angular = if frame.rank() == 1 { 1 } else { angular };
        if radial == 0 || angular == 0 {
            return Err(CliError::Usage("degenerate binning: no bins".into()));
        }
        let gamma = Gamma::new(frame.radial_shape(), 1.0).map_err(|e| CliError::Usage(e.to_string()))?;
        let radius = |p: f64| (2.0 * gamma.inverse_cdf(p)).sqrt();
        let radial_edges = (1..radial).map(|k| radius(k as f64 / radial as f64)).collect();
        let radial_mid = (0..radial).map(|k| radius((k as f64 + 0.5) / radial as f64)).collect();
        let angular_edges = (1..angular).map(|k| frame.angular_quantile(k as f64 / angular as f64)).collect();
        let angular_mid = (0..angular).map(|k| frame.angular_quantile((k as f64 + 0.5) / angular as f64)).collect();
        Ok(ChamberBins { frame, radial_edges, angular_edges, radial_mid, angular_mid })
    }

    pub fn len(&self) -> usize {
        self.radial_mid.len() * self.angular_mid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn frame(&self) -> &ChamberFrame {
        &self.frame
    }

    pub fn index(&self, c: &[f64]) -> usize {
        let (r, theta) = self.frame.polar(c);
        let ri = self.radial_edges.partition_point(|&e| e <= r);
        let ai = self.angular_edges.partition_point(|&e| e <= theta);
        ri * self.angular_mid.len() + ai
    }

    /// Simple-root coordinates of the point at the median of bin `k`.
    pub fn center(&self, k: usize) -> Vec<f64> {
        let n = self.angular_mid.len();
        self.frame.point(self.radial_mid[k / n], self.angular_mid[k % n])
    }

    pub fn count(&self, samples: &[Vec<f64>]) -> Vec<u64> {
        let mut counts = vec![0u64; self.len()];
        for s in samples {
            counts[self.index(s)] += 1;
        }
        counts
    }
}

/// Pearson statistic and upper-tail p-value against equal expected counts.
pub fn chi_square(observed: &[u64], expected: f64) -> (f64, usize, f64) {
    let stat: f64 = observed.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
    let dof = observed.len().saturating_sub(1).max(1);
    let p = ChiSquared::new(dof as f64).map(|c| c.sf(stat)).unwrap_or(f64::NAN);
    (stat, dof, p)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentCheck {
    /// 1-based simple coroot index.
    pub coroot: usize,
    pub empirical_mean: f64,
    pub oracle_mean: f64,
    pub standard_error: f64,
    pub z: f64,
}

/// `E[alpha_i^vee(Y)]` against the oracle integral, as z-scores.
pub fn moment_checks(d: &CoxeterDatum<f64>, frame: &ChamberFrame, samples: &[Vec<f64>]) -> Vec<MomentCheck> {
    let n = samples.len() as f64;
    (0..d.rank())
        .map(|i| {
            let v: Vec<f64> = samples.iter().map(|s| d.pair(i, s)).collect();
            let mean = v.iter().sum::<f64>() / n;
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
            let se = (var / n).sqrt();
            let oracle = frame.mean_coroot(d, i);
            MomentCheck { coroot: i + 1, empirical_mean: mean, oracle_mean: oracle, standard_error: se, z: (mean - oracle) / se }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DInvarianceSummary {
    /// Drift in simple-root coordinates.
    pub drift: Vec<f64>,
    pub horizon: f64,
    pub t0: f64,
    pub resolution: usize,
    pub samples: usize,
    /// z-scores of the mean of `D_{w0} X(t0)` against `xi t0`.
    pub mean_z: Vec<f64>,
    /// Pearson test of the squared Mahalanobis distance against chi-square(rank).
    pub chi_square: f64,
    pub p_value: f64,
    /// Largest `|corr| sqrt(n)` between coordinates of `D_{w0} X(t0)` and the infima of `alpha_i^vee(X)`.
    pub max_correlation_z: f64,
}

impl DInvarianceSummary {
    pub fn passed(&self, z_limit: f64, p_min: f64) -> bool {
        self.mean_z.iter().all(|z| z.abs() < z_limit) && self.p_value > p_min && self.max_correlation_z < z_limit
    }
}

/// Everything one simulation produces.
#[derive(Clone, Debug, Serialize)]
pub struct SimulationReport {
    pub mode: String,
    #[serde(rename = "type")]
    pub type_label: String,
    pub seed: u64,
    pub samples: usize,
    pub resolution: Option<usize>,
    /// Extra bridge halvings allowed near running infima.
    pub refinement: Option<u32>,
    pub omega: Option<String>,
    pub steps: Option<usize>,
    pub covariance: String,
    pub bins: Vec<BinRow>,
    pub chi_square: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    pub moments: Vec<MomentCheck>,
    pub d_invariance: Option<DInvarianceSummary>,
    #[serde(skip)]
    pub runtime_secs: f64,
}

impl SimulationReport {
    pub fn total_observed(&self) -> u64 {
        self.bins.iter().map(|b| b.observed).sum()
    }

    pub fn summary(&self) -> String {
        let z: Vec<String> = self.moments.iter().map(|m| format!("{:.2}", m.z)).collect();
        format!(
            "{} {} seed={} samples={} chi2={:.2} dof={} p={:.4} mean-z=[{}] ({:.1}s)",
            self.mode,
            self.type_label,
            self.seed,
            self.samples,
            self.chi_square,
            self.degrees_of_freedom,
            self.p_value,
            z.join(", "),
            self.runtime_secs
        )
    }
}

/// Default bin layout: 20 radial bins in rank 1, 10 x 5 in rank 2.
pub fn default_bins(rank: usize) -> (usize, usize) {
    if rank == 1 {
        (20, 1)
    } else {
        (10, 5)
    }
}

fn float_datum(label: TypeLabel) -> CliResult<CoxeterDatum<f64>> {
    if !label.is_crystallographic() {
        return Err(CliError::Unsupported(format!("{label} (simulation needs a crystallographic type)")));
    }
    Ok(CoxeterDatum::from_label(label)?)
}

fn binned_report(
    mode: &str,
    d: &CoxeterDatum<f64>,
    samples: &[Vec<f64>],
    bins: (usize, usize),
    seed: u64,
) -> CliResult<SimulationReport> {
    let layout = ChamberBins::new(d, bins.0, bins.1)?;
    let expected = samples.len() as f64 / layout.len() as f64;
    if expected < MIN_EXPECTED {
        return Err(CliError::Usage(format!("degenerate binning: {expected:.2} expected per bin")));
    }
    let observed = layout.count(samples);
    let (stat, dof, p) = chi_square(&observed, expected);
    let rows = observed
        .iter()
        .enumerate()
        .map(|(k, &o)| {
            let c = layout.center(k);
            BinRow { bin_center_1: c[0], bin_center_2: c.get(1).copied(), observed: o, expected }
        })
        .collect();
    Ok(SimulationReport {
        mode: mode.to_string(),
        type_label: d.label().to_string(),
        seed,
        samples: samples.len(),
        resolution: None,
        refinement: None,
        omega: None,
        steps: None,
        covariance: COVARIANCE_CONVENTION.to_string(),
        bins: rows,
        chi_square: stat,
        degrees_of_freedom: dof,
        p_value: p,
        moments: moment_checks(d, layout.frame(), samples),
        d_invariance: None,
        runtime_secs: 0.0,
    })
}

/// Endpoints of `P_{w0} X` on `[0, 1]` against the law `q_1(0, .)`.
pub fn brownian_endpoint_test(
    label: TypeLabel,
    samples: usize,
    resolution: usize,
    refinement: u32,
    seed: u64,
    bins: Option<(usize, usize)>,
) -> CliResult<SimulationReport> {
    let start = Instant::now();
    let d = float_datum(label)?;
    if d.rank() > 2 {
        return Err(CliError::Unsupported(format!("{label} (endpoint binning needs rank <= 2)")));
    }
    if !resolution.is_power_of_two() {
        return Err(CliError::Usage(format!("resolution {resolution} is not a power of two")));
    }
    let sampler = BrownianSampler::new(&d, 1.0, resolution, None)?.with_refinement(refinement);
    let ends = parallel_samples(samples, seed, |rng| Ok(brownian_endpoint(&d, &sampler, rng)?))?;
    let mut report = binned_report("brownian", &d, &ends, bins.unwrap_or_else(|| default_bins(d.rank())), seed)?;
    report.resolution = Some(resolution);
    report.refinement = Some(refinement);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `P_{w0} Z(n) / sqrt(c n)` for the walk built from `B(omega)`, where the
/// increment covariance is `c` times the inverse Gram matrix.
pub fn walk_endpoint_test(label: TypeLabel, omega: &Weight, steps: usize, samples: usize, seed: u64, bins: Option<(usize, usize)>) -> CliResult<SimulationReport> {
    let start = Instant::now();
    let d = float_datum(label)?;
    if d.rank() > 2 {
        return Err(CliError::Unsupported(format!("{label} (endpoint binning needs rank <= 2)")));
    }
    if steps == 0 {
        return Err(CliError::Usage("steps must be positive".into()));
    }
    let dq: CoxeterDatum<Rational> = CoxeterDatum::from_label(label)?;
    let sampler: WalkSampler<f64> = WalkSampler::new(&dq, omega)?;
    let c = covariance_scale(&d, &nu_covariance(&dq, omega)?)?;
    let scale = 1.0 / (c * steps as f64).sqrt();
    let ends = parallel_samples(samples, seed, |rng| {
        let z = sampler.sample(steps, rng)?;
        Ok(pitman_w0_endpoint(&d, &z)?.into_iter().map(|x| x * scale).collect())
    })?;
    let mut report = binned_report("walk", &d, &ends, bins.unwrap_or_else(|| default_bins(d.rank())), seed)?;
    report.omega = Some(omega.to_string());
    report.steps = Some(steps);
    report.runtime_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// `c` with `cov = c G^{-1}`; fails when the covariance is not of that form.
pub fn covariance_scale(d: &CoxeterDatum<f64>, cov: &Matrix<f64>) -> CliResult<f64> {
    let g_inv = d.gram().inverse().ok_or_else(|| CliError::Usage("singular Gram matrix".into()))?;
    let c = cov[(0, 0)] / g_inv[(0, 0)];
    if !cov.approx_eq(&g_inv.scale(&c), 1e-9 * c.abs().max(1.0)) {
        return Err(CliError::Assertion("increment covariance is not W-invariant".into()));
    }
    Ok(c)
}

/// `D_{w0} X(t0)` for `X` with drift `xi` on `[0, horizon]` against
/// `N(xi t0, t0 G^{-1})`, and its correlation with the infima of `alpha_i^vee(X)`.
pub fn d_invariance_test(
    label: TypeLabel,
    drift: Option<Vec<f64>>,
    samples: usize,
    resolution: usize,
    seed: u64,
) -> CliResult<DInvarianceSummary> {
    let d = float_datum(label)?;
    let xi = match drift {
        Some(x) => x,
        None => d.rho_vector().iter().map(|v| 2.0 * v).collect(),
    };
    if xi.len() != d.rank() || !(0..d.rank()).all(|i| d.pair(i, &xi) > 0.0) {
        return Err(CliError::Usage("drift must lie in the open chamber".into()));
    }
    let (horizon, t0) = (6.0, 1.0);
    let sampler = BrownianSampler::new(&d, horizon, resolution, Some(&xi))?;
    let r = d.rank();
    let rows = parallel_samples(samples, seed, |rng| {
        let s = d_invariance_sample(&d, &sampler, t0, rng)?;
        Ok([s.transformed, s.infima].concat())
    })?;
    let n = rows.len() as f64;
    let cov_inv_gram = d.gram().inverse().ok_or_else(|| CliError::Usage("singular Gram matrix".into()))?;
    let mean_z = (0..r)
        .map(|i| {
            let m = rows.iter().map(|s| s[i]).sum::<f64>() / n;
            (m - xi[i] * t0) / (cov_inv_gram[(i, i)] * t0 / n).sqrt()
        })
        .collect();
    // (v - xi t0)^T (G / t0) (v - xi t0) is chi-square with r degrees of freedom.
    let chi = ChiSquared::new(r as f64).map_err(|e| CliError::Usage(e.to_string()))?;
    let cells = 10usize;
    let mut counts = vec![0u64; cells];
    for s in &rows {
        let v: Vec<f64> = (0..r).map(|i| s[i] - xi[i] * t0).collect();
        let m = d.inner(&v, &v) / t0;
        counts[((chi.cdf(m) * cells as f64) as usize).min(cells - 1)] += 1;
    }
    let (stat, _, p) = chi_square(&counts, n / cells as f64);
    let cov = covariance(&rows, true);
    let mut max_corr: f64 = 0.0;
    for i in 0..r {
        for j in r..2 * r {
            let c = cov[(i, j)] / (cov[(i, i)] * cov[(j, j)]).sqrt();
            max_corr = max_corr.max(c.abs() * n.sqrt());
        }
    }
    Ok(DInvarianceSummary {
        drift: xi,
        horizon,
        t0,
        resolution,
        samples,
        mean_z,
        chi_square: stat,
        p_value: p,
        max_correlation_z: max_corr,
    })
}
