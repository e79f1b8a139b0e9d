//! Random piecewise-linear paths with small-denominator breakpoints.

use alloc::vec::Vec;

use rand::Rng;

use crate::pathcore::{Path, ScalarPath};
use crate::scalar::Scalar;

/// Shape of the random paths produced by [`random_path`].
#[derive(Clone, Copy, Debug)]
pub struct PathShape {
    pub max_segments: usize,
    /// Increments have numerators in `-max_step..=max_step`.
    pub max_step: i64,
    /// Increments have denominators in `1..=max_den`.
    pub max_den: i64,
}

impl Default for PathShape {
    fn default() -> Self {
        PathShape { max_segments: 10, max_step: 6, max_den: 3 }
    }
}

fn random_times<S: Scalar, R: Rng + ?Sized>(rng: &mut R, segments: usize, horizon: &S) -> Vec<S> {
    let weights: Vec<i64> = (0..segments).map(|_| rng.random_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let mut acc = 0;
    let mut times = Vec::with_capacity(segments + 1);
    times.push(S::zero());
    for w in weights {
        acc += w;
        times.push(horizon.clone() * S::from_ratio(acc, total));
    }
    times
}

fn random_scalar<S: Scalar, R: Rng + ?Sized>(rng: &mut R, shape: &PathShape) -> S {
    let n = rng.random_range(-shape.max_step..=shape.max_step);
    let d = rng.random_range(1..=shape.max_den.max(1));
    S::from_ratio(n, d)
}

/// Random path in `dim` root coordinates on `[0, horizon]`.
pub fn random_path<S: Scalar, R: Rng + ?Sized>(rng: &mut R, dim: usize, horizon: &S, shape: &PathShape) -> Path<S> {
    let segments = rng.random_range(1..=shape.max_segments.max(1));
    let times = random_times(rng, segments, horizon);
    let mut values = Vec::with_capacity(segments + 1);
    let mut cur: Vec<S> = (0..dim).map(|_| S::zero()).collect();
    values.push(cur.clone());
    for _ in 0..segments {
        cur = cur.into_iter().map(|x| x + random_scalar::<S, R>(rng, shape)).collect();
        values.push(cur.clone());
    }
    Path::new(times, values).expect("valid random path")
}

/// Random scalar path on `[0, horizon]` starting at 0.
pub fn random_scalar_path<S: Scalar, R: Rng + ?Sized>(rng: &mut R, horizon: &S, shape: &PathShape) -> ScalarPath<S> {
    let segments = rng.random_range(1..=shape.max_segments.max(1));
    let times = random_times(rng, segments, horizon);
    let mut values = Vec::with_capacity(segments + 1);
    let mut cur = S::zero();
    values.push(cur.clone());
    for _ in 0..segments {
        cur = cur + random_scalar::<S, R>(rng, shape);
        values.push(cur.clone());
    }
    ScalarPath::new(times, values).expect("valid random scalar path")
}

/// Path on `[0, 1]` with `steps` equal pieces and increments in `{-2, -3/2, ..., 2}`
/// per coordinate, so every breakpoint sits on a dyadic grid of at least `steps` cells.
pub fn random_grid_path<R: Rng + ?Sized>(rng: &mut R, dim: usize, steps: usize) -> Path<crate::scalar::Rational> {
    use crate::scalar::Rational;
    let inc: Vec<Vec<Rational>> =
        (0..steps).map(|_| (0..dim).map(|_| Rational::from_ratio(rng.random_range(-4..=4), 2)).collect()).collect();
    Path::from_steps(&inc).expect("nonempty steps").rescale_time(&Rational::from_ratio(1, steps.max(1) as i64))
}
