//! Continuous piecewise-linear paths with exact breakpoints.
//!
//! A [`Path`] is stored as strictly increasing breakpoint times and the
//! vector values at those times; between breakpoints it is linear. Every
//! constructor returns the canonical form, in which no interior breakpoint
//! is collinear with its neighbours, so structural equality is path
//! equality in exact mode.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::rootsys::dot;
use crate::scalar::{max_of, min_of, Scalar};

/// Real-valued piecewise-linear function on `[0, T]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ScalarPath<S> {
    times: Vec<S>,
    values: Vec<S>,
}

/// Vector-valued piecewise-linear path on `[0, T]`, in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path<S> {
    times: Vec<S>,
    values: Vec<Vec<S>>,
}

fn collinear<S: Scalar>(t0: &S, v0: &[S], t1: &S, v1: &[S], t2: &S, v2: &[S]) -> bool {
    let dt01 = t1.clone() - t0.clone();
    let dt12 = t2.clone() - t1.clone();
    v0.iter().zip(v1).zip(v2).all(|((a, b), c)| {
        (b.clone() - a.clone()) * dt12.clone() == (c.clone() - b.clone()) * dt01.clone()
    })
}

/// Drops interior breakpoints lying on the segment through their neighbours.
fn canonicalize<S: Scalar>(times: Vec<S>, values: Vec<Vec<S>>) -> (Vec<S>, Vec<Vec<S>>) {
    let n = times.len();
    let mut ts: Vec<S> = Vec::with_capacity(n);
    let mut vs: Vec<Vec<S>> = Vec::with_capacity(n);
    for (t, v) in times.into_iter().zip(values) {
        if let Some(last) = ts.last() {
            if *last == t {
                // Repeated time; continuity makes the values agree.
                continue;
            }
        }
        while ts.len() >= 2 {
            let k = ts.len();
            if collinear(&ts[k - 2], &vs[k - 2], &ts[k - 1], &vs[k - 1], &t, &v) {
                ts.pop();
                vs.pop();
            } else {
                break;
            }
        }
        ts.push(t);
        vs.push(v);
    }
    (ts, vs)
}

/// Sorted union of two sorted time lists.
fn merge_times<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.partial_cmp(y) {
                Some(Ordering::Less) => {
                    i += 1;
                    x.clone()
                }
                Some(Ordering::Greater) => {
                    j += 1;
                    y.clone()
                }
                _ => {
                    i += 1;
                    j += 1;
                    x.clone()
                }
            },
            (Some(x), None) => {
                i += 1;
                x.clone()
            }
            (None, Some(y)) => {
                j += 1;
                y.clone()
            }
            (None, None) => unreachable!(),
        };
        out.push(next);
    }
    out
}

fn lerp<S: Scalar>(t0: &S, v0: &S, t1: &S, v1: &S, t: &S) -> S {
    if t == t0 {
        return v0.clone();
    }
    if t == t1 {
        return v1.clone();
    }
    v0.clone() + (t.clone() - t0.clone()) / (t1.clone() - t0.clone()) * (v1.clone() - v0.clone())
}

/// Index `k` of the segment `[times[k], times[k+1]]` containing `t`.
fn segment_of<S: Scalar>(times: &[S], t: &S) -> usize {
    let n = times.len();
    let k = times.partition_point(|x| x <= t);
    k.saturating_sub(1).min(n.saturating_sub(2))
}

fn check_time<S: Scalar>(times: &[S], t: &S) -> Result<()> {
    let last = times.last().expect("nonempty path");
    if t.is_negative() || t > last {
        return Err(Error::TimeOutOfRange(alloc::format!("{t} not in [0, {last}]")));
    }
    Ok(())
}

impl<S: Scalar> ScalarPath<S> {
    /// Builds a scalar path from breakpoints; times must start at 0 and increase.
    pub fn new(times: Vec<S>, values: Vec<S>) -> Result<Self> {
        validate_times(&times)?;
        if values.len() != times.len() {
            return Err(Error::MalformedPath("times and values differ in length".into()));
        }
        Ok(Self::from_parts(times, values))
    }

    pub(crate) fn from_parts(times: Vec<S>, values: Vec<S>) -> Self {
        let (ts, vs) = canonicalize(times, values.into_iter().map(|v| vec![v]).collect());
        ScalarPath { times: ts, values: vs.into_iter().map(|mut v| v.pop().expect("scalar")).collect() }
    }

    pub fn constant(c: S, horizon: S) -> Self {
        ScalarPath { times: vec![S::zero(), horizon], values: vec![c.clone(), c] }
    }

    pub fn times(&self) -> &[S] {
        &self.times
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn horizon(&self) -> &S {
        self.times.last().expect("nonempty path")
    }

    pub fn start(&self) -> &S {
        &self.values[0]
    }

    pub fn end(&self) -> &S {
        self.values.last().expect("nonempty path")
    }

    pub fn evaluate(&self, t: &S) -> Result<S> {
        check_time(&self.times, t)?;
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &S) -> S {
        let k = segment_of(&self.times, t);
        lerp(&self.times[k], &self.values[k], &self.times[k + 1], &self.values[k + 1], t)
    }

    /// Values at a sorted list of times inside `[0, T]`, in one pass.
    fn resample(&self, times: &[S]) -> Vec<S> {
        let mut k = 0;
        times
            .iter()
            .map(|t| {
                while k + 2 < self.times.len() && self.times[k + 1] < *t {
                    k += 1;
                }
                lerp(&self.times[k], &self.values[k], &self.times[k + 1], &self.values[k + 1], t)
            })
            .collect()
    }

    /// Minimum over the whole interval.
    pub fn inf(&self) -> S {
        self.values.iter().cloned().reduce(min_of).expect("nonempty path")
    }

    pub fn sup(&self) -> S {
        self.values.iter().cloned().reduce(max_of).expect("nonempty path")
    }

    pub fn map_values(&self, f: impl Fn(&S) -> S) -> Self {
        Self::from_parts(self.times.clone(), self.values.iter().map(f).collect())
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| -v.clone())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map_values(|v| v.clone() * c.clone())
    }

    pub fn add_constant(&self, c: &S) -> Self {
        self.map_values(|v| v.clone() + c.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(S, S) -> S) -> Self {
        assert!(self.horizon() == other.horizon(), "scalar paths on different horizons");
        let times = merge_times(&self.times, &other.times);
        let a = self.resample(&times);
        let b = other.resample(&times);
        Self::from_parts(times, a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise minimum, with crossing points inserted exactly.
    pub fn pointwise_min(&self, other: &Self) -> Self {
        assert!(self.horizon() == other.horizon(), "scalar paths on different horizons");
        let times = merge_times(&self.times, &other.times);
        let a = self.resample(&times);
        let b = other.resample(&times);
        let mut ts = Vec::with_capacity(times.len() * 2);
        let mut vs = Vec::with_capacity(times.len() * 2);
        for k in 0..times.len() {
            if k > 0 {
                let d0 = a[k - 1].clone() - b[k - 1].clone();
                let d1 = a[k].clone() - b[k].clone();
                let crosses = (d0.is_negative() && !d1.is_negative() && !d1.is_zero())
                    || (d1.is_negative() && !d0.is_negative() && !d0.is_zero());
                if crosses {
                    let lambda = d0.clone() / (d0 - d1);
                    let tc = times[k - 1].clone() + lambda.clone() * (times[k].clone() - times[k - 1].clone());
                    let vc = a[k - 1].clone() + lambda * (a[k].clone() - a[k - 1].clone());
                    ts.push(tc);
                    vs.push(vc);
                }
            }
            ts.push(times[k].clone());
            vs.push(min_of(a[k].clone(), b[k].clone()));
        }
        Self::from_parts(ts, vs)
    }

    /// `t -> inf_{0 <= s <= t} f(s)`.
    pub fn running_inf(&self) -> Self {
        let mut ts = vec![self.times[0].clone()];
        let mut vs = vec![self.values[0].clone()];
        let mut m = self.values[0].clone();
        for k in 1..self.times.len() {
            let (t0, f0) = (&self.times[k - 1], &self.values[k - 1]);
            let (t1, f1) = (&self.times[k], &self.values[k]);
            if *f1 >= m {
                ts.push(t1.clone());
                vs.push(m.clone());
                continue;
            }
            if *f0 > m {
                // The segment crosses the current minimum strictly inside.
                let tc = t0.clone() + (f0.clone() - m.clone()) / (f0.clone() - f1.clone()) * (t1.clone() - t0.clone());
                ts.push(tc);
                vs.push(m.clone());
            }
            ts.push(t1.clone());
            vs.push(f1.clone());
            m = f1.clone();
        }
        Self::from_parts(ts, vs)
    }

    /// `t -> sup_{0 <= s <= t} f(s)`.
    pub fn running_sup(&self) -> Self {
        self.neg().running_inf().neg()
    }

    /// `t -> f(T - t)`.
    pub fn reverse_time(&self) -> Self {
        let h = self.horizon().clone();
        ScalarPath {
            times: self.times.iter().rev().map(|t| h.clone() - t.clone()).collect(),
            values: self.values.iter().rev().cloned().collect(),
        }
    }

    /// `t -> inf_{t <= s <= T} f(s)`.
    pub fn suffix_inf(&self) -> Self {
        self.reverse_time().running_inf().reverse_time()
    }

    /// `t -> sup_{t <= s <= T} f(s)`.
    pub fn suffix_sup(&self) -> Self {
        self.reverse_time().running_sup().reverse_time()
    }

    /// Largest time at which the minimum over `[0, T]` is attained.
    pub fn last_argmin(&self) -> S {
        let m = self.inf();
        let k = self.values.iter().rposition(|v| *v == m).expect("minimum attained at a breakpoint");
        self.times[k].clone()
    }

    /// Sup-norm distance, evaluated on the union of breakpoints.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        if self.horizon() != other.horizon() {
            return f64::INFINITY;
        }
        let d = self.sub(other);
        d.values.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if S::EXACT {
            self == other
        } else {
            self.sup_distance(other) <= tol
        }
    }
}

fn validate_times<S: Scalar>(times: &[S]) -> Result<()> {
    if times.len() < 2 {
        return Err(Error::MalformedPath("a path needs at least two breakpoints".into()));
    }
    if !times[0].is_zero() {
        return Err(Error::MalformedPath("first breakpoint must be at time 0".into()));
    }
    if times.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less)) {
        return Err(Error::MalformedPath("breakpoint times must increase strictly".into()));
    }
    Ok(())
}

impl<S: Scalar> Path<S> {
    /// Builds a path from breakpoints. The first breakpoint must be `(0, 0)`.
    pub fn new(times: Vec<S>, values: Vec<Vec<S>>) -> Result<Self> {
        validate_times(&times)?;
        if values.len() != times.len() {
            return Err(Error::MalformedPath("times and values differ in length".into()));
        }
        let dim = values[0].len();
        if let Some(v) = values.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        if !values[0].iter().all(Scalar::is_zero) {
            return Err(Error::MalformedPath("path must start at the origin".into()));
        }
        Ok(Self::from_parts(times, values))
    }

    pub(crate) fn from_parts(times: Vec<S>, values: Vec<Vec<S>>) -> Self {
        let (times, values) = canonicalize(times, values);
        Path { times, values }
    }

    /// `t -> t v` on `[0, T]`.
    pub fn linear(v: &[S], horizon: S) -> Self {
        let end = v.iter().map(|x| x.clone() * horizon.clone()).collect();
        Path { times: vec![S::zero(), horizon], values: vec![vec![S::zero(); v.len()], end] }
    }

    /// Straight segment from the origin to `end` over `[0, T]`.
    pub fn straight(end: &[S], horizon: S) -> Self {
        Path { times: vec![S::zero(), horizon], values: vec![vec![S::zero(); end.len()], end.to_vec()] }
    }

    pub fn zero(dim: usize, horizon: S) -> Self {
        Self::straight(&vec![S::zero(); dim], horizon)
    }

    /// Path through the given increments, one unit of time each.
    pub fn from_steps(steps: &[Vec<S>]) -> Result<Self> {
        let dim = steps.first().map(Vec::len).ok_or_else(|| Error::MalformedPath("no steps".into()))?;
        let mut times = vec![S::zero()];
        let mut values = vec![vec![S::zero(); dim]];
        for (k, s) in steps.iter().enumerate() {
            if s.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: s.len() });
            }
            let last = values.last().expect("nonempty");
            let next: Vec<S> = last.iter().zip(s).map(|(a, b)| a.clone() + b.clone()).collect();
            times.push(S::from_i64(k as i64 + 1));
            values.push(next);
        }
        Ok(Self::from_parts(times, values))
    }

    pub fn dim(&self) -> usize {
        self.values[0].len()
    }

    pub fn times(&self) -> &[S] {
        &self.times
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (&S, &Vec<S>)> {
        self.times.iter().zip(&self.values)
    }

    pub fn num_segments(&self) -> usize {
        self.times.len() - 1
    }

    pub fn horizon(&self) -> &S {
        self.times.last().expect("nonempty path")
    }

    pub fn endpoint(&self) -> &[S] {
        self.values.last().expect("nonempty path")
    }

    pub fn evaluate(&self, t: &S) -> Result<Vec<S>> {
        check_time(&self.times, t)?;
        Ok(self.eval_unchecked(t))
    }

    fn eval_unchecked(&self, t: &S) -> Vec<S> {
        let k = segment_of(&self.times, t);
        (0..self.dim())
            .map(|c| lerp(&self.times[k], &self.values[k][c], &self.times[k + 1], &self.values[k + 1][c], t))
            .collect()
    }

    fn resample(&self, times: &[S]) -> Vec<Vec<S>> {
        let mut k = 0;
        times
            .iter()
            .map(|t| {
                while k + 2 < self.times.len() && self.times[k + 1] < *t {
                    k += 1;
                }
                (0..self.dim())
                    .map(|c| lerp(&self.times[k], &self.values[k][c], &self.times[k + 1], &self.values[k + 1][c], t))
                    .collect()
            })
            .collect()
    }

    /// `t -> phi(path(t))` for a linear form `phi` on root coordinates.
    pub fn functional(&self, covector: &[S]) -> ScalarPath<S> {
        ScalarPath::from_parts(self.times.clone(), self.values.iter().map(|v| dot(covector, v)).collect())
    }

    /// `t -> path(t) + f(t) dir`.
    pub fn add_scaled(&self, f: &ScalarPath<S>, dir: &[S]) -> Self {
        assert!(self.horizon() == f.horizon(), "path and scalar path on different horizons");
        let times = merge_times(&self.times, &f.times);
        let vs = self.resample(&times);
        let fs = f.resample(&times);
        let values = vs
            .into_iter()
            .zip(fs)
            .map(|(v, c)| {
                if c.is_zero() {
                    v
                } else {
                    v.into_iter().zip(dir).map(|(x, d)| x + c.clone() * d.clone()).collect()
                }
            })
            .collect();
        Self::from_parts(times, values)
    }

    /// `t -> path(t) - f(t) dir`.
    pub fn sub_scaled(&self, f: &ScalarPath<S>, dir: &[S]) -> Self {
        self.add_scaled(&f.neg(), dir)
    }

    /// Pointwise sum of two paths on the same horizon.
    pub fn add(&self, other: &Self) -> Self {
        assert!(self.horizon() == other.horizon(), "paths on different horizons");
        let times = merge_times(&self.times, &other.times);
        let a = self.resample(&times);
        let b = other.resample(&times);
        let values =
            a.into_iter().zip(b).map(|(x, y)| x.into_iter().zip(y).map(|(p, q)| p + q).collect()).collect();
        Self::from_parts(times, values)
    }

    pub fn neg(&self) -> Self {
        self.map_values(|v| v.iter().map(|x| -x.clone()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    fn map_values(&self, f: impl Fn(&[S]) -> Vec<S>) -> Self {
        Self::from_parts(self.times.clone(), self.values.iter().map(|v| f(v)).collect())
    }

    /// Applies a linear map (matrix on root coordinates) pointwise.
    pub fn apply_map(&self, m: &Matrix<S>) -> Self {
        self.map_values(|v| m.mul_vec(v))
    }

    /// Scales values by `eps`; times are unchanged.
    pub fn dilate(&self, eps: &S) -> Self {
        self.map_values(|v| v.iter().map(|x| x.clone() * eps.clone()).collect())
    }

    /// `kappa(path)(t) = path(T - t) - path(T)`.
    pub fn kappa(&self) -> Self {
        let h = self.horizon().clone();
        let end = self.endpoint().to_vec();
        Path {
            times: self.times.iter().rev().map(|t| h.clone() - t.clone()).collect(),
            values: self
                .values
                .iter()
                .rev()
                .map(|v| v.iter().zip(&end).map(|(a, b)| a.clone() - b.clone()).collect())
                .collect(),
        }
    }

    /// `iota = -kappa`: `t -> path(T) - path(T - t)`.
    pub fn iota(&self) -> Self {
        self.kappa().neg()
    }

    /// Littelmann concatenation on a common horizon: each factor is run at
    /// double speed, `self` on `[0, T/2]` and `other` on `[T/2, T]`.
    pub fn concat_littelmann(&self, other: &Self) -> Result<Self> {
        if self.horizon() != other.horizon() {
            return Err(Error::HorizonMismatch);
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let two = S::from_i64(2);
        let half = self.horizon().clone() / two.clone();
        let mut times: Vec<S> = self.times.iter().map(|t| t.clone() / two.clone()).collect();
        let mut values = self.values.clone();
        let end = self.endpoint().to_vec();
        for (t, v) in other.breakpoints().skip(1) {
            times.push(half.clone() + t.clone() / two.clone());
            values.push(v.iter().zip(&end).map(|(a, b)| a.clone() + b.clone()).collect());
        }
        Ok(Self::from_parts(times, values))
    }

    /// Appends `other` after `self` without rescaling time.
    pub fn concat_shifted(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: other.dim() });
        }
        let h = self.horizon().clone();
        let end = self.endpoint().to_vec();
        let mut times = self.times.clone();
        let mut values = self.values.clone();
        for (t, v) in other.breakpoints().skip(1) {
            times.push(h.clone() + t.clone());
            values.push(v.iter().zip(&end).map(|(a, b)| a.clone() + b.clone()).collect());
        }
        Ok(Self::from_parts(times, values))
    }

    /// The increment path `s -> path(a + s) - path(a)` for `s` in `[0, b - a]`.
    pub fn window(&self, a: &S, b: &S) -> Result<Self> {
        check_time(&self.times, a)?;
        check_time(&self.times, b)?;
        if a >= b {
            return Err(Error::TimeOutOfRange(alloc::format!("empty window [{a}, {b}]")));
        }
        let base = self.eval_unchecked(a);
        let mut times = vec![S::zero()];
        let mut values = vec![vec![S::zero(); self.dim()]];
        for (t, v) in self.breakpoints() {
            if t > a && t < b {
                times.push(t.clone() - a.clone());
                values.push(v.iter().zip(&base).map(|(x, y)| x.clone() - y.clone()).collect());
            }
        }
        times.push(b.clone() - a.clone());
        values.push(self.eval_unchecked(b).iter().zip(&base).map(|(x, y)| x.clone() - y.clone()).collect());
        Ok(Self::from_parts(times, values))
    }

    /// Converts every breakpoint through `f`.
    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Path<T> {
        Path {
            times: self.times.iter().map(&f).collect(),
            values: self.values.iter().map(|v| v.iter().map(&f).collect()).collect(),
        }
    }

    /// Affine time change `t -> c t`, keeping values.
    pub fn rescale_time(&self, c: &S) -> Self {
        Path { times: self.times.iter().map(|t| t.clone() * c.clone()).collect(), values: self.values.clone() }
    }

    /// Sup-norm distance over the union of breakpoints.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        if self.horizon().to_f64() != other.horizon().to_f64() || self.dim() != other.dim() {
            return f64::INFINITY;
        }
        let times = merge_times(&self.times, &other.times);
        let a = self.resample(&times);
        let b = other.resample(&times);
        a.iter()
            .zip(&b)
            .flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p.clone() - q.clone()).to_f64().abs()))
            .fold(0.0, f64::max)
    }

    /// Exact equality in exact mode, sup-norm within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if S::EXACT {
            self == other
        } else {
            self.sup_distance(other) <= tol
        }
    }
}
