//! Fundamental representations of `A_n` as wedge powers, the representatives
//! `s_i bar`, i-trails, the trail formula for `P_w`, the operators `T_i`
//! on sampled paths and the Gauss-decomposition check relating them.
//!
//! Paths fed to the trail formula and to `T_i` live in the coroot space and
//! are written in the coroot basis. In type A the two bases coincide under
//! the fixed identification, so the same coordinates serve both sides.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pathcore::{Path, ScalarPath};
use crate::pitman::nested_inf;
use crate::rootsys::{CoxeterDatum, TypeLabel, WeylWord};
use crate::scalar::{Rational, Scalar};

/// Chevalley generators of `V_{omega_k} = Lambda^k C^{n+1}` for `A_n`.
///
/// Basis vectors are `k`-subsets of `{1..n+1}` ordered by entry sum, then
/// lexicographically, so the highest weight vector has index 0 and every
/// `e_i` is strictly upper triangular.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    rank: usize,
    fundamental: usize,
    basis: Vec<Vec<usize>>,
    weights: Vec<Vec<i64>>,
    e: Vec<Matrix<Rational>>,
    f: Vec<Matrix<Rational>>,
    h: Vec<Matrix<Rational>>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for v in 1..=n {
        let mut next = Vec::new();
        for s in out {
            if s.len() < k {
                let mut t = s.clone();
                t.push(v);
                next.push(t);
            }
            next.push(s);
        }
        out = next;
    }
    out.retain(|s| s.len() == k);
    out.sort_by(|a, b| a.iter().sum::<usize>().cmp(&b.iter().sum()).then_with(|| a.cmp(b)));
    out
}

/// Fundamental representation `V_{omega_i}` of `A_n`, `i` 0-based.
pub fn fundamental_rep(n: usize, i: usize) -> Result<MatrixRep> {
    if n == 0 || n > 3 {
        return Err(Error::UnsupportedType(format!("A{n}")));
    }
    if i >= n {
        return Err(Error::BadGenerator { index: i, rank: n });
    }
    let k = i + 1;
    let basis = subsets(n + 1, k);
    let dim = basis.len();
    let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(a, s)| (s, a)).collect();
    let weights: Vec<Vec<i64>> = basis
        .iter()
        .map(|s| (1..=n).map(|g| s.contains(&g) as i64 - s.contains(&(g + 1)) as i64).collect())
        .collect();
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    let mut h = Vec::with_capacity(n);
    for g in 1..=n {
        let mut em = Matrix::zeros(dim, dim);
        let mut fm = Matrix::zeros(dim, dim);
        let mut hm = Matrix::zeros(dim, dim);
        for (col, s) in basis.iter().enumerate() {
            // g and g + 1 are adjacent, so swapping one for the other keeps
            // the subset sorted and the sign positive.
            if s.contains(&(g + 1)) && !s.contains(&g) {
                let t: Vec<usize> = s.iter().map(|&x| if x == g + 1 { g } else { x }).collect();
                em[(index[&t], col)] = Rational::one();
            }
            if s.contains(&g) && !s.contains(&(g + 1)) {
                let t: Vec<usize> = s.iter().map(|&x| if x == g { g + 1 } else { x }).collect();
                fm[(index[&t], col)] = Rational::one();
            }
            hm[(col, col)] = Rational::from_i64(weights[col][g - 1]);
        }
        e.push(em);
        f.push(fm);
        h.push(hm);
    }
    Ok(MatrixRep { rank: n, fundamental: i, basis, weights, e, f, h })
}

impl MatrixRep {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 0-based index of the highest weight.
    pub fn fundamental(&self) -> usize {
        self.fundamental
    }

    /// Basis labels as subsets of `{1..n+1}`.
    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    /// Weight of each basis vector in fundamental-weight coordinates.
    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn e(&self, i: usize) -> &Matrix<Rational> {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &Matrix<Rational> {
        &self.f[i]
    }

    pub fn h(&self, i: usize) -> &Matrix<Rational> {
        &self.h[i]
    }

    /// Index of `v_lambda`.
    pub fn highest_index(&self) -> usize {
        0
    }

    /// Checks the Serre-free Chevalley relations, triangularity and that
    /// `v_lambda` is killed by every `e_i`.
    pub fn check_relations(&self, d: &CoxeterDatum<Rational>) -> bool {
        let n = self.rank;
        let comm = |a: &Matrix<Rational>, b: &Matrix<Rational>| a.mul(b).sub(&b.mul(a));
        for i in 0..n {
            for j in 0..n {
                if comm(&self.h[i], &self.e[j]) != self.e[j].scale(&d.cartan()[(i, j)]) {
                    return false;
                }
                if comm(&self.h[i], &self.f[j]) != self.f[j].scale(&-d.cartan()[(i, j)].clone()) {
                    return false;
                }
                let expected = if i == j { self.h[i].clone() } else { Matrix::zeros(self.dim(), self.dim()) };
                if comm(&self.e[i], &self.f[j]) != expected {
                    return false;
                }
            }
            let e = &self.e[i];
            if (0..self.dim()).any(|r| (0..=r).any(|c| !e[(r, c)].is_zero())) {
                return false;
            }
            if (0..self.dim()).any(|r| !e[(r, 0)].is_zero()) {
                return false;
            }
        }
        true
    }
}

/// `exp(m)` for a nilpotent matrix, as a finite sum.
pub fn nilpotent_exp(m: &Matrix<Rational>) -> Matrix<Rational> {
    let n = m.rows();
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=n {
        term = term.mul(m).scale(&Rational::from_ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// `s_i bar = exp(-e_i) exp(f_i) exp(-e_i)`.
pub fn bar_s(rep: &MatrixRep, i: usize) -> Matrix<Rational> {
    let a = nilpotent_exp(&rep.e[i].scale(&-Rational::one()));
    let b = nilpotent_exp(&rep.f[i]);
    a.mul(&b).mul(&a)
}

fn check_type_a(d: &CoxeterDatum<Rational>) -> Result<usize> {
    match d.label() {
        TypeLabel::A(n) => Ok(n),
        TypeLabel::I2(3) => Ok(2),
        other => Err(Error::UnsupportedType(format!("{other}"))),
    }
}

/// `w bar = s_{i1} bar ... s_{ik} bar` for a reduced word.
pub fn bar_w(d: &CoxeterDatum<Rational>, rep: &MatrixRep, word: &WeylWord) -> Result<Matrix<Rational>> {
    d.require_reduced(word)?;
    if d.rank() != rep.rank {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: rep.rank });
    }
    Ok(word.letters().iter().fold(Matrix::identity(rep.dim()), |m, &i| m.mul(&bar_s(rep, i))))
}

/// A sequence `(j_1, ..., j_r)` with `<e_{j1} ... e_{jr} w bar v, v> != 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ITrail {
    /// 0-based generator indices; `j_1` first.
    pub letters: Vec<usize>,
    pub coefficient: Rational,
}

/// Coefficients `u` of `lambda - w lambda = sum u_i alpha_i` for `lambda = omega_i`.
pub fn trail_content(d: &CoxeterDatum<Rational>, i: usize, word: &WeylWord) -> Result<Vec<Rational>> {
    let lambda = d.fundamental_weight(i);
    let wl = d.act(word, &lambda)?;
    Ok(lambda.iter().zip(&wl).map(|(a, b)| a - b).collect())
}

/// All i-trails of `S(omega_i, w)` for the representation `rep = V_{omega_i}`.
pub fn enumerate_itrails(d: &CoxeterDatum<Rational>, rep: &MatrixRep, word: &WeylWord) -> Result<Vec<ITrail>> {
    let wb = bar_w(d, rep, word)?;
    let content = trail_content(d, rep.fundamental, word)?;
    let r: Rational = content.iter().fold(Rational::zero(), |a, b| a + b);
    if !r.is_integer() || r.is_negative() {
        return Err(Error::NotIntegral);
    }
    let r = r.floor_i64() as usize;
    let start = wb.column(rep.highest_index());
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<Rational>)> = vec![(Vec::new(), start)];
    while let Some((rev, x)) = stack.pop() {
        if rev.len() == r {
            let c = x[rep.highest_index()].clone();
            if !c.is_zero() {
                out.push(ITrail { letters: rev.iter().rev().copied().collect(), coefficient: c });
            }
            continue;
        }
        for j in 0..rep.rank {
            let y = rep.e[j].mul_vec(&x);
            if y.iter().any(|v| !v.is_zero()) {
                let mut next = rev.clone();
                next.push(j);
                stack.push((next, y));
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Trail formula for `P_w` in type A:
/// `pi(t) - sum_i min_{trails} inf_{t >= t_1 >= ... >= t_r >= 0} sum_k alpha_{j_k}^vee(pi(t_k)) alpha_i`,
/// with trails taken from `S(omega_i, w^{-1})`. `T_w` applies the first
/// letter first, so its Laplace limit is `P_{w^{-1}}` in the composition
/// order used by [`pitman_word`](crate::pitman::pitman_word).
pub fn pitman_via_itrails(d: &CoxeterDatum<Rational>, path: &Path<Rational>, word: &WeylWord) -> Result<Path<Rational>> {
    let n = check_type_a(d)?;
    d.require_reduced(word)?;
    if path.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: path.dim() });
    }
    let inverse = word.reversed();
    let functionals: Vec<ScalarPath<Rational>> = (0..n).map(|j| path.functional(d.coroot(j))).collect();
    let mut out = path.clone();
    for i in 0..n {
        let rep = fundamental_rep(n, i)?;
        let mut best: Option<ScalarPath<Rational>> = None;
        for trail in enumerate_itrails(d, &rep, &inverse)? {
            if trail.letters.is_empty() {
                continue;
            }
            let terms: Vec<ScalarPath<Rational>> = trail.letters.iter().map(|&j| functionals[j].clone()).collect();
            let m = nested_inf(&terms);
            best = Some(match best {
                None => m,
                Some(b) => b.pointwise_min(&m),
            });
        }
        if let Some(m) = best {
            out = out.sub_scaled(&m, &d.simple_root(i));
        }
    }
    Ok(out)
}

/// A path sampled on the uniform grid `t_k = k T / N`, `k = 0..=N`, in
/// coroot coordinates. After any `T_i` the value at `t = 0` is undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct GridPath {
    horizon: f64,
    values: Vec<Vec<f64>>,
    kinks: Vec<bool>,
    singular_at_zero: bool,
}

/// Default number of grid intervals.
pub const DEFAULT_INTERVALS: usize = 1 << 12;

impl GridPath {
    pub fn new(horizon: f64, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() < 4 || !(horizon > 0.0) {
            return Err(Error::EmptyGrid);
        }
        let kinks = vec![false; values.len()];
        Ok(GridPath { horizon, values, kinks, singular_at_zero: false })
    }

    /// Marks nodes where the sampled path may fail to be smooth. Quadrature
    /// never interpolates across a marked node.
    pub fn with_kinks(mut self, kinks: Vec<bool>) -> Result<Self> {
        if kinks.len() != self.values.len() {
            return Err(Error::DimensionMismatch { expected: self.values.len(), got: kinks.len() });
        }
        self.kinks = kinks;
        Ok(self)
    }

    pub fn kinks(&self) -> &[bool] {
        &self.kinks
    }

    /// Samples an exact path on `intervals` equal steps. Breakpoints on a
    /// node mark that node as a kink; others mark both ends of their cell.
    pub fn sample<S: Scalar>(path: &Path<S>, intervals: usize) -> Result<Self> {
        if intervals < 3 {
            return Err(Error::EmptyGrid);
        }
        let h = path.horizon().clone();
        let mut values = Vec::with_capacity(intervals + 1);
        for k in 0..=intervals {
            let t = h.clone() * S::from_ratio(k as i64, intervals as i64);
            values.push(path.evaluate(&t)?.iter().map(Scalar::to_f64).collect());
        }
        let mut kinks = vec![false; intervals + 1];
        for t in &path.times()[1..path.times().len() - 1] {
            let x = t.to_f64() / h.to_f64() * intervals as f64;
            let (lo, hi) = (x.floor() as usize, x.ceil() as usize);
            if (x - x.round()).abs() < 1e-9 {
                kinks[x.round() as usize] = true;
            } else {
                kinks[lo] = true;
                kinks[hi.min(intervals)] = true;
            }
        }
        GridPath::new(h.to_f64(), values)?.with_kinks(kinks)
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn intervals(&self) -> usize {
        self.values.len() - 1
    }

    pub fn step(&self) -> f64 {
        self.horizon / self.intervals() as f64
    }

    pub fn time(&self, k: usize) -> f64 {
        self.horizon * k as f64 / self.intervals() as f64
    }

    pub fn values(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn singular_at_zero(&self) -> bool {
        self.singular_at_zero
    }

    /// Largest relative difference `|x - y| / max(1, |y|)` over grid points
    /// `k >= 1` and all coordinates.
    pub fn max_relative_error(&self, other: &GridPath) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .skip(1)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| relative_error(*x, *y)))
            .fold(0.0, f64::max)
    }

    /// Multiplies every value by `eps`.
    pub fn dilate(&self, eps: f64) -> GridPath {
        let values = self.values.iter().map(|v| v.iter().map(|x| x * eps).collect()).collect();
        GridPath { values, ..self.clone() }
    }
}

/// `|x - y| / max(1, |y|)`, infinite when either side is not finite.
pub fn relative_error(x: f64, y: f64) -> f64 {
    if !x.is_finite() || !y.is_finite() {
        return f64::INFINITY;
    }
    (x - y).abs() / y.abs().max(1.0)
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let m = a.max(b);
    m + ((a - m).exp() + (b - m).exp()).ln()
}

/// `alpha_i(a)` for `a` in coroot coordinates: `sum_j a_j alpha_i(alpha_j^vee)`.
fn root_pairing(d: &CoxeterDatum<f64>, i: usize, a: &[f64]) -> f64 {
    a.iter().enumerate().map(|(j, x)| x * d.cartan()[(j, i)]).sum()
}

const GAUSS_NODES: [f64; 5] = [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
const GAUSS_WEIGHTS: [f64; 5] = [0.236_926_885_056_189, 0.478_628_670_499_366, 0.568_888_888_888_889, 0.478_628_670_499_366, 0.236_926_885_056_189];

/// Interpolant of `r` through the given nodes (in units of the grid step).
fn lagrange(nodes: &[usize], r: &dyn Fn(usize) -> f64, x: f64) -> f64 {
    nodes
        .iter()
        .map(|&a| {
            let basis: f64 = nodes.iter().filter(|&&b| b != a).map(|&b| (x - b as f64) / (a as f64 - b as f64)).product();
            basis * r(a)
        })
        .sum()
}

/// `log int` over the cell `[(k-1) h, k h]` of `s^p exp(q(s))`, where `q`
/// interpolates `r` on `nodes`.
fn log_cell(k: usize, h: f64, p: f64, nodes: &[usize], r: &dyn Fn(usize) -> f64) -> f64 {
    let terms: Vec<f64> = GAUSS_NODES
        .iter()
        .zip(GAUSS_WEIGHTS)
        .map(|(x, w)| {
            let u = k as f64 - 0.5 + 0.5 * x;
            let power = if p == 0.0 { 0.0 } else { p * (u * h).ln() };
            w.ln() + power + lagrange(nodes, r, u)
        })
        .collect();
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (h / 2.0).ln() + m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Exponent `p` of an integrand behaving like `c s^p` near 0, fitted from
/// the values at `h` and `2h` and snapped to an integer when close to one.
fn singular_exponent(g1: f64, g2: f64) -> f64 {
    let p = (g2 - g1) / core::f64::consts::LN_2;
    let r = p.round();
    let p = if (p - r).abs() < 0.25 { r } else { p };
    p.max(-0.999)
}

/// Interpolation nodes for the cell `[k-1, k]`: three nodes not straddling
/// a kink when possible, else the two endpoints. `first` is the first node
/// where the integrand is defined.
fn stencil(k: usize, n: usize, first: usize, kinks: &[bool]) -> Vec<usize> {
    if k == first.max(1) && first == 1 {
        return if kinks[2] { vec![1, 2] } else { vec![1, 2, 3] };
    }
    if k >= first + 2 && !kinks[k - 1] {
        return vec![k - 2, k - 1, k];
    }
    if k + 1 < n && !kinks[k] {
        return vec![k - 1, k, k + 1];
    }
    vec![k - 1, k]
}

/// `log int_0^{t_k} exp(g(s)) ds` for `k >= 1`. The integrand is written
/// `s^p exp(r(s))`, with `p = 0` unless `g` is singular at 0, and `r` is
/// interpolated by piecewise quadratics that do not cross kinks.
fn cumulative_log_integral(g: &[f64], h: f64, singular: bool, kinks: &[bool]) -> Vec<f64> {
    let n = g.len();
    let singular = singular || !g[0].is_finite();
    let p = if singular { singular_exponent(g[1], g[2]) } else { 0.0 };
    let r = |k: usize| if p == 0.0 { g[k] } else { g[k] - p * (k as f64 * h).ln() };
    let first = if singular { 1 } else { 0 };
    let mut out = vec![f64::NEG_INFINITY; n];
    let mut acc = f64::NEG_INFINITY;
    for k in 1..n {
        acc = log_add(acc, log_cell(k, h, p, &stencil(k, n, first, kinks), &r));
        out[k] = acc;
    }
    out
}

/// `T_{i,n} a(t) = a(t) + log(int_0^t exp(-alpha_i(a(s))) n(s) ds) alpha_i^vee`,
/// with `n` sampled on the grid.
pub fn t_transform_weighted(d: &CoxeterDatum<f64>, a: &GridPath, i: usize, weights: &[f64]) -> Result<GridPath> {
    d.check_generator(i)?;
    if weights.len() != a.values.len() {
        return Err(Error::DimensionMismatch { expected: a.values.len(), got: weights.len() });
    }
    if weights.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::InvalidArgument("weights must be positive".into()));
    }
    let g: Vec<f64> = a.values.iter().zip(weights).map(|(v, w)| -root_pairing(d, i, v) + w.ln()).collect();
    let logs = cumulative_log_integral(&g, a.step(), a.singular_at_zero, &a.kinks);
    let mut values = a.values.clone();
    for (v, l) in values.iter_mut().zip(&logs) {
        v[i] += l;
    }
    for x in values[0].iter_mut() {
        *x = f64::NAN;
    }
    Ok(GridPath { horizon: a.horizon, values, kinks: a.kinks.clone(), singular_at_zero: true })
}

/// `T_i` with `n_i = 1`.
pub fn t_transform(d: &CoxeterDatum<f64>, a: &GridPath, i: usize) -> Result<GridPath> {
    t_transform_weighted(d, a, i, &vec![1.0; a.values.len()])
}

/// `T_w a = T_{ik} ... T_{i1} a` for `w = s_{i1} ... s_{ik}`: the first
/// letter acts first.
pub fn t_word(d: &CoxeterDatum<f64>, a: &GridPath, word: &WeylWord) -> Result<GridPath> {
    let mut out = a.clone();
    for &i in word.letters() {
        out = t_transform(d, &out, i)?;
    }
    Ok(out)
}

/// `D_eps T_w D_{1/eps} a`.
pub fn t_word_scaled(d: &CoxeterDatum<f64>, a: &GridPath, word: &WeylWord, eps: f64) -> Result<GridPath> {
    Ok(t_word(d, &a.dilate(1.0 / eps), word)?.dilate(eps))
}

/// `exp(m)` by scaling and squaring of a Taylor polynomial.
pub fn matrix_exp(m: &Matrix<f64>) -> Matrix<f64> {
    let n = m.rows();
    let norm = (0..n).map(|i| (0..n).map(|j| m[(i, j)].abs()).sum::<f64>()).fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale /= 2.0;
        squarings += 1;
    }
    let a = m.scale(&scale);
    let mut out = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=18 {
        term = term.mul(&a).scale(&(1.0 / k as f64));
        out = out.add(&term);
    }
    for _ in 0..squarings {
        out = out.mul(&out);
    }
    out
}

/// `omega_i(log [g]_0) = log Delta^{omega_i}(g)`, where `gs[i]` is `g`
/// acting on `V_{omega_i}` with the highest weight vector at index 0.
pub fn gauss_h_part(gs: &[Matrix<f64>]) -> Result<Vec<f64>> {
    gs.iter()
        .map(|g| {
            let m = g[(0, 0)];
            if m > 0.0 {
                Ok(m.ln())
            } else {
                Err(Error::NonPositiveMinor(m))
            }
        })
        .collect()
}

/// `b(t_k)` on the grid of `intervals` steps for `b' = (a' + sum e_i) b`,
/// `b(0) = 1`, in the representation `rep`. On each linear piece of `a`
/// the generator is constant and the step is an exact matrix exponential.
pub fn solve_b(rep: &MatrixRep, a: &Path<f64>, intervals: usize) -> Result<Vec<Matrix<f64>>> {
    if intervals == 0 {
        return Err(Error::EmptyGrid);
    }
    let dim = rep.dim();
    let nil = rep.e.iter().fold(Matrix::zeros(dim, dim), |acc, e| acc.add(&e.map(Scalar::to_f64)));
    let horizon = *a.horizon();
    let grid: Vec<f64> = (0..=intervals).map(|k| horizon * k as f64 / intervals as f64).collect();
    let mut times: Vec<f64> = grid.iter().copied().chain(a.times().iter().copied()).collect();
    times.sort_by(|x, y| x.total_cmp(y));
    times.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * horizon.max(1.0));
    let slope_at = |t0: f64, t1: f64| -> Result<Vec<f64>> {
        let v0 = a.evaluate(&t0)?;
        let v1 = a.evaluate(&t1)?;
        Ok(v0.iter().zip(&v1).map(|(x, y)| (y - x) / (t1 - t0)).collect())
    };
    let mut out = Vec::with_capacity(intervals + 1);
    let mut b = Matrix::identity(dim);
    out.push(b.clone());
    let mut next_grid = 1;
    for w in times.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let slope = slope_at(t0, t1)?;
        let mut gen = nil.clone();
        for (k, wt) in rep.weights.iter().enumerate() {
            gen[(k, k)] = wt.iter().zip(&slope).map(|(m, s)| *m as f64 * s).sum();
        }
        b = matrix_exp(&gen.scale(&(t1 - t0))).mul(&b);
        while next_grid <= intervals && (grid[next_grid] - t1).abs() <= 1e-12 * horizon.max(1.0) {
            out.push(b.clone());
            next_grid += 1;
        }
    }
    if out.len() != intervals + 1 {
        return Err(Error::EmptyGrid);
    }
    Ok(out)
}

/// Compares `log Delta^{omega_j}(b(t) w bar)` with `omega_j(T_w a(t))` on the
/// grid `t_k`, `k >= 1`, for all `j`; returns the largest relative error.
pub fn verify_theorem_main(d: &CoxeterDatum<Rational>, a: &Path<Rational>, word: &WeylWord, intervals: usize) -> Result<f64> {
    let n = check_type_a(d)?;
    d.require_reduced(word)?;
    let df: CoxeterDatum<f64> = CoxeterDatum::from_label(TypeLabel::A(n))?;
    let grid = GridPath::sample(a, intervals)?;
    let tw = t_word(&df, &grid, word)?;
    let af = a.map_scalars(|x| x.to_f64());
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let rep = fundamental_rep(n, j)?;
        let wb = bar_w(d, &rep, word)?.map(Scalar::to_f64);
        let bs = solve_b(&rep, &af, intervals)?;
        for k in 1..=intervals {
            let lhs = gauss_h_part(&[bs[k].mul(&wb)])?[0];
            worst = worst.max(relative_error(lhs, tw.values[k][j]));
        }
    }
    Ok(worst)
}

/// `lambda(a(t_k)) + log sum_trails c int_{t >= t_1 >= ... >= t_r >= 0}
/// exp(-sum alpha_{j_l}(a(t_l))) dt` at every grid point, for `lambda = omega_i`.
pub fn trail_sum_log(d: &CoxeterDatum<f64>, a: &GridPath, i: usize, trails: &[ITrail]) -> Result<Vec<f64>> {
    if a.singular_at_zero {
        return Err(Error::InvalidArgument("trail sums need a path defined at 0".into()));
    }
    let h = a.step();
    let n = a.values.len();
    let mut total = vec![f64::NEG_INFINITY; n];
    for trail in trails {
        // Innermost (earliest) time first.
        let mut inner = vec![0.0f64; n];
        for &j in trail.letters.iter().rev() {
            let g: Vec<f64> = a.values.iter().zip(&inner).map(|(v, l)| -root_pairing(d, j, v) + l).collect();
            inner = cumulative_log_integral(&g, h, false, &a.kinks);
            inner[0] = f64::NEG_INFINITY;
        }
        let c = trail.coefficient.to_f64().ln();
        for (t, l) in total.iter_mut().zip(&inner) {
            *t = log_add(*t, c + l);
        }
    }
    Ok(a.values.iter().zip(&total).map(|(v, t)| v[i] + t).collect())
}
