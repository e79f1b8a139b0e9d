//! Pitman transforms, Littelmann root operators, the dihedral closed
//! formula and the tropical operations on scalar paths.
//!
//! Words act as operator compositions: `pitman_word(path, (i1, ..., ik))`
//! is `P_{i1} ... P_{ik} path`, so the rightmost letter is applied first.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pathcore::{Path, ScalarPath};
use crate::rootsys::{CoxeterDatum, Root, WeylWord};
use crate::scalar::{Rational, Scalar};

/// `P pi = pi - inf_{s <= t} phi(pi(s)) root` for an arbitrary root/coroot pair.
pub fn pitman_pair<S: Scalar>(path: &Path<S>, root: &[S], coroot: &[S]) -> Path<S> {
    let inf = path.functional(coroot).running_inf();
    path.sub_scaled(&inf, root)
}

/// Pointwise reflection `v -> v - phi(v) root`.
pub fn reflect_pair<S: Scalar>(path: &Path<S>, root: &[S], coroot: &[S]) -> Path<S> {
    path.sub_scaled(&path.functional(coroot), root)
}

fn check<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<()> {
    d.check_generator(i)?;
    if path.dim() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: path.dim() });
    }
    Ok(())
}

/// The Pitman transform `P_{alpha_i}`.
pub fn pitman<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<Path<S>> {
    check(d, path, i)?;
    Ok(pitman_pair(path, &d.simple_root(i), d.coroot(i)))
}

/// `P_beta` for a positive root `beta`.
pub fn pitman_root<S: Scalar>(path: &Path<S>, beta: &Root<S>) -> Path<S> {
    pitman_pair(path, &beta.vector, &beta.coroot)
}

/// `pi = eta - min(x, inf_{s >= t} alpha^vee(eta(s))) alpha` for an
/// alpha-dominant `eta` and `0 <= x <= alpha^vee(eta(T))`.
pub fn pitman_inverse<S: Scalar>(d: &CoxeterDatum<S>, eta: &Path<S>, i: usize, x: &S) -> Result<Path<S>> {
    check(d, eta, i)?;
    let tol = d.tolerance();
    let f = eta.functional(d.coroot(i));
    if f.inf().to_f64() < -tol {
        return Err(Error::NotAlphaDominant(i + 1));
    }
    if x.to_f64() < -tol || x.to_f64() > f.end().to_f64() + tol {
        return Err(Error::OutOfRange(alloc::format!("x = {x} not in [0, {}]", f.end())));
    }
    let cap = ScalarPath::constant(x.clone(), eta.horizon().clone());
    let g = f.suffix_inf().pointwise_min(&cap);
    Ok(eta.sub_scaled(&g, &d.simple_root(i)))
}

/// The continuous Littelmann operator `E_i^x`; `None` is the null path.
pub fn littelmann_shift<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize, x: &S) -> Result<Option<Path<S>>> {
    check(d, path, i)?;
    let f = path.functional(d.coroot(i));
    let m = f.inf();
    let two = S::from_i64(2);
    let lower = -(two.clone() * f.end().clone()) + two.clone() * m.clone();
    let upper = -(two.clone() * m.clone());
    if *x < lower || *x > upper {
        return Ok(None);
    }
    let y = -m - x.clone() / two;
    let p = pitman_pair(path, &d.simple_root(i), d.coroot(i));
    pitman_inverse(d, &p, i, &y).map(Some)
}

/// Littelmann's `e_i = E_i^2`.
pub fn raise_e<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<Option<Path<S>>> {
    littelmann_shift(d, path, i, &S::from_i64(2))
}

/// Littelmann's `f_i = E_i^{-2}`.
pub fn lower_f<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<Option<Path<S>>> {
    littelmann_shift(d, path, i, &S::from_i64(-2))
}

/// Largest `n` with `e_i^n path` not null, namely `floor(-inf alpha_i^vee(path))`.
pub fn max_raise_n<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<i64> {
    check(d, path, i)?;
    Ok((-path.functional(d.coroot(i)).inf()).floor_i64())
}

/// Largest `n` with `f_i^n path` not null.
pub fn max_lower_n<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<i64> {
    check(d, path, i)?;
    let f = path.functional(d.coroot(i));
    Ok((f.end().clone() - f.inf()).floor_i64())
}

/// `P_w = P_{i1} ... P_{ik}` for a reduced word, rightmost letter first.
pub fn pitman_word<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Path<S>> {
    d.require_reduced(word)?;
    pitman_word_unchecked(d, path, word)
}

/// As [`pitman_word`] without the reducedness check.
pub fn pitman_word_unchecked<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Path<S>> {
    let mut p = path.clone();
    for &i in word.letters().iter().rev() {
        p = pitman(d, &p, i)?;
    }
    Ok(p)
}

/// `P_{w0}` through the lexicographically minimal reduced word.
pub fn pitman_w0<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<Path<S>> {
    pitman_word_unchecked(d, path, &d.longest_element())
}

/// Alternating product `P_i P_j P_i ...` with `n` factors.
pub fn alternating_product<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize, j: usize, n: usize) -> Result<Path<S>> {
    let letters: Vec<usize> = (0..n).map(|k| if k % 2 == 0 { i } else { j }).collect();
    pitman_word_unchecked(d, path, &WeylWord::new(letters))
}

/// Alternating product for a raw pair of roots.
pub fn alternating_pair<S: Scalar>(path: &Path<S>, pair: &DihedralPair<S>, n: usize) -> Path<S> {
    let mut p = path.clone();
    for k in (0..n).rev() {
        p = if k % 2 == 0 {
            pitman_pair(&p, &pair.alpha, &pair.alpha_co)
        } else {
            pitman_pair(&p, &pair.beta, &pair.beta_co)
        };
    }
    p
}

/// `T_k(x)` with `T_0 = 1`, `T_1 = 2x`, `T_{k+1} = 2x T_k - T_{k-1}`.
pub fn chebyshev_t<S: Scalar>(k: usize, x: &S) -> S {
    let two_x = S::from_i64(2) * x.clone();
    let (mut prev, mut cur) = (S::one(), two_x.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = two_x.clone() * cur.clone() - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Integer coefficients of `T_k` in increasing degree.
fn chebyshev_coeffs(k: usize) -> Vec<i64> {
    let mut prev = vec![1i64];
    let mut cur = vec![0i64, 2];
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let mut next = vec![0i64; cur.len() + 1];
        for (d, c) in cur.iter().enumerate() {
            next[d + 1] += 2 * c;
        }
        for (d, c) in prev.iter().enumerate() {
            next[d] -= c;
        }
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_k` for even `k`, or `T_k(x)/x` for odd `k`, evaluated at `x^2 = r2`.
fn chebyshev_in_square<S: Scalar>(k: usize, r2: &S) -> S {
    let c = chebyshev_coeffs(k);
    let mut acc = S::zero();
    let mut pow = S::one();
    for d in (k % 2..c.len()).step_by(2) {
        acc = acc + S::from_i64(c[d]) * pow.clone();
        pow = pow * r2.clone();
    }
    acc
}

/// Two roots with their coroots, `alpha_co(beta) <= 0` and `beta_co(alpha) <= 0`.
#[derive(Clone, Debug)]
pub struct DihedralPair<S> {
    pub alpha: Vec<S>,
    pub alpha_co: Vec<S>,
    pub beta: Vec<S>,
    pub beta_co: Vec<S>,
}

impl<S: Scalar> DihedralPair<S> {
    pub fn from_datum(d: &CoxeterDatum<S>, i: usize, j: usize) -> Self {
        DihedralPair {
            alpha: d.simple_root(i),
            alpha_co: d.coroot(i).to_vec(),
            beta: d.simple_root(j),
            beta_co: d.coroot(j).to_vec(),
        }
    }

    /// Rank-two pair given by a generalized Cartan matrix `[[2, a], [b, 2]]`
    /// on root coordinates, with `a = alpha^vee(beta)`, `b = beta^vee(alpha)`.
    pub fn from_cartan(a: S, b: S) -> Self {
        let two = S::from_i64(2);
        DihedralPair {
            alpha: vec![S::one(), S::zero()],
            alpha_co: vec![two.clone(), a],
            beta: vec![S::zero(), S::one()],
            beta_co: vec![b, two],
        }
    }

    fn pairings(&self) -> (S, S) {
        let a = crate::rootsys::dot(&self.alpha_co, &self.beta);
        let b = crate::rootsys::dot(&self.beta_co, &self.alpha);
        (a, b)
    }

    /// `rho^2 = a b / 4` after symmetric rescaling.
    pub fn rho_squared(&self) -> S {
        let (a, b) = self.pairings();
        a * b / S::from_i64(4)
    }
}

/// Whether `rho >= cos(pi/n)`, decided exactly where `cos^2(pi/n)` is rational.
fn hypothesis_holds<S: Scalar>(r2: &S, n: usize) -> bool {
    let exact = match n {
        1 | 2 => Some(S::zero()),
        3 => Some(S::from_ratio(1, 4)),
        4 => Some(S::from_ratio(1, 2)),
        6 => Some(S::from_ratio(3, 4)),
        _ => None,
    };
    match exact {
        Some(c2) if S::EXACT => *r2 >= c2,
        Some(c2) => r2.to_f64() >= c2.to_f64() - crate::scalar::APPROX_TOLERANCE,
        None => {
            let c = num_traits::Float::cos(core::f64::consts::PI / n as f64);
            num_traits::Float::sqrt(r2.to_f64()) >= c - crate::scalar::APPROX_TOLERANCE
        }
    }
}

/// `inf_{t >= s_0 >= ... >= s_{k-1} >= 0} sum_i terms[i](s_i)`, innermost first.
pub fn nested_inf<S: Scalar>(terms: &[ScalarPath<S>]) -> ScalarPath<S> {
    let mut acc: Option<ScalarPath<S>> = None;
    for f in terms.iter().rev() {
        let inner = match acc {
            None => f.clone(),
            Some(g) => f.add(&g),
        };
        acc = Some(inner.running_inf());
    }
    acc.expect("at least one term")
}

/// Closed formula for `P_alpha P_beta P_alpha ...` with `n` factors.
///
/// Requires `rho >= cos(pi/n)` where `rho^2 = alpha^vee(beta) beta^vee(alpha)/4`.
/// No rescaling to a symmetric pair is performed: odd Chebyshev terms are
/// carried as `T_k(rho)/rho` times the matching half-pairing, which keeps
/// crystallographic data rational.
pub fn dihedral_closed_form<S: Scalar>(path: &Path<S>, pair: &DihedralPair<S>, n: usize) -> Result<Path<S>> {
    if n == 0 {
        return Ok(path.clone());
    }
    let (a, b) = pair.pairings();
    let orthogonal = a.is_zero() && b.is_zero();
    if !(orthogonal || (a.is_negative() && b.is_negative())) {
        return Err(Error::FormulaHypothesis("pairings must be negative, or both zero".into()));
    }
    let r2 = a.clone() * b.clone() / S::from_i64(4);
    if !hypothesis_holds(&r2, n) {
        return Err(Error::FormulaHypothesis(alloc::format!("rho < cos(pi/{n})")));
    }
    let x = path.functional(&pair.alpha_co);
    let y = path.functional(&pair.beta_co);
    let two = S::from_i64(2);
    let half_a = -a / two.clone();
    let half_b = -b / two;
    // Coefficient of alpha: terms X, Y, X, ... with weights T_0, c T_1, T_2, ...
    let alpha_terms: Vec<ScalarPath<S>> = (0..n)
        .map(|k| {
            let t = chebyshev_in_square(k, &r2);
            if k % 2 == 0 {
                x.scale(&t)
            } else {
                y.scale(&(t * half_a.clone()))
            }
        })
        .collect();
    // Coefficient of beta: terms Y, X, Y, ... with n - 1 entries.
    let beta_terms: Vec<ScalarPath<S>> = (0..n - 1)
        .map(|k| {
            let t = chebyshev_in_square(k, &r2);
            if k % 2 == 0 {
                y.scale(&t)
            } else {
                x.scale(&(t * half_b.clone()))
            }
        })
        .collect();
    let mut out = path.sub_scaled(&nested_inf(&alpha_terms), &pair.alpha);
    if !beta_terms.is_empty() {
        out = out.sub_scaled(&nested_inf(&beta_terms), &pair.beta);
    }
    Ok(out)
}

/// Whether `alpha_i^vee(path(t)) >= 0` for all `t`.
pub fn is_alpha_dominant<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> bool {
    path.functional(d.coroot(i)).inf().to_f64() >= -d.tolerance()
}

/// Whether the path stays in the closed Weyl chamber.
pub fn is_dominant<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> bool {
    (0..d.rank()).all(|i| is_alpha_dominant(d, path, i))
}

/// Whether `alpha^vee(path(t)) >= alpha^vee(path(T))` for all `t` and simple `alpha`.
pub fn is_codominant<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> bool {
    (0..d.rank()).all(|i| {
        let f = path.functional(d.coroot(i));
        (f.inf() - f.end().clone()).to_f64() >= -d.tolerance()
    })
}

/// Endpoint in the weight lattice and every `min alpha_i^vee(path)` an integer.
pub fn is_integral(d: &CoxeterDatum<Rational>, path: &Path<Rational>) -> bool {
    (0..d.rank()).all(|i| {
        let f = path.functional(d.coroot(i));
        Scalar::is_integer(f.end()) && Scalar::is_integer(&f.inf())
    })
}

/// Position of a path inside the polytope `K_pi` along a reduced word.
#[derive(Clone, Debug, PartialEq)]
pub struct StringCoordinates<S> {
    pub word: WeylWord,
    pub values: Vec<S>,
}

/// `x_j = -inf alpha_{s_j}^vee(eta_j)` with `eta_j = P_{s_{j+1}} ... P_{s_q} eta`.
pub fn string_coordinates<S: Scalar>(d: &CoxeterDatum<S>, eta: &Path<S>, word: &WeylWord) -> Result<StringCoordinates<S>> {
    d.require_reduced(word)?;
    let q = word.len();
    let mut values = vec![S::zero(); q];
    let mut current = eta.clone();
    for j in (0..q).rev() {
        let i = word.letters()[j];
        check(d, &current, i)?;
        values[j] = -current.functional(d.coroot(i)).inf();
        current = pitman(d, &current, i)?;
    }
    Ok(StringCoordinates { word: word.clone(), values })
}

/// Rebuilds `eta` from `pi = P_w eta` and its string coordinates.
pub fn from_string_coordinates<S: Scalar>(d: &CoxeterDatum<S>, pi: &Path<S>, sc: &StringCoordinates<S>) -> Result<Path<S>> {
    let mut current = pi.clone();
    for (j, &i) in sc.word.letters().iter().enumerate() {
        current = pitman_inverse(d, &current, i, &sc.values[j])?;
    }
    Ok(current)
}

/// Whether string coordinates satisfy the `K_pi` inequalities for endpoint `pi(T)`.
pub fn in_string_polytope<S: Scalar>(d: &CoxeterDatum<S>, end: &[S], sc: &StringCoordinates<S>) -> bool {
    let tol = d.tolerance();
    let l = sc.word.letters();
    (0..l.len()).all(|j| {
        let mut bound = d.pair(l[j], end);
        for k in 0..j {
            bound = bound - sc.values[k].clone() * d.cartan()[(l[j], l[k])].clone();
        }
        sc.values[j].to_f64() >= -tol && (bound - sc.values[j].clone()).to_f64() >= -tol
    })
}

/// `(x up y)(t) = inf_{s <= t} [x(s) - y(s)] + y(t)`.
pub fn tri_up<S: Scalar>(x: &ScalarPath<S>, y: &ScalarPath<S>) -> ScalarPath<S> {
    x.sub(y).running_inf().add(y)
}

/// `(x down y)(t) = sup_{s <= t} [x(s) - y(s)] + y(t)`.
pub fn tri_down<S: Scalar>(x: &ScalarPath<S>, y: &ScalarPath<S>) -> ScalarPath<S> {
    x.sub(y).running_sup().add(y)
}

/// Both sides of the splitting identity for `X(0) = Y(0) = 0`:
/// `inf_s (X(s) + inf_{u <= s} Y(u))` and
/// `inf X + inf_s (X(s) - 2 inf_{u <= s} X(u) + inf_{u <= s} (Y(u) + inf_{v <= u} X(v)))`,
/// as functions of the upper limit `t`.
pub fn inf_splitting_sides<S: Scalar>(x: &ScalarPath<S>, y: &ScalarPath<S>) -> (ScalarPath<S>, ScalarPath<S>) {
    let lhs = x.add(&y.running_inf()).running_inf();
    let mx = x.running_inf();
    let inner = y.add(&mx).running_inf();
    let two = S::from_i64(2);
    let rhs = mx.add(&x.sub(&mx.scale(&two)).add(&inner).running_inf());
    (lhs, rhs)
}

/// Both sides of `(x up (z down y)) up (y up z) = (x up y) up z`.
pub fn tropical_identity_sides<S: Scalar>(x: &ScalarPath<S>, y: &ScalarPath<S>, z: &ScalarPath<S>) -> (ScalarPath<S>, ScalarPath<S>) {
    let lhs = tri_up(&tri_up(x, &tri_down(z, y)), &tri_up(y, z));
    let rhs = tri_up(&tri_up(x, y), z);
    (lhs, rhs)
}
