//! Time-reversal conjugates of the Pitman transforms: co-Pitman operators
//! `E`, the involution `I`, and the `Q_beta`, `D_beta` transforms along the
//! root sequence of a reduced word of `w0`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::pathcore::Path;
use crate::pitman::{pitman_w0, reflect_pair};
use crate::rootsys::{CoxeterDatum, Root, WeylWord};
use crate::scalar::Scalar;

fn check_path<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<()> {
    if path.dim() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: path.dim() });
    }
    Ok(())
}

/// `E pi(t) = pi(t) - inf_{t <= s <= T} phi(pi(s)) root + inf_{[0, T]} phi(pi) root`.
pub fn co_pitman_pair<S: Scalar>(path: &Path<S>, root: &[S], coroot: &[S]) -> Path<S> {
    let f = path.functional(coroot);
    let g = f.suffix_inf().add_constant(&-f.inf());
    path.sub_scaled(&g, root)
}

/// The co-Pitman operator `E_{alpha_i} = kappa P_{alpha_i} kappa`.
pub fn co_pitman<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, i: usize) -> Result<Path<S>> {
    d.check_generator(i)?;
    check_path(d, path)?;
    Ok(co_pitman_pair(path, &d.simple_root(i), d.coroot(i)))
}

/// `E_w = E_{i1} ... E_{ik}` for a reduced word, rightmost letter first.
pub fn co_pitman_word<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Path<S>> {
    d.require_reduced(word)?;
    let mut p = path.clone();
    for &i in word.letters().iter().rev() {
        p = co_pitman(d, &p, i)?;
    }
    Ok(p)
}

/// `E_{w0}`.
pub fn co_pitman_w0<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<Path<S>> {
    co_pitman_word(d, path, &d.longest_element())
}

/// Pointwise image under the linear map `-w0`.
pub fn neg_w0<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<Path<S>> {
    check_path(d, path)?;
    Ok(path.apply_map(d.longest_matrix()).neg())
}

/// `I = P_{w0} kappa (-w0)`.
pub fn involution_i<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<Path<S>> {
    pitman_w0(d, &neg_w0(d, path)?.kappa())
}

/// `Q_beta eta(t) = s_beta eta(t) + sup_{s <= t} beta^vee(eta(s)) beta`.
pub fn q_transform<S: Scalar>(path: &Path<S>, beta: &Root<S>) -> Path<S> {
    let sup = path.functional(&beta.coroot).running_sup();
    reflect_pair(path, &beta.vector, &beta.coroot).add_scaled(&sup, &beta.vector)
}

/// `D_beta eta(t) = eta(t) + inf_{t <= u <= T} beta^vee(eta(u) - eta(t)) beta
/// - inf_{[0, T]} beta^vee(eta) beta`.
pub fn d_transform<S: Scalar>(path: &Path<S>, beta: &Root<S>) -> Path<S> {
    let f = path.functional(&beta.coroot);
    let g = f.suffix_inf().sub(&f).add_constant(&-f.inf());
    path.add_scaled(&g, &beta.vector)
}

/// Roots `beta_j = s_{i1} ... s_{i(j-1)} alpha_{ij}` of a reduced word.
#[derive(Clone, Debug)]
pub struct BetaSequence<S> {
    pub word: WeylWord,
    pub roots: Vec<Root<S>>,
}

/// The root sequence of a reduced word.
pub fn beta_sequence<S: Scalar>(d: &CoxeterDatum<S>, word: &WeylWord) -> Result<BetaSequence<S>> {
    d.require_reduced(word)?;
    let letters = word.letters();
    let mut roots = Vec::with_capacity(letters.len());
    for (j, &i) in letters.iter().enumerate() {
        let prefix = WeylWord::new(letters[..j].to_vec());
        roots.push(d.root_with_coroot(d.act(&prefix, &d.simple_root(i))?));
    }
    Ok(BetaSequence { word: word.clone(), roots })
}

fn w0_sequence<S: Scalar>(d: &CoxeterDatum<S>, word: &WeylWord) -> Result<BetaSequence<S>> {
    let seq = beta_sequence(d, word)?;
    if word.len() != d.positive_roots().len() {
        return Err(Error::InvalidArgument(alloc::format!("{word} is not a reduced word of w0")));
    }
    Ok(seq)
}

/// `Q_{w0} = Q_{beta_1} ... Q_{beta_q}`, equal to `P_{w0} w0`.
pub fn q_w0<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Path<S>> {
    check_path(d, path)?;
    let seq = w0_sequence(d, word)?;
    Ok(seq.roots.iter().rev().fold(path.clone(), |p, b| q_transform(&p, b)))
}

/// `D_{w0} = D_{beta_1} ... D_{beta_q}`, equal to `iota Q_{w0} iota`.
pub fn d_w0<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Path<S>> {
    check_path(d, path)?;
    let seq = w0_sequence(d, word)?;
    Ok(seq.roots.iter().rev().fold(path.clone(), |p, b| d_transform(&p, b)))
}

/// `y_j = -inf beta_j^vee(rho_j)` with `rho_q = eta` and
/// `rho_{j-1} = D_{beta_j} rho_j`; `y[j - 1]` holds `y_j`.
pub fn y_coordinates<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>, word: &WeylWord) -> Result<Vec<S>> {
    check_path(d, path)?;
    let seq = w0_sequence(d, word)?;
    let mut y = Vec::with_capacity(seq.roots.len());
    let mut rho = path.clone();
    for beta in seq.roots.iter().rev() {
        y.push(-rho.functional(&beta.coroot).inf());
        rho = d_transform(&rho, beta);
    }
    y.reverse();
    Ok(y)
}

/// Checks `E_{w0} pi(T) = w0 P_{w0} pi(T)`.
pub fn endpoint_identity_check<S: Scalar>(d: &CoxeterDatum<S>, path: &Path<S>) -> Result<bool> {
    let lhs = co_pitman_w0(d, path)?;
    let p = pitman_w0(d, path)?;
    let rhs = d.longest_matrix().mul_vec(p.endpoint());
    let tol = d.tolerance() * 1e3;
    Ok(lhs.endpoint().iter().zip(&rhs).all(|(a, b)| a.approx_eq(b, tol)))
}
