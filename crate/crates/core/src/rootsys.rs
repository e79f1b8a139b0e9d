//! Root data, Weyl groups, reduced words and weights.
//!
//! Vectors live in simple-root coordinates: `v = sum_k v[k] * alpha_k`. The
//! datum carries the Gram matrix of the simple roots, from which every
//! pairing is derived, and an ambient embedding used for Euclidean
//! computations (Brownian motion, printing).

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{Rational, Scalar, APPROX_TOLERANCE};

/// Supported root-system labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    /// `A_n`, `1 <= n <= 3`.
    A(usize),
    A1xA1,
    B2,
    G2,
    /// Dihedral group of order `2m`.
    I2(u32),
}

impl TypeLabel {
    pub fn parse(s: &str) -> Result<TypeLabel> {
        let t = s.trim();
        let bad = || Error::UnsupportedType(t.to_string());
        match t {
            "A1" => Ok(TypeLabel::A(1)),
            "A2" => Ok(TypeLabel::A(2)),
            "A3" => Ok(TypeLabel::A(3)),
            "A1xA1" | "A1×A1" | "A1*A1" => Ok(TypeLabel::A1xA1),
            "B2" | "C2" => Ok(TypeLabel::B2),
            "G2" => Ok(TypeLabel::G2),
            _ => {
                let inner = t.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let m: u32 = inner.trim().parse().map_err(|_| bad())?;
                if m < 2 {
                    return Err(bad());
                }
                Ok(TypeLabel::I2(m))
            }
        }
    }

    pub fn rank(self) -> usize {
        match self {
            TypeLabel::A(n) => n,
            _ => 2,
        }
    }

    /// Whether the Cartan pairings are integers.
    pub fn is_crystallographic(self) -> bool {
        match self {
            TypeLabel::I2(m) => matches!(m, 2 | 3 | 4 | 6),
            _ => true,
        }
    }
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeLabel::A(n) => write!(f, "A{n}"),
            TypeLabel::A1xA1 => f.write_str("A1xA1"),
            TypeLabel::B2 => f.write_str("B2"),
            TypeLabel::G2 => f.write_str("G2"),
            TypeLabel::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// A word in the simple reflections. Letters are zero-based generator
/// indices; [`fmt::Display`] prints them one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeylWord {
    letters: Vec<usize>,
}

impl WeylWord {
    pub fn new(letters: Vec<usize>) -> Self {
        WeylWord { letters }
    }

    pub fn identity() -> Self {
        WeylWord { letters: Vec::new() }
    }

    /// Builds a word from one-based letters as written on the command line.
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&l| l.checked_sub(1).ok_or(Error::BadGenerator { index: l, rank: 0 }))
            .collect::<Result<Vec<_>>>()
            .map(WeylWord::new)
    }

    /// Parses `"1,2,1"` (one-based). The empty string is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(WeylWord::identity());
        }
        let letters = s
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad letter '{x}'"))))
            .collect::<Result<Vec<_>>>()?;
        WeylWord::from_one_based(&letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &WeylWord) -> WeylWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        WeylWord { letters }
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord { letters: self.letters.iter().rev().copied().collect() }
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l + 1)?;
        }
        f.write_str(")")
    }
}

/// A Weyl group element: its matrix on simple-root coordinates and its
/// lexicographically minimal reduced word.
#[derive(Clone, Debug)]
pub struct WeylElement<S> {
    pub word: WeylWord,
    pub matrix: Matrix<S>,
}

impl<S> WeylElement<S> {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i32 {
        if self.word.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// A positive root together with its coroot, both in simple-root terms.
#[derive(Clone, Debug)]
pub struct Root<S> {
    /// Coordinates of the root in the simple-root basis.
    pub vector: Vec<S>,
    /// Coefficients of the coroot as a linear form on simple-root coordinates.
    pub coroot: Vec<S>,
}

impl<S: Scalar> Root<S> {
    pub fn pair(&self, v: &[S]) -> S {
        dot(&self.coroot, v)
    }
}

/// Cartan and Coxeter data of a finite root system of rank at most 3.
#[derive(Clone, Debug)]
pub struct CoxeterDatum<S> {
    label: TypeLabel,
    rank: usize,
    gram: Matrix<S>,
    /// `cartan[(i, j)] = alpha_i^vee(alpha_j)`.
    cartan: Matrix<S>,
    cartan_inv: Matrix<S>,
    coxeter: Vec<Vec<u32>>,
    /// Columns are simple roots in ambient coordinates.
    ambient: Matrix<S>,
    group: Vec<WeylElement<S>>,
    positive_roots: Vec<Root<S>>,
    longest: usize,
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| if x.is_zero() { acc } else { acc + x.clone() * y.clone() })
}

fn q<S: Scalar>(n: i64) -> S {
    S::from_i64(n)
}

/// Gram matrix and ambient embedding for a label in the given scalar mode.
fn realization<S: Scalar>(label: TypeLabel) -> Result<(Matrix<S>, Matrix<S>)> {
    let rows = |r: &[&[i64]]| -> Matrix<S> {
        Matrix::from_rows(&r.iter().map(|row| row.iter().map(|&x| q::<S>(x)).collect()).collect::<Vec<_>>())
    };
    Ok(match label {
        TypeLabel::A(n) => {
            if !(1..=3).contains(&n) {
                return Err(Error::UnsupportedType(label.to_string()));
            }
            let gram = Matrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
                0 => q(2),
                1 => q(-1),
                _ => S::zero(),
            });
            let ambient = Matrix::from_fn(n + 1, n, |k, j| {
                if k == j {
                    S::one()
                } else if k == j + 1 {
                    q(-1)
                } else {
                    S::zero()
                }
            });
            (gram, ambient)
        }
        TypeLabel::A1xA1 | TypeLabel::I2(2) => {
            (rows(&[&[2, 0], &[0, 2]]), rows(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1]]))
        }
        TypeLabel::I2(3) => realization(TypeLabel::A(2))?,
        TypeLabel::B2 | TypeLabel::I2(4) => (rows(&[&[2, -1], &[-1, 1]]), rows(&[&[1, 0], &[-1, 1]])),
        TypeLabel::G2 | TypeLabel::I2(6) => {
            (rows(&[&[2, -3], &[-3, 6]]), rows(&[&[1, -2], &[-1, 1], &[0, 1]]))
        }
        TypeLabel::I2(m) => {
            let theta = core::f64::consts::PI / f64::from(m);
            let lift = |x: f64| S::try_from_f64(x).ok_or(Error::NotCrystallographic);
            let c = lift(num_traits::Float::cos(theta))?;
            let s = lift(num_traits::Float::sin(theta))?;
            let gram = Matrix::from_rows(&[vec![S::one(), -c.clone()], vec![-c.clone(), S::one()]]);
            let ambient = Matrix::from_rows(&[vec![S::one(), -c], vec![S::zero(), s]]);
            (gram, ambient)
        }
    })
}

fn coxeter_from_product(p: f64) -> u32 {
    // 4cos^2(pi/m) for m = 2, 3, 4, 6.
    let table = [(0.0, 2), (1.0, 3), (2.0, 4), (3.0, 6)];
    table
        .iter()
        .find(|(v, _)| (p - v).abs() < 1e-6)
        .map(|&(_, m)| m)
        .unwrap_or(0)
}

impl<S: Scalar> CoxeterDatum<S> {
    /// Builds the datum for a label such as `"A2"`, `"G2"` or `"I2(5)"`.
    ///
    /// Exact (rational) mode rejects non-crystallographic labels.
    pub fn build(label: &str) -> Result<Self> {
        Self::from_label(TypeLabel::parse(label)?)
    }

    pub fn from_label(label: TypeLabel) -> Result<Self> {
        if S::EXACT && !label.is_crystallographic() {
            return Err(Error::NotCrystallographic);
        }
        let (gram, ambient) = realization::<S>(label)?;
        let rank = gram.rows();
        let cartan = Matrix::from_fn(rank, rank, |i, j| q::<S>(2) * gram[(i, j)].clone() / gram[(i, i)].clone());
        let cartan_inv = cartan.inverse().ok_or_else(|| Error::UnsupportedType(label.to_string()))?;
        let coxeter = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        if i == j {
                            1
                        } else if let TypeLabel::I2(m) = label {
                            m
                        } else {
                            coxeter_from_product((cartan[(i, j)].clone() * cartan[(j, i)].clone()).to_f64())
                        }
                    })
                    .collect()
            })
            .collect();
        let mut datum = CoxeterDatum {
            label,
            rank,
            gram,
            cartan,
            cartan_inv,
            coxeter,
            ambient,
            group: Vec::new(),
            positive_roots: Vec::new(),
            longest: 0,
        };
        datum.group = datum.enumerate_group();
        datum.longest = (0..datum.group.len()).max_by_key(|&k| datum.group[k].length()).unwrap_or(0);
        datum.positive_roots = datum.enumerate_positive_roots();
        Ok(datum)
    }

    pub fn label(&self) -> TypeLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Tolerance used for comparisons: zero in exact mode.
    pub fn tolerance(&self) -> f64 {
        if S::EXACT {
            0.0
        } else {
            APPROX_TOLERANCE
        }
    }

    pub fn gram(&self) -> &Matrix<S> {
        &self.gram
    }

    /// The pairing table `alpha_i^vee(alpha_j)` indexed `(i, j)`.
    pub fn cartan(&self) -> &Matrix<S> {
        &self.cartan
    }

    /// Order of `s_i s_j`.
    pub fn coxeter_m(&self, i: usize, j: usize) -> u32 {
        self.coxeter[i][j]
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.rows()
    }

    /// Ambient embedding: column `j` is `alpha_j`.
    pub fn ambient_matrix(&self) -> &Matrix<S> {
        &self.ambient
    }

    pub fn to_ambient(&self, v: &[S]) -> Vec<S> {
        self.ambient.mul_vec(v)
    }

    pub fn check_generator(&self, i: usize) -> Result<()> {
        if i < self.rank {
            Ok(())
        } else {
            Err(Error::BadGenerator { index: i + 1, rank: self.rank })
        }
    }

    pub fn check_vector(&self, v: &[S]) -> Result<()> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.rank, got: v.len() })
        }
    }

    pub fn simple_root(&self, i: usize) -> Vec<S> {
        (0..self.rank).map(|k| if k == i { S::one() } else { S::zero() }).collect()
    }

    /// The simple coroot `alpha_i^vee` as a linear form on root coordinates.
    pub fn coroot(&self, i: usize) -> &[S] {
        self.cartan.row(i)
    }

    /// `alpha_i^vee(v)`.
    pub fn pair(&self, i: usize, v: &[S]) -> S {
        dot(self.cartan.row(i), v)
    }

    /// Euclidean inner product of two vectors in root coordinates.
    pub fn inner(&self, u: &[S], v: &[S]) -> S {
        dot(u, &self.gram.mul_vec(v))
    }

    /// `s_i v = v - alpha_i^vee(v) alpha_i`.
    pub fn reflect(&self, v: &[S], i: usize) -> Vec<S> {
        let c = self.pair(i, v);
        let mut out = v.to_vec();
        out[i] = out[i].clone() - c;
        out
    }

    /// Matrix of `s_i` on root coordinates.
    pub fn reflection_matrix(&self, i: usize) -> Matrix<S> {
        let mut m: Matrix<S> = Matrix::identity(self.rank);
        for k in 0..self.rank {
            m[(i, k)] = m[(i, k)].clone() - self.cartan[(i, k)].clone();
        }
        m
    }

    /// Reflection in an arbitrary positive root.
    pub fn reflect_root(&self, v: &[S], beta: &Root<S>) -> Vec<S> {
        let c = beta.pair(v);
        v.iter().zip(&beta.vector).map(|(x, b)| x.clone() - c.clone() * b.clone()).collect()
    }

    /// Matrix of `s_{i_1} ... s_{i_k}`.
    pub fn word_matrix(&self, word: &WeylWord) -> Result<Matrix<S>> {
        let mut m = Matrix::identity(self.rank);
        for &i in word.letters() {
            self.check_generator(i)?;
            m = m.mul(&self.reflection_matrix(i));
        }
        Ok(m)
    }

    /// Applies `w` to a vector: the rightmost letter acts first.
    pub fn act(&self, word: &WeylWord, v: &[S]) -> Result<Vec<S>> {
        let mut out = v.to_vec();
        for &i in word.letters().iter().rev() {
            self.check_generator(i)?;
            out = self.reflect(&out, i);
        }
        Ok(out)
    }

    fn enumerate_group(&self) -> Vec<WeylElement<S>> {
        let tol = self.tolerance();
        let gens: Vec<Matrix<S>> = (0..self.rank).map(|i| self.reflection_matrix(i)).collect();
        let mut all = vec![WeylElement { word: WeylWord::identity(), matrix: Matrix::identity(self.rank) }];
        let mut level_start = 0;
        loop {
            let level_end = all.len();
            // Level elements are in lexicographic order of their words, so the
            // first word found for each new element is lexicographically minimal.
            for k in level_start..level_end {
                for (i, g) in gens.iter().enumerate() {
                    let m = all[k].matrix.mul(g);
                    if all.iter().any(|e| e.matrix.approx_eq(&m, tol)) {
                        continue;
                    }
                    let mut letters = all[k].word.letters.clone();
                    letters.push(i);
                    all.push(WeylElement { word: WeylWord::new(letters), matrix: m });
                }
            }
            if all.len() == level_end {
                break;
            }
            level_start = level_end;
        }
        all
    }

    fn enumerate_positive_roots(&self) -> Vec<Root<S>> {
        let tol = self.tolerance();
        let mut roots: Vec<Vec<S>> = Vec::new();
        for e in &self.group {
            for i in 0..self.rank {
                let r = e.matrix.column(i);
                let positive = r.iter().all(|x| x.to_f64() >= -1e-9);
                if positive && !roots.iter().any(|s| s.iter().zip(&r).all(|(a, b)| a.approx_eq(b, tol))) {
                    roots.push(r);
                }
            }
        }
        // Order by height, then lexicographically, for stable output.
        roots.sort_by(|a, b| {
            let ha: f64 = a.iter().map(Scalar::to_f64).sum();
            let hb: f64 = b.iter().map(Scalar::to_f64).sum();
            ha.partial_cmp(&hb)
                .unwrap_or(core::cmp::Ordering::Equal)
                .then_with(|| b.partial_cmp(a).unwrap_or(core::cmp::Ordering::Equal))
        });
        roots.into_iter().map(|r| self.root_with_coroot(r)).collect()
    }

    /// Packages a root with its coroot `beta^vee(v) = 2(beta, v)/(beta, beta)`.
    pub fn root_with_coroot(&self, vector: Vec<S>) -> Root<S> {
        let gv = self.gram.mul_vec(&vector);
        let norm = dot(&vector, &gv);
        let coroot = gv.into_iter().map(|x| q::<S>(2) * x / norm.clone()).collect();
        Root { vector, coroot }
    }

    pub fn simple_root_data(&self, i: usize) -> Root<S> {
        Root { vector: self.simple_root(i), coroot: self.coroot(i).to_vec() }
    }

    pub fn positive_roots(&self) -> &[Root<S>] {
        &self.positive_roots
    }

    /// All group elements, by length then lexicographic word.
    pub fn elements(&self) -> &[WeylElement<S>] {
        &self.group
    }

    /// Index of the element represented by a matrix.
    pub fn find_element(&self, m: &Matrix<S>) -> Option<usize> {
        let tol = self.tolerance().max(if S::EXACT { 0.0 } else { 1e-7 });
        self.group.iter().position(|e| e.matrix.approx_eq(m, tol))
    }

    /// The element represented by a (not necessarily reduced) word.
    pub fn element_of(&self, word: &WeylWord) -> Result<&WeylElement<S>> {
        let m = self.word_matrix(word)?;
        let k = self.find_element(&m).ok_or_else(|| Error::InvalidArgument(format!("{word} not found in W")))?;
        Ok(&self.group[k])
    }

    /// Length of the element represented by `word`.
    pub fn length(&self, word: &WeylWord) -> Result<usize> {
        Ok(self.element_of(word)?.length())
    }

    /// `(-1)^{l(w)}`.
    pub fn sign(&self, word: &WeylWord) -> Result<i32> {
        Ok(self.element_of(word)?.sign())
    }

    pub fn is_reduced(&self, word: &WeylWord) -> Result<bool> {
        Ok(self.length(word)? == word.len())
    }

    /// Errors unless `word` is reduced.
    pub fn require_reduced(&self, word: &WeylWord) -> Result<()> {
        if self.is_reduced(word)? {
            Ok(())
        } else {
            Err(Error::NonReducedWord(word.to_string()))
        }
    }

    pub fn longest_element(&self) -> WeylWord {
        self.group[self.longest].word.clone()
    }

    pub fn longest_matrix(&self) -> &Matrix<S> {
        &self.group[self.longest].matrix
    }

    /// All reduced words of the element, by closure under braid moves.
    pub fn reduced_words(&self, word: &WeylWord) -> Result<BTreeSet<WeylWord>> {
        self.require_reduced(word)?;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.clone());
        queue.push_back(word.clone());
        while let Some(w) = queue.pop_front() {
            for next in self.braid_neighbours(&w) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    fn braid_neighbours(&self, w: &WeylWord) -> Vec<WeylWord> {
        let l = w.letters();
        let mut out = Vec::new();
        for p in 0..l.len() {
            for j in 0..self.rank {
                let i = l[p];
                if i == j {
                    continue;
                }
                let m = self.coxeter[i][j] as usize;
                if m == 0 || p + m > l.len() {
                    continue;
                }
                let alternating = (0..m).all(|k| l[p + k] == if k % 2 == 0 { i } else { j });
                if alternating {
                    let mut next = l.to_vec();
                    for k in 0..m {
                        next[p + k] = if k % 2 == 0 { j } else { i };
                    }
                    out.push(WeylWord::new(next));
                }
            }
        }
        out
    }

    /// `h(v) = prod_{beta > 0} beta^vee(v)`.
    pub fn h_function(&self, v: &[S]) -> S {
        self.positive_roots.iter().fold(S::one(), |acc, r| acc * r.pair(v))
    }

    /// Half the sum of the positive roots, in root coordinates.
    pub fn rho_vector(&self) -> Vec<S> {
        let mut s = vec![S::zero(); self.rank];
        for r in &self.positive_roots {
            for (a, b) in s.iter_mut().zip(&r.vector) {
                *a = a.clone() + b.clone();
            }
        }
        s.into_iter().map(|x| x / q::<S>(2)).collect()
    }

    /// Fundamental weight `omega_i` in root coordinates.
    pub fn fundamental_weight(&self, i: usize) -> Vec<S> {
        self.cartan_inv.column(i)
    }

    /// Whether `alpha_i^vee(v) >= 0` for every `i` (within tolerance).
    pub fn is_dominant_vector(&self, v: &[S]) -> bool {
        (0..self.rank).all(|i| self.pair(i, v).to_f64() >= -self.tolerance())
    }
}

impl CoxeterDatum<Rational> {
    /// Weight-basis coordinates of a vector: `(alpha_i^vee(v))_i`.
    pub fn weight_of(&self, v: &[Rational]) -> Weight {
        Weight::new((0..self.rank).map(|i| self.pair(i, v)).collect())
    }

    /// Root coordinates of a weight.
    pub fn weight_vector(&self, w: &Weight) -> Vec<Rational> {
        self.cartan_inv.mul_vec(&w.coeffs)
    }

    pub fn rho(&self) -> Weight {
        self.weight_of(&self.rho_vector())
    }

    /// Weyl dimension formula `h(lambda + rho) / h(rho)`.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u64> {
        if lambda.rank() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: lambda.rank() });
        }
        if !lambda.is_dominant() {
            return Err(Error::NotDominant);
        }
        if !lambda.is_integral() {
            return Err(Error::NotIntegral);
        }
        let rho = self.rho_vector();
        let shifted: Vec<Rational> = self.weight_vector(lambda).iter().zip(&rho).map(|(a, b)| a + b).collect();
        let d = self.h_function(&shifted) / self.h_function(&rho);
        if !Scalar::is_integer(&d) {
            return Err(Error::NotIntegral);
        }
        u64::try_from(d.floor_i64()).map_err(|_| Error::NotIntegral)
    }

    /// Applies a group element (given by its matrix) to a weight.
    pub fn act_on_weight(&self, m: &Matrix<Rational>, w: &Weight) -> Weight {
        self.weight_of(&m.mul_vec(&self.weight_vector(w)))
    }
}

/// A weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    coeffs: Vec<Rational>,
}

impl Weight {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Weight { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Weight { coeffs: c.iter().map(|&x| <Rational as Scalar>::from_i64(x)).collect() }
    }

    pub fn zero(rank: usize) -> Self {
        Weight { coeffs: vec![<Rational as Scalar>::zero(); rank] }
    }

    /// Parses comma-separated rationals such as `"1,0"` or `"1/2,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        s.split(',')
            .map(|x| crate::scalar::parse_rational(x).ok_or_else(|| Error::InvalidArgument(format!("bad weight coefficient '{x}'"))))
            .collect::<Result<Vec<_>>>()
            .map(Weight::new)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.coeffs.iter().all(|c| !Scalar::is_negative(c))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 && !Scalar::is_negative(c) {
                f.write_str("+")?;
            }
            write!(f, "{c}*w{}", k + 1)?;
        }
        Ok(())
    }
}

/// Formats a vector of scalars as `[a, b, ...]`.
pub fn format_vector<S: fmt::Display>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        <Rational as Scalar>::from_i64(n)
    }

    fn a2() -> CoxeterDatum<Rational> {
        CoxeterDatum::build("A2").unwrap()
    }

    #[test]
    fn a2_pairing_table() {
        let d = a2();
        assert_eq!(d.cartan(), &Matrix::from_rows(&[vec![r(2), r(-1)], vec![r(-1), r(2)]]));
        assert_eq!(d.coxeter_m(0, 1), 3);
    }

    #[test]
    fn g2_pairings_multiply_to_three() {
        let d: CoxeterDatum<Rational> = CoxeterDatum::build("G2").unwrap();
        let (a, b) = (d.cartan()[(0, 1)].clone(), d.cartan()[(1, 0)].clone());
        let mut pair = [a.clone(), b.clone()];
        pair.sort();
        assert_eq!(pair, [r(-3), r(-1)]);
        assert_eq!(a * b, r(3));
        let c = libm_cos(core::f64::consts::PI / 6.0);
        assert!((4.0 * c * c - 3.0).abs() < 1e-12);
        assert_eq!(d.coxeter_m(0, 1), 6);
    }

    fn libm_cos(x: f64) -> f64 {
        num_traits::Float::cos(x)
    }

    #[test]
    fn i2_5_is_symmetric() {
        let d: CoxeterDatum<f64> = CoxeterDatum::build("I2(5)").unwrap();
        let want = -2.0 * libm_cos(core::f64::consts::PI / 5.0);
        assert!((d.cartan()[(0, 1)] - want).abs() < 1e-12);
        assert!((d.cartan()[(1, 0)] - want).abs() < 1e-12);
        assert_eq!(d.elements().len(), 10);
        assert_eq!(d.positive_roots().len(), 5);
        assert_eq!(d.longest_element().len(), 5);
        assert!(CoxeterDatum::<Rational>::build("I2(5)").is_err());
    }

    #[test]
    fn unsupported_labels_rejected() {
        for l in ["A4", "E8", "I2(1)", "I2(x)", ""] {
            assert!(CoxeterDatum::<Rational>::build(l).is_err(), "{l}");
        }
    }

    #[test]
    fn reflections() {
        let d = a2();
        assert_eq!(d.reflect(&d.simple_root(0), 0), vec![r(-1), r(0)]);
        assert_eq!(d.reflect(&d.simple_root(1), 0), vec![r(1), r(1)]);
        let v = vec![r(3), r(-7)];
        assert_eq!(d.reflect(&d.reflect(&v, 1), 1), v);
    }

    #[test]
    fn group_orders_and_longest_lengths() {
        for (l, order, npos) in [("A1", 2, 1), ("A1xA1", 4, 2), ("A2", 6, 3), ("A3", 24, 6), ("B2", 8, 4), ("G2", 12, 6)] {
            let d: CoxeterDatum<Rational> = CoxeterDatum::build(l).unwrap();
            assert_eq!(d.elements().len(), order, "{l}");
            assert_eq!(d.positive_roots().len(), npos, "{l}");
            assert_eq!(d.longest_element().len(), npos, "{l}");
        }
        let a1: CoxeterDatum<Rational> = CoxeterDatum::build("A1").unwrap();
        assert_eq!(a1.longest_element(), WeylWord::new(vec![0]));
    }

    #[test]
    fn reduced_word_sets() {
        let d = a2();
        let w0 = d.longest_element();
        let words = d.reduced_words(&w0).unwrap();
        let want: BTreeSet<_> = [WeylWord::new(vec![0, 1, 0]), WeylWord::new(vec![1, 0, 1])].into_iter().collect();
        assert_eq!(words, want);
        let a3: CoxeterDatum<Rational> = CoxeterDatum::build("A3").unwrap();
        assert_eq!(a3.reduced_words(&a3.longest_element()).unwrap().len(), 16);
        assert!(d.reduced_words(&WeylWord::new(vec![0, 0])).is_err());
    }

    #[test]
    fn signs() {
        let d = a2();
        assert_eq!(d.sign(&WeylWord::identity()).unwrap(), 1);
        assert_eq!(d.sign(&WeylWord::new(vec![1])).unwrap(), -1);
        assert_eq!(d.sign(&d.longest_element()).unwrap(), -1);
    }

    #[test]
    fn dimensions() {
        let d = a2();
        assert_eq!(d.weyl_dimension(&Weight::from_ints(&[1, 0])).unwrap(), 3);
        assert_eq!(d.weyl_dimension(&Weight::from_ints(&[1, 1])).unwrap(), 8);
        assert_eq!(d.weyl_dimension(&Weight::from_ints(&[0, 0])).unwrap(), 1);
        assert_eq!(d.weyl_dimension(&Weight::from_ints(&[-1, 0])), Err(Error::NotDominant));
        assert_eq!(d.rho(), Weight::from_ints(&[1, 1]));
        let g2: CoxeterDatum<Rational> = CoxeterDatum::build("G2").unwrap();
        let dims: Vec<u64> = [[1, 0], [0, 1]].iter().map(|c| g2.weyl_dimension(&Weight::from_ints(c)).unwrap()).collect();
        let mut dims_sorted = dims.clone();
        dims_sorted.sort();
        assert_eq!(dims_sorted, vec![7, 14]);
    }

    #[test]
    fn weight_display_and_roundtrip() {
        let d = a2();
        let w = Weight::from_ints(&[2, -1]);
        assert_eq!(w.to_string(), "2*w1-1*w2");
        assert_eq!(d.weight_of(&d.weight_vector(&w)), w);
        assert_eq!(Weight::parse("2,-1").unwrap(), w);
    }
}
