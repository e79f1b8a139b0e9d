//! Words over `{1..d}` as paths in the `A_{d-1}` chamber, RSK by column
//! insertion, and the comparison of shape sequences with Pitman images.
//!
//! A partition `(l_1, ..., l_d)` is identified with the sum-zero vector
//! `sum l_k e_k`, whose fundamental-weight coordinates are `l_k - l_{k+1}`.
//! For `d = 3`, the shape `(2, 1)` becomes `omega_1 + omega_2`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::duality::involution_i;
use crate::error::{Error, Result};
use crate::pathcore::Path;
use crate::pitman::pitman_w0;
use crate::rootsys::{CoxeterDatum, TypeLabel, Weight};
use crate::scalar::{Rational, Scalar};

/// A tableau stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn column(&self, c: usize) -> Vec<usize> {
        self.rows.iter().take_while(|r| r.len() > c).map(|r| r[c]).collect()
    }

    /// Rows weakly increase and columns strictly increase.
    pub fn is_semistandard(&self) -> bool {
        let rows_ok = self.rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        let width = self.rows.first().map_or(0, Vec::len);
        rows_ok && (0..width).all(|c| self.column(c).windows(2).all(|w| w[0] < w[1]))
    }

    /// Semistandard with entries exactly `1..=size`.
    pub fn is_standard(&self) -> bool {
        let mut all: Vec<usize> = self.rows.iter().flatten().copied().collect();
        all.sort_unstable();
        self.is_semistandard() && all.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    fn place(&mut self, row: usize, col: usize, v: usize) {
        if row == self.rows.len() {
            self.rows.push(Vec::new());
        }
        debug_assert_eq!(self.rows[row].len(), col);
        self.rows[row].push(v);
    }
}

/// Output of RSK: insertion tableau, recording tableau and the shapes of
/// `Q(1), ..., Q(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RskResult {
    pub p: Tableau,
    pub q: Tableau,
    pub shapes: Vec<Vec<usize>>,
}

/// Column insertion of `x` into `t`; returns the (row, column) of the new box.
fn column_insert(t: &mut Tableau, mut x: usize) -> (usize, usize) {
    let mut c = 0;
    loop {
        let col = t.column(c);
        match col.iter().position(|&y| y >= x) {
            Some(r) => {
                let bumped = t.rows[r][c];
                t.rows[r][c] = x;
                x = bumped;
                c += 1;
            }
            None => {
                let r = col.len();
                t.place(r, c, x);
                return (r, c);
            }
        }
    }
}

/// RSK with column insertion.
pub fn rsk(word: &[usize]) -> RskResult {
    let mut p = Tableau::default();
    let mut q = Tableau::default();
    let mut shapes = Vec::with_capacity(word.len());
    for (k, &x) in word.iter().enumerate() {
        let (r, c) = column_insert(&mut p, x);
        q.place(r, c, k + 1);
        shapes.push(q.shape());
    }
    RskResult { p, q, shapes }
}

fn check_word(word: &[usize], d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("alphabet size {d} must be at least 2")));
    }
    if let Some(&v) = word.iter().find(|&&v| v == 0 || v > d) {
        return Err(Error::OutOfRange(format!("letter {v} not in 1..={d}")));
    }
    if word.is_empty() {
        return Err(Error::MalformedPath("empty word".into()));
    }
    Ok(())
}

/// Root system `A_{d-1}`.
pub fn datum_for(d: usize) -> Result<CoxeterDatum<Rational>> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("alphabet size {d} must be at least 2")));
    }
    CoxeterDatum::from_label(TypeLabel::A(d - 1))
}

/// Root coordinates of the projection of `e_v`, namely `omega_v - omega_{v-1}`.
pub fn letter_vector(dat: &CoxeterDatum<Rational>, v: usize) -> Vec<Rational> {
    let n = dat.rank();
    let mut out = vec![Rational::zero(); n];
    if v <= n {
        for (o, w) in out.iter_mut().zip(dat.fundamental_weight(v - 1)) {
            *o = o.clone() + w;
        }
    }
    if v >= 2 {
        for (o, w) in out.iter_mut().zip(dat.fundamental_weight(v - 2)) {
            *o = o.clone() - w;
        }
    }
    out
}

/// Root coordinates of the sum-zero projection of a partition (padded with zeros).
pub fn partition_vector(dat: &CoxeterDatum<Rational>, shape: &[usize]) -> Vec<Rational> {
    let n = dat.rank();
    let part = |k: usize| shape.get(k).copied().unwrap_or(0) as i64;
    let w = Weight::new((0..n).map(|k| Rational::from_i64(part(k) - part(k + 1))).collect());
    dat.weight_vector(&w)
}

/// Shifted concatenation of unit segments `t e_{v_k}`.
pub fn word_to_path(word: &[usize], d: usize) -> Result<Path<Rational>> {
    check_word(word, d)?;
    let dat = datum_for(d)?;
    let steps: Vec<Vec<Rational>> = word.iter().map(|&v| letter_vector(&dat, v)).collect();
    Path::from_steps(&steps)
}

/// `P_{w0}` of the word path at integer times equals the RSK shape sequence.
pub fn shape_path_equals_pitman(word: &[usize], d: usize) -> Result<bool> {
    let dat = datum_for(d)?;
    let p = pitman_w0(&dat, &word_to_path(word, d)?)?;
    let shapes = rsk(word).shapes;
    for (k, shape) in shapes.iter().enumerate() {
        if shape.len() > d {
            return Ok(false);
        }
        if p.evaluate(&Rational::from_i64(k as i64 + 1))? != partition_vector(&dat, shape) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The word `(v_n^*, ..., v_1^*)` with `v^* = d + 1 - v`.
pub fn starred_reverse(word: &[usize], d: usize) -> Vec<usize> {
    word.iter().rev().map(|&v| d + 1 - v).collect()
}

/// `I(word path) = P_{w0}(path of the starred reversed word)` at integer times.
pub fn schutzenberger_check(word: &[usize], d: usize) -> Result<bool> {
    let dat = datum_for(d)?;
    let lhs = involution_i(&dat, &word_to_path(word, d)?)?;
    let rhs = pitman_w0(&dat, &word_to_path(&starred_reverse(word, d), d)?)?;
    for k in 0..=word.len() {
        let t = Rational::from_i64(k as i64);
        if lhs.evaluate(&t)? != rhs.evaluate(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All words of length `len` over `{1..d}`, in lexicographic order.
pub fn all_words(d: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out.into_iter().flat_map(|w| (1..=d).map(move |v| [w.as_slice(), &[v]].concat())).collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitman::is_dominant;

    fn shapes(word: &[usize]) -> Vec<Vec<usize>> {
        rsk(word).shapes
    }

    #[test]
    fn column_insertion_examples() {
        assert_eq!(shapes(&[1, 1, 1]), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(shapes(&[2, 1]), vec![vec![1], vec![2]]);
        assert_eq!(shapes(&[1, 2]), vec![vec![1], vec![1, 1]]);
        let r = rsk(&[2, 1, 3, 1]);
        assert!(r.p.is_semistandard());
        assert!(r.q.is_standard());
        assert_eq!(r.p.shape(), r.q.shape());
    }

    #[test]
    fn shape_sequences_grow_by_one_box() {
        for w in all_words(3, 5) {
            let r = rsk(&w);
            for (k, s) in r.shapes.iter().enumerate() {
                assert_eq!(s.iter().sum::<usize>(), k + 1);
                assert!(s.windows(2).all(|p| p[0] >= p[1]));
                if k > 0 {
                    let prev = &r.shapes[k - 1];
                    assert!(prev.iter().enumerate().all(|(i, &x)| s[i] >= x));
                }
            }
            assert_eq!(r.p.shape(), r.q.shape());
            assert!(r.p.is_semistandard() && r.q.is_standard());
        }
    }

    #[test]
    fn word_paths() {
        let dat = datum_for(3).unwrap();
        let p = word_to_path(&[1], 3).unwrap();
        assert_eq!(p, Path::straight(&dat.fundamental_weight(0), Rational::from_i64(1)));
        let p = word_to_path(&[1, 2, 3], 3).unwrap();
        assert!(p.endpoint().iter().all(Scalar::is_zero));
        let p = word_to_path(&[2, 1], 3).unwrap();
        assert_eq!(p.endpoint(), &dat.fundamental_weight(1)[..]);
        assert!(!is_dominant(&dat, &p));
        assert!(word_to_path(&[4], 3).is_err());
        assert!(word_to_path(&[0], 3).is_err());
    }

    #[test]
    fn shapes_match_pitman_exhaustively() {
        for d in 2..=3 {
            for len in 1..=5 {
                for w in all_words(d, len) {
                    assert!(shape_path_equals_pitman(&w, d).unwrap(), "{w:?}");
                }
            }
        }
    }

    #[test]
    fn schutzenberger_exhaustively() {
        for len in 1..=5 {
            for w in all_words(2, len) {
                assert!(schutzenberger_check(&w, 2).unwrap(), "{w:?}");
            }
        }
        for w in all_words(3, 3) {
            assert!(schutzenberger_check(&w, 3).unwrap(), "{w:?}");
        }
        assert_eq!(starred_reverse(&[1, 1], 2), vec![2, 2]);
    }

    #[test]
    fn dominant_words_are_fixed() {
        let dat = datum_for(3).unwrap();
        for w in [vec![1, 1, 2], vec![1, 2, 3], vec![1, 2, 1, 3]] {
            let p = word_to_path(&w, 3).unwrap();
            assert!(is_dominant(&dat, &p));
            assert_eq!(pitman_w0(&dat, &p).unwrap(), p);
        }
    }
}
