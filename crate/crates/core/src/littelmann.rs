//! Littelmann modules generated by dominant integral paths, their
//! characters, tensor-product decompositions by the path LR rule, and
//! conditional endpoint laws of concatenated walks.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::duality::involution_i;
use crate::error::{Error, Result};
use crate::pathcore::Path;
use crate::pitman::{is_dominant, is_integral, lower_f, pitman_w0, raise_e};
use crate::rootsys::{CoxeterDatum, Weight};
use crate::scalar::{Rational, Scalar};

/// Default cap on the number of enumerated concatenations.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Raise,
    Lower,
}

/// A crystal edge `to = e_i from` or `to = f_i from`; indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrystalEdge {
    pub from: usize,
    pub to: usize,
    pub index: usize,
    pub kind: EdgeKind,
}

/// The finite set of paths generated from a dominant integral path.
#[derive(Clone, Debug)]
pub struct LittelmannModule {
    paths: Vec<Path<Rational>>,
    lookup: BTreeMap<Path<Rational>, usize>,
    edges: Vec<CrystalEdge>,
}

impl LittelmannModule {
    /// The generating dominant path, always at index 0.
    pub fn highest(&self) -> &Path<Rational> {
        &self.paths[0]
    }

    pub fn paths(&self) -> &[Path<Rational>] {
        &self.paths
    }

    pub fn edges(&self) -> &[CrystalEdge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn index_of(&self, path: &Path<Rational>) -> Option<usize> {
        self.lookup.get(path).copied()
    }

    pub fn contains(&self, path: &Path<Rational>) -> bool {
        self.lookup.contains_key(path)
    }
}

fn check_seed(d: &CoxeterDatum<Rational>, pi: &Path<Rational>) -> Result<()> {
    if pi.dim() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: pi.dim() });
    }
    if !is_dominant(d, pi) {
        return Err(Error::NotDominant);
    }
    if !is_integral(d, pi) {
        return Err(Error::NotIntegral);
    }
    Ok(())
}

/// Straight highest path `t -> t lambda / T` on `[0, T]`.
pub fn straight_highest_path(d: &CoxeterDatum<Rational>, lambda: &Weight, horizon: Rational) -> Result<Path<Rational>> {
    if lambda.rank() != d.rank() {
        return Err(Error::DimensionMismatch { expected: d.rank(), got: lambda.rank() });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant);
    }
    if !lambda.is_integral() {
        return Err(Error::NotIntegral);
    }
    Ok(Path::straight(&d.weight_vector(lambda), horizon))
}

/// Breadth-first closure of `pi` under the lowering operators.
pub fn generate_module(d: &CoxeterDatum<Rational>, pi: &Path<Rational>) -> Result<LittelmannModule> {
    check_seed(d, pi)?;
    let mut paths = alloc::vec![pi.clone()];
    let mut lookup = BTreeMap::new();
    lookup.insert(pi.clone(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for i in 0..d.rank() {
            let Some(next) = lower_f(d, &paths[k], i)? else { continue };
            let to = match lookup.get(&next) {
                Some(&j) => j,
                None => {
                    let j = paths.len();
                    lookup.insert(next.clone(), j);
                    paths.push(next);
                    queue.push_back(j);
                    j
                }
            };
            edges.push(CrystalEdge { from: k, to, index: i, kind: EdgeKind::Lower });
            edges.push(CrystalEdge { from: to, to: k, index: i, kind: EdgeKind::Raise });
        }
    }
    edges.sort();
    Ok(LittelmannModule { paths, lookup, edges })
}

/// Checks that every non-null `e_i`, `f_i` image of a member stays in the module.
pub fn is_stable(d: &CoxeterDatum<Rational>, module: &LittelmannModule) -> Result<bool> {
    for p in module.paths() {
        for i in 0..d.rank() {
            for image in [raise_e(d, p, i)?, lower_f(d, p, i)?].into_iter().flatten() {
                if !module.contains(&image) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Multiplicities `m_mu` of the weights of a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset {
    counts: BTreeMap<Weight, u64>,
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, w: Weight, mult: u64) {
        if mult > 0 {
            *self.counts.entry(w).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.counts.iter()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `m_mu = m_{w mu}` for every group element.
    pub fn is_w_invariant(&self, d: &CoxeterDatum<Rational>) -> bool {
        d.elements()
            .iter()
            .all(|e| self.counts.iter().all(|(w, &m)| self.multiplicity(&d.act_on_weight(&e.matrix, w)) == m))
    }
}

/// Endpoint multiset of a module.
pub fn character_of_module(d: &CoxeterDatum<Rational>, module: &LittelmannModule) -> WeightMultiset {
    let mut ch = WeightMultiset::new();
    for p in module.paths() {
        ch.insert(d.weight_of(p.endpoint()), 1);
    }
    ch
}

/// `nu_omega`: the character normalised to a probability measure.
pub fn nu_omega(d: &CoxeterDatum<Rational>, highest: &Path<Rational>) -> Result<BTreeMap<Weight, Rational>> {
    let module = generate_module(d, highest)?;
    let ch = character_of_module(d, &module);
    let total = Rational::from_i64(ch.total() as i64);
    Ok(ch.iter().map(|(w, &m)| (w.clone(), Rational::from_i64(m as i64) / total.clone())).collect())
}

/// Multiplicities `M^lambda` of irreducible summands.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorDecomposition {
    multiplicities: BTreeMap<Weight, u64>,
}

impl TensorDecomposition {
    pub fn multiplicity(&self, lambda: &Weight) -> u64 {
        self.multiplicities.get(lambda).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.multiplicities.iter()
    }

    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    /// `sum_lambda M^lambda dim lambda`.
    pub fn total_dimension(&self, d: &CoxeterDatum<Rational>) -> Result<u64> {
        self.multiplicities.iter().try_fold(0u64, |acc, (w, &m)| Ok(acc + m * d.weyl_dimension(w)?))
    }
}

/// `LR(pi, eta)` together with its endpoint counts.
#[derive(Clone, Debug)]
pub struct LrDecomposition {
    pub concatenations: Vec<Path<Rational>>,
    pub decomposition: TensorDecomposition,
}

/// `LR(pi, eta) = { pi * mu : mu in B eta, pi * mu dominant }`.
pub fn lr_decompose(d: &CoxeterDatum<Rational>, pi: &Path<Rational>, eta: &Path<Rational>) -> Result<LrDecomposition> {
    check_seed(d, pi)?;
    let module = generate_module(d, eta)?;
    let mut concatenations = Vec::new();
    let mut decomposition = TensorDecomposition::default();
    for mu in module.paths() {
        let c = pi.concat_littelmann(mu)?;
        if is_dominant(d, &c) {
            *decomposition.multiplicities.entry(d.weight_of(c.endpoint())).or_insert(0) += 1;
            concatenations.push(c);
        }
    }
    concatenations.sort();
    Ok(LrDecomposition { concatenations, decomposition })
}

/// Outcome of comparing `I(LR(pi, eta))` with `LR(I(eta), I(pi))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrSymmetryReport {
    pub size: usize,
    /// The image of `LR(pi, eta)` is exactly `LR(I(eta), I(pi))`.
    pub image_is_target: bool,
    /// `I` keeps every endpoint.
    pub endpoints_preserved: bool,
    /// Applying `I` twice gives back every element.
    pub involutive: bool,
}

impl LrSymmetryReport {
    pub fn holds(&self) -> bool {
        self.image_is_target && self.endpoints_preserved && self.involutive
    }
}

/// Checks that `I` is an endpoint-preserving bijection `LR(pi, eta) -> LR(I(eta), I(pi))`.
pub fn lr_symmetry(d: &CoxeterDatum<Rational>, pi: &Path<Rational>, eta: &Path<Rational>) -> Result<LrSymmetryReport> {
    let source = lr_decompose(d, pi, eta)?;
    let target = lr_decompose(d, &involution_i(d, eta)?, &involution_i(d, pi)?)?;
    let mut image = BTreeSet::new();
    let mut endpoints_preserved = true;
    let mut involutive = true;
    for c in &source.concatenations {
        let ic = involution_i(d, c)?;
        endpoints_preserved &= ic.endpoint() == c.endpoint();
        involutive &= involution_i(d, &ic)? == *c;
        image.insert(ic);
    }
    let target_set: BTreeSet<Path<Rational>> = target.concatenations.into_iter().collect();
    Ok(LrSymmetryReport {
        size: source.concatenations.len(),
        image_is_target: image.len() == source.concatenations.len() && image == target_set,
        endpoints_preserved,
        involutive,
    })
}

/// `|B|^n`, or `BudgetExceeded` when it passes `budget`.
pub fn check_budget(size: usize, n: usize, budget: u64) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(size as u64).filter(|&t| t <= budget).ok_or(Error::BudgetExceeded(budget))?;
    }
    Ok(total)
}

/// All shifted concatenations `eta_1 * ... * eta_n` of module members, in
/// lexicographic order of member indices.
pub fn concatenation_power(module: &LittelmannModule, n: usize, budget: u64) -> Result<Vec<Path<Rational>>> {
    check_budget(module.len(), n, budget)?;
    if n == 0 {
        return Ok(alloc::vec![Path::zero(module.highest().dim(), Rational::from_i64(1))]);
    }
    let mut level: Vec<Path<Rational>> = module.paths().to_vec();
    for _ in 1..n {
        let mut next = Vec::with_capacity(level.len() * module.len());
        for prefix in &level {
            for p in module.paths() {
                next.push(prefix.concat_shifted(p)?);
            }
        }
        level = next;
    }
    Ok(level)
}

/// Law of `Z(n)` given `P_{w0} Z = eta` on `[0, n]`, by exhaustive enumeration
/// of `B(pi_omega)^{*n}`.
pub fn conditional_endpoint_law(
    d: &CoxeterDatum<Rational>,
    omega_path: &Path<Rational>,
    eta: &Path<Rational>,
    n: usize,
    budget: u64,
) -> Result<BTreeMap<Weight, Rational>> {
    let module = generate_module(d, omega_path)?;
    let mut counts = WeightMultiset::new();
    for gamma in concatenation_power(&module, n, budget)? {
        if gamma.horizon() != eta.horizon() {
            return Err(Error::HorizonMismatch);
        }
        if pitman_w0(d, &gamma)? == *eta {
            counts.insert(d.weight_of(gamma.endpoint()), 1);
        }
    }
    if counts.is_empty() {
        return Err(Error::InvalidArgument(alloc::format!("no concatenation has Pitman image {eta:?}")));
    }
    let total = Rational::from_i64(counts.total() as i64);
    Ok(counts.iter().map(|(w, &m)| (w.clone(), Rational::from_i64(m as i64) / total.clone())).collect())
}

/// Groups `B(pi_omega)^{*n}` by `P_{w0}` image; the values are fiber sizes.
pub fn fiber_sizes(d: &CoxeterDatum<Rational>, omega_path: &Path<Rational>, n: usize, budget: u64) -> Result<BTreeMap<Path<Rational>, u64>> {
    let module = generate_module(d, omega_path)?;
    let mut out = BTreeMap::new();
    for gamma in concatenation_power(&module, n, budget)? {
        *out.entry(pitman_w0(d, &gamma)?).or_insert(0) += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitman::pitman_word;
    use alloc::vec;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn datum(label: &str) -> CoxeterDatum<Rational> {
        CoxeterDatum::build(label).unwrap()
    }

    fn highest(d: &CoxeterDatum<Rational>, w: &[i64]) -> Path<Rational> {
        straight_highest_path(d, &Weight::from_ints(w), r(1)).unwrap()
    }

    #[test]
    fn a2_standard_module() {
        let d = datum("A2");
        let m = generate_module(&d, &highest(&d, &[1, 0])).unwrap();
        assert_eq!(m.len(), 3);
        let ends: BTreeSet<Vec<Rational>> = m.paths().iter().map(|p| p.endpoint().to_vec()).collect();
        let w1 = d.fundamental_weight(0);
        let a = |c: [i64; 2]| -> Vec<Rational> { vec![w1[0].clone() - r(c[0]), w1[1].clone() - r(c[1])] };
        let expected: BTreeSet<Vec<Rational>> = [a([0, 0]), a([1, 0]), a([1, 1])].into_iter().collect();
        assert_eq!(ends, expected);
        assert!(is_stable(&d, &m).unwrap());
        let nu = nu_omega(&d, m.highest()).unwrap();
        assert!(nu.values().all(|p| *p == Rational::from_ratio(1, 3)));
    }

    #[test]
    fn trivial_and_rank_one_modules() {
        let d = datum("A2");
        let m = generate_module(&d, &highest(&d, &[0, 0])).unwrap();
        assert_eq!(m.len(), 1);
        let nu = nu_omega(&d, m.highest()).unwrap();
        assert_eq!(nu.get(&Weight::zero(2)), Some(&r(1)));
        let a1 = datum("A1");
        for n in 0..6 {
            assert_eq!(generate_module(&a1, &highest(&a1, &[n])).unwrap().len() as i64, n + 1);
        }
    }

    #[test]
    fn seeds_must_be_dominant_and_integral() {
        let d = datum("A2");
        let bad = Path::straight(&[r(-1), r(0)], r(1));
        assert_eq!(generate_module(&d, &bad).unwrap_err(), Error::NotDominant);
        let frac = Path::straight(&[Rational::from_ratio(1, 2), Rational::from_ratio(1, 2)], r(1));
        assert_eq!(generate_module(&d, &frac).unwrap_err(), Error::NotIntegral);
    }

    #[test]
    fn adjoint_character_and_invariance() {
        let d = datum("A2");
        let m = generate_module(&d, &highest(&d, &[1, 1])).unwrap();
        assert_eq!(m.len(), 8);
        let ch = character_of_module(&d, &m);
        assert_eq!(ch.multiplicity(&Weight::zero(2)), 2);
        assert_eq!(ch.len(), 7);
        assert!(ch.is_w_invariant(&d));
        for p in m.paths() {
            assert_eq!(pitman_word(&d, p, &d.longest_element()).unwrap(), *m.highest());
        }
    }

    #[test]
    fn module_sizes_match_weyl_dimension() {
        for (label, weights) in [
            ("A2", vec![[2, 0], [0, 2], [2, 1], [3, 0]]),
            ("B2", vec![[1, 0], [0, 1], [1, 1], [2, 0]]),
            ("G2", vec![[1, 0], [0, 1]]),
        ] {
            let d = datum(label);
            for w in weights {
                let m = generate_module(&d, &highest(&d, &w)).unwrap();
                assert_eq!(m.len() as u64, d.weyl_dimension(&Weight::from_ints(&w)).unwrap(), "{label} {w:?}");
                assert!(character_of_module(&d, &m).is_w_invariant(&d));
            }
        }
    }

    #[test]
    fn tensor_examples() {
        let d = datum("A2");
        let lr = lr_decompose(&d, &highest(&d, &[1, 0]), &highest(&d, &[1, 0])).unwrap();
        assert_eq!(lr.decomposition.len(), 2);
        assert_eq!(lr.decomposition.multiplicity(&Weight::from_ints(&[2, 0])), 1);
        assert_eq!(lr.decomposition.multiplicity(&Weight::from_ints(&[0, 1])), 1);
        let ad = highest(&d, &[1, 1]);
        let lr = lr_decompose(&d, &ad, &ad).unwrap();
        let expect = [([2, 2], 1), ([3, 0], 1), ([0, 3], 1), ([1, 1], 2), ([0, 0], 1)];
        for (w, m) in expect {
            assert_eq!(lr.decomposition.multiplicity(&Weight::from_ints(&w)), m);
        }
        assert_eq!(lr.decomposition.total_dimension(&d).unwrap(), 64);
        let triv = highest(&d, &[0, 0]);
        let lr = lr_decompose(&d, &ad, &triv).unwrap();
        assert_eq!(lr.decomposition.len(), 1);
        assert_eq!(lr.decomposition.multiplicity(&Weight::from_ints(&[1, 1])), 1);
    }

    #[test]
    fn lr_symmetry_examples() {
        let d = datum("A2");
        let w1 = highest(&d, &[1, 0]);
        let w2 = highest(&d, &[0, 1]);
        let ad = highest(&d, &[1, 1]);
        for (p, q) in [(&w1, &w2), (&ad, &ad), (&w1, &ad), (&highest(&d, &[0, 0]), &ad)] {
            let rep = lr_symmetry(&d, p, q).unwrap();
            assert!(rep.holds(), "{rep:?}");
        }
        let a = lr_decompose(&d, &w1, &w2).unwrap().decomposition;
        let b = lr_decompose(&d, &involution_i(&d, &w2).unwrap(), &involution_i(&d, &w1).unwrap()).unwrap().decomposition;
        assert_eq!(a, b);
    }

    #[test]
    fn conditional_laws() {
        let d = datum("A2");
        let w1 = highest(&d, &[1, 0]);
        let fibers = fiber_sizes(&d, &w1, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(fibers.values().sum::<u64>(), 9);
        let top = w1.concat_shifted(&w1).unwrap();
        assert_eq!(fibers.get(&top), Some(&6));
        let law = conditional_endpoint_law(&d, &w1, &top, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(law.len(), 6);
        assert!(law.values().all(|p| *p == Rational::from_ratio(1, 6)));
        let m = generate_module(&d, &highest(&d, &[2, 0])).unwrap();
        let ch = character_of_module(&d, &m);
        for (w, p) in &law {
            assert_eq!(*p, Rational::from_i64(ch.multiplicity(w) as i64) / r(6));
        }
        for n in 1..=4 {
            let f = fiber_sizes(&d, &w1, n, DEFAULT_BUDGET).unwrap();
            assert_eq!(f.values().sum::<u64>(), 3u64.pow(n as u32));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let d = datum("A2");
        let w1 = highest(&d, &[1, 0]);
        assert_eq!(fiber_sizes(&d, &w1, 3, 26).unwrap_err(), Error::BudgetExceeded(26));
        assert_eq!(check_budget(3, 4, 81).unwrap(), 81);
    }
}
