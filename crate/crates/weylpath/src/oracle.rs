//! Characters from Freudenthal's multiplicity formula and tensor products
//! by multiplying characters and stripping highest weights. Independent of
//! the path model, for cross-checking it.

use std::collections::BTreeMap;

use weylpath_core::{CoxeterDatum, Rational, Scalar, Weight};

pub type Character = BTreeMap<Weight, u64>;

/// Weight multiplicities of the irreducible module with highest weight `lambda`.
pub fn freudenthal(d: &CoxeterDatum<Rational>, lambda: &Weight) -> Character {
    let lv = d.weight_vector(lambda);
    let low = d.longest_matrix().mul_vec(&lv);
    let span: Vec<i64> = lv.iter().zip(&low).map(|(a, b)| (a - b).floor_i64()).collect();
    let rho = d.rho_vector();
    let shifted_norm = |v: &[Rational]| {
        let s: Vec<Rational> = v.iter().zip(&rho).map(|(a, b)| a + b).collect();
        d.inner(&s, &s)
    };
    let top = shifted_norm(&lv);
    let mut offsets: Vec<Vec<i64>> = vec![vec![]];
    for &s in &span {
        offsets = offsets.into_iter().flat_map(|o| (0..=s).map(move |k| [o.clone(), vec![k]].concat())).collect();
    }
    offsets.sort_by_key(|o| o.iter().sum::<i64>());
    let mut mult: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for o in offsets {
        let mu: Vec<Rational> = lv.iter().zip(&o).map(|(a, &k)| a - Rational::from_i64(k)).collect();
        if o.iter().all(|&k| k == 0) {
            mult.insert(mu, Rational::one());
            continue;
        }
        let denom = top.clone() - shifted_norm(&mu);
        if denom.is_zero() {
            continue;
        }
        let mut num = Rational::zero();
        for beta in d.positive_roots() {
            for k in 1.. {
                let nu: Vec<Rational> = mu.iter().zip(&beta.vector).map(|(a, b)| a + Rational::from_i64(k) * b).collect();
                if nu.iter().zip(&lv).any(|(a, b)| a > b) {
                    break;
                }
                if let Some(m) = mult.get(&nu) {
                    num = num + Rational::from_i64(2) * m.clone() * d.inner(&nu, &beta.vector);
                }
            }
        }
        let m = num / denom;
        if !m.is_zero() {
            mult.insert(mu, m);
        }
    }
    mult.into_iter().map(|(v, m)| (d.weight_of(&v), m.floor_i64() as u64)).collect()
}

/// Multiplicities of the irreducible summands of `V(a) (x) V(b)`.
pub fn tensor_product(d: &CoxeterDatum<Rational>, a: &Weight, b: &Weight) -> BTreeMap<Weight, u64> {
    let (ca, cb) = (freudenthal(d, a), freudenthal(d, b));
    let mut product: BTreeMap<Weight, i64> = BTreeMap::new();
    for (x, &m) in &ca {
        for (y, &n) in &cb {
            *product.entry(x.add(y)).or_insert(0) += (m * n) as i64;
        }
    }
    let height = |v: &Weight| d.weight_vector(v).iter().fold(Rational::zero(), |s, x| s + x);
    let mut out = BTreeMap::new();
    loop {
        product.retain(|_, m| *m != 0);
        let Some(top) = product.keys().filter(|v| v.is_dominant()).max_by_key(|v| height(v)).cloned() else {
            break;
        };
        let m = product[&top];
        out.insert(top.clone(), m.max(0) as u64);
        for (v, k) in freudenthal(d, &top) {
            *product.entry(v).or_insert(0) -= m * k as i64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use weylpath_core::littelmann::{character_of_module, generate_module, lr_decompose, straight_highest_path};

    fn w(c: &[i64]) -> Weight {
        Weight::from_ints(c)
    }

    fn straight(d: &CoxeterDatum<Rational>, l: &Weight) -> weylpath_core::Path<Rational> {
        straight_highest_path(d, l, Rational::one()).unwrap()
    }

    #[test]
    fn adjoint_of_a2() {
        let d = CoxeterDatum::build("A2").unwrap();
        let adj = freudenthal(&d, &w(&[1, 1]));
        assert_eq!(adj.len(), 7);
        assert_eq!(adj[&w(&[0, 0])], 2);
        assert_eq!(adj.values().sum::<u64>(), 8);
        let sq = tensor_product(&d, &w(&[1, 0]), &w(&[1, 0]));
        assert_eq!(sq, BTreeMap::from([(w(&[2, 0]), 1), (w(&[0, 1]), 1)]));
    }

    #[test]
    fn path_model_characters_agree() {
        for (label, weights) in [
            ("A1", vec![vec![3]]),
            ("A2", vec![vec![1, 0], vec![1, 1], vec![2, 1], vec![0, 3]]),
            ("A3", vec![vec![1, 0, 1], vec![0, 1, 0]]),
            ("B2", vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
            ("G2", vec![vec![1, 0], vec![0, 1]]),
        ] {
            let d = CoxeterDatum::build(label).unwrap();
            for c in weights {
                let lambda = w(&c);
                let module = generate_module(&d, &straight(&d, &lambda)).unwrap();
                let got: Character = character_of_module(&d, &module).iter().map(|(k, &m)| (k.clone(), m)).collect();
                assert_eq!(got, freudenthal(&d, &lambda), "{label} {c:?}");
                assert_eq!(got.values().sum::<u64>(), d.weyl_dimension(&lambda).unwrap());
            }
        }
    }

    #[test]
    fn path_model_tensor_products_agree() {
        for (label, a, b) in [
            ("A2", vec![1, 1], vec![1, 1]),
            ("A2", vec![2, 0], vec![0, 1]),
            ("B2", vec![1, 0], vec![0, 1]),
            ("B2", vec![0, 1], vec![1, 1]),
            ("G2", vec![1, 0], vec![1, 0]),
            ("A3", vec![1, 0, 0], vec![0, 1, 0]),
        ] {
            let d = CoxeterDatum::build(label).unwrap();
            let (wa, wb) = (w(&a), w(&b));
            let lr = lr_decompose(&d, &straight(&d, &wa), &straight(&d, &wb)).unwrap();
            let got: BTreeMap<Weight, u64> = lr.decomposition.iter().map(|(k, &m)| (k.clone(), m)).collect();
            assert_eq!(got, tensor_product(&d, &wa, &wb), "{label} {a:?} x {b:?}");
        }
    }
}
