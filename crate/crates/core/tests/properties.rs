use proptest::prelude::*;

use coxeter_bruhat::classify::{fingerprint, poset_isomorphic, round_trips};
use coxeter_bruhat::invariants::{triple, vx, vx_direct};
use coxeter_bruhat::pair::CoxeterPair;
use coxeter_bruhat::poset::bruhat_order_with_limit;
use coxeter_bruhat::{
    bruhat_order, bw_graph, bwgraph_isomorphic, enumerate_quotient, CoxeterMatrix, ParabolicSubset, PointedPoset,
    WeylType, DEFAULT_CAP,
};

fn small_type() -> impl Strategy<Value = WeylType> {
    prop::sample::select(WeylType::all_up_to(4))
}

/// A type, a subset mask and a permutation of the generators.
fn relabelled() -> impl Strategy<Value = (WeylType, u64, Vec<usize>)> {
    small_type().prop_flat_map(|t| {
        let n = t.rank();
        (
            Just(t),
            0u64..1 << n,
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
        )
    })
}

fn permuted_matrix(m: &CoxeterMatrix, perm: &[usize]) -> CoxeterMatrix {
    let n = m.rank();
    let mut rows = vec![vec![m.bond(0, 0); n]; n];
    for i in 0..n {
        for j in 0..n {
            rows[perm[i]][perm[j]] = m.bond(i, j);
        }
    }
    CoxeterMatrix::new(rows).unwrap()
}

fn same_order(p: &PointedPoset, q: &PointedPoset) -> bool {
    p.len() == q.len() && (0..p.len()).all(|a| (0..p.len()).all(|b| p.leq(a, b) == q.leq(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_preserves_graph_and_poset((t, mask, perm) in relabelled()) {
        let m = CoxeterMatrix::weyl(t);
        let j = ParabolicSubset::from_mask(&m, mask);
        let pm = permuted_matrix(&m, &perm);
        let pj = j.permuted(&perm);
        prop_assert!(bwgraph_isomorphic(&bw_graph(&m, &j), &bw_graph(&pm, &pj)).is_some());

        let a = CoxeterPair::new(m, j).unwrap();
        let b = CoxeterPair::new(pm, pj).unwrap();
        prop_assert_eq!(a.symmetry_key(), b.symmetry_key());
        let (p, q) = (a.poset(None).unwrap(), b.poset(None).unwrap());
        prop_assert_eq!(fingerprint(&p), fingerprint(&q));
        prop_assert!(poset_isomorphic(&p, &q).is_some());
        prop_assert_eq!(triple(&p).multisets(), triple(&q).multisets());
    }

    #[test]
    fn json_round_trip(t in small_type(), mask in 0u64..16) {
        let m = CoxeterMatrix::weyl(t);
        let j = ParabolicSubset::from_mask(&m, mask & ((1 << t.rank()) - 1));
        let p = CoxeterPair::new(m, j).unwrap().poset(None).unwrap();
        let back = PointedPoset::from_json(&p.to_json().to_string()).unwrap();
        prop_assert_eq!(back.ranks(), p.ranks());
        prop_assert_eq!(back.covers(), p.covers());
        prop_assert!(same_order(&p, &back));
    }

    #[test]
    fn dense_and_on_demand_orders_agree(t in small_type(), mask in 0u64..16) {
        let m = CoxeterMatrix::weyl(t);
        let j = ParabolicSubset::from_mask(&m, mask & ((1 << t.rank()) - 1));
        let q = enumerate_quotient::<i64>(&m, &j, None).unwrap();
        let dense = bruhat_order(&q);
        let lazy = bruhat_order_with_limit(&q, 0);
        prop_assert!(!lazy.is_materialised() || q.len() <= 1);
        prop_assert_eq!(dense.covers(), lazy.covers());
        prop_assert!(same_order(&dense, &lazy));
    }

    #[test]
    fn special_vertices_by_recursion_and_definition(t in small_type(), mask in 0u64..16) {
        let m = CoxeterMatrix::weyl(t);
        let j = ParabolicSubset::from_mask(&m, mask & ((1 << t.rank()) - 1));
        let p = CoxeterPair::new(m, j).unwrap().poset(None).unwrap();
        prop_assert_eq!(vx(&p), vx_direct(&p));
    }

    #[test]
    fn integer_and_rational_engines_agree(t in small_type(), mask in 0u64..16) {
        let m = CoxeterMatrix::weyl(t);
        let j = ParabolicSubset::from_mask(&m, mask & ((1 << t.rank()) - 1));
        let a = enumerate_quotient::<i64>(&m, &j, None).unwrap();
        let b = enumerate_quotient::<num_rational::Rational64>(&m, &j, None).unwrap();
        prop_assert_eq!(a.len(), b.len());
        prop_assert_eq!(a.length_histogram(), b.length_histogram());
    }
}

#[test]
fn type_a_pairs_round_trip() {
    for n in 1..=5 {
        let t: WeylType = format!("A{n}").parse().unwrap();
        for mask in 0u64..1 << n {
            let m = CoxeterMatrix::weyl(t);
            let pair = CoxeterPair::new(m.clone(), ParabolicSubset::from_mask(&m, mask)).unwrap();
            assert!(round_trips(&pair, DEFAULT_CAP).unwrap(), "{pair}");
        }
    }
}
