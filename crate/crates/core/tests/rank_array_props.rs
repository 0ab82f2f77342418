mod common;

use common::{brute_minimal_upper_bounds, perm, set, type_c_square};
use proptest::prelude::*;
use schubert_core::perm::{bruhat_leq, bruhat_leq_oracle, minimal_upper_bounds};
use schubert_core::rank_array::{
    ideal_leq, primary_decomposition, primary_decomposition_with, DecomposeOptions, SplitOrder,
};
use schubert_core::{Permutation, RankArray};

fn sum_of(ws: &[Permutation]) -> RankArray {
    ws[1..]
        .iter()
        .fold(RankArray::of_permutation(&ws[0]), |acc, w| {
            acc.sum(&RankArray::of_permutation(w)).unwrap()
        })
}

#[test]
fn extraction_round_trip() {
    for n in 0..=6 {
        for w in Permutation::all(n) {
            assert_eq!(RankArray::of_permutation(&w).extract_permutation(), Some(w));
        }
    }
}

#[test]
fn dominance_is_reversed_bruhat() {
    for n in 1..=4 {
        let all: Vec<_> = Permutation::all(n).collect();
        for v in &all {
            for w in &all {
                let dom = RankArray::of_permutation(v).dominates(&RankArray::of_permutation(w));
                assert_eq!(dom, bruhat_leq_oracle(v, w).unwrap(), "{v} {w}");
            }
        }
    }
}

#[test]
fn full_pairs_decompose_to_minimal_upper_bounds() {
    let all: Vec<_> = Permutation::all(4).collect();
    for v in &all {
        for w in &all {
            let pair = [v.clone(), w.clone()];
            let d = primary_decomposition(&sum_of(&pair), false).unwrap();
            assert_eq!(
                d.components,
                minimal_upper_bounds(&pair, None).unwrap(),
                "{v} {w}"
            );
        }
    }
}

#[test]
fn type_c_pairs_decompose_within_the_square_interval() {
    for n in 1..=3 {
        let cands = type_c_square(n);
        for v in &cands {
            for w in &cands {
                let pair = [v.clone(), w.clone()];
                let d = primary_decomposition(&sum_of(&pair), true).unwrap();
                assert_eq!(
                    set(&d.components),
                    brute_minimal_upper_bounds(&pair, &cands),
                    "{v} {w}"
                );
            }
        }
    }
}

fn type_c_pair(n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    let cands = type_c_square(n);
    let k = cands.len();
    (0..k, 0..k).prop_map(move |(a, b)| (cands[a].clone(), cands[b].clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn type_c_pairs_sampled((v, w) in (4usize..=6).prop_flat_map(type_c_pair)) {
        let cands = type_c_square(v.size() / 2);
        let pair = [v, w];
        let d = primary_decomposition(&sum_of(&pair), true).unwrap();
        prop_assert_eq!(set(&d.components), brute_minimal_upper_bounds(&pair, &cands));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn components_dominate_input_and_are_incomparable(ws in (2usize..=6).prop_flat_map(|n| proptest::collection::vec(perm(n), 1..=3))) {
        let r = sum_of(&ws);
        let d = primary_decomposition(&r, false).unwrap();
        prop_assert!(!d.components.is_empty());
        for c in &d.components {
            prop_assert!(ideal_leq(&r, &RankArray::of_permutation(c)).unwrap());
            for w in &ws {
                prop_assert!(bruhat_leq(w, c).unwrap());
            }
            for other in &d.components {
                if c != other {
                    prop_assert!(!bruhat_leq(c, other).unwrap());
                }
            }
        }
    }

    #[test]
    fn split_order_does_not_matter(ws in (2usize..=6).prop_flat_map(|n| proptest::collection::vec(perm(n), 2..=3))) {
        let r = sum_of(&ws);
        let base = primary_decomposition(&r, false).unwrap().components;
        for order in [SplitOrder::ReverseRowMajor, SplitOrder::ColumnMajor] {
            let opts = DecomposeOptions { order, ..DecomposeOptions::default() };
            prop_assert_eq!(&primary_decomposition_with(&r, &opts).unwrap().components, &base);
        }
    }

    #[test]
    fn split_order_does_not_matter_type_c((v, w) in (2usize..=4).prop_flat_map(type_c_pair)) {
        let r = sum_of(&[v, w]);
        let base = primary_decomposition(&r, true).unwrap().components;
        for order in [SplitOrder::ReverseRowMajor, SplitOrder::ColumnMajor] {
            let opts = DecomposeOptions { type_c: true, order, ..DecomposeOptions::default() };
            prop_assert_eq!(&primary_decomposition_with(&r, &opts).unwrap().components, &base);
        }
    }

    #[test]
    fn canonical_forms_are_fixpoints(ws in (2usize..=6).prop_flat_map(|n| proptest::collection::vec(perm(n), 1..=3))) {
        let c = sum_of(&ws).canonicalize();
        prop_assert!(c.is_canonical());
        prop_assert_eq!(c.canonicalize(), c);
    }
}
