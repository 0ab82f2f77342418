#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use schubert_core::perm::bruhat_leq;
use schubert_core::{MixedGraph, Permutation};

pub fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|e| Permutation::new(e).unwrap())
}

pub fn perm_in(sizes: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Permutation> {
    sizes.prop_flat_map(perm)
}

pub fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

pub fn set(perms: &[Permutation]) -> BTreeSet<Permutation> {
    perms.iter().cloned().collect()
}

/// Elements of `C_n` satisfying `|w(i) - i| <= n`, by backtracking.
pub fn type_c_square(n: usize) -> Vec<Permutation> {
    fn go(
        i: usize,
        n: usize,
        e: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Permutation>,
    ) {
        let s = 2 * n + 1;
        if i > n {
            let mut full = e.clone();
            full.extend(e.iter().rev().map(|&v| s - v));
            out.push(Permutation::new(full).unwrap());
            return;
        }
        for v in 1..s {
            if !used[v] && v.abs_diff(i) <= n {
                used[v] = true;
                used[s - v] = true;
                e.push(v);
                go(i + 1, n, e, used, out);
                e.pop();
                used[v] = false;
                used[s - v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut vec![false; 2 * n + 1], &mut out);
    out
}

/// Minimal elements of `candidates` lying above every element of `ws`.
pub fn brute_minimal_upper_bounds(
    ws: &[Permutation],
    candidates: &[Permutation],
) -> BTreeSet<Permutation> {
    let above: Vec<&Permutation> = candidates
        .iter()
        .filter(|u| ws.iter().all(|w| bruhat_leq(w, u).unwrap()))
        .collect();
    above
        .iter()
        .filter(|u| !above.iter().any(|v| v != *u && bruhat_leq(v, u).unwrap()))
        .map(|u| (*u).clone())
        .collect()
}

fn subsets_of_pairs(m: usize) -> Vec<(usize, usize)> {
    (1..=m)
        .flat_map(|i| (i + 1..=m).map(move |j| (i, j)))
        .collect()
}

/// Random mixed graph on `[m]` with `i -> j` only for `i < j`.
pub fn mixed_graph(max_m: usize) -> impl Strategy<Value = MixedGraph> {
    (2..=max_m).prop_flat_map(|m| {
        let pairs = subsets_of_pairs(m);
        let k = pairs.len();
        (
            Just(m),
            proptest::collection::vec(any::<bool>(), k),
            proptest::collection::vec(0..4u8, k),
        )
            .prop_map(move |(m, dir, bi)| {
                let d: Vec<_> = pairs
                    .iter()
                    .zip(&dir)
                    .filter(|(_, &x)| x)
                    .map(|(e, _)| *e)
                    .collect();
                let b: Vec<_> = pairs
                    .iter()
                    .zip(&bi)
                    .filter(|(_, &x)| x == 0)
                    .map(|(e, _)| *e)
                    .collect();
                MixedGraph::new(m, d, b).unwrap()
            })
    })
}

/// Closes an edge set under `i <= k < l <= j`.
fn interval_closure(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out = BTreeSet::new();
    for &(i, j) in edges {
        for k in i..j {
            for l in k + 1..=j {
                out.insert((k, l));
            }
        }
    }
    out.into_iter().collect()
}

/// Random generalized Markov chain on `[m]`.
pub fn markov_chain(max_m: usize) -> impl Strategy<Value = MixedGraph> {
    mixed_graph(max_m).prop_map(|g| {
        MixedGraph::new(
            g.m(),
            interval_closure(g.directed()),
            interval_closure(g.bidirected()),
        )
        .unwrap()
    })
}

/// Nonempty random subset of `[m]`.
pub fn subset(m: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(any::<bool>(), m)
        .prop_map(|bits| {
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| i + 1)
                .collect::<Vec<_>>()
        })
        .prop_filter("nonempty", |s: &Vec<usize>| !s.is_empty())
}
