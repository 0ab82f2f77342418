//! Workloads shared by the benchmarks.

use schubert_core::Permutation;

/// `(s_i, s_{i+1})`, whose sum has two components.
pub fn adjacent_pair(n: usize, i: usize) -> [Permutation; 2] {
    [
        Permutation::simple_transposition(n, i).expect("valid generator"),
        Permutation::simple_transposition(n, i + 1).expect("valid generator"),
    ]
}

/// The path `1 -> 2 -> ... -> m` with every skip edge `i -> i+2`.
pub fn banded_chain(m: usize) -> schubert_core::MixedGraph {
    let directed = (1..m)
        .map(|i| (i, i + 1))
        .chain((1..m.saturating_sub(1)).map(|i| (i, i + 2)));
    schubert_core::MixedGraph::new(m, directed, []).expect("acyclic by construction")
}
