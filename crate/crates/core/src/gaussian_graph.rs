//! Mixed graphs with a topologically ordered DAG part, treks, t-separation and
//! the vanishing ideals of generalized Markov chains.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rank_array::{primary_decomposition, RankArray, Regime};
use crate::schubert::{ideal_spec, Flavor, IdealSpec};

/// Directed edges `i -> j` (with `i < j`) and bidirected edges `i <-> j` on `[m]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct MixedGraph {
    m: usize,
    directed: Vec<(usize, usize)>,
    bidirected: Vec<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawGraph {
    m: usize,
    #[serde(default)]
    directed: Vec<(usize, usize)>,
    #[serde(default)]
    bidirected: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for MixedGraph {
    type Error = Error;
    fn try_from(r: RawGraph) -> Result<Self> {
        MixedGraph::new(r.m, r.directed, r.bidirected)
    }
}

impl MixedGraph {
    /// Builds and validates a graph. Bidirected edges are stored as `(min, max)`.
    pub fn new(
        m: usize,
        directed: impl IntoIterator<Item = (usize, usize)>,
        bidirected: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let directed: BTreeSet<_> = directed.into_iter().collect();
        let bidirected: BTreeSet<_> = bidirected
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        let g = MixedGraph {
            m,
            directed: directed.into_iter().collect(),
            bidirected: bidirected.into_iter().collect(),
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks vertex ranges, self-loops and the ordering `i -> j => i < j`.
    pub fn validate(&self) -> Result<()> {
        let in_range = |v: usize| (1..=self.m).contains(&v);
        for &(i, j) in &self.directed {
            if !in_range(i) || !in_range(j) {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} -> {j} leaves [1, {}]",
                    self.m
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at {i}")));
            }
            if i > j {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} -> {j} violates the vertex ordering"
                )));
            }
        }
        for &(i, j) in &self.bidirected {
            if !in_range(i) || !in_range(j) {
                return Err(Error::InvalidGraph(format!(
                    "edge {i} <-> {j} leaves [1, {}]",
                    self.m
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("bidirected self-loop at {i}")));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn directed(&self) -> &[(usize, usize)] {
        &self.directed
    }

    pub fn bidirected(&self) -> &[(usize, usize)] {
        &self.bidirected
    }

    pub fn has_directed(&self, i: usize, j: usize) -> bool {
        self.directed.binary_search(&(i, j)).is_ok()
    }

    pub fn has_bidirected(&self, i: usize, j: usize) -> bool {
        self.bidirected.binary_search(&(i.min(j), i.max(j))).is_ok()
    }

    fn parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.directed.iter().filter(move |e| e.1 == v).map(|e| e.0)
    }

    /// Vertices with a directed path into `targets`, including the targets.
    pub fn ancestors(&self, targets: &[usize]) -> BTreeSet<usize> {
        self.reach_back(targets, &[])
    }

    /// Vertices with a directed path into `targets` that avoids `blocked`.
    fn reach_back(&self, targets: &[usize], blocked: &[usize]) -> BTreeSet<usize> {
        let mut seen: BTreeSet<usize> = targets
            .iter()
            .copied()
            .filter(|t| !blocked.contains(t))
            .collect();
        let mut stack: Vec<usize> = seen.iter().copied().collect();
        while let Some(v) = stack.pop() {
            for u in self.parents(v) {
                if !blocked.contains(&u) && seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrekTop {
    /// Both paths start at this vertex.
    Vertex(usize),
    /// The left path starts at `.0`, the right at `.1`, joined by `.0 <-> .1`.
    Bidirected(usize, usize),
}

/// A trek: two directed paths, each listed from its source to its end.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Trek {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub top: TrekTop,
}

/// All directed paths ending at `v`, each listed source first.
fn paths_into(
    g: &MixedGraph,
    v: usize,
    memo: &mut HashMap<usize, Vec<Vec<usize>>>,
) -> Vec<Vec<usize>> {
    if let Some(p) = memo.get(&v) {
        return p.clone();
    }
    let mut out = vec![vec![v]];
    let parents: Vec<usize> = g.parents(v).collect();
    for u in parents {
        for mut path in paths_into(g, u, memo) {
            path.push(v);
            out.push(path);
        }
    }
    memo.insert(v, out.clone());
    out
}

/// Every trek from `a1` (left end) to `a2` (right end).
pub fn treks(g: &MixedGraph, a1: usize, a2: usize) -> Vec<Trek> {
    let mut memo = HashMap::new();
    let lefts = paths_into(g, a1, &mut memo);
    let rights = paths_into(g, a2, &mut memo);
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            let (s, t) = (l[0], r[0]);
            let top = if s == t {
                TrekTop::Vertex(s)
            } else if g.has_bidirected(s, t) {
                TrekTop::Bidirected(s, t)
            } else {
                continue;
            };
            out.push(Trek {
                left: l.clone(),
                right: r.clone(),
                top,
            });
        }
    }
    out
}

/// Whether `(C1, C2)` t-separates `A1` and `A2`, by enumerating every trek.
pub fn t_separates(g: &MixedGraph, a1: &[usize], a2: &[usize], c1: &[usize], c2: &[usize]) -> bool {
    a1.iter().all(|&x| {
        a2.iter().all(|&y| {
            treks(g, x, y).iter().all(|t| {
                t.left.iter().any(|v| c1.contains(v)) || t.right.iter().any(|v| c2.contains(v))
            })
        })
    })
}

/// The same test by reachability: an unblocked trek exists iff some top
/// reaches `A1` avoiding `C1` and `A2` avoiding `C2`.
pub fn t_separates_by_reachability(
    g: &MixedGraph,
    a1: &[usize],
    a2: &[usize],
    c1: &[usize],
    c2: &[usize],
) -> bool {
    let left = g.reach_back(a1, c1);
    let right = g.reach_back(a2, c2);
    if left.intersection(&right).next().is_some() {
        return false;
    }
    !g.bidirected.iter().any(|&(x, y)| {
        (left.contains(&x) && right.contains(&y)) || (left.contains(&y) && right.contains(&x))
    })
}

/// Largest `m` accepted by the exhaustive separation search.
pub const TSEP_LIMIT: usize = 12;

/// Least `#C1 + #C2` over t-separating pairs, capped at `min(#A1, #A2)`.
pub fn min_tsep_rank(g: &MixedGraph, a1: &[usize], a2: &[usize]) -> Result<usize> {
    if g.m > TSEP_LIMIT {
        return Err(Error::GuardExceeded {
            what: "exhaustive t-separation search",
            limit: TSEP_LIMIT,
            n: g.m,
        });
    }
    let cap = a1.len().min(a2.len());
    // separators may be taken among ancestors of the sets they block
    let an1: Vec<usize> = g.ancestors(a1).into_iter().collect();
    let an2: Vec<usize> = g.ancestors(a2).into_iter().collect();
    for total in 0..cap {
        for k1 in 0..=total.min(an1.len()) {
            let k2 = total - k1;
            if k2 > an2.len() {
                continue;
            }
            for c1 in subsets(&an1, k1) {
                for c2 in subsets(&an2, k2) {
                    if t_separates_by_reachability(g, a1, a2, &c1, &c2) {
                        return Ok(total);
                    }
                }
            }
        }
    }
    Ok(cap)
}

/// All `k`-element subsets of `items`, in lexicographic order.
fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn go(
        items: &[usize],
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for idx in start..items.len() {
            if items.len() - idx < k - current.len() {
                break;
            }
            current.push(items[idx]);
            go(items, k, idx + 1, current, out);
            current.pop();
        }
    }
    go(items, k, 0, &mut current, &mut out);
    out
}

/// Conditions (2) and (3): edges `i -> j` and `i <-> j` force every edge
/// `k -> l`, respectively `k <-> l`, with `i <= k < l <= j`.
pub fn is_generalized_markov_chain(g: &MixedGraph) -> bool {
    let closed = |edges: &[(usize, usize)], has: &dyn Fn(usize, usize) -> bool| {
        edges
            .iter()
            .all(|&(i, j)| (i..j).all(|k| (k + 1..=j).all(|l| has(k, l))))
    };
    closed(&g.directed, &|k, l| g.has_directed(k, l))
        && closed(&g.bidirected, &|k, l| g.has_bidirected(k, l))
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingIdeal {
    /// `r(i, j) = min_tsep_rank([1, i], [j, m])`.
    pub rank_array: RankArray,
    pub permutation: Permutation,
    pub ideal: IdealSpec,
}

/// The vanishing ideal of a generalized Markov chain, as `J_sym(w)`.
pub fn vanishing_ideal(g: &MixedGraph) -> Result<VanishingIdeal> {
    if !is_generalized_markov_chain(g) {
        return Err(Error::NotMarkovChain);
    }
    let rank_array = t_separation_array(g)?;
    let d = primary_decomposition(&rank_array, false)?;
    let [w] = &d.components[..] else {
        return Err(Error::InvariantBreach(format!(
            "t-separation array of a generalized Markov chain has {} components",
            d.components.len()
        )));
    };
    Ok(VanishingIdeal {
        ideal: ideal_spec(Flavor::Sym, w),
        permutation: w.clone(),
        rank_array,
    })
}

/// The North-East array of t-separation ranks of `g`, for any graph.
pub fn t_separation_array(g: &MixedGraph) -> Result<RankArray> {
    let m = g.m;
    let mut rows = vec![vec![0; m]; m];
    for i in 1..=m {
        let a1: Vec<usize> = (1..=i).collect();
        for j in 1..=m {
            let a2: Vec<usize> = (j..=m).collect();
            rows[i - 1][j - 1] = min_tsep_rank(g, &a1, &a2)? as i32;
        }
    }
    RankArray::new(rows, Regime::Square)
}
