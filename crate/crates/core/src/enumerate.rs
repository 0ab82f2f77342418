//! Stratum counts: Stirling-type closed forms, median Genocchi numbers via the
//! Seidel triangle, brute-force rook-board counters, and the chain-family
//! model `G(n)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::schubert::Flavor;

pub const BRUTE_LIMIT: usize = 4;
pub const BRUTE_SYM_LIMIT: usize = 5;
pub const GN_LIMIT: usize = 5;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

/// Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::Parameter(format!("S({n},{k}) needs k <= n")));
    }
    // row[j] = S(m, j)
    let mut row = vec![BigUint::zero(); n + 1];
    row[0] = BigUint::one();
    for m in 1..=n {
        for j in (1..=m).rev() {
            row[j] = &row[j] * j + &row[j - 1];
        }
        row[0] = BigUint::zero();
    }
    Ok(row[k].clone())
}

fn stirling_terms(n: usize) -> impl Iterator<Item = BigUint> {
    (1..=n + 1).map(move |k| factorial(k - 1) * stirling2(n + 1, k).expect("k <= n + 1"))
}

/// Number of strata of the full matrix space.
pub fn x_count(n: usize) -> BigUint {
    stirling_terms(n).map(|t| &t * &t).sum()
}

/// Number of strata of the symmetric matrix space.
pub fn sigma_count(n: usize) -> BigUint {
    stirling_terms(n).sum()
}

/// Number of strata of the upper triangular matrix space, `s_{2n,1}`.
pub fn y_count(n: usize) -> BigUint {
    seidel(2 * n).get(2 * n, 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeidelTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl SeidelTriangle {
    pub fn row_len(k: usize) -> usize {
        (k + 3) / 2
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, k: usize) -> &[BigUint] {
        &self.rows[k]
    }

    /// `s_{k,i}`, zero outside the stored range.
    pub fn get(&self, k: usize, i: usize) -> BigUint {
        if i == 0 {
            return BigUint::zero();
        }
        self.rows
            .get(k)
            .and_then(|r| r.get(i - 1))
            .cloned()
            .unwrap_or_default()
    }

    /// Checks both recurrences at every stored cell.
    pub fn satisfies_recurrences(&self) -> bool {
        (1..self.rows.len()).all(|k| {
            (1..=Self::row_len(k)).all(|i| {
                let expected = if k % 2 == 1 {
                    self.get(k - 1, i) + self.get(k, i - 1)
                } else {
                    self.get(k - 1, i) + self.get(k, i + 1)
                };
                self.get(k, i) == expected
            })
        })
    }
}

/// The Seidel triangle through row `k_max`, seeded with `s_{0,1} = 1`.
pub fn seidel(k_max: usize) -> SeidelTriangle {
    let mut t = SeidelTriangle {
        rows: vec![vec![BigUint::one()]],
    };
    for k in 1..=k_max {
        let len = SeidelTriangle::row_len(k);
        t.rows.push(vec![BigUint::zero(); len]);
        if k % 2 == 1 {
            for i in 1..=len {
                t.rows[k][i - 1] = t.get(k - 1, i) + t.get(k, i - 1);
            }
        } else {
            for i in (1..=len).rev() {
                t.rows[k][i - 1] = t.get(k - 1, i) + t.get(k, i + 1);
            }
        }
    }
    t
}

/// Whether a 1 of `w in S_2n` at position `i` with value `v` is allowed.
fn square_cell(n: usize, i: usize, v: usize) -> bool {
    i.abs_diff(v) <= n
}

/// The board of the interval `[w_up, w_square]`.
fn up_cell(n: usize, i: usize, v: usize) -> bool {
    square_cell(n, i, v) && i + v <= 3 * n + 1
}

fn count_placements(size: usize, allowed: &dyn Fn(usize, usize) -> bool) -> u64 {
    fn go(i: usize, size: usize, used: u32, allowed: &dyn Fn(usize, usize) -> bool) -> u64 {
        if i > size {
            return 1;
        }
        (1..=size)
            .filter(|&v| used & (1 << v) == 0 && allowed(i, v))
            .map(|v| go(i + 1, size, used | (1 << v), allowed))
            .sum()
    }
    go(1, size, 0, allowed)
}

fn count_type_c(n: usize) -> u64 {
    fn go(i: usize, n: usize, used: u32) -> u64 {
        if i > n {
            return 1;
        }
        let s = 2 * n + 1;
        (1..s)
            .filter(|&v| used & (1 << v) == 0 && square_cell(n, i, v))
            .map(|v| go(i + 1, n, used | (1 << v) | (1 << (s - v))))
            .sum()
    }
    go(1, n, 0)
}

/// Direct count of the permutations indexing the strata of the `flavor`
/// matrix space of size `n`.
pub fn brute_count(flavor: Flavor, n: usize) -> Result<BigUint> {
    let limit = match flavor {
        Flavor::Sym => BRUTE_SYM_LIMIT,
        Flavor::Full | Flavor::Up => BRUTE_LIMIT,
    };
    if n > limit {
        return Err(Error::GuardExceeded {
            what: "brute-force count",
            limit,
            n,
        });
    }
    let count = match flavor {
        Flavor::Full => count_placements(2 * n, &|i, v| square_cell(n, i, v)),
        Flavor::Up => count_placements(2 * n, &|i, v| up_cell(n, i, v)),
        Flavor::Sym => count_type_c(n),
    };
    Ok(count.into())
}

/// A chain of `P(n)`: unbarred elements `unbarred` below barred elements
/// `barred`, both as bitmasks with bit `i` for element `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chain {
    pub unbarred: u32,
    pub barred: u32,
}

/// All chains of `P(n)` containing both barred and unbarred elements.
pub fn chains(n: usize) -> Vec<Chain> {
    let mut out = Vec::new();
    for unbarred in 1u32..1 << (n + 1) {
        if unbarred & 1 != 0 {
            continue;
        }
        let top = 31 - unbarred.leading_zeros();
        for barred in 1u32..1 << (n + 1) {
            if barred & 1 == 0 && barred.trailing_zeros() >= top {
                out.push(Chain { unbarred, barred });
            }
        }
    }
    out
}

/// Sizes of `G(n)` grouped by the set of unbarred elements covered by chains.
pub fn gn_profile(n: usize) -> Result<BTreeMap<u32, BigUint>> {
    if n > GN_LIMIT {
        return Err(Error::GuardExceeded {
            what: "G(n) enumeration",
            limit: GN_LIMIT,
            n,
        });
    }
    fn go(chains: &[Chain], from: usize, used: Chain, k: usize, out: &mut BTreeMap<u32, BigUint>) {
        // each set of k disjoint chains yields k! ordered lists
        *out.entry(used.unbarred).or_default() += factorial(k);
        for (idx, c) in chains.iter().enumerate().skip(from) {
            if c.unbarred & used.unbarred == 0 && c.barred & used.barred == 0 {
                let next = Chain {
                    unbarred: used.unbarred | c.unbarred,
                    barred: used.barred | c.barred,
                };
                go(chains, idx + 1, next, k + 1, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    let empty = Chain {
        unbarred: 0,
        barred: 0,
    };
    go(&chains(n), 0, empty, 0, &mut out);
    Ok(out)
}

pub fn gn_count(n: usize) -> Result<BigUint> {
    Ok(gn_profile(n)?.into_values().sum())
}

fn prefix_mask(i: usize) -> u32 {
    // unbarred elements 1..i-1
    ((1u32 << i) - 1) & !1
}

/// Elements of `G(n)` whose chains cover `1, ..., i-1`.
pub fn gn_covering(n: usize, i: usize) -> Result<BigUint> {
    let need = prefix_mask(i);
    Ok(gn_profile(n)?
        .into_iter()
        .filter(|(m, _)| m & need == need)
        .map(|(_, c)| c)
        .sum())
}

/// Elements of `G(n)` whose chains cover `1, ..., i-1` but not `i`
/// (the last condition dropped when `i > n`).
pub fn gn_covering_exactly(n: usize, i: usize) -> Result<BigUint> {
    let need = prefix_mask(i);
    Ok(gn_profile(n)?
        .into_iter()
        .filter(|(m, _)| m & need == need && (i > n || m & (1 << i) == 0))
        .map(|(_, c)| c)
        .sum())
}
