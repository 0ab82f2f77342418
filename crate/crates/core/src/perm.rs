//! Permutations in one-line notation, Bruhat order and pattern containment.
//!
//! Every interface speaks 1-indexed one-line notation: `w.at(i)` is `w(i)`
//! for `1 <= i <= n`. Products compose as functions, `(u * v)(i) = u(v(i))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rank_array::RankArray;

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line notation.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &e in &entries {
            if e == 0 || e > n {
                return Err(Error::MalformedPermutation(format!(
                    "entry {e} out of range 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[e - 1], true) {
                return Err(Error::MalformedPermutation(format!("duplicate entry {e}")));
            }
        }
        Ok(Permutation { entries })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n).collect(),
        }
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            entries: (1..=n).rev().collect(),
        }
    }

    /// `(n+1) ... (2n) 1 ... n` in `S_2n`.
    pub fn square_word(n: usize) -> Self {
        Permutation {
            entries: (n + 1..=2 * n).chain(1..=n).collect(),
        }
    }

    /// `1 ... n (2n) ... (n+1)` in `S_2n`.
    pub fn up_word(n: usize) -> Self {
        Permutation {
            entries: (1..=n).chain((n + 1..=2 * n).rev()).collect(),
        }
    }

    /// The adjacent transposition `s_i = (i, i+1)` in `S_n`.
    pub fn simple_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::MalformedPermutation(format!(
                "no simple transposition s_{i} in S_{n}"
            )));
        }
        let mut entries: Vec<usize> = (1..=n).collect();
        entries.swap(i - 1, i);
        Ok(Permutation { entries })
    }

    /// The product `s_{i_1} s_{i_2} ... s_{i_k}`.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Self> {
        let mut w = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::MalformedPermutation(format!(
                    "generator s_{i} out of range for S_{n}"
                )));
            }
            // right multiplication by s_i swaps positions i and i+1
            w.entries.swap(i - 1, i);
        }
        Ok(w)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `w(i)` for 1-indexed `i`.
    pub fn at(&self, i: usize) -> usize {
        self.entries[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, &e)| e == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.size()];
        for (k, &e) in self.entries.iter().enumerate() {
            inv[e - 1] = k + 1;
        }
        Permutation { entries: inv }
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        check_sizes(self, other)?;
        Ok(Permutation {
            entries: other.entries.iter().map(|&e| self.entries[e - 1]).collect(),
        })
    }

    /// `w0 * w`: the one-line notation with every value `v` replaced by `n + 1 - v`.
    pub fn longest_times(&self) -> Self {
        let n = self.size();
        Permutation {
            entries: self.entries.iter().map(|&e| n + 1 - e).collect(),
        }
    }

    /// `w0 * w * w0`.
    pub fn conjugate_by_longest(&self) -> Self {
        let n = self.size();
        Permutation {
            entries: self.entries.iter().rev().map(|&e| n + 1 - e).collect(),
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let e = &self.entries;
        let mut count = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Membership in the type C subgroup `C_n` of `S_2n`: `a_i + a_{2n+1-i} = 2n+1`.
    pub fn is_type_c(&self) -> bool {
        let s = self.size();
        s.is_multiple_of(2)
            && self
                .entries
                .iter()
                .zip(self.entries.iter().rev())
                .all(|(a, b)| a + b == s + 1)
    }

    /// Length in the hyperoctahedral group for elements of `C_n`.
    pub fn type_c_length(&self) -> Result<usize> {
        if !self.is_type_c() {
            return Err(Error::MalformedPermutation(format!("{self} is not in C_n")));
        }
        let n = self.size() / 2;
        let negatives = self.entries[..n].iter().filter(|&&e| e > n).count();
        Ok((self.length() + negatives) / 2)
    }

    /// All permutations of `[n]` in lexicographic order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some(Permutation::identity(n)),
        }
    }

    /// Whether `|w(i) - i| <= n` for every `i`, i.e. membership in `[1, w_square]`.
    pub fn in_square_interval(&self) -> Result<bool> {
        let s = self.size();
        if !s.is_multiple_of(2) {
            return Err(Error::OddSize(s));
        }
        let n = s / 2;
        Ok(self
            .entries
            .iter()
            .enumerate()
            .all(|(k, &e)| (e as isize - (k + 1) as isize).unsigned_abs() <= n))
    }

    /// Comma separated one-line notation, independent of size.
    pub fn to_comma_string(&self) -> String {
        self.entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.entries
    }
}

/// Compact digit form for `n <= 9`, comma separated otherwise.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.size() <= 9 {
            for e in &self.entries {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.to_comma_string())
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_one_line(text)
    }
}

/// Parses comma separated one-line notation, or a digit string when `n <= 9`.
pub fn parse_one_line(text: &str) -> Result<Permutation> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::MalformedPermutation("empty input".into()));
    }
    let entries = if text.contains(',') {
        text.split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::MalformedPermutation(format!("bad entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        text.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::MalformedPermutation(format!("bad digit `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?
    };
    Permutation::new(entries)
}

pub struct AllPermutations {
    next: Option<Permutation>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut e = current.entries.clone();
        // standard next-permutation step
        let n = e.len();
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && e[i - 1] >= e[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while e[j] <= e[i - 1] {
                    j -= 1;
                }
                e.swap(i - 1, j);
                e[i..].reverse();
                self.next = Some(Permutation { entries: e });
            }
        }
        Some(current)
    }
}

fn check_sizes(v: &Permutation, w: &Permutation) -> Result<()> {
    if v.size() != w.size() {
        return Err(Error::SizeMismatch {
            expected: v.size(),
            found: w.size(),
        });
    }
    Ok(())
}

/// Bruhat comparison `v <= w`, decided by entrywise dominance `R(v) >= R(w)`
/// of North-East rank arrays.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool> {
    check_sizes(v, w)?;
    Ok(RankArray::of_permutation(v).dominates(&RankArray::of_permutation(w)))
}

/// Largest `n` accepted by the transitive-closure oracle.
pub const ORACLE_LIMIT: usize = 8;

/// Bruhat comparison by breadth-first closure of the relation `u < u t`
/// (`t` a transposition with `l(u t) > l(u)`). Independent of rank arrays.
pub fn bruhat_leq_oracle(v: &Permutation, w: &Permutation) -> Result<bool> {
    check_sizes(v, w)?;
    let n = v.size();
    if n > ORACLE_LIMIT {
        return Err(Error::GuardExceeded {
            what: "Bruhat closure oracle",
            limit: ORACLE_LIMIT,
            n,
        });
    }
    Ok(bruhat_up_set(v, w.length()).contains(w))
}

/// Every `u >= v` with `l(u) <= max_length`, by closure over length-increasing
/// transpositions.
pub fn bruhat_up_set(v: &Permutation, max_length: usize) -> HashSet<Permutation> {
    let n = v.size();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(v.clone());
    queue.push_back((v.clone(), v.length()));
    while let Some((u, len)) = queue.pop_front() {
        if len >= max_length {
            continue;
        }
        for a in 0..n {
            for b in a + 1..n {
                if u.entries[a] < u.entries[b] {
                    let mut next = u.entries.clone();
                    next.swap(a, b);
                    let next = Permutation { entries: next };
                    let next_len = next.length();
                    if next_len <= max_length && seen.insert(next.clone()) {
                        queue.push_back((next, next_len));
                    }
                }
            }
        }
    }
    seen
}

/// Largest `n` scanned exhaustively by [`minimal_upper_bounds`].
pub const SCAN_LIMIT: usize = 9;

/// Bruhat-minimal elements of `{u : u >= w for all w in ws, restrict(u)}`,
/// found by an exhaustive scan of `S_n`. Sorted lexicographically.
pub fn minimal_upper_bounds(
    ws: &[Permutation],
    restrict: Option<&dyn Fn(&Permutation) -> bool>,
) -> Result<Vec<Permutation>> {
    let Some(first) = ws.first() else {
        return Ok(Vec::new());
    };
    let n = first.size();
    for w in ws {
        check_sizes(first, w)?;
    }
    if n > SCAN_LIMIT {
        return Err(Error::GuardExceeded {
            what: "exhaustive upper-bound scan",
            limit: SCAN_LIMIT,
            n,
        });
    }
    let bounds: Vec<RankArray> = ws.iter().map(RankArray::of_permutation).collect();
    let candidates: Vec<(Permutation, RankArray)> = Permutation::all(n)
        .filter(|u| restrict.is_none_or(|f| f(u)))
        .map(|u| {
            let r = RankArray::of_permutation(&u);
            (u, r)
        })
        .filter(|(_, r)| bounds.iter().all(|b| b.dominates(r)))
        .collect();
    Ok(minimal_by_rank(candidates))
}

/// Keeps the Bruhat-minimal entries (entrywise-maximal rank arrays).
pub(crate) fn minimal_by_rank(mut candidates: Vec<(Permutation, RankArray)>) -> Vec<Permutation> {
    candidates.sort_by_key(|(u, _)| u.length());
    let mut kept: Vec<(Permutation, RankArray)> = Vec::new();
    for (u, r) in candidates {
        if !kept.iter().any(|(_, k)| k.dominates(&r)) {
            kept.push((u, r));
        }
    }
    let mut out: Vec<Permutation> = kept.into_iter().map(|(u, _)| u).collect();
    out.sort();
    out
}

/// Whether some subsequence of `w` is order-isomorphic to `pattern`.
pub fn contains_pattern(w: &Permutation, pattern: &Permutation) -> bool {
    let k = pattern.size();
    if k > w.size() {
        return false;
    }
    let mut chosen = Vec::with_capacity(k);
    extend_pattern(&w.entries, &pattern.entries, 0, &mut chosen)
}

fn extend_pattern(w: &[usize], p: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
    let t = chosen.len();
    if t == p.len() {
        return true;
    }
    // leave room for the remaining pattern letters
    for pos in start..=w.len() - (p.len() - t) {
        let value = w[pos];
        let consistent = chosen
            .iter()
            .zip(p)
            .all(|(&prev, &pp)| (prev < value) == (pp < p[t]));
        if consistent {
            chosen.push(value);
            if extend_pattern(w, p, pos + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// A reduced word `(i_1, ..., i_k)` with `w = s_{i_1} ... s_{i_k}` and `k = l(w)`.
///
/// Bubbles the largest misplaced value rightwards; each swap removes one
/// inversion, and the swaps read in reverse give the word.
pub fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut e = w.entries.clone();
    let mut swaps = Vec::with_capacity(w.length());
    for value in (1..=e.len()).rev() {
        let mut pos = e.iter().position(|&x| x == value).expect("value present");
        while pos + 1 < value {
            e.swap(pos, pos + 1);
            swaps.push(pos + 1);
            pos += 1;
        }
    }
    swaps.reverse();
    swaps
}
