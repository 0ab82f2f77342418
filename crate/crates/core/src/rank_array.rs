//! North-East rank arrays and the decomposition calculus on them.
//!
//! `R(w)[i][j]` counts the 1s of `P(w)` weakly above row `i` and weakly right of
//! column `j`, where `P(w)` has a 1 at `(i, n + 1 - w(i))`. Out-of-range reads
//! follow the conventions `R[0][j] = 0` and `R[i][s+1] = 0`.
//!
//! Two regimes are supported. A [`Regime::Square`] array is an `n x n` array
//! whose first column and last row are pinned to `i` and `n + 1 - j`. A
//! [`Regime::Hexagonal`] array is `2n x 2n` and bounded below by
//! `R(w_square)`; anything lower describes the unit ideal.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{minimal_by_rank, Permutation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    #[default]
    Square,
    Hexagonal,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RankArrayJson", into = "RankArrayJson")]
pub struct RankArray {
    size: usize,
    cells: Vec<i32>,
    regime: Regime,
}

#[derive(Serialize, Deserialize)]
struct RankArrayJson {
    size: usize,
    cells: Vec<Vec<i32>>,
    #[serde(default)]
    regime: Regime,
}

impl TryFrom<RankArrayJson> for RankArray {
    type Error = Error;
    fn try_from(j: RankArrayJson) -> Result<Self> {
        let r = RankArray::new(j.cells, j.regime)?;
        if r.size != j.size {
            return Err(Error::SizeMismatch {
                expected: j.size,
                found: r.size,
            });
        }
        Ok(r)
    }
}

impl From<RankArray> for RankArrayJson {
    fn from(r: RankArray) -> Self {
        RankArrayJson {
            size: r.size,
            cells: r.rows(),
            regime: r.regime,
        }
    }
}

impl RankArray {
    /// Builds an array from its rows. Only the shape is validated here.
    pub fn new(rows: Vec<Vec<i32>>, regime: Regime) -> Result<Self> {
        let size = rows.len();
        if size == 0 {
            return Err(Error::InvalidRankArray("empty array".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != size) {
            return Err(Error::InvalidRankArray(format!(
                "row of length {} in a {size} x {size} array",
                bad.len()
            )));
        }
        if regime == Regime::Hexagonal && !size.is_multiple_of(2) {
            return Err(Error::OddSize(size));
        }
        Ok(RankArray {
            size,
            cells: rows.into_iter().flatten().collect(),
            regime,
        })
    }

    /// The North-East rank array of `w`, in the square regime.
    pub fn of_permutation(w: &Permutation) -> Self {
        let s = w.size();
        let mut cells = vec![0; s * s];
        for i in 1..=s {
            // column of the 1 in row i
            let c = s + 1 - w.at(i);
            for j in 1..=s {
                let above = if i > 1 { cells[(i - 2) * s + j - 1] } else { 0 };
                cells[(i - 1) * s + j - 1] = above + i32::from(c >= j);
            }
        }
        RankArray {
            size: s,
            cells,
            regime: Regime::Square,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn with_regime(mut self, regime: Regime) -> Result<Self> {
        if regime == Regime::Hexagonal && !self.size.is_multiple_of(2) {
            return Err(Error::OddSize(self.size));
        }
        self.regime = regime;
        Ok(self)
    }

    /// Entry `(i, j)`, 1-indexed, with the zero conventions on row 0 and
    /// column `s + 1`.
    pub fn get(&self, i: usize, j: usize) -> i32 {
        if i == 0 || j == self.size + 1 {
            return 0;
        }
        self.cells[(i - 1) * self.size + j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, value: i32) {
        self.cells[(i - 1) * self.size + j - 1] = value;
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        self.cells.chunks(self.size).map(<[i32]>::to_vec).collect()
    }

    /// Entrywise `self >= other`; ignores regimes.
    pub fn dominates(&self, other: &RankArray) -> bool {
        self.size == other.size && self.cells.iter().zip(&other.cells).all(|(a, b)| a >= b)
    }

    /// Entrywise minimum: the array of the sum of the two ideals.
    pub fn sum(&self, other: &RankArray) -> Result<RankArray> {
        if self.size != other.size {
            return Err(Error::SizeMismatch {
                expected: self.size,
                found: other.size,
            });
        }
        let regime = if self.regime == other.regime {
            self.regime
        } else {
            Regime::Hexagonal
        };
        Ok(RankArray {
            size: self.size,
            cells: self
                .cells
                .iter()
                .zip(&other.cells)
                .map(|(a, b)| *a.min(b))
                .collect(),
            regime,
        })
    }

    /// The type C identity `R[i][j] - R[2n-i][2n+2-j] = i - j + 1`.
    pub fn is_type_c(&self) -> Result<bool> {
        let s = self.size;
        if !s.is_multiple_of(2) {
            return Err(Error::OddSize(s));
        }
        for i in 1..=s {
            for j in 1..=s {
                let (pi, pj) = (s - i, s + 2 - j);
                let lhs = self.get(i, j) - self.get(pi, pj);
                if lhs != i as i32 - j as i32 + 1 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The cell whose value is tied to `(i, j)` by the type C identity, if it
    /// lies in the grid.
    fn partner(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let s = self.size;
        let (pi, pj) = (s.checked_sub(i)?, (s + 2).checked_sub(j)?);
        (pi >= 1 && pj <= s).then_some((pi, pj))
    }

    /// `min{R[i+1][j], R[i][j-1], R[i-1][j] + 1, R[i][j+1] + 1}`, dropping the
    /// terms that leave the grid below or to the left.
    fn staircase_bound(&self, i: usize, j: usize) -> i32 {
        let mut m = (self.get(i - 1, j) + 1).min(self.get(i, j + 1) + 1);
        if i < self.size {
            m = m.min(self.get(i + 1, j));
        }
        if j > 1 {
            m = m.min(self.get(i, j - 1));
        }
        m
    }

    /// Lowers entries to their staircase bound until nothing changes.
    ///
    /// The constraints are closed under entrywise maximum, so the result is the
    /// greatest feasible array below `self` and does not depend on the order
    /// of replacements.
    pub fn canonicalize(&self) -> RankArray {
        let mut r = self.clone();
        loop {
            let mut changed = false;
            for i in 1..=r.size {
                for j in 1..=r.size {
                    let bound = r.staircase_bound(i, j);
                    if r.get(i, j) > bound {
                        r.set(i, j, bound);
                        changed = true;
                    }
                }
            }
            if !changed {
                return r;
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        (1..=self.size)
            .all(|i| (1..=self.size).all(|j| self.get(i, j) <= self.staircase_bound(i, j)))
    }

    /// The least value `(i, j)` may take before the ideal becomes the unit
    /// ideal (or, in the square regime, leaves `S_n`).
    pub fn lower_bound(&self, i: usize, j: usize) -> i32 {
        let s = self.size;
        match self.regime {
            Regime::Square => {
                if j == 1 {
                    i as i32
                } else if i == s {
                    (s + 1 - j) as i32
                } else {
                    0
                }
            }
            Regime::Hexagonal => {
                // R(w_square)[i][j] = #{k <= i : w_square(k) <= 2n + 1 - j}
                let n = s / 2;
                let limit = s + 1 - j;
                let top = i.min(n);
                let high = top.min(limit.saturating_sub(n));
                let low = if i > n { (i - n).min(limit) } else { 0 };
                (high + low) as i32
            }
        }
    }

    /// The largest meaningful value of `(i, j)`; larger requests impose nothing.
    pub fn upper_bound(&self, i: usize, j: usize) -> i32 {
        i.min(self.size + 1 - j) as i32
    }

    fn below_lower_bound(&self) -> bool {
        (1..=self.size).any(|i| (1..=self.size).any(|j| self.get(i, j) < self.lower_bound(i, j)))
    }

    /// A cell `(i, j)` with `R[i][j] = R[i-1][j] = R[i][j+1] = R[i-1][j+1] + 1`.
    pub fn find_split(&self, order: SplitOrder) -> Option<(usize, usize)> {
        let s = self.size;
        let is_split = |i: usize, j: usize| {
            let r = self.get(i, j);
            r == self.get(i - 1, j) && r == self.get(i, j + 1) && r == self.get(i - 1, j + 1) + 1
        };
        let mut cells: Box<dyn Iterator<Item = (usize, usize)>> = match order {
            SplitOrder::RowMajor => {
                Box::new((2..=s).flat_map(move |i| (1..s).map(move |j| (i, j))))
            }
            SplitOrder::ReverseRowMajor => Box::new(
                (2..=s)
                    .rev()
                    .flat_map(move |i| (1..s).rev().map(move |j| (i, j))),
            ),
            SplitOrder::ColumnMajor => {
                Box::new((1..s).flat_map(move |j| (2..=s).map(move |i| (i, j))))
            }
        };
        cells.find(|&(i, j)| is_split(i, j))
    }

    /// Reads off the permutation when the second differences form a
    /// permutation matrix, and returns `None` otherwise.
    pub fn extract_permutation(&self) -> Option<Permutation> {
        let s = self.size;
        let mut entries = Vec::with_capacity(s);
        for i in 1..=s {
            let mut one = None;
            for j in 1..=s {
                let w = self.get(i, j) - self.get(i, j + 1) - self.get(i - 1, j)
                    + self.get(i - 1, j + 1);
                match w {
                    0 => {}
                    1 if one.is_none() => one = Some(j),
                    _ => return None,
                }
            }
            entries.push(s + 1 - one?);
        }
        Permutation::new(entries).ok()
    }
}

impl fmt::Display for RankArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.cells.chunks(self.size).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(i32::to_string).collect();
            write!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RankArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RankArray({:?}, {:?})", self.regime, self.rows())
    }
}

/// The order in which split cells are searched.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SplitOrder {
    #[default]
    RowMajor,
    ReverseRowMajor,
    ColumnMajor,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecomposeOptions {
    /// Pair every replacement with its type C partner. Implies the hexagonal regime.
    pub type_c: bool,
    pub order: SplitOrder,
    pub trace: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TraceStep {
    Split {
        at: (usize, usize),
        first: Vec<(usize, usize)>,
        second: Vec<(usize, usize)>,
    },
    Leaf {
        permutation: Permutation,
    },
    Unit,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionResult {
    /// Bruhat-minimal leaf permutations, sorted lexicographically.
    pub components: Vec<Permutation>,
    /// Every branch ended in the unit ideal.
    pub unit: bool,
    /// Canonical leaf arrays, before the minimality filter.
    #[serde(skip)]
    pub leaves: Vec<RankArray>,
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<TraceStep>>,
}

/// Primary decomposition with default options.
pub fn primary_decomposition(r: &RankArray, type_c: bool) -> Result<DecompositionResult> {
    primary_decomposition_with(
        r,
        &DecomposeOptions {
            type_c,
            ..DecomposeOptions::default()
        },
    )
}

pub fn primary_decomposition_with(
    r: &RankArray,
    opts: &DecomposeOptions,
) -> Result<DecompositionResult> {
    let mut start = r.clone();
    if opts.type_c {
        if !start.is_type_c()? {
            return Err(Error::NotTypeC);
        }
        start = start.with_regime(Regime::Hexagonal)?;
    }

    let mut warnings = Vec::new();
    for i in 1..=start.size {
        for j in 1..=start.size {
            let hi = start.upper_bound(i, j);
            if start.get(i, j) > hi {
                warnings.push(format!(
                    "entry ({i},{j}) = {} exceeds its maximum {hi}; clamped",
                    start.get(i, j)
                ));
                start.set(i, j, hi);
            }
        }
    }

    let mut trace = opts.trace.then(Vec::new);
    let mut seen = HashSet::new();
    let mut stack = vec![start];
    let mut leaves = Vec::new();
    while let Some(next) = stack.pop() {
        let current = next.canonicalize();
        if !seen.insert(current.cells.clone()) {
            continue;
        }
        if opts.type_c && !current.is_type_c()? {
            return Err(Error::InvariantBreach(
                "canonicalization left the type C class".into(),
            ));
        }
        if current.below_lower_bound() {
            if let Some(t) = trace.as_mut() {
                t.push(TraceStep::Unit);
            }
            continue;
        }
        match current.find_split(opts.order) {
            Some((i, j)) => {
                let value = current.get(i, j) - 1;
                let lowered = |cell: (usize, usize)| {
                    let mut a = current.clone();
                    let mut cells = vec![cell];
                    a.set(cell.0, cell.1, value);
                    if opts.type_c {
                        if let Some(p) = current.partner(cell.0, cell.1).filter(|&p| p != cell) {
                            a.set(p.0, p.1, a.get(p.0, p.1) - 1);
                            cells.push(p);
                        }
                    }
                    (a, cells)
                };
                let (first, first_cells) = lowered((i - 1, j));
                let (second, second_cells) = lowered((i, j + 1));
                if let Some(t) = trace.as_mut() {
                    t.push(TraceStep::Split {
                        at: (i, j),
                        first: first_cells,
                        second: second_cells,
                    });
                }
                stack.push(second);
                stack.push(first);
            }
            None => {
                let v = current.extract_permutation().ok_or_else(|| {
                    Error::InvariantBreach(format!(
                        "array without replacements is not a permutation array:\n{current}"
                    ))
                })?;
                if opts.type_c && !v.is_type_c() {
                    return Err(Error::InvariantBreach(format!(
                        "type C leaf {v} is not in C_n"
                    )));
                }
                if let Some(t) = trace.as_mut() {
                    t.push(TraceStep::Leaf {
                        permutation: v.clone(),
                    });
                }
                leaves.push(current);
            }
        }
    }

    let candidates = leaves
        .iter()
        .map(|leaf| {
            let v = leaf.extract_permutation().expect("leaf checked above");
            let rv = RankArray::of_permutation(&v);
            (v, rv)
        })
        .collect();
    let components = minimal_by_rank(candidates);
    Ok(DecompositionResult {
        unit: components.is_empty(),
        components,
        leaves,
        warnings,
        trace,
    })
}

/// `I(R) ⊆ I(S)`, decided on canonical forms by `R >= S` entrywise.
pub fn ideal_leq(r: &RankArray, s: &RankArray) -> Result<bool> {
    if r.size != s.size {
        return Err(Error::SizeMismatch {
            expected: r.size,
            found: s.size,
        });
    }
    Ok(r.canonicalize().dominates(&s.canonicalize()))
}
