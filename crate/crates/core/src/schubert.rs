//! Schubert determinantal ideals on generic, symmetric and upper triangular
//! `n x n` matrices, their essential minors, and sums of such ideals.
//!
//! Boxes are `(row, col)` pairs in the North-East convention: `P(w)` has its
//! 1s at `(i, n + 1 - w(i))` and the rank condition at `(i, j)` constrains the
//! submatrix on rows `[1, i]` and columns `[j, n]`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{contains_pattern, minimal_by_rank, Permutation};
use crate::rank_array::{primary_decomposition, RankArray, Regime};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Full,
    Sym,
    Up,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Full, Flavor::Sym, Flavor::Up];
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Full => "full",
            Flavor::Sym => "sym",
            Flavor::Up => "up",
        })
    }
}

impl FromStr for Flavor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Flavor::Full),
            "sym" => Ok(Flavor::Sym),
            "up" => Ok(Flavor::Up),
            other => Err(Error::Parse(format!("unknown flavor `{other}`"))),
        }
    }
}

/// "All `size x size` minors of the submatrix on `rows x cols` vanish."
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub size: usize,
}

impl MinorSpec {
    /// The North-East condition `rank M[1..=i, j..=n] <= rank`.
    pub fn north_east(n: usize, i: usize, j: usize, rank: usize) -> Self {
        MinorSpec {
            rows: (1..=i).collect(),
            cols: (j..=n).collect(),
            size: rank + 1,
        }
    }

    /// Number of `size x size` minors.
    pub fn count(&self) -> u128 {
        binomial(self.rows.len(), self.size) * binomial(self.cols.len(), self.size)
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, t| acc * (n - t) as u128 / (t + 1) as u128)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub flavor: Flavor,
    pub n: usize,
    pub permutation: Permutation,
    pub generators: Vec<MinorSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EssentialBox {
    pub row: usize,
    pub col: usize,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxType {
    /// No 1 of `P(w)` weakly North-East of the box.
    Type1,
    /// Not type 1, and no 1 strictly South-West.
    Type2,
}

/// Column of the 1 in each row of `P(w)`, 0-indexed by row.
fn one_columns(w: &Permutation) -> Vec<usize> {
    let n = w.size();
    w.entries().iter().map(|&e| n + 1 - e).collect()
}

/// Boxes with no 1 of `P(w)` directly north or directly east, row-major.
pub fn diagram(w: &Permutation) -> Vec<(usize, usize)> {
    let n = w.size();
    let cols = one_columns(w);
    let mut row_of_col = vec![0; n + 1];
    for (k, &c) in cols.iter().enumerate() {
        row_of_col[c] = k + 1;
    }
    let (cols, row_of_col) = (&cols, &row_of_col);
    (1..=n)
        .flat_map(|i| {
            (1..=n)
                .filter(move |&j| cols[i - 1] < j && row_of_col[j] > i)
                .map(move |j| (i, j))
        })
        .collect()
}

/// Diagram boxes with neither `(i+1, j)` nor `(i, j-1)` in the diagram.
pub fn essential_set(w: &Permutation) -> Vec<(usize, usize)> {
    let d: HashSet<(usize, usize)> = diagram(w).into_iter().collect();
    let mut ess: Vec<_> = d
        .iter()
        .copied()
        .filter(|&(i, j)| !d.contains(&(i + 1, j)) && !d.contains(&(i, j - 1)))
        .collect();
    ess.sort();
    ess
}

/// Essential boxes together with their rank `R(w)[i][j]`.
pub fn essential_boxes(w: &Permutation) -> Vec<EssentialBox> {
    let r = RankArray::of_permutation(w);
    essential_set(w)
        .into_iter()
        .map(|(i, j)| EssentialBox {
            row: i,
            col: j,
            rank: r.get(i, j) as usize,
        })
        .collect()
}

/// The diagram in the textbook convention, where the permutation matrix of
/// `w` has its 1s at `(i, w(i))` and boxes see no 1 to the north or west.
pub fn textbook_diagram(w: &Permutation) -> Vec<(usize, usize)> {
    let n = w.size();
    let inv = w.inverse();
    let mut boxes = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if w.at(i) > j && inv.at(j) > i {
                boxes.push((i, j));
            }
        }
    }
    boxes
}

/// Maps a box between the North-East and textbook conventions (an involution).
pub fn textbook_box(n: usize, (i, j): (usize, usize)) -> (usize, usize) {
    (i, n + 1 - j)
}

/// Largest rank any upper triangular matrix can have on `rows [1,i] x cols [j,n]`.
fn upper_structural_rank(n: usize, i: usize, j: usize) -> usize {
    // column c admits rows 1..=min(c, i); match greedily from the left
    let mut matched = 0;
    for c in j..=n {
        if matched < c.min(i) {
            matched += 1;
        }
    }
    matched
}

/// Essential-minor generators of `J_flavor(w)`.
pub fn ideal_spec(flavor: Flavor, w: &Permutation) -> IdealSpec {
    ideal_spec_with(flavor, w, false)
}

/// With `full_family`, emits the rank condition of every box instead of the
/// essential ones only. Conditions with no nonzero minor are dropped, as are
/// (for `up`) minors that vanish identically on upper triangular matrices.
pub fn ideal_spec_with(flavor: Flavor, w: &Permutation, full_family: bool) -> IdealSpec {
    let n = w.size();
    let r = RankArray::of_permutation(w);
    let boxes: Vec<(usize, usize)> = if full_family {
        (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect()
    } else {
        essential_set(w)
    };
    let generators = boxes
        .into_iter()
        .filter_map(|(i, j)| {
            let rank = r.get(i, j) as usize;
            let mut room = i.min(n + 1 - j);
            if flavor == Flavor::Up {
                room = room.min(upper_structural_rank(n, i, j));
            }
            (rank < room).then(|| MinorSpec::north_east(n, i, j, rank))
        })
        .collect();
    IdealSpec {
        flavor,
        n,
        permutation: w.clone(),
        generators,
    }
}

/// `w` followed by `n+1, ..., 2n`.
pub fn extend_full(w: &Permutation) -> Permutation {
    let n = w.size();
    let entries = w.entries().iter().copied().chain(n + 1..=2 * n).collect();
    Permutation::new(entries).expect("extension is a permutation")
}

/// `w` followed by `2n, 2n-1, ..., n+1`.
pub fn extend_up(w: &Permutation) -> Permutation {
    let n = w.size();
    let entries = w
        .entries()
        .iter()
        .copied()
        .chain((n + 1..=2 * n).rev())
        .collect();
    Permutation::new(entries).expect("extension is a permutation")
}

/// `w` followed by the values `2n + 1 - w(i)` in reverse order, an element of `C_n`.
pub fn extend_sym(w: &Permutation) -> Permutation {
    let n = w.size();
    let tail = w.entries().iter().rev().map(|&e| 2 * n + 1 - e);
    let entries = w.entries().iter().copied().chain(tail).collect();
    Permutation::new(entries).expect("extension is a permutation")
}

pub fn extend(flavor: Flavor, w: &Permutation) -> Permutation {
    match flavor {
        Flavor::Full => extend_full(w),
        Flavor::Sym => extend_sym(w),
        Flavor::Up => extend_up(w),
    }
}

const FORBIDDEN: [&str; 4] = ["1324", "31524", "24153", "426153"];

/// Pattern-avoidance test for permutations defined by inclusions.
pub fn defined_by_inclusions(w: &Permutation) -> bool {
    FORBIDDEN
        .iter()
        .all(|p| !contains_pattern(w, &p.parse().expect("valid pattern")))
}

/// The same property read off the essential set: every box is of type 1 or 2.
pub fn defined_by_inclusions_essential(w: &Permutation) -> bool {
    essential_set(w)
        .into_iter()
        .all(|b| classify_box(w, b).is_some())
}

fn classify_box(w: &Permutation, (i, j): (usize, usize)) -> Option<BoxType> {
    let cols = one_columns(w);
    let north_east = cols[..i].iter().any(|&c| c >= j);
    let south_west = cols[i..].iter().any(|&c| c < j);
    match (north_east, south_west) {
        (false, _) => Some(BoxType::Type1),
        (true, false) => Some(BoxType::Type2),
        (true, true) => None,
    }
}

/// Reads the classification as stated for the textbook convention:
/// type 1 when no `k <= i` has `w(k) <= j'`, type 2 when no `k > i` has
/// `w(k) > j'`, where `(i, j')` is the textbook box.
pub fn textbook_box_type(w: &Permutation, b: (usize, usize)) -> Option<BoxType> {
    let (i, jt) = textbook_box(w.size(), b);
    let e = w.entries();
    if !e[..i].iter().any(|&x| x <= jt) {
        Some(BoxType::Type1)
    } else if !e[i..].iter().any(|&x| x > jt) {
        Some(BoxType::Type2)
    } else {
        None
    }
}

pub fn essential_box_type(w: &Permutation, b: (usize, usize)) -> Result<BoxType> {
    if !essential_set(w).contains(&b) {
        return Err(Error::NotEssential(b.0, b.1));
    }
    if !defined_by_inclusions(w) {
        return Err(Error::NotDefinedByInclusions(w.to_string()));
    }
    classify_box(w, b)
        .ok_or_else(|| Error::InvariantBreach(format!("essential box {b:?} of {w} has no type")))
}

/// The minimal permutation carrying the single rank condition of `w` at `(i, j)`.
fn single_box_permutation(w: &Permutation, (i, j): (usize, usize)) -> Result<Permutation> {
    let n = w.size();
    let mut r = RankArray::of_permutation(&Permutation::identity(n));
    r.set(i, j, RankArray::of_permutation(w).get(i, j));
    r.canonicalize().extract_permutation().ok_or_else(|| {
        Error::InvariantBreach(format!("single rank condition at ({i},{j}) is not prime"))
    })
}

/// One permutation per essential box of `w`, each with that box as its only
/// essential box; the sum of their ideals is the ideal of `w`.
pub fn split_by_essential_boxes(w: &Permutation) -> Result<Vec<Permutation>> {
    if !defined_by_inclusions(w) {
        return Err(Error::NotDefinedByInclusions(w.to_string()));
    }
    let boxes = essential_set(w);
    let mut parts = Vec::with_capacity(boxes.len());
    for &b in &boxes {
        let wk = single_box_permutation(w, b)?;
        if essential_set(&wk) != [b] {
            return Err(Error::InvariantBreach(format!(
                "{wk} should have the single essential box {b:?}"
            )));
        }
        parts.push(wk);
    }
    if let Some(first) = parts.first() {
        let mut sum = RankArray::of_permutation(first);
        for wk in &parts[1..] {
            sum = sum.sum(&RankArray::of_permutation(wk))?;
        }
        if sum.canonicalize() != RankArray::of_permutation(w) {
            return Err(Error::InvariantBreach(format!(
                "essential pieces of {w} do not sum back to it"
            )));
        }
    }
    Ok(parts)
}

/// Largest `2n` for which the sym replacement loop is attempted.
pub const SYM_LIMIT: usize = 16;

/// Components `w_1, ..., w_k` of `J_flavor(v_1) + ... + J_flavor(v_m)`,
/// sorted lexicographically.
pub fn decompose_sum(flavor: Flavor, ws: &[Permutation]) -> Result<Vec<Permutation>> {
    let Some(first) = ws.first() else {
        return Err(Error::Parameter(
            "decompose_sum needs at least one permutation".into(),
        ));
    };
    let n = first.size();
    for w in ws {
        if w.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: w.size(),
            });
        }
    }
    match flavor {
        Flavor::Full | Flavor::Up => {
            let sum = sum_of(ws.iter().map(RankArray::of_permutation))?;
            let d = primary_decomposition(&sum, false)?;
            Ok(d.components)
        }
        Flavor::Sym => decompose_sym(ws),
    }
}

fn sum_of(arrays: impl IntoIterator<Item = RankArray>) -> Result<RankArray> {
    let mut it = arrays.into_iter();
    let mut acc = it
        .next()
        .ok_or_else(|| Error::Parameter("empty sum".into()))?;
    for r in it {
        acc = acc.sum(&r)?;
    }
    Ok(acc)
}

/// Minimal upper bounds in `[1, w_square]` of permutations of `S_2n`.
fn hexagonal_joins(us: &[Permutation]) -> Result<Vec<Permutation>> {
    let sum = sum_of(us.iter().map(|u| {
        RankArray::of_permutation(u)
            .with_regime(Regime::Hexagonal)
            .expect("even size")
    }))?;
    Ok(primary_decomposition(&sum, false)?.components)
}

fn decompose_sym(ws: &[Permutation]) -> Result<Vec<Permutation>> {
    let n = ws[0].size();
    if 2 * n > SYM_LIMIT {
        return Err(Error::GuardExceeded {
            what: "symmetric sum decomposition",
            limit: SYM_LIMIT / 2,
            n,
        });
    }
    let extended: Vec<Permutation> = ws.iter().map(extend_sym).collect();
    let mut pending = hexagonal_joins(&extended)?;
    let mut seen = HashSet::new();
    let mut in_cn = Vec::new();
    while let Some(u) = pending.pop() {
        if !seen.insert(u.clone()) {
            continue;
        }
        if u.is_type_c() {
            in_cn.push(u);
        } else {
            // each replacement is strictly larger and bounded by w_square, so
            // `seen` stays finite and the loop terminates
            let mirror = u.conjugate_by_longest();
            pending.extend(hexagonal_joins(&[u, mirror])?);
        }
    }
    restrict_type_c(in_cn, n)
}

/// Keeps the Bruhat-minimal elements of `C_n` and restricts them to `S_n`.
fn restrict_type_c(us: Vec<Permutation>, n: usize) -> Result<Vec<Permutation>> {
    let candidates = us
        .into_iter()
        .map(|u| {
            let r = RankArray::of_permutation(&u);
            (u, r)
        })
        .collect();
    let mut out = Vec::new();
    for u in minimal_by_rank(candidates) {
        let head = u.entries()[..n].to_vec();
        let w = Permutation::new(head).map_err(|_| {
            Error::InvariantBreach(format!("component {u} is not an extension from S_{n}"))
        })?;
        out.push(w);
    }
    out.sort();
    Ok(out)
}

/// The sym decomposition computed instead with paired type C replacements.
pub fn decompose_sum_paired(ws: &[Permutation]) -> Result<Vec<Permutation>> {
    let n = ws
        .first()
        .map(Permutation::size)
        .ok_or_else(|| Error::Parameter("empty sum".into()))?;
    let sum = sum_of(ws.iter().map(|w| RankArray::of_permutation(&extend_sym(w))))?;
    let d = primary_decomposition(&sum, true)?;
    restrict_type_c(d.components, n)
}

/// Codimension of the stratum of `v` in `S_2n`: `l(v)` for full, the type C
/// length for sym, and `l(v) - n(n-1)/2` for up.
pub fn stratum_codimension(flavor: Flavor, v: &Permutation) -> Result<usize> {
    let s = v.size();
    if !s.is_multiple_of(2) {
        return Err(Error::OddSize(s));
    }
    let n = s / 2;
    match flavor {
        Flavor::Full => Ok(v.length()),
        Flavor::Sym => v.type_c_length(),
        Flavor::Up => v
            .length()
            .checked_sub(n * (n - 1) / 2)
            .ok_or_else(|| Error::Parameter(format!("{v} lies below w_up"))),
    }
}

/// Codimension of the variety of `J_flavor(w)`, via the stratum of the
/// flavor's extension of `w`.
pub fn codimension(flavor: Flavor, w: &Permutation) -> usize {
    stratum_codimension(flavor, &extend(flavor, w)).expect("extensions lie in the right range")
}
