//! Gaussian conditional independence statements `A _||_ B | C` and their
//! translation to symmetric Schubert determinantal ideals.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schubert::{
    decompose_sum, defined_by_inclusions, essential_boxes, ideal_spec, split_by_essential_boxes,
    BoxType, Flavor, MinorSpec,
};

/// `A _||_ B | C` over the ground set `[n]`. Sets are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawStatement")]
pub struct CIStatement {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

#[derive(Deserialize)]
struct RawStatement {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    #[serde(default)]
    c: Vec<usize>,
}

impl TryFrom<RawStatement> for CIStatement {
    type Error = Error;
    fn try_from(r: RawStatement) -> Result<Self> {
        CIStatement::new(r.n, r.a, r.b, r.c)
    }
}

impl CIStatement {
    pub fn new(
        n: usize,
        a: impl IntoIterator<Item = usize>,
        b: impl IntoIterator<Item = usize>,
        c: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let sorted = |it: Vec<usize>, name: &str| -> Result<Vec<usize>> {
            let set: BTreeSet<usize> = it.iter().copied().collect();
            if set.len() != it.len() {
                return Err(Error::InvalidStatement(format!(
                    "repeated element in {name}"
                )));
            }
            if let Some(&bad) = set.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::InvalidStatement(format!(
                    "element {bad} of {name} is outside [1, {n}]"
                )));
            }
            Ok(set.into_iter().collect())
        };
        let a = sorted(a.into_iter().collect(), "A")?;
        let b = sorted(b.into_iter().collect(), "B")?;
        let c = sorted(c.into_iter().collect(), "C")?;
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidStatement("A and B must be nonempty".into()));
        }
        let overlap = |x: &[usize], y: &[usize]| x.iter().any(|e| y.contains(e));
        if overlap(&a, &b) || overlap(&a, &c) || overlap(&b, &c) {
            return Err(Error::InvalidStatement(
                "A, B and C must be disjoint".into(),
            ));
        }
        Ok(CIStatement { n, a, b, c })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn c(&self) -> &[usize] {
        &self.c
    }

    /// `B _||_ A | C`, which has the same ideal.
    pub fn swapped(&self) -> CIStatement {
        CIStatement {
            n: self.n,
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }

    /// The statement with every label `k` replaced by `sigma(k)`.
    pub fn relabel(&self, sigma: &Permutation) -> Result<CIStatement> {
        if sigma.size() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: sigma.size(),
            });
        }
        let map = |s: &[usize]| s.iter().map(|&k| sigma.at(k)).collect::<Vec<_>>();
        CIStatement::new(self.n, map(&self.a), map(&self.b), map(&self.c))
    }

    /// The orientation, if any, in which the statement has Schubert shape.
    pub fn schubert_orientation(&self) -> Option<CIStatement> {
        if is_schubert_ci(self) {
            Some(self.clone())
        } else {
            let s = self.swapped();
            is_schubert_ci(&s).then_some(s)
        }
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, s: &[usize]) -> fmt::Result {
    if let [single] = s {
        write!(f, "{single}")
    } else {
        let items: Vec<String> = s.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_set(f, &self.a)?;
        f.write_str(" _||_ ")?;
        write_set(f, &self.b)?;
        if !self.c.is_empty() {
            f.write_str(" | ")?;
            write_set(f, &self.c)?;
        }
        Ok(())
    }
}

fn parse_set(text: &str) -> Result<Vec<usize>> {
    let body = text.trim();
    let body = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .unwrap_or(body);
    let mut out = Vec::new();
    for item in body.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let num = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad element `{s}`")))
        };
        match item.split_once('-') {
            Some((lo, hi)) => {
                let (lo, hi) = (num(lo)?, num(hi)?);
                if lo > hi {
                    return Err(Error::Parse(format!("empty range `{item}`")));
                }
                out.extend(lo..=hi);
            }
            None => out.push(num(item)?),
        }
    }
    Ok(out)
}

/// Parses `A _||_ B | C` (the `| C` clause is optional). Sets are comma
/// lists with optional braces and ranges such as `1-3`.
pub fn parse_statement(text: &str, n: usize) -> Result<CIStatement> {
    let (a, rest) = text
        .split_once("_||_")
        .ok_or_else(|| Error::Parse(format!("missing `_||_` in `{}`", text.trim())))?;
    let (b, c) = match rest.split_once('|') {
        Some((b, c)) => (b, c),
        None => (rest, ""),
    };
    CIStatement::new(n, parse_set(a)?, parse_set(b)?, parse_set(c)?)
}

/// Parses statements separated by `;`.
pub fn parse_statements(text: &str, n: usize) -> Result<Vec<CIStatement>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_statement(s, n))
        .collect()
}

/// The condition that `#C + 1` minors of `Sigma[A ∪ C, B ∪ C]` vanish.
pub fn rank_condition(s: &CIStatement) -> MinorSpec {
    let union = |x: &[usize]| {
        let mut v: Vec<usize> = x.iter().chain(&s.c).copied().collect();
        v.sort_unstable();
        v
    };
    MinorSpec {
        rows: union(&s.a),
        cols: union(&s.b),
        size: s.c.len() + 1,
    }
}

fn is_interval(s: &[usize], lo: usize, hi: usize) -> bool {
    s.len() == hi + 1 - lo && s.first() == Some(&lo) && s.last() == Some(&hi)
}

/// Whether `A = [1,i]`, `B = [j,n]` and `C` is empty or exactly `[i+1, j-1]`.
pub fn is_schubert_ci(s: &CIStatement) -> bool {
    let n = s.n;
    let i = s.a.len();
    let j = n + 1 - s.b.len();
    if !is_interval(&s.a, 1, i) || !is_interval(&s.b, j, n) || i >= j {
        return false;
    }
    s.c.is_empty() || (i + 1 < j && is_interval(&s.c, i + 1, j - 1))
}

/// The permutation whose symmetric ideal equals the statement's CI ideal.
/// Either orientation of `A` and `B` is accepted.
pub fn ci_to_perm(s: &CIStatement) -> Result<Permutation> {
    let s = s
        .schubert_orientation()
        .ok_or_else(|| Error::NotSchubertStatement(s.to_string()))?;
    let (n, na, nb, nc) = (s.n, s.a.len(), s.b.len(), s.c.len());
    let entries = (1..=n)
        .map(|k| {
            if nc == 0 {
                match k {
                    k if k <= na => nb + k,
                    k if k <= na + nb => k - na,
                    k => k,
                }
            } else {
                match k {
                    k if k <= nc => k,
                    k if k <= na + nc => nb + k,
                    k => k - na,
                }
            }
        })
        .collect();
    Permutation::new(entries)
}

/// The CI statement whose ideal is the symmetric ideal of `w`, if there is one.
pub fn perm_to_ci(w: &Permutation) -> Option<CIStatement> {
    let n = w.size();
    let [ess] = essential_boxes(w)[..] else {
        return None;
    };
    if !defined_by_inclusions(w) {
        return None;
    }
    let (i, j) = (ess.row, ess.col);
    let kind = crate::schubert::essential_box_type(w, (i, j)).ok()?;
    let s = match kind {
        BoxType::Type1 if i < j => CIStatement::new(n, 1..=i, j..=n, []),
        BoxType::Type2 if i >= j && j > 1 && i < n => CIStatement::new(n, 1..j, i + 1..=n, j..=i),
        _ => return None,
    }
    .ok()?;
    // the rank of the box must be #C for the rendering to be faithful
    (ess.rank == s.c.len()).then_some(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub permutation: Permutation,
    /// The component as a sum of CI ideals, when it is one.
    pub rendering: Option<Vec<CIStatement>>,
    pub generators: Vec<MinorSpec>,
}

/// Components of the sum of the statements' CI ideals.
pub fn decompose_ci(statements: &[CIStatement]) -> Result<Vec<Component>> {
    let Some(first) = statements.first() else {
        return Err(Error::InvalidStatement("no statements given".into()));
    };
    let n = first.n;
    let mut perms = Vec::with_capacity(statements.len());
    for s in statements {
        if s.n != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: s.n,
            });
        }
        perms.push(ci_to_perm(s)?);
    }
    decompose_sum(Flavor::Sym, &perms)?
        .into_iter()
        .map(|w| {
            let rendering = if defined_by_inclusions(&w) {
                let pieces = split_by_essential_boxes(&w)?
                    .iter()
                    .map(|wk| {
                        perm_to_ci(wk).ok_or_else(|| {
                            Error::InvariantBreach(format!("{wk} has no CI rendering"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Some(pieces)
            } else {
                None
            };
            Ok(Component {
                generators: ideal_spec(Flavor::Sym, &w).generators,
                permutation: w,
                rendering,
            })
        })
        .collect()
}

/// Largest `n` for which relabelings are searched.
pub const RELABEL_LIMIT: usize = 8;

/// The lexicographically first relabeling of `[n]` under which every statement
/// has Schubert shape, if one exists.
pub fn suggest_relabeling(statements: &[CIStatement]) -> Result<Option<Permutation>> {
    let Some(first) = statements.first() else {
        return Ok(None);
    };
    let n = first.n;
    if n > RELABEL_LIMIT {
        return Err(Error::GuardExceeded {
            what: "relabeling search",
            limit: RELABEL_LIMIT,
            n,
        });
    }
    for sigma in Permutation::all(n) {
        let mut ok = true;
        for s in statements {
            if s.relabel(&sigma)?.schubert_orientation().is_none() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}
