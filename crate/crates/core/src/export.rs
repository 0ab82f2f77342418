//! Generator export as JSON or as Macaulay2 / Singular scripts.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::schubert::{Flavor, IdealSpec, MinorSpec};

/// Default cap on the number of determinant terms written out symbolically.
pub const TERM_BUDGET: usize = 50_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    M2,
    Singular,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "m2" | "macaulay2" => Ok(Format::M2),
            "singular" => Ok(Format::Singular),
            other => Err(Error::Parse(format!(
                "unknown format {other:?} (expected json, m2 or singular)"
            ))),
        }
    }
}

/// One monomial of an expanded minor: a sign and the matrix cells multiplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub negative: bool,
    pub cells: Vec<(usize, usize)>,
}

/// Whether the variable matrix of `flavor` has a variable at `(i, j)`.
pub fn is_variable(flavor: Flavor, i: usize, j: usize) -> bool {
    flavor != Flavor::Up || i <= j
}

/// Leibniz expansion of every `size` minor of `rows x cols`, with terms
/// through structural zeros dropped.
pub fn expand_minors(flavor: Flavor, m: &MinorSpec) -> Vec<Vec<Term>> {
    let mut out = Vec::new();
    for rs in combinations(&m.rows, m.size) {
        for cs in combinations(&m.cols, m.size) {
            let mut terms = Vec::new();
            for (perm, negative) in signed_permutations(m.size) {
                let cells: Vec<(usize, usize)> = perm
                    .iter()
                    .enumerate()
                    .map(|(a, &b)| (rs[a], cs[b]))
                    .collect();
                if cells.iter().all(|&(i, j)| is_variable(flavor, i, j)) {
                    terms.push(Term { negative, cells });
                }
            }
            out.push(terms);
        }
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = combinations(&items[1..], k - 1)
        .into_iter()
        .map(|mut c| {
            c.insert(0, items[0]);
            c
        })
        .collect();
    with.extend(combinations(&items[1..], k));
    with
}

/// All permutations of `0..k` with their parity (true when odd).
fn signed_permutations(k: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    fn heap(len: usize, p: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) -> bool {
        // Heap's algorithm; each swap flips the parity
        if len <= 1 {
            out.push((p.clone(), odd));
            return odd;
        }
        let mut odd = odd;
        for i in 0..len - 1 {
            odd = heap(len - 1, p, odd, out);
            if len.is_multiple_of(2) {
                p.swap(i, len - 1);
            } else {
                p.swap(0, len - 1);
            }
            odd = !odd;
        }
        heap(len - 1, p, odd, out)
    }
    heap(k, &mut p, false, &mut out);
    out
}

fn term_count(spec: &IdealSpec) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    spec.generators
        .iter()
        .map(|g| g.count() * fact(g.size))
        .sum()
}

pub fn to_json(spec: &IdealSpec) -> String {
    serde_json::to_string_pretty(spec).expect("ideal specs serialize")
}

struct Dialect {
    comment: &'static str,
    var: fn(Flavor, usize, usize) -> String,
}

fn letter(flavor: Flavor) -> char {
    match flavor {
        Flavor::Full => 'x',
        Flavor::Sym => 's',
        Flavor::Up => 'y',
    }
}

fn ordered(flavor: Flavor, i: usize, j: usize) -> (usize, usize) {
    if flavor == Flavor::Sym {
        (i.min(j), i.max(j))
    } else {
        (i, j)
    }
}

const M2: Dialect = Dialect {
    comment: "--",
    var: |f, i, j| {
        let (a, b) = ordered(f, i, j);
        format!("{}_({a},{b})", letter(f))
    },
};

const SINGULAR: Dialect = Dialect {
    comment: "//",
    var: |f, i, j| {
        let (a, b) = ordered(f, i, j);
        format!("{}_{a}_{b}", letter(f))
    },
};

fn header(d: &Dialect, spec: &IdealSpec) -> String {
    let c = d.comment;
    let matrix = match spec.flavor {
        Flavor::Full => "generic",
        Flavor::Sym => "symmetric",
        Flavor::Up => "upper triangular",
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{c} {} Schubert determinantal ideal of w = {}",
        spec.flavor,
        spec.permutation.to_comma_string()
    );
    let _ = writeln!(s, "{c} variables: {matrix} {0} x {0} matrix M", spec.n);
    let _ = writeln!(
        s,
        "{c} convention: the permutation matrix of w has its 1 in row i at column n+1-w(i),"
    );
    let _ = writeln!(s, "{c} and the ideal is cut out by rank M[1..i, j..n] <= r for rank bounds r read off that matrix");
    let _ = writeln!(
        s,
        "{c} rows are numbered from the top, columns from the left, starting at 1"
    );
    s
}

fn variables(spec: &IdealSpec) -> Vec<(usize, usize)> {
    let n = spec.n;
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| match spec.flavor {
            Flavor::Full => true,
            Flavor::Sym | Flavor::Up => i <= j,
        })
        .collect()
}

fn matrix_rows(d: &Dialect, spec: &IdealSpec) -> Vec<Vec<String>> {
    (1..=spec.n)
        .map(|i| {
            (1..=spec.n)
                .map(|j| {
                    if is_variable(spec.flavor, i, j) {
                        (d.var)(spec.flavor, i, j)
                    } else {
                        "0".to_string()
                    }
                })
                .collect()
        })
        .collect()
}

fn polynomial(d: &Dialect, flavor: Flavor, terms: &[Term]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        let sign = match (k, t.negative) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let mono: Vec<String> = t
            .cells
            .iter()
            .map(|&(i, j)| (d.var)(flavor, i, j))
            .collect();
        let _ = write!(s, "{sign}{}", mono.join("*"));
    }
    s
}

fn expanded(d: &Dialect, spec: &IdealSpec) -> Vec<String> {
    spec.generators
        .iter()
        .flat_map(|g| expand_minors(spec.flavor, g))
        .map(|terms| polynomial(d, spec.flavor, &terms))
        .filter(|p| p != "0")
        .collect()
}

fn join_list(items: &[usize], offset: usize) -> String {
    items
        .iter()
        .map(|x| (x - offset).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn to_macaulay2(spec: &IdealSpec, term_budget: usize) -> String {
    let mut s = header(&M2, spec);
    let vars: Vec<String> = variables(spec)
        .iter()
        .map(|&(i, j)| (M2.var)(spec.flavor, i, j))
        .collect();
    let _ = writeln!(s, "R = QQ[{}];", vars.join(", "));
    let rows: Vec<String> = matrix_rows(&M2, spec)
        .iter()
        .map(|r| format!("{{{}}}", r.join(", ")))
        .collect();
    let _ = writeln!(s, "M = matrix(R, {{{}}});", rows.join(", "));
    if term_count(spec) <= term_budget as u128 {
        let polys = expanded(&M2, spec);
        let body = if polys.is_empty() {
            "0_R".to_string()
        } else {
            polys.join(",\n    ")
        };
        let _ = writeln!(s, "I = ideal({body});");
    } else {
        let _ = writeln!(s, "-- term budget exceeded; minors are left to Macaulay2");
        let parts: Vec<String> = spec
            .generators
            .iter()
            .map(|g| {
                format!(
                    "minors({}, submatrix(M, {{{}}}, {{{}}}))",
                    g.size,
                    join_list(&g.rows, 1),
                    join_list(&g.cols, 1)
                )
            })
            .collect();
        let _ = writeln!(s, "I = {};", parts.join(" + "));
    }
    s
}

pub fn to_singular(spec: &IdealSpec, term_budget: usize) -> String {
    let mut s = header(&SINGULAR, spec);
    let vars: Vec<String> = variables(spec)
        .iter()
        .map(|&(i, j)| (SINGULAR.var)(spec.flavor, i, j))
        .collect();
    let _ = writeln!(s, "LIB \"matrix.lib\";");
    let _ = writeln!(s, "ring R = 0, ({}), dp;", vars.join(", "));
    let entries: Vec<String> = matrix_rows(&SINGULAR, spec).concat();
    let _ = writeln!(s, "matrix M[{0}][{0}] = {1};", spec.n, entries.join(", "));
    if term_count(spec) <= term_budget as u128 {
        let polys = expanded(&SINGULAR, spec);
        let body = if polys.is_empty() {
            "0".to_string()
        } else {
            polys.join(",\n    ")
        };
        let _ = writeln!(s, "ideal I = {body};");
    } else {
        let _ = writeln!(s, "// term budget exceeded; minors are left to Singular");
        let _ = writeln!(s, "ideal I = 0;");
        for g in &spec.generators {
            let _ = writeln!(
                s,
                "I = I + minor(submat(M, intvec({}), intvec({})), {});",
                join_list(&g.rows, 0),
                join_list(&g.cols, 0),
                g.size
            );
        }
    }
    s
}

pub fn export(spec: &IdealSpec, format: Format, term_budget: usize) -> String {
    match format {
        Format::Json => to_json(spec),
        Format::M2 => to_macaulay2(spec, term_budget),
        Format::Singular => to_singular(spec, term_budget),
    }
}
