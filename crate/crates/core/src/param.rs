//! Exact rational parametrizations of upper triangular and symmetric matrix
//! Schubert varieties and of Gaussian graphical models, with exact rank checks.
//!
//! No floating point is used anywhere in this module.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gaussian_graph::MixedGraph;
use crate::perm::{reduced_word, Permutation};
use crate::rank_array::RankArray;
use crate::schubert::{essential_set, Flavor};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn diagonal(values: &[BigRational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i + 1, i + 1, v.clone());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged matrix".into()));
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            entries: rows
                .iter()
                .flatten()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`, 1-indexed.
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[(i - 1) * self.cols + j - 1]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[(i - 1) * self.cols + j - 1] = value;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 1..=self.rows {
            for j in 1..=self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn try_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 1..=self.rows {
            for k in 1..=self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 1..=other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = (i - 1) * out.cols + j - 1;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The submatrix on the given 1-indexed rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut s = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a + 1, b + 1, self.get(i, j).clone());
            }
        }
        s
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_upper_triangular(&self) -> bool {
        (1..=self.rows).all(|i| (1..i.min(self.cols + 1)).all(|j| self.get(i, j).is_zero()))
    }

    /// Inverse by Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        if !self.is_square() {
            return Err(Error::Parameter("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 1..=n {
            let pivot = (col..=n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or_else(|| Error::Parameter("singular matrix".into()))?;
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
            let p = a.get(col, col).clone();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 1..=n {
                if r != col && !a.get(r, col).is_zero() {
                    let f = a.get(r, col).clone();
                    a.sub_row(r, col, &f);
                    inv.sub_row(r, col, &f);
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for j in 1..=self.cols {
                self.entries
                    .swap((r1 - 1) * self.cols + j - 1, (r2 - 1) * self.cols + j - 1);
            }
        }
    }

    fn scale_row(&mut self, r: usize, divisor: &BigRational) {
        for j in 1..=self.cols {
            let v = self.get(r, j) / divisor;
            self.set(r, j, v);
        }
    }

    /// `row[target] -= factor * row[source]`.
    fn sub_row(&mut self, target: usize, source: usize, factor: &BigRational) {
        for j in 1..=self.cols {
            let v = self.get(target, j) - factor * self.get(source, j);
            self.set(target, j, v);
        }
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs)
            .expect("dimension mismatch in matrix product")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for (k, row) in cells.chunks(self.cols.max(1)).enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMatrix(\n{self}\n)")
    }
}

/// Serialized as rows of strings such as `"3/2"`.
impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .chunks(self.cols.max(1))
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        rows.serialize(s)
    }
}

pub fn rational(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(m: &RationalMatrix) -> usize {
    // clear denominators row by row; row scaling preserves rank
    let mut a: Vec<Vec<BigInt>> = m
        .entries
        .chunks(m.cols.max(1))
        .take(m.rows)
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
            row.iter()
                .map(|e| (e * BigRational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// `X_i(t) = I + t e_{i,i+1}` in dimension `n`.
pub fn chevalley(i: usize, t: &BigRational, n: usize) -> Result<RationalMatrix> {
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!(
            "no Chevalley generator X_{i} in dimension {n}"
        )));
    }
    let mut m = RationalMatrix::identity(n);
    m.set(i, i + 1, t.clone());
    Ok(m)
}

/// The reduced word of `w0 w` used by [`phi_up`].
pub fn phi_word(w: &Permutation) -> Vec<usize> {
    reduced_word(&w.longest_times())
}

/// `diag(a) X_{i_k}(t_k) ... X_{i_1}(t_1)` for the word `(i_1, ..., i_k)` of `w0 w`.
pub fn phi_up(w: &Permutation, a: &[BigRational], t: &[BigRational]) -> Result<RationalMatrix> {
    let n = w.size();
    let word = phi_word(w);
    if a.len() != n || t.len() != word.len() {
        return Err(Error::Parameter(format!(
            "phi_up for {w} takes {n} diagonal and {} word parameters, got {} and {}",
            word.len(),
            a.len(),
            t.len()
        )));
    }
    let mut m = RationalMatrix::diagonal(a);
    for (&i, ti) in word.iter().zip(t).rev() {
        m = &m * &chevalley(i, ti, n)?;
    }
    Ok(m)
}

/// `U^T U`.
pub fn psi_sym(u: &RationalMatrix) -> Result<RationalMatrix> {
    if !u.is_square() {
        return Err(Error::Parameter("psi_sym needs a square matrix".into()));
    }
    u.transpose().try_mul(u)
}

/// `(I - Lambda)^{-T} Omega (I - Lambda)^{-1}`, with `lambda` listed in the
/// order of `g.directed()`.
pub fn graph_model_point(
    g: &MixedGraph,
    lambda: &[BigRational],
    omega: &RationalMatrix,
) -> Result<RationalMatrix> {
    let m = g.m();
    if lambda.len() != g.directed().len() {
        return Err(Error::Parameter(format!(
            "expected {} edge weights, got {}",
            g.directed().len(),
            lambda.len()
        )));
    }
    if omega.rows() != m || !omega.is_symmetric() {
        return Err(Error::Parameter(
            "omega must be a symmetric m x m matrix".into(),
        ));
    }
    for i in 1..=m {
        for j in i + 1..=m {
            if !omega.get(i, j).is_zero() && !g.has_bidirected(i, j) {
                return Err(Error::Parameter(format!(
                    "omega has a nonzero entry at ({i},{j}) without the edge {i} <-> {j}"
                )));
            }
        }
    }
    let mut i_minus = RationalMatrix::identity(m);
    for (&(i, j), l) in g.directed().iter().zip(lambda) {
        i_minus.set(i, j, -l.clone());
    }
    let inv = i_minus.inverse()?;
    inv.transpose().try_mul(omega)?.try_mul(&inv)
}

#[derive(Clone, Debug, Serialize)]
pub struct BoxCheck {
    pub row: usize,
    pub col: usize,
    pub bound: i32,
    pub rank: usize,
    pub ok: bool,
    pub essential: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub flavor: Flavor,
    pub boxes: Vec<BoxCheck>,
    /// The matrix has the shape the flavor requires (symmetric / upper triangular).
    pub shape_ok: bool,
    pub pass: bool,
    /// Essential boxes whose bound was not attained.
    pub slack_essential: Vec<(usize, usize)>,
}

impl RankReport {
    pub fn failures(&self) -> impl Iterator<Item = &BoxCheck> {
        self.boxes.iter().filter(|b| !b.ok)
    }

    /// Every essential bound holds with equality.
    pub fn generic(&self) -> bool {
        self.slack_essential.is_empty()
    }
}

/// Checks `rank M[1..=i, j..=n] <= R[i][j]` for every box.
pub fn verify_rank_array(m: &RationalMatrix, r: &RankArray, flavor: Flavor) -> Result<RankReport> {
    verify_with_essential(m, r, flavor, &[])
}

/// [`verify_rank_array`] against `R(w)`, also flagging slack essential boxes.
pub fn verify_permutation(
    m: &RationalMatrix,
    w: &Permutation,
    flavor: Flavor,
) -> Result<RankReport> {
    verify_with_essential(m, &RankArray::of_permutation(w), flavor, &essential_set(w))
}

fn verify_with_essential(
    m: &RationalMatrix,
    r: &RankArray,
    flavor: Flavor,
    essential: &[(usize, usize)],
) -> Result<RankReport> {
    let n = r.size();
    if m.rows() != n || m.cols() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: m.rows(),
        });
    }
    let mut boxes = Vec::with_capacity(n * n);
    for i in 1..=n {
        let rows: Vec<usize> = (1..=i).collect();
        for j in 1..=n {
            let cols: Vec<usize> = (j..=n).collect();
            let rank = exact_rank(&m.submatrix(&rows, &cols));
            let bound = r.get(i, j);
            boxes.push(BoxCheck {
                row: i,
                col: j,
                bound,
                rank,
                ok: rank as i64 <= bound as i64,
                essential: essential.contains(&(i, j)),
            });
        }
    }
    let shape_ok = match flavor {
        Flavor::Full => true,
        Flavor::Sym => m.is_symmetric(),
        Flavor::Up => m.is_upper_triangular(),
    };
    let slack_essential = boxes
        .iter()
        .filter(|b| b.essential && b.ok && (b.rank as i64) < b.bound as i64)
        .map(|b| (b.row, b.col))
        .collect();
    Ok(RankReport {
        flavor,
        pass: shape_ok && boxes.iter().all(|b| b.ok),
        shape_ok,
        boxes,
        slack_essential,
    })
}

/// Seeded source of nonzero integers in `[-9, 9]`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn nonzero(&mut self) -> BigRational {
        let mut x = 0;
        while x == 0 {
            x = self.rng.gen_range(-9..=9);
        }
        rational(x)
    }

    pub fn positive(&mut self) -> BigRational {
        rational(self.rng.gen_range(1..=9))
    }

    pub fn nonzero_vec(&mut self, len: usize) -> Vec<BigRational> {
        (0..len).map(|_| self.nonzero()).collect()
    }

    /// Parameters `(a, t)` for [`phi_up`].
    pub fn phi_parameters(&mut self, w: &Permutation) -> (Vec<BigRational>, Vec<BigRational>) {
        let a = self.nonzero_vec(w.size());
        let t = self.nonzero_vec(phi_word(w).len());
        (a, t)
    }

    /// A point of the upper triangular variety of `w`.
    pub fn up_point(&mut self, w: &Permutation) -> RationalMatrix {
        let (a, t) = self.phi_parameters(w);
        phi_up(w, &a, &t).expect("parameter counts match")
    }

    /// A point of the symmetric variety of `w`.
    pub fn sym_point(&mut self, w: &Permutation) -> RationalMatrix {
        psi_sym(&self.up_point(w)).expect("square input")
    }

    /// Edge weights and a diagonally dominant `Omega` supported on `B`.
    pub fn graph_parameters(&mut self, g: &MixedGraph) -> (Vec<BigRational>, RationalMatrix) {
        let m = g.m();
        let lambda = self.nonzero_vec(g.directed().len());
        let mut omega = RationalMatrix::zeros(m, m);
        for &(i, j) in g.bidirected() {
            let v = self.nonzero();
            omega.set(i, j, v.clone());
            omega.set(j, i, v);
        }
        for i in 1..=m {
            let off: BigRational = (1..=m)
                .filter(|&j| j != i)
                .map(|j| omega.get(i, j).abs())
                .fold(BigRational::zero(), |acc, x| acc + x);
            omega.set(i, i, off + self.positive());
        }
        (lambda, omega)
    }

    pub fn graph_point(&mut self, g: &MixedGraph) -> RationalMatrix {
        let (lambda, omega) = self.graph_parameters(g);
        graph_model_point(g, &lambda, &omega).expect("valid model parameters")
    }
}

/// Draws points of the `flavor` variety of `w` until one attains every
/// essential bound, up to `retries` extra draws. Returns the last report.
pub fn sample_generic(
    flavor: Flavor,
    w: &Permutation,
    seed: u64,
    retries: usize,
) -> Result<(RationalMatrix, RankReport)> {
    let mut sampler = Sampler::new(seed);
    let mut last = None;
    for _ in 0..=retries {
        let point = match flavor {
            Flavor::Up => sampler.up_point(w),
            Flavor::Sym => sampler.sym_point(w),
            Flavor::Full => {
                return Err(Error::Parameter(
                    "no Chevalley parametrization for the full flavor".into(),
                ))
            }
        };
        let report = verify_permutation(&point, w, flavor)?;
        let generic = report.generic();
        last = Some((point, report));
        if generic {
            break;
        }
    }
    Ok(last.expect("at least one draw"))
}

/// Rank of the Jacobian of the up (or sym) parametrization of `w` at a
/// sampled point: a lower bound for the dimension of the variety, attained
/// at generic points.
pub fn tangent_rank(flavor: Flavor, w: &Permutation, sampler: &mut Sampler) -> Result<usize> {
    let n = w.size();
    let word = phi_word(w);
    let (a, t) = sampler.phi_parameters(w);
    let factors: Vec<RationalMatrix> = word
        .iter()
        .zip(&t)
        .rev()
        .map(|(&i, ti)| chevalley(i, ti, n))
        .collect::<Result<_>>()?;
    let product = |mats: &[RationalMatrix]| {
        mats.iter()
            .fold(RationalMatrix::identity(n), |acc, m| &acc * m)
    };
    let diag = RationalMatrix::diagonal(&a);
    let tail = product(&factors);
    let u = &diag * &tail;

    // each parameter enters exactly one factor, and affinely
    let mut partials = Vec::with_capacity(n + word.len());
    for i in 1..=n {
        let mut e = RationalMatrix::zeros(n, n);
        e.set(i, i, BigRational::one());
        partials.push(&e * &tail);
    }
    for k in 0..factors.len() {
        let mut d = factors.clone();
        let i = word[word.len() - 1 - k];
        let mut e = RationalMatrix::zeros(n, n);
        e.set(i, i + 1, BigRational::one());
        d[k] = e;
        partials.push(&diag * &product(&d));
    }
    let partials: Vec<RationalMatrix> = match flavor {
        Flavor::Up => partials,
        Flavor::Sym => partials
            .iter()
            .map(|du| {
                let left = &du.transpose() * &u;
                let right = &u.transpose() * du;
                let mut s = RationalMatrix::zeros(n, n);
                for i in 1..=n {
                    for j in 1..=n {
                        s.set(i, j, left.get(i, j) + right.get(i, j));
                    }
                }
                s
            })
            .collect(),
        Flavor::Full => {
            return Err(Error::Parameter(
                "no Chevalley parametrization for the full flavor".into(),
            ))
        }
    };
    // coordinates on the upper triangle, shared by both flavors
    let coords: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
    let mut jac = RationalMatrix::zeros(partials.len(), coords.len());
    for (r, d) in partials.iter().enumerate() {
        for (c, &(i, j)) in coords.iter().enumerate() {
            jac.set(r + 1, c + 1, d.get(i, j).clone());
        }
    }
    Ok(exact_rank(&jac))
}
