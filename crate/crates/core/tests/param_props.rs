use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use schubert_core::param::{exact_rank, psi_sym, verify_permutation, RationalMatrix, Sampler};
use schubert_core::{Flavor, Permutation};

fn determinant(m: &RationalMatrix) -> BigRational {
    let n = m.rows();
    if n == 0 {
        return BigRational::from_integer(1.into());
    }
    let mut total = BigRational::zero();
    for c in 1..=n {
        let rows: Vec<usize> = (2..=n).collect();
        let cols: Vec<usize> = (1..=n).filter(|&k| k != c).collect();
        let term = m.get(1, c) * determinant(&m.submatrix(&rows, &cols));
        if c % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect()
}

/// Largest `k` with a nonzero `k x k` minor.
fn minor_rank(m: &RationalMatrix) -> usize {
    (1..=m.rows().min(m.cols()))
        .rev()
        .find(|&k| {
            subsets(m.rows(), k).iter().any(|r| {
                subsets(m.cols(), k)
                    .iter()
                    .any(|c| !determinant(&m.submatrix(r, c)).is_zero())
            })
        })
        .unwrap_or(0)
}

fn rational_matrix() -> impl Strategy<Value = RationalMatrix> {
    // few distinct values, so that rank drops are common
    proptest::collection::vec((-2i64..=2, 1i64..=3), 16).prop_map(|v| {
        let mut m = RationalMatrix::zeros(4, 4);
        for (k, (p, q)) in v.into_iter().enumerate() {
            m.set(k / 4 + 1, k % 4 + 1, BigRational::new(p.into(), q.into()));
        }
        m
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn exact_rank_matches_minors(m in rational_matrix()) {
        prop_assert_eq!(exact_rank(&m), minor_rank(&m));
        prop_assert_eq!(exact_rank(&m.transpose()), exact_rank(&m));
    }

    #[test]
    fn exact_rank_of_products(m in rational_matrix()) {
        let r = exact_rank(&m);
        prop_assert_eq!(exact_rank(&psi_sym(&m).unwrap()), r);
    }
}

#[test]
fn samples_lie_on_their_varieties() {
    let mut sampler = Sampler::new(2024);
    for n in 1..=5 {
        for w in Permutation::all(n) {
            for flavor in [Flavor::Up, Flavor::Sym] {
                let mut generic = false;
                for _ in 0..20 {
                    let point = match flavor {
                        Flavor::Up => sampler.up_point(&w),
                        _ => sampler.sym_point(&w),
                    };
                    let report = verify_permutation(&point, &w, flavor).unwrap();
                    assert!(
                        report.pass,
                        "{flavor} {w}: {:?}",
                        report.failures().collect::<Vec<_>>()
                    );
                    generic |= report.generic();
                }
                assert!(
                    generic,
                    "{flavor} {w}: no sample attained the essential ranks"
                );
            }
        }
    }
}
