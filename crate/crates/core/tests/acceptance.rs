//! Runs the ten acceptance criteria and prints one PASS/FAIL line for each.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_core::ci::{ci_to_perm, decompose_ci, parse_statements, perm_to_ci, rank_condition};
use schubert_core::enumerate::{
    brute_count, gn_count, gn_covering, seidel, sigma_count, x_count, y_count,
};
use schubert_core::gaussian_graph::{
    min_tsep_rank, t_separates, t_separates_by_reachability, vanishing_ideal,
};
use schubert_core::param::{exact_rank, verify_permutation, Sampler};
use schubert_core::perm::{bruhat_leq, bruhat_leq_oracle, contains_pattern, minimal_upper_bounds};
use schubert_core::rank_array::primary_decomposition;
use schubert_core::schubert::{
    decompose_sum, defined_by_inclusions, defined_by_inclusions_essential, essential_box_type,
    essential_boxes, extend_sym, split_by_essential_boxes, BoxType,
};
use schubert_core::{CIStatement, Flavor, MixedGraph, Permutation, RankArray, Regime};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn perms(list: &[&str]) -> Vec<Permutation> {
    list.iter().map(|s| p(s)).collect()
}

fn ci(n: usize, a: &[usize], b: &[usize], c: &[usize]) -> CIStatement {
    CIStatement::new(n, a.to_vec(), b.to_vec(), c.to_vec()).unwrap()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same<T: Ord + Clone + std::fmt::Debug>(got: &[T], want: &[T], what: &str) -> Outcome {
    let (g, w): (BTreeSet<_>, BTreeSet<_>) = (
        got.iter().cloned().collect(),
        want.iter().cloned().collect(),
    );
    check(g == w && got.len() == want.len(), || {
        format!("{what}: got {got:?}, expected {want:?}")
    })
}

fn rendering_of(w: &Permutation) -> Result<Vec<CIStatement>, String> {
    split_by_essential_boxes(w)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|piece| perm_to_ci(piece).ok_or_else(|| format!("{piece} has no CI rendering")))
        .collect()
}

fn criterion_1() -> Outcome {
    let statements = parse_statements("1 _||_ 3; 1 _||_ 3 | 2", 3).map_err(|e| e.to_string())?;
    let comps = decompose_ci(&statements).map_err(|e| e.to_string())?;
    let got: Vec<_> = comps.iter().map(|c| c.permutation.clone()).collect();
    same(&got, &perms(&["312", "231"]), "components")?;
    let mut renderings = Vec::new();
    for c in &comps {
        let r = c
            .rendering
            .clone()
            .ok_or(format!("{} not rendered", c.permutation))?;
        renderings.extend(r);
    }
    same(
        &renderings,
        &[ci(3, &[1], &[2, 3], &[]), ci(3, &[1, 2], &[3], &[])],
        "renderings",
    )
}

fn criterion_2() -> Outcome {
    let got = decompose_sum(Flavor::Sym, &perms(&["15234", "13452", "31245"]))
        .map_err(|e| e.to_string())?;
    same(&got, &perms(&["35142", "51342"]), "components")?;
    same(
        &rendering_of(&p("35142"))?,
        &[
            ci(5, &[1, 2], &[4, 5], &[]),
            ci(5, &[1], &[3, 4, 5], &[2]),
            ci(5, &[1, 2, 3], &[5], &[4]),
        ],
        "35142",
    )?;
    same(
        &rendering_of(&p("51342"))?,
        &[
            ci(5, &[1], &[2, 3, 4, 5], &[]),
            ci(5, &[1, 2, 3], &[5], &[4]),
        ],
        "51342",
    )
}

fn criterion_3() -> Outcome {
    let got =
        decompose_sum(Flavor::Sym, &perms(&["341256", "125634"])).map_err(|e| e.to_string())?;
    same(&got, &perms(&["345612", "561234", "351624"]), "components")?;
    same(
        &rendering_of(&p("345612"))?,
        &[ci(6, &[1, 2, 3, 4], &[5, 6], &[])],
        "345612",
    )?;
    same(
        &rendering_of(&p("561234"))?,
        &[ci(6, &[1, 2], &[3, 4, 5, 6], &[])],
        "561234",
    )?;
    let weird = p("351624");
    check(!defined_by_inclusions(&weird), || {
        "351624 reported as defined by inclusions".into()
    })?;
    check(split_by_essential_boxes(&weird).is_err(), || {
        "351624 was split into CI pieces".into()
    })?;
    let statements: Vec<CIStatement> = perms(&["341256", "125634"])
        .iter()
        .map(|w| perm_to_ci(w).ok_or(format!("{w} is not a CI permutation")))
        .collect::<Result<_, _>>()?;
    let comps = decompose_ci(&statements).map_err(|e| e.to_string())?;
    let flagged = comps
        .iter()
        .find(|c| c.permutation == weird)
        .ok_or("351624 missing from the CI pipeline")?;
    check(flagged.rendering.is_none(), || {
        "351624 was rendered as CI statements".into()
    })?;
    check(contains_pattern(&weird, &p("31524")), || {
        "351624 should contain 31524".into()
    })
}

fn hex(rows: [[i32; 8]; 8]) -> RankArray {
    RankArray::new(rows.iter().map(|r| r.to_vec()).collect(), Regime::Hexagonal).unwrap()
}

fn criterion_4() -> Outcome {
    let r = hex([
        [1, 1, 1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 1, 1, 1, 1],
        [3, 3, 3, 2, 2, 1, 1, 1],
        [4, 4, 3, 2, 2, 1, 1, 1],
        [5, 5, 4, 3, 3, 2, 2, 1],
        [6, 6, 5, 4, 3, 3, 2, 1],
        [7, 7, 6, 5, 4, 3, 2, 1],
        [8, 7, 6, 5, 4, 3, 2, 1],
    ]);
    let r1 = hex([
        [1, 1, 1, 1, 1, 1, 1, 1],
        [2, 2, 2, 1, 1, 1, 1, 1],
        [3, 3, 3, 2, 2, 1, 1, 1],
        [4, 4, 3, 2, 2, 1, 1, 1],
        [5, 5, 4, 3, 3, 2, 2, 1],
        [6, 6, 5, 4, 3, 2, 2, 1],
        [7, 7, 6, 5, 4, 3, 2, 1],
        [8, 7, 6, 5, 4, 3, 2, 1],
    ]);
    let r4 = hex([
        [1, 1, 1, 1, 1, 1, 1, 1],
        [2, 2, 2, 2, 1, 1, 1, 1],
        [3, 3, 3, 2, 1, 1, 1, 1],
        [4, 4, 3, 2, 1, 1, 1, 1],
        [5, 5, 4, 3, 2, 2, 2, 1],
        [6, 6, 5, 4, 3, 3, 2, 1],
        [7, 7, 6, 5, 4, 3, 2, 1],
        [8, 7, 6, 5, 4, 3, 2, 1],
    ]);
    let d = primary_decomposition(&r, true).map_err(|e| e.to_string())?;
    same(
        &d.components,
        &perms(&["16472538", "15672348"]),
        "components",
    )?;
    check(d.leaves.contains(&r1), || "R_1 is not a leaf".into())?;
    check(d.leaves.contains(&r4), || "R_4 is not a leaf".into())
}

fn criterion_5() -> Outcome {
    let chain = MixedGraph::new(5, [(1, 2), (2, 3), (3, 4), (4, 5), (1, 3), (2, 4)], [])
        .map_err(|e| e.to_string())?;
    let got = vanishing_ideal(&chain)
        .map_err(|e| e.to_string())?
        .ideal
        .generators;
    let want = vec![
        rank_condition(&ci(5, &[1, 2, 3], &[5], &[4])),
        rank_condition(&ci(5, &[1], &[4, 5], &[2, 3])),
    ];
    same(&got, &want, "five-vertex chain")?;
    let mixed = MixedGraph::new(4, [(1, 2), (1, 3), (2, 3), (3, 4)], [(3, 4)])
        .map_err(|e| e.to_string())?;
    let got = vanishing_ideal(&mixed)
        .map_err(|e| e.to_string())?
        .ideal
        .generators;
    let want = schubert_core::MinorSpec {
        rows: vec![1, 2],
        cols: vec![3, 4],
        size: 2,
    };
    same(&got, &[want], "four-vertex mixed graph")
}

fn criterion_6() -> Outcome {
    let t = seidel(6);
    for (n, want) in [(1usize, 2u64), (2, 8), (3, 56)] {
        check(
            y_count(n) == want.into() && t.get(2 * n, 1) == want.into(),
            || format!("y({n}) != {want}"),
        )?;
        let brute = brute_count(Flavor::Up, n).map_err(|e| e.to_string())?;
        check(brute == want.into(), || {
            format!("brute_count(up, {n}) = {brute}")
        })?;
    }
    for n in 1..=3 {
        let full = brute_count(Flavor::Full, n).map_err(|e| e.to_string())?;
        check(full == x_count(n), || {
            format!("x({n}) = {} but brute force gives {full}", x_count(n))
        })?;
        let sym = brute_count(Flavor::Sym, n).map_err(|e| e.to_string())?;
        check(sym == sigma_count(n), || {
            format!(
                "sigma({n}) = {} but brute force gives {sym}",
                sigma_count(n)
            )
        })?;
    }
    let g2 = gn_count(2).map_err(|e| e.to_string())?;
    check(g2 == 8u32.into(), || format!("|G(2)| = {g2}"))?;
    let refined = gn_covering(2, 2).map_err(|e| e.to_string())?;
    check(refined == 6u32.into(), || {
        format!("refined |G(2)| = {refined}")
    })
}

fn type_c_square(n: usize) -> Vec<Permutation> {
    Permutation::all(2 * n)
        .filter(|v| v.is_type_c() && v.in_square_interval().unwrap())
        .collect()
}

fn criterion_7() -> Outcome {
    for n in 1..=5 {
        let all: Vec<_> = Permutation::all(n).collect();
        for v in &all {
            for w in &all {
                let (fast, slow) = (bruhat_leq(v, w).unwrap(), bruhat_leq_oracle(v, w).unwrap());
                check(fast == slow, || {
                    format!("bruhat_leq({v}, {w}) = {fast}, oracle {slow}")
                })?;
            }
        }
    }
    let s4: Vec<_> = Permutation::all(4).collect();
    for v in &s4 {
        for w in &s4 {
            let pair = [v.clone(), w.clone()];
            let got = decompose_sum(Flavor::Full, &pair).map_err(|e| e.to_string())?;
            let want = minimal_upper_bounds(&pair, None).map_err(|e| e.to_string())?;
            check(got == want, || {
                format!("full {v} + {w}: {got:?} vs {want:?}")
            })?;
        }
    }
    let s3: Vec<_> = Permutation::all(3).collect();
    let cands = type_c_square(3);
    for v in &s3 {
        for w in &s3 {
            let got =
                decompose_sum(Flavor::Sym, &[v.clone(), w.clone()]).map_err(|e| e.to_string())?;
            let extended: BTreeSet<_> = got.iter().map(extend_sym).collect();
            let inputs = [extend_sym(v), extend_sym(w)];
            let above: Vec<_> = cands
                .iter()
                .filter(|u| inputs.iter().all(|x| bruhat_leq(x, u).unwrap()))
                .collect();
            let want: BTreeSet<Permutation> = above
                .iter()
                .filter(|u| !above.iter().any(|x| x != *u && bruhat_leq(x, u).unwrap()))
                .map(|u| (*u).clone())
                .collect();
            check(extended == want, || {
                format!("sym {v} + {w}: {extended:?} vs {want:?}")
            })?;
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    for w in Permutation::all(5) {
        let boxes = essential_boxes(&w);
        let singleton = match boxes[..] {
            [b] => {
                let (i, j) = (b.row, b.col);
                match essential_box_type(&w, (i, j)) {
                    Ok(BoxType::Type1) => i < j && b.rank == 0,
                    Ok(BoxType::Type2) => i >= j && j > 1 && i < 5 && b.rank == i + 1 - j,
                    Err(_) => false,
                }
            }
            _ => false,
        };
        let present = perm_to_ci(&w).is_some();
        check(present == singleton, || {
            format!("{w}: perm_to_ci present = {present}, criterion = {singleton}")
        })?;
        if let Some(s) = perm_to_ci(&w) {
            check(ci_to_perm(&s).ok() == Some(w.clone()), || {
                format!("{w}: {s} does not map back")
            })?;
        }
    }
    for w in Permutation::all(6) {
        let (pattern, essential) = (
            defined_by_inclusions(&w),
            defined_by_inclusions_essential(&w),
        );
        check(pattern == essential, || {
            format!("{w}: pattern test {pattern}, essential test {essential}")
        })?;
    }
    Ok(())
}

fn criterion_9() -> Outcome {
    let mut sampler = Sampler::new(9);
    for w in Permutation::all(4) {
        for flavor in [Flavor::Up, Flavor::Sym] {
            let mut generic = false;
            for _ in 0..20 {
                let point = match flavor {
                    Flavor::Up => sampler.up_point(&w),
                    _ => sampler.sym_point(&w),
                };
                let report = verify_permutation(&point, &w, flavor).map_err(|e| e.to_string())?;
                check(report.pass, || format!("{flavor} {w}: rank bound violated"))?;
                generic |= report.generic();
            }
            check(generic, || {
                format!("{flavor} {w}: no sample attains every essential rank")
            })?;
        }
    }
    Ok(())
}

fn random_subset(rng: &mut ChaCha8Rng, m: usize, nonempty: bool) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (1..=m).filter(|_| rng.gen_bool(0.4)).collect();
        if !nonempty || !s.is_empty() {
            return s;
        }
    }
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for round in 0..200 {
        let m = rng.gen_range(2..=6);
        let mut directed = Vec::new();
        let mut bidirected = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                if rng.gen_bool(0.4) {
                    directed.push((i, j));
                }
                if rng.gen_bool(0.2) {
                    bidirected.push((i, j));
                }
            }
        }
        let g = MixedGraph::new(m, directed, bidirected).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let sets: Vec<_> = (0..4).map(|k| random_subset(&mut rng, m, k < 2)).collect();
            let a = t_separates(&g, &sets[0], &sets[1], &sets[2], &sets[3]);
            let b = t_separates_by_reachability(&g, &sets[0], &sets[1], &sets[2], &sets[3]);
            check(a == b, || {
                format!("graph {round}: trek test {a}, reachability test {b}")
            })?;
        }
        let (a1, a2) = (
            random_subset(&mut rng, m, true),
            random_subset(&mut rng, m, true),
        );
        let bound = min_tsep_rank(&g, &a1, &a2).map_err(|e| e.to_string())?;
        let mut sampler = Sampler::new(round);
        for _ in 0..20 {
            let sigma = sampler.graph_point(&g);
            let r = exact_rank(&sigma.submatrix(&a1, &a2));
            check(r <= bound, || {
                format!("graph {round}: rank {r} above t-separation bound {bound}")
            })?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("elementary CI decomposition", criterion_1, 1),
        ("five-variable symmetric sum", criterion_2, 1),
        ("sum with a non-CI component", criterion_3, 5),
        ("8x8 type C rank array", criterion_4, 1),
        ("generalized Markov chain ideals", criterion_5, 5),
        ("enumeration", criterion_6, 30),
        ("oracle equivalence", criterion_7, 120),
        ("classification", criterion_8, 120),
        ("parametrization containment", criterion_9, 120),
        ("trek separation", criterion_10, 300),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            check(elapsed <= Duration::from_secs(*limit), || {
                format!("took {elapsed:.2?}, limit {limit} s")
            })
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
