//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test --test acceptance -- --nocapture`).
//! Every tolerance and runtime budget is pinned here.

use nmbound_core::*;
use num::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn report(criterion: usize, ok: bool, budget: Duration, start: Instant, detail: &str) {
    let elapsed = start.elapsed();
    let within = elapsed <= budget;
    let verdict = if ok && within { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion}: {verdict} — {detail} ({} ms, budget {} ms)",
        elapsed.as_millis(),
        budget.as_millis()
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
    assert!(
        within,
        "criterion {criterion} exceeded its runtime budget: {} ms > {} ms",
        elapsed.as_millis(),
        budget.as_millis()
    );
}

#[test]
fn criterion_1_n5_witness() {
    let start = Instant::now();
    let p = Theorem2Params::new(5, [1, 1, 1, 0, 0]).unwrap();
    let family = theorem2_family(&p).unwrap();
    let wf = quotient_family(&family).unwrap();
    let targets = enumerate_minimal_transversals(wf.family()).unwrap();
    let solve =
        solve_exact_min_weighted_cover(&targets, &wf.weight_table(), 3, &Default::default())
            .unwrap();
    let value_ok = solve.value == CoverValue::finite_u64(13);

    let lifted = lift_cover(solve.cover.as_ref().unwrap(), &wf).unwrap();
    let full_targets = enumerate_minimal_transversals(&family).unwrap();
    let lift_ok = lifted.len() == 13 && verify_cover(&lifted, &full_targets);

    report(
        1,
        value_ok && lift_ok,
        Duration::from_secs(5),
        start,
        &format!("exact quotient value {}; lifted cover of {} edges verifies", solve.value, lifted.len()),
    );
}

#[test]
fn criterion_2_n6_witness() {
    let start = Instant::now();
    let p = Theorem2Params::new(6, [1, 1, 0, 1, 1]).unwrap();
    let family = theorem2_family(&p).unwrap();
    let wf = quotient_family(&family).unwrap();

    let (_, greedy_value) = greedy_track_peel_cover(&wf).unwrap();
    let greedy_ok = greedy_value == CoverValue::finite_u64(123);

    let targets = enumerate_minimal_transversals(wf.family()).unwrap();
    let exact =
        solve_exact_min_weighted_cover(&targets, &wf.weight_table(), 4, &Default::default())
            .unwrap();
    let exact_value = exact.value.as_finite().unwrap().clone();
    let exact_ok = exact_value <= BigUint::from(123u32);

    let poly = theorem2_value(
        &AlphaVector::new([
            rational(1, 4),
            rational(1, 4),
            rational(0, 1),
            rational(1, 4),
            rational(1, 4),
        ])
        .unwrap(),
    );
    let poly_ok = poly == rational(123, 256);

    report(
        2,
        greedy_ok && exact_ok && poly_ok,
        Duration::from_secs(60),
        start,
        &format!("greedy {greedy_value}; exact {exact_value} <= 123 ({} nodes); polynomial 123/256", exact.nodes_explored),
    );
}

#[test]
fn criterion_3_polynomial_anchors() {
    let start = Instant::now();
    let full = theorem2_value(
        &AlphaVector::new([
            rational(1, 3),
            rational(1, 3),
            rational(1, 3),
            rational(0, 1),
            rational(0, 1),
        ])
        .unwrap(),
    );
    let reduced = theorem2_reduced_value(&rational(0, 1), &rational(0, 1)).unwrap();
    let ok = full == rational(13, 27) && reduced == rational(13, 27);
    report(3, ok, Duration::from_secs(5), start, &format!("full {full}; reduced {reduced}; both 13/27"));
}

#[test]
fn criterion_4_optimizer() {
    let start = Instant::now();
    let r = optimize_theorem2(OptimizeMode::Reduced, 0.005, 1e-8).unwrap();
    let value_ok = (r.value - 0.4642).abs() <= 5e-4;
    let a4_ok = (r.alpha[3] - 0.1969).abs() <= 2e-3;
    let a5_ok = (r.alpha[4] - 0.2123).abs() <= 2e-3;
    report(
        4,
        value_ok && a4_ok && a5_ok,
        Duration::from_secs(10),
        start,
        &format!("min {:.6} at (a4, a5) = ({:.4}, {:.4})", r.value, r.alpha[3], r.alpha[4]),
    );
}

#[test]
fn criterion_5_theorem1_lift() {
    let start = Instant::now();
    let base = ListFamily::new(&[vec![1, 2], vec![3, 4], vec![1, 3], vec![2, 4]]).unwrap();
    let wf = quotient_family(&base).unwrap();
    let targets = enumerate_minimal_transversals(wf.family()).unwrap();
    let solve =
        solve_exact_min_weighted_cover(&targets, &wf.weight_table(), 2, &Default::default())
            .unwrap();
    let base_ok = solve.value == CoverValue::finite_u64(2);

    let lifted_family = theorem1_lift(&base, 2).unwrap();
    let shape_ok = lifted_family.len() == 6 && lifted_family.uniform_list_size() == Some(4);

    let lifted_weighted = theorem1_lift_cover(solve.cover.as_ref().unwrap(), &base, 2).unwrap();
    let lwf = quotient_family(&lifted_family).unwrap();
    let value = weighted_value(&lifted_weighted, &lwf).unwrap();
    let value_ok = value == BigUint::from(128u32); // (1/2) * 4^4

    let expanded = lift_cover(&lifted_weighted, &lwf).unwrap();
    let full_targets = enumerate_minimal_transversals(&lifted_family).unwrap();
    let verify_ok = expanded.len() == 128 && verify_cover(&expanded, &full_targets);

    report(
        5,
        base_ok && shape_ok && value_ok && verify_ok,
        Duration::from_secs(30),
        start,
        &format!("base value {}; lifted m'=6 cover value {value} = (1/2)*4^4, verifies", solve.value),
    );
}

#[test]
fn criterion_6_theorem3() {
    let start = Instant::now();
    let p = Theorem3Params::new(6, 2, 1).unwrap();
    let cover = theorem3_cover(&p).unwrap();
    let value = theorem3_value(6, 2, 1).unwrap();
    let family = theorem3_family(&p).unwrap();
    let targets = enumerate_minimal_transversals(&family).unwrap();
    let cover_ok = cover.len() == 163
        && value == BigUint::from(163u32)
        && verify_cover(&cover, &targets);

    let mut argmin_ok = true;
    for (m, k) in [(10u64, 2u64), (20, 2)] {
        let formula = theorem3_optimal_l(m, k).unwrap();
        let scan = (0..=(m - 2 - k))
            .min_by_key(|&l| theorem3_value(m, k, l).unwrap())
            .unwrap();
        argmin_ok &= formula == scan;
    }

    let opt_l = theorem3_optimal_l(500, 2).unwrap();
    let big_value = theorem3_value(500, 2, opt_l).unwrap();
    let denom = BigUint::from(498u32).pow(498);
    let ratio = big_ratio_to_f64(&big_value, &denom);
    let coef = asymptotic_coefficient();
    let asym_ok = (ratio - coef).abs() <= 0.002;

    report(
        6,
        cover_ok && argmin_ok && asym_ok,
        Duration::from_secs(30),
        start,
        &format!("cover 163 verifies; optimal-l argmins match; ratio at m=500 is {ratio:.6} vs {coef:.6}"),
    );
}

#[test]
fn criterion_7_coloring_equivalence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut disagreements = 0usize;
    let trials = 250;
    for _ in 0..trials {
        let colors = rng.gen_range(4..=8u32);
        let m = rng.gen_range(1..=4usize);
        let n = rng.gen_range(0..=6usize);
        let pick_list = |rng: &mut ChaCha8Rng| -> Vec<u32> {
            let size = rng.gen_range(2..=3usize).min(colors as usize);
            let mut set = BTreeSet::new();
            while set.len() < size {
                set.insert(rng.gen_range(0..colors));
            }
            set.into_iter().collect()
        };
        let m_lists: Vec<Vec<u32>> = (0..m).map(|_| pick_list(&mut rng)).collect();
        let n_lists: Vec<Vec<u32>> = (0..n).map(|_| pick_list(&mut rng)).collect();
        let a = Assignment::from_lists(&m_lists, &n_lists).unwrap();
        let colorable = find_proper_coloring(&a).is_some();
        let bad = is_bad_assignment_via_transversals(&a);
        if colorable == bad {
            disagreements += 1;
        }
    }
    report(
        7,
        disagreements == 0,
        Duration::from_secs(10),
        start,
        &format!("{trials} random assignments, {disagreements} disagreements between the two criteria"),
    );
}

/// Random family with at least one forced duplicate membership pattern:
/// classes with sizes 1..=3 and random non-empty list patterns, subject to
/// list sizes in 1..=3 and at most 12 colors.
fn random_class_family(rng: &mut ChaCha8Rng) -> ListFamily {
    loop {
        let m = rng.gen_range(2..=5usize);
        let class_count = rng.gen_range(2..=5usize);
        let mut sizes: Vec<usize> = (0..class_count).map(|_| rng.gen_range(1..=3usize)).collect();
        if sizes.iter().all(|&s| s == 1) {
            sizes[0] = rng.gen_range(2..=3);
        }
        let patterns: Vec<Vec<usize>> = (0..class_count)
            .map(|_| {
                let mut p: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
                if p.is_empty() {
                    p.push(rng.gen_range(0..m));
                }
                p
            })
            .collect();
        if sizes.iter().sum::<usize>() > 12 {
            continue;
        }
        let mut lists: Vec<Vec<u32>> = vec![Vec::new(); m];
        let mut next = 0u32;
        for (size, pattern) in sizes.iter().zip(&patterns) {
            let members: Vec<u32> = (next..next + *size as u32).collect();
            next += *size as u32;
            for &li in pattern {
                lists[li].extend(&members);
            }
        }
        if lists.iter().any(|l| l.is_empty() || l.len() > 3) {
            continue;
        }
        return ListFamily::new(&lists).unwrap();
    }
}

#[test]
fn criterion_8_quotient_value_preservation() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(81);
    let mut finite_checked = 0usize;
    let mut total = 0usize;
    while total < 120 {
        let family = random_class_family(&mut rng);
        let k = rng.gen_range(1..=3usize);
        total += 1;

        let full_targets = enumerate_minimal_transversals(&family).unwrap();
        let unit = vec![1u64; family.vertex_count().max(1)];
        let full =
            solve_exact_min_weighted_cover(&full_targets, &unit, k, &Default::default()).unwrap();

        let wf = quotient_family(&family).unwrap();
        let q_targets = enumerate_minimal_transversals(wf.family()).unwrap();
        let quotient =
            solve_exact_min_weighted_cover(&q_targets, &wf.weight_table(), k, &Default::default())
                .unwrap();

        match (&full.value, &quotient.value) {
            (CoverValue::Infinite, CoverValue::Infinite) => {}
            (CoverValue::Finite(a), CoverValue::Finite(b)) => {
                assert_eq!(a, b, "value preservation failed for {family:?}, k={k}");
                let lifted = lift_cover(quotient.cover.as_ref().unwrap(), &wf).unwrap();
                assert_eq!(BigUint::from(lifted.len() as u64), *b);
                assert!(verify_cover(&lifted, &full_targets), "lift must cover the full targets");
                finite_checked += 1;
            }
            (a, b) => panic!("finiteness disagreement: full {a:?} vs quotient {b:?}"),
        }
    }
    report(
        8,
        finite_checked >= 40,
        Duration::from_secs(60),
        start,
        &format!("{total} random duplicated-pattern families; {finite_checked} finite instances all preserved under the quotient"),
    );
}

/// Independent minimal-transversal oracle over all subsets of the union.
fn subset_oracle(lists: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let union: Vec<u32> = lists
        .iter()
        .flatten()
        .copied()
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .collect();
    let n = union.len();
    let mut transversals: Vec<BTreeSet<u32>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: BTreeSet<u32> = union
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        if lists
            .iter()
            .all(|l| l.iter().any(|c| subset.contains(c)))
        {
            transversals.push(subset);
        }
    }
    let mut minimal: Vec<Vec<u32>> = transversals
        .iter()
        .filter(|t| !transversals.iter().any(|o| *o != **t && o.is_subset(t)))
        .map(|t| t.iter().copied().collect())
        .collect();
    minimal.sort();
    minimal.dedup();
    minimal
}

#[test]
fn criterion_9_solver_and_enumeration_exactness() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);

    // exact vs oracle on random weighted instances with <= 24 candidates
    let mut solver_checked = 0usize;
    while solver_checked < 100 {
        let edge_count = rng.gen_range(1..=5usize);
        let edges: Vec<ColorSet> = (0..edge_count)
            .map(|_| {
                let size = rng.gen_range(1..=4usize);
                let mut set = BTreeSet::new();
                while set.len() < size {
                    set.insert(rng.gen_range(0..8u32));
                }
                set.into_iter().collect()
            })
            .collect();
        let targets = minimal_edges(&Hypergraph::new(8, edges).unwrap());
        let k = rng.gen_range(1..=3usize);
        let (cands, _) = candidate_edges(&targets, k).unwrap();
        if cands.len() > DEFAULT_ORACLE_CAP {
            continue;
        }
        let weights: Vec<u64> = (0..8).map(|_| rng.gen_range(1..=4u64)).collect();
        let exact =
            solve_exact_min_weighted_cover(&targets, &weights, k, &Default::default()).unwrap();
        let oracle = brute_force_min_cover(&targets, &weights, k, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(exact.value, oracle.value, "solver mismatch on {targets:?}, k={k}");
        solver_checked += 1;
    }

    // enumeration vs subset brute force on random families with <= 10 colors
    let mut enum_checked = 0usize;
    while enum_checked < 50 {
        let m = rng.gen_range(1..=5usize);
        let lists: Vec<Vec<u32>> = (0..m)
            .map(|_| {
                let size = rng.gen_range(1..=4usize);
                let mut set = BTreeSet::new();
                while set.len() < size {
                    set.insert(rng.gen_range(0..10u32));
                }
                set.into_iter().collect()
            })
            .collect();
        let family = ListFamily::new(&lists).unwrap();
        let ours: Vec<Vec<u32>> = enumerate_minimal_transversals(&family)
            .unwrap()
            .edges()
            .iter()
            .map(|e| e.to_vec())
            .collect();
        let mut ours_sorted = ours.clone();
        ours_sorted.sort();
        assert_eq!(ours_sorted, subset_oracle(&lists), "enumeration mismatch on {lists:?}");
        enum_checked += 1;
    }

    report(
        9,
        solver_checked == 100 && enum_checked == 50,
        Duration::from_secs(60),
        start,
        &format!("{solver_checked} solver instances and {enum_checked} enumeration families all agree with the oracles"),
    );
}
