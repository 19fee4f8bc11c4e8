//! Property suites: enumeration against a subset brute force, quotient
//! value preservation, solver exactness against the oracle, polynomial
//! against the peel construction, and the coloring criteria against each
//! other.

use nmbound_core::*;
use num::{BigRational, BigUint};
use proptest::prelude::*;
use std::collections::BTreeSet;

// ---------------------------------------------------------------------------
// independent oracles (kept free of the library's enumeration internals)
// ---------------------------------------------------------------------------

/// All inclusion-minimal transversals by checking every subset of the
/// color union; usable up to ~10 colors.
fn brute_minimal_transversals(lists: &[BTreeSet<u32>]) -> Vec<BTreeSet<u32>> {
    let union: Vec<u32> = lists
        .iter()
        .flat_map(|l| l.iter().copied())
        .collect::<BTreeSet<u32>>()
        .into_iter()
        .collect();
    let n = union.len();
    assert!(n <= 16, "oracle limited to small color counts");
    let mut transversals: Vec<BTreeSet<u32>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let subset: BTreeSet<u32> = union
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &c)| c)
            .collect();
        if lists.iter().all(|l| l.intersection(&subset).next().is_some()) {
            transversals.push(subset);
        }
    }
    let mut minimal: Vec<BTreeSet<u32>> = Vec::new();
    for t in &transversals {
        if !transversals.iter().any(|o| o != t && o.is_subset(t)) {
            minimal.push(t.clone());
        }
    }
    minimal.sort_by_key(|s| s.iter().copied().collect::<Vec<_>>());
    minimal
}

fn to_family(lists: &[BTreeSet<u32>]) -> ListFamily {
    let raw: Vec<Vec<u32>> = lists.iter().map(|l| l.iter().copied().collect()).collect();
    ListFamily::new(&raw).unwrap()
}

fn edge_btree(e: ColorSet) -> BTreeSet<u32> {
    e.iter().collect()
}

fn family_strategy(
    max_lists: usize,
    max_colors: u32,
    max_list: usize,
) -> impl Strategy<Value = Vec<BTreeSet<u32>>> {
    prop::collection::vec(
        prop::collection::btree_set(0..max_colors, 1..=max_list),
        1..=max_lists,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn enumeration_matches_subset_brute_force(lists in family_strategy(4, 8, 3)) {
        let family = to_family(&lists);
        let ours = enumerate_minimal_transversals(&family).unwrap();
        let ours: Vec<BTreeSet<u32>> = ours.edges().iter().map(|e| edge_btree(*e)).collect();
        let oracle = brute_minimal_transversals(&lists);
        prop_assert_eq!(ours, oracle);
    }

    #[test]
    fn enumeration_invariants(lists in family_strategy(5, 9, 3)) {
        let family = to_family(&lists);
        let h = enumerate_minimal_transversals(&family).unwrap();
        // antichain
        prop_assert!(h.is_antichain());
        // soundness: every edge is a transversal
        for e in h.edges() {
            prop_assert!(is_transversal(*e, &family).unwrap());
        }
        // completeness: every track support contains some edge
        for sup in family.track_supports() {
            prop_assert!(h.edges().iter().any(|e| e.is_subset(sup)));
        }
        // determinism
        let again = enumerate_minimal_transversals(&family).unwrap();
        prop_assert_eq!(&again, &h);
    }

    #[test]
    fn minimal_edges_invariants(raw in prop::collection::vec(
        prop::collection::btree_set(0u32..8, 1..=4), 1..=6))
    {
        let edges: Vec<ColorSet> = raw.iter().map(|s| s.iter().copied().collect()).collect();
        let h = Hypergraph::new(8, edges).unwrap();
        let min = minimal_edges(&h);
        prop_assert!(min.is_antichain());
        for e in h.edges() {
            prop_assert!(min.edges().iter().any(|m| m.is_subset(*e)));
        }
        // idempotent on antichains
        prop_assert_eq!(&minimal_edges(&min), &min);
    }

    #[test]
    fn quotient_partitions_the_colors(lists in family_strategy(4, 8, 3)) {
        let family = to_family(&lists);
        let classes = membership_pattern_partition(&family).unwrap();
        let mut seen = ColorSet::EMPTY;
        for c in &classes {
            prop_assert!(c.members.contains(c.representative));
            prop_assert!(!seen.intersects(c.members));
            seen = seen.union(c.members);
        }
        prop_assert_eq!(seen, family.color_union());
        // idempotence: re-quotienting the representative family is trivial
        let wf = quotient_family(&family).unwrap();
        let again = quotient_family(wf.family()).unwrap();
        prop_assert!(again.classes().iter().all(|c| c.weight() == 1));
    }

    #[test]
    fn exact_matches_oracle(
        raw in prop::collection::vec(prop::collection::btree_set(0u32..8, 1..=4), 1..=5),
        wseed in prop::collection::vec(1u64..=3, 8),
        k in 1usize..=3,
    ) {
        let edges: Vec<ColorSet> = raw.iter().map(|s| s.iter().copied().collect()).collect();
        let targets = minimal_edges(&Hypergraph::new(8, edges).unwrap());
        let (cands, _) = candidate_edges(&targets, k).unwrap();
        prop_assume!(cands.len() <= DEFAULT_ORACLE_CAP);
        let exact = solve_exact_min_weighted_cover(&targets, &wseed, k, &Default::default()).unwrap();
        let oracle = brute_force_min_cover(&targets, &wseed, k, DEFAULT_ORACLE_CAP).unwrap();
        prop_assert_eq!(&exact.value, &oracle.value);
        if let Some(cover) = &exact.cover {
            prop_assert!(verify_cover(cover, &targets));
        }
    }

    #[test]
    fn coloring_criteria_agree(
        m_lists in family_strategy(4, 8, 3),
        n_lists in prop::collection::vec(prop::collection::btree_set(0u32..8, 2..=3), 0..=6),
    ) {
        let m: Vec<Vec<u32>> = m_lists.iter().map(|l| l.iter().copied().collect()).collect();
        let n: Vec<Vec<u32>> = n_lists.iter().map(|l| l.iter().copied().collect()).collect();
        let a = Assignment::from_lists(&m, &n).unwrap();
        let colorable = find_proper_coloring(&a).is_some();
        let bad = is_bad_assignment_via_transversals(&a);
        prop_assert_eq!(colorable, !bad);
    }

    #[test]
    fn adding_n_lists_never_helps(
        m_lists in family_strategy(4, 8, 3),
        n_lists in prop::collection::vec(prop::collection::btree_set(0u32..8, 2..=3), 1..=5),
        extra in prop::collection::btree_set(0u32..8, 2..=3),
    ) {
        let m: Vec<Vec<u32>> = m_lists.iter().map(|l| l.iter().copied().collect()).collect();
        let mut n: Vec<Vec<u32>> = n_lists.iter().map(|l| l.iter().copied().collect()).collect();
        let a = Assignment::from_lists(&m, &n).unwrap();
        let bad_before = is_bad_assignment_via_transversals(&a);
        n.push(extra.iter().copied().collect());
        let b = Assignment::from_lists(&m, &n).unwrap();
        let bad_after = is_bad_assignment_via_transversals(&b);
        prop_assert!(!bad_before || bad_after);
    }
}

// ---------------------------------------------------------------------------
// exhaustive identities at desk scale
// ---------------------------------------------------------------------------

fn all_theorem2_params(m: usize) -> Vec<Theorem2Params> {
    let mut out = Vec::new();
    let s = m - 2;
    for k1 in 0..=s {
        for k2 in 0..=s - k1 {
            for k3 in 0..=s - k1 - k2 {
                for k4 in 0..=s - k1 - k2 - k3 {
                    let k5 = s - k1 - k2 - k3 - k4;
                    if let Ok(p) = Theorem2Params::new(m, [k1, k2, k3, k4, k5]) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The peel value equals the normalized polynomial times (m-2)^(m-2),
/// exactly, on the polynomial's whole integral domain: every valid
/// parameter vector for m = 6 and m = 7, and the m = 5 vectors with
/// k5 = 0 or k5 = 3. (For m = 5 with k5 in {1, 2} the closed form is
/// fractional and cannot equal any cover value; see the corner test.)
#[test]
fn greedy_peel_equals_polynomial_exhaustively() {
    let mut checked = 0usize;
    for m in 5..=7 {
        for p in all_theorem2_params(m) {
            if m == 5 && (1..=2).contains(&p.k[4]) {
                continue;
            }
            let family = theorem2_family(&p).unwrap();
            let wf = quotient_family(&family).unwrap();
            let (_, value) = greedy_track_peel_cover(&wf).unwrap();
            let value = value.as_finite().unwrap().clone();

            let s = (m - 2) as i64;
            let alpha = AlphaVector::new(p.k.map(|k| rational(k as i64, s))).unwrap();
            let normalized = theorem2_value(&alpha);
            let scale = BigRational::from_integer(num::BigInt::from(s).pow((m - 2) as u32));
            let expected = normalized * scale;
            assert!(expected.is_integer(), "polynomial value must scale to an integer");
            let expected: BigUint = expected.to_integer().try_into().unwrap();
            assert_eq!(value, expected, "peel vs polynomial for m={m}, k={:?}", p.k);
            checked += 1;
        }
    }
    assert!(checked >= 150, "expected to sweep the whole parameter space, got {checked}");
}

/// At m = 5 with one to two singles per list the generic closed form has
/// denominator 3, so it cannot count any cover; the peel still produces a
/// valid cover, just a costlier one. Freeze those corner values.
#[test]
fn greedy_peel_diverges_from_polynomial_in_m5_corners() {
    let corners = [
        ([2, 0, 0, 0, 1], 17u64, (49, 3)),
        ([0, 1, 1, 0, 1], 15, (43, 3)),
        ([0, 0, 1, 0, 2], 19, (49, 3)),
    ];
    for (k, peel_value, (num, den)) in corners {
        let p = Theorem2Params::new(5, k).unwrap();
        let family = theorem2_family(&p).unwrap();
        let wf = quotient_family(&family).unwrap();
        let (cover, value) = greedy_track_peel_cover(&wf).unwrap();
        assert_eq!(value, CoverValue::Finite(BigUint::from(peel_value)), "peel value for k={k:?}");
        let targets = enumerate_minimal_transversals(wf.family()).unwrap();
        assert!(verify_cover(&cover, &targets), "peel cover must still verify for k={k:?}");

        let alpha = AlphaVector::new(k.map(|ki| rational(ki as i64, 3))).unwrap();
        let scaled = theorem2_value(&alpha) * BigRational::from_integer(num::BigInt::from(27));
        assert_eq!(scaled, rational(num, den), "fractional closed form for k={k:?}");
    }
}

/// |cover| = closed form, and the cover verifies, for every valid (m,k,l)
/// with m <= 7.
#[test]
fn theorem3_cover_matches_formula_exhaustively() {
    for m in 6..=7usize {
        for k in 2..=m - 2 {
            for l in 0..=m - 2 - k {
                let p = Theorem3Params::new(m, k, l).unwrap();
                let cover = theorem3_cover(&p).unwrap();
                let value = theorem3_value(m as u64, k as u64, l as u64).unwrap();
                assert_eq!(BigUint::from(cover.len() as u64), value, "({m},{k},{l})");
                let family = theorem3_family(&p).unwrap();
                let targets = enumerate_minimal_transversals(&family).unwrap();
                assert!(verify_cover(&cover, &targets), "cover of ({m},{k},{l}) must verify");
            }
        }
    }
}

/// Exact solve never beats the peel construction, and both stay within the
/// closed form, on the small quotients where the exact solve is cheap.
#[test]
fn exact_at_most_greedy_on_small_quotients() {
    for (m, k) in [(5, [1, 1, 1, 0, 0]), (5, [3, 0, 0, 0, 0]), (5, [0, 1, 1, 0, 1]), (6, [1, 1, 0, 1, 1])] {
        let p = Theorem2Params::new(m, k).unwrap();
        let wf = quotient_family(&theorem2_family(&p).unwrap()).unwrap();
        let (_, greedy_value) = greedy_track_peel_cover(&wf).unwrap();
        let targets = enumerate_minimal_transversals(wf.family()).unwrap();
        let exact = solve_exact_min_weighted_cover(&targets, &wf.weight_table(), m - 2, &Default::default())
            .unwrap();
        assert!(
            exact.value.as_finite().unwrap() <= greedy_value.as_finite().unwrap(),
            "exact must be at most greedy for m={m}, k={k:?}"
        );
    }
}

/// The reduced polynomial is the full polynomial at a1 = a2 = a3.
#[test]
fn reduced_equals_full_on_a_rational_grid() {
    let mut checked = 0;
    for n4 in 0..=25i64 {
        for n5 in (0..=100i64 - n4).step_by(7) {
            let a4 = rational(n4, 100);
            let a5 = rational(n5, 100);
            let b = (rational(1, 1) - a4.clone() - a5.clone()) / rational(3, 1);
            let full = theorem2_value(
                &AlphaVector::new([b.clone(), b.clone(), b, a4.clone(), a5.clone()]).unwrap(),
            );
            let reduced = theorem2_reduced_value(&a4, &a5).unwrap();
            assert_eq!(reduced, full, "a4={n4}/100 a5={n5}/100");
            checked += 1;
        }
    }
    assert!(checked >= 50);
}

/// Removing any single list from the 13-list side of the n5 witness makes
/// the assignment colorable again.
#[test]
fn minimum_witness_is_tight() {
    let p = Theorem2Params::new(5, [1, 1, 1, 0, 0]).unwrap();
    let family = theorem2_family(&p).unwrap();
    let report = run_bound_pipeline(&family, PipelineMethod::Exact, &Default::default()).unwrap();
    let cover = report.lifted_cover.unwrap();
    assert_eq!(cover.len(), 13);

    let full = Assignment::new(family.clone(), ListFamily::from_sets(cover.edges().to_vec())).unwrap();
    assert!(find_proper_coloring(&full).is_none());
    for skip in 0..cover.len() {
        let trimmed: Vec<ColorSet> = cover
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, e)| *e)
            .collect();
        let a = Assignment::new(family.clone(), ListFamily::from_sets(trimmed)).unwrap();
        assert!(
            find_proper_coloring(&a).is_some(),
            "witness must become colorable without list {skip}"
        );
    }
}

/// Lift law on the doubled 13-edge base: the transported cover has value
/// (13/27) * 6^6 and verifies upstairs.
#[test]
fn lift_value_law_on_furedi_base() {
    let p = Theorem2Params::new(5, [1, 1, 1, 0, 0]).unwrap();
    let base = theorem2_family(&p).unwrap();
    let wf = quotient_family(&base).unwrap();
    let targets = enumerate_minimal_transversals(wf.family()).unwrap();
    let solve = solve_exact_min_weighted_cover(&targets, &wf.weight_table(), 3, &Default::default())
        .unwrap();
    let base_cover = solve.cover.unwrap();

    let lifted_family = theorem1_lift(&base, 2).unwrap();
    let lifted_cover = theorem1_lift_cover(&base_cover, &base, 2).unwrap();
    let lwf = quotient_family(&lifted_family).unwrap();
    let value = weighted_value(&lifted_cover, &lwf).unwrap();
    // (13/27) * 6^6 = 13 * 6^6 / 27
    let expected = BigUint::from(13u32) * BigUint::from(6u32).pow(6) / BigUint::from(27u32);
    assert_eq!(value, expected);

    let expanded = lift_cover(&lifted_cover, &lwf).unwrap();
    assert_eq!(BigUint::from(expanded.len() as u64), value);
    let full_targets = enumerate_minimal_transversals(&lifted_family).unwrap();
    assert!(verify_cover(&expanded, &full_targets));
}
