//! Exact minimum weighted k-cover search, the brute-force oracle, and the
//! greedy track-peeling cover construction.
//!
//! The exact solver branches on an uncovered target with the fewest live
//! candidate sub-edges (fail-first). Candidates tried earlier at a node are
//! banned in later branches so no partial cover is explored twice. The
//! admissible bound packs uncovered targets with pairwise-disjoint
//! candidate sets and charges each its cheapest live candidate.

use crate::cover::{candidate_edges, verify_cover, Cover, CoverValue};
use crate::error::{Error, Result};
use crate::hypergraph::{minimal_edges, Hypergraph};
use crate::quotient::WeightedFamily;
use crate::set::{Color, ColorSet};
use num::BigUint;
use std::collections::HashMap;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMethod {
    Exact,
    Greedy,
    Oracle,
}

impl SolveMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveMethod::Exact => "exact",
            SolveMethod::Greedy => "greedy",
            SolveMethod::Oracle => "oracle",
        }
    }
}

/// Outcome of a cover computation. A cover is present exactly when the
/// value is finite, and it always verifies against the targets it was
/// computed for.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub value: CoverValue,
    pub cover: Option<Cover>,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub method: SolveMethod,
}

/// Default cap on oracle candidates; beyond this the subset enumeration is
/// pointless and the oracle refuses.
pub const DEFAULT_ORACLE_CAP: usize = 24;

#[derive(Debug, Clone, Default)]
pub struct SolverLimits {
    pub timeout: Option<Duration>,
}

/// Exact minimum of the sum over chosen edges of the product of member
/// weights, over all k-covers with edges drawn from the targets' k-subsets.
/// Infinite iff some target edge has fewer than k members.
pub fn solve_exact_min_weighted_cover(
    targets: &Hypergraph,
    weights: &[u64],
    k: usize,
    limits: &SolverLimits,
) -> Result<SolveReport> {
    let start = Instant::now();
    let reduced = minimal_edges(targets);
    validate_weights(&reduced, weights)?;
    if k == 0 {
        return Err(Error::InvalidParams("cover edge cardinality k must be at least 1".into()));
    }

    if reduced.is_empty() {
        return Ok(SolveReport {
            value: CoverValue::finite_u64(0),
            cover: Some(Cover::new(k, vec![])?),
            nodes_explored: 0,
            elapsed: start.elapsed(),
            method: SolveMethod::Exact,
        });
    }
    let (cands, uncoverable) = candidate_edges(&reduced, k)?;
    if uncoverable {
        return Ok(SolveReport {
            value: CoverValue::Infinite,
            cover: None,
            nodes_explored: 0,
            elapsed: start.elapsed(),
            method: SolveMethod::Exact,
        });
    }

    let mut search = Search::new(&reduced, &cands, weights, limits, start)?;
    search.run()?;
    let (value, chosen, nodes) = search.into_best();
    let cover = Cover::new(k, chosen)?;
    debug_assert!(verify_cover(&cover, &reduced));
    let cover = minimalize_cover(&cover, &reduced);
    Ok(SolveReport {
        value: CoverValue::Finite(BigUint::from(value)),
        cover: Some(cover),
        nodes_explored: nodes,
        elapsed: start.elapsed(),
        method: SolveMethod::Exact,
    })
}

/// Exhaustive include/exclude enumeration over the candidate edges, pruned
/// only on accumulated value. Refuses when the candidate count exceeds
/// `cap`; same contract as the exact solver otherwise.
pub fn brute_force_min_cover(
    targets: &Hypergraph,
    weights: &[u64],
    k: usize,
    cap: usize,
) -> Result<SolveReport> {
    let start = Instant::now();
    let reduced = minimal_edges(targets);
    validate_weights(&reduced, weights)?;
    if k == 0 {
        return Err(Error::InvalidParams("cover edge cardinality k must be at least 1".into()));
    }
    if reduced.is_empty() {
        return Ok(SolveReport {
            value: CoverValue::finite_u64(0),
            cover: Some(Cover::new(k, vec![])?),
            nodes_explored: 0,
            elapsed: start.elapsed(),
            method: SolveMethod::Oracle,
        });
    }
    let (cands, uncoverable) = candidate_edges(&reduced, k)?;
    if uncoverable {
        return Ok(SolveReport {
            value: CoverValue::Infinite,
            cover: None,
            nodes_explored: 0,
            elapsed: start.elapsed(),
            method: SolveMethod::Oracle,
        });
    }
    if cands.len() > cap {
        return Err(Error::OracleCapExceeded { candidates: cands.len(), cap });
    }

    let vals: Vec<u128> = cands
        .iter()
        .map(|c| edge_value(*c, weights))
        .collect::<Result<_>>()?;
    let cover_masks: Vec<u64> = cands
        .iter()
        .map(|c| {
            reduced
                .edges()
                .iter()
                .enumerate()
                .filter(|(_, t)| c.is_subset(**t))
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full: u64 = if reduced.len() == 64 { u64::MAX } else { (1 << reduced.len()) - 1 };
    if reduced.len() > 64 {
        return Err(Error::InvalidParams(format!(
            "oracle supports at most 64 targets, got {}",
            reduced.len()
        )));
    }

    struct Brute<'a> {
        vals: &'a [u128],
        cover_masks: &'a [u64],
        full: u64,
        best_val: u128,
        best: Vec<usize>,
        chosen: Vec<usize>,
        nodes: u64,
    }
    impl Brute<'_> {
        fn go(&mut self, idx: usize, covered: u64, val: u128) {
            self.nodes += 1;
            if val >= self.best_val {
                return;
            }
            if covered == self.full {
                self.best_val = val;
                self.best = self.chosen.clone();
                return;
            }
            if idx == self.vals.len() {
                return;
            }
            self.chosen.push(idx);
            self.go(idx + 1, covered | self.cover_masks[idx], val.saturating_add(self.vals[idx]));
            self.chosen.pop();
            self.go(idx + 1, covered, val);
        }
    }
    let mut b = Brute {
        vals: &vals,
        cover_masks: &cover_masks,
        full,
        best_val: u128::MAX,
        best: vec![],
        chosen: vec![],
        nodes: 0,
    };
    b.go(0, 0, 0);

    let edges: Vec<ColorSet> = b.best.iter().map(|&i| cands[i]).collect();
    let cover = minimalize_cover(&Cover::new(k, edges)?, &reduced);
    Ok(SolveReport {
        value: CoverValue::Finite(BigUint::from(b.best_val)),
        cover: Some(cover),
        nodes_explored: b.nodes,
        elapsed: start.elapsed(),
        method: SolveMethod::Oracle,
    })
}

/// Strips redundant edges in canonical order; a minimum-value cover has
/// none (weights are positive), so this is a safety pass.
pub fn minimalize_cover(cover: &Cover, targets: &Hypergraph) -> Cover {
    let mut edges = cover.edges().to_vec();
    let mut i = 0;
    while i < edges.len() {
        let mut trimmed = edges.clone();
        trimmed.remove(i);
        let still_covers = targets
            .edges()
            .iter()
            .all(|t| trimmed.iter().any(|c| c.is_subset(*t)));
        if still_covers {
            edges = trimmed;
        } else {
            i += 1;
        }
    }
    Cover::new(cover.k(), edges).expect("cardinalities unchanged")
}

fn validate_weights(targets: &Hypergraph, weights: &[u64]) -> Result<()> {
    for t in targets.edges() {
        for c in t.iter() {
            match weights.get(c as usize) {
                Some(&w) if w >= 1 => {}
                _ => return Err(Error::NonPositiveWeight(c)),
            }
        }
    }
    Ok(())
}

fn edge_value(edge: ColorSet, weights: &[u64]) -> Result<u128> {
    let mut v: u128 = 1;
    for c in edge.iter() {
        v = v
            .checked_mul(weights[c as usize] as u128)
            .ok_or(Error::ValueOverflow)?;
    }
    Ok(v)
}

// ---------------------------------------------------------------------------
// branch and bound
// ---------------------------------------------------------------------------

struct Search<'a> {
    targets: Vec<ColorSet>,
    cands: Vec<ColorSet>,
    cand_val: Vec<u128>,
    cand_cov: Vec<Vec<u64>>,
    target_cands: Vec<Vec<usize>>,
    words: usize,
    uncovered: Vec<u64>,
    banned: Vec<bool>,
    chosen: Vec<usize>,
    cur_val: u128,
    best_val: u128,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    limits: &'a SolverLimits,
}

impl<'a> Search<'a> {
    fn new(
        targets: &Hypergraph,
        cands: &[ColorSet],
        weights: &[u64],
        limits: &'a SolverLimits,
        start: Instant,
    ) -> Result<Self> {
        // order candidates by (value, canonical edge order); branches then
        // try cheapest candidates first and ties break reproducibly
        let mut order: Vec<usize> = (0..cands.len()).collect();
        let vals: Vec<u128> = cands
            .iter()
            .map(|c| edge_value(*c, weights))
            .collect::<Result<_>>()?;
        order.sort_by(|&a, &b| vals[a].cmp(&vals[b]).then(cands[a].cmp_lex(cands[b])));
        let cands: Vec<ColorSet> = order.iter().map(|&i| cands[i]).collect();
        let cand_val: Vec<u128> = order.iter().map(|&i| vals[i]).collect();

        // guard against value overflow during the search: the sum over all
        // candidates bounds every partial cover value
        let mut total: u128 = 0;
        for v in &cand_val {
            total = total.checked_add(*v).ok_or(Error::ValueOverflow)?;
        }

        let tn = targets.len();
        let words = tn.div_ceil(64);
        let mut cand_cov = vec![vec![0u64; words]; cands.len()];
        let mut target_cands = vec![Vec::new(); tn];
        for (ci, c) in cands.iter().enumerate() {
            for (ti, t) in targets.edges().iter().enumerate() {
                if c.is_subset(*t) {
                    cand_cov[ci][ti / 64] |= 1 << (ti % 64);
                    target_cands[ti].push(ci);
                }
            }
        }
        let mut uncovered = vec![0u64; words];
        for ti in 0..tn {
            uncovered[ti / 64] |= 1 << (ti % 64);
        }
        Ok(Search {
            targets: targets.edges().to_vec(),
            banned: vec![false; cands.len()],
            cands,
            cand_val,
            cand_cov,
            target_cands,
            words,
            uncovered,
            chosen: vec![],
            cur_val: 0,
            best_val: u128::MAX,
            best: vec![],
            nodes: 0,
            deadline: limits.timeout.map(|t| start + t),
            limits,
        })
    }

    fn run(&mut self) -> Result<()> {
        self.dfs()
    }

    fn into_best(self) -> (u128, Vec<ColorSet>, u64) {
        let edges = self.best.iter().map(|&i| self.cands[i]).collect();
        (self.best_val, edges, self.nodes)
    }

    fn uncovered_targets(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.targets.len()).filter(move |&ti| self.uncovered[ti / 64] >> (ti % 64) & 1 == 1)
    }

    fn live_count(&self, ti: usize) -> usize {
        self.target_cands[ti].iter().filter(|&&ci| !self.banned[ci]).count()
    }

    fn apply(&mut self, ci: usize) -> Vec<u64> {
        let saved = self.uncovered.clone();
        for w in 0..self.words {
            self.uncovered[w] &= !self.cand_cov[ci][w];
        }
        self.chosen.push(ci);
        self.cur_val += self.cand_val[ci];
        saved
    }

    fn undo(&mut self, ci: usize, saved: Vec<u64>) {
        self.uncovered = saved;
        self.chosen.pop();
        self.cur_val -= self.cand_val[ci];
    }

    /// Greedy packing of uncovered targets whose live candidate sets are
    /// pairwise disjoint; each packed target is charged its cheapest live
    /// candidate. Distinct packed targets need distinct edges, so the sum
    /// is a valid lower bound on the remaining cost.
    fn lower_bound(&self, scratch: &mut Vec<usize>) -> u128 {
        scratch.clear();
        scratch.extend(self.uncovered_targets());
        scratch.sort_by_key(|&ti| self.live_count(ti));
        let mut used = vec![false; self.cands.len()];
        let mut bound: u128 = 0;
        for &ti in scratch.iter() {
            let mut min_val: Option<u128> = None;
            let mut clash = false;
            for &ci in &self.target_cands[ti] {
                if self.banned[ci] {
                    continue;
                }
                if used[ci] {
                    clash = true;
                    break;
                }
                min_val = Some(min_val.map_or(self.cand_val[ci], |m: u128| m.min(self.cand_val[ci])));
            }
            if clash {
                continue;
            }
            if let Some(v) = min_val {
                bound += v;
                for &ci in &self.target_cands[ti] {
                    if !self.banned[ci] {
                        used[ci] = true;
                    }
                }
            }
        }
        bound
    }

    fn dfs(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Timeout(
                        self.limits.timeout.unwrap_or_default().as_millis(),
                    ));
                }
            }
        }
        if self.cur_val >= self.best_val {
            return Ok(());
        }

        // unit propagation: targets with one live candidate force it;
        // targets with none kill the branch
        let mut forced: Vec<(usize, Vec<u64>)> = Vec::new();
        let result = loop {
            let mut branch_target: Option<(usize, usize)> = None;
            let mut dead = false;
            let mut unit: Option<usize> = None;
            for ti in self.uncovered_targets() {
                let live = self.live_count(ti);
                match live {
                    0 => {
                        dead = true;
                        break;
                    }
                    1 => {
                        unit = Some(ti);
                        break;
                    }
                    _ => {
                        if branch_target.is_none_or(|(_, best)| live < best) {
                            branch_target = Some((ti, live));
                        }
                    }
                }
            }
            if dead {
                break Ok(());
            }
            if let Some(ti) = unit {
                let ci = *self.target_cands[ti]
                    .iter()
                    .find(|&&ci| !self.banned[ci])
                    .expect("live candidate counted");
                if self.cur_val.saturating_add(self.cand_val[ci]) >= self.best_val {
                    break Ok(());
                }
                let saved = self.apply(ci);
                forced.push((ci, saved));
                continue;
            }
            let Some((ti, _)) = branch_target else {
                // everything covered
                self.best_val = self.cur_val;
                self.best = self.chosen.clone();
                break Ok(());
            };

            let mut scratch = Vec::new();
            if self.cur_val.saturating_add(self.lower_bound(&mut scratch)) >= self.best_val {
                break Ok(());
            }

            let branch_cands: Vec<usize> = self.target_cands[ti]
                .iter()
                .copied()
                .filter(|&ci| !self.banned[ci])
                .collect();
            let mut newly_banned = Vec::new();
            let mut result = Ok(());
            for &ci in &branch_cands {
                let saved = self.apply(ci);
                result = self.dfs();
                self.undo(ci, saved);
                if result.is_err() {
                    break;
                }
                // covers using ci are fully explored; ban it below this node
                self.banned[ci] = true;
                newly_banned.push(ci);
            }
            for ci in newly_banned {
                self.banned[ci] = false;
            }
            break result;
        };
        for (ci, saved) in forced.into_iter().rev() {
            self.undo(ci, saved);
        }
        result
    }
}

// ---------------------------------------------------------------------------
// greedy track peeling
// ---------------------------------------------------------------------------

/// The track-peeling cover of a weighted quotient family whose origin is m
/// lists of size m-2.
///
/// Repeatedly: harvest the supports of exactly m-2 distinct representatives
/// as cover edges, delete every track whose support contains a harvested
/// edge, truncate the last coordinate of the survivors, and continue until
/// no tracks remain. Fails if a surviving track's support ever drops below
/// m-2 members; the family templates this is meant for terminate after the
/// supports shrink twice.
pub fn greedy_track_peel_cover(wf: &WeightedFamily) -> Result<(Cover, CoverValue)> {
    let m = wf.origin().require_square()?;
    let k = m - 2;
    let weights = wf.weight_table();

    let member_lists: Vec<Vec<Color>> = wf.family().lists().iter().map(|l| l.to_vec()).collect();
    if member_lists.iter().any(|l| l.is_empty()) {
        return Err(Error::EmptyFamily);
    }
    // flat row storage: tracks shrink in lockstep, one coordinate per step
    let mut width = member_lists.len();
    let mut rows: Vec<Color> = Vec::new();
    {
        let mut index = vec![0usize; width];
        loop {
            for (slot, list) in index.iter().zip(&member_lists) {
                rows.push(list[*slot]);
            }
            let mut i = width;
            loop {
                if i == 0 {
                    index.clear();
                    break;
                }
                i -= 1;
                index[i] += 1;
                if index[i] < member_lists[i].len() {
                    break;
                }
                index[i] = 0;
            }
            if index.is_empty() {
                break;
            }
        }
    }

    let mut cover_edges: Vec<ColorSet> = Vec::new();
    while !rows.is_empty() {
        let track_count = rows.len() / width;
        let mut support_covered: HashMap<ColorSet, bool> = HashMap::new();
        for r in 0..track_count {
            let sup: ColorSet = rows[r * width..(r + 1) * width].iter().collect();
            if sup.len() < k {
                return Err(Error::GreedyDomain { required: k });
            }
            support_covered.entry(sup).or_insert(false);
        }
        let harvested: Vec<ColorSet> = support_covered
            .keys()
            .copied()
            .filter(|s| s.len() == k)
            .collect();
        cover_edges.extend(harvested.iter().copied());
        for (sup, covered) in support_covered.iter_mut() {
            *covered = harvested.iter().any(|h| h.is_subset(*sup));
        }

        // drop covered tracks, truncate the rest by one coordinate
        let mut next: Vec<Color> = Vec::new();
        for r in 0..track_count {
            let row = &rows[r * width..(r + 1) * width];
            let sup: ColorSet = row.iter().collect();
            if !support_covered[&sup] {
                next.extend_from_slice(&row[..width - 1]);
            }
        }
        if next.is_empty() {
            break;
        }
        width -= 1;
        // identical truncated tracks behave identically from here on
        let mut dedup_rows: Vec<&[Color]> = next.chunks(width).collect();
        dedup_rows.sort();
        dedup_rows.dedup();
        rows = dedup_rows.concat();
    }

    let cover = Cover::new(k, cover_edges)?;
    let mut value = BigUint::from(0u32);
    for e in cover.edges() {
        let mut prod = BigUint::from(1u32);
        for c in e.iter() {
            let w = weights.get(c as usize).copied().unwrap_or(0);
            debug_assert!(w > 0, "harvested edge uses a non-representative");
            prod *= BigUint::from(w);
        }
        value += prod;
    }
    Ok((cover, CoverValue::Finite(value)))
}
