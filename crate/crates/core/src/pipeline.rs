//! The bound pipeline: quotient, solve (or peel), lift, verify, report.
//!
//! For a family of m lists of size m-2, a verified cover of its minimal
//! transversals by (m-2)-sets of cardinality c witnesses n_m <= c. The
//! pipeline derives the cover on the weighted quotient, expands it back,
//! verifies it against the full transversal hypergraph, and when the
//! instance is small enough also replays the witness through the coloring
//! search.

use crate::choosability::{verify_witness, Assignment, WitnessReport};
use crate::cover::{verify_cover, Cover, CoverValue};
use crate::error::{Error, Result};
use crate::hypergraph::{enumerate_minimal_transversals, ListFamily};
use crate::quotient::{lift_cover, quotient_family};
use crate::solver::{
    brute_force_min_cover, greedy_track_peel_cover, solve_exact_min_weighted_cover, SolveMethod,
    SolveReport, SolverLimits, DEFAULT_ORACLE_CAP,
};
use num::BigUint;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMethod {
    Exact,
    Greedy,
    Oracle,
}

impl std::str::FromStr for PipelineMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(PipelineMethod::Exact),
            "greedy" => Ok(PipelineMethod::Greedy),
            "oracle" => Ok(PipelineMethod::Oracle),
            other => Err(Error::InvalidParams(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug)]
pub struct PipelineReport {
    pub m: usize,
    pub list_size: usize,
    pub class_count: usize,
    pub quotient_target_count: usize,
    pub solve: Option<SolveReport>,
    /// The expanded cover over the original colors; its cardinality is the bound.
    pub lifted_cover: Option<Cover>,
    pub bound: Option<BigUint>,
    pub verified: bool,
    pub witness: Option<WitnessReport>,
    pub note: Option<String>,
}

impl PipelineReport {
    pub fn bound_statement(&self) -> Option<String> {
        self.bound.as_ref().map(|b| format!("n_{} <= {}", self.m, b))
    }
}

/// Keep the coloring-search replay below this many track iterations.
const WITNESS_TRACK_BUDGET: u128 = 2_000_000;

pub fn run_bound_pipeline(
    family: &ListFamily,
    method: PipelineMethod,
    limits: &SolverLimits,
) -> Result<PipelineReport> {
    let m = family.require_square()?;
    let k = m - 2;
    let wf = quotient_family(family)?;
    let targets = enumerate_minimal_transversals(wf.family())?;

    if targets.edges().iter().any(|e| e.len() < k) {
        return Ok(PipelineReport {
            m,
            list_size: k,
            class_count: wf.classes().len(),
            quotient_target_count: targets.len(),
            solve: None,
            lifted_cover: None,
            bound: None,
            verified: false,
            witness: None,
            note: Some(format!(
                "family has a transversal smaller than m-2 = {k}; no bound derived"
            )),
        });
    }

    let weights = wf.weight_table();
    let solve = match method {
        PipelineMethod::Exact => solve_exact_min_weighted_cover(&targets, &weights, k, limits)?,
        PipelineMethod::Oracle => brute_force_min_cover(&targets, &weights, k, DEFAULT_ORACLE_CAP)?,
        PipelineMethod::Greedy => {
            let start = Instant::now();
            let (cover, value) = greedy_track_peel_cover(&wf)?;
            SolveReport {
                value,
                cover: Some(cover),
                nodes_explored: 0,
                elapsed: start.elapsed(),
                method: SolveMethod::Greedy,
            }
        }
    };

    let quotient_cover = solve.cover.clone().ok_or(Error::InvalidCover)?;
    let value = match &solve.value {
        CoverValue::Finite(v) => v.clone(),
        CoverValue::Infinite => unreachable!("undersized targets handled above"),
    };

    let lifted = lift_cover(&quotient_cover, &wf)?;
    if BigUint::from(lifted.len() as u64) != value {
        return Err(Error::InvalidCover);
    }
    let full_targets = enumerate_minimal_transversals(family)?;
    let verified = verify_cover(&lifted, &full_targets);

    let track_count = family
        .lists()
        .iter()
        .map(|l| l.len() as u128)
        .product::<u128>();
    let mut note = None;
    let witness = if track_count.saturating_mul(lifted.len() as u128) <= WITNESS_TRACK_BUDGET {
        let n_side = ListFamily::from_sets(lifted.edges().to_vec());
        Some(verify_witness(&Assignment::new(family.clone(), n_side)?)?)
    } else {
        note = Some("coloring-search replay skipped: instance too large".to_string());
        None
    };

    Ok(PipelineReport {
        m,
        list_size: k,
        class_count: wf.classes().len(),
        quotient_target_count: targets.len(),
        solve: Some(solve),
        lifted_cover: Some(lifted),
        bound: verified.then_some(value),
        verified,
        witness,
        note,
    })
}
