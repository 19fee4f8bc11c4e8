//! Covers and cover values.
//!
//! A `k`-cover of a target hypergraph is a set of `k`-element edges such
//! that every target edge contains at least one of them. Values are sums,
//! over the chosen edges, of the product of the member weights; they stay
//! exact in arbitrary precision.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::set::{canonical_edge_sort, ColorSet};
use itertools::Itertools;
use num::BigUint;
use std::fmt;

/// A set of `k`-element edges, deduplicated and canonically ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    k: usize,
    edges: Vec<ColorSet>,
}

impl Cover {
    pub fn new(k: usize, mut edges: Vec<ColorSet>) -> Result<Self> {
        for e in &edges {
            if e.len() != k {
                return Err(Error::EdgeSizeMismatch { k, found: e.len() });
            }
        }
        canonical_edge_sort(&mut edges);
        Ok(Cover { k, edges })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edges(&self) -> &[ColorSet] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Exact cover value; `Infinite` when no cover exists (some target edge is
/// smaller than `k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverValue {
    Finite(BigUint),
    Infinite,
}

impl CoverValue {
    pub fn finite_u64(v: u64) -> Self {
        CoverValue::Finite(BigUint::from(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CoverValue::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&BigUint> {
        match self {
            CoverValue::Finite(v) => Some(v),
            CoverValue::Infinite => None,
        }
    }
}

impl fmt::Display for CoverValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverValue::Finite(v) => write!(f, "{v}"),
            CoverValue::Infinite => write!(f, "infinite"),
        }
    }
}

/// True iff every target edge contains at least one cover edge.
pub fn verify_cover(cover: &Cover, targets: &Hypergraph) -> bool {
    targets
        .edges()
        .iter()
        .all(|t| cover.edges().iter().any(|c| c.is_subset(*t)))
}

/// The search space for exact solving: the union over target edges of their
/// `k`-subsets. A useful cover edge must be contained in some target, so
/// nothing else needs to be considered. The flag reports targets smaller
/// than `k`, which make any `k`-cover impossible.
pub fn candidate_edges(targets: &Hypergraph, k: usize) -> Result<(Vec<ColorSet>, bool)> {
    if !targets.is_antichain() {
        return Err(Error::NotAntichain);
    }
    let mut uncoverable = false;
    let mut out: Vec<ColorSet> = Vec::new();
    for t in targets.edges() {
        if t.len() < k {
            uncoverable = true;
            continue;
        }
        for comb in t.to_vec().into_iter().combinations(k) {
            out.push(comb.into_iter().collect());
        }
    }
    canonical_edge_sort(&mut out);
    Ok((out, uncoverable))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::Color;

    fn s(v: &[Color]) -> ColorSet {
        v.iter().collect()
    }

    #[test]
    fn verify_self_cover() {
        let targets = Hypergraph::new(5, vec![s(&[1, 4]), s(&[2, 3])]).unwrap();
        let c = Cover::new(2, vec![s(&[1, 4]), s(&[2, 3])]).unwrap();
        assert!(verify_cover(&c, &targets));
        let partial = Cover::new(2, vec![s(&[1, 4])]).unwrap();
        assert!(!verify_cover(&partial, &targets));
    }

    #[test]
    fn candidates_are_k_subsets_of_targets() {
        let targets = Hypergraph::new(4, vec![s(&[1, 2, 3])]).unwrap();
        let (cands, inf) = candidate_edges(&targets, 2).unwrap();
        assert!(!inf);
        assert_eq!(cands, vec![s(&[1, 2]), s(&[1, 3]), s(&[2, 3])]);

        let targets = Hypergraph::new(5, vec![s(&[1, 4]), s(&[2, 3])]).unwrap();
        let (cands, inf) = candidate_edges(&targets, 2).unwrap();
        assert!(!inf);
        assert_eq!(cands, vec![s(&[1, 4]), s(&[2, 3])]);
    }

    #[test]
    fn undersized_target_flags_infinite() {
        let targets = Hypergraph::new(4, vec![s(&[2]), s(&[1, 3])]).unwrap();
        let (cands, inf) = candidate_edges(&targets, 2).unwrap();
        assert!(inf);
        assert_eq!(cands, vec![s(&[1, 3])]);
    }

    #[test]
    fn cover_rejects_wrong_cardinality() {
        assert!(Cover::new(2, vec![s(&[1, 2, 3])]).is_err());
    }
}
