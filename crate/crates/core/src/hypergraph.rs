//! Set-system types and minimal-transversal enumeration.
//!
//! A [`ListFamily`] is an ordered family of color lists over a dense color
//! universe. Its transversal hypergraph is never materialized in full:
//! [`enumerate_minimal_transversals`] walks every track (one choice per
//! list), collects the distinct supports and keeps the inclusion-minimal
//! ones, which by minimality are exactly the minimal transversals.

use crate::error::{Error, Result};
use crate::set::{canonical_edge_sort, Color, ColorSet, MAX_COLORS};

/// An ordered family of color lists.
///
/// The main pipeline works with `m` lists of size `m-2`, but the type
/// permits any sizes, including mixed ones: quotient representative
/// families are naturally non-uniform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListFamily {
    lists: Vec<ColorSet>,
    vertex_count: usize,
}

impl ListFamily {
    /// Builds a family from explicit member lists. Lists must be non-empty
    /// and duplicate-free; the universe is `0..=max_color`.
    pub fn new(lists: &[Vec<Color>]) -> Result<Self> {
        let mut sets = Vec::with_capacity(lists.len());
        for (index, l) in lists.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::EmptyList { index });
            }
            if let Some(&c) = l.iter().max() {
                if c as usize >= MAX_COLORS {
                    return Err(Error::TooManyColors { count: c as usize + 1, max: MAX_COLORS });
                }
            }
            let set: ColorSet = l.iter().collect();
            if set.len() != l.len() {
                return Err(Error::DuplicateColor { index });
            }
            sets.push(set);
        }
        Ok(Self::from_sets(sets))
    }

    pub fn from_sets(lists: Vec<ColorSet>) -> Self {
        let vertex_count = lists
            .iter()
            .fold(ColorSet::EMPTY, |u, l| u.union(*l))
            .max_color()
            .map_or(0, |c| c as usize + 1);
        ListFamily { lists, vertex_count }
    }

    /// Number of lists (the `m` side of the bipartition).
    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, i: usize) -> ColorSet {
        self.lists[i]
    }

    /// Size of the color universe (`max id + 1`).
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn color_union(&self) -> ColorSet {
        self.lists.iter().fold(ColorSet::EMPTY, |u, l| u.union(*l))
    }

    /// Common list size, if the family is uniform.
    pub fn uniform_list_size(&self) -> Option<usize> {
        let first = self.lists.first()?.len();
        self.lists.iter().all(|l| l.len() == first).then_some(first)
    }

    /// True when the color ids are exactly `0..V-1` with no gaps.
    pub fn is_dense(&self) -> bool {
        self.color_union().len() == self.vertex_count
    }

    /// Checks that the family is `m` lists of size `m-2` and returns `m`.
    pub fn require_square(&self) -> Result<usize> {
        let m = self.len();
        if m < 3 {
            return Err(Error::InvalidParams(format!(
                "need at least 3 lists for an (m-2)-sized family, got {m}"
            )));
        }
        for l in &self.lists {
            if l.len() != m - 2 {
                return Err(Error::NotSquare { m, expected: m - 2, found: l.len() });
            }
        }
        Ok(m)
    }

    /// Iterates over the supports of all tracks of the family.
    pub fn track_supports(&self) -> TrackSupportIter {
        TrackSupportIter::new(&self.lists)
    }
}

/// An ordered choice of one color per list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Track {
    choices: Vec<Color>,
}

impl Track {
    /// Validates per-coordinate membership against the family.
    pub fn new(choices: Vec<Color>, family: &ListFamily) -> Result<Self> {
        if choices.len() != family.len() {
            return Err(Error::InvalidParams(format!(
                "track has {} choices for {} lists",
                choices.len(),
                family.len()
            )));
        }
        for (i, &c) in choices.iter().enumerate() {
            if !family.list(i).contains(c) {
                return Err(Error::InvalidParams(format!(
                    "track choice {c} at position {i} is not in list {i}"
                )));
            }
        }
        Ok(Track { choices })
    }

    pub fn choices(&self) -> &[Color] {
        &self.choices
    }

    /// The set of distinct choices: the transversal that represents the track.
    pub fn support(&self) -> ColorSet {
        self.choices.iter().collect()
    }
}

/// A finite hypergraph with edges kept deduplicated in the canonical
/// (ascending member list) order, so iteration and serialization are
/// deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertex_count: usize,
    edges: Vec<ColorSet>,
}

impl Hypergraph {
    pub fn new(vertex_count: usize, mut edges: Vec<ColorSet>) -> Result<Self> {
        if vertex_count > MAX_COLORS {
            return Err(Error::TooManyColors { count: vertex_count, max: MAX_COLORS });
        }
        for e in &edges {
            if let Some(c) = e.max_color() {
                if c as usize >= vertex_count {
                    return Err(Error::ColorOutOfRange { color: c, universe: vertex_count });
                }
            }
        }
        canonical_edge_sort(&mut edges);
        Ok(Hypergraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
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

    /// True when no edge contains another.
    pub fn is_antichain(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, a)| {
            self.edges
                .iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.is_subset(*b))
        })
    }
}

/// True iff `candidate` intersects every list of the family.
pub fn is_transversal(candidate: ColorSet, family: &ListFamily) -> Result<bool> {
    if let Some(c) = candidate.max_color() {
        if c as usize >= family.vertex_count() {
            return Err(Error::ColorOutOfRange { color: c, universe: family.vertex_count() });
        }
    }
    Ok(family.lists().iter().all(|l| l.intersects(candidate)))
}

/// Keeps the inclusion-minimal edges, dropping everything that contains a
/// smaller edge. Output is an antichain and every input edge contains some
/// output edge.
pub fn minimal_edges(h: &Hypergraph) -> Hypergraph {
    let minimal = antichain_filter(h.edges().to_vec());
    Hypergraph::new(h.vertex_count(), minimal).expect("edges already validated")
}

/// Antichain of inclusion-minimal sets from an arbitrary collection.
pub(crate) fn antichain_filter(mut edges: Vec<ColorSet>) -> Vec<ColorSet> {
    // Ascending cardinality: a set can only contain strictly smaller kept sets.
    edges.sort_by_key(|e| e.len());
    edges.dedup();
    let mut kept: Vec<ColorSet> = Vec::new();
    for e in edges {
        if !kept.iter().any(|k| k.is_subset(e)) {
            kept.push(e);
        }
    }
    kept
}

/// Enumerates the cover hypergraph of the family's transversal hypergraph:
/// the antichain of inclusion-minimal transversals.
///
/// Walks all `prod |list_i|` tracks, deduplicates their supports and
/// antichain-filters. Every transversal contains some track support, so the
/// minimal supports are exactly the minimal transversals; each returned edge
/// is the support of at least one track by construction.
pub fn enumerate_minimal_transversals(family: &ListFamily) -> Result<Hypergraph> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut supports: Vec<ColorSet> = family.track_supports().collect();
    supports.sort();
    supports.dedup();
    let minimal = antichain_filter(supports);
    Hypergraph::new(family.vertex_count(), minimal)
}

/// Odometer over all tracks, yielding each support.
pub struct TrackSupportIter {
    members: Vec<Vec<Color>>,
    index: Vec<usize>,
    done: bool,
}

impl TrackSupportIter {
    fn new(lists: &[ColorSet]) -> Self {
        let members: Vec<Vec<Color>> = lists.iter().map(|l| l.to_vec()).collect();
        let done = members.is_empty() || members.iter().any(|m| m.is_empty());
        TrackSupportIter { index: vec![0; members.len()], members, done }
    }
}

impl Iterator for TrackSupportIter {
    type Item = ColorSet;

    fn next(&mut self) -> Option<ColorSet> {
        if self.done {
            return None;
        }
        let mut support = ColorSet::EMPTY;
        for (slot, list) in self.index.iter().zip(&self.members) {
            support.insert(list[*slot]);
        }
        // advance the odometer
        let mut i = self.members.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.index[i] += 1;
            if self.index[i] < self.members[i].len() {
                break;
            }
            self.index[i] = 0;
        }
        Some(support)
    }
}
