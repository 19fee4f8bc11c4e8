//! Brute-force list-coloring verification on complete bipartite graphs.
//!
//! Two independent criteria certify that an assignment admits no proper
//! coloring: an exhaustive search that fixes the M-side track and greedily
//! satisfies the N-side (complete because N-vertices are mutually
//! non-adjacent), and the transversal criterion: the assignment is bad iff
//! every minimal transversal of the M-lists contains some N-list.

use crate::error::{Error, Result};
use crate::hypergraph::{enumerate_minimal_transversals, ListFamily};
use crate::set::{Color, ColorSet};
use serde::Serialize;

/// Lists on both sides of the bipartition, over a shared color space.
#[derive(Debug, Clone)]
pub struct Assignment {
    m_lists: ListFamily,
    n_lists: ListFamily,
}

impl Assignment {
    /// The M side must be non-empty; the N side may be empty.
    pub fn new(m_lists: ListFamily, n_lists: ListFamily) -> Result<Self> {
        if m_lists.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(Assignment { m_lists, n_lists })
    }

    pub fn from_lists(m: &[Vec<Color>], n: &[Vec<Color>]) -> Result<Self> {
        Assignment::new(ListFamily::new(m)?, ListFamily::new(n)?)
    }

    pub fn m_lists(&self) -> &ListFamily {
        &self.m_lists
    }

    pub fn n_lists(&self) -> &ListFamily {
        &self.n_lists
    }
}

/// A proper coloring: one color per M-list and one per N-list, with no
/// N-choice appearing among the M-choices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProperColoring {
    pub m_colors: Vec<Color>,
    pub n_colors: Vec<Color>,
}

/// Exhaustive search for a proper coloring, or None when the assignment is
/// bad. Iterates M-side tracks; each N-list then needs any color outside
/// the track's support.
pub fn find_proper_coloring(a: &Assignment) -> Option<ProperColoring> {
    let members: Vec<Vec<Color>> = a.m_lists.lists().iter().map(|l| l.to_vec()).collect();
    let n_sets: Vec<ColorSet> = a.n_lists.lists().to_vec();
    let mut index = vec![0usize; members.len()];
    loop {
        let choices: Vec<Color> = index
            .iter()
            .zip(&members)
            .map(|(&i, list)| list[i])
            .collect();
        let support: ColorSet = choices.iter().collect();
        let mut n_colors = Vec::with_capacity(n_sets.len());
        let mut ok = true;
        for n in &n_sets {
            match n.difference(support).min_color() {
                Some(c) => n_colors.push(c),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return Some(ProperColoring { m_colors: choices, n_colors });
        }
        // advance
        let mut i = members.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            index[i] += 1;
            if index[i] < members[i].len() {
                break;
            }
            index[i] = 0;
        }
    }
}

/// True iff every minimal transversal of the M-lists contains some N-list,
/// i.e. the N-lists cover the cover hypergraph of the M-side transversals.
pub fn is_bad_assignment_via_transversals(a: &Assignment) -> bool {
    let targets = enumerate_minimal_transversals(&a.m_lists)
        .expect("assignment construction guarantees a non-empty M side");
    targets
        .edges()
        .iter()
        .all(|t| a.n_lists.lists().iter().any(|n| n.is_subset(*t)))
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct WitnessReport {
    pub m: usize,
    pub n: usize,
    pub list_size: usize,
    pub bad: bool,
    pub method_agreement: bool,
    pub implied_bound: String,
}

/// Runs both criteria and reports whether they agree. A bad assignment with
/// lists of size s witnesses ch(K_{m,n}) >= s+1.
pub fn verify_witness(a: &Assignment) -> Result<WitnessReport> {
    let mut sizes: Vec<usize> = a
        .m_lists
        .lists()
        .iter()
        .chain(a.n_lists.lists())
        .map(|l| l.len())
        .collect();
    sizes.dedup();
    if sizes.len() != 1 {
        sizes.sort();
        sizes.dedup();
        return Err(Error::MixedListSizes { found: sizes });
    }
    let s = sizes[0];
    let m = a.m_lists.len();
    let n = a.n_lists.len();
    let bad = is_bad_assignment_via_transversals(a);
    let coloring = find_proper_coloring(a);
    let method_agreement = bad == coloring.is_none();
    let implied_bound = if bad {
        format!("ch(K_{{{m},{n}}}) >= {}", s + 1)
    } else {
        "none: a proper coloring exists".to_string()
    };
    Ok(WitnessReport { m, n, list_size: s, bad, method_agreement, implied_bound })
}
