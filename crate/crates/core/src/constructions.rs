//! Generators for the explicit list families behind each bound, the lift
//! that transports a bound from m to m' = k(m-2)+2, and the trivial
//! non-choosability pair.
//!
//! Color ids are allocated deterministically block by block (shared blocks
//! first, then singles, then disjoint tails) so golden files stay stable.

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, ListFamily};
use crate::set::{Color, ColorSet};
use num::BigUint;

/// Parameters of the five-list intersection template: lists 1..5 pairwise
/// intersect in blocks of sizes k1..k4, triple intersections are empty, and
/// the remaining m-5 lists are disjoint from everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem2Params {
    pub m: usize,
    pub k: [usize; 5],
}

impl Theorem2Params {
    pub fn new(m: usize, k: [usize; 5]) -> Result<Self> {
        if m < 5 {
            return Err(Error::InvalidParams(format!(
                "the five-list template needs m >= 5, got {m}"
            )));
        }
        let sum: usize = k.iter().sum();
        if sum != m - 2 {
            return Err(Error::InvalidParams(format!(
                "k1+..+k5 must equal m-2 = {}, got {sum}",
                m - 2
            )));
        }
        if 4 * k[3] > m - 2 {
            return Err(Error::InvalidParams(format!(
                "4*k4 must be at most m-2 = {}, got {}",
                m - 2,
                4 * k[3]
            )));
        }
        Ok(Theorem2Params { m, k })
    }
}

/// Parameters of the asymptotic template: lists 1..3 share k >= 2 colors,
/// lists 2 and 3 share l more, and each remaining color of list 1 appears
/// in exactly one later list.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem3Params {
    pub m: usize,
    pub k: usize,
    pub l: usize,
}

impl Theorem3Params {
    pub fn new(m: usize, k: usize, l: usize) -> Result<Self> {
        if m < 6 {
            return Err(Error::InvalidParams(format!(
                "the shared-core template needs m >= 6, got {m}"
            )));
        }
        if k < 2 {
            return Err(Error::InvalidParams(format!("core size k must be >= 2, got {k}")));
        }
        if k + l > m - 2 {
            return Err(Error::InvalidParams(format!(
                "k + l must be at most m-2 = {}, got {}",
                m - 2,
                k + l
            )));
        }
        Ok(Theorem3Params { m, k, l })
    }
}

/// Sequential block allocator for color ids.
struct Blocks {
    next: Color,
}

impl Blocks {
    fn new() -> Self {
        Blocks { next: 0 }
    }

    fn take(&mut self, n: usize) -> Vec<Color> {
        let start = self.next;
        self.next += n as Color;
        (start..self.next).collect()
    }
}

/// Builds the five-list intersection family: m lists of size m-2 realizing
/// exactly the pairwise pattern of `p`, with all triple intersections empty
/// and lists 6..m disjoint from everything.
pub fn theorem2_family(p: &Theorem2Params) -> Result<ListFamily> {
    let Theorem2Params { m, k } = *p;
    let [k1, k2, k3, k4, k5] = k;
    let mut b = Blocks::new();
    let v1 = b.take(k1); // l1 & l2
    let v2 = b.take(k1); // l3 & l4
    let v3 = b.take(k2); // l1 & l3
    let v4 = b.take(k2); // l2 & l4
    let v5 = b.take(k3); // l1 & l4
    let v6 = b.take(k3); // l2 & l3
    let v7 = b.take(k4); // l1 & l5
    let v8 = b.take(k4); // l2 & l5
    let v9 = b.take(k4); // l3 & l5
    let v10 = b.take(k4); // l4 & l5
    let v11 = b.take(k5); // l1 only
    let v12 = b.take(k5); // l2 only
    let v13 = b.take(k5); // l3 only
    let v14 = b.take(k5); // l4 only
    let v15 = b.take(m - 2 - 4 * k4); // l5 only

    let cat = |blocks: &[&Vec<Color>]| -> Vec<Color> {
        blocks.iter().flat_map(|b| b.iter().copied()).collect()
    };
    let mut lists = vec![
        cat(&[&v1, &v3, &v5, &v7, &v11]),
        cat(&[&v1, &v4, &v6, &v8, &v12]),
        cat(&[&v2, &v3, &v6, &v9, &v13]),
        cat(&[&v2, &v4, &v5, &v10, &v14]),
        cat(&[&v7, &v8, &v9, &v10, &v15]),
    ];
    for _ in 5..m {
        lists.push(b.take(m - 2));
    }
    let family = ListFamily::new(&lists)?;
    check_theorem2_structure(&family, p);
    Ok(family)
}

fn check_theorem2_structure(f: &ListFamily, p: &Theorem2Params) {
    let [k1, k2, k3, k4, _] = p.k;
    let l = f.lists();
    let pair = |a: usize, b: usize| l[a].intersection(l[b]).len();
    assert_eq!(pair(0, 1), k1);
    assert_eq!(pair(2, 3), k1);
    assert_eq!(pair(0, 2), k2);
    assert_eq!(pair(1, 3), k2);
    assert_eq!(pair(0, 3), k3);
    assert_eq!(pair(1, 2), k3);
    for i in 0..4 {
        assert_eq!(pair(i, 4), k4);
    }
    for a in 0..5 {
        for b in a + 1..5 {
            for c in b + 1..5 {
                assert!(l[a].intersection(l[b]).intersection(l[c]).is_empty());
            }
        }
    }
    for i in 5..p.m {
        for j in 0..p.m {
            if i != j {
                assert!(l[i].intersection(l[j]).is_empty());
            }
        }
    }
    assert_eq!(f.uniform_list_size(), Some(p.m - 2));
}

/// Internal layout of a generated shared-core family; the cover
/// construction needs the blocks, not just the lists.
struct Theorem3Layout {
    lists: Vec<Vec<Color>>,
    core: Vec<Color>,          // l1 ∩ l2 ∩ l3
    shared23: Vec<Color>,      // (l2 ∩ l3) \ l1
    singles: Vec<Color>,       // colors of l1 placed one each in l4..
    fresh2: Vec<Color>,        // l2 \ (core ∪ shared23)
    fresh3: Vec<Color>,        // l3 \ (core ∪ shared23)
}

fn theorem3_layout(p: &Theorem3Params) -> Theorem3Layout {
    let Theorem3Params { m, k, l } = *p;
    let mut b = Blocks::new();
    let core = b.take(k);
    let shared23 = b.take(l);
    let singles = b.take(m - 2 - k);
    let fresh2 = b.take(m - 2 - k - l);
    let fresh3 = b.take(m - 2 - k - l);
    let cat = |parts: &[&[Color]]| -> Vec<Color> {
        parts.iter().flat_map(|p| p.iter().copied()).collect()
    };
    let mut lists = vec![
        cat(&[&core, &singles]),
        cat(&[&core, &shared23, &fresh2]),
        cat(&[&core, &shared23, &fresh3]),
    ];
    for &s in &singles {
        lists.push(cat(&[&[s], &b.take(m - 3)]));
    }
    while lists.len() < m {
        lists.push(b.take(m - 2));
    }
    Theorem3Layout { lists, core, shared23, singles, fresh2, fresh3 }
}

/// Builds the shared-core family of `p`: m lists of size m-2 with
/// |l1∩l2∩l3| = k, |(l2∩l3)\l1| = l, each remaining color of l1 in exactly
/// one distinct later list, and all other colors unique.
pub fn theorem3_family(p: &Theorem3Params) -> Result<ListFamily> {
    let layout = theorem3_layout(p);
    let family = ListFamily::new(&layout.lists)?;
    check_theorem3_structure(&family, p);
    Ok(family)
}

fn check_theorem3_structure(f: &ListFamily, p: &Theorem3Params) {
    let l = f.lists();
    let core = l[0].intersection(l[1]).intersection(l[2]);
    assert_eq!(core.len(), p.k);
    assert_eq!(l[1].intersection(l[2]).difference(l[0]).len(), p.l);
    let single_count = p.m - 2 - p.k;
    for i in 3..3 + single_count {
        assert_eq!(l[0].intersection(l[i]).len(), 1);
    }
    for i in 3 + single_count..p.m {
        assert!(l[0].intersection(l[i]).is_empty());
    }
    assert_eq!(f.uniform_list_size(), Some(p.m - 2));
}

/// The three-part cover of the shared-core family, emitted explicitly.
///
/// Part 1: one core color chosen from l1,l2,l3, anything from the rest.
/// Part 2: one shared l2/l3 color, plus a choice over the single-bearing
/// lists in which at least one list picks its own l1 color, plus anything
/// from the all-fresh lists. Part 3: the same fixed-point choices combined
/// with fresh colors from l2 and l3, with the last list dropped.
pub fn theorem3_cover(p: &Theorem3Params) -> Result<Cover> {
    let layout = theorem3_layout(p);
    let Theorem3Params { m, k, .. } = *p;
    let single_count = m - 2 - k;
    let single_lists = &layout.lists[3..3 + single_count];
    let fresh_lists = &layout.lists[3 + single_count..];
    assert_eq!(fresh_lists.len(), k - 1);

    let mut edges: Vec<ColorSet> = Vec::new();
    let base: ColorSet = ColorSet::EMPTY;

    // part 1
    for &c in &layout.core {
        push_product(&mut edges, base.union(ColorSet::singleton(c)), &layout.lists[3..]);
    }

    // choice sets over the single-bearing lists with at least one list
    // picking its own l1 color
    let mut fixpoint_choices: Vec<ColorSet> = Vec::new();
    collect_fixpoint_choices(single_lists, &layout.singles, 0, false, ColorSet::EMPTY, &mut fixpoint_choices);

    // part 2
    for &j in &layout.shared23 {
        for &sc in &fixpoint_choices {
            push_product(&mut edges, sc.union(ColorSet::singleton(j)), fresh_lists);
        }
    }

    // part 3: tracks truncated past the last list
    let trimmed = &fresh_lists[..fresh_lists.len() - 1];
    for &x2 in &layout.fresh2 {
        for &x3 in &layout.fresh3 {
            let seed: ColorSet = [x2, x3].into_iter().collect();
            for &sc in &fixpoint_choices {
                push_product(&mut edges, sc.union(seed), trimmed);
            }
        }
    }

    Cover::new(m - 2, edges)
}

/// Extends `seed` by every combination of one color per list in `lists` and
/// pushes the resulting sets.
fn push_product(out: &mut Vec<ColorSet>, seed: ColorSet, lists: &[Vec<Color>]) {
    if lists.is_empty() {
        out.push(seed);
        return;
    }
    let mut index = vec![0usize; lists.len()];
    loop {
        let mut edge = seed;
        for (slot, list) in index.iter().zip(lists) {
            edge.insert(list[*slot]);
        }
        out.push(edge);
        let mut i = lists.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            index[i] += 1;
            if index[i] < lists[i].len() {
                break;
            }
            index[i] = 0;
        }
    }
}

fn collect_fixpoint_choices(
    lists: &[Vec<Color>],
    own: &[Color],
    i: usize,
    has_fixpoint: bool,
    acc: ColorSet,
    out: &mut Vec<ColorSet>,
) {
    if i == lists.len() {
        if has_fixpoint {
            out.push(acc);
        }
        return;
    }
    for &c in &lists[i] {
        let mut next = acc;
        next.insert(c);
        collect_fixpoint_choices(lists, own, i + 1, has_fixpoint || c == own[i], next, out);
    }
}

/// Lifts a base family of m lists of size m-2 to m' = copies*(m-2)+2 lists
/// of size m'-2: the first m lists are coordinate-wise unions of
/// color-disjoint copies of the base (copy 1 is the base itself), and the
/// remaining m'-m lists are fresh and disjoint.
pub fn theorem1_lift(base: &ListFamily, copies: usize) -> Result<ListFamily> {
    let m = base.require_square()?;
    if copies < 1 {
        return Err(Error::InvalidParams("need at least one copy".into()));
    }
    let mp = copies * (m - 2) + 2;
    let shift = base.vertex_count() as Color;
    let mut lists: Vec<Vec<Color>> = Vec::with_capacity(mp);
    for l in base.lists() {
        let mut merged: Vec<Color> = Vec::with_capacity(copies * (m - 2));
        for j in 0..copies {
            merged.extend(l.iter().map(|c| c + j as Color * shift));
        }
        lists.push(merged);
    }
    let mut next = copies as Color * shift;
    for _ in m..mp {
        lists.push((next..next + (mp - 2) as Color).collect());
        next += (mp - 2) as Color;
    }
    ListFamily::new(&lists)
}

/// The cover that transports a weighted cover of the base's quotient to the
/// lifted family: the representatives of the m'-m fresh lists are appended
/// to every edge. Copy 1 of the lift is the base itself, so the base
/// representatives remain representatives upstairs.
pub fn theorem1_lift_cover(base_cover: &Cover, base: &ListFamily, copies: usize) -> Result<Cover> {
    let m = base.require_square()?;
    if base_cover.k() != m - 2 {
        return Err(Error::EdgeSizeMismatch { k: m - 2, found: base_cover.k() });
    }
    let lifted = theorem1_lift(base, copies)?;
    let mp = lifted.len();
    let tail_reps: ColorSet = lifted.lists()[m..]
        .iter()
        .map(|l| l.min_color().expect("fresh lists are non-empty"))
        .collect();
    let edges: Vec<ColorSet> = base_cover
        .edges()
        .iter()
        .map(|e| e.union(tail_reps))
        .collect();
    Cover::new(mp - 2, edges)
}

/// The m-disjoint-lists pair: m pairwise-disjoint m-lists on one side and
/// all m^m track supports on the other; not choosable from lists of size m.
pub fn trivial_family(m: usize) -> Result<(ListFamily, Hypergraph)> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("need m >= 2, got {m}")));
    }
    let lists: Vec<Vec<Color>> = (0..m)
        .map(|i| ((i * m) as Color..(i * m + m) as Color).collect())
        .collect();
    let family = ListFamily::new(&lists)?;
    let supports: Vec<ColorSet> = family.track_supports().collect();
    let n_side = Hypergraph::new(m * m, supports)?;
    Ok((family, n_side))
}

/// The interval of n on which the choice number of K_{m,n} equals m:
/// ((m-1)^(m-1) - (m-2)^(m-1), m^m), as exact integers.
pub fn hoffman_johnson_range(m: usize) -> Result<(BigUint, BigUint)> {
    if m < 2 {
        return Err(Error::InvalidParams(format!("need m >= 2, got {m}")));
    }
    let m = m as u32;
    let low = BigUint::from(m - 1).pow(m - 1) - BigUint::from(m - 2).pow(m - 1);
    let high = BigUint::from(m).pow(m);
    Ok((low, high))
}
