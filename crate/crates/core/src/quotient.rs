//! Min-equal quotients and the weighted-cover reduction.
//!
//! Colors that belong to exactly the same lists are interchangeable inside
//! minimal transversals, so each such class can be collapsed onto one
//! representative carrying the class size as a weight. A minimum cover of
//! the original instance then corresponds to a minimum *weighted* cover of
//! the collapsed one, and [`lift_cover`] expands a weighted cover back into
//! a plain cover of matching cardinality.

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::hypergraph::{enumerate_minimal_transversals, ListFamily};
use crate::set::{Color, ColorSet};
use num::BigUint;

/// A class of colors sharing one list-membership pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    pub representative: Color,
    pub members: ColorSet,
}

impl PartitionClass {
    pub fn weight(&self) -> u64 {
        self.members.len() as u64
    }
}

/// A quotient family of representatives with positive integer weights.
#[derive(Debug, Clone)]
pub struct WeightedFamily {
    family: ListFamily,
    classes: Vec<PartitionClass>,
    origin: ListFamily,
}

impl WeightedFamily {
    /// Representative lists (generally non-uniform even when the origin is).
    pub fn family(&self) -> &ListFamily {
        &self.family
    }

    pub fn classes(&self) -> &[PartitionClass] {
        &self.classes
    }

    pub fn origin(&self) -> &ListFamily {
        &self.origin
    }

    pub fn representative_set(&self) -> ColorSet {
        self.classes.iter().map(|c| c.representative).collect()
    }

    pub fn weight_of(&self, rep: Color) -> Option<u64> {
        self.classes
            .iter()
            .find(|c| c.representative == rep)
            .map(|c| c.weight())
    }

    /// Per-color weight table over the origin universe; non-representatives
    /// get weight 0 so that misuse is caught by the solver's validation.
    pub fn weight_table(&self) -> Vec<u64> {
        let mut table = vec![0u64; self.origin.vertex_count()];
        for c in &self.classes {
            table[c.representative as usize] = c.weight();
        }
        table
    }
}

/// Groups colors by their exact list-membership pattern. Two colors share a
/// class iff they belong to exactly the same lists; the representative is
/// the minimum-id member and classes come sorted by representative.
pub fn membership_pattern_partition(family: &ListFamily) -> Result<Vec<PartitionClass>> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let union = family.color_union();
    let mut classes: Vec<(Vec<usize>, PartitionClass)> = Vec::new();
    for c in union.iter() {
        let pattern: Vec<usize> = family
            .lists()
            .iter()
            .enumerate()
            .filter(|(_, l)| l.contains(c))
            .map(|(i, _)| i)
            .collect();
        match classes.iter_mut().find(|(p, _)| *p == pattern) {
            Some((_, class)) => class.members.insert(c),
            None => classes.push((
                pattern,
                PartitionClass { representative: c, members: ColorSet::singleton(c) },
            )),
        }
    }
    // iteration over the union is ascending, so the first member seen is the
    // minimum; classes only need the final sort by representative
    let mut out: Vec<PartitionClass> = classes.into_iter().map(|(_, c)| c).collect();
    out.sort_by_key(|c| c.representative);
    Ok(out)
}

/// Collapses each membership class onto its representative and attaches the
/// class size as a weight. The cover universe is the complete k-uniform
/// hypergraph over the colors, under which all vertices are interchangeable,
/// so min-equality of a class is the only condition that matters.
pub fn quotient_family(family: &ListFamily) -> Result<WeightedFamily> {
    let classes = membership_pattern_partition(family)?;
    let rep_set: ColorSet = classes.iter().map(|c| c.representative).collect();
    let lists: Vec<ColorSet> = family
        .lists()
        .iter()
        .map(|l| l.intersection(rep_set))
        .collect();
    Ok(WeightedFamily {
        family: ListFamily::from_sets(lists),
        classes,
        origin: family.clone(),
    })
}

/// Exact weighted value of a cover: the sum over cover edges of the product
/// of member weights.
pub fn weighted_value(cover: &Cover, wf: &WeightedFamily) -> Result<BigUint> {
    let table = wf.weight_table();
    let mut total = BigUint::from(0u32);
    for e in cover.edges() {
        let mut prod = BigUint::from(1u32);
        for c in e.iter() {
            let w = table.get(c as usize).copied().unwrap_or(0);
            if w == 0 {
                return Err(Error::UnknownRepresentative(c));
            }
            prod *= BigUint::from(w);
        }
        total += prod;
    }
    Ok(total)
}

/// Expands a weighted cover of the quotient into a plain cover of the
/// origin: each edge is replaced by every combination of class members of
/// its representatives. The result covers every minimal transversal of the
/// origin and its cardinality equals the weighted value of the input.
pub fn lift_cover(cover: &Cover, wf: &WeightedFamily) -> Result<Cover> {
    let rep_set = wf.representative_set();
    for e in cover.edges() {
        if !e.is_subset(rep_set) {
            return Err(Error::UnknownRepresentative(e.difference(rep_set).min_color().unwrap()));
        }
    }
    let quotient_targets = enumerate_minimal_transversals(wf.family())?;
    if !crate::cover::verify_cover(cover, &quotient_targets) {
        return Err(Error::InvalidCover);
    }

    let class_of = |rep: Color| -> &ColorSet {
        &wf.classes
            .iter()
            .find(|c| c.representative == rep)
            .expect("representative checked above")
            .members
    };

    let mut out: Vec<ColorSet> = Vec::new();
    for e in cover.edges() {
        let member_lists: Vec<Vec<Color>> = e.iter().map(|r| class_of(r).to_vec()).collect();
        // odometer over the cartesian product of the classes
        let mut index = vec![0usize; member_lists.len()];
        loop {
            let edge: ColorSet = index
                .iter()
                .zip(&member_lists)
                .map(|(&i, mems)| mems[i])
                .collect();
            out.push(edge);
            let mut i = member_lists.len();
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
    Cover::new(cover.k(), out)
}
