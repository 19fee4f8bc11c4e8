//! Dense color sets backed by a 128-bit mask.
//!
//! All set systems in this crate live over a dense 0-based color range.
//! The universe is capped at [`MAX_COLORS`]; constructors reject anything
//! larger, which keeps subset tests and intersections single instructions.

use std::fmt;

/// A color identifier inside a dense 0-based universe.
pub type Color = u32;

/// Largest supported color universe.
pub const MAX_COLORS: usize = 128;

/// An immutable set of colors; doubles as a hyperedge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ColorSet(u128);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn singleton(c: Color) -> Self {
        debug_assert!((c as usize) < MAX_COLORS);
        ColorSet(1u128 << c)
    }

    pub fn insert(&mut self, c: Color) {
        debug_assert!((c as usize) < MAX_COLORS);
        self.0 |= 1u128 << c;
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1u128 << c);
    }

    pub fn contains(self, c: Color) -> bool {
        (c as usize) < MAX_COLORS && self.0 >> c & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ColorSet) -> bool {
        self.0 != other.0 && self.is_subset(other)
    }

    pub fn intersects(self, other: ColorSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & other.0)
    }

    pub fn difference(self, other: ColorSet) -> ColorSet {
        ColorSet(self.0 & !other.0)
    }

    /// Smallest member, if any.
    pub fn min_color(self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }

    /// Largest member, if any.
    pub fn max_color(self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            Some(127 - self.0.leading_zeros())
        }
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<Color> {
        self.iter().collect()
    }

    /// Ascending-member-list order; this is the canonical edge order used
    /// for serialization (e.g. `[1,3] < [1,3,4] < [1,4]`).
    pub fn cmp_lex(self, other: ColorSet) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut a = self.0;
        let mut b = other.0;
        loop {
            match (a, b) {
                (0, 0) => return Ordering::Equal,
                (0, _) => return Ordering::Less,
                (_, 0) => return Ordering::Greater,
                _ => {}
            }
            let ta = a.trailing_zeros();
            let tb = b.trailing_zeros();
            match ta.cmp(&tb) {
                Ordering::Equal => {
                    a &= a - 1;
                    b &= b - 1;
                }
                ord => return ord,
            }
        }
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

impl<'a> FromIterator<&'a Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = &'a Color>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = Color;

    fn next(&mut self) -> Option<Color> {
        if self.0 == 0 {
            None
        } else {
            let c = self.0.trailing_zeros();
            self.0 &= self.0 - 1;
            Some(c)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Sorts edges into the canonical serialization order and drops duplicates.
pub fn canonical_edge_sort(edges: &mut Vec<ColorSet>) {
    edges.sort_by(|a, b| a.cmp_lex(*b));
    edges.dedup();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a: ColorSet = [1u32, 3, 5].into_iter().collect();
        let b: ColorSet = [3u32, 5].into_iter().collect();
        assert_eq!(a.len(), 3);
        assert!(b.is_subset(a));
        assert!(b.is_proper_subset(a));
        assert!(!a.is_subset(b));
        assert!(a.intersects(b));
        assert_eq!(a.intersection(b), b);
        assert_eq!(a.difference(b), ColorSet::singleton(1));
        assert_eq!(a.to_vec(), vec![1, 3, 5]);
        assert_eq!(a.min_color(), Some(1));
        assert_eq!(a.max_color(), Some(5));
    }

    #[test]
    fn lex_order_is_member_list_order() {
        let mk = |v: &[Color]| v.iter().collect::<ColorSet>();
        let mut edges = vec![mk(&[1, 4]), mk(&[0]), mk(&[1, 3, 4]), mk(&[1, 3]), mk(&[1, 3])];
        canonical_edge_sort(&mut edges);
        let as_vecs: Vec<Vec<Color>> = edges.iter().map(|e| e.to_vec()).collect();
        let mut expect = as_vecs.clone();
        expect.sort();
        assert_eq!(as_vecs, expect);
        assert_eq!(edges.len(), 4);
    }

    #[test]
    fn high_bits() {
        let mut s = ColorSet::EMPTY;
        s.insert(127);
        s.insert(0);
        assert_eq!(s.to_vec(), vec![0, 127]);
        assert_eq!(s.max_color(), Some(127));
    }
}
