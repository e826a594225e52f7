//! Bitmask subsets of a small index set.

use std::fmt;

/// Largest index set a [`Subset`] can address.
pub const MAX_ELEMENTS: usize = 31;

/// A subset of `{0, .., MAX_ELEMENTS-1}` stored as a bitmask.
///
/// Ordering is by mask value, which is the canonical order used for
/// minimizer and edge lists throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_ELEMENTS);
        Subset(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> Subset {
        debug_assert!(i < MAX_ELEMENTS);
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        it.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing mask order, starting with the empty set.
    pub fn submasks(self) -> Submasks {
        Submasks {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_indices(iter)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(i as usize)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Submasks {
    universe: u32,
    next: Option<u32>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // Standard "next submask in increasing order" step.
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(Subset(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_enumerate_in_order() {
        let s = Subset::from_indices([0, 2, 3]);
        let subs: Vec<u32> = s.submasks().map(|m| m.0).collect();
        assert_eq!(subs, vec![0, 1, 4, 5, 8, 9, 12, 13]);
        assert_eq!(Subset::EMPTY.submasks().count(), 1);
    }

    #[test]
    fn set_algebra() {
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([1, 2]);
        assert_eq!(a.union(b), Subset::full(3));
        assert_eq!(a.intersection(b), Subset::singleton(1));
        assert_eq!(a.difference(b), Subset::singleton(0));
        assert!(a.intersects(b));
        assert!(Subset::singleton(1).is_subset_of(a));
        assert_eq!(b.min_element(), Some(1));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(Subset::full(MAX_ELEMENTS).len(), MAX_ELEMENTS);
    }
}
