//! Set partitions, their refinement order, and streaming enumeration.
//!
//! Partitions are enumerated as restricted-growth strings: position `t`
//! holds the block label of the `t`-th ground element, and every label is at
//! most one more than the largest label before it. Labels are assigned in
//! order of first appearance, so the induced block list is already sorted by
//! minimum element.

use std::fmt;

use crate::error::{Error, Result};
use crate::subset::Subset;

/// Disjoint nonempty blocks covering a ground set, sorted by minimum element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    blocks: Vec<Subset>,
}

impl Partition {
    pub fn new(ground: Subset, mut blocks: Vec<Subset>) -> Result<Self> {
        let mut seen = Subset::EMPTY;
        for &b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if b.intersects(seen) {
                return Err(Error::InvalidPartition(format!(
                    "block {b:?} overlaps another"
                )));
            }
            seen = seen.union(b);
        }
        if seen != ground {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {seen:?}, expected {ground:?}"
            )));
        }
        blocks.sort_by_key(|b| b.min_element());
        Ok(Partition { blocks })
    }

    /// Blocks already known to be canonical (disjoint, nonempty, sorted).
    pub(crate) fn from_sorted_blocks(blocks: Vec<Subset>) -> Self {
        debug_assert!(blocks
            .windows(2)
            .all(|w| w[0].min_element() < w[1].min_element()));
        Partition { blocks }
    }

    pub fn singletons(ground: Subset) -> Self {
        Partition {
            blocks: ground.iter().map(Subset::singleton).collect(),
        }
    }

    pub fn single_block(ground: Subset) -> Self {
        Partition {
            blocks: vec![ground],
        }
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn ground(&self) -> Subset {
        self.blocks
            .iter()
            .fold(Subset::EMPTY, |acc, &b| acc.union(b))
    }

    pub fn block_of(&self, element: usize) -> Option<Subset> {
        self.blocks.iter().copied().find(|b| b.contains(element))
    }

    /// True iff every block of `self` lies inside some block of `coarser`.
    pub fn is_refinement_of(&self, coarser: &Partition) -> Result<bool> {
        if self.ground() != coarser.ground() {
            return Err(Error::GroundMismatch);
        }
        Ok(self
            .blocks
            .iter()
            .all(|&b| coarser.blocks.iter().any(|&c| b.is_subset_of(c))))
    }

    /// Number of blocks meeting `set`.
    pub fn blocks_crossed(&self, set: Subset) -> usize {
        self.blocks.iter().filter(|b| b.intersects(set)).count()
    }

    /// True iff `set` meets at least two blocks.
    pub fn is_crossed_by(&self, set: Subset) -> bool {
        self.blocks_crossed(set) >= 2
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        if self.ground() != other.ground() {
            return Err(Error::GroundMismatch);
        }
        let mut blocks: Vec<Subset> = self
            .blocks
            .iter()
            .flat_map(|&p| other.blocks.iter().map(move |&q| p.intersection(q)))
            .filter(|b| !b.is_empty())
            .collect();
        blocks.sort_by_key(|b| b.min_element());
        Ok(Partition { blocks })
    }

    /// Merges the blocks of `self` according to a partition of block indices.
    pub fn coarsen(&self, groups: &Partition) -> Partition {
        let mut blocks: Vec<Subset> = groups
            .blocks
            .iter()
            .map(|g| {
                g.iter()
                    .fold(Subset::EMPTY, |acc, i| acc.union(self.blocks[i]))
            })
            .collect();
        blocks.sort_by_key(|b| b.min_element());
        Partition { blocks }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.blocks.iter()).finish()
    }
}

/// Streams every partition of `ground` with at least `min_blocks` blocks.
pub fn enumerate_partitions(ground: Subset, min_blocks: usize) -> Partitions {
    Partitions::new(ground, min_blocks)
}

/// Restricted-growth-string cursor. `advance` moves to the next string in
/// lexicographic order; the block view is refreshed on each step.
pub(crate) struct RgsCursor {
    elements: Vec<usize>,
    labels: Vec<usize>,
    prefix_max: Vec<usize>,
    blocks: Vec<Subset>,
    started: bool,
}

impl RgsCursor {
    pub(crate) fn new(ground: Subset) -> Self {
        let elements: Vec<usize> = ground.iter().collect();
        let m = elements.len();
        RgsCursor {
            elements,
            labels: vec![0; m],
            prefix_max: vec![0; m],
            blocks: Vec::with_capacity(m),
            started: false,
        }
    }

    /// Next block list, or `None` once all strings have been visited.
    pub(crate) fn advance(&mut self) -> Option<&[Subset]> {
        let m = self.elements.len();
        if m == 0 {
            return None;
        }
        if !self.started {
            self.started = true;
        } else {
            let pos = (1..m)
                .rev()
                .find(|&i| self.labels[i] <= self.prefix_max[i - 1])?;
            self.labels[pos] += 1;
            self.prefix_max[pos] = self.prefix_max[pos - 1].max(self.labels[pos]);
            for i in pos + 1..m {
                self.labels[i] = 0;
                self.prefix_max[i] = self.prefix_max[pos];
            }
        }
        let k = self.prefix_max[m - 1] + 1;
        self.blocks.clear();
        self.blocks.resize(k, Subset::EMPTY);
        for (t, &e) in self.elements.iter().enumerate() {
            let b = &mut self.blocks[self.labels[t]];
            *b = b.with(e);
        }
        Some(&self.blocks)
    }
}

pub struct Partitions {
    cursor: RgsCursor,
    min_blocks: usize,
}

impl Partitions {
    pub fn new(ground: Subset, min_blocks: usize) -> Self {
        Partitions {
            cursor: RgsCursor::new(ground),
            min_blocks,
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        loop {
            let blocks = self.cursor.advance()?;
            if blocks.len() >= self.min_blocks {
                return Some(Partition::from_sorted_blocks(blocks.to_vec()));
            }
        }
    }
}

/// Bell numbers `B(0..=n)` via the Bell triangle.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut bells = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(*row.last().unwrap());
        for v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        bells.push(next[0]);
        row = next;
    }
    bells
}
