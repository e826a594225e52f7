#![allow(dead_code)]

use ska_core::random::{self, HypergraphParams};
use ska_core::{HypergraphicalSource, SourceModel};

/// Seed of the shared random batch.
pub const BATCH_SEED: u64 = 20_160_415;
pub const BATCH_SIZE: usize = 100;

/// 100 random hypergraphical sources, `n` cycling through 4, 5, 6.
pub fn batch() -> Vec<HypergraphicalSource> {
    let mut rng = random::rng(BATCH_SEED);
    (0..BATCH_SIZE)
        .map(|k| {
            let n = 4 + k % 3;
            random::random_hypergraph(&mut rng, HypergraphParams::new(n)).unwrap()
        })
        .collect()
}

pub fn batch_models() -> Vec<SourceModel> {
    batch().into_iter().map(SourceModel::from).collect()
}

/// Sorted label lists, for comparisons that ignore user order.
pub fn canonical_family(mut family: Vec<Vec<String>>) -> Vec<Vec<String>> {
    for set in &mut family {
        set.sort();
    }
    family.sort();
    family
}

pub fn canonical_partitions(ps: Vec<Vec<Vec<String>>>) -> Vec<Vec<Vec<String>>> {
    let mut ps: Vec<_> = ps.into_iter().map(canonical_family).collect();
    ps.sort();
    ps
}
