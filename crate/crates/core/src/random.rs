//! Seeded random instances: hypergraphical sources, PINs on trees, cycles and
//! complete graphs, and submodular set functions for the minimizers.
//!
//! Everything takes an explicit `ChaCha8Rng` so batches are reproducible
//! across platforms.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::rational::Rational;
use crate::sfm::SetFunction;
use crate::source::{pin_source, HypergraphicalSource, WeightedEdge};
use crate::subset::Subset;
use crate::users::UserSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random hypergraphical source.
#[derive(Clone, Copy, Debug)]
pub struct HypergraphParams {
    pub n: usize,
    pub max_edges: usize,
    pub max_denominator: i64,
    pub max_numerator: i64,
}

impl HypergraphParams {
    pub fn new(n: usize) -> Self {
        HypergraphParams {
            n,
            max_edges: 8,
            max_denominator: 6,
            max_numerator: 6,
        }
    }
}

fn random_weight(rng: &mut ChaCha8Rng, max_num: i64, max_den: i64) -> Rational {
    let num = rng.random_range(1..=max_num);
    let den = rng.random_range(1..=max_den);
    Rational::new(num, den)
}

/// A random nonempty subset of `{0..n}` with at least `min_len` elements.
fn random_subset(rng: &mut ChaCha8Rng, n: usize, min_len: usize) -> Subset {
    loop {
        let bits = rng.random_range(1..(1u32 << n));
        let s = Subset(bits);
        if s.len() >= min_len {
            return s;
        }
    }
}

/// Between one and `max_edges` edges, each on at least two users, with
/// weights `p/q`, `1 ≤ p ≤ max_numerator`, `1 ≤ q ≤ max_denominator`.
pub fn random_hypergraph(
    rng: &mut ChaCha8Rng,
    params: HypergraphParams,
) -> Result<HypergraphicalSource> {
    let users = UserSet::numbered(params.n)?;
    let count = rng.random_range(1..=params.max_edges);
    let edges = (0..count)
        .map(|_| WeightedEdge {
            members: random_subset(rng, params.n, 2),
            weight: random_weight(rng, params.max_numerator, params.max_denominator),
        })
        .collect();
    HypergraphicalSource::new(users, edges)
}

/// Unit-weight PIN on a random labelled tree: each vertex attaches to a
/// uniformly chosen earlier vertex, then labels are shuffled.
pub fn random_tree_pin(
    rng: &mut ChaCha8Rng,
    n: usize,
) -> Result<(HypergraphicalSource, Vec<(usize, usize)>)> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|v| {
            let u = rng.random_range(0..v);
            (perm[u], perm[v])
        })
        .collect();
    Ok((unit_pin(n, &edges)?, edges))
}

/// Unit-weight PIN on the given graph edges (indices into `1..=n` labels).
pub fn unit_pin(n: usize, edges: &[(usize, usize)]) -> Result<HypergraphicalSource> {
    let users = UserSet::numbered(n)?;
    let labelled: Vec<(String, String, Rational)> = edges
        .iter()
        .map(|&(a, b)| {
            (
                users.label(a).to_string(),
                users.label(b).to_string(),
                Rational::one(),
            )
        })
        .collect();
    pin_source(users, &labelled)
}

pub fn complete_pin(n: usize) -> Result<HypergraphicalSource> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    unit_pin(n, &edges)
}

pub fn cycle_pin(n: usize) -> Result<HypergraphicalSource> {
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    unit_pin(n, &edges)
}

/// Unit-weight PIN where each pair is an edge with probability `p`.
pub fn random_unit_pin(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<HypergraphicalSource> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    unit_pin(n, &edges)
}

/// A set function stored as a full table of values, indexed by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedFunction {
    n: usize,
    values: Vec<Rational>,
}

impl TabulatedFunction {
    pub fn from_fn(n: usize, f: impl Fn(Subset) -> Rational) -> Self {
        let values = Subset::full(n).submasks().map(f).collect();
        TabulatedFunction { n, values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl SetFunction for TabulatedFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, set: Subset) -> Rational {
        self.values[set.bits() as usize].clone()
    }
}

fn random_modular(rng: &mut ChaCha8Rng, n: usize, scale: i64) -> Vec<Rational> {
    (0..n)
        .map(|_| Rational::new(rng.random_range(-scale..=scale), rng.random_range(1..=4)))
        .collect()
}

fn modular_sum(m: &[Rational], set: Subset) -> Rational {
    set.iter().map(|i| &m[i]).sum()
}

/// Weighted coverage minus a random modular function.
pub fn random_coverage_minus_modular(rng: &mut ChaCha8Rng, n: usize) -> TabulatedFunction {
    let items = rng.random_range(2..=8usize);
    let item_weights: Vec<Rational> = (0..items).map(|_| random_weight(rng, 5, 3)).collect();
    let covers: Vec<u32> = (0..n)
        .map(|_| rng.random_range(0..(1u32 << items)))
        .collect();
    let modular = random_modular(rng, n, 6);
    TabulatedFunction::from_fn(n, |s| {
        let covered = s.iter().fold(0u32, |acc, i| acc | covers[i]);
        let cover: Rational = Subset(covered).iter().map(|k| &item_weights[k]).sum();
        cover - modular_sum(&modular, s)
    })
}

/// Rank of a truncated partition matroid minus a random modular function.
pub fn random_matroid_minus_modular(rng: &mut ChaCha8Rng, n: usize) -> TabulatedFunction {
    let parts = rng.random_range(1..=n.clamp(1, 4));
    let part_of: Vec<usize> = (0..n).map(|_| rng.random_range(0..parts)).collect();
    let capacity: Vec<usize> = (0..parts).map(|_| rng.random_range(1..=3)).collect();
    let truncation = rng.random_range(1..=n.max(1));
    let modular = random_modular(rng, n, 3);
    TabulatedFunction::from_fn(n, |s| {
        let mut used = vec![0usize; parts];
        for i in s.iter() {
            used[part_of[i]] += 1;
        }
        let rank: usize = used
            .iter()
            .zip(&capacity)
            .map(|(u, c)| (*u).min(*c))
            .sum::<usize>()
            .min(truncation);
        Rational::from_integer(rank as i64) - modular_sum(&modular, s)
    })
}

/// Alternates between the two submodular families.
pub fn random_submodular(rng: &mut ChaCha8Rng, n: usize) -> TabulatedFunction {
    if rng.random_bool(0.5) {
        random_coverage_minus_modular(rng, n)
    } else {
        random_matroid_minus_modular(rng, n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_submodular(f: &TabulatedFunction) -> bool {
        let n = f.ground_size();
        let all = Subset::full(n);
        all.submasks().all(|a| {
            all.submasks()
                .all(|b| f.eval(a) + f.eval(b) >= f.eval(a.union(b)) + f.eval(a.intersection(b)))
        })
    }

    #[test]
    fn random_functions_are_submodular() {
        let mut r = rng(7);
        for n in 1..=6 {
            for _ in 0..10 {
                assert!(is_submodular(&random_coverage_minus_modular(&mut r, n)));
                assert!(is_submodular(&random_matroid_minus_modular(&mut r, n)));
            }
        }
    }

    #[test]
    fn hypergraph_respects_params() {
        let mut r = rng(1);
        for _ in 0..50 {
            let h = random_hypergraph(&mut r, HypergraphParams::new(5)).unwrap();
            assert!((1..=8).contains(&h.edges().len()));
            for e in h.edges() {
                assert!(e.members.len() >= 2);
                assert!(e.weight.is_positive());
                assert!(*e.weight.denom() <= 6.into());
            }
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_hypergraph(&mut rng(42), HypergraphParams::new(6)).unwrap();
        let b = random_hypergraph(&mut rng(42), HypergraphParams::new(6)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tree_has_n_minus_one_edges() {
        let mut r = rng(3);
        for n in 2..=8 {
            let (pin, edges) = random_tree_pin(&mut r, n).unwrap();
            assert_eq!(edges.len(), n - 1);
            assert_eq!(
                pin.entropy(Subset::full(n)),
                Rational::from_integer(n as i64 - 1)
            );
        }
    }

    #[test]
    fn standard_graphs() {
        assert_eq!(complete_pin(4).unwrap().edges().len(), 6);
        assert_eq!(cycle_pin(5).unwrap().edges().len(), 5);
    }
}
