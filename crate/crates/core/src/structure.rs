//! Structure of the optimal partitions seen through the zero-singleton
//! submodular function
//!
//! ```text
//! g(B) = h_γ(∪_{i∈B} C*_i) − Σ_{i∈B} h_γ(C*_i),   B ⊆ [ℓ],   g(∅) := 0,
//! ```
//!
//! where `C*_1..C*_ℓ` are the blocks of the fundamental partition and
//! `h_γ(C) = H(C) − γ`. Its nonempty zero sets are exactly the index sets
//! whose unions are blocks of optimal partitions (or all of `V`), which gives
//! `T_max` and the uniqueness test through submodular minimization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mmi::{i_p, MmiResult};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::sfm::{LatticeFamily, SetFunction, SfmEngine, DEFAULT_BRUTE_FORCE_CAP};
use crate::source::SourceModel;
use crate::subset::Subset;

#[derive(Clone, Debug)]
pub struct ZssFunction {
    source: SourceModel,
    blocks: Vec<Subset>,
    gamma: Rational,
    block_residuals: Vec<Rational>,
    rounding_unit: Rational,
}

/// Builds `g` from the fundamental partition and MMI of `source`.
pub fn build_g(source: &SourceModel, mmi: &MmiResult) -> ZssFunction {
    let blocks = mmi.fundamental.blocks().to_vec();
    let block_residuals = blocks
        .iter()
        .map(|&c| source.entropy(c) - &mmi.gamma)
        .collect();
    let denominators: Vec<Rational> = match source {
        SourceModel::Hypergraph(h) => h.edges().iter().map(|e| e.weight.clone()).collect(),
        SourceModel::Table(t) => t.values().to_vec(),
    };
    let lcm = Rational::common_denominator(denominators.iter().chain([&mmi.gamma]));
    ZssFunction {
        source: source.clone(),
        blocks,
        gamma: mmi.gamma.clone(),
        block_residuals,
        rounding_unit: Rational::from_big(1.into(), lcm),
    }
}

impl ZssFunction {
    pub fn ell(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn source(&self) -> &SourceModel {
        &self.source
    }

    /// Grid spacing of the values of `g`: one over the common denominator of
    /// the entropies and `γ`.
    pub fn rounding_unit(&self) -> &Rational {
        &self.rounding_unit
    }

    /// `∪_{i∈B} C*_i`.
    pub fn union_of(&self, indices: Subset) -> Subset {
        indices
            .iter()
            .fold(Subset::EMPTY, |acc, i| acc.union(self.blocks[i]))
    }

    pub fn all_indices(&self) -> Subset {
        Subset::full(self.ell())
    }
}

impl SetFunction for ZssFunction {
    fn ground_size(&self) -> usize {
        self.blocks.len()
    }

    fn eval(&self, set: Subset) -> Rational {
        if set.is_empty() {
            return Rational::zero();
        }
        let joint = self.source.entropy(self.union_of(set)) - &self.gamma;
        let parts: Rational = set.iter().map(|i| &self.block_residuals[i]).sum();
        joint - parts
    }
}

/// Every zero set of `g`, including `∅`, in mask order.
pub fn zero_sets(g: &ZssFunction) -> Result<Vec<Subset>> {
    let ell = g.ell();
    if ell > DEFAULT_BRUTE_FORCE_CAP {
        return Err(Error::MinimizationLimit {
            size: ell,
            cap: DEFAULT_BRUTE_FORCE_CAP,
        });
    }
    Ok(g.all_indices()
        .submasks()
        .filter(|&b| g.eval(b).is_zero())
        .collect())
}

fn has_zero_set_between(
    g: &ZssFunction,
    lower: Subset,
    upper: Subset,
    engine: SfmEngine,
) -> Result<bool> {
    let family = LatticeFamily::new(lower, upper)?;
    Ok(engine
        .minimize(g, &family, g.rounding_unit())?
        .value
        .is_zero())
}

/// The unique maximal zero set containing `seed` and avoiding `exclude`.
///
/// Grown greedily from `{seed}`: each remaining index `k` (ascending) is
/// added when some zero set inside `[ℓ] \ {exclude}` still contains the
/// current set plus `k`. Returns `None` when `exclude == seed` or either
/// index is out of range.
pub fn maximal_zero_set(
    g: &ZssFunction,
    exclude: usize,
    seed: usize,
    engine: SfmEngine,
) -> Result<Option<Subset>> {
    let ell = g.ell();
    if exclude == seed || exclude >= ell || seed >= ell {
        return Ok(None);
    }
    let allowed = g.all_indices().without(exclude);
    let mut current = Subset::singleton(seed);
    if !has_zero_set_between(g, current, allowed, engine)? {
        return Ok(None);
    }
    for k in allowed.difference(current).iter() {
        let trial = current.with(k);
        if has_zero_set_between(g, trial, allowed, engine)? {
            current = trial;
        }
    }
    Ok(Some(current))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TMaxCase {
    /// `T_max` is itself an optimal partition (the unique coarsest one).
    T1,
    /// The complements `V \ C`, `C ∈ T_max`, are disjoint and nonempty.
    T2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TMaxReport {
    /// Inclusion-wise maximal blocks of optimal partitions, in mask order.
    pub t_max: Vec<Subset>,
    pub case: TMaxCase,
    /// `{V \ C : C ∈ T_max}`, present in case T2.
    pub complement_family: Option<Vec<Subset>>,
    /// `T_max` as a partition, present in case T1.
    pub coarsest_optimal: Option<Partition>,
}

/// `T_max` via maximal zero sets, one greedy run per ordered pair
/// `(exclude, seed)` of block indices.
pub fn t_max(g: &ZssFunction, engine: SfmEngine) -> Result<TMaxReport> {
    let ell = g.ell();
    let mut candidates: Vec<Subset> = g.blocks().to_vec();
    for exclude in 0..ell {
        for seed in (0..ell).filter(|&j| j != exclude) {
            if let Some(m) = maximal_zero_set(g, exclude, seed, engine)? {
                candidates.push(g.union_of(m));
            }
        }
    }
    classify(g, maximal(candidates))
}

/// `T_max` read off the full zero-set family.
pub fn t_max_bruteforce(g: &ZssFunction) -> Result<TMaxReport> {
    let all = g.all_indices();
    let candidates = zero_sets(g)?
        .into_iter()
        .filter(|&b| !b.is_empty() && b != all)
        .map(|b| g.union_of(b))
        .collect();
    classify(g, maximal(candidates))
}

/// Inclusion-wise maximal members, deduplicated, in mask order.
pub fn maximal(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort();
    sets.dedup();
    sets.iter()
        .copied()
        .filter(|&c| !sets.iter().any(|&d| d != c && c.is_subset_of(d)))
        .collect()
}

fn classify(g: &ZssFunction, t_max: Vec<Subset>) -> Result<TMaxReport> {
    let all = g.source().users().all();
    let pairwise_disjoint = |sets: &[Subset]| {
        sets.iter()
            .enumerate()
            .all(|(i, a)| sets[i + 1..].iter().all(|b| !a.intersects(*b)))
    };

    if pairwise_disjoint(&t_max) {
        let partition = Partition::new(all, t_max.clone())
            .map_err(|e| Error::Internal(format!("disjoint T_max does not partition V: {e}")))?;
        if partition.len() < 2 || i_p(g.source(), &partition)? != *g.gamma() {
            return Err(Error::Internal(
                "disjoint T_max is not an optimal partition".into(),
            ));
        }
        return Ok(TMaxReport {
            t_max,
            case: TMaxCase::T1,
            complement_family: None,
            coarsest_optimal: Some(partition),
        });
    }

    let complements: Vec<Subset> = t_max.iter().map(|&c| all.difference(c)).collect();
    if complements.len() >= 2
        && complements.iter().all(|c| !c.is_empty())
        && pairwise_disjoint(&complements)
    {
        return Ok(TMaxReport {
            t_max,
            case: TMaxCase::T2,
            complement_family: Some(complements),
            coarsest_optimal: None,
        });
    }
    Err(Error::Internal(
        "T_max is neither an optimal partition nor has disjoint complements".into(),
    ))
}

/// True iff the fundamental partition is the only optimal partition, i.e. no
/// zero set `B` has `2 ≤ |B| ≤ ℓ − 1`.
///
/// Checks `min { g(B) : {i,j} ⊆ B ⊆ [ℓ] \ {k} } > 0` for every pair `i < j`
/// and every third index `k`; excluding `k` skips the trivial zero set `[ℓ]`.
pub fn is_unique_optimal(g: &ZssFunction, engine: SfmEngine) -> Result<bool> {
    let ell = g.ell();
    let all = g.all_indices();
    for i in 0..ell {
        for j in i + 1..ell {
            let pair = Subset::singleton(i).with(j);
            for k in all.difference(pair).iter() {
                if has_zero_set_between(g, pair, all.without(k), engine)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn is_unique_optimal_bruteforce(g: &ZssFunction) -> Result<bool> {
    let ell = g.ell();
    Ok(zero_sets(g)?.iter().all(|b| b.len() < 2 || b.len() == ell))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mmi::mmi;
    use crate::source::{pin_source, HypergraphicalSource};
    use crate::users::UserSet;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn tree() -> SourceModel {
        let u = UserSet::numbered(4).unwrap();
        pin_source(u, &[("1", "2", r(1)), ("2", "3", r(1)), ("3", "4", r(1))])
            .unwrap()
            .into()
    }

    fn patch_first() -> SourceModel {
        let u = UserSet::numbered(3).unwrap();
        HypergraphicalSource::from_labels(u, &[(&["1", "2"][..], r(1))])
            .unwrap()
            .into()
    }

    fn patch_second() -> SourceModel {
        let u = UserSet::numbered(3).unwrap();
        HypergraphicalSource::from_labels(
            u,
            &[
                (&["1", "2"][..], r(2)),
                (&["1", "3"][..], r(1)),
                (&["2", "3"][..], r(1)),
            ],
        )
        .unwrap()
        .into()
    }

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn g_of(s: &SourceModel) -> ZssFunction {
        build_g(s, &mmi(s).unwrap())
    }

    #[test]
    fn g_examples() {
        let g = g_of(&tree());
        assert_eq!(g.eval(set(&[0, 1])), r(0));
        assert_eq!(g.eval(set(&[0, 2])), r(1));
        for i in 0..4 {
            assert_eq!(g.eval(Subset::singleton(i)), r(0));
        }
        assert_eq!(g.eval(Subset::EMPTY), r(0));
        assert_eq!(g.eval(g.all_indices()), r(0));
    }

    #[test]
    fn zero_set_examples() {
        let g = g_of(&tree());
        let nonsingleton: Vec<Subset> = zero_sets(&g)
            .unwrap()
            .into_iter()
            .filter(|b| b.len() >= 2)
            .collect();
        let mut want = vec![
            set(&[0, 1]),
            set(&[1, 2]),
            set(&[2, 3]),
            set(&[0, 1, 2]),
            set(&[1, 2, 3]),
            set(&[0, 1, 2, 3]),
        ];
        want.sort();
        assert_eq!(nonsingleton, want);

        let g = g_of(&patch_first());
        assert_eq!(g.ell(), 2);
        assert_eq!(
            zero_sets(&g).unwrap(),
            vec![Subset::EMPTY, set(&[0]), set(&[1]), set(&[0, 1])]
        );
    }

    #[test]
    fn maximal_zero_set_examples() {
        let g = g_of(&tree());
        for engine in [SfmEngine::BruteForce, SfmEngine::MinNormPoint] {
            assert_eq!(
                maximal_zero_set(&g, 3, 0, engine).unwrap(),
                Some(set(&[0, 1, 2]))
            );
            assert_eq!(maximal_zero_set(&g, 1, 0, engine).unwrap(), Some(set(&[0])));
            assert_eq!(
                maximal_zero_set(&g, 1, 2, engine).unwrap(),
                Some(set(&[2, 3]))
            );
            assert_eq!(maximal_zero_set(&g, 1, 1, engine).unwrap(), None);
        }
    }

    #[test]
    fn t_max_examples() {
        for engine in [SfmEngine::BruteForce, SfmEngine::MinNormPoint] {
            let second = t_max(&g_of(&patch_second()), engine).unwrap();
            assert_eq!(second.t_max, vec![set(&[0, 1]), set(&[2])]);
            assert_eq!(second.case, TMaxCase::T1);

            let tree = t_max(&g_of(&tree()), engine).unwrap();
            assert_eq!(tree.t_max, vec![set(&[0, 1, 2]), set(&[1, 2, 3])]);
            assert_eq!(tree.case, TMaxCase::T2);
            assert_eq!(tree.complement_family, Some(vec![set(&[3]), set(&[0])]));

            let first = t_max(&g_of(&patch_first()), engine).unwrap();
            assert_eq!(first.t_max, vec![set(&[0, 1]), set(&[2])]);
            assert_eq!(first.case, TMaxCase::T1);
        }
        assert_eq!(
            t_max_bruteforce(&g_of(&tree())).unwrap().t_max,
            vec![set(&[0, 1, 2]), set(&[1, 2, 3])]
        );
    }

    #[test]
    fn uniqueness_examples() {
        for engine in [SfmEngine::BruteForce, SfmEngine::MinNormPoint] {
            assert!(is_unique_optimal(&g_of(&patch_first()), engine).unwrap());
            assert!(!is_unique_optimal(&g_of(&patch_second()), engine).unwrap());
            assert!(!is_unique_optimal(&g_of(&tree()), engine).unwrap());
        }
        assert!(is_unique_optimal_bruteforce(&g_of(&patch_first())).unwrap());
        assert!(!is_unique_optimal_bruteforce(&g_of(&tree())).unwrap());
    }

    #[test]
    fn maximal_keeps_only_maximal() {
        let sets = vec![set(&[0]), set(&[0, 1]), set(&[0, 1]), set(&[2])];
        assert_eq!(maximal(sets), vec![set(&[0, 1]), set(&[2])]);
    }
}
