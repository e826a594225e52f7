//! Incremental and decremental secret key agreement.
//!
//! Every rate here is determined by the optimal partitions `Π*`: adding
//! `ε` of common randomness to `S` raises each `I_P` by
//! `ε·(#blocks met by S − 1)/(|P| − 1)`, so for small `ε` the growth rate is
//! the minimum of that coefficient over `Π*` and the loss rate of an edge is
//! the maximum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mmi::{mmi_with_cap, Gap, MmiResult};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::sfm::SfmEngine;
use crate::source::SourceModel;
use crate::structure::{self, TMaxCase, TMaxReport, ZssFunction};
use crate::subset::Subset;

/// `(blocks met by S − 1{S≠∅}) / (|P| − 1)`.
fn crossing_coefficient(p: &Partition, set: Subset) -> Rational {
    let crossed = p.blocks_crossed(set) as i64;
    let nonempty = i64::from(!set.is_empty());
    Rational::new(crossed - nonempty, p.len() as i64 - 1)
}

/// Growth rate `ρ⁺_S`: minimum crossing coefficient over the optimal partitions.
pub fn growth_rate(mmi: &MmiResult, set: Subset) -> Rational {
    mmi.optimal_partitions
        .iter()
        .map(|p| crossing_coefficient(p, set))
        .min()
        .expect("there is always an optimal partition")
}

fn require_edge(source: &SourceModel, set: Subset) -> Result<Rational> {
    let weight = source.has_edge(set)?;
    if !weight.is_positive() {
        return Err(Error::NoSuchEdge(source.users().format_set(set)));
    }
    Ok(weight)
}

/// Loss rate `ρ⁻_S` of an edge present in a hypergraphical source.
pub fn loss_rate(source: &SourceModel, mmi: &MmiResult, set: Subset) -> Result<Rational> {
    require_edge(source, set)?;
    Ok(mmi
        .optimal_partitions
        .iter()
        .map(|p| crossing_coefficient(p, set))
        .max()
        .expect("there is always an optimal partition"))
}

/// An edge is excess iff it lies inside one block of the fundamental partition.
pub fn is_excess(source: &SourceModel, mmi: &MmiResult, set: Subset) -> Result<bool> {
    require_edge(source, set)?;
    Ok(mmi
        .fundamental
        .blocks()
        .iter()
        .any(|&c| set.is_subset_of(c)))
}

/// `ρ⁺_k` for `k = 0..=k_max` with a witness set of size at most `k` for each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrowthCurve {
    pub values: Vec<Rational>,
    pub witnesses: Vec<Subset>,
    /// Whether the closed form `(k−1)/(ℓ−1)` matched the enumeration; only
    /// evaluated when the optimal partition is unique.
    pub shortcut_agrees: Option<bool>,
}

/// Subsets of `universe` with exactly `k` elements, in increasing mask order.
fn subsets_of_size(universe: Subset, k: usize) -> impl Iterator<Item = Subset> {
    universe.submasks().filter(move |s| s.len() == k)
}

pub fn growth_curve(mmi: &MmiResult, k_max: usize) -> Result<GrowthCurve> {
    let all = mmi.ground();
    let n = all.len();
    if k_max > n {
        return Err(Error::InvalidArgument(format!(
            "order {k_max} exceeds the number of users {n}"
        )));
    }
    let one = Rational::one();
    let mut values = vec![Rational::zero()];
    let mut witnesses = vec![Subset::EMPTY];
    for k in 1..=k_max {
        let mut best = values[k - 1].clone();
        let mut witness = witnesses[k - 1];
        if best < one {
            for s in subsets_of_size(all, k) {
                let rate = growth_rate(mmi, s);
                if rate > best {
                    best = rate;
                    witness = s;
                    if best == one {
                        break;
                    }
                }
            }
        }
        values.push(best);
        witnesses.push(witness);
    }

    let shortcut_agrees = (mmi.optimal_partitions.len() == 1).then(|| {
        let ell = mmi.ell as i64;
        values.iter().enumerate().all(|(k, v)| {
            let k = k as i64;
            let predicted = if k == 0 {
                Rational::zero()
            } else {
                Rational::new(k.min(ell) - 1, ell - 1)
            };
            *v == predicted
        })
    });

    Ok(GrowthCurve {
        values,
        witnesses,
        shortcut_agrees,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalEdgeReport {
    /// All critical edges, in mask order.
    pub edges: Vec<Subset>,
    pub common_size: usize,
    pub case: TMaxCase,
}

/// Critical edges from `T_max`: cross pairs in case T1, transversals of the
/// complements in case T2.
pub fn critical_edges(report: &TMaxReport, all: Subset) -> CriticalEdgeReport {
    let mut edges = Vec::new();
    match report.case {
        TMaxCase::T1 => {
            for &c in &report.t_max {
                for i in c.iter() {
                    for j in all.difference(c).iter() {
                        edges.push(Subset::singleton(i).with(j));
                    }
                }
            }
        }
        TMaxCase::T2 => {
            let mut partial = vec![Subset::EMPTY];
            for &c in &report.t_max {
                let choices = all.difference(c);
                partial = partial
                    .iter()
                    .flat_map(|&p| choices.iter().map(move |i| p.with(i)))
                    .collect();
            }
            edges = partial;
        }
    }
    edges.sort();
    edges.dedup();
    let common_size = match report.case {
        TMaxCase::T1 => 2,
        TMaxCase::T2 => report.t_max.len(),
    };
    CriticalEdgeReport {
        edges,
        common_size,
        case: report.case,
    }
}

/// Minimal sets with positive growth rate, by exhaustive search.
pub fn critical_edges_bruteforce(mmi: &MmiResult) -> Vec<Subset> {
    let crossing: Vec<Subset> = mmi
        .ground()
        .submasks()
        .filter(|&s| growth_rate(mmi, s).is_positive())
        .collect();
    crossing
        .iter()
        .copied()
        .filter(|&s| {
            s.iter()
                .all(|i| !growth_rate(mmi, s.without(i)).is_positive())
        })
        .collect()
}

/// Scans users in ground order, dropping each one whose removal keeps the
/// growth rate positive.
pub fn greedy_critical_edge(mmi: &MmiResult) -> Subset {
    let all = mmi.ground();
    let mut s = all;
    for u in all.iter() {
        let trial = s.without(u);
        if growth_rate(mmi, trial).is_positive() {
            s = trial;
        }
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PerturbationMode {
    Increment,
    Decrement,
}

impl fmt::Display for PerturbationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PerturbationMode::Increment => "increment",
            PerturbationMode::Decrement => "decrement",
        })
    }
}

/// Rate quotient at the fixed step `1/((n−1)(n−2))` for integer-entropy sources.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerStepCheck {
    pub epsilon: Rational,
    pub quotient: Rational,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbationVerdict {
    pub mode: PerturbationMode,
    pub set: Subset,
    pub epsilon: Rational,
    pub mmi_before: Rational,
    pub mmi_after: Rational,
    /// Rate from the optimal-partition formula.
    pub formula_rate: Rational,
    /// `|I(perturbed) − I| / ε`.
    pub quotient: Rational,
    /// Optimal partitions of the perturbed source are optimal for the original.
    pub optimal_partitions_preserved: bool,
    /// `ε` is below the gap, where preservation is guaranteed. Beyond it a
    /// previously suboptimal partition may tie.
    pub below_gap: bool,
    pub integer_step: Option<IntegerStepCheck>,
}

impl PerturbationVerdict {
    pub fn passed(&self) -> bool {
        self.formula_rate == self.quotient
            && (self.optimal_partitions_preserved || !self.below_gap)
            && self.integer_step.as_ref().is_none_or(|c| c.matches)
    }
}

/// Perturbs `set` by `ε` (default `gap/2`, or 1 when the gap is infinite;
/// capped by the available edge weight when decrementing), recomputes the
/// MMI, and compares the difference quotient with the formula rate.
pub fn perturbation_verify(
    source: &SourceModel,
    mmi: &MmiResult,
    set: Subset,
    mode: PerturbationMode,
    epsilon: Option<Rational>,
) -> Result<PerturbationVerdict> {
    let n = source.n();
    let default_eps = match &mmi.gap {
        Gap::Finite(g) => g / Rational::from_integer(2),
        Gap::Infinite => Rational::one(),
    };
    let (formula_rate, available) = match mode {
        PerturbationMode::Increment => (growth_rate(mmi, set), None),
        PerturbationMode::Decrement => {
            let w = require_edge(source, set)?;
            (loss_rate(source, mmi, set)?, Some(w))
        }
    };
    let epsilon = match (epsilon, &available) {
        (Some(e), _) => e,
        (None, Some(w)) => default_eps.min(w.clone()),
        (None, None) => default_eps,
    };

    let quotient_at = |eps: &Rational| -> Result<(MmiResult, Rational)> {
        let perturbed = match mode {
            PerturbationMode::Increment => source.increment(set, eps)?,
            PerturbationMode::Decrement => source.decrement(set, eps)?,
        };
        let after = mmi_with_cap(&perturbed, n)?;
        let diff = match mode {
            PerturbationMode::Increment => &after.gamma - &mmi.gamma,
            PerturbationMode::Decrement => &mmi.gamma - &after.gamma,
        };
        let q = diff / eps;
        Ok((after, q))
    };

    let (after, quotient) = quotient_at(&epsilon)?;
    let optimal_partitions_preserved = after.optimal_partitions.iter().all(|p| mmi.is_optimal(p));

    let integer_step = if n >= 3 && source.has_integer_entropies() {
        let step = Rational::new(1, ((n - 1) * (n - 2)) as i64);
        let step = match &available {
            Some(w) => step.min(w.clone()),
            None => step,
        };
        let (_, q) = quotient_at(&step)?;
        Some(IntegerStepCheck {
            matches: q == formula_rate,
            epsilon: step,
            quotient: q,
        })
    } else {
        None
    };

    let below_gap = match &mmi.gap {
        Gap::Finite(g) => epsilon < *g,
        Gap::Infinite => true,
    };

    Ok(PerturbationVerdict {
        below_gap,
        mode,
        set,
        epsilon,
        mmi_before: mmi.gamma.clone(),
        mmi_after: after.gamma,
        formula_rate,
        quotient,
        optimal_partitions_preserved,
        integer_step,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureEntry {
    pub edge: Subset,
    pub rate: Rational,
    /// `(|S| − 1)/(ℓ − 1)`.
    pub predicted: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub entries: Vec<ConjectureEntry>,
}

impl ConjectureReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

/// Compares the growth rate of each critical edge with `(|S| − 1)/(ℓ − 1)`.
/// Disagreements are reported, never raised as errors.
pub fn conjecture_check(mmi: &MmiResult, critical: &CriticalEdgeReport) -> ConjectureReport {
    let ell = mmi.ell as i64;
    let entries = critical
        .edges
        .iter()
        .map(|&edge| {
            let rate = growth_rate(mmi, edge);
            let predicted = Rational::new(edge.len() as i64 - 1, ell - 1);
            ConjectureEntry {
                edge,
                holds: rate == predicted,
                rate,
                predicted,
            }
        })
        .collect();
    ConjectureReport { entries }
}

/// A source together with its MMI and zero-singleton function, the inputs
/// shared by every analysis.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub source: SourceModel,
    pub mmi: MmiResult,
    pub g: ZssFunction,
    pub engine: SfmEngine,
}

impl Analysis {
    pub fn new(source: SourceModel) -> Result<Self> {
        Self::with_options(source, crate::mmi::DEFAULT_ENUM_CAP, SfmEngine::default())
    }

    pub fn with_options(source: SourceModel, cap: usize, engine: SfmEngine) -> Result<Self> {
        let mmi = mmi_with_cap(&source, cap)?;
        let g = structure::build_g(&source, &mmi);
        Ok(Analysis {
            source,
            mmi,
            g,
            engine,
        })
    }

    pub fn all(&self) -> Subset {
        self.source.users().all()
    }

    pub fn t_max(&self) -> Result<TMaxReport> {
        structure::t_max(&self.g, self.engine)
    }

    pub fn is_unique_optimal(&self) -> Result<bool> {
        structure::is_unique_optimal(&self.g, self.engine)
    }

    pub fn critical_edges(&self) -> Result<CriticalEdgeReport> {
        Ok(critical_edges(&self.t_max()?, self.all()))
    }

    pub fn growth_rate(&self, set: Subset) -> Rational {
        growth_rate(&self.mmi, set)
    }

    pub fn growth_curve(&self, k_max: usize) -> Result<GrowthCurve> {
        growth_curve(&self.mmi, k_max)
    }

    pub fn loss_rate(&self, set: Subset) -> Result<Rational> {
        loss_rate(&self.source, &self.mmi, set)
    }

    pub fn is_excess(&self, set: Subset) -> Result<bool> {
        is_excess(&self.source, &self.mmi, set)
    }

    pub fn greedy_critical_edge(&self) -> Subset {
        greedy_critical_edge(&self.mmi)
    }

    pub fn verify(
        &self,
        set: Subset,
        mode: PerturbationMode,
        epsilon: Option<Rational>,
    ) -> Result<PerturbationVerdict> {
        perturbation_verify(&self.source, &self.mmi, set, mode, epsilon)
    }

    pub fn conjecture(&self) -> Result<ConjectureReport> {
        Ok(conjecture_check(&self.mmi, &self.critical_edges()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{pin_source, HypergraphicalSource};
    use crate::users::UserSet;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn set(ix: &[usize]) -> Subset {
        Subset::from_indices(ix.iter().copied())
    }

    fn motivation() -> Analysis {
        let u = UserSet::numbered(3).unwrap();
        let s = HypergraphicalSource::from_labels(
            u,
            &[(&["1", "2", "3"][..], r(1, 1)), (&["1", "2"][..], r(1, 1))],
        )
        .unwrap();
        Analysis::new(s.into()).unwrap()
    }

    fn tree() -> Analysis {
        let u = UserSet::numbered(4).unwrap();
        let s = pin_source(
            u,
            &[
                ("1", "2", r(1, 1)),
                ("2", "3", r(1, 1)),
                ("3", "4", r(1, 1)),
            ],
        )
        .unwrap();
        Analysis::new(s.into()).unwrap()
    }

    fn patch_first() -> Analysis {
        let u = UserSet::numbered(3).unwrap();
        let s = HypergraphicalSource::from_labels(u, &[(&["1", "2"][..], r(1, 1))]).unwrap();
        Analysis::new(s.into()).unwrap()
    }

    fn patch_second() -> Analysis {
        let u = UserSet::numbered(3).unwrap();
        let s = HypergraphicalSource::from_labels(
            u,
            &[
                (&["1", "2"][..], r(1, 1)),
                (&["1", "2"][..], r(1, 1)),
                (&["1", "3"][..], r(1, 1)),
                (&["2", "3"][..], r(1, 1)),
            ],
        )
        .unwrap();
        Analysis::new(s.into()).unwrap()
    }

    #[test]
    fn growth_rate_examples() {
        let t = tree();
        assert_eq!(t.growth_rate(set(&[0, 3])), r(1, 3));
        for i in 0..4 {
            assert_eq!(t.growth_rate(Subset::singleton(i)), Rational::zero());
        }
        assert_eq!(t.growth_rate(t.all()), Rational::one());
        assert_eq!(t.growth_rate(Subset::EMPTY), Rational::zero());
    }

    #[test]
    fn growth_curve_examples() {
        let t = tree();
        let curve = t.growth_curve(4).unwrap();
        assert_eq!(
            curve.values,
            vec![r(0, 1), r(0, 1), r(1, 3), r(1, 2), r(1, 1)]
        );
        assert_eq!(curve.witnesses[2], set(&[0, 3]));
        assert_eq!(curve.shortcut_agrees, None);

        let p = patch_first();
        let curve = p.growth_curve(3).unwrap();
        assert_eq!(curve.values[2], Rational::one());
        assert_eq!(curve.shortcut_agrees, Some(true));
        assert!(t.growth_curve(5).is_err());
    }

    #[test]
    fn critical_edge_examples() {
        let first = patch_first().critical_edges().unwrap();
        assert_eq!(first.edges, vec![set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(first.common_size, 2);

        assert_eq!(critical_edges_bruteforce(&patch_first().mmi), first.edges);

        let tree = tree().critical_edges().unwrap();
        assert_eq!(critical_edges_bruteforce(&self::tree().mmi), tree.edges);
        assert_eq!(tree.edges, vec![set(&[0, 3])]);
        assert_eq!(tree.case, TMaxCase::T2);
        assert_eq!(tree.common_size, 2);

        let second = patch_second().critical_edges().unwrap();
        assert_eq!(second.edges, vec![set(&[0, 2]), set(&[1, 2])]);
        assert_eq!(second.case, TMaxCase::T1);
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(tree().greedy_critical_edge(), set(&[0, 3]));
        assert_eq!(patch_first().greedy_critical_edge(), set(&[1, 2]));
        let u = UserSet::numbered(2).unwrap();
        let two = HypergraphicalSource::from_labels(u, &[(&["1", "2"][..], r(1, 1))]).unwrap();
        assert_eq!(
            Analysis::new(two.into()).unwrap().greedy_critical_edge(),
            set(&[0, 1])
        );
    }

    #[test]
    fn loss_and_excess_examples() {
        let m = motivation();
        assert_eq!(m.loss_rate(set(&[0, 1])).unwrap(), Rational::zero());
        assert_eq!(m.loss_rate(set(&[0, 1, 2])).unwrap(), Rational::one());
        assert!(m.is_excess(set(&[0, 1])).unwrap());
        assert!(!m.is_excess(set(&[0, 1, 2])).unwrap());
        assert!(matches!(
            m.loss_rate(set(&[0, 2])),
            Err(Error::NoSuchEdge(_))
        ));

        let t = tree();
        for i in 0..3 {
            assert!(!t.is_excess(set(&[i, i + 1])).unwrap());
        }
    }

    #[test]
    fn perturbation_examples() {
        let m = motivation();
        let v = m
            .verify(
                set(&[1, 2]),
                PerturbationMode::Increment,
                Some(Rational::one()),
            )
            .unwrap();
        assert_eq!(v.mmi_after, r(2, 1));
        assert_eq!(v.quotient, Rational::one());
        // The gap is 1/2, so at ε = 1 two more partitions tie with the optimum.
        assert!(!v.below_gap);
        assert!(!v.optimal_partitions_preserved);
        assert!(v.passed());
        let v = m
            .verify(set(&[1, 2]), PerturbationMode::Increment, None)
            .unwrap();
        assert_eq!(v.epsilon, r(1, 4));
        assert!(v.below_gap && v.optimal_partitions_preserved && v.passed());

        let v = m
            .verify(set(&[0, 1]), PerturbationMode::Decrement, None)
            .unwrap();
        assert_eq!(v.formula_rate, Rational::zero());
        assert_eq!(v.mmi_after, Rational::one());
        assert!(v.passed());

        let t = tree();
        let v = t
            .verify(set(&[0, 3]), PerturbationMode::Increment, None)
            .unwrap();
        assert_eq!(v.quotient, r(1, 3));
        assert!(v.integer_step.as_ref().unwrap().matches);
        assert!(v.passed());
    }

    #[test]
    fn conjecture_examples() {
        let t = tree();
        let rep = t.conjecture().unwrap();
        assert_eq!(rep.entries.len(), 1);
        assert_eq!(rep.entries[0].rate, r(1, 3));
        assert!(rep.holds());

        let p = patch_first();
        let rep = p.conjecture().unwrap();
        assert!(rep.entries.iter().all(|e| e.rate == Rational::one()));
        assert!(rep.holds());
    }
}
