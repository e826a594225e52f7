//! Serializable reports. Subsets appear as sorted label lists and partitions
//! as lists of blocks, so every report is readable without the index mapping
//! and round-trips through JSON.

use serde::{Deserialize, Serialize};

use crate::mmi::{Gap, MmiResult};
use crate::partition::Partition;
use crate::rational::Rational;
use crate::ska::{
    ConjectureReport, CriticalEdgeReport, GrowthCurve, PerturbationMode, PerturbationVerdict,
};
use crate::source::ValidationReport;
use crate::structure::{TMaxCase, TMaxReport};
use crate::subset::Subset;
use crate::users::UserSet;

pub type LabelSet = Vec<String>;
pub type LabelPartition = Vec<Vec<String>>;

fn sets(users: &UserSet, family: &[Subset]) -> Vec<LabelSet> {
    family.iter().map(|&s| users.labels_of(s)).collect()
}

fn partitions(users: &UserSet, ps: &[Partition]) -> Vec<LabelPartition> {
    ps.iter().map(|p| users.partition_labels(p)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmiReport {
    pub gamma: Rational,
    pub optimal_partitions: Vec<LabelPartition>,
    pub fundamental: LabelPartition,
    pub gap: Gap,
}

impl MmiReport {
    pub fn new(users: &UserSet, mmi: &MmiResult) -> Self {
        MmiReport {
            gamma: mmi.gamma.clone(),
            optimal_partitions: partitions(users, &mmi.optimal_partitions),
            fundamental: users.partition_labels(&mmi.fundamental),
            gap: mmi.gap.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionEntry {
    pub blocks: LabelPartition,
    pub value: Rational,
    pub optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionsReport {
    pub gamma: Rational,
    pub partitions: Vec<PartitionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TMaxJson {
    pub t_max: Vec<LabelSet>,
    pub case: TMaxCase,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complement_family: Option<Vec<LabelSet>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coarsest_optimal: Option<LabelPartition>,
}

impl TMaxJson {
    pub fn new(users: &UserSet, report: &TMaxReport) -> Self {
        TMaxJson {
            t_max: sets(users, &report.t_max),
            case: report.case,
            complement_family: report.complement_family.as_ref().map(|f| sets(users, f)),
            coarsest_optimal: report
                .coarsest_optimal
                .as_ref()
                .map(|p| users.partition_labels(p)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalJson {
    pub case: TMaxCase,
    pub t_max: Vec<LabelSet>,
    pub edges: Vec<LabelSet>,
    pub common_size: usize,
    pub greedy: LabelSet,
    /// Whether exhaustive search found the same family.
    pub bruteforce_agrees: bool,
}

impl CriticalJson {
    pub fn new(
        users: &UserSet,
        t_max: &TMaxReport,
        critical: &CriticalEdgeReport,
        greedy: Subset,
        bruteforce_agrees: bool,
    ) -> Self {
        CriticalJson {
            case: critical.case,
            t_max: sets(users, &t_max.t_max),
            edges: sets(users, &critical.edges),
            common_size: critical.common_size,
            greedy: users.labels_of(greedy),
            bruteforce_agrees,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthJson {
    /// Entry `k` is the growth rate of order `k`.
    pub values: Vec<Rational>,
    pub witnesses: Vec<LabelSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shortcut_agrees: Option<bool>,
}

impl GrowthJson {
    pub fn new(users: &UserSet, curve: &GrowthCurve) -> Self {
        GrowthJson {
            values: curve.values.clone(),
            witnesses: sets(users, &curve.witnesses),
            shortcut_agrees: curve.shortcut_agrees,
        }
    }
}

/// Loss rate and excess status of one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub edge: LabelSet,
    pub weight: Rational,
    pub loss_rate: Rational,
    pub growth_rate: Rational,
    pub excess: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniqueJson {
    pub unique_optimal: bool,
    pub optimal_partition_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerStepJson {
    pub epsilon: Rational,
    pub quotient: Rational,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictJson {
    pub mode: PerturbationMode,
    pub set: LabelSet,
    pub epsilon: Rational,
    pub mmi_before: Rational,
    pub mmi_after: Rational,
    pub formula_rate: Rational,
    pub quotient: Rational,
    pub optimal_partitions_preserved: bool,
    pub below_gap: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub integer_step: Option<IntegerStepJson>,
    pub passed: bool,
}

impl VerdictJson {
    pub fn new(users: &UserSet, v: &PerturbationVerdict) -> Self {
        VerdictJson {
            mode: v.mode,
            set: users.labels_of(v.set),
            epsilon: v.epsilon.clone(),
            mmi_before: v.mmi_before.clone(),
            mmi_after: v.mmi_after.clone(),
            formula_rate: v.formula_rate.clone(),
            quotient: v.quotient.clone(),
            optimal_partitions_preserved: v.optimal_partitions_preserved,
            below_gap: v.below_gap,
            integer_step: v.integer_step.as_ref().map(|c| IntegerStepJson {
                epsilon: c.epsilon.clone(),
                quotient: c.quotient.clone(),
                matches: c.matches,
            }),
            passed: v.passed(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub verdicts: Vec<VerdictJson>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureEntryJson {
    pub edge: LabelSet,
    pub rate: Rational,
    pub predicted: Rational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureJson {
    pub entries: Vec<ConjectureEntryJson>,
    pub holds: bool,
}

impl ConjectureJson {
    pub fn new(users: &UserSet, report: &ConjectureReport) -> Self {
        ConjectureJson {
            entries: report
                .entries
                .iter()
                .map(|e| ConjectureEntryJson {
                    edge: users.labels_of(e.edge),
                    rate: e.rate.clone(),
                    predicted: e.predicted.clone(),
                    holds: e.holds,
                })
                .collect(),
            holds: report.holds(),
        }
    }
}

/// Tally of the conjecture over a batch of instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureTally {
    pub instances: usize,
    pub edges_checked: usize,
    pub holds: usize,
    pub violations: usize,
    /// Sources (as documents) where some critical edge disagreed.
    pub counterexamples: Vec<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationJson {
    pub valid: bool,
    pub violations: Vec<String>,
    pub truncated: bool,
}

impl ValidationJson {
    pub fn new(users: &UserSet, report: &ValidationReport) -> Self {
        ValidationJson {
            valid: report.is_valid(),
            violations: report
                .violations
                .iter()
                .map(|v| v.describe(users))
                .collect(),
            truncated: report.truncated,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ska::Analysis;
    use crate::source::pin_source;
    use serde::de::DeserializeOwned;
    use std::fmt::Debug;

    fn round_trip<T: Serialize + DeserializeOwned + PartialEq + Debug>(value: &T) {
        let text = serde_json::to_string(value).unwrap();
        let back: T = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, value);
    }

    fn tree() -> Analysis {
        let u = UserSet::numbered(4).unwrap();
        let one = Rational::one();
        let s = pin_source(
            u,
            &[
                ("1", "2", one.clone()),
                ("2", "3", one.clone()),
                ("3", "4", one),
            ],
        )
        .unwrap();
        Analysis::new(s.into()).unwrap()
    }

    #[test]
    fn mmi_report_shape() {
        let a = tree();
        let report = MmiReport::new(a.source.users(), &a.mmi);
        let value = serde_json::to_value(&report).unwrap();
        let obj = value.as_object().unwrap();
        let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(keys, ["fundamental", "gamma", "gap", "optimal_partitions"]);
        assert_eq!(value["gamma"], "1");
        assert_eq!(
            value["fundamental"],
            serde_json::json!([["1"], ["2"], ["3"], ["4"]])
        );
        round_trip(&report);
    }

    #[test]
    fn all_reports_round_trip() {
        let a = tree();
        let users = a.source.users();
        let tm = a.t_max().unwrap();
        let tj = TMaxJson::new(users, &tm);
        assert_eq!(serde_json::to_value(&tj).unwrap()["case"], "T2");
        round_trip(&tj);

        let crit = a.critical_edges().unwrap();
        let cj = CriticalJson::new(users, &tm, &crit, a.greedy_critical_edge(), true);
        assert_eq!(cj.edges, vec![vec!["1".to_string(), "4".to_string()]]);
        round_trip(&cj);

        round_trip(&GrowthJson::new(users, &a.growth_curve(4).unwrap()));
        round_trip(&ConjectureJson::new(users, &a.conjecture().unwrap()));
        round_trip(&ValidationJson::new(users, &a.source.validate()));
        round_trip(&UniqueJson {
            unique_optimal: false,
            optimal_partition_count: a.mmi.optimal_partitions.len(),
        });

        let edge = users.subset(["1", "2"]).unwrap();
        round_trip(&EdgeJson {
            edge: users.labels_of(edge),
            weight: Rational::one(),
            loss_rate: a.loss_rate(edge).unwrap(),
            growth_rate: a.growth_rate(edge),
            excess: a.is_excess(edge).unwrap(),
        });

        let v = a
            .verify(
                users.subset(["1", "4"]).unwrap(),
                PerturbationMode::Increment,
                None,
            )
            .unwrap();
        let vj = VerdictJson::new(users, &v);
        assert!(vj.integer_step.is_some());
        round_trip(&VerifyJson {
            passed: vj.passed,
            verdicts: vec![vj],
        });

        round_trip(&ConjectureTally {
            instances: 3,
            edges_checked: 5,
            holds: 5,
            violations: 0,
            counterexamples: vec![],
        });
    }
}
