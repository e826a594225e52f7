//! Multiterminal source models as entropy oracles.
//!
//! A source is either hypergraphical (independent edge variables, each
//! observed by its member users, so `H(B)` is the total weight of edges
//! meeting `B`) or an explicit table of joint entropies. Both expose
//! [`SourceModel::entropy`] over bitmask subsets of the user set.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::Subset;
use crate::users::UserSet;

/// Independent common randomness of rate `weight` observed by `members`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedEdge {
    pub members: Subset,
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypergraphicalSource {
    users: UserSet,
    edges: Vec<WeightedEdge>,
}

impl HypergraphicalSource {
    /// Builds a source from edges. Negative weights are accepted here and
    /// reported by [`SourceModel::validate`].
    pub fn new(users: UserSet, edges: Vec<WeightedEdge>) -> Result<Self> {
        let all = users.all();
        for e in &edges {
            if e.members.is_empty() {
                return Err(Error::EmptyEdge);
            }
            if !e.members.is_subset_of(all) {
                return Err(Error::InvalidSource(format!(
                    "edge members {:?} outside the user set",
                    e.members
                )));
            }
        }
        Ok(HypergraphicalSource { users, edges })
    }

    /// Convenience constructor from label lists.
    pub fn from_labels<S: AsRef<str>>(users: UserSet, edges: &[(&[S], Rational)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(m, w)| {
                Ok(WeightedEdge {
                    members: users.subset(m.iter().map(|s| s.as_ref()))?,
                    weight: w.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        HypergraphicalSource::new(users, edges)
    }

    pub fn users(&self) -> &UserSet {
        &self.users
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn entropy(&self, set: Subset) -> Rational {
        self.edges
            .iter()
            .filter(|e| e.members.intersects(set))
            .map(|e| &e.weight)
            .sum()
    }

    /// Total weight of edges whose member set is exactly `set`.
    pub fn has_edge(&self, set: Subset) -> Rational {
        self.edges
            .iter()
            .filter(|e| e.members == set)
            .map(|e| &e.weight)
            .sum()
    }

    /// Distinct member sets carrying positive total weight, in mask order.
    pub fn edge_sets(&self) -> Vec<Subset> {
        let mut sets: Vec<Subset> = self.edges.iter().map(|e| e.members).collect();
        sets.sort();
        sets.dedup();
        sets.retain(|&s| self.has_edge(s).is_positive());
        sets
    }

    /// Appends an edge on `set` of weight `eps`; `set = ∅` is a no-op.
    pub fn increment(&self, set: Subset, eps: &Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon(eps.clone()));
        }
        let mut out = self.clone();
        if !set.is_empty() {
            out.edges.push(WeightedEdge {
                members: set,
                weight: eps.clone(),
            });
        }
        Ok(out)
    }

    /// Removes `eps` of weight from the edges on exactly `set`.
    ///
    /// Weight is taken from the most recently added matching edges first, and
    /// edges whose weight reaches zero are dropped, so decrementing right
    /// after an increment restores the original edge list.
    pub fn decrement(&self, set: Subset, eps: &Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon(eps.clone()));
        }
        let available = self.has_edge(set);
        if &available < eps {
            return Err(Error::InsufficientEdge {
                available: Box::new(available),
                requested: Box::new(eps.clone()),
            });
        }
        let mut out = self.clone();
        let mut remaining = eps.clone();
        for e in out.edges.iter_mut().rev() {
            if remaining.is_zero() {
                break;
            }
            if e.members != set || !e.weight.is_positive() {
                continue;
            }
            let take = e.weight.clone().min(remaining.clone());
            e.weight -= &take;
            remaining -= &take;
        }
        out.edges
            .retain(|e| !(e.members == set && e.weight.is_zero()));
        Ok(out)
    }
}

/// Joint entropies `H(B)` listed for every subset `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntropyTable {
    users: UserSet,
    values: Vec<Rational>,
}

impl EntropyTable {
    /// `values[mask]` is `H` of the subset with bitmask `mask`.
    pub fn new(users: UserSet, values: Vec<Rational>) -> Result<Self> {
        let expected = 1usize << users.len();
        if values.len() != expected {
            return Err(Error::InvalidSource(format!(
                "entropy table has {} entries, expected {expected}",
                values.len()
            )));
        }
        Ok(EntropyTable { users, values })
    }

    pub fn users(&self) -> &UserSet {
        &self.users
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn entropy(&self, set: Subset) -> Rational {
        self.values[set.bits() as usize].clone()
    }

    /// `H'(B) = H(B) + eps·1{B ∩ set ≠ ∅}`.
    pub fn increment(&self, set: Subset, eps: &Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEpsilon(eps.clone()));
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(mask, h)| {
                if Subset(mask as u32).intersects(set) {
                    h + eps
                } else {
                    h.clone()
                }
            })
            .collect();
        Ok(EntropyTable {
            users: self.users.clone(),
            values,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceModel {
    Hypergraph(HypergraphicalSource),
    Table(EntropyTable),
}

impl From<HypergraphicalSource> for SourceModel {
    fn from(h: HypergraphicalSource) -> Self {
        SourceModel::Hypergraph(h)
    }
}

impl From<EntropyTable> for SourceModel {
    fn from(t: EntropyTable) -> Self {
        SourceModel::Table(t)
    }
}

impl SourceModel {
    pub fn users(&self) -> &UserSet {
        match self {
            SourceModel::Hypergraph(h) => h.users(),
            SourceModel::Table(t) => t.users(),
        }
    }

    pub fn n(&self) -> usize {
        self.users().len()
    }

    /// `H(Z_B)`. `set` must lie inside the user set.
    pub fn entropy(&self, set: Subset) -> Rational {
        debug_assert!(set.is_subset_of(self.users().all()));
        match self {
            SourceModel::Hypergraph(h) => h.entropy(set),
            SourceModel::Table(t) => t.entropy(set),
        }
    }

    pub fn entropy_of<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Rational> {
        let set = self.users().subset(labels)?;
        Ok(self.entropy(set))
    }

    /// `H` for every subset, indexed by mask.
    pub fn entropy_vector(&self) -> Vec<Rational> {
        match self {
            SourceModel::Table(t) => t.values.clone(),
            SourceModel::Hypergraph(h) => self
                .users()
                .all()
                .submasks()
                .map(|b| h.entropy(b))
                .collect(),
        }
    }

    pub fn as_hypergraph(&self) -> Option<&HypergraphicalSource> {
        match self {
            SourceModel::Hypergraph(h) => Some(h),
            SourceModel::Table(_) => None,
        }
    }

    pub fn has_edge(&self, set: Subset) -> Result<Rational> {
        self.as_hypergraph()
            .map(|h| h.has_edge(set))
            .ok_or(Error::NotHypergraphical)
    }

    pub fn increment(&self, set: Subset, eps: &Rational) -> Result<SourceModel> {
        Ok(match self {
            SourceModel::Hypergraph(h) => h.increment(set, eps)?.into(),
            SourceModel::Table(t) => t.increment(set, eps)?.into(),
        })
    }

    /// Only hypergraphical sources expose their edges, so tables are rejected.
    pub fn decrement(&self, set: Subset, eps: &Rational) -> Result<SourceModel> {
        match self {
            SourceModel::Hypergraph(h) => Ok(h.decrement(set, eps)?.into()),
            SourceModel::Table(_) => Err(Error::NotHypergraphical),
        }
    }

    /// True when every joint entropy is an integer.
    pub fn has_integer_entropies(&self) -> bool {
        self.entropy_vector().iter().all(Rational::is_integer)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        match self {
            SourceModel::Hypergraph(h) => {
                for (i, e) in h.edges.iter().enumerate() {
                    if e.weight.is_negative() {
                        report.push(Violation::NegativeWeight {
                            edge: i,
                            weight: e.weight.clone(),
                        });
                    }
                }
            }
            SourceModel::Table(t) => validate_table(t.users.len(), &t.values, &mut report),
        }
        report
    }

    pub fn from_json(text: &str) -> Result<SourceModel> {
        let doc: SourceDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        doc.into_model()
    }

    pub fn to_document(&self) -> SourceDocument {
        let users = self.users().labels().to_vec();
        match self {
            SourceModel::Hypergraph(h) => SourceDocument::Hypergraph {
                users,
                edges: h
                    .edges
                    .iter()
                    .map(|e| EdgeDocument {
                        members: h.users.labels_of(e.members),
                        weight: e.weight.clone(),
                    })
                    .collect(),
            },
            SourceModel::Table(t) => SourceDocument::Table {
                users: Some(users),
                entropy: t
                    .users
                    .all()
                    .submasks()
                    .skip(1)
                    .map(|b| (t.users.key_of(b), t.entropy(b)))
                    .collect(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("source documents serialize")
    }
}

/// Local (element-wise) checks; these are equivalent to the pairwise
/// definitions of monotonicity and submodularity.
fn validate_table(n: usize, h: &[Rational], report: &mut ValidationReport) {
    if !h[0].is_zero() {
        report.push(Violation::NotNormalized {
            value: h[0].clone(),
        });
    }
    let all = Subset::full(n);
    for a in all.submasks() {
        let ha = &h[a.bits() as usize];
        for i in all.difference(a).iter() {
            let ai = a.with(i);
            let hai = &h[ai.bits() as usize];
            if hai < ha {
                report.push(Violation::NotMonotone {
                    smaller: a,
                    larger: ai,
                });
            }
            for j in all.difference(ai).iter().filter(|&j| j > i) {
                let aj = a.with(j);
                let aij = ai.with(j);
                let lhs = hai + &h[aj.bits() as usize];
                let rhs = &h[aij.bits() as usize] + ha;
                if lhs < rhs {
                    report.push(Violation::NotSubmodular { a: ai, b: aj });
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NegativeWeight {
        edge: usize,
        weight: Rational,
    },
    NotNormalized {
        value: Rational,
    },
    /// `H(larger) < H(smaller)` with `smaller ⊂ larger`.
    NotMonotone {
        smaller: Subset,
        larger: Subset,
    },
    /// `H(a) + H(b) < H(a ∪ b) + H(a ∩ b)`.
    NotSubmodular {
        a: Subset,
        b: Subset,
    },
}

impl Violation {
    pub fn describe(&self, users: &UserSet) -> String {
        match self {
            Violation::NegativeWeight { edge, weight } => {
                format!("negative weight {weight} on edge #{edge}")
            }
            Violation::NotNormalized { value } => {
                format!("not normalized: H(empty set) = {value}")
            }
            Violation::NotMonotone { smaller, larger } => format!(
                "not monotone: H({}) < H({})",
                users.format_set(*larger),
                users.format_set(*smaller)
            ),
            Violation::NotSubmodular { a, b } => format!(
                "not submodular: H({}) + H({}) < H({}) + H({})",
                users.format_set(*a),
                users.format_set(*b),
                users.format_set(a.union(*b)),
                users.format_set(a.intersection(*b))
            ),
        }
    }
}

/// Violations found by [`SourceModel::validate`], capped at
/// [`ValidationReport::MAX_VIOLATIONS`] entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub truncated: bool,
}

impl ValidationReport {
    pub const MAX_VIOLATIONS: usize = 64;

    fn push(&mut self, v: Violation) {
        if self.violations.len() < Self::MAX_VIOLATIONS {
            self.violations.push(v);
        } else {
            self.truncated = true;
        }
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            write!(f, "valid")
        } else {
            write!(
                f,
                "{} violation(s), first: {:?}",
                self.violations.len(),
                self.violations[0]
            )
        }
    }
}

/// Builds a pairwise independent network: one edge per graph edge.
pub fn pin_source<S: AsRef<str>>(
    users: UserSet,
    graph: &[(S, S, Rational)],
) -> Result<HypergraphicalSource> {
    let mut edges = Vec::with_capacity(graph.len());
    for (a, b, w) in graph {
        let i = users.index_of(a.as_ref())?;
        let j = users.index_of(b.as_ref())?;
        if i == j {
            return Err(Error::SelfLoop(a.as_ref().to_string()));
        }
        if w.is_negative() {
            return Err(Error::NegativeWeight(w.clone()));
        }
        edges.push(WeightedEdge {
            members: Subset::singleton(i).with(j),
            weight: w.clone(),
        });
    }
    HypergraphicalSource::new(users, edges)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDocument {
    pub members: Vec<String>,
    pub weight: Rational,
}

/// On-disk JSON form of a source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum SourceDocument {
    Hypergraph {
        users: Vec<String>,
        edges: Vec<EdgeDocument>,
    },
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        users: Option<Vec<String>>,
        entropy: BTreeMap<String, Rational>,
    },
}

impl SourceDocument {
    pub fn into_model(self) -> Result<SourceModel> {
        match self {
            SourceDocument::Hypergraph { users, edges } => {
                let users = UserSet::new(users)?;
                let edges = edges
                    .into_iter()
                    .map(|e| {
                        Ok(WeightedEdge {
                            members: users.subset(&e.members)?,
                            weight: e.weight,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(HypergraphicalSource::new(users, edges)?.into())
            }
            SourceDocument::Table { users, entropy } => {
                let users = match users {
                    Some(u) => UserSet::new(u)?,
                    None => UserSet::new(infer_labels(&entropy))?,
                };
                let mut values: Vec<Option<Rational>> = vec![None; 1 << users.len()];
                values[0] = Some(Rational::zero());
                for (key, h) in entropy {
                    let set = users.parse_key(&key)?;
                    values[set.bits() as usize] = Some(h);
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(mask, v)| {
                        v.ok_or_else(|| {
                            Error::Document(format!(
                                "entropy table is missing subset \"{}\"",
                                users.key_of(Subset(mask as u32))
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(EntropyTable::new(users, values)?.into())
            }
        }
    }
}

/// Labels mentioned in the table keys; numeric labels sort numerically.
fn infer_labels(entropy: &BTreeMap<String, Rational>) -> Vec<String> {
    let mut labels: Vec<String> = entropy
        .keys()
        .flat_map(|k| k.split(','))
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    labels.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        _ => a.cmp(b),
    });
    labels.dedup();
    labels
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Edges a = {1,2,3} and b = {1,2}, one bit each.
    fn motivation() -> HypergraphicalSource {
        let u = UserSet::numbered(3).unwrap();
        HypergraphicalSource::from_labels(
            u,
            &[(&["1", "2", "3"][..], r(1, 1)), (&["1", "2"][..], r(1, 1))],
        )
        .unwrap()
    }

    fn tree() -> HypergraphicalSource {
        let u = UserSet::numbered(4).unwrap();
        pin_source(
            u,
            &[
                ("1", "2", r(1, 1)),
                ("2", "3", r(1, 1)),
                ("3", "4", r(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn entropy_examples() {
        let m = SourceModel::from(motivation());
        assert_eq!(m.entropy_of(["3"]).unwrap(), r(1, 1));
        assert_eq!(m.entropy(Subset::EMPTY), Rational::zero());
        let t = SourceModel::from(tree());
        assert_eq!(t.entropy_of(["2", "3"]).unwrap(), r(3, 1));
        assert_eq!(m.entropy_of(["9"]), Err(Error::UnknownUser("9".into())));
    }

    #[test]
    fn validate_examples() {
        assert!(SourceModel::from(tree()).validate().is_valid());

        let u = UserSet::numbered(2).unwrap();
        let table = EntropyTable::new(u, vec![r(0, 1), r(1, 1), r(1, 1), r(3, 1)]).unwrap();
        let report = SourceModel::from(table).validate();
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(
            report.first(),
            Some(Violation::NotSubmodular { .. })
        ));

        let u = UserSet::numbered(2).unwrap();
        let neg =
            HypergraphicalSource::from_labels(u.clone(), &[(&["1", "2"][..], r(-1, 1))]).unwrap();
        let report = SourceModel::from(neg).validate();
        assert!(!report.is_valid());
        assert!(report
            .first()
            .unwrap()
            .describe(&u)
            .contains("negative weight"));
    }

    #[test]
    fn increment_examples() {
        let m = motivation();
        let s = m.users().subset(["2", "3"]).unwrap();
        let inc = m.increment(s, &r(1, 1)).unwrap();
        assert_eq!(inc.edges().len(), 3);
        assert_eq!(inc.has_edge(s), r(1, 1));

        let same = m.increment(Subset::EMPTY, &r(1, 1)).unwrap();
        assert_eq!(same, m);
        assert!(matches!(
            m.increment(s, &Rational::zero()),
            Err(Error::NonPositiveEpsilon(_))
        ));

        let t = SourceModel::from(tree());
        let s = t.users().subset(["1", "4"]).unwrap();
        let inc = t.increment(s, &r(1, 2)).unwrap();
        assert_eq!(inc.entropy_of(["1"]).unwrap(), r(3, 2));
        assert_eq!(inc.entropy_of(["2", "3"]).unwrap(), r(3, 1));
    }

    #[test]
    fn table_increment_matches_hypergraph_increment() {
        let t = SourceModel::from(tree());
        let table =
            SourceModel::from(EntropyTable::new(t.users().clone(), t.entropy_vector()).unwrap());
        let s = t.users().subset(["2", "4"]).unwrap();
        let eps = r(2, 3);
        assert_eq!(
            t.increment(s, &eps).unwrap().entropy_vector(),
            table.increment(s, &eps).unwrap().entropy_vector()
        );
    }

    #[test]
    fn has_edge_examples() {
        let m = motivation();
        assert_eq!(m.has_edge(m.users().subset(["1", "2"]).unwrap()), r(1, 1));
        assert_eq!(
            m.has_edge(m.users().subset(["1", "3"]).unwrap()),
            Rational::zero()
        );

        let u = UserSet::numbered(3).unwrap();
        let two = HypergraphicalSource::from_labels(
            u,
            &[(&["1", "2"][..], r(1, 2)), (&["1", "2"][..], r(1, 3))],
        )
        .unwrap();
        assert_eq!(
            two.has_edge(two.users().subset(["1", "2"]).unwrap()),
            r(5, 6)
        );
    }

    #[test]
    fn decrement_examples() {
        let m = motivation();
        let b = m.users().subset(["1", "2"]).unwrap();
        let dec = m.decrement(b, &r(1, 1)).unwrap();
        assert_eq!(dec.edges().len(), 1);
        assert_eq!(dec.edges()[0].members, m.users().all());
        assert_eq!(
            SourceModel::from(dec.clone()).entropy(m.users().all()),
            r(1, 1)
        );

        let back = dec.increment(b, &r(1, 1)).unwrap();
        assert_eq!(
            SourceModel::from(back).entropy_vector(),
            SourceModel::from(m.clone()).entropy_vector()
        );

        assert!(matches!(
            m.decrement(b, &r(2, 1)),
            Err(Error::InsufficientEdge { .. })
        ));
    }

    #[test]
    fn decrement_splits_across_parallel_edges() {
        let u = UserSet::numbered(3).unwrap();
        let two = HypergraphicalSource::from_labels(
            u,
            &[(&["1", "2"][..], r(1, 2)), (&["1", "2"][..], r(1, 3))],
        )
        .unwrap();
        let s = two.users().subset(["1", "2"]).unwrap();
        let dec = two.decrement(s, &r(1, 2)).unwrap();
        assert_eq!(dec.has_edge(s), r(1, 3));
        assert_eq!(dec.edges().len(), 1);
    }

    #[test]
    fn table_decrement_is_rejected() {
        let t = SourceModel::from(tree());
        let table =
            SourceModel::from(EntropyTable::new(t.users().clone(), t.entropy_vector()).unwrap());
        assert_eq!(
            table.decrement(Subset::singleton(0).with(1), &r(1, 2)),
            Err(Error::NotHypergraphical)
        );
    }

    #[test]
    fn pin_examples() {
        let t = SourceModel::from(tree());
        assert_eq!(t.entropy_of(["2"]).unwrap(), r(2, 1));

        let u = UserSet::numbered(3).unwrap();
        let empty = SourceModel::from(pin_source::<&str>(u, &[]).unwrap());
        assert!(empty.entropy_vector().iter().all(Rational::is_zero));

        let u = UserSet::numbered(4).unwrap();
        let c4 = SourceModel::from(
            pin_source(
                u,
                &[
                    ("1", "2", r(1, 1)),
                    ("2", "3", r(1, 1)),
                    ("3", "4", r(1, 1)),
                    ("4", "1", r(1, 1)),
                ],
            )
            .unwrap(),
        );
        for i in 0..4 {
            assert_eq!(c4.entropy(Subset::singleton(i)), r(2, 1));
        }

        let u = UserSet::numbered(2).unwrap();
        assert_eq!(
            pin_source(u, &[("1", "1", r(1, 1))]),
            Err(Error::SelfLoop("1".into()))
        );
    }

    #[test]
    fn documents_round_trip() {
        let text = r#"{"users": ["1","2","3"], "model": "hypergraph",
            "edges": [{"members": ["1","2","3"], "weight": "1"}, {"members": ["2","1"], "weight": "1/2"}]}"#;
        let m = SourceModel::from_json(text).unwrap();
        assert_eq!(m.entropy_of(["1"]).unwrap(), r(3, 2));
        assert_eq!(SourceModel::from_json(&m.to_json()).unwrap(), m);

        let table = r#"{"model": "table", "entropy": {"1": "1", "2": "1", "1,2": "2"}}"#;
        let t = SourceModel::from_json(table).unwrap();
        assert_eq!(t.users().labels(), &["1", "2"]);
        assert_eq!(SourceModel::from_json(&t.to_json()).unwrap(), t);

        let missing = r#"{"model": "table", "entropy": {"1": "1", "2": "1"}}"#;
        assert!(matches!(
            SourceModel::from_json(missing),
            Err(Error::Document(_))
        ));
        assert!(matches!(
            SourceModel::from_json("{"),
            Err(Error::Document(_))
        ));
    }
}
