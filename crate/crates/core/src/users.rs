use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::subset::{Subset, MAX_ELEMENTS};

/// The ordered ground set of user labels.
///
/// User `i` (0-based position) corresponds to bit `i` of a [`Subset`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct UserSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl UserSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() < 2 {
            return Err(Error::TooFewUsers(labels.len()));
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(Error::EnumerationLimit {
                n: labels.len(),
                cap: MAX_ELEMENTS,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateUser(l.clone()));
            }
        }
        Ok(UserSet { labels, index })
    }

    /// Users labelled `"1"`, .., `"n"`.
    pub fn numbered(n: usize) -> Result<Self> {
        UserSet::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownUser(label.to_string()))
    }

    pub fn subset<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<Subset> {
        labels
            .into_iter()
            .try_fold(Subset::EMPTY, |s, l| Ok(s.with(self.index_of(l.as_ref())?)))
    }

    /// Labels of `set` in ground-set order.
    pub fn labels_of(&self, set: Subset) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Comma-joined labels, the subset key format of source documents.
    pub fn key_of(&self, set: Subset) -> String {
        self.labels_of(set).join(",")
    }

    /// Parses a comma-joined subset key; the empty string is the empty set.
    pub fn parse_key(&self, key: &str) -> Result<Subset> {
        if key.trim().is_empty() {
            return Ok(Subset::EMPTY);
        }
        self.subset(key.split(',').map(str::trim))
    }

    /// Blocks as label lists, blocks ordered by their first user.
    pub fn partition_labels(&self, p: &Partition) -> Vec<Vec<String>> {
        p.blocks().iter().map(|&b| self.labels_of(b)).collect()
    }

    pub fn parse_partition<S: AsRef<str>>(&self, blocks: &[Vec<S>]) -> Result<Partition> {
        let blocks = blocks
            .iter()
            .map(|b| self.subset(b.iter().map(|s| s.as_ref())))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(self.all(), blocks)
    }

    /// `{a,b}` style rendering for text output.
    pub fn format_set(&self, set: Subset) -> String {
        format!("{{{}}}", self.labels_of(set).join(","))
    }

    pub fn format_partition(&self, p: &Partition) -> String {
        let blocks: Vec<String> = p.blocks().iter().map(|&b| self.format_set(b)).collect();
        format!("{{{}}}", blocks.join(","))
    }
}

impl TryFrom<Vec<String>> for UserSet {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        UserSet::new(v)
    }
}

impl From<UserSet> for Vec<String> {
    fn from(u: UserSet) -> Self {
        u.labels
    }
}
