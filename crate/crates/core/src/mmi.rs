//! Multivariate mutual information by exact partition enumeration.
//!
//! `I_P = (Σ_{C∈P} H(C) − H(V)) / (|P| − 1)` and the MMI is its minimum
//! over partitions with at least two blocks. The enumeration scales all
//! entropies by their common denominator and compares the resulting
//! integer fractions by cross-multiplication, so ties are exact.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Partition, RgsCursor};
use crate::rational::Rational;
use crate::source::SourceModel;
use crate::subset::Subset;

/// Default bound on the number of users for enumeration-based analyses.
pub const DEFAULT_ENUM_CAP: usize = 16;

/// Smallest excess of a non-optimal partition over the MMI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gap {
    Finite(Rational),
    /// Every partition is optimal (only possible with two users).
    Infinite,
}

impl Gap {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Gap::Finite(g) => Some(g),
            Gap::Infinite => None,
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Finite(g) => write!(f, "{g}"),
            Gap::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Gap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Gap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(Gap::Infinite)
        } else {
            s.parse().map(Gap::Finite).map_err(serde::de::Error::custom)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmiResult {
    /// The MMI `I(Z_V)`.
    pub gamma: Rational,
    /// All minimizing partitions, in enumeration order.
    pub optimal_partitions: Vec<Partition>,
    /// The finest optimal partition.
    pub fundamental: Partition,
    pub gap: Gap,
    /// Number of blocks of `fundamental`.
    pub ell: usize,
}

impl MmiResult {
    pub fn is_optimal(&self, p: &Partition) -> bool {
        self.optimal_partitions.contains(p)
    }

    pub fn ground(&self) -> Subset {
        self.fundamental.ground()
    }
}

/// `I_P` of a partition with at least two blocks.
pub fn i_p(source: &SourceModel, p: &Partition) -> Result<Rational> {
    if p.len() < 2 {
        return Err(Error::SingleBlockPartition);
    }
    let all = source.users().all();
    if p.ground() != all {
        return Err(Error::GroundMismatch);
    }
    let total: Rational = p.blocks().iter().map(|&c| source.entropy(c)).sum();
    Ok((total - source.entropy(all)) / Rational::from_integer(p.len() as i64 - 1))
}

/// `h_γ(C) = H(C) − γ`.
pub fn residual_entropy(source: &SourceModel, gamma: &Rational, set: Subset) -> Rational {
    source.entropy(set) - gamma
}

pub fn mmi(source: &SourceModel) -> Result<MmiResult> {
    mmi_with_cap(source, DEFAULT_ENUM_CAP)
}

pub fn mmi_with_cap(source: &SourceModel, cap: usize) -> Result<MmiResult> {
    let n = source.n();
    if n > cap {
        return Err(Error::EnumerationLimit { n, cap });
    }
    let report = source.validate();
    if let Some(v) = report.first() {
        return Err(Error::InvalidSource(v.describe(source.users())));
    }

    let entropies = source.entropy_vector();
    let scale = Rational::common_denominator(&entropies);
    let scaled = scale_to_i128(&entropies, &scale)?;
    let all = source.users().all();
    let h_all = scaled[all.bits() as usize];

    // Best and second-best values as (numerator, denominator) pairs.
    let mut best: Option<(i128, i128)> = None;
    let mut second: Option<(i128, i128)> = None;
    let mut optimal: Vec<Partition> = Vec::new();

    let mut cursor = RgsCursor::new(all);
    while let Some(blocks) = cursor.advance() {
        if blocks.len() < 2 {
            continue;
        }
        let num: i128 = blocks
            .iter()
            .map(|b| scaled[b.bits() as usize])
            .sum::<i128>()
            - h_all;
        let den = blocks.len() as i128 - 1;
        let cand = (num, den);
        match best {
            None => {
                best = Some(cand);
                optimal.push(Partition::from_sorted_blocks(blocks.to_vec()));
            }
            Some(b) => match cmp_frac(cand, b) {
                std::cmp::Ordering::Less => {
                    second = Some(b);
                    best = Some(cand);
                    optimal.clear();
                    optimal.push(Partition::from_sorted_blocks(blocks.to_vec()));
                }
                std::cmp::Ordering::Equal => {
                    optimal.push(Partition::from_sorted_blocks(blocks.to_vec()));
                }
                std::cmp::Ordering::Greater => {
                    if second.is_none_or(|s| cmp_frac(cand, s).is_lt()) {
                        second = Some(cand);
                    }
                }
            },
        }
    }

    let (bn, bd) = best.expect("at least two users give a two-block partition");
    let unscale = |(num, den): (i128, i128)| {
        Rational::from_big(BigInt::from(num), BigInt::from(den) * &scale)
    };
    let gamma = unscale((bn, bd));
    let gap = match second {
        Some(s) => Gap::Finite(unscale(s) - &gamma),
        None => Gap::Infinite,
    };

    let mut fundamental = optimal[0].clone();
    for p in &optimal[1..] {
        fundamental = fundamental.meet(p)?;
    }
    if !optimal.contains(&fundamental) {
        return Err(Error::Internal(
            "meet of the optimal partitions is not optimal".into(),
        ));
    }
    let ell = fundamental.len();
    Ok(MmiResult {
        gamma,
        optimal_partitions: optimal,
        fundamental,
        gap,
        ell,
    })
}

/// True iff the fundamental partition is optimal and refines every optimal partition.
pub fn verify_fundamental(result: &MmiResult) -> bool {
    result.is_optimal(&result.fundamental)
        && result
            .optimal_partitions
            .iter()
            .all(|p| result.fundamental.is_refinement_of(p).unwrap_or(false))
}

fn cmp_frac(a: (i128, i128), b: (i128, i128)) -> std::cmp::Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

fn scale_to_i128(values: &[Rational], scale: &BigInt) -> Result<Vec<i128>> {
    const LIMIT: i128 = 1 << 62;
    values
        .iter()
        .map(|v| {
            let scaled = v.numer() * (scale / v.denom());
            scaled
                .to_i128()
                .filter(|x| x.abs() < LIMIT)
                .ok_or(Error::Overflow)
        })
        .collect()
}
