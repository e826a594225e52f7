//! # ska-core
//!
//! Exact analysis of the multivariate mutual information (MMI) of finite
//! multiterminal sources, which equals the secrecy capacity of secret key
//! agreement without helpers, and of how it responds to adding or removing
//! common randomness on a subset of users.
//!
//! | Module | Provides |
//! |--------|----------|
//! | [`source`] | hypergraphical and tabulated entropy oracles, increment/decrement |
//! | [`partition`] | set partitions, refinement, meet, streaming enumeration |
//! | [`mmi`] | `I_P`, the MMI, all optimal partitions, the fundamental partition, the gap |
//! | [`sfm`] | submodular minimization over `{B : X ⊆ B ⊆ Y}` (brute force and min-norm point) |
//! | [`structure`] | the zero-singleton-submodular function, zero sets, `T_max`, uniqueness test |
//! | [`ska`] | growth/loss rates, critical and excess edges, perturbation checks |
//! | [`report`] | label-based JSON reports |
//! | [`random`] | seeded random instances for batch checks |
//!
//! All reported quantities are [`Rational`]s. Floating point is confined to
//! the min-norm-point solver, whose answers are re-evaluated exactly.
//!
//! ```
//! use ska_core::{mmi, pin_source, Rational, UserSet};
//!
//! let users = UserSet::numbered(4).unwrap();
//! let one = Rational::from_integer(1);
//! let tree = pin_source(
//!     users,
//!     &[("1", "2", one.clone()), ("2", "3", one.clone()), ("3", "4", one)],
//! )
//! .unwrap();
//! let result = mmi::mmi(&tree.into()).unwrap();
//! assert_eq!(result.gamma, Rational::from_integer(1));
//! assert_eq!(result.ell, 4);
//! ```

pub mod error;
pub mod mmi;
pub mod partition;
pub mod random;
pub mod rational;
pub mod report;
pub mod sfm;
pub mod ska;
pub mod source;
pub mod structure;
pub mod subset;
pub mod users;

pub use error::{Error, Result};
pub use mmi::{Gap, MmiResult};
pub use partition::{enumerate_partitions, Partition};
pub use rational::Rational;
pub use source::{pin_source, EntropyTable, HypergraphicalSource, SourceModel, WeightedEdge};
pub use subset::Subset;
pub use users::UserSet;
