//! Strong and weak Bruhat order on permutations: comparability criteria,
//! exact enumeration of comparable pairs, the ballot and ordering tables
//! behind the asymptotic constants, and seeded Monte Carlo estimates.

pub mod ballot;
pub mod bitset;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod formulas;
pub mod montecarlo;
pub mod perm;
pub mod posets;
pub mod rational;
pub mod report;
pub mod rng;

pub use ballot::OrderKind;
pub use criteria::{StrongMethod, WeakMethod};
pub use error::{Error, Result};
pub use montecarlo::{McEstimate, Relation};
pub use perm::{NonInversionSet, Permutation};
pub use posets::{BigCount, CountMethod, Poset};
pub use rng::{RngStream, DEFAULT_SEED};
