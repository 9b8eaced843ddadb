//! Invariably generating graphs of symmetric and alternating groups.

pub mod bitset;
pub mod catalog;
pub mod error;
pub mod field;
pub mod graph;
pub mod membership;
pub mod oracle;
pub mod partition;
pub mod perm;
pub mod rules;
pub mod witness;

pub use error::{Error, Result};
pub use partition::{Parity, Partition};
pub use perm::{ClassLabel, GroupKind, Permutation, Split};
pub use graph::{ClassGraph, Diameter, ExportFormat};
