//! Edit distance between grammar-compressed strings.
//!
//! Both inputs are given as straight-line programs ([`Slp`]). The dynamic
//! programming grid is cut into blocks whose sides are substrings associated
//! with grammar variables ([`partition`]). Every distinct block gets a DIST
//! table, the matrix of cheapest boundary-to-boundary paths, built once by
//! merging smaller tables ([`dist::Repository`]). The grid is then swept
//! block by block, pushing boundary values through each table with SMAWK
//! ([`monge`]).
//!
//! ```
//! use slp_edit::{block_edit_distance, wagner_fischer, ScoringFunction, Slp};
//!
//! let a = Slp::from_plain("kitten").unwrap();
//! let b = Slp::from_plain("sitting").unwrap();
//! let sf = ScoringFunction::levenshtein("eiknstg".chars()).unwrap();
//! let (cost, _stats) = block_edit_distance(&a, &b, &sf, Some(2)).unwrap();
//! assert_eq!(cost, 3);
//! assert_eq!(wagner_fischer("kitten", "sitting", &sf).unwrap(), 3);
//! ```

pub mod block_edit;
pub mod corpus;
pub mod dist;
mod error;
pub mod format;
pub mod monge;
pub mod partition;
pub mod scoring;
pub mod slp;

pub use block_edit::{block_edit_distance, default_block_size, wagner_fischer, RunStats};
pub use dist::{DistTable, Repository};
pub use error::{Error, Result};
pub use monge::{Cost, CostMatrix, UNREACHABLE};
pub use partition::{partition, AssociatedSubstring, PartKind, XPartition};
pub use scoring::ScoringFunction;
pub use slp::{Production, Slp, VarId};
