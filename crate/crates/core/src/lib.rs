//! # reebpair-core
//!
//! Critical point pairing on Reeb graphs. Given a graph whose nodes carry
//! scalar values, the engines in this crate compute the ordinary persistence
//! diagram (minimum/down-fork and maximum/up-fork pairs plus the global
//! min/max pair) and the extended diagram of essential cycles
//! (down-fork/up-fork pairs).
//!
//! Three engines produce the same multiset of pairs:
//!
//! * [`multipass`]: join and split trees reduced by a stack-based branch
//!   decomposition, then one superlevel sweep per essential up-fork.
//! * [`singlepass`]: a single sweep that
//!   carries labels of unpaired nodes along the sweep front and uses
//!   virtual edges to connect front edges through the swept region.
//! * [`oracle`]: brute force from the definitions, for small graphs.
//!
//! Inputs must first be brought into canonical form with
//! [`conditioning::condition`]. The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use reebpair_core::{fixtures, multipass, singlepass, diagram::diagram_diff};
//!
//! let g = fixtures::sixteen_node();
//! let a = multipass::pair_multipass(&g).unwrap();
//! let b = singlepass::pair_singlepass(&g, Default::default()).unwrap();
//! assert!(diagram_diff(&a, &b).is_empty());
//! assert_eq!(a.len(), 8);
//! ```
#![no_std]

extern crate alloc;

pub mod conditioning;
pub mod diagram;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod model;
pub mod multipass;
pub mod oracle;
pub mod singlepass;
mod unionfind;

pub use diagram::{diagram_diff, DiagramDiff, NodePair, PairClass, PersistenceDiagram, PersistencePair};
pub use error::{Error, Result};
pub use model::{CriticalKind, DegreeSignature, Direction, NodeId, ReebGraph};

/// Engine selector shared by the CLI and the benchmark harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Multipass,
    Singlepass,
    Oracle,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Multipass => "multipass",
            Algorithm::Singlepass => "singlepass",
            Algorithm::Oracle => "oracle",
        }
    }
}
