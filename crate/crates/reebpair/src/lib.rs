//! File formats, SVG rendering and the benchmark harness around
//! [`reebpair_core`]. The `reebpair` binary is a thin CLI over this crate.

pub mod bench;
pub mod error;
pub mod formats;
pub mod svg;

pub use error::{CliError, Result};
pub use reebpair_core as core;
