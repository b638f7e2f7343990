//! Finite n-groupoids in categories with covers.
//!
//! Sites are finite categories with a designated class of covers: finite
//! sets, finite G-sets and finite covers of a based graph. On top of them the
//! crate builds truncated simplicial objects, horn and boundary matching maps,
//! n-groupoids, hypercovers, path objects and weak equivalences, the fiber
//! functor of a graph, and two models of simplicial localization.

pub mod acceptance;
pub mod error;
pub mod fincat;
pub mod formats;
pub mod galois;
pub mod grpd;
pub mod gset;
pub mod label;
pub mod localization;
pub mod report;
pub mod simp;

pub use error::{Error, Result};
pub use label::Label;

/// Default cap on enumeration sizes.
pub const DEFAULT_MAX_CELLS: usize = 100_000;

/// The enumeration cap, read from `NGRPD_MAX_CELLS`.
pub fn max_cells() -> usize {
    std::env::var("NGRPD_MAX_CELLS").ok().and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_CELLS)
}
