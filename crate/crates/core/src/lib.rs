//! Exact integral representation theory for small permutation groups.
//!
//! The crate builds finite permutation groups (symmetric groups and the
//! hyperoctahedral Weyl groups `W(m) = (Z/2)^m ⋊ S_m`), integral G-lattices,
//! bar-resolution group cohomology with explicit cocycles, twisted monomial
//! actions and small invariant rings, and bundles a set of named verification
//! scenarios that check the structural claims about these objects exactly.

pub mod cache;
pub mod cli;
pub mod cohomology;
pub mod config;
pub mod error;
pub mod glattice;
pub mod groups;
pub mod invariant_ring;
pub mod scenarios;
pub mod twisted;
pub mod zmat;

pub use error::{Error, Result};

/// Version string mixed into cache keys and reports.
pub const ENGINE_VERSION: &str = concat!("latcoh-", env!("CARGO_PKG_VERSION"), "-e1");
