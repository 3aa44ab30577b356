//! Monte Carlo laboratory for minimum-weight random graphs with edge constraints.
//!
//! Two model families:
//!
//! * trees of the complete graph `K_n` with heavy-tailed weights near zero,
//!   solved exactly on small instances and bracketed by a greedy path and a
//!   light-edge count at scale ([`tree`]);
//! * hop-constrained first-passage times on `Z^d` between the origin and
//!   `(n, 0, .., 0)` ([`lattice`]).
//!
//! [`experiments`] turns both into reproducible sweeps with pass/fail
//! verdicts and [`cli`] exposes them on the command line.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod lattice;
pub mod stats;
pub mod tree;
pub mod weights;

pub use error::{Error, Result};
