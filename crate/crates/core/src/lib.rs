//! Decide index-realizability of integer triples.
//!
//! A triple `(a, b, c)` is index-realizable when some finite group `G` has
//! subgroups `H`, `K` with `[G:H] = a`, `[G:K] = b` and `[G:H∩K] = c`.
//! Equivalently, some bipartite graph with sides of size `a` and `b`, `c`
//! edges and no isolated vertices has an automorphism group (fixing both sides)
//! that is transitive on edges.
//!
//! The [`decider`] combines arithmetic rules, explicit witness families and
//! product decomposition, and falls back to the exhaustive graph search in
//! [`oracle`]. Every verdict carries a [`decider::Certificate`] that
//! [`decider::verify`] can replay.

pub mod autgraph;
pub mod bigraph;
pub mod checks;
pub mod decider;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod permgroup;
pub mod realize;
pub mod triple;

pub use error::{Error, Result};
pub use triple::Triple;
