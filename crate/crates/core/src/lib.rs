//! Packing arc-disjoint out-branchings, edge-disjoint spanning trees and
//! mixed families in directed multigraphs, together with the gadget
//! reductions that make the neighbouring problems hard on 2-regular
//! digraphs and exhaustive oracles that certify both on small inputs.
//!
//! - [`digraph`]: loopless multigraphs with stable arc ids, cuts,
//!   connectivity, vertex splitting and the text/DOT formats.
//! - [`trees`]: k edge-disjoint spanning trees by matroid union, or a
//!   partition certificate.
//! - [`branchings`]: root-vector feasibility and Edmonds branchings.
//! - [`mixed`]: the free-root pipeline for k-regular digraphs.
//! - [`reductions`]: Cycle Breaker gadget, Hamiltonian and SAT reductions,
//!   k-regular expansion.
//! - [`oracle`]: brute-force deciders with explicit budgets.
//! - [`cli`] and [`certificate`]: the command-line surface and its JSON.

pub mod branchings;
pub mod catalog;
pub mod certificate;
pub mod cli;
pub mod digraph;
pub mod enumerate;
pub mod error;
mod flow;
pub mod mixed;
pub mod oracle;
pub mod reductions;
pub mod trees;

pub use digraph::{Arc, ArcId, ArcSet, Digraph, Partition, VertexId};
pub use error::{Error, Result};
