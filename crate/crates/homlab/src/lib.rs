//! # homlab
//!
//! An exact laboratory for counting digraph homomorphisms and for probing the
//! pointwise order between partial Lovász vectors at desk scale.
//!
//! The crate is organized around a small set of building blocks:
//!
//! - [`digraph`]: immutable digraph values with interval queries, transitive
//!   hull/reduction, path structure and heights;
//! - [`homs`]: an exact backtracking engine for homomorphism and strict
//!   homomorphism enumeration, extension classes and iota profiles;
//! - [`weights`]: arc weights, the clamp expansion `G(α)_ν`, selecting
//!   weights and exact exponential-sum bookkeeping;
//! - [`taxonomy`]: membership predicates for the digraph classes used by the
//!   verification sweeps;
//! - [`shells`]: capsule structure for off-top-path vertices and the exact
//!   strict-to-profile ratio `φ`;
//! - [`catalog`]: generation and canonicalization of all non-isomorphic small
//!   digraphs of a given kind;
//! - [`verifier`]: exhaustive bounded checks, each of which either passes or
//!   produces a concrete counterexample with full reproduction data.
//!
//! Everything is exact: counts are arbitrary-precision integers and ratios
//! are reduced rationals. All values are immutable after construction and all
//! operations are pure, so independent tasks parallelize freely.

pub mod catalog;
pub mod digraph;
pub mod error;
#[cfg(test)]
pub(crate) mod fixtures;
pub mod homs;
pub mod paths;
pub mod shells;
pub mod taxonomy;
pub mod verifier;
pub mod weights;

pub use digraph::Digraph;
pub use error::{Error, Result};
pub use homs::VertexMap;
pub use weights::ArcWeight;
