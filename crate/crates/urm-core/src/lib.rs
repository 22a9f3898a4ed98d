//! Maximum-cardinality uniquely restricted matchings in interval-like graph
//! classes.
//!
//! A matching is *uniquely restricted* when no other matching of the graph
//! covers exactly the same vertex set. This crate provides:
//!
//! - linear-time solvers for proper interval graphs ([`proper`]) and
//!   bipartite permutation graphs ([`bipperm`]), driven by validated vertex
//!   orderings;
//! - a polynomial solver for general interval graphs via a reduction to
//!   maximum strong independent sets in interval nest digraphs
//!   ([`reduction`], [`nest`]);
//! - ground-truth verification: a brute-force uniqueness oracle,
//!   alternating-cycle enumeration, pairwise and consecutive-pair
//!   structural checks ([`verify`]);
//! - deterministic fixtures and seeded instance generators ([`instances`]).
//!
//! All types are immutable after construction and safe to share across
//! threads; solver memo state is confined to each solve call.

pub mod bipperm;
pub mod error;
pub mod graph;
pub mod instances;
pub mod intervals;
pub mod matching;
pub mod nest;
pub mod ordering;
pub mod proper;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Edge, UndirectedGraph, VertexId};
pub use matching::Matching;
pub use ordering::VertexOrdering;
