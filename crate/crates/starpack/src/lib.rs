//! Packing vertex-disjoint r-stars (copies of K_{1,r}) in graphs with no
//! long induced path.
//!
//! The crate provides:
//! - a linear-vertex kernelization for the packing problem on graphs with no
//!   induced path on `d` vertices ([`kernel`]),
//! - the expansion-lemma machinery behind it ([`expansion`]),
//! - an exact polynomial solver on cographs ([`cograph`]),
//! - exponential brute-force oracles used as ground truth ([`packing`]),
//! - a gadget builder reducing 3-Dimensional Matching to star partition on
//!   split graphs ([`threedm`]),
//! - deterministic instance generators ([`generate`]).

pub mod cograph;
pub mod expansion;
pub mod generate;
pub mod graph;
pub mod kernel;
pub mod packing;
pub mod threedm;

pub use graph::{Graph, GraphError};

pub use packing::{Star, StarPacking};
