//! Exact computations on negative-definite plumbing trees.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is done over the
//! integers and over exact rationals ([`Q`]); there is no floating point
//! anywhere.
//!
//! Layout:
//!
//! * [`graph`], [`lattice`], [`group`]: the plumbing graph, the lattice `L`,
//!   its dual `L'`, the discriminant group `H = L'/L`, the canonical class and
//!   the distinguished representatives `r_h`, `s_h`.
//! * [`series`]: truncated expansion of the topological zeta function, its
//!   counting functions and the brute-force Seiberg–Witten oracle.
//! * [`pc`]: periodic constants of rational fractions.
//! * [`lens`], [`seifert`], [`twonode`]: closed formulas for graphs with zero,
//!   one and two nodes, and [`closed`] choosing between them.
//! * [`ehrhart`]: lattice point enumeration in the polytopes `P^(l')`,
//!   quasipolynomial fitting along rays and reciprocity.

#![no_std]
#![allow(clippy::needless_range_loop, clippy::too_many_arguments, clippy::type_complexity, clippy::large_enum_variant)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod closed;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod group;
pub mod lattice;
pub mod lens;
pub mod matrix;
pub mod pc;
pub mod rational;
pub mod seifert;
pub mod series;
pub mod twonode;

pub use error::Error;
pub use graph::PlumbingGraph;
pub use group::{Class, DiscriminantGroup};
pub use lattice::{Lattice, LatticeVector};
pub use rational::Q;
