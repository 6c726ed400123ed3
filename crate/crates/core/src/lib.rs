//! Structural toolkit for crossing-critical graphs.
//!
//! The crate is organised bottom-up: [`graph`] and [`planarity`] provide the
//! multigraph and embedding substrate, [`crossing`] computes exact crossing
//! numbers and criticality certificates, [`pathdec`], [`semigroup`] and
//! [`qtype`] implement the bounded path-width machinery, [`structures`] and
//! [`surgery`] detect and manipulate bands, fans, nests and necklaces, and
//! [`enumerate`] generates catalogues of crossing-critical graphs.

pub mod canon;
pub mod crossing;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod format;
pub mod graph;
pub mod pathdec;
pub mod planarity;
pub mod qtype;
pub mod semigroup;
pub mod structures;
pub mod surgery;

pub use error::{Error, Result};
pub use graph::{EmbeddedMultigraph, Multigraph};
