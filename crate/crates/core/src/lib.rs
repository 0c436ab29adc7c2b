//! Graph-level certificates for graph C*-algebras of finite directed multigraphs.
//!
//! The crate decides simplicity of `C*(E)` and of its AF core, computes
//! periods and residue classes, builds relative skew products and voltage
//! graphs, and verifies and decomposes graph coverings.

pub mod covering;
pub mod error;
pub mod graph;
pub mod group;
pub mod iso;
pub mod report;
pub mod skew;
pub mod structure;
pub mod voltage;

pub use error::{Error, Result};
