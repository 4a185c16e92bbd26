//! Desk-scale analysis of quantum endomorphisms and commutativity gadgets for
//! graph CSPs.
//!
//! The crate is organised by capability:
//!
//! - [`graph`]: simple graphs, named families, products, edge-list I/O.
//! - [`walks`]: walk-existence tables, distances, girths, 4-cycle detection.
//! - [`endo`]: homomorphism search, supports, WAC, Schmidt pairs, no-go verdicts.
//! - [`qrep`]: dense complex matrices and explicit finite-dimensional
//!   representations of quantum homomorphism algebras.
//! - [`defect`]: weighted-algebra defects of finite-dimensional strategies.
//! - [`gadget`]: gadget candidates, classical property checks, splicing and the
//!   box-product disproof pipeline.
//! - [`qcore`]: combinatorial quantum-core certificates.

pub mod bits;
pub mod defect;
pub mod endo;
mod error;
pub mod gadget;
pub mod graph;
pub mod qcore;
pub mod qrep;
pub mod walks;

pub use error::{Error, Result};
pub use graph::Graph;

/// Default vertex bound for exhaustive endomorphism enumeration.
pub const DEFAULT_SIZE_BOUND: usize = 12;

/// Default numerical tolerance for representation checks.
pub const DEFAULT_TOL: f64 = 1e-9;
