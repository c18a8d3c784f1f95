//! Mnesor spaces: idempotent, non-commutative monoids acted on by a finite
//! lattice.
//!
//! The crate provides
//!
//! - [`lattice`]: explicit finite bounded lattices and their validation,
//! - [`algebra`]: the [`MnesorSpace`] contract and the law [`catalog`],
//! - [`seq_model`]: duplicate-free column tuples filtered by subsets,
//! - [`lattice_model`]: a lattice acting on itself by meet,
//! - [`checker`]: exhaustive bounded law checking with minimal counterexamples,
//! - [`structure`]: stabilizers, annihilators, absorption witnesses, Hasse diagrams,
//! - [`dsl`]: a small expression language over a model.
//!
//! ```
//! use mnesor_core::checker::{check_law_named, CheckBounds, Status};
//! use mnesor_core::seq_model::SeqSpace;
//!
//! let space = SeqSpace::letters(2).unwrap();
//! let r = check_law_named(&space, "A-GDIST", CheckBounds::new(2).unwrap()).unwrap();
//! assert_eq!(r.status, Status::Fail);
//! ```
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod checker;
pub mod dsl;
pub mod lattice;
pub mod lattice_model;
pub mod seq_model;
pub mod structure;

pub use algebra::{catalog, is_anagram, prefix_leq, Law, LawCatalog, MnesorSpace};
pub use checker::{
    check_all, check_law, minimize, CheckBounds, ComplianceReport, LawResult, Status,
};
pub use lattice::{FiniteLattice, Granular, GranularId};
pub use lattice_model::SelfActionSpace;
pub use seq_model::{SeqMnesor, SeqSpace, Universe};
