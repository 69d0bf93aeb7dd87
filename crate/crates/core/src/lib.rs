//! Computational toolkit for finite connected quandles.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations of `{1..n}` and cycle structures.
//! * [`quandle`]: validated operation tables, translations and subquandles.
//! * [`analysis`]: connectivity, profiles, injectivity patterns, canonical
//!   relabeling and isomorphism.
//! * [`constraints`]: block layouts, lcm obstructions and cycle quandle tables.
//! * [`search`]: profile-constrained enumeration of connected quandles.
//! * [`fixtures`] and [`store`]: embedded example tables and the result log.
//!
//! All labels (elements and block indices) are 1-based.

pub mod perm;
pub mod quandle;
pub mod analysis;
pub mod constraints;
pub mod fixtures;
pub mod search;
pub mod store;

pub use perm::{CycleStructure, PermError, Permutation};
pub use quandle::{validate_axioms, Axiom, AxiomReport, ElementSet, QuandleError, QuandleTable};
