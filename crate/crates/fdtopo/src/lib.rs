//! Schema-analysis toolkit for relational designs.
//!
//! Functional dependencies are encoded as faces of a simplicial complex so
//! that cyclic dependency structure shows up as GF(2) homology; exact
//! classical oracles (attribute closure, the tableau chase, GYO reduction,
//! semijoin planning over join trees) sit alongside the topological
//! diagnostics and keep them honest. An audit harness stress-tests the
//! diagnostics against the oracles and records counterexamples.

pub mod attr;
pub mod audit;
pub mod chase;
pub mod complex;
pub mod cover;
pub mod document;
pub mod dot;
pub mod error;
pub mod fd;
pub mod gf2;
pub mod gyo;
pub mod homology;
pub mod jointree;
pub mod planner;
pub mod relation;

pub use attr::{AttributeSet, AttributeUniverse};
pub use error::{Error, Result};
pub use fd::{CanonicalCover, FunctionalDependency, Schema};
