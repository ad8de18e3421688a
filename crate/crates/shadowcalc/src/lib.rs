//! Shadowed polyhedra, gleams, cork families and zero-vertex shadow classification.

pub mod criterion;
pub mod error;
pub mod exact;
pub mod families;
pub mod gleam_ledger;
pub mod poly;
pub mod three_manifolds;

pub use error::{Error, Result};
