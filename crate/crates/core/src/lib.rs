//! Exact computations for cohomological Hall algebras of quivers, their
//! braided vertex coalgebra structure, lattice vertex algebras, and
//! equivariant localization.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod coha;
pub mod error;
pub mod lattice;
pub mod localization;
pub mod perf;
pub mod quiver;
pub mod verify;
pub mod vertex;

pub use error::{Error, Result};
