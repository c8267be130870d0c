//! Exact lattice computations around the Vinberg lattice `E10`.
//!
//! The crate covers ADE root lattices and their discriminant groups,
//! the hyperbolic lattice `E10` with its Weyl chamber, the involutions
//! `id_U ⊕ -id_{U^⊥}` attached to hyperbolic planes and the 2-congruence
//! subgroup they live in, and the quadratic space `E10 ⊗ F2`.
//!
//! All arithmetic is exact. Root lattices use the negative definite
//! convention: fundamental roots have square `-2`.

pub mod class_group;
pub mod coble;
pub mod e10;
pub mod error;
pub mod f2;
pub mod lattice;
pub mod matrix;
pub mod roots;
pub mod verify;

pub use error::{LatticeError, Result};
pub use lattice::{DiscClass, DiscriminantAction, DiscriminantGroup, DualVector, Isometry, Lattice, LatticeInvariants};
pub use matrix::{IntMatrix, SmithForm};
