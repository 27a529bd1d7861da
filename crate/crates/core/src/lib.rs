//! Exact differential algebra over `ℚ` and `ℚ(t1, ..., ts)`.
//!
//! Differential polynomials with several commuting derivations, autoreduced
//! and coherent sets with Ritt reduction, finite algebras `B` and the rings
//! `B ⊗ R`, D-structures on coefficient fields, coordinate prolongations, and
//! differential Hensel lifting through nilpotent filtrations.

pub mod axiom;
pub mod cli;
pub mod coeffield;
pub mod diffpoly;
pub mod dstructure;
pub mod error;
pub mod extend;
pub mod finitealg;
pub mod hensel;
pub mod linalg;
pub mod parse;
pub mod prolongation;
pub mod reduction;
pub mod ring;
pub mod session;

pub use coeffield::{Field, FieldElem};
pub use diffpoly::{AlgIndet, DerivOp, DiffPoly, Point, Var};
pub use error::{Error, Result};
