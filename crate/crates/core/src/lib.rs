//! Computer-algebra workbench for finite dimensional quiver algebras.
//!
//! Starting from a hereditary path algebra, the crate constructs chains of
//! homological ring epimorphisms via universal localization at exceptional
//! modules, assembles the induced silting complex, computes its endomorphism
//! algebra as a bound quiver algebra, and verifies the separated n-section
//! structure of that algebra's module category.
//!
//! Everything runs over an exact field (arbitrary-precision rationals or a
//! prime field) with no tolerances anywhere.
//!
//! Conventions, fixed once and used everywhere:
//! * the path `a*b` means "first `a`, then `b`"; morphism composition `g∘f`
//!   applies `f` first;
//! * modules are right modules, realized as representations of the quiver
//!   itself: an arrow `a: i -> j` acts by a matrix mapping the vertex-`i`
//!   space into the vertex-`j` space.

pub mod algebra;
pub mod dsl;
pub mod emit;
pub mod error;
pub mod field;
pub mod homspace;
pub mod matrix;
pub mod module;
pub mod quiver;

pub use algebra::{AlgebraOptions, BoundQuiverAlgebra};
pub use module::{FDModule, ModRef, ModuleMorphism};
pub use error::{AlgebraError, ComputeError, LinAlgError, ParseError};
pub use field::{FieldKind, Scalar};
pub use matrix::Matrix;
pub use quiver::{Arrow, Path, Quiver, Relation};
