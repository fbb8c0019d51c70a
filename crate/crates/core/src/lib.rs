//! Exact computational homological algebra for augmented algebras over a
//! field: products and coproducts, small (minimal) resolutions, Ext and
//! Hochschild cohomology rings, and the machinery relating the cohomology of
//! a fiber product to the cohomology of its factors.
//!
//! Everything is computed in exact arithmetic (arbitrary-precision rationals
//! or GF(p)) and verified against independent oracles wherever one exists.

pub mod error;
pub mod field;
pub mod matrix;
pub mod subspace;

pub mod algebra;
pub mod graded;
pub mod morphism;

pub mod constructions;

pub mod module;
pub mod resolution;
pub mod psq;

pub mod cohomology;
pub mod product_cohomology;

pub mod report;
pub mod registry;
pub mod cache;

#[doc(hidden)]
pub mod testutil;

pub use algebra::{Algebra, ArcAlgebra};
pub use cohomology::{GradedRingTable, LESRecord};
pub use error::Error;
pub use field::{FieldSpec, Scalar};
pub use graded::{GradedAlgebra, Presentation};
pub use matrix::Matrix;
pub use module::ModuleOver;
pub use morphism::Morphism;
pub use report::CheckReport;
pub use resolution::Resolution;
pub use subspace::{subspace_ops, RowSpace, Subspace};
