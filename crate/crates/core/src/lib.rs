//! Exact-arithmetic workbench for finite-dimensional quadratic algebras.
//!
//! The crate computes with quadratic presentations `T(V)/(R)` over ℚ or
//! ℚ(i): graded slices and Hilbert series, quadratic duals, degree-2
//! centers, deformation maps on the relation space and the resulting
//! finite-dimensional parity-graded algebras, Frobenius forms, Jacobson
//! radicals and graded semisimplicity, trivial extensions, twisted tensor
//! products, and corner-idempotent equivalence certificates.
//!
//! All arithmetic is exact; every comparison in the public API is an
//! equality of canonical forms, never an approximation.

pub mod clifford;
pub mod deform;
pub mod error;
pub mod extensions;
pub mod matrix;
pub mod presets;
pub mod quadalg;
pub mod rowspace;
pub mod scalar;
pub mod structure;
pub mod subspace;
pub mod tensor;
pub mod word;

pub use error::{Error, ErrorClass, Result};
pub use scalar::{FieldKind, Scalar};
pub use subspace::Subspace;
pub use tensor::Tensor;
pub use word::Word;
