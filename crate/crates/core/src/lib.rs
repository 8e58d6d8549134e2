//! Exact computations for finite reflection groups: cyclotomic scalars,
//! matrix groups, invariant polynomials, Molien series, harmonic
//! polynomials and the joint eigenspace of invariant differential
//! operators on ℝⁿ ⋊ K.
#![no_std]

extern crate alloc;

pub mod cyclotomic;
pub mod eigen;
pub mod field;
pub mod group;
pub mod invariants;
pub mod linalg;
pub mod modular;
pub mod numeric;
pub mod parse;
pub mod poly;
pub mod series;

pub use cyclotomic::{Cyclotomic, CyclotomicError, CyclotomicField};
pub use eigen::{InducedModel, Weight};
pub use field::{Field, Rational};
pub use group::{builtin, closure, GroupElement, GroupError, RMatrix, ReflectionGroup};
pub use poly::{GradedBasis, Monomial, Poly};
