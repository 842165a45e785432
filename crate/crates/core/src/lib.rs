//! Degree-truncated noncommutative Groebner bases, syzygies and minimal
//! projective resolutions over quotients `R / <Omega>` of free graded
//! algebras over prime fields.
//!
//! The crate is `no_std` (it needs `alloc`). The mod 2 Steenrod algebra,
//! presented by Adem relations, is available through [`steenrod`].

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod field;
pub mod groebner;
pub mod module;
pub mod oracle;
pub mod monomial;
pub mod polynomial;
pub mod reduction;
pub mod resolution;
pub mod steenrod;
pub mod syzygy;
pub mod text;

mod trie;

pub use algebra::FreeAlgebra;
pub use error::AlgebraError;
pub use field::{FieldElement, PrimeField};
pub use monomial::{GeneratorTable, Letter, Monomial, MonomialOrder};
pub use polynomial::{Leading, Polynomial, Term};
pub use reduction::{ReducerSet, TruncatedContext};
