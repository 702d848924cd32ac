//! Exact-arithmetic engine for braided vector spaces, braided Lie algebras,
//! universal enveloping algebras and their primitive spaces.
//!
//! Everything is computed over explicit finite-dimensional spaces with exact
//! scalars (rationals or cyclotomics), truncated by degree where the objects
//! are infinite-dimensional. There is no floating point anywhere: every check
//! is an exact identity and every reported dimension is an exact rank.
//!
//! The crate is `no_std` (alloc only); IO, configuration and caching live in
//! the companion `braidmm` binary crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod braiding;
pub mod envelope;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod quasi;
pub mod report;
pub mod scalar;
pub mod tensor_bialgebra;
pub mod transport;

pub use braiding::{braiding_from_bicharacter, check_yang_baxter, BraidedVectorSpace};
pub use error::Error;
pub use lie::BraidedLieAlgebra;
pub use linalg::{BasedSpace, LinMap, SparseVec};
pub use report::{AxiomCheck, CheckStatus};
pub use scalar::{FieldSpec, Scalar};
