//! Exact engine for the Picard-graded cohomology of a point for the cyclic
//! p-groups C_{p^n}, with constant integral coefficients, together with its
//! Mackey structure maps, a brute-force Bredon oracle and the double-coset
//! combinatorics of subgroup strata.

pub mod abelian;
pub mod bredon;
pub mod catalog;
pub mod cohomology;
pub mod complexes;
pub mod error;
pub mod groupring;
pub mod homology;
pub mod picard;
pub mod snf;
pub mod stratcomb;
pub mod verify;
pub mod zmat;

pub use abelian::{FinGenAb, Hom};
pub use error::{Error, Result};
