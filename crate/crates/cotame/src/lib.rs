//! Exact computer algebra for polynomial-ring automorphisms over the
//! rationals: sparse polynomial arithmetic, locally nilpotent
//! derivations and their exponential automorphisms, named automorphism
//! families, weighted-degree class certificates for composition words,
//! and executable check suites over all of it.

pub mod error;
pub mod rational;
pub mod space;
pub mod poly;
pub mod parse;
pub mod matrix;
pub mod derivation;
pub mod endo;
pub mod words;
pub mod grading;
pub mod constructions;
pub mod verify;

pub use error::{Error, Result};
pub use poly::Polynomial;
pub use rational::Rat;
pub use space::{Monomial, VarSpace};
