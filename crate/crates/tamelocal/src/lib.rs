//! Exact-arithmetic toolkit for the tame local Galois data of finite groups
//! over Q: inertia-decomposition pairs and their prime congruence classes,
//! bad-prime sets of parametric polynomials, the four-parameter family
//! covering (Z/2)^5-extensions, and the local-dimension classifier.
//!
//! Everything is integer or rational arithmetic; there is no floating point
//! anywhere. Each nontrivial computation has an independent brute-force
//! route next to it, and the test suite holds the two sides equal.

pub mod arith;
pub mod badprimes;
pub mod group;
pub mod idpairs;
pub mod locdim;
pub mod error;
pub mod poly;
pub mod qform;
pub mod squares;
pub mod textio;

pub use error::{Error, Result};
