//! Exact polynomial arithmetic over Z in the variable tower s -> t -> x:
//! resultants, discriminants, radicals, and reduction modulo primes.

pub mod modp;
pub mod parse;
pub mod ring;
pub mod tri;
pub mod uni;

pub use modp::{squarefree_degree_mod, ModPPolynomial, SquarefreeDegree};
pub use parse::parse_poly;
pub use tri::{discriminant_x, radical_t, resultant_x, IntPolynomial, Var};
