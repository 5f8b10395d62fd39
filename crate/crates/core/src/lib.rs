//! Neighbour-transitive codes in Hamming graphs.
//!
//! The crate has five layers:
//!
//! * [`perm`]: permutations, stabilizer chains, normal closures, socles and
//!   coset actions;
//! * [`hamming`]: vertices, codes, distances and distance partitions of `H(m,q)`;
//! * [`wreath`]: elements and subgroups of `S_q wr S_m` acting on `H(m,q)`;
//! * [`codes`]: constructions (repetition, permutation, twisted, Cayley,
//!   product and projection codes) and the group fixtures they rely on;
//! * [`analyze`]: certifiers returning [`analyze::Report`]s, and the socle
//!   orbit decomposition of a neighbour-transitive code.
//!
//! Conventions: points and symbols are 0-based; products are read left to
//! right, so `p.then(r)` applies `p` first.

pub mod analyze;
pub mod bounds;
pub mod codes;
pub mod error;
pub mod hamming;
pub mod perm;
pub mod wreath;

pub use bounds::Bounds;
pub use error::{Error, Result};
