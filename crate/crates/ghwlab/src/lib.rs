//! Exact-arithmetic toolkit for a family of p-ary trace codes built from
//! defining sets, their weight distributions and generalized Hamming
//! weights, cross-checked between closed formulas and brute-force
//! character-sum computations.
//!
//! Everything is integer-exact: finite-field arithmetic uses dense
//! log/antilog tables, character sums live in Z[zeta_p], and the
//! closed-form values live in the quadratic ring (1/2)Z[sqrt(p*)].

pub mod analysis;
pub mod bounds;
pub mod charsums;
pub mod codes;
pub mod cyclo;
pub mod error;
pub mod gf;
pub mod ghw;
pub mod verify;

pub use error::{Error, Result};
