//! Verification engine for truncated hypergeometric supercongruences.
//!
//! The crate is layered bottom-up:
//!
//! - [`modarith`]: arithmetic modulo `p^e`, quadratic symbols, square roots
//!   and binary quadratic form representations.
//! - [`padic`]: factorials and binomials with the power of `p` tracked apart.
//! - [`sequences`]: the sequences `A_n`, `a_n`, `b_n`, `D_n`, exact identity
//!   checks and Legendre polynomials modulo `p`.
//! - [`series`]: truncated power series over the rationals.
//! - [`charsums`]: cubic character sums and the congruences bridging them to
//!   Legendre polynomials and truncated sums.
//! - [`verify`]: the statement registry, per-prime checks and sweeps.

pub mod charsums;
pub mod error;
pub mod modarith;
pub mod padic;
pub mod sequences;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
