//! Exact arithmetic for the Kummer-type function fields
//! `F_q(T, (T^2 + aT + b)^(1/l))`: point counts, L-polynomials and class
//! numbers from a single Jacobi sum, with brute-force oracles to check them.

pub mod cyclo;
pub mod error;
pub mod frobenius;
pub mod gf;
pub mod lfunc;
pub mod numth;
pub mod oracle;
pub mod parse;
pub mod stats;

pub use error::{Error, Result};
