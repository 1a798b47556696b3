//! Exact arithmetic for locally integer-polynomial (LIP) functions on subsets
//! of ℤ: integer and rational polynomials, LIP-consistency of finite samples,
//! circuits and Newton series, extension of LIP functions through their
//! branch structure, set algebra over arithmetic progressions, and gluing of
//! polynomial pieces.
//!
//! Everything is exact: integers are arbitrary precision and rationals are
//! kept in lowest terms.

pub mod cli;
pub mod continuation;
pub mod error;
pub mod exactpoly;
pub mod gluing;
pub mod lipcore;
pub mod numeric;
pub mod sets;

pub use error::{LipError, Result};
pub use exactpoly::{interpolate, IntPolynomial, RatPolynomial, Sample};
pub use lipcore::{lip_check, Circuit, FunctionSpec, LipVerdict};
pub use numeric::{Integer, Rational};
