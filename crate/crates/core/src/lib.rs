//! Exact arithmetic toolkit for studying how often irreducible characters of
//! `GL(n, q)` vanish.
//!
//! The crate is organised bottom-up:
//!
//! * [`partitions`]: integer partitions, the pentagonal recurrence, hooks.
//! * [`numtheory`]: Möbius function, primality, factorization, cyclotomic
//!   values `Φ_n(a)` and their primitive/non-primitive split.
//! * [`fqpoly`]: explicit finite fields `F_q` and polynomials over them.
//! * [`cycloring`]: exact arithmetic in `Z[ζ_M]` with Galois action and traces.
//! * [`glnq`]: classes and characters of `GL(n, q)` as degree-`n` maps from
//!   irreducible polynomials to partitions, with counting and sampling.
//! * [`gl2`]: the full character table of `GL(2, q)` and the Galois-averaging
//!   inequalities checked on it.
//! * [`oracle`]: brute-force matrix groups used as ground truth.
//!
//! Every verdict is computed in exact integer or rational arithmetic.

pub mod caps;
pub mod cycloring;
pub mod error;
pub mod exact;
pub mod fqpoly;
pub mod gl2;
pub mod glnq;
pub mod numtheory;
pub mod oracle;
pub mod partitions;
pub mod report;
mod series;

pub use caps::Caps;
pub use error::{Error, Result};
pub use report::{Outcome, Report};

/// Arbitrary-precision natural number.
pub type BigNat = num_bigint::BigUint;
/// Arbitrary-precision rational.
pub type BigRat = num_rational::BigRational;
