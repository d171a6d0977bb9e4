//! Reed-Muller laboratory over F_2.
//!
//! - [`gf2`]: packed vectors and matrices, rank, nullspace, solve and an
//!   incremental independence oracle.
//! - [`poly`]: monomial bases, ANF/truth-table transforms and the
//!   evaluation matrix `E(m, r)`.
//! - [`vanishing`]: vanishing spaces `I_r(Z)` and degree-`r` closures.
//! - [`spectrum`]: exact weight enumerators, interval counts, bound
//!   evaluators and expected-size calculators.
//! - [`channels`]: capped erasure/error channels with their decoders.
//! - [`lab`]: seeded Monte Carlo experiments and reporting.
//!
//! See the crate's `examples/` directory for one runnable program per area.

pub mod channels;
pub mod error;
pub mod gf2;
pub mod lab;
pub mod poly;
pub mod spectrum;
pub mod vanishing;

pub use error::{Error, Result};
