//! Exact verification of the modular method for `x^5 + y^5 = d z^p`, `d = 2, 3`.
//!
//! Everything in this crate is pure computation over a fixed tower of number
//! fields: `Q ⊂ Q(√5) ⊂ K = Q(θ) ⊂ K(√−2)` with `θ⁴ − 5θ² + 5 = 0`, plus
//! `Q(i)` and the residue fields of `K`. No floating point enters any
//! verdict; floats appear only in numeric sanity checks on complex
//! embeddings.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, report
//! serialization and the command-line driver live in the `quintic` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod check;
pub mod descent;
pub mod eliminate;
pub mod elliptic;
mod error;
pub mod fields;
pub mod galois;
pub mod weil;

pub use check::{Check, Claim, Status};
pub use error::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;
