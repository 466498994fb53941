//! Products of quadratic and quartic residues modulo primes.
//!
//! The crate has two halves that check each other. The brute-force
//! half ([`products`], [`gauss`], [`invariants`]) evaluates every
//! product family and count by direct enumeration. The closed-form
//! half ([`closed`], [`lucas`]) implements the stated case tables.
//! [`sweep`] runs both sides over prime ranges in parallel and emits
//! one record per checked identity.

pub mod closed;
pub mod error;
pub mod gauss;
pub mod invariants;
pub mod lucas;
pub mod modular;
pub mod products;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use modular::{Modulus, OddPrime, Sign};
pub use report::{Status, VerificationRecord};
