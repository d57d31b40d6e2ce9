//! Entropic uncertainty bounds on finite weighted Parseval frames.
//!
//! A "continuous" Parseval frame over a finite measure space is a list of
//! vectors `τ_α` with positive atom weights `w_α` such that
//! `Σ_α w_α |⟨h, τ_α⟩|² = ‖h‖²`. On top of that representation this crate
//! provides:
//!
//! - [`frames`]: generators, validation, analysis coefficients and mutual coherence;
//! - [`entropy`]: φ-functions, their grid certification, Shannon and φ-entropies;
//! - [`bounds`]: the Buzano, Deutsch, Maassen–Uffink / Ricaud–Torrésani and
//!   product-entropy inequalities, evaluated into [`bounds::BoundReport`]s;
//! - [`tightness`]: multi-start descent on the unit sphere for the entropy
//!   product, used to measure how far the product bound is from attained.
//!
//! The crate is `no_std` and only needs `alloc`. All randomness is derived from
//! explicit `u64` seeds, so every result is reproducible bit-for-bit.

#![no_std]
// Negated float comparisons are deliberate: they send NaN down the error path.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod entropy;
mod error;
pub mod frames;
pub mod linalg;
pub(crate) mod math;
pub mod rng;
pub mod tightness;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Slack on `‖τ_α‖ ≤ 1`.
pub const EPS_NORM: f64 = 1e-10;
/// Default max-entry tolerance on `Σ w_α τ_α τ_α* − I`.
pub const EPS_PARSEVAL: f64 = 1e-8;
/// Tolerance on `Σ w_α ‖τ_α‖² = d`.
pub const EPS_TRACE: f64 = 1e-8;
/// Allowed deviation of `‖h‖` from 1 for a [`frames::StateVector`].
pub const EPS_UNIT: f64 = 1e-12;
/// Default floor on squared analysis coefficients for an admissible state.
pub const ETA_ADM: f64 = 1e-12;
/// Slack on every inequality margin.
pub const EPS_VERIFY: f64 = 1e-9;
