//! Positive-but-not-completely-positive maps on matrix algebras, their Choi
//! operators as entanglement witness candidates, and the numeric machinery to
//! check every claim made about them.
//!
//! The crate is `no_std` and needs only `alloc`. File formats, the command
//! line and report serialization live in `posmap-cli`.
//!
//! Module map:
//!
//! - [`matrix`]: dense complex matrices.
//! - [`numerics`]: Hermitian eigensolver, PSD certification, tensor
//!   reshufflings (Kronecker, partial transpose, realignment) and norms.
//! - [`pmap`]: the map family `Φ_{α,β}`, its block analysis and threshold search.
//! - [`choi`]: Choi operators, complete-positivity tests, Schur analysis and
//!   the analytic spectrum audit.
//! - [`states`]: the Horodecki 2⊗4 family and an NPT test state.
//! - [`witness`]: expectation values, detection and block-positivity search.
//! - [`audit`] / [`reproduce`]: claim records and the full reproduction run.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod audit;
pub mod choi;
mod error;
mod fmath;
pub mod matrix;
pub mod numerics;
pub mod pmap;
pub mod reproduce;
pub mod states;
pub mod witness;

pub use error::{Error, Result};
pub use matrix::{c64, ComplexMatrix};
pub use numerics::Tolerances;
