//! Quantum period finding with a restricted set of controlled rotations.
//!
//! This crate is `no_std` (it needs `alloc`) and contains every algorithm:
//!
//! - [`su2`]: 2×2 unitaries, the fault-tolerant generator set `{H, S, S†, T, T†, X, Z}`,
//!   gate words and the phase-invariant distance between unitaries.
//! - [`qpf`]: closed-form output distribution of period finding under the approximate QFT,
//!   the useful-output probability `s` and its noisy Monte Carlo estimate.
//! - [`oracle`]: a dense state-vector simulator of the AQFT circuit, used as ground truth.
//! - [`classical`]: continued fractions, order recovery and the factoring driver.
//! - [`synth`]: exhaustive and meet-in-the-middle search for gate words approximating rotations.
//! - [`scaling`]: log-linear decay fits and the `L_max` / `d_max` / `f_max` relation.
//!
//! Parallel evaluation, file formats and the command line live in the `qpf` crate.

#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod classical;
pub mod error;
pub mod oracle;
pub mod qpf;
pub mod rng;
pub mod scaling;
pub mod su2;
pub mod synth;

mod sum;

pub use error::{Error, Result};
pub use sum::pairwise_sum;

pub use num_complex::Complex64;
