//! Std companion to [`qpf_core`]: thread-pool evaluation with deterministic
//! reductions, CSV/JSON formats, the resumable sweep cache, run manifests and
//! the `qpf` command line.

pub mod cache;
pub mod cli;
pub mod config;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod parallel;

pub use error::{AppError, AppResult};
pub use qpf_core;
