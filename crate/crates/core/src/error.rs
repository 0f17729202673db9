use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register size L={0} out of range (2..=32)")]
    RegisterSize(u32),

    #[error("cutoff d_max={d_max} out of range for L={l} (0..={max})")]
    Cutoff { l: u32, d_max: u32, max: u32 },

    #[error("period r={r} out of range for L={l} (2 <= r < 2^L)")]
    Period { r: u64, l: u32 },

    #[error("outcome {value} out of range (< 2^{bits})")]
    Outcome { value: u64, bits: u32 },

    #[error("{what}: 2L={bits} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, bits: u32, limit: u32 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("trials must be positive")]
    NoTrials,

    #[error("sigma must be finite and non-negative")]
    Sigma,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("numerator must be smaller than the denominator")]
    ImproperFraction,

    #[error("gcd(m, N) != 1")]
    NotCoprime,

    #[error("invalid factoring instance: {0}")]
    Instance(String),

    #[error("distribution has no mass")]
    EmptyDistribution,

    #[error("invalid gate label {0:?}")]
    GateLabel(char),

    #[error("invalid search configuration: {0}")]
    Search(&'static str),

    #[error("fit needs at least {needed} points in the tail window, got {got}")]
    FitPoints { needed: usize, got: usize },

    #[error("non-positive s={s} at L={l} in the fit window")]
    FitNonPositive { l: u32, s: f64 },

    #[error("consecutive d_max fits required")]
    MissingFits,

    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("variant cannot be realised as a circuit: {0}")]
    Unrealisable(&'static str),
}
