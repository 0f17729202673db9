//! Closed-form output distribution of quantum period finding under the
//! approximate QFT.
//!
//! After measuring the function register the input register holds
//! `(√r / 2^L) Σ_{p<M} |p·r⟩` with `M = ⌊2^(2L)/r⌋`; the outcome `j` then has
//! probability `|(√r / 2^(2L)) Σ_p exp(i φ(j, p·r))|²` where `φ` is the AQFT
//! phase restricted to the kept bit pairs.

mod eval;
mod noise;
mod spec;

pub use eval::{
    expected_mass, full_distribution, noisy_full_distribution, noisy_trial, prob_j, prob_j_reference,
    prob_useful, prob_useful_noisy, term_count, useful_j_set, useful_probabilities, Distribution,
    NoisyEstimate, PhaseEvaluator, MAX_DISTRIBUTION_BITS, MAX_EVAL_BITS,
};
pub(crate) use eval::check_distribution_size;
pub use noise::{NoiseAngles, NoiseModel};
pub use spec::{aqft_phase, AqftSpec, BoundVariant};

/// The period used to characterise a whole `(L, d_max)` pair: `2^(L−1) + 2`,
/// the minimum of `s` to the right of the central peak.
pub fn characteristic_period(l: u32) -> u64 {
    (1u64 << (l - 1)) + 2
}
