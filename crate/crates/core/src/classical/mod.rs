//! Classical pre- and postprocessing: continued fractions, order recovery and
//! the factoring loop. All integer arithmetic is arbitrary precision.

pub mod arith;
mod cf;
mod factor;
mod order;
mod sampler;

pub use cf::{cf_expand, cf_expand_u64, CfExpansion, Convergent};
pub use factor::{
    classical_split, shor_factor, Attempt, AttemptOutcome, ClassicalShortcut, FactorConfig, FactorReport,
    FactoringInstance,
};
pub use order::{find_order, OrderFinder, QpfSample, SampleSource};
pub use sampler::{sample_outcome, FormulaSampler, InjectedSamples, OracleSampler, OutcomeSampler, OutcomeSource};
