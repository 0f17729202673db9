//! Multi-threaded versions of the core evaluators.
//!
//! Work is split into ordered chunks and every reduction goes through
//! [`pairwise_sum`] over values in their natural order, so each function
//! returns bit-identical results for any worker count, and the same bits as
//! its serial counterpart in `qpf-core`.

use std::time::Instant;

use rayon::prelude::*;

use qpf_core::qpf::{
    noisy_trial, useful_j_set, AqftSpec, Distribution, NoiseAngles, NoiseModel, NoisyEstimate, PhaseEvaluator,
    MAX_DISTRIBUTION_BITS,
};
use qpf_core::scaling::ScalingPoint;
use qpf_core::synth::{
    best_of_length, merge_candidates, prefixes, search_exhaustive_with, search_meet_in_middle, SearchConfig,
    Strategy, SynthResult,
};
use qpf_core::{pairwise_sum, Error, Result};

use crate::cache::SweepCache;
use crate::error::{AppError, AppResult};

const CHUNK: usize = 512;

/// Runs `f` on a pool of `threads` workers (`None` or 0: all cores).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> AppResult<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| AppError::Format(e.to_string()))?;
    Ok(pool.install(f))
}

fn probabilities_of(
    js: &[u64],
    r: u64,
    spec: &AqftSpec,
    noise: Option<&NoiseAngles>,
    deadline: Option<Instant>,
) -> Result<Option<Vec<f64>>> {
    PhaseEvaluator::new(*spec, r)?;
    let chunks: Vec<Option<Vec<f64>>> = js
        .par_chunks(CHUNK)
        .map_init(
            || PhaseEvaluator::new(*spec, r).expect("validated above"),
            |eval, chunk| {
                if deadline.is_some_and(|d| Instant::now() > d) {
                    return Ok(None);
                }
                chunk.iter().map(|&j| eval.prob(j, noise)).collect::<Result<Vec<_>>>().map(Some)
            },
        )
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(js.len());
    for c in chunks {
        match c {
            Some(v) => out.extend(v),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Probabilities of the useful outcomes, in ascending `j`.
pub fn useful_probabilities(r: u64, spec: &AqftSpec, noise: Option<&NoiseAngles>) -> Result<Vec<f64>> {
    let js = useful_j_set(r, spec.l())?;
    Ok(probabilities_of(&js, r, spec, noise, None)?.expect("no deadline"))
}

pub fn prob_useful(r: u64, spec: &AqftSpec) -> Result<f64> {
    Ok(pairwise_sum(&useful_probabilities(r, spec, None)?))
}

/// `s`, or `None` if the deadline passes first.
pub fn prob_useful_until(r: u64, spec: &AqftSpec, deadline: Option<Instant>) -> Result<Option<f64>> {
    let js = useful_j_set(r, spec.l())?;
    Ok(probabilities_of(&js, r, spec, None, deadline)?.map(|v| pairwise_sum(&v)))
}

/// Noise trials run concurrently; the per-trial values are reduced in trial order.
pub fn prob_useful_noisy(r: u64, spec: &AqftSpec, noise: &NoiseModel) -> Result<NoisyEstimate> {
    noise.validate()?;
    if noise.sigma == 0.0 {
        return Ok(NoisyEstimate { mean: prob_useful(r, spec)?, stderr: 0.0, trials: noise.trials });
    }
    let values: Vec<f64> =
        (0..noise.trials).into_par_iter().map(|t| noisy_trial(r, spec, noise, t)).collect::<Result<_>>()?;
    NoisyEstimate::from_trials(&values)
}

fn check_size(spec: &AqftSpec) -> Result<()> {
    if spec.bits() > MAX_DISTRIBUTION_BITS {
        return Err(Error::TooLarge { what: "dense distribution", bits: spec.bits(), limit: MAX_DISTRIBUTION_BITS });
    }
    Ok(())
}

pub fn full_distribution(r: u64, spec: &AqftSpec) -> Result<Distribution> {
    check_size(spec)?;
    let js: Vec<u64> = (0..spec.dimension()).collect();
    let probabilities = probabilities_of(&js, r, spec, None, None)?.expect("no deadline");
    Ok(Distribution { spec: *spec, r, probabilities })
}

/// Trial-averaged distribution; each `Pr(j)` is the pairwise mean over trials.
pub fn noisy_full_distribution(r: u64, spec: &AqftSpec, noise: &NoiseModel) -> Result<Distribution> {
    noise.validate()?;
    if noise.sigma == 0.0 {
        return full_distribution(r, spec);
    }
    check_size(spec)?;
    PhaseEvaluator::new(*spec, r)?;
    let angles: Vec<NoiseAngles> = (0..noise.trials).map(|t| noise.draw(spec, t)).collect::<Result<_>>()?;
    let n = f64::from(noise.trials);
    let js: Vec<u64> = (0..spec.dimension()).collect();
    let chunks: Vec<Vec<f64>> = js
        .par_chunks(CHUNK)
        .map_init(
            || PhaseEvaluator::new(*spec, r).expect("validated above"),
            |eval, chunk| {
                chunk
                    .iter()
                    .map(|&j| {
                        let per_trial =
                            angles.iter().map(|a| eval.prob(j, Some(a))).collect::<Result<Vec<_>>>()?;
                        Ok(pairwise_sum(&per_trial) / n)
                    })
                    .collect::<Result<Vec<_>>>()
            },
        )
        .collect::<Result<_>>()?;
    Ok(Distribution { spec: *spec, r, probabilities: chunks.concat() })
}

/// One grid point of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutcome {
    Computed(ScalingPoint),
    Cached(ScalingPoint),
    TimedOut { l: u32, d_max: u32 },
}

impl SweepOutcome {
    pub fn point(&self) -> Option<&ScalingPoint> {
        match self {
            SweepOutcome::Computed(p) | SweepOutcome::Cached(p) => Some(p),
            SweepOutcome::TimedOut { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepRequest {
    pub ls: Vec<u32>,
    pub d_maxes: Vec<u32>,
    pub variant: qpf_core::qpf::BoundVariant,
    /// Per-point limit in seconds; a point that runs over is reported, not fatal.
    pub timeout: Option<f64>,
}

/// `s(2^(L−1) + 2, L, d_max)` over the grid, ordered by `d_max` then `L`.
/// Cached points are reused and new ones stored as they finish.
pub fn sweep(req: &SweepRequest, cache: Option<&SweepCache>) -> AppResult<Vec<SweepOutcome>> {
    let grid: Vec<(u32, u32)> =
        req.d_maxes.iter().flat_map(|&d| req.ls.iter().map(move |&l| (l, d))).collect();
    grid.par_iter()
        .map(|&(l, d_max)| {
            if let Some(p) = cache.map(|c| c.load(l, d_max, req.variant)).transpose()?.flatten() {
                return Ok(SweepOutcome::Cached(p));
            }
            let spec = AqftSpec::new(l, d_max, req.variant)?;
            let r = qpf_core::qpf::characteristic_period(l);
            let start = Instant::now();
            let deadline = req.timeout.map(|t| start + std::time::Duration::from_secs_f64(t));
            match prob_useful_until(r, &spec, deadline)? {
                Some(s) => {
                    let point = ScalingPoint::new(l, d_max, s, start.elapsed().as_secs_f64());
                    if let Some(c) = cache {
                        c.store(&point, req.variant)?;
                    }
                    Ok(SweepOutcome::Computed(point))
                }
                None => Ok(SweepOutcome::TimedOut { l, d_max }),
            }
        })
        .collect()
}

/// [`qpf_core::synth::search`] with the exhaustive strategy spread over
/// first-gate prefixes.
pub fn search(config: &SearchConfig) -> Result<SynthResult> {
    match config.strategy {
        Strategy::MeetInMiddle => search_meet_in_middle(config),
        Strategy::Exhaustive => search_exhaustive_with(config, |len| {
            let parts: Vec<_> =
                prefixes(config.alphabet).par_iter().map(|&g| best_of_length(config, len, &[g])).collect();
            merge_candidates(parts)
        }),
    }
}
