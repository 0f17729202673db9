use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_bigint::BigUint;

use super::order::{QpfSample, SampleSource};
use crate::error::{Error, Result};
use crate::oracle::{multiplicative_order, qpf_distribution_exact};
use crate::qpf::{full_distribution, AqftSpec, BoundVariant, Distribution};
use crate::rng::{self, Rng};

/// Inverse-CDF sampler over a distribution's outcomes.
///
/// Probability mass missing from the distribution (`1 − Σ Pr`) is assigned to a
/// uniformly random outcome.
#[derive(Debug, Clone)]
pub struct OutcomeSampler {
    cumulative: Vec<f64>,
    source: SampleSource,
}

impl OutcomeSampler {
    pub fn new(dist: &Distribution, source: SampleSource) -> Result<Self> {
        let mut acc = 0.0;
        let cumulative: Vec<f64> = dist
            .probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if acc.is_nan() || acc <= 0.0 {
            return Err(Error::EmptyDistribution);
        }
        Ok(OutcomeSampler { cumulative, source })
    }

    pub fn sample(&self, rng: &mut Rng) -> QpfSample {
        let u = rng::unit_f64(rng);
        let total = *self.cumulative.last().unwrap();
        let j = if u < total {
            self.cumulative.partition_point(|&c| c <= u) as u64
        } else {
            rng::below(rng, self.cumulative.len() as u64)
        };
        QpfSample { j: BigUint::from(j), source: self.source }
    }
}

/// One inverse-CDF draw from `dist`.
pub fn sample_outcome(dist: &Distribution, rng: &mut Rng) -> Result<QpfSample> {
    Ok(OutcomeSampler::new(dist, SampleSource::Injected)?.sample(rng))
}

/// Supplies measured outcomes for base `m` of the instance `N` on `2L` qubits.
pub trait OutcomeSource {
    fn sample(&mut self, n: &BigUint, l: u32, m: &BigUint, rng: &mut Rng) -> Result<QpfSample>;
}

fn small(v: &BigUint, what: &'static str) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Domain(what))
}

/// Draws from the closed-form distribution `Pr(j, r, L, d_max)`, with the order
/// `r` found classically by iteration.
#[derive(Debug, Clone)]
pub struct FormulaSampler {
    d_max: Option<u32>,
    variant: BoundVariant,
    cache: BTreeMap<u64, OutcomeSampler>,
}

impl FormulaSampler {
    /// `d_max = None` means full depth (`2L`).
    pub fn new(d_max: Option<u32>, variant: BoundVariant) -> Self {
        FormulaSampler { d_max, variant, cache: BTreeMap::new() }
    }
}

impl OutcomeSource for FormulaSampler {
    fn sample(&mut self, n: &BigUint, l: u32, m: &BigUint, rng: &mut Rng) -> Result<QpfSample> {
        let n = small(n, "formula sampler needs N < 2^64")?;
        let m = small(m, "formula sampler needs m < 2^64")?;
        if !self.cache.contains_key(&m) {
            let r = multiplicative_order(m, n).ok_or(Error::NotCoprime)?;
            let spec = AqftSpec::new(l, self.d_max.unwrap_or(2 * l), self.variant)?;
            let dist = full_distribution(r, &spec)?;
            self.cache.insert(m, OutcomeSampler::new(&dist, SampleSource::FormulaSampled)?);
        }
        Ok(self.cache[&m].sample(rng))
    }
}

/// Draws from the state-vector simulation of the whole register.
#[derive(Debug, Clone)]
pub struct OracleSampler {
    d_max: Option<u32>,
    cache: BTreeMap<u64, OutcomeSampler>,
}

impl OracleSampler {
    pub fn new(d_max: Option<u32>) -> Self {
        OracleSampler { d_max, cache: BTreeMap::new() }
    }
}

impl OutcomeSource for OracleSampler {
    fn sample(&mut self, n: &BigUint, l: u32, m: &BigUint, rng: &mut Rng) -> Result<QpfSample> {
        let n = small(n, "oracle sampler needs N < 2^64")?;
        let m = small(m, "oracle sampler needs m < 2^64")?;
        if !self.cache.contains_key(&m) {
            let spec = AqftSpec::physical(l, self.d_max.unwrap_or(2 * l))?;
            let dist = qpf_distribution_exact(n, m, &spec)?;
            self.cache.insert(m, OutcomeSampler::new(&dist, SampleSource::OracleSampled)?);
        }
        Ok(self.cache[&m].sample(rng))
    }
}

/// Replays a fixed list of outcomes, then fails.
#[derive(Debug, Clone, Default)]
pub struct InjectedSamples {
    queue: VecDeque<BigUint>,
}

impl InjectedSamples {
    pub fn new(js: impl IntoIterator<Item = BigUint>) -> Self {
        InjectedSamples { queue: js.into_iter().collect() }
    }
}

impl OutcomeSource for InjectedSamples {
    fn sample(&mut self, _n: &BigUint, _l: u32, _m: &BigUint, _rng: &mut Rng) -> Result<QpfSample> {
        let j = self.queue.pop_front().ok_or(Error::EmptyDistribution)?;
        Ok(QpfSample { j, source: SampleSource::Injected })
    }
}
