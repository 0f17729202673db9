use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::noise::{NoiseAngles, NoiseModel};
use super::spec::AqftSpec;
use crate::error::{Error, Result};
use crate::sum::pairwise_sum;

/// Largest register the closed form will evaluate.
pub const MAX_EVAL_BITS: u32 = 48;
/// Largest register for which a dense distribution is materialised.
pub const MAX_DISTRIBUTION_BITS: u32 = 24;

/// Number of terms `M = ⌊2^(2L)/r⌋` in the periodic sum.
pub fn term_count(spec: &AqftSpec, r: u64) -> u64 {
    ((1u128 << spec.bits()) / u128::from(r)) as u64
}

/// Total probability of the truncated periodic state, `r·M / 2^(2L)`.
pub fn expected_mass(spec: &AqftSpec, r: u64) -> f64 {
    let m = term_count(spec, r);
    libm::ldexp((r as f64) * (m as f64), -(spec.bits() as i32))
}

fn normalisation(spec: &AqftSpec, r: u64) -> f64 {
    libm::ldexp(r as f64, -(2 * spec.bits() as i32))
}

/// Evaluates `Pr(j)` for one `(spec, r)` with reusable scratch space.
///
/// The AQFT phase of `|k⟩ → |j⟩` is linear in the bits of `k`:
/// `φ(j, k) = Σ_n [k]_n θ_n(j)` with `θ_n(j) = 2π ψ_n(j) / 2^(2L)` and
/// `ψ_n(j) = Σ_m [j]_m 2^(m+n)` over the kept `m`. The phase factor therefore
/// splits as `A(k >> h) · B(k mod 2^h)`; both tables are filled by doubling, so
/// each term of the periodic sum costs one complex multiply.
#[derive(Debug, Clone)]
pub struct PhaseEvaluator {
    spec: AqftSpec,
    r: u64,
    terms: u64,
    split: u32,
    factors: Vec<Complex64>,
    low: Vec<Complex64>,
    high: Vec<Complex64>,
}

impl PhaseEvaluator {
    pub fn new(spec: AqftSpec, r: u64) -> Result<Self> {
        spec.check_realisable()?;
        spec.check_period(r)?;
        if spec.bits() > MAX_EVAL_BITS {
            return Err(Error::TooLarge {
                what: "closed-form evaluation",
                bits: spec.bits(),
                limit: MAX_EVAL_BITS,
            });
        }
        let terms = term_count(&spec, r);
        let max_k = (terms - 1) * r;
        let split = spec.l();
        let high_len = (max_k >> split) as usize + 1;
        Ok(PhaseEvaluator {
            spec,
            r,
            terms,
            split,
            factors: vec![Complex64::new(1.0, 0.0); spec.bits() as usize],
            low: vec![Complex64::new(1.0, 0.0); 1usize << split],
            high: vec![Complex64::new(1.0, 0.0); high_len],
        })
    }

    pub fn spec(&self) -> &AqftSpec {
        &self.spec
    }

    pub fn period(&self) -> u64 {
        self.r
    }

    /// `Pr(j)` with optional per-pair angle offsets.
    pub fn prob(&mut self, j: u64, noise: Option<&NoiseAngles>) -> Result<f64> {
        self.spec.check_outcome(j)?;
        let spec = self.spec;
        let mask = spec.mask();
        for n in 0..spec.bits() {
            let mut units = 0u64;
            let mut offset = 0.0;
            for m in 0..spec.bits() {
                if (j >> m) & 1 == 1 && spec.keeps(m, n) {
                    units = units.wrapping_add(1u64 << (m + n));
                    if let Some(noise) = noise {
                        offset += noise.get(m, n);
                    }
                }
            }
            let theta = spec.units_to_radians(units & mask) + offset;
            self.factors[n as usize] = Complex64::cis(theta);
        }
        fill_table(&mut self.low, &self.factors[..self.split as usize]);
        fill_table(&mut self.high, &self.factors[self.split as usize..]);

        let low_mask = (1u64 << self.split) - 1;
        let mut acc = Complex64::new(0.0, 0.0);
        let mut k = 0u64;
        for _ in 0..self.terms {
            acc += self.high[(k >> self.split) as usize] * self.low[(k & low_mask) as usize];
            k += self.r;
        }
        Ok(normalisation(&spec, self.r) * acc.norm_sqr())
    }
}

/// `table[x] = Π_{bit b of x} factors[b]` for every `x < table.len()`.
fn fill_table(table: &mut [Complex64], factors: &[Complex64]) {
    table[0] = Complex64::new(1.0, 0.0);
    let mut filled = 1usize;
    for f in factors {
        if filled >= table.len() {
            break;
        }
        let n = filled.min(table.len() - filled);
        for x in 0..n {
            table[filled + x] = table[x] * f;
        }
        filled *= 2;
    }
}

/// `Pr(j, r, L, d_max) = |(√r / 2^(2L)) Σ_{p<M} exp(i φ(j, p·r))|²`.
pub fn prob_j(j: u64, r: u64, spec: &AqftSpec, noise: Option<&NoiseAngles>) -> Result<f64> {
    PhaseEvaluator::new(*spec, r)?.prob(j, noise)
}

/// Direct evaluation of the same sum, `O(L²)` work per term. Differential
/// reference for [`PhaseEvaluator`].
pub fn prob_j_reference(j: u64, r: u64, spec: &AqftSpec, noise: Option<&NoiseAngles>) -> Result<f64> {
    spec.check_realisable()?;
    spec.check_period(r)?;
    spec.check_outcome(j)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..term_count(spec, r) {
        let k = p * r;
        let mut phi = spec.units_to_radians(spec.phase_units(j, k));
        if let Some(noise) = noise {
            phi += noise.phase(j, k);
        }
        acc += Complex64::cis(phi);
    }
    Ok(normalisation(spec, r) * acc.norm_sqr())
}

/// Outcomes `⌊c·2^(2L)/r⌋` and `⌈c·2^(2L)/r⌉` for `0 < c < r`, sorted, deduplicated.
pub fn useful_j_set(r: u64, l: u32) -> Result<Vec<u64>> {
    if !(2..=AqftSpec::MAX_L).contains(&l) {
        return Err(Error::RegisterSize(l));
    }
    if r < 2 || r >= 1u64 << l {
        return Err(Error::Period { r, l });
    }
    let dim = 1u128 << (2 * l);
    let r128 = u128::from(r);
    let mut out = Vec::with_capacity(2 * r as usize);
    for c in 1..r128 {
        let num = c * dim;
        let lo = (num / r128) as u64;
        out.push(lo);
        if !num.is_multiple_of(r128) {
            out.push(lo + 1);
        }
    }
    // ascending in c, and floor(c+1) > ceil(c) since 2^(2L)/r > 1
    out.dedup();
    Ok(out)
}

/// Probabilities of every useful outcome, in the order of [`useful_j_set`].
pub fn useful_probabilities(r: u64, spec: &AqftSpec, noise: Option<&NoiseAngles>) -> Result<Vec<f64>> {
    let js = useful_j_set(r, spec.l())?;
    let mut eval = PhaseEvaluator::new(*spec, r)?;
    js.iter().map(|&j| eval.prob(j, noise)).collect()
}

/// Probability `s` that one run yields a useful outcome.
pub fn prob_useful(r: u64, spec: &AqftSpec) -> Result<f64> {
    Ok(pairwise_sum(&useful_probabilities(r, spec, None)?))
}

/// Useful-output probability for noise trial `t`.
pub fn noisy_trial(r: u64, spec: &AqftSpec, noise: &NoiseModel, t: u32) -> Result<f64> {
    let angles = noise.draw(spec, t)?;
    Ok(pairwise_sum(&useful_probabilities(r, spec, Some(&angles))?))
}

/// Sample mean and standard error over noise trials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub trials: u32,
}

impl NoisyEstimate {
    /// Reduces per-trial values given in trial order.
    pub fn from_trials(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NoTrials);
        }
        let n = values.len() as f64;
        let mean = pairwise_sum(values) / n;
        let stderr = if values.len() > 1 {
            let sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
            libm::sqrt(pairwise_sum(&sq) / (n - 1.0) / n)
        } else {
            0.0
        };
        Ok(NoisyEstimate { mean, stderr, trials: values.len() as u32 })
    }
}

/// Monte Carlo estimate of `s` under Gaussian controlled-rotation angle errors.
///
/// With `sigma = 0` this is exactly [`prob_useful`] with zero standard error.
pub fn prob_useful_noisy(r: u64, spec: &AqftSpec, noise: &NoiseModel) -> Result<NoisyEstimate> {
    noise.validate()?;
    if noise.sigma == 0.0 {
        return Ok(NoisyEstimate { mean: prob_useful(r, spec)?, stderr: 0.0, trials: noise.trials });
    }
    let values = (0..noise.trials)
        .map(|t| noisy_trial(r, spec, noise, t))
        .collect::<Result<Vec<_>>>()?;
    NoisyEstimate::from_trials(&values)
}

/// Outcome probabilities over every `j < 2^(2L)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub spec: AqftSpec,
    pub r: u64,
    pub probabilities: Vec<f64>,
}

impl Distribution {
    pub fn total(&self) -> f64 {
        pairwise_sum(&self.probabilities)
    }

    pub fn useful_mass(&self) -> Result<f64> {
        let js = useful_j_set(self.r, self.spec.l())?;
        let v: Vec<f64> = js.iter().map(|&j| self.probabilities[j as usize]).collect();
        Ok(pairwise_sum(&v))
    }

    pub fn expected_mass(&self) -> f64 {
        expected_mass(&self.spec, self.r)
    }

    /// Largest absolute difference between two distributions of equal length.
    pub fn max_abs_diff(&self, other: &Distribution) -> Result<f64> {
        if self.probabilities.len() != other.probabilities.len() {
            return Err(Error::Dimension {
                expected: self.probabilities.len(),
                got: other.probabilities.len(),
            });
        }
        Ok(self
            .probabilities
            .iter()
            .zip(&other.probabilities)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

pub(crate) fn check_distribution_size(spec: &AqftSpec) -> Result<()> {
    if spec.bits() > MAX_DISTRIBUTION_BITS {
        return Err(Error::TooLarge {
            what: "dense distribution",
            bits: spec.bits(),
            limit: MAX_DISTRIBUTION_BITS,
        });
    }
    Ok(())
}

/// `Pr(j)` for every outcome `j`.
pub fn full_distribution(r: u64, spec: &AqftSpec) -> Result<Distribution> {
    check_distribution_size(spec)?;
    let mut eval = PhaseEvaluator::new(*spec, r)?;
    let probabilities = (0..spec.dimension()).map(|j| eval.prob(j, None)).collect::<Result<_>>()?;
    Ok(Distribution { spec: *spec, r, probabilities })
}

/// Trial-averaged distribution under the noise model.
pub fn noisy_full_distribution(r: u64, spec: &AqftSpec, noise: &NoiseModel) -> Result<Distribution> {
    noise.validate()?;
    if noise.sigma == 0.0 {
        return full_distribution(r, spec);
    }
    check_distribution_size(spec)?;
    let mut eval = PhaseEvaluator::new(*spec, r)?;
    let dim = spec.dimension() as usize;
    let mut per_j: Vec<Vec<f64>> = vec![Vec::with_capacity(noise.trials as usize); dim];
    for t in 0..noise.trials {
        let angles = noise.draw(spec, t)?;
        for (j, slot) in per_j.iter_mut().enumerate() {
            slot.push(eval.prob(j as u64, Some(&angles))?);
        }
    }
    let n = f64::from(noise.trials);
    let probabilities = per_j.iter().map(|v| pairwise_sum(v) / n).collect();
    Ok(Distribution { spec: *spec, r, probabilities })
}
