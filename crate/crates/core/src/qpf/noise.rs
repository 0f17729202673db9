use alloc::vec;
use alloc::vec::Vec;

use rand_distr::{Distribution as _, Normal};

use super::spec::AqftSpec;
use crate::error::{Error, Result};
use crate::rng;

/// Gaussian angle error on every controlled rotation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    /// Standard deviation of the per-gate angle error, radians.
    pub sigma: f64,
    pub trials: u32,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(sigma: f64, trials: u32, seed: u64) -> Result<Self> {
        let m = NoiseModel { sigma, trials, seed };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma.is_finite() && self.sigma >= 0.0) {
            return Err(Error::Sigma);
        }
        if self.trials == 0 {
            return Err(Error::NoTrials);
        }
        Ok(())
    }

    /// Offsets for trial `t`, drawn from the trial's own stream.
    pub fn draw(&self, spec: &AqftSpec, t: u32) -> Result<NoiseAngles> {
        NoiseAngles::draw(spec, self.sigma, &mut rng::trial(self.seed, u64::from(t)))
    }
}

/// Per-pair angle offsets `δ_{m,n}`, dense `2L × 2L`, zero outside the
/// controlled-rotation pairs of the spec.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseAngles {
    bits: u32,
    offsets: Vec<f64>,
}

impl NoiseAngles {
    pub fn zero(spec: &AqftSpec) -> Self {
        let b = spec.bits() as usize;
        NoiseAngles { bits: spec.bits(), offsets: vec![0.0; b * b] }
    }

    /// One draw per controlled pair, in ascending `(m, n)` order.
    pub fn draw<R: rand_core::RngCore>(spec: &AqftSpec, sigma: f64, rng: &mut R) -> Result<Self> {
        let normal = Normal::new(0.0, sigma).map_err(|_| Error::Sigma)?;
        let mut out = Self::zero(spec);
        for m in 0..spec.bits() {
            for n in 0..spec.bits() {
                if spec.is_controlled_pair(m, n) {
                    out.set(m, n, normal.sample(rng));
                }
            }
        }
        Ok(out)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, m: u32, n: u32) -> f64 {
        self.offsets[(m * self.bits + n) as usize]
    }

    pub fn set(&mut self, m: u32, n: u32, value: f64) {
        self.offsets[(m * self.bits + n) as usize] = value;
    }

    /// `Σ [j]_m [k]_n δ_{m,n}`.
    pub fn phase(&self, j: u64, k: u64) -> f64 {
        let mut acc = 0.0;
        for m in 0..self.bits {
            if (j >> m) & 1 == 0 {
                continue;
            }
            for n in 0..self.bits {
                if (k >> n) & 1 == 1 {
                    acc += self.get(m, n);
                }
            }
        }
        acc
    }
}
