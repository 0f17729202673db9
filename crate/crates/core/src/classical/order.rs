use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cf::{cf_expand, Convergent};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleSource {
    FormulaSampled,
    OracleSampled,
    Injected,
}

/// One measured outcome `j` of period finding, `0 ≤ j < 2^(2L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpfSample {
    pub j: BigUint,
    pub source: SampleSource,
}

impl QpfSample {
    pub fn injected(j: impl Into<BigUint>) -> Self {
        QpfSample { j: j.into(), source: SampleSource::Injected }
    }
}

/// Incremental order recovery from a stream of outcomes.
///
/// Each outcome contributes the convergents of `j / 2^(2L)` whose denominator is
/// below `2^L`. A denominator `d` is accepted when `m^d ≡ 1 (mod N)`; failing
/// that, every pair of collected convergents with coprime numerators is tried
/// through `lcm(d, d')`.
#[derive(Debug, Clone)]
pub struct OrderFinder {
    m: BigUint,
    n: BigUint,
    l: u32,
    pool: Vec<Convergent>,
    best: Option<BigUint>,
}

impl OrderFinder {
    pub fn new(m: &BigUint, n: &BigUint, l: u32) -> Result<Self> {
        if n.is_zero() || m.gcd(n) != BigUint::one() {
            return Err(Error::NotCoprime);
        }
        Ok(OrderFinder { m: m.clone(), n: n.clone(), l, pool: Vec::new(), best: None })
    }

    fn verifies(&self, d: &BigUint) -> bool {
        !d.is_zero() && self.m.modpow(d, &self.n).is_one()
    }

    fn offer(&mut self, d: BigUint) {
        if self.best.as_ref().is_some_and(|b| *b <= d) {
            return;
        }
        if self.verifies(&d) {
            self.best = Some(d);
        }
    }

    /// Smallest verified order so far.
    pub fn order(&self) -> Option<&BigUint> {
        self.best.as_ref()
    }

    /// Convergents collected so far.
    pub fn pool(&self) -> &[Convergent] {
        &self.pool
    }

    /// Adds one outcome; returns the smallest verified order so far.
    pub fn push(&mut self, sample: &QpfSample) -> Result<Option<BigUint>> {
        let dim = BigUint::one() << (2 * self.l as usize);
        let limit = BigUint::one() << (self.l as usize);
        let cf = cf_expand(&sample.j, &dim)?;
        let fresh: Vec<Convergent> =
            cf.convergents.into_iter().filter(|c| c.denominator < limit && !c.numerator.is_zero()).collect();

        // the largest denominator below 2^L is the likeliest hit
        if let Some(last) = fresh.last() {
            self.offer(last.denominator.clone());
        }
        for c in &fresh {
            self.offer(c.denominator.clone());
        }

        let start = self.pool.len();
        for c in fresh {
            if !self.pool.contains(&c) {
                self.pool.push(c);
            }
        }
        for i in start..self.pool.len() {
            for k in 0..i {
                let (a, b) = (&self.pool[i], &self.pool[k]);
                if a.numerator.gcd(&b.numerator).is_one() {
                    let l = a.denominator.lcm(&b.denominator);
                    if l < self.n {
                        self.offer(l);
                    }
                }
            }
        }
        Ok(self.best.clone())
    }
}

/// Recovers the order of `m` modulo `n` from outcomes of a `2L`-qubit register.
pub fn find_order(m: &BigUint, n: &BigUint, l: u32, samples: &[QpfSample]) -> Result<Option<BigUint>> {
    let mut finder = OrderFinder::new(m, n, l)?;
    for s in samples {
        finder.push(s)?;
    }
    Ok(finder.order().cloned())
}
