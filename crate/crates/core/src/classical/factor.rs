use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::arith::{is_probable_prime, perfect_power, random_in_range};
use super::order::OrderFinder;
use super::sampler::OutcomeSource;
use crate::error::{Error, Result};
use crate::rng;

/// An odd composite `N` that is not a prime power, with its bit length `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoringInstance {
    n: BigUint,
    l: u32,
}

/// How a factor was obtained before any period finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassicalShortcut {
    Even,
    PerfectPower,
}

impl FactoringInstance {
    /// Rejects `N` that is small, even, prime or a perfect power; the even and
    /// perfect-power cases are split by [`classical_split`] instead.
    pub fn new(n: BigUint) -> Result<Self> {
        if n < BigUint::from(15u32) {
            return Err(Error::Instance(format!("N={n} is too small")));
        }
        if n.is_even() {
            return Err(Error::Instance(format!("N={n} is even")));
        }
        if is_probable_prime(&n) {
            return Err(Error::Instance(format!("N={n} is prime")));
        }
        if perfect_power(&n).is_some() {
            return Err(Error::Instance(format!("N={n} is a perfect power")));
        }
        let l = n.bits() as u32;
        Ok(FactoringInstance { n, l })
    }

    pub fn n(&self) -> &BigUint {
        &self.n
    }

    /// Minimal bit length: `2^(L−1) ≤ N < 2^L`.
    pub fn l(&self) -> u32 {
        self.l
    }
}

/// Splits `N` without period finding when it is even or a perfect power.
pub fn classical_split(n: &BigUint) -> Option<(ClassicalShortcut, BigUint, BigUint)> {
    let two = BigUint::from(2u32);
    if n.is_even() && *n > two {
        return Some((ClassicalShortcut::Even, two.clone(), n / &two));
    }
    perfect_power(n).map(|(b, _)| {
        let rest = n / &b;
        (ClassicalShortcut::PerfectPower, b, rest)
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total number of period-finding runs allowed across all bases (`f_max`).
    pub budget: u64,
    pub seed: u64,
    /// Base for the first attempt; later attempts draw a random base.
    pub base: Option<BigUint>,
    pub max_attempts: u32,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { budget: 100, seed: 0, base: None, max_attempts: 10 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AttemptOutcome {
    /// `gcd(m, N) > 1` gave a factor directly.
    SharedFactor,
    OddOrder,
    /// `m^(r/2) ≡ ±1 (mod N)`.
    TrivialSquareRoot,
    BudgetExhausted,
    Factored,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub m: BigUint,
    pub samples: u64,
    pub order: Option<BigUint>,
    pub outcome: AttemptOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub n: BigUint,
    pub attempts: Vec<Attempt>,
    pub samples_used: u64,
    /// Order of the base that produced the factors.
    pub order: Option<BigUint>,
    /// `(N_1, N_2)` with `N_1 ≤ N_2` and `N_1·N_2 = N`.
    pub factors: Option<(BigUint, BigUint)>,
}

impl FactorReport {
    pub fn succeeded(&self) -> bool {
        self.factors.is_some()
    }
}

fn ordered(a: BigUint, b: BigUint) -> (BigUint, BigUint) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Shor's algorithm with classical pre- and postprocessing.
///
/// Per attempt: choose `m`, take the `gcd(m, N)` shortcut if it applies,
/// otherwise draw outcomes until the order `r` of `m` is recovered. Odd `r` or
/// `m^(r/2) ≡ ±1` rejects the base; otherwise `gcd(m^(r/2) − 1, N)` is a
/// nontrivial factor. The sample budget is shared by all attempts.
pub fn shor_factor(
    instance: &FactoringInstance,
    sampler: &mut dyn OutcomeSource,
    config: &FactorConfig,
) -> Result<FactorReport> {
    let n = instance.n();
    let l = instance.l();
    let mut rng = rng::driver(config.seed);
    let mut report =
        FactorReport { n: n.clone(), attempts: Vec::new(), samples_used: 0, order: None, factors: None };
    let two = BigUint::from(2u32);
    let n_minus_1 = n - 1u32;

    for attempt in 0..config.max_attempts {
        let m = match (&config.base, attempt) {
            (Some(m), 0) => {
                if *m < two || m >= n {
                    return Err(Error::Instance(format!("base m={m} must satisfy 1 < m < N")));
                }
                m.clone()
            }
            _ => random_in_range(&mut rng, &two, n),
        };
        let g = m.gcd(n);
        if !g.is_one() {
            let other = n / &g;
            report.attempts.push(Attempt { m, samples: 0, order: None, outcome: AttemptOutcome::SharedFactor });
            report.factors = Some(ordered(g, other));
            return Ok(report);
        }

        let mut finder = OrderFinder::new(&m, n, l)?;
        let mut used = 0u64;
        let mut order = None;
        while report.samples_used < config.budget {
            let sample = sampler.sample(n, l, &m, &mut rng)?;
            report.samples_used += 1;
            used += 1;
            if let Some(r) = finder.push(&sample)? {
                order = Some(r);
                break;
            }
        }
        let Some(r) = order else {
            report.attempts.push(Attempt { m, samples: used, order: None, outcome: AttemptOutcome::BudgetExhausted });
            return Ok(report);
        };

        if r.is_odd() {
            report.attempts.push(Attempt { m, samples: used, order: Some(r), outcome: AttemptOutcome::OddOrder });
            continue;
        }
        let y = m.modpow(&(&r >> 1u32), n);
        if y.is_one() || y == n_minus_1 {
            report.attempts.push(Attempt {
                m,
                samples: used,
                order: Some(r),
                outcome: AttemptOutcome::TrivialSquareRoot,
            });
            continue;
        }
        let g = (&y - 1u32).gcd(n);
        debug_assert!(!g.is_one() && g != *n && !g.is_zero());
        let other = n / &g;
        report.attempts.push(Attempt { m, samples: used, order: Some(r.clone()), outcome: AttemptOutcome::Factored });
        report.order = Some(r);
        report.factors = Some(ordered(g, other));
        return Ok(report);
    }
    Ok(report)
}
