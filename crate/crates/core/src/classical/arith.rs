//! Arbitrary-precision helpers for the classical pre- and postprocessing.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand_core::RngCore;

/// Miller–Rabin with the first twelve prime bases; deterministic below 3.3·10^24.
pub fn is_probable_prime(n: &BigUint) -> bool {
    const BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for b in BASES {
        let b = BigUint::from(b);
        if *n == b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for b in BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// `(b, k)` with `b^k = n` and `k ≥ 2` maximal, if `n` is a perfect power.
pub fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    if *n < BigUint::from(4u32) {
        return None;
    }
    let bits = n.bits() as u32;
    for k in (2..=bits).rev() {
        let b = n.nth_root(k);
        if b > BigUint::one() && num_traits::pow::pow(b.clone(), k as usize) == *n {
            return Some((b, k));
        }
    }
    None
}

/// Uniform integer in `[low, high)` by rejection on the bit length.
pub fn random_in_range<R: RngCore>(rng: &mut R, low: &BigUint, high: &BigUint) -> BigUint {
    assert!(low < high);
    let span = high - low;
    let bits = span.bits();
    let words = bits.div_ceil(32) as usize;
    let top_mask = if bits.is_multiple_of(32) { u32::MAX } else { (1u32 << (bits % 32)) - 1 };
    loop {
        let mut digits: alloc::vec::Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(last) = digits.last_mut() {
            *last &= top_mask;
        }
        let v = BigUint::new(digits);
        if v < span {
            return low + v;
        }
    }
}

pub fn lcm(a: &BigUint, b: &BigUint) -> BigUint {
    a.lcm(b)
}
