use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A reduced fraction `numerator / denominator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Convergent {
    pub numerator: BigUint,
    pub denominator: BigUint,
}

/// Continued fraction `1/(a_1 + 1/(a_2 + …))` of a proper fraction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CfExpansion {
    /// Partial quotients `a_1, a_2, …` (the leading zero is implicit).
    pub quotients: Vec<BigUint>,
    /// `convergents[n]` is the fraction formed by the first `n + 1` quotients.
    pub convergents: Vec<Convergent>,
}

impl CfExpansion {
    /// Evaluates the quotient list back into a reduced fraction, bottom up.
    pub fn recombine(&self) -> Convergent {
        // value = 0 + 1/(a1 + 1/(a2 + ...)); evaluate t_n = a_n, t_i = a_i + 1/t_{i+1}
        let mut num = BigUint::zero();
        let mut den = BigUint::one();
        for a in self.quotients.iter().rev() {
            // 1 / (a + num/den) = den / (a*den + num)
            let next_den = a * &den + &num;
            num = den;
            den = next_den;
        }
        Convergent { numerator: num, denominator: den }
    }
}

/// Exact continued-fraction expansion of `numerator / denominator` in `[0, 1)`.
pub fn cf_expand(numerator: &BigUint, denominator: &BigUint) -> Result<CfExpansion> {
    if denominator.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    if numerator >= denominator {
        return Err(Error::ImproperFraction);
    }
    let mut out = CfExpansion::default();
    let (mut num, mut den) = (numerator.clone(), denominator.clone());
    // h_{n} = a_n h_{n-1} + h_{n-2}, seeded with the implicit a_0 = 0
    let (mut h_prev, mut h) = (BigUint::one(), BigUint::zero());
    let (mut k_prev, mut k) = (BigUint::zero(), BigUint::one());
    while !num.is_zero() {
        let a = &den / &num;
        let rem = &den % &num;
        den = core::mem::replace(&mut num, rem);

        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = core::mem::replace(&mut h, h_next);
        k_prev = core::mem::replace(&mut k, k_next);
        out.convergents.push(Convergent { numerator: h.clone(), denominator: k.clone() });
        out.quotients.push(a);
    }
    Ok(out)
}

pub fn cf_expand_u64(numerator: u64, denominator: u64) -> Result<CfExpansion> {
    cf_expand(&BigUint::from(numerator), &BigUint::from(denominator))
}
