use core::f64::consts::TAU;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Which bit pairs `(m, n)` of `(j, k)` keep their phase `2^(m+n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BoundVariant {
    /// `2L − 1 − d_max ≤ m + n < 2L`: every Hadamard is kept and `d_max` is the
    /// largest `d` of a kept controlled `π/2^d` rotation.
    #[default]
    Physical,
    /// `2L − d_max + 1 ≤ m + n < 2L`, the bound exactly as printed. Equals
    /// `Physical` at `d_max − 2`; below `d_max = 2` it drops Hadamard phases and
    /// is no longer a unitary transform.
    PaperLiteral,
}

impl BoundVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundVariant::Physical => "physical",
            BoundVariant::PaperLiteral => "literal",
        }
    }
}

impl fmt::Display for BoundVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "physical" => Ok(BoundVariant::Physical),
            "literal" | "paper_literal" | "paper-literal" => Ok(BoundVariant::PaperLiteral),
            _ => Err(Error::Domain("variant must be physical or literal")),
        }
    }
}

/// Parameters of an approximate QFT on a `2L`-qubit register.
///
/// Bit `m` of an integer `x`, written `[x]_m`, is the coefficient of `2^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AqftSpec {
    l: u32,
    d_max: u32,
    variant: BoundVariant,
}

impl AqftSpec {
    pub const MAX_L: u32 = 32;

    pub fn new(l: u32, d_max: u32, variant: BoundVariant) -> Result<Self> {
        if !(2..=Self::MAX_L).contains(&l) {
            return Err(Error::RegisterSize(l));
        }
        if d_max > 2 * l + 1 {
            return Err(Error::Cutoff { l, d_max, max: 2 * l + 1 });
        }
        Ok(AqftSpec { l, d_max, variant })
    }

    pub fn physical(l: u32, d_max: u32) -> Result<Self> {
        Self::new(l, d_max, BoundVariant::Physical)
    }

    /// Full-depth transform, equal to the exact QFT.
    pub fn exact(l: u32) -> Result<Self> {
        Self::physical(l, 2 * l)
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn d_max(&self) -> u32 {
        self.d_max
    }

    pub fn variant(&self) -> BoundVariant {
        self.variant
    }

    /// Register width `2L`.
    pub fn bits(&self) -> u32 {
        2 * self.l
    }

    pub fn dimension(&self) -> u64 {
        1u64 << self.bits()
    }

    /// Smallest kept value of `m + n`.
    pub fn lower_bound(&self) -> i64 {
        let bits = i64::from(self.bits());
        let d = i64::from(self.d_max);
        match self.variant {
            BoundVariant::Physical => bits - 1 - d,
            BoundVariant::PaperLiteral => bits - d + 1,
        }
    }

    pub fn keeps(&self, m: u32, n: u32) -> bool {
        let s = i64::from(m + n);
        s >= self.lower_bound() && s < i64::from(self.bits())
    }

    /// Kept pairs that come from controlled rotations (`m + n ≤ 2L − 2`).
    pub fn is_controlled_pair(&self, m: u32, n: u32) -> bool {
        self.keeps(m, n) && m + n + 2 <= self.bits()
    }

    pub(crate) fn mask(&self) -> u64 {
        if self.bits() == 64 {
            u64::MAX
        } else {
            (1u64 << self.bits()) - 1
        }
    }

    pub(crate) fn check_outcome(&self, value: u64) -> Result<()> {
        if value & !self.mask() != 0 {
            return Err(Error::Outcome { value, bits: self.bits() });
        }
        Ok(())
    }

    /// The literal bound with `d_max < 2` drops the Hadamard terms as well, so
    /// the result is no longer a transform and its "probabilities" can exceed 1.
    pub fn check_realisable(&self) -> Result<()> {
        if self.variant == BoundVariant::PaperLiteral && self.d_max < 2 {
            return Err(Error::Unrealisable("literal bound with d_max < 2 removes Hadamards"));
        }
        Ok(())
    }

    pub(crate) fn check_period(&self, r: u64) -> Result<()> {
        if r < 2 || r >= 1u64 << self.l {
            return Err(Error::Period { r, l: self.l });
        }
        Ok(())
    }

    /// Phase index `Σ̃ [j]_m [k]_n 2^(m+n) mod 2^(2L)`, evaluated pair by pair.
    pub fn phase_units(&self, j: u64, k: u64) -> u64 {
        let mut acc = 0u64;
        for m in 0..self.bits() {
            if (j >> m) & 1 == 0 {
                continue;
            }
            for n in 0..self.bits() {
                if (k >> n) & 1 == 1 && self.keeps(m, n) {
                    acc = acc.wrapping_add(1u64 << (m + n));
                }
            }
        }
        acc & self.mask()
    }

    /// Converts a phase index to radians in `[0, 2π)`.
    pub fn units_to_radians(&self, units: u64) -> f64 {
        TAU * libm::ldexp(units as f64, -(self.bits() as i32))
    }
}

/// AQFT phase of `|k⟩ → |j⟩` in radians, reduced to `[0, 2π)`.
pub fn aqft_phase(j: u64, k: u64, spec: &AqftSpec) -> Result<f64> {
    spec.check_outcome(j)?;
    spec.check_outcome(k)?;
    Ok(spec.units_to_radians(spec.phase_units(j, k)))
}
