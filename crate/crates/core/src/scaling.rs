//! Exponential decay of `s` with integer length and the resulting bound on the
//! factorable length.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::qpf::characteristic_period;

/// `s` at the characteristic period `2^(L−1) + 2` for one `(L, d_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub l: u32,
    pub d_max: u32,
    pub r: u64,
    pub s: f64,
    pub seconds: f64,
}

impl ScalingPoint {
    pub fn new(l: u32, d_max: u32, s: f64, seconds: f64) -> Self {
        ScalingPoint { l, d_max, r: characteristic_period(l), s, seconds }
    }
}

/// Least-squares fit of `log₂ s = log₂ c − L / t` over a tail window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit {
    pub d_max: u32,
    /// Decay constant; infinite when the window shows no decay.
    pub t: f64,
    /// Constant of proportionality `c`.
    pub c: f64,
    /// RMS residual of `log₂ s`.
    pub rms: f64,
    /// Smallest and largest `L` in the window.
    pub window: (u32, u32),
}

impl ScalingFit {
    pub fn predict(&self, l: u32) -> f64 {
        self.c * libm::exp2(-f64::from(l) / self.t)
    }
}

pub const MIN_FIT_POINTS: usize = 4;
pub const DEFAULT_TAIL_FRACTION: f64 = 0.5;

/// Fits the largest `⌈tail_fraction · n⌉` values of `L` among `points`, which
/// must all share one `d_max`.
pub fn fit_decay(points: &[ScalingPoint], tail_fraction: f64) -> Result<ScalingFit> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::Domain("tail fraction must be in (0, 1]"));
    }
    let Some(first) = points.first() else {
        return Err(Error::FitPoints { needed: MIN_FIT_POINTS, got: 0 });
    };
    if points.iter().any(|p| p.d_max != first.d_max) {
        return Err(Error::Domain("fit points must share one d_max"));
    }
    let mut sorted: Vec<ScalingPoint> = points.to_vec();
    sorted.sort_by_key(|p| p.l);
    let take = libm::ceil(tail_fraction * sorted.len() as f64) as usize;
    let window = &sorted[sorted.len() - take.min(sorted.len())..];
    if window.len() < MIN_FIT_POINTS {
        return Err(Error::FitPoints { needed: MIN_FIT_POINTS, got: window.len() });
    }
    if let Some(bad) = window.iter().find(|p| p.s.is_nan() || p.s <= 0.0) {
        return Err(Error::FitNonPositive { l: bad.l, s: bad.s });
    }

    let n = window.len() as f64;
    let xs: Vec<f64> = window.iter().map(|p| f64::from(p.l)).collect();
    let ys: Vec<f64> = window.iter().map(|p| libm::log2(p.s)).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rms = libm::sqrt(
        xs.iter().zip(&ys).map(|(x, y)| { let e = y - intercept - slope * x; e * e }).sum::<f64>() / n,
    );
    let t = if slope < 0.0 { -1.0 / slope } else { f64::INFINITY };
    Ok(ScalingFit {
        d_max: first.d_max,
        t,
        c: libm::exp2(intercept),
        rms,
        window: (window[0].l, window[window.len() - 1].l),
    })
}

/// `t(d+1) / t(d)` for one consecutive pair of cutoffs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub d_max: u32,
    pub t_lower: f64,
    pub t_upper: f64,
    pub ratio: f64,
    pub pass: bool,
}

/// Ratios of decay constants below which growth counts as slower than ×4.
pub const FACTOR4_THRESHOLD: f64 = 3.5;

/// Ratios `t(d+1)/t(d)` over consecutive `d_max ≥ 1`; `d_max = 0` is ignored.
pub fn factor4_check(fits: &[ScalingFit]) -> Result<Vec<RatioRow>> {
    let mut fits: Vec<&ScalingFit> = fits.iter().filter(|f| f.d_max >= 1).collect();
    fits.sort_by_key(|f| f.d_max);
    if fits.len() < 2 {
        return Err(Error::MissingFits);
    }
    fits.windows(2)
        .map(|w| {
            if w[1].d_max != w[0].d_max + 1 {
                return Err(Error::MissingFits);
            }
            let ratio = w[1].t / w[0].t;
            Ok(RatioRow {
                d_max: w[0].d_max,
                t_lower: w[0].t,
                t_upper: w[1].t,
                ratio,
                pass: ratio >= FACTOR4_THRESHOLD,
            })
        })
        .collect()
}

fn check_fmax(f_max: f64) -> Result<()> {
    if !(f_max > 1.0 && f_max.is_finite()) {
        return Err(Error::Domain("f_max must be finite and greater than 1"));
    }
    Ok(())
}

/// `L_max = ⌊4^(d_max−1) · log₂ f_max⌋`.
pub fn lmax(d_max: u32, f_max: f64) -> Result<u64> {
    check_fmax(f_max)?;
    if d_max == 0 {
        return Err(Error::Domain("d_max must be at least 1"));
    }
    if d_max > 32 {
        return Err(Error::Domain("d_max too large"));
    }
    let scale = libm::ldexp(1.0, 2 * (d_max as i32 - 1));
    Ok(libm::floor(scale * libm::log2(f_max)) as u64)
}

/// Smallest `d_max ≥ 1` whose `L_max` reaches `l`.
pub fn invert_lmax(l: u64, f_max: f64) -> Result<u32> {
    check_fmax(f_max)?;
    for d in 1..=32 {
        if lmax(d, f_max)? >= l {
            return Ok(d);
        }
    }
    Err(Error::Domain("no d_max up to 32 reaches L"))
}
