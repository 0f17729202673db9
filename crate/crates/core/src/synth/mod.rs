//! Search for short fault-tolerant gate words approximating a target unitary.
//!
//! Candidates are ranked by distance to the target (quantised to `1e−12`), then
//! by length, then by serialised word, which makes every result independent of
//! enumeration order.

mod enumerate;
mod grid;

use alloc::vec::Vec;
use core::cmp::Ordering;

pub use enumerate::{for_each_word, words_up_to, Alphabet};
pub use grid::QuaternionGrid;

use crate::error::{Error, Result};
use crate::su2::{dist, quaternion_dist, rotation, Gate, GateWord, RotationTarget, Unitary2};
use enumerate::LABEL_ORDER;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Strategy {
    #[default]
    Exhaustive,
    MeetInMiddle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub target: Unitary2,
    pub max_length: usize,
    pub strategy: Strategy,
    pub alphabet: Alphabet,
    /// Stop after the first length that reaches this distance.
    pub epsilon: f64,
    /// Initial neighbour radius (distance units) for meet-in-the-middle;
    /// `None` uses `max(epsilon / 4, 1e−3)`.
    pub resolution: Option<f64>,
}

impl SearchConfig {
    pub fn new(target: Unitary2, max_length: usize) -> Self {
        SearchConfig {
            target,
            max_length,
            strategy: Strategy::Exhaustive,
            alphabet: Alphabet::Full,
            epsilon: 1e-9,
            resolution: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_length == 0 {
            return Err(Error::Search("max_length must be at least 1"));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Search("epsilon must be in (0, 1)"));
        }
        if let Some(r) = self.resolution {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::Search("resolution must be positive"));
            }
        }
        if !self.target.is_unitary(1e-10) {
            return Err(Error::Search("target is not unitary"));
        }
        Ok(())
    }
}

/// A candidate word and its distance to the target.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub word: GateWord,
    pub distance: f64,
}

impl Candidate {
    fn identity(target: &Unitary2) -> Self {
        Candidate { word: GateWord::empty(), distance: baseline_distance(target) }
    }

    fn quantised(&self) -> i64 {
        libm::round(self.distance * 1e12) as i64
    }

    /// Total order used for every "best" decision.
    pub fn rank(&self, other: &Candidate) -> Ordering {
        self.quantised()
            .cmp(&other.quantised())
            .then(self.word.len().cmp(&other.word.len()))
            .then_with(|| label_cmp(self.word.gates(), other.word.gates()))
    }
}

fn label_cmp(a: &[Gate], b: &[Gate]) -> Ordering {
    a.iter().map(|g| g.label()).cmp(b.iter().map(|g| g.label()))
}

fn keep_best(best: &mut Candidate, challenger: Candidate) {
    if challenger.rank(best) == Ordering::Less {
        *best = challenger;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthResult {
    /// Best word found; empty when nothing beats the identity.
    pub word: GateWord,
    pub achieved: f64,
    /// Words (or meet-in-the-middle joins) examined.
    pub explored: u64,
    /// Shortest word strictly better than the identity (exhaustive only).
    pub first_improvement: Option<Candidate>,
    /// No word within the budget beats the identity.
    pub identity_optimal: bool,
    pub reached_epsilon: bool,
    /// Wall time in seconds; filled in by callers that have a clock.
    pub seconds: f64,
}

/// `dist(target, I)`.
pub fn baseline_distance(target: &Unitary2) -> f64 {
    dist(target, &Unitary2::IDENTITY)
}

/// Best word of exactly `length` gates starting with `prefix`, plus the count
/// of words visited. Partial results for different prefixes merge with
/// [`Candidate::rank`].
pub fn best_of_length(config: &SearchConfig, length: usize, prefix: &[Gate]) -> (Option<Candidate>, u64) {
    let target_q = config.target.quaternion();
    let mut best: Option<(f64, Vec<Gate>)> = None;
    let visited = for_each_word(config.alphabet, length, prefix, |w, u| {
        let d = quaternion_dist(&target_q, &u.quaternion());
        let q = libm::round(d * 1e12);
        // same length, lexicographic visiting order: only strict improvements count
        if best.as_ref().is_none_or(|(bd, _)| q < libm::round(bd * 1e12)) {
            best = Some((d, w.to_vec()));
        }
    });
    let best = best.map(|(_, w)| {
        let word = GateWord::new(w);
        let distance = dist(&config.target, &word.eval());
        Candidate { word, distance }
    });
    (best, visited)
}

fn finish(config: &SearchConfig, best: Candidate, explored: u64, first: Option<Candidate>) -> SynthResult {
    let baseline = baseline_distance(&config.target);
    let identity_optimal = best.word.is_empty() || best.distance >= baseline;
    SynthResult {
        reached_epsilon: best.distance <= config.epsilon,
        word: best.word,
        achieved: best.distance,
        explored,
        first_improvement: first,
        identity_optimal,
        seconds: 0.0,
    }
}

/// Exhaustive search over lengths `0..=max_length`, shortest first.
pub fn search_exhaustive(config: &SearchConfig) -> Result<SynthResult> {
    search_exhaustive_with(config, |len| best_of_length(config, len, &[]))
}

/// Exhaustive search with a caller-supplied per-length evaluator (used to fan
/// lengths out over worker threads).
pub fn search_exhaustive_with<F>(config: &SearchConfig, mut per_length: F) -> Result<SynthResult>
where
    F: FnMut(usize) -> (Option<Candidate>, u64),
{
    config.validate()?;
    let identity = Candidate::identity(&config.target);
    let mut best = identity.clone();
    let mut first = None;
    let mut explored = 1;
    for len in 1..=config.max_length {
        let (cand, visited) = per_length(len);
        explored += visited;
        if let Some(c) = cand {
            if first.is_none() && c.quantised() < identity.quantised() {
                first = Some(c.clone());
            }
            keep_best(&mut best, c);
        }
        if best.distance <= config.epsilon {
            break;
        }
    }
    Ok(finish(config, best, explored, first))
}

/// Merges per-prefix partial results of one length.
pub fn merge_candidates(parts: impl IntoIterator<Item = (Option<Candidate>, u64)>) -> (Option<Candidate>, u64) {
    let mut best: Option<Candidate> = None;
    let mut total = 0;
    for (c, n) in parts {
        total += n;
        if let Some(c) = c {
            match &mut best {
                Some(b) => keep_best(b, c),
                None => best = Some(c),
            }
        }
    }
    (best, total)
}

/// Single-gate prefixes that partition the words of one length.
pub fn prefixes(alphabet: Alphabet) -> Vec<Gate> {
    match alphabet {
        Alphabet::Full => LABEL_ORDER.to_vec(),
        Alphabet::AlternatingHT => alloc::vec![Gate::H, Gate::T, Gate::Tdg],
    }
}

/// Meet-in-the-middle: every word of length `≤ n` is `w₁ ++ w₂` with
/// `|w₁| ≤ ⌈n/2⌉` and `|w₂| ≤ ⌊n/2⌋`, and `dist(T, E(w₂)E(w₁)) = dist(T·E(w₁)†, E(w₂))`.
/// Second halves are indexed on a quaternion grid; each first half queries its
/// neighbourhood. The radius doubles until the best join lies inside it, so the
/// result is the optimum over all splits.
pub fn search_meet_in_middle(config: &SearchConfig) -> Result<SynthResult> {
    config.validate()?;
    let n = config.max_length;
    let first_len = n.div_ceil(2);
    let second_len = n / 2;
    let firsts = words_up_to(config.alphabet, first_len);
    let seconds = words_up_to(config.alphabet, second_len);
    let keys: Vec<[f64; 4]> = seconds.iter().map(|(_, u)| u.quaternion()).collect();
    let queries: Vec<[f64; 4]> = firsts.iter().map(|(_, u)| (config.target * u.adjoint()).quaternion()).collect();

    let identity = Candidate::identity(&config.target);
    let mut radius = config.resolution.unwrap_or((config.epsilon / 4.0).max(1e-3)).min(1.0);
    let mut explored = 0u64;
    loop {
        let euclid = core::f64::consts::SQRT_2 * radius;
        let grid = QuaternionGrid::new(keys.clone(), euclid);
        let mut best = identity.clone();
        for (qi, q) in queries.iter().enumerate() {
            grid.query(q, euclid, |si| {
                explored += 1;
                let d = quaternion_dist(q, grid.key(si));
                if libm::round(d * 1e12) > libm::round(best.distance * 1e12) {
                    return;
                }
                let joined = GateWord::new(firsts[qi].0.clone())
                    .concat(&GateWord::new(seconds[si as usize].0.clone()))
                    .canonical();
                let distance = dist(&config.target, &joined.eval());
                keep_best(&mut best, Candidate { word: joined, distance });
            });
        }
        if best.distance <= radius || radius >= 1.0 {
            return Ok(finish(config, best, explored, None));
        }
        radius = (radius * 2.0).min(1.0);
    }
}

pub fn search(config: &SearchConfig) -> Result<SynthResult> {
    match config.strategy {
        Strategy::Exhaustive => search_exhaustive(config),
        Strategy::MeetInMiddle => search_meet_in_middle(config),
    }
}

/// One row of the gate-count table: shortest word reaching `2^(−d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateCountRow {
    pub d: u32,
    pub epsilon: f64,
    /// Length of the word found, or `None` when the budget ran out.
    pub length: Option<usize>,
    pub word: Option<GateWord>,
    pub achieved: f64,
    /// `true` when the length is the proven minimum over the full alphabet;
    /// `false` when it came from the alternating fallback (an upper bound).
    pub exact: bool,
    /// Lengths searched without success; a lower bound on the minimum.
    pub searched_up_to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateCountBudget {
    pub full_max_length: usize,
    pub alternating_max_length: usize,
}

impl Default for GateCountBudget {
    fn default() -> Self {
        GateCountBudget { full_max_length: 9, alternating_max_length: 40 }
    }
}

/// Shortest words approximating `R_{2^d}` to within `2^(−d)` for each `d`.
///
/// The full alphabet is searched exhaustively up to `full_max_length`; if that
/// fails, alternating `H`/`T^{±1}` words continue up to `alternating_max_length`.
pub fn gate_count_scaling_report(ds: impl IntoIterator<Item = u32>, budget: GateCountBudget) -> Result<Vec<GateCountRow>> {
    let mut rows = Vec::new();
    for d in ds {
        let target = rotation(RotationTarget::new(d));
        let epsilon = libm::ldexp(1.0, -(d as i32));
        let mut row = GateCountRow { d, epsilon, length: None, word: None, achieved: 1.0, exact: false, searched_up_to: 0 };
        let base = baseline_distance(&target);
        if base <= epsilon {
            row.length = Some(0);
            row.word = Some(GateWord::empty());
            row.achieved = base;
            row.exact = true;
            rows.push(row);
            continue;
        }
        let mut cfg = SearchConfig::new(target, budget.full_max_length.max(1));
        cfg.epsilon = epsilon.min(0.999_999);
        let full = search_exhaustive(&cfg)?;
        if full.achieved <= epsilon {
            row.length = Some(full.word.len());
            row.word = Some(full.word);
            row.achieved = full.achieved;
            row.exact = true;
        } else {
            row.searched_up_to = budget.full_max_length;
            row.achieved = full.achieved;
            cfg.alphabet = Alphabet::AlternatingHT;
            for len in budget.full_max_length + 1..=budget.alternating_max_length {
                let (cand, _) = best_of_length(&cfg, len, &[]);
                if let Some(c) = cand {
                    if c.distance <= epsilon {
                        row.length = Some(len);
                        row.achieved = c.distance;
                        row.word = Some(c.word);
                        break;
                    }
                    row.achieved = row.achieved.min(c.distance);
                }
            }
            if row.length.is_none() {
                row.searched_up_to = budget.alternating_max_length;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{Gate, U31};
    use alloc::string::ToString;

    fn r(d: u32) -> Unitary2 {
        rotation(RotationTarget::new(d))
    }

    #[test]
    fn generator_hit() {
        let cfg = SearchConfig::new(Gate::S.matrix(), 1);
        let res = search(&cfg).unwrap();
        assert_eq!(res.word.to_string(), "S");
        assert!(res.achieved < 1e-15);
        assert!(res.reached_epsilon && !res.identity_optimal);
    }

    #[test]
    fn identity_target_is_optimal() {
        let cfg = SearchConfig::new(Unitary2::IDENTITY, 3);
        let res = search(&cfg).unwrap();
        assert!(res.word.is_empty() && res.identity_optimal);
        assert_eq!(baseline_distance(&Unitary2::IDENTITY), 0.0);
    }

    #[test]
    fn r128_short_budget_identity_optimal() {
        // nothing short beats the identity for R_128
        let mut cfg = SearchConfig::new(r(7), 6);
        cfg.alphabet = Alphabet::AlternatingHT;
        let res = search(&cfg).unwrap();
        assert!(res.identity_optimal);
        assert!(res.first_improvement.is_none());
        assert!((res.achieved - baseline_distance(&r(7))).abs() < 1e-15);
    }

    #[test]
    fn meet_in_middle_matches_exhaustive() {
        for (alphabet, lengths) in [(Alphabet::AlternatingHT, 1..=14usize), (Alphabet::Full, 1..=6usize)] {
            for len in lengths {
                for d in [3u32, 4, 7] {
                    let mut cfg = SearchConfig::new(r(d), len);
                    cfg.alphabet = alphabet;
                    let ex = search_exhaustive(&cfg).unwrap();
                    cfg.strategy = Strategy::MeetInMiddle;
                    let mitm = search_meet_in_middle(&cfg).unwrap();
                    assert!(
                        mitm.achieved <= ex.achieved + 1e-12,
                        "{alphabet:?} len={len} d={d}: {} vs {}",
                        mitm.achieved,
                        ex.achieved
                    );
                }
            }
        }
    }

    #[test]
    fn invalid_configs() {
        let mut cfg = SearchConfig::new(r(3), 0);
        assert!(search(&cfg).is_err());
        cfg.max_length = 2;
        cfg.epsilon = 1.0;
        assert!(search(&cfg).is_err());
    }

    #[test]
    fn rank_breaks_ties_by_length_then_label() {
        let a = Candidate { word: "HT".parse().unwrap(), distance: 0.1 };
        let b = Candidate { word: "S".parse().unwrap(), distance: 0.1 + 1e-14 };
        assert_eq!(b.rank(&a), Ordering::Less);
        let c = Candidate { word: "HS".parse().unwrap(), distance: 0.1 };
        assert_eq!(c.rank(&a), Ordering::Less);
        let _ = U31;
    }
}
