//! CSV and JSON layouts.
//!
//! Floats are written with Rust's shortest round-trip formatting, so parsing a
//! file back yields the exact bits that were written.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use qpf_core::classical::{AttemptOutcome, FactorReport};
use qpf_core::qpf::{AqftSpec, BoundVariant, Distribution};
use qpf_core::scaling::{ScalingFit, ScalingPoint};
use qpf_core::synth::{GateCountRow, SynthResult};

use crate::error::{AppError, AppResult};
use crate::parallel::SweepOutcome;

/// Provenance carried by the `#` line of a distribution file.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistributionMeta {
    pub sigma: f64,
    pub trials: u32,
    pub seed: u64,
}

pub fn write_distribution_csv(w: &mut dyn Write, dist: &Distribution, meta: &DistributionMeta) -> std::io::Result<()> {
    let spec = &dist.spec;
    writeln!(
        w,
        "# L={} r={} d_max={} variant={} sigma={} trials={} seed={}",
        spec.l(),
        dist.r,
        spec.d_max(),
        spec.variant(),
        meta.sigma,
        meta.trials,
        meta.seed
    )?;
    writeln!(w, "j,probability")?;
    for (j, p) in dist.probabilities.iter().enumerate() {
        writeln!(w, "{j},{p}")?;
    }
    Ok(())
}

fn meta_field<'a>(fields: &BTreeMap<&str, &'a str>, key: &str) -> AppResult<&'a str> {
    fields.get(key).copied().ok_or_else(|| AppError::Format(format!("metadata line lacks {key}")))
}

fn parse_field<T: std::str::FromStr>(fields: &BTreeMap<&str, &str>, key: &str) -> AppResult<T> {
    meta_field(fields, key)?.parse().map_err(|_| AppError::Format(format!("bad value for {key}")))
}

/// Reads a file written by [`write_distribution_csv`].
pub fn read_distribution_csv(r: &mut dyn BufRead) -> AppResult<(Distribution, DistributionMeta)> {
    let mut text = String::new();
    r.read_to_string(&mut text).map_err(|e| AppError::Format(e.to_string()))?;
    let mut lines = text.lines();
    let meta_line = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| AppError::Format("missing # metadata line".into()))?;
    let fields: BTreeMap<&str, &str> = meta_line.split_whitespace().filter_map(|kv| kv.split_once('=')).collect();
    let variant: BoundVariant = meta_field(&fields, "variant")?.parse()?;
    let spec = AqftSpec::new(parse_field(&fields, "L")?, parse_field(&fields, "d_max")?, variant)?;
    let meta = DistributionMeta {
        sigma: parse_field(&fields, "sigma")?,
        trials: parse_field(&fields, "trials")?,
        seed: parse_field(&fields, "seed")?,
    };
    if lines.next() != Some("j,probability") {
        return Err(AppError::Format("expected header j,probability".into()));
    }
    let mut probabilities = Vec::with_capacity(spec.dimension() as usize);
    for (i, line) in lines.enumerate() {
        let (j, p) = line.split_once(',').ok_or_else(|| AppError::Format(format!("bad row: {line}")))?;
        if j.parse::<usize>().ok() != Some(i) {
            return Err(AppError::Format(format!("row {i} has j={j}")));
        }
        probabilities.push(p.parse().map_err(|_| AppError::Format(format!("bad probability: {p}")))?);
    }
    if probabilities.len() as u64 != spec.dimension() {
        return Err(AppError::Format(format!("expected {} rows, got {}", spec.dimension(), probabilities.len())));
    }
    Ok((Distribution { spec, r: parse_field(&fields, "r")?, probabilities }, meta))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct SweepRecord {
    #[serde(rename = "L")]
    l: u32,
    d_max: u32,
    r: u64,
    s: f64,
    seconds: f64,
}

/// `L,d_max,r,s,seconds`; timed-out points follow as `# timeout` comments.
pub fn write_sweep_csv(w: &mut dyn Write, outcomes: &[SweepOutcome]) -> std::io::Result<()> {
    writeln!(w, "L,d_max,r,s,seconds")?;
    for p in outcomes.iter().filter_map(SweepOutcome::point) {
        writeln!(w, "{},{},{},{},{}", p.l, p.d_max, p.r, p.s, p.seconds)?;
    }
    for o in outcomes {
        if let SweepOutcome::TimedOut { l, d_max } = o {
            writeln!(w, "# timeout L={l} d_max={d_max}")?;
        }
    }
    Ok(())
}

pub fn read_sweep_csv(r: impl std::io::Read) -> AppResult<Vec<ScalingPoint>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
    let mut out = Vec::new();
    for rec in reader.deserialize() {
        let rec: SweepRecord = rec?;
        out.push(ScalingPoint { l: rec.l, d_max: rec.d_max, r: rec.r, s: rec.s, seconds: rec.seconds });
    }
    Ok(out)
}

/// Fit record; `t` is `null` when the window shows no decay.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub d_max: u32,
    pub t: Option<f64>,
    pub c: f64,
    pub rms: f64,
    pub window: [u32; 2],
}

impl From<&ScalingFit> for FitRecord {
    fn from(f: &ScalingFit) -> Self {
        FitRecord {
            d_max: f.d_max,
            t: f.t.is_finite().then_some(f.t),
            c: f.c,
            rms: f.rms,
            window: [f.window.0, f.window.1],
        }
    }
}

impl From<&FitRecord> for ScalingFit {
    fn from(f: &FitRecord) -> Self {
        ScalingFit {
            d_max: f.d_max,
            t: f.t.unwrap_or(f64::INFINITY),
            c: f.c,
            rms: f.rms,
            window: (f.window[0], f.window[1]),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub word: String,
    pub length: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthRecord {
    pub d: u32,
    pub strategy: String,
    pub alphabet: String,
    pub max_length: usize,
    pub epsilon: f64,
    pub word: String,
    pub length: usize,
    pub achieved: f64,
    pub baseline: f64,
    pub explored: u64,
    pub identity_optimal: bool,
    pub reached_epsilon: bool,
    pub first_improvement: Option<CandidateRecord>,
    pub seconds: f64,
}

impl SynthRecord {
    pub fn new(d: u32, strategy: &str, alphabet: &str, max_length: usize, epsilon: f64, res: &SynthResult, baseline: f64) -> Self {
        SynthRecord {
            d,
            strategy: strategy.to_owned(),
            alphabet: alphabet.to_owned(),
            max_length,
            epsilon,
            word: res.word.to_string(),
            length: res.word.len(),
            achieved: res.achieved,
            baseline,
            explored: res.explored,
            identity_optimal: res.identity_optimal,
            reached_epsilon: res.reached_epsilon,
            first_improvement: res.first_improvement.as_ref().map(|c| CandidateRecord {
                word: c.word.to_string(),
                length: c.word.len(),
                distance: c.distance,
            }),
            seconds: res.seconds,
        }
    }
}

/// A gate-count row; `bound` is `exact`, `upper` (alternating fallback) or
/// `lower` (nothing found; `length` is the searched depth).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateCountRecord {
    pub d: u32,
    pub epsilon: f64,
    pub length: usize,
    pub bound: String,
    pub word: Option<String>,
    pub achieved: f64,
}

impl From<&GateCountRow> for GateCountRecord {
    fn from(r: &GateCountRow) -> Self {
        let (length, bound) = match (r.length, r.exact) {
            (Some(n), true) => (n, "exact"),
            (Some(n), false) => (n, "upper"),
            (None, _) => (r.searched_up_to + 1, "lower"),
        };
        GateCountRecord {
            d: r.d,
            epsilon: r.epsilon,
            length,
            bound: bound.to_owned(),
            word: r.word.as_ref().map(|w| w.to_string()),
            achieved: r.achieved,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttemptRecord {
    pub m: String,
    pub samples: u64,
    pub r: Option<String>,
    pub outcome: String,
}

/// Factoring report; integers are decimal strings so any size survives JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorRecord {
    #[serde(rename = "N")]
    pub n: String,
    pub m_tried: Vec<String>,
    pub attempts: Vec<AttemptRecord>,
    pub samples_used: u64,
    pub r: Option<String>,
    pub factors: Option<[String; 2]>,
    /// Set when the input was split without period finding.
    pub shortcut: Option<String>,
    pub seconds: f64,
}

fn outcome_name(o: &AttemptOutcome) -> &'static str {
    match o {
        AttemptOutcome::SharedFactor => "shared_factor",
        AttemptOutcome::OddOrder => "odd_order",
        AttemptOutcome::TrivialSquareRoot => "trivial_square_root",
        AttemptOutcome::BudgetExhausted => "budget_exhausted",
        AttemptOutcome::Factored => "factored",
    }
}

impl FactorRecord {
    pub fn from_report(rep: &FactorReport, seconds: f64) -> Self {
        FactorRecord {
            n: rep.n.to_string(),
            m_tried: rep.attempts.iter().map(|a| a.m.to_string()).collect(),
            attempts: rep
                .attempts
                .iter()
                .map(|a| AttemptRecord {
                    m: a.m.to_string(),
                    samples: a.samples,
                    r: a.order.as_ref().map(BigUint::to_string),
                    outcome: outcome_name(&a.outcome).to_owned(),
                })
                .collect(),
            samples_used: rep.samples_used,
            r: rep.order.as_ref().map(BigUint::to_string),
            factors: rep.factors.as_ref().map(|(a, b)| [a.to_string(), b.to_string()]),
            shortcut: None,
            seconds,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qpf_core::qpf::full_distribution;

    #[test]
    fn distribution_round_trip() {
        let dist = full_distribution(10, &AqftSpec::physical(4, 3).unwrap()).unwrap();
        let meta = DistributionMeta { sigma: 0.0, trials: 1, seed: 7 };
        let mut buf = Vec::new();
        write_distribution_csv(&mut buf, &dist, &meta).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("# L=4 r=10 d_max=3 variant=physical sigma=0 trials=1 seed=7\nj,probability\n0,"));
        let (back, m) = read_distribution_csv(&mut buf.as_slice()).unwrap();
        assert_eq!(back, dist);
        assert_eq!(m, meta);
    }

    #[test]
    fn sweep_round_trip_skips_timeouts() {
        let p = ScalingPoint::new(6, 2, 0.620_416_5, 0.25);
        let rows = [SweepOutcome::Computed(p), SweepOutcome::TimedOut { l: 7, d_max: 2 }];
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text, "L,d_max,r,s,seconds\n6,2,34,0.6204165,0.25\n# timeout L=7 d_max=2\n");
        assert_eq!(read_sweep_csv(buf.as_slice()).unwrap(), vec![p]);
    }

    #[test]
    fn infinite_decay_constant_is_null() {
        let fit = ScalingFit { d_max: 1, t: f64::INFINITY, c: 0.5, rms: 0.0, window: (4, 9) };
        let rec = FitRecord::from(&fit);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"d_max":1,"t":null,"c":0.5,"rms":0.0,"window":[4,9]}"#);
        assert_eq!(ScalingFit::from(&rec), fit);
    }
}
