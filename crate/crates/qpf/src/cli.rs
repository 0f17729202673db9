//! The `qpf` command line.
//!
//! Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a
//! usage error.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use qpf_core::classical::{
    cf_expand, classical_split, find_order, shor_factor, ClassicalShortcut, FactorConfig, FactoringInstance,
    FormulaSampler, OracleSampler, OutcomeSource, QpfSample,
};
use qpf_core::oracle::{aqft_on_periodic, PeriodicInput};
use qpf_core::qpf::{characteristic_period, AqftSpec, BoundVariant, NoiseModel};
use qpf_core::scaling::{factor4_check, fit_decay, invert_lmax, lmax, ScalingFit, ScalingPoint};
use qpf_core::su2::{rotation, RotationTarget};
use qpf_core::synth::{baseline_distance, gate_count_scaling_report, Alphabet, GateCountBudget, SearchConfig, Strategy};

use crate::cache::SweepCache;
use crate::config;
use crate::error::{AppError, AppResult};
use crate::formats::{self, DistributionMeta, FactorRecord, FitRecord, GateCountRecord, SynthRecord};
use crate::manifest::RunManifest;
use crate::parallel::{self, SweepOutcome, SweepRequest};

#[derive(Debug, Parser, Serialize)]
#[command(name = "qpf", version, about = "Period finding under a truncated controlled-rotation set", args_override_self = true)]
pub struct Cli {
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// key=value file supplying default flags; command-line flags win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Full outcome distribution as CSV.
    Dist(QpfArgs),
    /// Useful-output probability s.
    S(QpfArgs),
    /// s at r = 2^(L-1)+2 over a grid of L and d_max, cached per point.
    Sweep(SweepArgs),
    /// Log-linear decay fits of a sweep.
    Fit(FitArgs),
    /// Ratios of consecutive decay constants.
    Check4(Check4Args),
    /// L_max = floor(4^(d_max-1) log2 f_max), or its inverse.
    Lmax(LmaxArgs),
    /// Continued fraction of NUM/DEN.
    Cf(CfArgs),
    /// Order recovery from measured outcomes.
    Order(OrderArgs),
    /// Shor's algorithm end to end with sampled outcomes.
    Factor(FactorArgs),
    /// Gate-word search for R_{2^d}.
    Synth(SynthArgs),
    /// Closed form against the state-vector simulation.
    OracleCompare(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Physical,
    Literal,
}

impl From<Variant> for BoundVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Physical => BoundVariant::Physical,
            Variant::Literal => BoundVariant::PaperLiteral,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct QpfArgs {
    #[arg(long = "L")]
    pub l: u32,
    /// Period (default 2^(L-1)+2).
    #[arg(long)]
    pub r: Option<u64>,
    /// Cutoff (default 2L, the exact transform).
    #[arg(long)]
    pub dmax: Option<u32>,
    #[arg(long, value_enum, default_value = "physical")]
    pub variant: Variant,
    /// Standard deviation of the controlled-rotation angle error, radians.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1)]
    pub trials: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl QpfArgs {
    fn spec(&self) -> AppResult<AqftSpec> {
        Ok(AqftSpec::new(self.l, self.dmax.unwrap_or(2 * self.l), self.variant.into())?)
    }

    fn period(&self) -> u64 {
        self.r.unwrap_or_else(|| characteristic_period(self.l))
    }

    fn noise(&self) -> AppResult<NoiseModel> {
        Ok(NoiseModel::new(self.sigma, self.trials, self.seed)?)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[arg(long = "Lmin", default_value_t = 4)]
    pub l_min: u32,
    #[arg(long = "Lmax")]
    pub l_max: u32,
    #[arg(long = "dmax-list", value_delimiter = ',', required = true)]
    pub dmax_list: Vec<u32>,
    #[arg(long, value_enum, default_value = "physical")]
    pub variant: Variant,
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
    /// Per-point time limit in seconds.
    #[arg(long)]
    pub timeout: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    /// Sweep CSV.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = qpf_core::scaling::DEFAULT_TAIL_FRACTION)]
    pub tail: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Check4Args {
    /// Fit JSON, or a sweep CSV to fit first.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, default_value_t = qpf_core::scaling::DEFAULT_TAIL_FRACTION)]
    pub tail: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LmaxArgs {
    #[arg(long, required_unless_present = "invert", conflicts_with = "invert")]
    pub dmax: Option<u32>,
    #[arg(long)]
    pub fmax: f64,
    /// Smallest d_max whose L_max reaches --L.
    #[arg(long, requires = "l")]
    pub invert: bool,
    #[arg(long = "L")]
    pub l: Option<u64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CfArgs {
    #[serde(serialize_with = "as_string")]
    pub numerator: BigUint,
    #[serde(serialize_with = "as_string")]
    pub denominator: BigUint,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OrderArgs {
    #[arg(long = "N")]
    #[serde(rename = "N", serialize_with = "as_string")]
    pub n: BigUint,
    #[arg(long)]
    #[serde(serialize_with = "as_string")]
    pub m: BigUint,
    /// Measured outcomes j.
    #[arg(long, num_args = 1.., required = true)]
    #[serde(serialize_with = "all_as_string")]
    pub j: Vec<BigUint>,
    /// Register half-width (default: bit length of N).
    #[arg(long = "L")]
    pub l: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    Formula,
    Oracle,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FactorArgs {
    #[arg(long = "N")]
    #[serde(rename = "N", serialize_with = "as_string")]
    pub n: BigUint,
    #[arg(long)]
    #[serde(serialize_with = "opt_as_string")]
    pub m: Option<BigUint>,
    /// Total sample budget f_max.
    #[arg(long, default_value_t = 100)]
    pub fmax: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "formula")]
    pub sampler: SamplerKind,
    /// Cutoff (default: full depth).
    #[arg(long)]
    pub dmax: Option<u32>,
    #[arg(long, value_enum, default_value = "physical")]
    pub variant: Variant,
    #[arg(long, default_value_t = 10)]
    pub attempts: u32,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyArg {
    Exhaustive,
    #[value(alias = "mitm")]
    MeetInMiddle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlphabetArg {
    Full,
    Alternating,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SynthArgs {
    /// Target R_{2^d}; with --table, the largest d of the table.
    #[arg(long)]
    pub d: u32,
    #[arg(long = "max-len")]
    pub max_len: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub strategy: StrategyArg,
    #[arg(long, value_enum, default_value = "full")]
    pub alphabet: AlphabetArg,
    /// Stop at the first length reaching this distance.
    #[arg(long, default_value_t = 1e-9)]
    pub epsilon: f64,
    /// Initial neighbour radius for meet-in-the-middle.
    #[arg(long)]
    pub resolution: Option<f64>,
    /// Shortest words reaching 2^(-d') for every d' <= d.
    #[arg(long)]
    pub table: bool,
    /// Alternating-word depth used by --table after the full alphabet runs out.
    #[arg(long = "alt-max-len", default_value_t = 40)]
    pub alt_max_len: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct OracleArgs {
    #[arg(long = "L")]
    pub l: u32,
    /// Every r in [2, 2^L) and every d_max in 0..=2L.
    #[arg(long, conflicts_with_all = ["r", "dmax"])]
    pub all: bool,
    #[arg(long, required_unless_present = "all")]
    pub r: Option<u64>,
    #[arg(long, required_unless_present = "all")]
    pub dmax: Option<u32>,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value = "physical")]
    pub variant: Variant,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_as_string<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn all_as_string<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

const SUBCOMMANDS: &[&str] =
    &["dist", "s", "sweep", "fit", "check4", "lmax", "cf", "order", "factor", "synth", "oracle-compare"];

/// Output of one command: text for stdout and the files it wrote.
#[derive(Default)]
struct Run {
    text: Vec<u8>,
    outputs: Vec<PathBuf>,
    seed: Option<u64>,
}

impl Run {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.extend_from_slice(s.as_ref().as_bytes());
        self.text.push(b'\n');
    }

    fn write_file(&mut self, path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> AppResult<()> {
        if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
            fs::create_dir_all(parent).map_err(AppError::io(parent))?;
        }
        let mut w = BufWriter::new(File::create(path).map_err(AppError::io(path))?);
        body(&mut w).and_then(|_| w.flush()).map_err(AppError::io(path))?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, path: &Path, value: &T) -> AppResult<()> {
        let text = serde_json::to_string_pretty(value)? + "\n";
        self.write_file(path, |w| w.write_all(text.as_bytes()))
    }
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let argv = match config::expand(&argv, SUBCOMMANDS) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = stdout.write_all(text.as_bytes());
                0
            } else {
                let _ = stderr.write_all(text.as_bytes());
                2
            };
        }
    };
    let start = Instant::now();
    let mut run = Run::default();
    let result = parallel::with_threads(cli.threads, || dispatch(&cli.command, &mut run)).and_then(|r| r);
    let _ = stdout.write_all(&run.text);
    let result = result.and_then(|()| {
        if run.outputs.is_empty() {
            return Ok(());
        }
        let manifest = RunManifest {
            subcommand: subcommand_name(&cli.command).to_owned(),
            argv: argv.clone(),
            parameters: serde_json::to_value(&cli.command)?,
            seed: run.seed,
            threads: cli.threads,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            outputs: run.outputs.clone(),
            wall_seconds: start.elapsed().as_secs_f64(),
        };
        manifest.write().map(|_| ())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn subcommand_name(c: &Command) -> &'static str {
    match c {
        Command::Dist(_) => "dist",
        Command::S(_) => "s",
        Command::Sweep(_) => "sweep",
        Command::Fit(_) => "fit",
        Command::Check4(_) => "check4",
        Command::Lmax(_) => "lmax",
        Command::Cf(_) => "cf",
        Command::Order(_) => "order",
        Command::Factor(_) => "factor",
        Command::Synth(_) => "synth",
        Command::OracleCompare(_) => "oracle-compare",
    }
}

fn dispatch(command: &Command, run: &mut Run) -> AppResult<()> {
    match command {
        Command::Dist(a) => dist(a, run),
        Command::S(a) => useful(a, run),
        Command::Sweep(a) => sweep(a, run),
        Command::Fit(a) => fit(a, run),
        Command::Check4(a) => check4(a, run),
        Command::Lmax(a) => lmax_cmd(a, run),
        Command::Cf(a) => cf(a, run),
        Command::Order(a) => order(a, run),
        Command::Factor(a) => factor(a, run),
        Command::Synth(a) => synth(a, run),
        Command::OracleCompare(a) => oracle_compare(a, run),
    }
}

fn dist(a: &QpfArgs, run: &mut Run) -> AppResult<()> {
    let spec = a.spec()?;
    let noise = a.noise()?;
    let r = a.period();
    let d = if a.sigma > 0.0 {
        parallel::noisy_full_distribution(r, &spec, &noise)?
    } else {
        parallel::full_distribution(r, &spec)?
    };
    run.seed = Some(a.seed);
    let meta = DistributionMeta { sigma: a.sigma, trials: a.trials, seed: a.seed };
    match &a.out {
        Some(path) => {
            run.write_file(path, |w| formats::write_distribution_csv(w, &d, &meta))?;
            run.line(format!("rows={} total={} expected_total={} useful={}", d.probabilities.len(), d.total(), d.expected_mass(), d.useful_mass()?));
        }
        None => formats::write_distribution_csv(&mut run.text, &d, &meta).map_err(|e| AppError::Format(e.to_string()))?,
    }
    Ok(())
}

#[derive(Serialize)]
struct UsefulRecord {
    #[serde(rename = "L")]
    l: u32,
    r: u64,
    d_max: u32,
    variant: String,
    sigma: f64,
    trials: u32,
    seed: u64,
    s: f64,
    stderr: f64,
}

fn useful(a: &QpfArgs, run: &mut Run) -> AppResult<()> {
    let spec = a.spec()?;
    let noise = a.noise()?;
    let r = a.period();
    let est = parallel::prob_useful_noisy(r, &spec, &noise)?;
    run.seed = Some(a.seed);
    if a.sigma > 0.0 {
        run.line(format!("s={} stderr={} trials={}", est.mean, est.stderr, est.trials));
    } else {
        run.line(format!("s={}", est.mean));
    }
    if let Some(path) = &a.out {
        let rec = UsefulRecord {
            l: a.l,
            r,
            d_max: spec.d_max(),
            variant: spec.variant().to_string(),
            sigma: a.sigma,
            trials: a.trials,
            seed: a.seed,
            s: est.mean,
            stderr: est.stderr,
        };
        run.write_json(path, &rec)?;
    }
    Ok(())
}

fn sweep(a: &SweepArgs, run: &mut Run) -> AppResult<()> {
    if a.l_min > a.l_max {
        return Err(AppError::Usage("--Lmin must not exceed --Lmax".into()));
    }
    let cache = a.cache_dir.as_ref().map(SweepCache::open).transpose()?;
    let req = SweepRequest {
        ls: (a.l_min..=a.l_max).collect(),
        d_maxes: a.dmax_list.clone(),
        variant: a.variant.into(),
        timeout: a.timeout,
    };
    let outcomes = parallel::sweep(&req, cache.as_ref())?;
    let count = |f: fn(&SweepOutcome) -> bool| outcomes.iter().filter(|o| f(o)).count();
    let cached = count(|o| matches!(o, SweepOutcome::Cached(_)));
    let computed = count(|o| matches!(o, SweepOutcome::Computed(_)));
    let timed_out = count(|o| matches!(o, SweepOutcome::TimedOut { .. }));
    match &a.out {
        Some(path) => {
            run.write_file(path, |w| formats::write_sweep_csv(w, &outcomes))?;
            run.line(format!("points={} computed={computed} cached={cached} timed_out={timed_out}", outcomes.len()));
        }
        None => formats::write_sweep_csv(&mut run.text, &outcomes).map_err(|e| AppError::Format(e.to_string()))?,
    }
    Ok(())
}

fn read_points(path: &Path) -> AppResult<Vec<ScalingPoint>> {
    formats::read_sweep_csv(File::open(path).map_err(AppError::io(path))?)
}

fn fit_all(points: &[ScalingPoint], tail: f64) -> AppResult<Vec<ScalingFit>> {
    let mut d_maxes: Vec<u32> = points.iter().map(|p| p.d_max).collect();
    d_maxes.sort_unstable();
    d_maxes.dedup();
    if d_maxes.is_empty() {
        return Err(AppError::Format("sweep file has no points".into()));
    }
    d_maxes
        .into_iter()
        .map(|d| {
            let group: Vec<ScalingPoint> = points.iter().filter(|p| p.d_max == d).copied().collect();
            Ok(fit_decay(&group, tail)?)
        })
        .collect()
}

fn fit(a: &FitArgs, run: &mut Run) -> AppResult<()> {
    let fits = fit_all(&read_points(&a.input)?, a.tail)?;
    let records: Vec<FitRecord> = fits.iter().map(FitRecord::from).collect();
    match &a.out {
        Some(path) => {
            run.write_json(path, &records)?;
            for f in &fits {
                run.line(format!("d_max={} t={} c={} rms={}", f.d_max, f.t, f.c, f.rms));
            }
        }
        None => run.line(serde_json::to_string_pretty(&records)?),
    }
    Ok(())
}

fn check4(a: &Check4Args, run: &mut Run) -> AppResult<()> {
    let text = fs::read_to_string(&a.input).map_err(AppError::io(&a.input))?;
    let fits: Vec<ScalingFit> = match serde_json::from_str::<Vec<FitRecord>>(&text) {
        Ok(records) => records.iter().map(ScalingFit::from).collect(),
        Err(_) => fit_all(&formats::read_sweep_csv(text.as_bytes())?, a.tail)?,
    };
    let rows = factor4_check(&fits)?;
    run.line("d_max,t_lower,t_upper,ratio,pass");
    for r in &rows {
        run.line(format!("{},{},{},{},{}", r.d_max, r.t_lower, r.t_upper, r.ratio, r.pass));
    }
    Ok(())
}

fn lmax_cmd(a: &LmaxArgs, run: &mut Run) -> AppResult<()> {
    if a.invert {
        let l = a.l.ok_or_else(|| AppError::Usage("--invert needs --L".into()))?;
        run.line(invert_lmax(l, a.fmax)?.to_string());
    } else {
        let d = a.dmax.ok_or_else(|| AppError::Usage("--dmax is required".into()))?;
        run.line(lmax(d, a.fmax)?.to_string());
    }
    Ok(())
}

fn cf(a: &CfArgs, run: &mut Run) -> AppResult<()> {
    let e = cf_expand(&a.numerator, &a.denominator)?;
    let quotients: String = e.quotients.iter().map(|q| format!(" {q}")).collect();
    let convergents: String =
        e.convergents.iter().map(|c| format!(" {}/{}", c.numerator, c.denominator)).collect();
    run.line(format!("denominators{quotients}"));
    run.line(format!("convergents{convergents}"));
    Ok(())
}

fn order(a: &OrderArgs, run: &mut Run) -> AppResult<()> {
    let l = a.l.unwrap_or(a.n.bits() as u32);
    let samples: Vec<QpfSample> = a.j.iter().cloned().map(QpfSample::injected).collect();
    match find_order(&a.m, &a.n, l, &samples)? {
        Some(r) => run.line(format!("r={r}")),
        None => run.line("r=none"),
    }
    Ok(())
}

fn factor(a: &FactorArgs, run: &mut Run) -> AppResult<()> {
    run.seed = Some(a.seed);
    let start = Instant::now();
    let record = if let Some((kind, p, q)) = classical_split(&a.n) {
        let (p, q) = if p <= q { (p, q) } else { (q, p) };
        FactorRecord {
            n: a.n.to_string(),
            m_tried: Vec::new(),
            attempts: Vec::new(),
            samples_used: 0,
            r: None,
            factors: Some([p.to_string(), q.to_string()]),
            shortcut: Some(match kind {
                ClassicalShortcut::Even => "even".into(),
                ClassicalShortcut::PerfectPower => "perfect_power".into(),
            }),
            seconds: start.elapsed().as_secs_f64(),
        }
    } else {
        let instance = FactoringInstance::new(a.n.clone())?;
        let config = FactorConfig { budget: a.fmax, seed: a.seed, base: a.m.clone(), max_attempts: a.attempts };
        let mut sampler: Box<dyn OutcomeSource> = match a.sampler {
            SamplerKind::Formula => Box::new(FormulaSampler::new(a.dmax, a.variant.into())),
            SamplerKind::Oracle => {
                if a.variant != Variant::Physical {
                    return Err(AppError::Usage("the oracle sampler simulates the physical variant only".into()));
                }
                Box::new(OracleSampler::new(a.dmax))
            }
        };
        let report = shor_factor(&instance, sampler.as_mut(), &config)?;
        FactorRecord::from_report(&report, start.elapsed().as_secs_f64())
    };
    run.line(serde_json::to_string_pretty(&record)?);
    if let Some(path) = &a.out {
        run.write_json(path, &record)?;
    }
    if record.factors.is_none() {
        return Err(AppError::Failed(format!(
            "no factor of {} after {} samples",
            record.n, record.samples_used
        )));
    }
    Ok(())
}

fn synth(a: &SynthArgs, run: &mut Run) -> AppResult<()> {
    let start = Instant::now();
    if a.table {
        let budget = GateCountBudget { full_max_length: a.max_len, alternating_max_length: a.alt_max_len };
        let rows = gate_count_scaling_report(0..=a.d, budget)?;
        let records: Vec<GateCountRecord> = rows.iter().map(GateCountRecord::from).collect();
        run.line(serde_json::to_string_pretty(&records)?);
        if let Some(path) = &a.out {
            run.write_json(path, &records)?;
        }
        return Ok(());
    }
    let target = rotation(RotationTarget::new(a.d));
    let mut cfg = SearchConfig::new(target, a.max_len);
    cfg.strategy = match a.strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::MeetInMiddle => Strategy::MeetInMiddle,
    };
    cfg.alphabet = match a.alphabet {
        AlphabetArg::Full => Alphabet::Full,
        AlphabetArg::Alternating => Alphabet::AlternatingHT,
    };
    cfg.epsilon = a.epsilon;
    cfg.resolution = a.resolution;
    let mut res = parallel::search(&cfg)?;
    res.seconds = start.elapsed().as_secs_f64();
    let strategy = match a.strategy {
        StrategyArg::Exhaustive => "exhaustive",
        StrategyArg::MeetInMiddle => "meet-in-middle",
    };
    let alphabet = match a.alphabet {
        AlphabetArg::Full => "full",
        AlphabetArg::Alternating => "alternating",
    };
    let rec = SynthRecord::new(a.d, strategy, alphabet, a.max_len, a.epsilon, &res, baseline_distance(&target));
    run.line(serde_json::to_string_pretty(&rec)?);
    if let Some(path) = &a.out {
        run.write_json(path, &rec)?;
    }
    Ok(())
}

/// Largest `|formula − oracle|` and mass error over the requested cases.
fn oracle_compare(a: &OracleArgs, run: &mut Run) -> AppResult<()> {
    let variant: BoundVariant = a.variant.into();
    let cases: Vec<(u64, u32)> = if a.all {
        let top = 1u64.checked_shl(a.l).ok_or(qpf_core::Error::RegisterSize(a.l))?;
        (2..top).flat_map(|r| (0..=2 * a.l).map(move |d| (r, d))).collect()
    } else {
        vec![(a.r.expect("required by clap"), a.dmax.expect("required by clap"))]
    };
    let results: Vec<Option<(f64, f64)>> = cases
        .par_iter()
        .map(|&(r, d)| {
            let spec = AqftSpec::new(a.l, d, variant)?;
            let oracle = match aqft_on_periodic(&PeriodicInput::new(a.l, r, 0)?, &spec) {
                Ok(o) => o,
                // literal cutoffs below 2 have no circuit
                Err(qpf_core::Error::Unrealisable(_)) => return Ok(None),
                Err(e) => return Err(e),
            };
            let formula = parallel::full_distribution(r, &spec)?;
            Ok(Some((formula.max_abs_diff(&oracle)?, (formula.total() - formula.expected_mass()).abs())))
        })
        .collect::<qpf_core::Result<_>>()?;
    let mut worst: Option<(f64, u64, u32)> = None;
    let mut mass = 0.0f64;
    let mut skipped = 0;
    for (res, &(r, d)) in results.iter().zip(&cases) {
        match res {
            Some((diff, m)) => {
                if worst.is_none_or(|w| *diff > w.0) {
                    worst = Some((*diff, r, d));
                }
                mass = mass.max(*m);
            }
            None => skipped += 1,
        }
    }
    let Some(worst) = worst else {
        return Err(AppError::Failed("no case has a circuit under this variant".into()));
    };
    run.line(format!(
        "cases={} skipped={skipped} max_diff={:.3e} worst_r={} worst_dmax={} max_mass_error={mass:.3e}",
        cases.len(),
        worst.0,
        worst.1,
        worst.2
    ));
    if worst.0 > a.tol || mass > a.tol {
        return Err(AppError::Failed(format!("discrepancy exceeds tolerance {}", a.tol)));
    }
    Ok(())
}
