//! Acceptance criteria 1 to 10. Each test prints one `criterion N: PASS|FAIL` line.

use std::f64::consts::PI;
use std::process::Command;

use num_bigint::BigUint;

use qpf::parallel::{self, SweepOutcome, SweepRequest};
use qpf_core::classical::{shor_factor, FactorConfig, FactoringInstance, FormulaSampler};
use qpf_core::oracle::{aqft_on_periodic, PeriodicInput};
use qpf_core::qpf::{characteristic_period, AqftSpec, BoundVariant, NoiseModel};
use qpf_core::scaling::{factor4_check, fit_decay, DEFAULT_TAIL_FRACTION};
use qpf_core::su2::{dist, rotation, GateWord, RotationTarget, Unitary2, U31};
use qpf_core::synth::{Alphabet, SearchConfig};

fn report(n: u32, pass: bool, detail: impl AsRef<str>) {
    println!("criterion {n}: {} ({})", if pass { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(pass, "criterion {n} failed: {}", detail.as_ref());
}

fn qpf(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qpf")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn criterion_01_continued_fraction() {
    let (code, text) = qpf(&["cf", "31674", "65536"]);
    let want = "denominators 2 14 2 10 52\nconvergents 1/2 14/29 29/60 304/629 15837/32768\n";
    report(1, code == 0 && text == want, text.trim().replace('\n', "; "));
}

#[test]
fn criterion_02_order_recovery() {
    let (code, text) = qpf(&["order", "--N", "143", "--m", "2", "--j", "31674"]);
    let check = BigUint::from(2u32).modpow(&BigUint::from(60u32), &BigUint::from(143u32));
    report(2, code == 0 && text.trim() == "r=60" && check == BigUint::from(1u32), format!("{}, 2^60 mod 143 = {check}", text.trim()));
}

#[test]
fn criterion_03_end_to_end_factoring() {
    let mut ok = true;
    let mut detail = Vec::new();
    // coprime bases, so the answer has to come from sampled outcomes and not a gcd
    for (n, m, p, q) in [(15u32, 7u32, 3u32, 5u32), (21, 2, 3, 7), (143, 2, 11, 13)] {
        let inst = FactoringInstance::new(BigUint::from(n)).unwrap();
        let cfg = FactorConfig { budget: 100, seed: 1, base: Some(BigUint::from(m)), ..FactorConfig::default() };
        let rep = shor_factor(&inst, &mut FormulaSampler::new(None, BoundVariant::Physical), &cfg).unwrap();
        let want = Some((BigUint::from(p), BigUint::from(q)));
        let got = rep.factors.clone();
        ok &= got == want && (1..=100).contains(&rep.samples_used);
        let r = rep.order.as_ref().map_or("-".to_owned(), ToString::to_string);
        detail.push(format!("N={n} m={m} r={r} -> {got:?} in {} samples", rep.samples_used));
    }
    report(3, ok, detail.join(", "));
}

#[test]
fn criterion_04_distance_fixtures() {
    let r128 = rotation(RotationTarget::new(7));
    let u31: GateWord = U31.parse().unwrap();
    let cases = [
        ("I", dist(&r128, &Unitary2::IDENTITY), 8.7e-3),
        ("U31", dist(&r128, &u31.eval()), 8.1e-3),
        ("phase", dist(&r128, &Unitary2::phase_gate(PI / 128.0 + PI / 512.0)), 2.1e-3),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, got, want) in cases {
        let hit = (got - want).abs() <= 0.05e-3;
        ok &= hit;
        detail.push(format!("{name}: {got:.4e} vs {want:.1e} {}", if hit { "ok" } else { "off" }));
    }
    // The phase offset pi/512 gives sqrt(1 - cos(pi/1024)) = 2.169e-3 exactly;
    // the quoted 2.1e-3 is that value truncated, 0.069e-3 outside the band.
    report(4, ok, detail.join(", "));
}

#[test]
fn criterion_05_alternating_synthesis() {
    let target = rotation(RotationTarget::new(7));
    let mut cfg = SearchConfig::new(target, 31);
    cfg.alphabet = Alphabet::AlternatingHT;
    let res = parallel::search(&cfg).unwrap();
    let bound = 8.1e-3 + 1e-6;
    // Exhaustive over every alternating word up to 31 gates: the optimum is the
    // quoted 31-gate word itself at 8.1439e-3, which only rounds to 8.1e-3.
    report(
        5,
        res.achieved <= bound,
        format!("best {} at {:.5e}, bound {bound:.5e}, {} words", res.word, res.achieved, res.explored),
    );
}

#[test]
fn criterion_06_oracle_equivalence() {
    let mut worst = 0.0f64;
    let mut worst_mass = 0.0f64;
    let mut cases = 0;
    for l in 2..=5u32 {
        for r in 2..(1u64 << l) {
            for d in 0..=2 * l {
                let spec = AqftSpec::new(l, d, BoundVariant::Physical).unwrap();
                let formula = parallel::full_distribution(r, &spec).unwrap();
                let oracle = aqft_on_periodic(&PeriodicInput::new(l, r, 0).unwrap(), &spec).unwrap();
                worst = worst.max(formula.max_abs_diff(&oracle).unwrap());
                let q = 1u64 << (2 * l);
                let mass = (r * (q / r)) as f64 / q as f64;
                worst_mass = worst_mass.max((formula.total() - mass).abs()).max((oracle.total() - mass).abs());
                cases += 1;
            }
        }
    }
    report(
        6,
        worst <= 1e-10 && worst_mass <= 1e-10,
        format!("{cases} cases, max |diff| {worst:.2e}, max mass error {worst_mass:.2e}"),
    );
}

#[test]
fn criterion_07_small_register_figure() {
    let spec = AqftSpec::exact(4).unwrap();
    let comb = parallel::full_distribution(8, &spec).unwrap();
    let comb_ok = comb
        .probabilities
        .iter()
        .enumerate()
        .all(|(j, &p)| if j % 32 == 0 { (p - 0.125).abs() <= 1e-12 } else { p.abs() <= 1e-12 });
    let formula = parallel::full_distribution(10, &spec).unwrap();
    let oracle = aqft_on_periodic(&PeriodicInput::new(4, 10, 0).unwrap(), &spec).unwrap();
    let (a, b) = (formula.useful_mass().unwrap(), oracle.useful_mass().unwrap());
    report(
        7,
        comb_ok && comb.probabilities.len() == 256 && (a - b).abs() <= 1e-10,
        format!("r=8 comb {}, r=10 useful {a:.12} vs oracle {b:.12}", if comb_ok { "exact" } else { "wrong" }),
    );
}

#[test]
fn criterion_08_scaling_law() {
    let req = SweepRequest { ls: (4..=14).collect(), d_maxes: vec![1, 2, 3], variant: BoundVariant::Physical, timeout: None };
    let points: Vec<_> = parallel::sweep(&req, None).unwrap().iter().filter_map(SweepOutcome::point).copied().collect();
    let fits: Vec<_> = [1, 2, 3]
        .iter()
        .map(|&d| {
            let group: Vec<_> = points.iter().filter(|p| p.d_max == d).copied().collect();
            fit_decay(&group, DEFAULT_TAIL_FRACTION).unwrap()
        })
        .collect();
    let rows = factor4_check(&fits).unwrap();
    let t2 = fits[1].t;
    let ok = rows.iter().all(|r| r.ratio >= 3.5) && (3.0..=6.0).contains(&t2);
    let ts: Vec<String> = fits.iter().map(|f| format!("{:.3}", f.t)).collect();
    let ratios: Vec<String> = rows.iter().map(|r| format!("{:.2}", r.ratio)).collect();
    report(8, ok, format!("t = [{}], ratios = [{}]", ts.join(", "), ratios.join(", ")));
}

#[test]
fn criterion_09_noise_robustness() {
    let spec = AqftSpec::physical(8, 3).unwrap();
    let r = characteristic_period(8);
    let noise = NoiseModel::new(PI / 32.0, 200, 2024).unwrap();
    let clean = parallel::prob_useful(r, &spec).unwrap();
    let a = parallel::with_threads(Some(1), || parallel::prob_useful_noisy(r, &spec, &noise).unwrap()).unwrap();
    let b = parallel::with_threads(Some(4), || parallel::prob_useful_noisy(r, &spec, &noise).unwrap()).unwrap();
    let same = a.mean.to_bits() == b.mean.to_bits() && a.stderr.to_bits() == b.stderr.to_bits();
    let within = a.mean >= clean / 2.0 && a.mean <= clean * 2.0;
    report(
        9,
        same && within,
        format!("noisy {:.5} +- {:.5} vs noiseless {clean:.5}, reproducible {same}", a.mean, a.stderr),
    );
}

#[test]
fn criterion_10_calculator() {
    let (code, text) = qpf(&["lmax", "--invert", "--L", "4096", "--fmax", "100"]);
    report(10, code == 0 && text.trim() == "6", format!("d_max = {}", text.trim()));
}
