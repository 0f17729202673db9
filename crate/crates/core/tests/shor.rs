use num_bigint::BigUint;
use num_integer::Integer;
use qpf_core::classical::{
    find_order, sample_outcome, shor_factor, FactorConfig, FactoringInstance, FormulaSampler, OracleSampler,
    QpfSample,
};
use qpf_core::oracle::multiplicative_order;
use qpf_core::qpf::{full_distribution, prob_useful, AqftSpec, BoundVariant, Distribution};
use qpf_core::rng;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// Fraction of bases `1 < m < N` coprime to `N` whose order is even with
/// `m^(r/2) ≢ ±1 (mod N)`.
fn good_base_fraction(n: u64) -> (usize, usize) {
    let mut good = 0;
    let mut total = 0;
    for m in 2..n {
        let Some(r) = multiplicative_order(m, n) else { continue };
        total += 1;
        if r % 2 == 0 {
            let y = big(m).modpow(&big(r / 2), &big(n));
            if y != big(1) && y != big(n - 1) {
                good += 1;
            }
        }
    }
    (good, total)
}

#[test]
fn good_base_fractions() {
    // exhaustive counts; the guaranteed bound for two distinct odd prime
    // factors is 1/2, and N = 21, 33 sit close to it
    let expected = [(15, 6, 7), (21, 6, 11), (33, 10, 19), (35, 18, 23), (143, 90, 119)];
    for (n, good, total) in expected {
        assert_eq!(good_base_fraction(n), (good, total), "N={n}");
        assert!(good as f64 / total as f64 >= 0.5);
    }
}

#[test]
fn order_from_worked_sample() {
    let r = find_order(&big(2), &big(143), 8, &[QpfSample::injected(31674u64)]).unwrap();
    assert_eq!(r, Some(big(60)));
    assert_eq!(big(2).modpow(&big(60), &big(143)), big(1));
    let r = find_order(&big(7), &big(15), 4, &[QpfSample::injected(64u64)]).unwrap();
    assert_eq!(r, Some(big(4)));
}

#[test]
fn comb_sampling_statistics() {
    let dist = full_distribution(8, &AqftSpec::exact(4).unwrap()).unwrap();
    let mut rng = rng::driver(99);
    let draws = 100_000;
    let mut counts = [0u32; 8];
    for _ in 0..draws {
        let j = u64::try_from(&sample_outcome(&dist, &mut rng).unwrap().j).unwrap();
        assert_eq!(j % 32, 0);
        counts[(j / 32) as usize] += 1;
    }
    let sigma = (draws as f64 * 0.125 * 0.875).sqrt();
    for c in counts {
        assert!((f64::from(c) - draws as f64 * 0.125).abs() <= 3.0 * sigma, "{c}");
    }
}

#[test]
fn point_mass_and_determinism() {
    let spec = AqftSpec::exact(4).unwrap();
    let mut probabilities = vec![0.0; 256];
    probabilities[128] = 1.0;
    let point = Distribution { spec, r: 2, probabilities };
    let mut rng = rng::driver(1);
    for _ in 0..100 {
        assert_eq!(sample_outcome(&point, &mut rng).unwrap().j, big(128));
    }
    let dist = full_distribution(10, &spec).unwrap();
    let seq = |seed| {
        let mut r = rng::driver(seed);
        (0..50).map(|_| sample_outcome(&dist, &mut r).unwrap().j).collect::<Vec<_>>()
    };
    assert_eq!(seq(5), seq(5));
}

fn check_factors(n: u64, report: &qpf_core::classical::FactorReport, want: (u64, u64)) {
    let (a, b) = report.factors.clone().expect("factoring failed");
    assert_eq!((a.clone(), b.clone()), (big(want.0), big(want.1)));
    assert_eq!(a * b, big(n));
}

#[test]
fn factor_fifteen_with_oracle() {
    let inst = FactoringInstance::new(big(15)).unwrap();
    let cfg = FactorConfig { budget: 50, seed: 3, ..FactorConfig::default() };
    let rep = shor_factor(&inst, &mut OracleSampler::new(None), &cfg).unwrap();
    check_factors(15, &rep, (3, 5));
}

#[test]
fn factor_143_with_formula_at_full_depth() {
    let inst = FactoringInstance::new(big(143)).unwrap();
    let cfg = FactorConfig { budget: 100, seed: 11, ..FactorConfig::default() };
    let rep = shor_factor(&inst, &mut FormulaSampler::new(None, BoundVariant::Physical), &cfg).unwrap();
    check_factors(143, &rep, (11, 13));
    assert!(rep.samples_used <= 100);
}

#[test]
fn factor_21_at_truncated_depth() {
    let inst = FactoringInstance::new(big(21)).unwrap();
    // expected repetitions per base are about 1/s at this depth
    let s = prob_useful(6, &AqftSpec::physical(5, 3).unwrap()).unwrap();
    assert!(s > 0.05, "{s}");
    let cfg = FactorConfig { budget: 1000, seed: 21, ..FactorConfig::default() };
    let rep = shor_factor(&inst, &mut FormulaSampler::new(Some(3), BoundVariant::Physical), &cfg).unwrap();
    check_factors(21, &rep, (3, 7));
}

#[test]
fn successful_reports_multiply_back() {
    for seed in 0..20 {
        for n in [15u64, 21, 33, 35] {
            let inst = FactoringInstance::new(big(n)).unwrap();
            let cfg = FactorConfig { budget: 100, seed, ..FactorConfig::default() };
            let rep = shor_factor(&inst, &mut FormulaSampler::new(None, BoundVariant::Physical), &cfg).unwrap();
            if let Some((a, b)) = rep.factors {
                assert!(a > big(1) && b > big(1));
                assert_eq!(&a * &b, big(n));
                assert_eq!(a.gcd(&b), big(1));
            }
        }
    }
}
