use num_complex::Complex64;
use qpf_core::oracle::{
    aqft_on_periodic, apply_aqft_circuit, apply_aqft_matrix, qpf_distribution_exact, PeriodicInput, StateVector,
};
use qpf_core::qpf::{full_distribution, prob_useful, useful_j_set, AqftSpec};
use qpf_core::rng;
use rustfft::FftPlanner;

fn random_state(qubits: u32, seed: u64) -> StateVector {
    let mut r = rng::driver(seed);
    let amps: Vec<Complex64> = (0..1usize << qubits)
        .map(|_| Complex64::new(rng::unit_f64(&mut r) - 0.5, rng::unit_f64(&mut r) - 0.5))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    StateVector::from_amplitudes(amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

#[test]
fn formula_matches_state_vector_for_small_registers() {
    let mut worst = 0.0f64;
    for l in 2..=5u32 {
        for r in 2..(1u64 << l) {
            for d_max in 0..=2 * l {
                let spec = AqftSpec::physical(l, d_max).unwrap();
                let formula = full_distribution(r, &spec).unwrap();
                let oracle = aqft_on_periodic(&PeriodicInput::new(l, r, 0).unwrap(), &spec).unwrap();
                let diff = formula.max_abs_diff(&oracle).unwrap();
                worst = worst.max(diff);
                assert!(diff <= 1e-10, "L={l} r={r} d_max={d_max}: {diff}");
                let mass = (r * ((1u64 << (2 * l)) / r)) as f64 / (1u64 << (2 * l)) as f64;
                assert!((formula.total() - mass).abs() <= 1e-10);
            }
        }
    }
    assert!(worst <= 1e-10);
}

#[test]
fn full_depth_circuit_is_the_dft() {
    for l in 2..=5u32 {
        let bits = 2 * l;
        let input = random_state(bits, u64::from(l));
        let out = apply_aqft_circuit(input.clone(), &AqftSpec::exact(l).unwrap(), None).unwrap();
        // Forward transform with e^{+2πi jk/D}: inverse FFT, scaled by 1/√D.
        let mut buf = input.amplitudes().to_vec();
        FftPlanner::<f64>::new().plan_fft_inverse(buf.len()).process(&mut buf);
        let scale = 1.0 / (buf.len() as f64).sqrt();
        for (a, b) in out.amplitudes().iter().zip(&buf) {
            assert!((a - b * scale).norm() < 1e-10);
        }
    }
}

#[test]
fn circuit_equals_matrix_form() {
    for l in 2..=5u32 {
        for d_max in 0..=2 * l {
            let spec = AqftSpec::physical(l, d_max).unwrap();
            let input = random_state(2 * l, 100 + u64::from(d_max));
            let a = apply_aqft_circuit(input.clone(), &spec, None).unwrap();
            let b = apply_aqft_matrix(&input, &spec).unwrap();
            for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
                assert!((x - y).norm() < 1e-10, "L={l} d_max={d_max}");
            }
            assert!((a.norm_sqr() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn depth_zero_is_hadamards_then_reversal() {
    let l = 3;
    let spec = AqftSpec::physical(l, 0).unwrap();
    let dim = 1usize << (2 * l);
    for k in 0..dim {
        let out = apply_aqft_circuit(StateVector::basis(2 * l, k as u64).unwrap(), &spec, None).unwrap();
        for (j, amp) in out.amplitudes().iter().enumerate() {
            // H⊗n then reversal: ⟨j|·|k⟩ = (−1)^{popcount(rev(j) & k)} / √D
            let rev = (j as u32).reverse_bits() >> (32 - 2 * l);
            let sign = if (rev as usize & k).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
            assert!((amp - Complex64::new(sign / (dim as f64).sqrt(), 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn offset_is_a_pure_phase_at_full_depth() {
    let spec = AqftSpec::exact(4).unwrap();
    let a = aqft_on_periodic(&PeriodicInput::new(4, 10, 0).unwrap(), &spec).unwrap();
    let b = aqft_on_periodic(&PeriodicInput::new(4, 10, 3).unwrap(), &spec).unwrap();
    assert!(a.max_abs_diff(&b).unwrap() <= 1e-12);
}

#[test]
fn comb_for_period_eight() {
    let spec = AqftSpec::exact(4).unwrap();
    let oracle = aqft_on_periodic(&PeriodicInput::new(4, 8, 0).unwrap(), &spec).unwrap();
    for (j, p) in oracle.probabilities.iter().enumerate() {
        let want = if j % 32 == 0 { 0.125 } else { 0.0 };
        assert!((p - want).abs() < 1e-12, "j={j}");
    }
}

#[test]
fn traced_out_register_examples() {
    let spec = AqftSpec::exact(4).unwrap();
    let d = qpf_distribution_exact(15, 7, &spec).unwrap();
    for (j, p) in d.probabilities.iter().enumerate() {
        let want = if j % 64 == 0 { 0.25 } else { 0.0 };
        assert!((p - want).abs() < 1e-12);
    }
    let d = qpf_distribution_exact(15, 11, &spec).unwrap();
    assert!((d.probabilities[0] - 0.5).abs() < 1e-12 && (d.probabilities[128] - 0.5).abs() < 1e-12);
    assert!(qpf_distribution_exact(15, 5, &spec).is_err());
}

/// The traced-out register is a mixture of periodic branches: branch `k0` has
/// `⌈(D − k0)/r⌉` terms, so only branches with exactly `⌊D/r⌋` terms coincide
/// with the closed form (which fixes that count). For `N = 21, m = 2` the mixture
/// is checked exactly and its useful mass is pinned next to `s(6, 5, 2L)`.
#[test]
fn n21_against_closed_form() {
    let l = 5;
    let spec = AqftSpec::exact(l).unwrap();
    let r = 6u64;
    let dim = 1u64 << (2 * l);
    let exact = qpf_distribution_exact(21, 2, &spec).unwrap();
    assert_eq!(exact.r, r);
    assert!((exact.total() - 1.0).abs() < 1e-12);

    // Under the exact transform every branch is a comb of length `count`.
    let branch = |count: u64, j: u64| -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..count {
            let phase = 2.0 * std::f64::consts::PI * ((j * n * r) % dim) as f64 / dim as f64;
            acc += Complex64::from_polar(1.0, phase);
        }
        acc.norm_sqr() / (dim * dim) as f64
    };
    for j in 0..dim {
        let mixed: f64 = (0..r).map(|k0| branch((dim - k0).div_ceil(r), j)).sum();
        assert!((exact.probabilities[j as usize] - mixed).abs() < 1e-10, "j={j}");
    }

    let s = prob_useful(r, &spec).unwrap();
    let oracle_useful: f64 = useful_j_set(r, l).unwrap().iter().map(|&j| exact.probabilities[j as usize]).sum();
    let k0_zero = aqft_on_periodic(&PeriodicInput::new(l, r, 0).unwrap(), &spec).unwrap();
    assert!((k0_zero.useful_mass().unwrap() - s).abs() < 1e-10);
    assert!((s - 0.734_223_244_810_957_6).abs() < 1e-10, "{s}");
    assert!((oracle_useful - 0.736_605_948_151_885_1).abs() < 1e-10, "{oracle_useful}");
}
