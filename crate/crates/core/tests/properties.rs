use num_bigint::BigUint;
use num_complex::Complex64;
use proptest::prelude::*;
use qpf_core::classical::cf_expand;
use qpf_core::rng;
use qpf_core::su2::{dist, Gate, GateWord, Unitary2};

fn random_unitary(r: &mut rng::Rng) -> Unitary2 {
    let mut q = [0.0f64; 4];
    loop {
        for x in &mut q {
            *x = 2.0 * rng::unit_f64(r) - 1.0;
        }
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.05 && n <= 1.0 {
            q.iter_mut().for_each(|x| *x /= n);
            break;
        }
    }
    let a = Complex64::new(q[0], q[3]);
    let b = Complex64::new(q[2], q[1]);
    let rows = [[a, b], [-b.conj(), a.conj()]];
    let theta = 2.0 * std::f64::consts::PI * rng::unit_f64(r);
    Unitary2::try_from_rows(rows, 1e-12).unwrap().with_global_phase(theta)
}

#[test]
fn metric_axioms_on_random_triples() {
    let mut r = rng::driver(2024);
    for _ in 0..10_000 {
        let (u, v, w) = (random_unitary(&mut r), random_unitary(&mut r), random_unitary(&mut r));
        assert!(u.is_unitary(1e-12));
        assert!((dist(&u, &v) - dist(&v, &u)).abs() < 1e-15);
        assert!(dist(&u, &w) <= dist(&u, &v) + dist(&v, &w) + 1e-12);
        let theta = 2.0 * std::f64::consts::PI * rng::unit_f64(&mut r);
        assert!(dist(&u, &u.with_global_phase(theta)) <= 1e-12);
        let d = dist(&u, &v);
        assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn cf_round_trip_on_random_fractions() {
    let mut r = rng::driver(7);
    for _ in 0..100_000 {
        let den = rng::below(&mut r, u64::MAX - 1) + 1;
        let num = rng::below(&mut r, den);
        let cf = cf_expand(&BigUint::from(num), &BigUint::from(den)).unwrap();
        let back = cf.recombine();
        // recombined fraction is reduced
        let g = num_integer::gcd(num, den);
        assert_eq!(back.numerator, BigUint::from(num / g));
        assert_eq!(back.denominator, BigUint::from(den / g));
        for w in cf.convergents.windows(2) {
            assert!(w[0].denominator < w[1].denominator);
        }
    }
}

fn gate() -> impl Strategy<Value = Gate> {
    prop::sample::select(Gate::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn concatenation_composes(a in prop::collection::vec(gate(), 0..20), b in prop::collection::vec(gate(), 0..20)) {
        let (w1, w2) = (GateWord::new(a), GateWord::new(b));
        // first gate applied first: the later word multiplies on the left
        let joined = w1.concat(&w2).eval();
        let product = w2.eval() * w1.eval();
        prop_assert!(joined.max_diff(&product) < 1e-12);
        prop_assert!(joined.is_unitary(1e-12));
    }

    #[test]
    fn canonical_form_preserves_the_unitary(a in prop::collection::vec(gate(), 0..40)) {
        let w = GateWord::new(a);
        let c = w.canonical();
        prop_assert!(c.is_canonical());
        prop_assert!(c.len() <= w.len());
        prop_assert!(w.eval().max_diff(&c.eval()) < 1e-12);
        prop_assert_eq!(c.canonical(), c.clone());
    }

    #[test]
    fn word_text_round_trips(a in prop::collection::vec(gate(), 0..40)) {
        let w = GateWord::new(a);
        let back: GateWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn cf_convergents_follow_the_recurrence(num in 0u64..1_000_000, den in 1u64..1_000_000) {
        prop_assume!(num < den);
        let cf = cf_expand(&BigUint::from(num), &BigUint::from(den)).unwrap();
        let (mut h, mut hp) = (BigUint::from(1u32), BigUint::from(0u32));
        let (mut k, mut kp) = (BigUint::from(0u32), BigUint::from(1u32));
        // the expansion of num/den < 1 starts with a zero integer part
        for (a, conv) in cf.quotients.iter().zip(&cf.convergents) {
            let nh = a * &h + &hp;
            let nk = a * &k + &kp;
            hp = std::mem::replace(&mut h, nh);
            kp = std::mem::replace(&mut k, nk);
            prop_assert_eq!(&conv.numerator, &k);
            prop_assert_eq!(&conv.denominator, &h);
        }
    }
}
