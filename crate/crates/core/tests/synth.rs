use qpf_core::su2::{dist, rotation, GateWord, RotationTarget, U31};
use qpf_core::synth::{
    baseline_distance, gate_count_scaling_report, search, Alphabet, GateCountBudget, SearchConfig, Strategy,
};

#[test]
fn alternating_search_recovers_the_31_gate_word() {
    let target = rotation(RotationTarget::new(7));
    let mut cfg = SearchConfig::new(target, 31);
    cfg.alphabet = Alphabet::AlternatingHT;
    cfg.epsilon = 1e-6;
    let res = search(&cfg).unwrap();
    // the optimum over alternating words of length ≤ 31 is the published word
    assert_eq!(res.word.to_string(), U31);
    assert!((res.achieved - 8.1e-3).abs() <= 0.05e-3, "{}", res.achieved);
    assert!((dist(&target, &res.word.eval()) - res.achieved).abs() < 1e-12);
    assert!(res.word.is_canonical() && res.word.len() <= 31);
    assert!(!res.identity_optimal);
    let first = res.first_improvement.expect("some word beats the identity");
    assert!(first.distance < baseline_distance(&target));
    // the published word is among the candidates, so the optimum is at least as good
    let u31: GateWord = U31.parse().unwrap();
    assert!(res.achieved <= dist(&target, &u31.eval()) + 1e-12);
}

#[test]
fn meet_in_middle_agrees_on_alternating_words() {
    let target = rotation(RotationTarget::new(7));
    for len in [15usize, 16] {
        let mut cfg = SearchConfig::new(target, len);
        cfg.alphabet = Alphabet::AlternatingHT;
        let ex = search(&cfg).unwrap();
        cfg.strategy = Strategy::MeetInMiddle;
        let mitm = search(&cfg).unwrap();
        assert!(mitm.achieved <= ex.achieved + 1e-12, "len={len}");
        assert!(mitm.word.is_canonical());
    }
}

#[test]
fn gate_count_table_is_monotone() {
    let rows = gate_count_scaling_report(0..=5, GateCountBudget { full_max_length: 7, alternating_max_length: 30 }).unwrap();
    assert_eq!(rows[2].length, Some(1));
    assert!(rows[2].exact);
    let lengths: Vec<usize> = rows.iter().map(|r| r.length.expect("within budget")).collect();
    for w in lengths.windows(2) {
        assert!(w[0] <= w[1], "{lengths:?}");
    }
    for row in &rows {
        assert!(row.achieved <= row.epsilon);
    }
}
