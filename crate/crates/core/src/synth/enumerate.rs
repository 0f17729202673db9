//! Depth-first enumeration of canonical gate words of a fixed length.
//!
//! Children are visited in ascending label order (`H S T X Z s t`), so words of
//! one length come out in lexicographic order of their serialisation.

use alloc::vec::Vec;

use crate::su2::{diagonal_block, Gate, Unitary2};

/// Word alphabet of the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Alphabet {
    /// All seven generators, canonical words only.
    #[default]
    Full,
    /// Words alternating between `H` and one of `T`, `T†`.
    AlternatingHT,
}

/// Generators sorted by serialised label.
pub(crate) const LABEL_ORDER: [Gate; 7] = [Gate::H, Gate::S, Gate::T, Gate::X, Gate::Z, Gate::Sdg, Gate::Tdg];
const ALTERNATING_ORDER: [Gate; 3] = [Gate::H, Gate::T, Gate::Tdg];

/// Whether `next` may follow `word` in a canonical word of the alphabet.
pub(crate) fn may_follow(alphabet: Alphabet, word: &[Gate], next: Gate) -> bool {
    let last = word.last().copied();
    match alphabet {
        Alphabet::AlternatingHT => match last {
            None => true,
            Some(Gate::H) => next != Gate::H,
            Some(_) => next == Gate::H,
        },
        Alphabet::Full => {
            let Some(last) = last else { return true };
            match (last.eighth_turns(), next.eighth_turns()) {
                (None, None) => last != next,
                (None, Some(_)) | (Some(_), None) => true,
                (Some(a), Some(b)) => {
                    // a diagonal run is canonical only as a whole two-gate block
                    let run_len = word.iter().rev().take_while(|g| g.eighth_turns().is_some()).count();
                    run_len == 1 && diagonal_block(a + b) == [last, next]
                }
            }
        }
    }
}

fn children(alphabet: Alphabet) -> &'static [Gate] {
    match alphabet {
        Alphabet::Full => &LABEL_ORDER,
        Alphabet::AlternatingHT => &ALTERNATING_ORDER,
    }
}

/// Calls `visit(word, matrix)` for every canonical word of exactly `length`
/// gates whose first gates equal `prefix`. Returns the number of words visited.
pub fn for_each_word<F>(alphabet: Alphabet, length: usize, prefix: &[Gate], mut visit: F) -> u64
where
    F: FnMut(&[Gate], &Unitary2),
{
    let mut word: Vec<Gate> = Vec::with_capacity(length);
    let mut acc = Unitary2::IDENTITY;
    for &g in prefix.iter().take(length) {
        if !may_follow(alphabet, &word, g) {
            return 0;
        }
        word.push(g);
        acc = g.matrix() * acc;
    }
    let mut count = 0;
    recurse(alphabet, length, &mut word, acc, &mut visit, &mut count);
    count
}

fn recurse<F>(alphabet: Alphabet, length: usize, word: &mut Vec<Gate>, acc: Unitary2, visit: &mut F, count: &mut u64)
where
    F: FnMut(&[Gate], &Unitary2),
{
    if word.len() == length {
        *count += 1;
        visit(word, &acc);
        return;
    }
    for &g in children(alphabet) {
        if may_follow(alphabet, word, g) {
            word.push(g);
            recurse(alphabet, length, word, g.matrix() * acc, visit, count);
            word.pop();
        }
    }
}

/// Every canonical word of length `≤ max_length`, shortest first.
pub fn words_up_to(alphabet: Alphabet, max_length: usize) -> Vec<(Vec<Gate>, Unitary2)> {
    let mut out = Vec::new();
    for len in 0..=max_length {
        for_each_word(alphabet, len, &[], |w, u| out.push((w.to_vec(), *u)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::GateWord;
    use alloc::collections::BTreeSet;
    use alloc::string::{String, ToString};

    fn naive_canonical_set(len: usize) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let total = 7usize.pow(len as u32);
        for mut code in 0..total {
            let mut gates = Vec::with_capacity(len);
            for _ in 0..len {
                gates.push(Gate::ALL[code % 7]);
                code /= 7;
            }
            let c = GateWord::new(gates).canonical();
            if c.len() == len {
                out.insert(c.to_string());
            }
        }
        out
    }

    #[test]
    fn matches_naive_enumeration() {
        for len in 0..=6 {
            let mut seen = BTreeSet::new();
            let mut order = Vec::new();
            for_each_word(Alphabet::Full, len, &[], |w, u| {
                let s = GateWord::new(w.to_vec()).to_string();
                assert!(GateWord::new(w.to_vec()).is_canonical(), "{s}");
                assert!(u.max_diff(&GateWord::new(w.to_vec()).eval()) < 1e-12);
                assert!(seen.insert(s.clone()), "duplicate {s}");
                order.push(s);
            });
            assert_eq!(seen, naive_canonical_set(len), "len={len}");
            let mut sorted = order.clone();
            sorted.sort();
            assert_eq!(order, sorted, "lexicographic order at len={len}");
        }
    }

    #[test]
    fn alternating_counts() {
        // length 2k+1 starting with H: 2^k; starting with T/t: 2^(k+1)
        let mut n = 0;
        for_each_word(Alphabet::AlternatingHT, 5, &[], |_, _| n += 1);
        assert_eq!(n, 4 + 8);
        let mut found = false;
        for_each_word(Alphabet::AlternatingHT, 31, &[Gate::H, Gate::T, Gate::H, Gate::Tdg], |w, _| {
            found |= GateWord::new(w.to_vec()).to_string() == crate::su2::U31;
        });
        assert!(found);
    }

    #[test]
    fn prefix_partition_covers_everything() {
        let mut all = 0;
        for_each_word(Alphabet::Full, 5, &[], |_, _| all += 1);
        let parts: u64 = LABEL_ORDER.iter().map(|&g| for_each_word(Alphabet::Full, 5, &[g], |_, _| {})).sum();
        assert_eq!(all, parts);
        // a non-canonical prefix yields nothing
        assert_eq!(for_each_word(Alphabet::Full, 4, &[Gate::H, Gate::H], |_, _| {}), 0);
    }
}
