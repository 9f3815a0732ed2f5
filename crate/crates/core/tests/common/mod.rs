//! Shared helpers for the integration suites.

use fgprim_core::whitehead::{all_moves, WhiteheadMove};
use fgprim_core::{Alphabet, CyclicWord, Word};
use proptest::prelude::*;

pub fn ab2() -> Alphabet {
    Alphabet::new(2).unwrap()
}

pub fn word_from_codes(codes: &[u8]) -> Word {
    let text: String = codes
        .iter()
        .map(|&c| ['a', 'A', 'b', 'B'][c as usize % 4])
        .collect();
    Word::parse(ab2(), &text).unwrap()
}

/// Raw (unreduced) letter codes over the rank-2 alphabet.
pub fn arb_codes(max_len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..4, 0..=max_len)
}

/// A freely reduced word of length at most `max_len` (reduction can shorten
/// the raw input).
pub fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
    arb_codes(max_len).prop_map(|codes| word_from_codes(&codes))
}

/// A nonempty cyclically reduced word.
pub fn arb_cyclic(max_len: usize) -> impl Strategy<Value = CyclicWord> {
    arb_codes(max_len).prop_filter_map("cyclic core is empty", |codes| {
        let (core, _) = word_from_codes(&codes).cyclic_reduce();
        if core.is_empty() {
            None
        } else {
            Some(core)
        }
    })
}

/// One of the twelve rank-2 Whitehead moves.
pub fn arb_move() -> impl Strategy<Value = WhiteheadMove> {
    (0..12usize).prop_map(|i| all_moves(ab2())[i].clone())
}
