//! Type-II Whitehead automorphisms and the length-descent primitivity
//! oracle.
//!
//! A move `(a, A)` with `a ∈ A`, `a⁻¹ ∉ A` acts letterwise: the multiplier
//! and its inverse are fixed, and every other letter x maps to
//! `a^{e1} · x · a^{e2}` with `e1 = 1` iff `x⁻¹ ∈ A` and `e2 = -1` iff
//! `x ∈ A`. A cyclic word is primitive exactly when greedy descent through
//! these moves reaches cyclic length 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{
    cyclic_core_span, for_each_reduced, partition_prefixes, push_reduced, Alphabet, CyclicWord,
    Letter, Word,
};

/// A type-II Whitehead automorphism: multiplier letter plus letter subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WhiteheadMove {
    alphabet: Alphabet,
    multiplier: Letter,
    set: u16,
}

impl WhiteheadMove {
    pub fn new(alphabet: Alphabet, multiplier: Letter, set: &[Letter]) -> Result<WhiteheadMove> {
        if !alphabet.contains(multiplier) {
            return Err(Error::Domain("multiplier outside alphabet".into()));
        }
        let mut mask = 0u16;
        for &l in set {
            if !alphabet.contains(l) {
                return Err(Error::Domain("set letter outside alphabet".into()));
            }
            mask |= 1 << l.code();
        }
        let m = WhiteheadMove {
            alphabet,
            multiplier,
            set: mask,
        };
        if !m.contains(multiplier) {
            return Err(Error::Domain("multiplier must belong to the set".into()));
        }
        if m.contains(multiplier.inverse()) {
            return Err(Error::Domain(
                "the multiplier's inverse may not belong to the set".into(),
            ));
        }
        if mask == 1 << multiplier.code() {
            return Err(Error::Domain("the singleton set gives the identity".into()));
        }
        Ok(m)
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn multiplier(&self) -> Letter {
        self.multiplier
    }

    #[inline]
    pub fn contains(&self, letter: Letter) -> bool {
        self.set >> letter.code() & 1 == 1
    }

    /// Set letters in ascending letter order.
    pub fn set_letters(&self) -> Vec<Letter> {
        self.alphabet
            .letters()
            .filter(|&l| self.contains(l))
            .collect()
    }
}

impl fmt::Display for WhiteheadMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{{", self.multiplier)?;
        for (i, l) in self.set_letters().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}})")
    }
}

/// Every valid move, in a fixed order: multipliers by letter order, subsets
/// by ascending bitmask over the remaining letters. The list has
/// `2p * (2^(2p-2) - 1)` entries.
pub fn all_moves(alphabet: Alphabet) -> Vec<WhiteheadMove> {
    let mut moves = Vec::new();
    for a in alphabet.letters() {
        let others: Vec<Letter> = alphabet
            .letters()
            .filter(|&l| l != a && l != a.inverse())
            .collect();
        for sub in 1u32..(1 << others.len()) {
            let mut mask = 1u16 << a.code();
            for (i, &l) in others.iter().enumerate() {
                if sub >> i & 1 == 1 {
                    mask |= 1 << l.code();
                }
            }
            moves.push(WhiteheadMove {
                alphabet,
                multiplier: a,
                set: mask,
            });
        }
    }
    moves
}

/// Letterwise image table for one move: each letter expands to at most
/// three letters.
#[derive(Clone, Copy)]
struct Expansion {
    len: u8,
    seq: [Letter; 3],
}

fn expansion_table(m: &WhiteheadMove) -> Vec<Expansion> {
    let a = m.multiplier;
    let mut table = Vec::with_capacity(m.alphabet.size() as usize);
    for x in m.alphabet.letters() {
        let mut seq = [x; 3];
        let mut len = 0u8;
        if x == a || x == a.inverse() {
            seq[0] = x;
            len = 1;
        } else {
            if m.contains(x.inverse()) {
                seq[len as usize] = a;
                len += 1;
            }
            seq[len as usize] = x;
            len += 1;
            if m.contains(x) {
                seq[len as usize] = a.inverse();
                len += 1;
            }
        }
        table.push(Expansion { len, seq });
    }
    table
}

fn apply_expansion(table: &[Expansion], input: &[Letter], out: &mut Vec<Letter>) {
    out.clear();
    for &x in input {
        let e = &table[x.code() as usize];
        for i in 0..e.len as usize {
            push_reduced(out, e.seq[i]);
        }
    }
}

/// Image of a reduced word under the automorphism, freely reduced.
pub fn apply(m: &WhiteheadMove, w: &Word) -> Result<Word> {
    if m.alphabet != w.alphabet() {
        return Err(Error::AlphabetMismatch {
            expected: m.alphabet.rank(),
            found: w.alphabet().rank(),
        });
    }
    let table = expansion_table(m);
    let mut out = Vec::with_capacity(2 * w.len());
    apply_expansion(&table, w.letters(), &mut out);
    Ok(Word::reduce(w.alphabet(), &out).expect("image letters stay in the alphabet"))
}

/// Image of a conjugacy class under the automorphism.
pub fn apply_cyclic(m: &WhiteheadMove, c: &CyclicWord) -> CyclicWord {
    assert_eq!(m.alphabet, c.alphabet(), "move and word alphabets differ");
    let table = expansion_table(m);
    let mut out = Vec::with_capacity(2 * c.len());
    apply_expansion(&table, c.letters(), &mut out);
    let (s, e) = cyclic_core_span(&out);
    CyclicWord::from_reduced_rotation(c.alphabet(), out[s..e].to_vec())
}

/// Cyclic length of the image class.
pub fn cyclic_image_length(m: &WhiteheadMove, c: &CyclicWord) -> usize {
    assert_eq!(m.alphabet, c.alphabet(), "move and word alphabets differ");
    let table = expansion_table(m);
    let mut out = Vec::with_capacity(2 * c.len());
    apply_expansion(&table, c.letters(), &mut out);
    let (s, e) = cyclic_core_span(&out);
    e - s
}

/// Greedy length descent: apply the move with the shortest image as long as
/// some move strictly decreases cyclic length (ties broken by move order).
/// Returns the final cyclic word and the move sequence.
pub fn minimize(c: &CyclicWord) -> (CyclicWord, Vec<WhiteheadMove>) {
    let moves = all_moves(c.alphabet());
    let tables: Vec<Vec<Expansion>> = moves.iter().map(expansion_table).collect();
    let mut cur = c.clone();
    let mut trace = Vec::new();
    let mut image = Vec::new();
    while cur.len() > 1 {
        let mut best: Option<(usize, usize)> = None;
        for (i, table) in tables.iter().enumerate() {
            apply_expansion(table, cur.letters(), &mut image);
            let (s, e) = cyclic_core_span(&image);
            let len = e - s;
            if len < cur.len() && best.is_none_or(|(_, bl)| len < bl) {
                best = Some((i, len));
            }
        }
        let Some((i, _)) = best else { break };
        cur = apply_cyclic(&moves[i], &cur);
        trace.push(moves[i].clone());
    }
    (cur, trace)
}

/// True iff the word belongs to some free basis: descent from its cyclic
/// reduction terminates at cyclic length 1. The empty word is not primitive.
pub fn is_primitive(w: &Word) -> bool {
    let (core, _) = w.cyclic_reduce();
    if core.is_empty() {
        return false;
    }
    minimize(&core).0.len() == 1
}

/// Reusable descent state for bulk scans: move tables built once, buffers
/// recycled across words.
pub struct Oracle {
    tables: Vec<Vec<Expansion>>,
    work: Vec<Letter>,
    image: Vec<Letter>,
}

impl Oracle {
    pub fn new(alphabet: Alphabet) -> Oracle {
        let tables = all_moves(alphabet).iter().map(expansion_table).collect();
        Oracle {
            tables,
            work: Vec::new(),
            image: Vec::new(),
        }
    }

    /// Primitivity of a freely reduced letter sequence.
    pub fn is_primitive_reduced(&mut self, letters: &[Letter]) -> bool {
        let (s, e) = cyclic_core_span(letters);
        self.work.clear();
        self.work.extend_from_slice(&letters[s..e]);
        if self.work.is_empty() {
            return false;
        }
        loop {
            let n = self.work.len();
            if n == 1 {
                return true;
            }
            let mut best_len = n;
            let mut best_move = usize::MAX;
            for (i, table) in self.tables.iter().enumerate() {
                apply_expansion(table, &self.work, &mut self.image);
                let (s, e) = cyclic_core_span(&self.image);
                if e - s < best_len {
                    best_len = e - s;
                    best_move = i;
                }
            }
            if best_move == usize::MAX {
                return false;
            }
            apply_expansion(&self.tables[best_move], &self.work, &mut self.image);
            let (s, e) = cyclic_core_span(&self.image);
            self.work.clear();
            self.work.extend_from_slice(&self.image[s..e]);
        }
    }
}

/// Exact per-length tallies from an exhaustive oracle scan.
pub struct ScanCounts {
    /// All reduced words, by length (index 0 = length 0).
    pub all: Vec<u128>,
    /// Words the oracle declares primitive.
    pub primitive: Vec<u128>,
    /// Primitive words that are additionally cyclically reduced.
    pub cyclically_reduced_primitive: Vec<u128>,
}

/// Scan every reduced word of length 0..=n_max, testing primitivity with
/// the descent oracle. Work is split over `threads` workers (0 = use all
/// available cores) by enumeration-prefix partitions; per-partition tallies
/// are merged in partition order, so the result is identical for every
/// thread count.
pub fn scan_primitive_counts(alphabet: Alphabet, n_max: u32, threads: usize) -> ScanCounts {
    let threads = if threads == 0 {
        std::thread::available_parallelism().map_or(1, |p| p.get())
    } else {
        threads
    };
    let mut counts = ScanCounts {
        all: vec![0; n_max as usize + 1],
        primitive: vec![0; n_max as usize + 1],
        cyclically_reduced_primitive: vec![0; n_max as usize + 1],
    };
    for n in 0..=n_max as usize {
        let parts = partition_prefixes(alphabet, n);
        let workers = threads.clamp(1, parts.len());
        let mut merged: Vec<Option<(u128, u128, u128)>> = vec![None; parts.len()];
        std::thread::scope(|scope| {
            let parts = &parts;
            let mut handles = Vec::with_capacity(workers);
            for w in 0..workers {
                handles.push(scope.spawn(move || {
                    let mut oracle = Oracle::new(alphabet);
                    let mut out = Vec::new();
                    let mut idx = w;
                    while idx < parts.len() {
                        out.push((idx, scan_partition(alphabet, n, &parts[idx], &mut oracle)));
                        idx += workers;
                    }
                    out
                }));
            }
            for h in handles {
                for (idx, c) in h.join().expect("scan worker panicked") {
                    merged[idx] = Some(c);
                }
            }
        });
        for c in merged {
            let (a, p, cr) = c.expect("partition not scanned");
            counts.all[n] += a;
            counts.primitive[n] += p;
            counts.cyclically_reduced_primitive[n] += cr;
        }
    }
    counts
}

fn scan_partition(
    alphabet: Alphabet,
    n: usize,
    prefix: &[Letter],
    oracle: &mut Oracle,
) -> (u128, u128, u128) {
    let mut all = 0u128;
    let mut prim = 0u128;
    let mut cyc = 0u128;
    for_each_reduced(alphabet, n, prefix, &mut |letters| {
        all += 1;
        if oracle.is_primitive_reduced(letters) {
            prim += 1;
            let cyclically_reduced =
                letters.len() < 2 || !letters[letters.len() - 1].is_inverse_of(letters[0]);
            if cyclically_reduced {
                cyc += 1;
            }
        }
    });
    (all, prim, cyc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(ab2(), text).unwrap()
    }

    fn cyc(text: &str) -> CyclicWord {
        let word = w(text);
        CyclicWord::new(ab2(), word.letters()).unwrap()
    }

    fn mv(mult: char, set: &str) -> WhiteheadMove {
        let a = Letter::from_char(mult, ab2()).unwrap();
        let letters: Vec<Letter> = set
            .chars()
            .map(|c| Letter::from_char(c, ab2()).unwrap())
            .collect();
        WhiteheadMove::new(ab2(), a, &letters).unwrap()
    }

    #[test]
    fn move_counts() {
        assert_eq!(all_moves(ab2()).len(), 12);
        assert_eq!(all_moves(Alphabet::new(3).unwrap()).len(), 90);
    }

    #[test]
    fn moves_are_valid() {
        for m in all_moves(ab2()) {
            assert!(m.contains(m.multiplier()));
            assert!(!m.contains(m.multiplier().inverse()));
            assert!(m.set_letters().len() >= 2);
        }
    }

    #[test]
    fn move_constructor_rejects_bad_sets() {
        let a = Letter::from_char('a', ab2()).unwrap();
        let b = Letter::from_char('b', ab2()).unwrap();
        assert!(WhiteheadMove::new(ab2(), a, &[b]).is_err()); // a not in set
        assert!(WhiteheadMove::new(ab2(), a, &[a]).is_err()); // identity
        assert!(WhiteheadMove::new(ab2(), a, &[a, a.inverse()]).is_err());
    }

    #[test]
    fn move_display() {
        assert_eq!(mv('a', "abB").to_string(), "(a|{a,b,B})");
    }

    #[test]
    fn apply_examples() {
        let m = mv('a', "ab");
        assert_eq!(apply(&m, &w("b")).unwrap().to_string(), "bA");
        assert_eq!(apply(&m, &w("a")).unwrap().to_string(), "a");
        let m = mv('a', "abB");
        assert_eq!(apply(&m, &w("b")).unwrap().to_string(), "abA");
    }

    #[test]
    fn apply_respects_inversion() {
        for m in all_moves(ab2()) {
            for text in ["ab", "aab", "abAB", "Babb"] {
                let word = w(text);
                assert_eq!(
                    apply(&m, &word.invert()).unwrap(),
                    apply(&m, &word).unwrap().invert(),
                    "move {m} word {word}"
                );
            }
        }
    }

    #[test]
    fn apply_alphabet_mismatch() {
        let m = mv('a', "ab");
        let w3 = Word::parse(Alphabet::new(3).unwrap(), "ac").unwrap();
        assert!(matches!(
            apply(&m, &w3),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn cyclic_image_length_examples() {
        assert_eq!(cyclic_image_length(&mv('a', "ab"), &cyc("ab")), 1);
        // the multiplier letter and its inverse are fixed by the move
        for m in all_moves(ab2()) {
            let mult = CyclicWord::new(ab2(), &[m.multiplier()]).unwrap();
            let mult_inv = CyclicWord::new(ab2(), &[m.multiplier().inverse()]).unwrap();
            assert_eq!(cyclic_image_length(&m, &mult), 1, "move {m}");
            assert_eq!(cyclic_image_length(&m, &mult_inv), 1, "move {m}");
        }
        // generators never map below cyclic length 1
        for m in all_moves(ab2()) {
            for text in ["a", "A", "b", "B"] {
                assert!(
                    cyclic_image_length(&m, &cyc(text)) >= 1,
                    "move {m} letter {text}"
                );
            }
        }
        // multiplier fixed, other letters absent: length unchanged
        assert_eq!(cyclic_image_length(&mv('a', "ab"), &cyc("aaaaaa")), 6);
        // rank 3: set letter absent from the word in either sign
        let a3 = Alphabet::new(3).unwrap();
        let word = Word::parse(a3, "ababab").unwrap();
        let c3 = CyclicWord::new(a3, word.letters()).unwrap();
        let a = Letter::from_char('a', a3).unwrap();
        let c = Letter::from_char('c', a3).unwrap();
        let m = WhiteheadMove::new(a3, a, &[a, c]).unwrap();
        assert_eq!(cyclic_image_length(&m, &c3), 6);
    }

    #[test]
    fn minimize_examples() {
        let (min, trace) = minimize(&cyc("a"));
        assert_eq!(min.len(), 1);
        assert!(trace.is_empty());

        let (min, trace) = minimize(&cyc("aabab"));
        assert_eq!(min.len(), 1);
        assert!(!trace.is_empty());

        let (min, trace) = minimize(&cyc("aabbb"));
        assert_eq!(min.len(), 5);
        assert!(trace.is_empty());
    }

    #[test]
    fn is_primitive_examples() {
        assert!(is_primitive(&w("a")));
        assert!(!is_primitive(&w("abAB")));
        assert!(is_primitive(&w("Baababb"))); // B (aabab) b
        assert!(!is_primitive(&w("")));
        assert!(!is_primitive(&w("aabb")));
    }

    #[test]
    fn oracle_matches_public_api() {
        let mut oracle = Oracle::new(ab2());
        for n in 0..=6u32 {
            for word in crate::words::enumerate_reduced(ab2(), n) {
                assert_eq!(
                    oracle.is_primitive_reduced(word.letters()),
                    is_primitive(&word),
                    "word {word}"
                );
            }
        }
    }

    #[test]
    fn scan_counts_small() {
        let counts = scan_primitive_counts(ab2(), 6, 2);
        assert_eq!(counts.primitive[1..], [4, 8, 32, 48, 152, 160]);
        assert_eq!(
            counts.cyclically_reduced_primitive[1..],
            [4, 8, 24, 32, 80, 48]
        );
        assert_eq!(counts.all[1..], [4, 12, 36, 108, 324, 972]);
        assert_eq!(counts.primitive[0], 0);
    }

    #[test]
    fn scan_thread_counts_agree() {
        let one = scan_primitive_counts(ab2(), 5, 1);
        let four = scan_primitive_counts(ab2(), 5, 4);
        assert_eq!(one.primitive, four.primitive);
        assert_eq!(
            one.cyclically_reduced_primitive,
            four.cyclically_reduced_primitive
        );
        assert_eq!(one.all, four.all);
    }
}
