//! Free-group words over a rank-p alphabet: free and cyclic reduction,
//! canonical cyclic representatives, deterministic enumeration, and exact
//! sphere/ball counts.
//!
//! Text syntax: lowercase ASCII letters `a, b, c, ...` are the generators in
//! order, the matching uppercase letter is the inverse (`A` = a⁻¹), and the
//! empty string is the identity. No separators.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const MIN_RANK: u32 = 2;
pub const MAX_RANK: u32 = 8;

/// A generator or inverse generator. Generator `i` is encoded as `2i`, its
/// inverse as `2i + 1`, so inversion is a single XOR and the derived `Ord`
/// is the fixed total order `a < A < b < B < ...` used for canonical
/// rotations and enumeration.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter(u8);

impl Letter {
    pub fn generator(index: u32) -> Letter {
        debug_assert!(index < MAX_RANK);
        Letter((index as u8) << 1)
    }

    #[inline]
    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    #[inline]
    pub fn is_inverse_of(self, other: Letter) -> bool {
        self.0 ^ 1 == other.0
    }

    /// Index of the underlying generator, ignoring sign.
    #[inline]
    pub fn generator_index(self) -> u32 {
        u32::from(self.0 >> 1)
    }

    /// True for a generator, false for an inverse generator.
    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    #[inline]
    pub(crate) fn code(self) -> u8 {
        self.0
    }

    pub fn to_char(self) -> char {
        let base = if self.is_positive() { b'a' } else { b'A' };
        (base + (self.0 >> 1)) as char
    }

    pub fn from_char(c: char, alphabet: Alphabet) -> Result<Letter> {
        let letter = match c {
            'a'..='z' => Letter((c as u8 - b'a') << 1),
            'A'..='Z' => Letter(((c as u8 - b'A') << 1) | 1),
            _ => return Err(Error::Parse(format!("unknown letter symbol {c:?}"))),
        };
        if letter.generator_index() >= alphabet.rank() {
            return Err(Error::Parse(format!(
                "letter {c:?} is outside the rank-{} alphabet",
                alphabet.rank()
            )));
        }
        Ok(letter)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// The alphabet of a free group of rank p: the p generators and their
/// inverses, 2p letters in all.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    rank: u8,
}

impl Alphabet {
    /// Ranks outside `2..=8` are rejected; the Whitehead move list grows as
    /// `2p * 2^(2p-2)` and is unusable beyond that.
    pub fn new(rank: u32) -> Result<Alphabet> {
        if !(MIN_RANK..=MAX_RANK).contains(&rank) {
            return Err(Error::InvalidRank(rank));
        }
        Ok(Alphabet { rank: rank as u8 })
    }

    #[inline]
    pub fn rank(self) -> u32 {
        u32::from(self.rank)
    }

    /// Number of letters, `2p`.
    #[inline]
    pub fn size(self) -> u32 {
        2 * self.rank()
    }

    #[inline]
    pub fn contains(self, letter: Letter) -> bool {
        letter.generator_index() < self.rank()
    }

    /// All letters in the fixed total order `a, A, b, B, ...`.
    pub fn letters(self) -> impl Iterator<Item = Letter> {
        (0..self.size() as u8).map(Letter)
    }
}

/// Free reduction by stack: push letters, cancelling adjacent inverse pairs.
pub(crate) fn push_reduced(out: &mut Vec<Letter>, letter: Letter) {
    if out.last().is_some_and(|&last| last.is_inverse_of(letter)) {
        out.pop();
    } else {
        out.push(letter);
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty(alphabet: Alphabet) -> Word {
        Word {
            alphabet,
            letters: Vec::new(),
        }
    }

    /// Freely reduce an arbitrary letter sequence. The result is the unique
    /// reduced form; reduction is idempotent.
    pub fn reduce(alphabet: Alphabet, raw: &[Letter]) -> Result<Word> {
        for &l in raw {
            if !alphabet.contains(l) {
                return Err(Error::Parse(format!(
                    "letter {} is outside the rank-{} alphabet",
                    l,
                    alphabet.rank()
                )));
            }
        }
        let mut letters = Vec::with_capacity(raw.len());
        for &l in raw {
            push_reduced(&mut letters, l);
        }
        Ok(Word { alphabet, letters })
    }

    pub fn parse(alphabet: Alphabet, text: &str) -> Result<Word> {
        let mut raw = Vec::with_capacity(text.len());
        for c in text.chars() {
            raw.push(Letter::from_char(c, alphabet)?);
        }
        Word::reduce(alphabet, &raw)
    }

    /// Wrap a letter sequence that is already freely reduced.
    pub(crate) fn from_reduced(alphabet: Alphabet, letters: Vec<Letter>) -> Word {
        debug_assert!(letters.windows(2).all(|w| !w[0].is_inverse_of(w[1])));
        debug_assert!(letters.iter().all(|&l| alphabet.contains(l)));
        Word { alphabet, letters }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed sequence with every letter inverted; an involution.
    pub fn invert(&self) -> Word {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        Word {
            alphabet: self.alphabet,
            letters,
        }
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.rank(),
                found: other.alphabet.rank(),
            });
        }
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        Ok(Word {
            alphabet: self.alphabet,
            letters,
        })
    }

    /// Reduced conjugate `u · self · u⁻¹`.
    pub fn conjugate_by(&self, u: &Word) -> Result<Word> {
        u.concat(self)?.concat(&u.invert())
    }

    /// Split off the maximal conjugating prefix: `self = u · core · u⁻¹`
    /// with the middle part cyclically reduced and
    /// `len = core.len() + 2 * u.len()`. The middle part is returned as its
    /// conjugacy class (canonical rotation); the in-place rotation is the
    /// slice `self[k .. len-k]` for `k = u.len()`.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let (start, end) = cyclic_core_span(&self.letters);
        let core =
            CyclicWord::from_reduced_rotation(self.alphabet, self.letters[start..end].to_vec());
        let conjugator = Word::from_reduced(self.alphabet, self.letters[..start].to_vec());
        (core, conjugator)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Indices of the cyclically reduced middle of a reduced word.
pub(crate) fn cyclic_core_span(letters: &[Letter]) -> (usize, usize) {
    let mut start = 0;
    let mut end = letters.len();
    while end - start >= 2 && letters[start].is_inverse_of(letters[end - 1]) {
        start += 1;
        end -= 1;
    }
    (start, end)
}

/// A cyclically reduced word stored as the least rotation under the letter
/// order, i.e. a canonical conjugacy-class representative.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// Canonicalize a cyclically reduced sequence. Rejects sequences that are
    /// not freely reduced or whose first letter inverts the last.
    pub fn new(alphabet: Alphabet, letters: &[Letter]) -> Result<CyclicWord> {
        for &l in letters {
            if !alphabet.contains(l) {
                return Err(Error::Parse(format!(
                    "letter {} is outside the rank-{} alphabet",
                    l,
                    alphabet.rank()
                )));
            }
        }
        let reduced = letters.windows(2).all(|w| !w[0].is_inverse_of(w[1]));
        let cyclic = letters.len() < 2 || !letters[letters.len() - 1].is_inverse_of(letters[0]);
        if !reduced || !cyclic {
            return Err(Error::Domain("sequence is not cyclically reduced".into()));
        }
        Ok(CyclicWord::from_reduced_rotation(
            alphabet,
            letters.to_vec(),
        ))
    }

    /// Canonicalize a rotation known to be cyclically reduced.
    pub(crate) fn from_reduced_rotation(
        alphabet: Alphabet,
        mut letters: Vec<Letter>,
    ) -> CyclicWord {
        let k = least_rotation(&letters);
        letters.rotate_left(k);
        CyclicWord { alphabet, letters }
    }

    #[inline]
    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// The canonical representative.
    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn to_word(&self) -> Word {
        Word::from_reduced(self.alphabet, self.letters.clone())
    }

    /// All rotations of the representative, each a reduced word.
    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.letters.len()).map(move |k| {
            let mut v = self.letters[k..].to_vec();
            v.extend_from_slice(&self.letters[..k]);
            Word::from_reduced(self.alphabet, v)
        })
    }

    pub fn invert(&self) -> CyclicWord {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| l.inverse()).collect();
        CyclicWord::from_reduced_rotation(self.alphabet, inv)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Booth's least-rotation algorithm. Returns the earliest offset whose
/// rotation is lexicographically least.
pub(crate) fn least_rotation(s: &[Letter]) -> usize {
    let n = s.len();
    if n <= 1 {
        return 0;
    }
    let at = |i: usize| s[i % n];
    let mut fail = vec![usize::MAX; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != usize::MAX && sj != at(k + i + 1) {
            if sj < at(k + i + 1) {
                k = j - i - 1;
            }
            i = fail[i];
        }
        if i == usize::MAX && sj != at(k) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = usize::MAX;
        } else if i == usize::MAX {
            fail[j - k] = 0;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// Number of freely reduced words of exact length n: `2p (2p-1)^(n-1)`,
/// and 1 for n = 0.
pub fn count_reduced(alphabet: Alphabet, n: u32) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    let size = BigUint::from(alphabet.size());
    let step = BigUint::from(alphabet.size() - 1);
    size * step.pow(n - 1)
}

/// Number of freely reduced words of length at most n. For rank 2 this is
/// `2 * 3^n - 1`.
pub fn count_ball(alphabet: Alphabet, n: u32) -> BigUint {
    let mut total = BigUint::from(0u32);
    for k in 0..=n {
        total += count_reduced(alphabet, k);
    }
    total
}

/// Every freely reduced word of exact length `n` extending `prefix`, visited
/// in depth-first lexicographic letter order. `prefix` must itself be
/// reduced. The visit order for a fixed prefix is a contiguous block of the
/// global enumeration order, which is what makes prefix partitioning
/// deterministic.
pub fn for_each_reduced(
    alphabet: Alphabet,
    n: usize,
    prefix: &[Letter],
    visit: &mut dyn FnMut(&[Letter]),
) {
    debug_assert!(prefix.windows(2).all(|w| !w[0].is_inverse_of(w[1])));
    if prefix.len() > n {
        return;
    }
    let mut buf = prefix.to_vec();
    buf.reserve(n - prefix.len());
    descend(alphabet, n, &mut buf, visit);
}

fn descend(alphabet: Alphabet, n: usize, buf: &mut Vec<Letter>, visit: &mut dyn FnMut(&[Letter])) {
    if buf.len() == n {
        visit(buf);
        return;
    }
    let forbidden = buf.last().map(|l| l.inverse());
    for code in 0..alphabet.size() as u8 {
        let letter = Letter(code);
        if Some(letter) == forbidden {
            continue;
        }
        buf.push(letter);
        descend(alphabet, n, buf, visit);
        buf.pop();
    }
}

/// Deterministic prefix partitions that jointly cover the length-n reduced
/// words exactly once, in enumeration order. Scans merge per-partition
/// results in this order, so totals do not depend on how partitions are
/// assigned to threads.
pub fn partition_prefixes(alphabet: Alphabet, n: usize) -> Vec<Vec<Letter>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    if n == 1 {
        return alphabet.letters().map(|l| vec![l]).collect();
    }
    let mut parts = Vec::new();
    for first in alphabet.letters() {
        for second in alphabet.letters() {
            if !first.is_inverse_of(second) {
                parts.push(vec![first, second]);
            }
        }
    }
    parts
}

/// Iterator over all freely reduced words of exact length n, in the same
/// deterministic order as [`for_each_reduced`] with an empty prefix.
pub fn enumerate_reduced(alphabet: Alphabet, n: u32) -> ReducedWords {
    ReducedWords {
        alphabet,
        n: n as usize,
        state: None,
        done: false,
    }
}

pub struct ReducedWords {
    alphabet: Alphabet,
    n: usize,
    state: Option<Vec<Letter>>,
    done: bool,
}

fn smallest_allowed(prev: Option<Letter>) -> Letter {
    match prev {
        Some(p) if p.inverse() == Letter(0) => Letter(1),
        _ => Letter(0),
    }
}

impl Iterator for ReducedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        match &mut self.state {
            None => {
                let mut first = Vec::with_capacity(self.n);
                for i in 0..self.n {
                    let prev = if i == 0 { None } else { Some(first[i - 1]) };
                    let l = smallest_allowed(prev);
                    first.push(l);
                }
                self.state = Some(first.clone());
                if self.n == 0 {
                    self.done = true;
                }
                Some(Word::from_reduced(self.alphabet, first))
            }
            Some(codes) => {
                let size = self.alphabet.size() as u8;
                let mut i = self.n;
                loop {
                    if i == 0 {
                        self.done = true;
                        return None;
                    }
                    i -= 1;
                    let forbidden = if i == 0 {
                        None
                    } else {
                        Some(codes[i - 1].inverse())
                    };
                    let mut cand = codes[i].code() + 1;
                    let next = loop {
                        if cand >= size {
                            break None;
                        }
                        let l = Letter(cand);
                        if Some(l) != forbidden {
                            break Some(l);
                        }
                        cand += 1;
                    };
                    if let Some(l) = next {
                        codes[i] = l;
                        for j in i + 1..self.n {
                            let prev = Some(codes[j - 1]);
                            codes[j] = smallest_allowed(prev);
                        }
                        return Some(Word::from_reduced(self.alphabet, codes.clone()));
                    }
                }
            }
        }
    }
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

    #[test]
    fn rank_bounds() {
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(2).is_ok());
        assert!(Alphabet::new(8).is_ok());
        assert!(Alphabet::new(9).is_err());
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(w("aA").to_string(), "");
        assert_eq!(w("abBa").to_string(), "aa");
        assert_eq!(w("").to_string(), "");
    }

    #[test]
    fn reduce_rejects_out_of_alphabet() {
        assert!(Word::parse(ab2(), "ac").is_err());
        assert!(Word::parse(ab2(), "a b").is_err());
        assert!(Word::parse(ab2(), "a1").is_err());
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("ab").invert().to_string(), "BA");
        assert_eq!(w("").invert().to_string(), "");
        assert_eq!(w("a").invert().to_string(), "A");
        assert_eq!(w("aBab").invert().invert(), w("aBab"));
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("baB").cyclic_reduce();
        assert_eq!(core.to_string(), "a");
        assert_eq!(conj.to_string(), "b");

        let (core, conj) = w("ab").cyclic_reduce();
        assert_eq!(core.to_string(), "ab");
        assert_eq!(conj.to_string(), "");

        let (core, conj) = w("Baab").cyclic_reduce();
        assert_eq!(core.to_string(), "aa");
        assert_eq!(conj.to_string(), "B");
    }

    #[test]
    fn cyclic_reduce_length_identity() {
        for text in ["baB", "ab", "Baab", "abABabbA"] {
            let word = w(text);
            let (core, conj) = word.cyclic_reduce();
            assert_eq!(word.len(), core.len() + 2 * conj.len(), "{text}");
            // in-place middle slice rotates to the canonical representative
            let k = conj.len();
            let middle = &word.letters()[k..word.len() - k];
            assert_eq!(CyclicWord::new(ab2(), middle).unwrap(), core);
        }
    }

    #[test]
    fn canonical_rotation_is_least_and_earliest() {
        let c = CyclicWord::new(ab2(), w("ba").letters()).unwrap();
        assert_eq!(c.to_string(), "ab");
        // periodic word: earliest offset wins, representation stable
        let c = CyclicWord::new(ab2(), w("abab").letters()).unwrap();
        assert_eq!(c.to_string(), "abab");
        let c = CyclicWord::new(ab2(), w("bAbA").letters()).unwrap();
        assert_eq!(c.to_string(), "AbAb");
    }

    #[test]
    fn cyclic_word_rejects_non_cyclically_reduced() {
        assert!(CyclicWord::new(ab2(), w("abA").letters()).is_err());
    }

    #[test]
    fn booth_matches_naive_on_short_words() {
        fn naive(s: &[Letter]) -> usize {
            (0..s.len())
                .min_by(|&i, &j| {
                    let ri: Vec<Letter> = s[i..].iter().chain(&s[..i]).copied().collect();
                    let rj: Vec<Letter> = s[j..].iter().chain(&s[..j]).copied().collect();
                    ri.cmp(&rj).then(i.cmp(&j))
                })
                .unwrap_or(0)
        }
        let a2 = ab2();
        for n in 1..=6u32 {
            for word in enumerate_reduced(a2, n) {
                let ls = word.letters();
                if ls.len() >= 2 && ls[ls.len() - 1].is_inverse_of(ls[0]) {
                    continue;
                }
                assert_eq!(least_rotation(ls), naive(ls), "word {word}");
            }
        }
    }

    #[test]
    fn count_reduced_examples() {
        let a2 = ab2();
        let a3 = Alphabet::new(3).unwrap();
        assert_eq!(count_reduced(a2, 1), BigUint::from(4u32));
        assert_eq!(count_reduced(a2, 2), BigUint::from(12u32));
        assert_eq!(count_reduced(a3, 2), BigUint::from(30u32));
        assert_eq!(count_ball(a2, 0), BigUint::from(1u32));
        assert_eq!(count_ball(a2, 2), BigUint::from(17u32));
        assert_eq!(count_ball(a2, 5), BigUint::from(485u32));
    }

    #[test]
    fn enumeration_matches_counts_and_is_sorted() {
        let a2 = ab2();
        for n in 0..=6u32 {
            let words: Vec<Word> = enumerate_reduced(a2, n).collect();
            assert_eq!(BigUint::from(words.len()), count_reduced(a2, n), "n={n}");
            for pair in words.windows(2) {
                assert!(pair[0].letters() < pair[1].letters(), "order at n={n}");
            }
        }
        assert_eq!(enumerate_reduced(a2, 0).count(), 1);
        assert_eq!(enumerate_reduced(a2, 1).count(), 4);
        assert_eq!(enumerate_reduced(a2, 3).count(), 36);
    }

    #[test]
    fn visitor_agrees_with_iterator() {
        let a2 = ab2();
        for n in 0..=5usize {
            let mut seen = Vec::new();
            for_each_reduced(a2, n, &[], &mut |ls| seen.push(ls.to_vec()));
            let from_iter: Vec<Vec<Letter>> = enumerate_reduced(a2, n as u32)
                .map(|w| w.letters().to_vec())
                .collect();
            assert_eq!(seen, from_iter, "n={n}");
        }
    }

    #[test]
    fn partitions_cover_exactly() {
        let a2 = ab2();
        for n in 0..=5usize {
            let mut by_parts = Vec::new();
            for prefix in partition_prefixes(a2, n) {
                for_each_reduced(a2, n, &prefix, &mut |ls| by_parts.push(ls.to_vec()));
            }
            let mut whole = Vec::new();
            for_each_reduced(a2, n, &[], &mut |ls| whole.push(ls.to_vec()));
            assert_eq!(by_parts, whole, "n={n}");
        }
    }
}
