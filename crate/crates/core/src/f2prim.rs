//! Generation and exact counting of primitive elements in the rank-2 free
//! group.
//!
//! Conjugacy classes of primitives are keyed by their signed coprime
//! exponent-sum vector; the class with positive vector (p, q) is represented
//! by the lower Christoffel word of slope q/p, and the other sign choices by
//! letterwise sign substitution. Raw-word counts come from the class counts
//! by rotation, and from cyclically reduced cores by conjugator extension.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::whitehead::scan_primitive_counts;
use crate::words::{count_reduced, Alphabet, CyclicWord, Letter, Word};

/// Exponent-sum vector (sum over a, sum over b) of a rank-2 word.
pub fn abelianization(w: &Word) -> Result<(i64, i64)> {
    if w.alphabet().rank() != 2 {
        return Err(Error::Domain(format!(
            "abelianization is defined here for rank 2, got rank {}",
            w.alphabet().rank()
        )));
    }
    let mut sums = [0i64; 2];
    for &l in w.letters() {
        let idx = l.generator_index() as usize;
        sums[idx] += if l.is_positive() { 1 } else { -1 };
    }
    Ok((sums[0], sums[1]))
}

/// Largest length handled by [`phi`] and [`christoffel`].
pub const MAX_TOTIENT: u64 = 1_000_000;

/// Euler's totient by trial division.
pub fn phi(n: u64) -> Result<u64> {
    if n == 0 || n > MAX_TOTIENT {
        return Err(Error::Domain(format!(
            "phi requires 1 <= n <= {MAX_TOTIENT}, got {n}"
        )));
    }
    let mut remaining = n;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= remaining {
        if remaining.is_multiple_of(p) {
            while remaining.is_multiple_of(p) {
                remaining /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if remaining > 1 {
        result -= result / remaining;
    }
    Ok(result)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Lower Christoffel word for the coprime pair (p, q): the length-(p+q)
/// word whose i-th letter is `a` when `i*q mod (p+q)` exceeds
/// `(i-1)*q mod (p+q)` and `b` otherwise. It has exponent vector (p, q),
/// is cyclically reduced, and is primitive.
pub fn christoffel(p: u64, q: u64) -> Result<CyclicWord> {
    if p == 0 || q == 0 {
        return Err(Error::Domain("christoffel needs p >= 1 and q >= 1".into()));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Domain(format!(
            "christoffel needs gcd(p, q) = 1, got ({p}, {q})"
        )));
    }
    let n = p + q;
    if n > MAX_TOTIENT {
        return Err(Error::Domain(format!(
            "christoffel length {n} exceeds {MAX_TOTIENT}"
        )));
    }
    let alphabet = Alphabet::new(2).expect("rank 2 is valid");
    let a = Letter::generator(0);
    let b = Letter::generator(1);
    let mut letters = Vec::with_capacity(n as usize);
    let mut prev = 0u64;
    for _ in 1..=n {
        let cur = (prev + q) % n;
        letters.push(if cur > prev { a } else { b });
        prev = cur;
    }
    CyclicWord::new(alphabet, &letters)
}

/// A conjugacy class of primitive elements in the rank-2 free group, keyed
/// by its signed coprime exponent vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimitiveClass {
    vector: (i64, i64),
    representative: CyclicWord,
}

impl PrimitiveClass {
    pub fn vector(&self) -> (i64, i64) {
        self.vector
    }

    pub fn representative(&self) -> &CyclicWord {
        &self.representative
    }

    pub fn cyclic_length(&self) -> usize {
        self.representative.len()
    }

    /// The class of the inverse elements, keyed by the negated vector.
    pub fn inverse_vector(&self) -> (i64, i64) {
        (-self.vector.0, -self.vector.1)
    }
}

fn substitute_signs(c: &CyclicWord, flip_a: bool, flip_b: bool) -> CyclicWord {
    let letters: Vec<Letter> = c
        .letters()
        .iter()
        .map(|&l| {
            let flip = if l.generator_index() == 0 {
                flip_a
            } else {
                flip_b
            };
            if flip {
                l.inverse()
            } else {
                l
            }
        })
        .collect();
    CyclicWord::new(c.alphabet(), &letters).expect("sign substitution preserves cyclic reduction")
}

/// Every primitive conjugacy class of cyclic length at most `n_max`: the
/// four generator classes plus the four sign substitutions of each
/// Christoffel word. Deterministic order: generators first, then by length,
/// slope, and sign.
pub fn enumerate_classes(n_max: u32) -> Result<Vec<PrimitiveClass>> {
    if n_max == 0 {
        return Err(Error::Domain("class enumeration needs n_max >= 1".into()));
    }
    let alphabet = Alphabet::new(2).expect("rank 2 is valid");
    let a = Letter::generator(0);
    let b = Letter::generator(1);
    let mut classes = Vec::new();
    for (vector, letter) in [
        ((1, 0), a),
        ((-1, 0), a.inverse()),
        ((0, 1), b),
        ((0, -1), b.inverse()),
    ] {
        classes.push(PrimitiveClass {
            vector,
            representative: CyclicWord::new(alphabet, &[letter]).expect("single letter"),
        });
    }
    for n in 2..=u64::from(n_max) {
        for p in 1..n {
            let q = n - p;
            if gcd(p, q) != 1 {
                continue;
            }
            let base = christoffel(p, q)?;
            for (flip_a, flip_b) in [(false, false), (false, true), (true, false), (true, true)] {
                let representative = substitute_signs(&base, flip_a, flip_b);
                let sign = |flip: bool, v: u64| if flip { -(v as i64) } else { v as i64 };
                classes.push(PrimitiveClass {
                    vector: (sign(flip_a, p), sign(flip_b, q)),
                    representative,
                });
            }
        }
    }
    Ok(classes)
}

/// Number of cyclically reduced primitive words of exact length n:
/// 4 for n = 1 (the generators and inverses), else `4 n phi(n)` — each of
/// the `4 phi(n)` classes of length n contributes its n distinct rotations.
pub fn count_cyc_reduced_primitive_words(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("counting needs n >= 1".into()));
    }
    if n == 1 {
        return Ok(BigUint::from(4u32));
    }
    Ok(BigUint::from(4u64) * u64::from(n) * phi(u64::from(n))?)
}

/// Number of reduced conjugators u of length k with `u c u⁻¹` reduced, for
/// a fixed cyclically reduced core c of length >= 1: the last letter of u
/// must avoid both the inverse of c's first letter and c's last letter
/// (always two distinct exclusions), earlier letters avoid one each. Hence
/// 1 for k = 0, else `(2p-2) (2p-1)^(k-1)`.
pub fn conjugator_count(alphabet: Alphabet, k: u32) -> BigUint {
    if k == 0 {
        return BigUint::from(1u32);
    }
    let free = BigUint::from(alphabet.size() - 2);
    let step = BigUint::from(alphabet.size() - 1);
    free * step.pow(k - 1)
}

/// Number of primitive words of exact length n in the rank-2 free group:
/// every primitive word splits uniquely as a conjugated cyclically reduced
/// primitive core, so the count is a parity-respecting convolution of core
/// counts with conjugator counts.
pub fn count_primitives(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::Domain("counting needs n >= 1".into()));
    }
    let alphabet = Alphabet::new(2).expect("rank 2 is valid");
    let mut total = BigUint::from(0u32);
    let mut m = n;
    loop {
        let k = (n - m) / 2;
        total += count_cyc_reduced_primitive_words(m)? * conjugator_count(alphabet, k);
        if m <= 2 {
            break;
        }
        m -= 2;
    }
    Ok(total)
}

/// Which population a count table describes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WordSet {
    All,
    Primitive,
    CycPrimitive,
}

impl WordSet {
    pub fn name(self) -> &'static str {
        match self {
            WordSet::All => "all",
            WordSet::Primitive => "primitive",
            WordSet::CycPrimitive => "cyc-primitive",
        }
    }

    pub fn parse(text: &str) -> Result<WordSet> {
        match text {
            "all" => Ok(WordSet::All),
            "primitive" => Ok(WordSet::Primitive),
            "cyc-primitive" => Ok(WordSet::CycPrimitive),
            other => Err(Error::Parse(format!(
                "unknown set {other:?} (expected all, primitive, or cyc-primitive)"
            ))),
        }
    }
}

impl fmt::Display for WordSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exact per-length counts with cumulative sums.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CountTable {
    rank: u32,
    per_length: BTreeMap<u32, BigUint>,
}

#[derive(Serialize)]
struct CountTableJson<'a> {
    rank: u32,
    per_length: BTreeMap<u32, &'a str>,
}

impl CountTable {
    pub fn new(rank: u32, per_length: BTreeMap<u32, BigUint>) -> CountTable {
        CountTable { rank, per_length }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn per_length(&self) -> &BTreeMap<u32, BigUint> {
        &self.per_length
    }

    pub fn get(&self, n: u32) -> Option<&BigUint> {
        self.per_length.get(&n)
    }

    pub fn max_length(&self) -> Option<u32> {
        self.per_length.keys().next_back().copied()
    }

    /// Sum of the per-length counts for lengths at most n. Errors when the
    /// table does not cover n.
    pub fn cumulative(&self, n: u32) -> Result<BigUint> {
        let max_len = self.max_length().unwrap_or(0);
        if self.per_length.is_empty() || n > max_len {
            return Err(Error::Coverage { needed: n, max_len });
        }
        let mut total = BigUint::from(0u32);
        for (_, count) in self.per_length.range(..=n) {
            total += count;
        }
        Ok(total)
    }

    /// CSV with header `n,count`, exact decimal integers.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, count) in &self.per_length {
            out.push_str(&format!("{n},{count}\n"));
        }
        out
    }

    /// JSON `{"rank": p, "per_length": {"n": "count", ...}}` with counts as
    /// decimal strings.
    pub fn to_json(&self) -> String {
        let strings: BTreeMap<u32, String> = self
            .per_length
            .iter()
            .map(|(n, c)| (*n, c.to_string()))
            .collect();
        let view = CountTableJson {
            rank: self.rank,
            per_length: strings.iter().map(|(n, s)| (*n, s.as_str())).collect(),
        };
        serde_json::to_string(&view).expect("count table serializes")
    }
}

/// Closed-form / convolution count table for a set. The primitive sets are
/// rank-2 only.
pub fn count_table(set: WordSet, alphabet: Alphabet, n_max: u32) -> Result<CountTable> {
    let mut per_length = BTreeMap::new();
    match set {
        WordSet::All => {
            for n in 0..=n_max {
                per_length.insert(n, count_reduced(alphabet, n));
            }
        }
        WordSet::Primitive | WordSet::CycPrimitive => {
            if alphabet.rank() != 2 {
                return Err(Error::Domain(format!(
                    "exact {} counts exist only at rank 2; use the brute-force scan for rank {}",
                    set.name(),
                    alphabet.rank()
                )));
            }
            for n in 1..=n_max {
                let count = match set {
                    WordSet::Primitive => count_primitives(n)?,
                    _ => count_cyc_reduced_primitive_words(n)?,
                };
                per_length.insert(n, count);
            }
        }
    }
    Ok(CountTable {
        rank: alphabet.rank(),
        per_length,
    })
}

/// Count table from an exhaustive Whitehead-oracle scan. Works at any rank;
/// cost is the full ball of radius n_max.
pub fn count_table_bruteforce(
    set: WordSet,
    alphabet: Alphabet,
    n_max: u32,
    threads: usize,
) -> CountTable {
    let scan = scan_primitive_counts(alphabet, n_max, threads);
    let pick = |n: usize| match set {
        WordSet::All => scan.all[n],
        WordSet::Primitive => scan.primitive[n],
        WordSet::CycPrimitive => scan.cyclically_reduced_primitive[n],
    };
    let mut per_length = BTreeMap::new();
    let start = if set == WordSet::All { 0 } else { 1 };
    for n in start..=n_max {
        per_length.insert(n, BigUint::from(pick(n as usize)));
    }
    CountTable {
        rank: alphabet.rank(),
        per_length,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitehead::is_primitive;

    fn ab2() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(text: &str) -> Word {
        Word::parse(ab2(), text).unwrap()
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(abelianization(&w("aB")).unwrap(), (1, -1));
        assert_eq!(abelianization(&w("aabab")).unwrap(), (3, 2));
        assert_eq!(abelianization(&w("abAB")).unwrap(), (0, 0));
        let w3 = Word::parse(Alphabet::new(3).unwrap(), "abc").unwrap();
        assert!(abelianization(&w3).is_err());
    }

    #[test]
    fn phi_small_values() {
        let values: Vec<u64> = (1..=12).map(|n| phi(n).unwrap()).collect();
        assert_eq!(values, [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
        assert!(phi(0).is_err());
        assert!(phi(MAX_TOTIENT + 1).is_err());
    }

    #[test]
    fn christoffel_examples() {
        assert_eq!(christoffel(1, 1).unwrap().to_string(), "ab");
        assert_eq!(christoffel(2, 1).unwrap().to_string(), "aab");
        assert_eq!(christoffel(3, 2).unwrap().to_string(), "aabab");
        assert!(christoffel(2, 4).is_err());
        assert!(christoffel(0, 1).is_err());
    }

    #[test]
    fn christoffel_words_are_primitive_with_expected_vector() {
        for (p, q) in [(1u64, 1u64), (2, 1), (1, 2), (3, 2), (5, 3), (7, 4), (9, 2)] {
            let c = christoffel(p, q).unwrap();
            assert_eq!(c.len() as u64, p + q);
            let word = c.to_word();
            assert_eq!(abelianization(&word).unwrap(), (p as i64, q as i64));
            assert!(is_primitive(&word), "christoffel({p},{q})");
        }
    }

    #[test]
    fn class_counts_match_phi_sums() {
        assert_eq!(enumerate_classes(1).unwrap().len(), 4);
        assert_eq!(enumerate_classes(2).unwrap().len(), 8);
        assert_eq!(enumerate_classes(5).unwrap().len(), 40);
    }

    #[test]
    fn classes_have_consistent_vectors() {
        for class in enumerate_classes(6).unwrap() {
            let (sa, sb) = class.vector();
            assert_eq!(
                abelianization(&class.representative().to_word()).unwrap(),
                (sa, sb),
                "vector {:?}",
                class.vector()
            );
            assert_eq!(class.cyclic_length() as i64, sa.abs() + sb.abs());
        }
    }

    #[test]
    fn classes_are_distinct() {
        let classes = enumerate_classes(9).unwrap();
        let mut reps = std::collections::HashSet::new();
        let mut vectors = std::collections::HashSet::new();
        for class in &classes {
            assert!(
                reps.insert(class.representative().clone()),
                "duplicate representative"
            );
            assert!(vectors.insert(class.vector()), "duplicate vector");
        }
    }

    #[test]
    fn cyc_reduced_counts() {
        let values: Vec<BigUint> = (1..=5)
            .map(|n| count_cyc_reduced_primitive_words(n).unwrap())
            .collect();
        let expected: Vec<BigUint> = [4u32, 8, 24, 32, 80].iter().map(|&v| v.into()).collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn conjugator_count_examples() {
        assert_eq!(conjugator_count(ab2(), 0), BigUint::from(1u32));
        assert_eq!(conjugator_count(ab2(), 1), BigUint::from(2u32));
        assert_eq!(conjugator_count(ab2(), 3), BigUint::from(18u32));
    }

    #[test]
    fn conjugator_count_matches_enumeration() {
        // count reduced u with u c u⁻¹ reduced, i.e. no cancellation at all
        for core in ["a", "ab", "aab"] {
            let c = w(core);
            for k in 0..=4u32 {
                let mut found = 0u32;
                for u in crate::words::enumerate_reduced(ab2(), k) {
                    let conj = u.concat(&c).unwrap().concat(&u.invert()).unwrap();
                    if conj.len() == c.len() + 2 * k as usize {
                        found += 1;
                    }
                }
                assert_eq!(
                    BigUint::from(found),
                    conjugator_count(ab2(), k),
                    "core {core}, k={k}"
                );
            }
        }
    }

    #[test]
    fn primitive_counts_match_frozen_values() {
        let values: Vec<BigUint> = (1..=12).map(|n| count_primitives(n).unwrap()).collect();
        let expected: Vec<BigUint> = [4u32, 8, 32, 48, 152, 160, 544, 560, 1680, 1712, 5264, 5168]
            .iter()
            .map(|&v| v.into())
            .collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn count_table_all_cumulative() {
        let table = count_table(WordSet::All, ab2(), 2).unwrap();
        assert_eq!(table.cumulative(2).unwrap(), BigUint::from(17u32));
        assert!(table.cumulative(3).is_err());
    }

    #[test]
    fn count_table_rank_guard() {
        let a3 = Alphabet::new(3).unwrap();
        assert!(count_table(WordSet::Primitive, a3, 5).is_err());
        assert!(count_table(WordSet::All, a3, 5).is_ok());
    }

    #[test]
    fn bruteforce_matches_convolution_small() {
        let conv = count_table(WordSet::Primitive, ab2(), 6).unwrap();
        let brute = count_table_bruteforce(WordSet::Primitive, ab2(), 6, 2);
        assert_eq!(conv, brute);
        let conv = count_table(WordSet::CycPrimitive, ab2(), 6).unwrap();
        let brute = count_table_bruteforce(WordSet::CycPrimitive, ab2(), 6, 2);
        assert_eq!(conv, brute);
    }

    #[test]
    fn table_serialization() {
        let table = count_table(WordSet::Primitive, ab2(), 3).unwrap();
        assert_eq!(table.to_csv(), "n,count\n1,4\n2,8\n3,32\n");
        assert_eq!(
            table.to_json(),
            r#"{"rank":2,"per_length":{"1":"4","2":"8","3":"32"}}"#
        );
    }
}
