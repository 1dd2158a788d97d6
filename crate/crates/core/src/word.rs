//! Finite words over a small integer alphabet, with the prefix-aware
//! lexicographic comparison used throughout the crate.

use serde::{Deserialize, Serialize};
use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// An alphabet `{0, 1, ..., k-1}` with `2 <= k <= 255`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Alphabet(u8);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabet size must be between 2 and 255, got {0}")]
    BadAlphabetSize(usize),
    #[error("symbol {symbol} is outside alphabet of size {size}")]
    SymbolOutOfRange { symbol: u32, size: u8 },
    #[error("cannot parse `{0}` as a word: {1}")]
    Parse(String, String),
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self, WordError> {
        if (2..=255).contains(&size) {
            Ok(Alphabet(size as u8))
        } else {
            Err(WordError::BadAlphabetSize(size))
        }
    }

    /// The binary alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet(2)
    }

    pub fn size(self) -> usize {
        self.0 as usize
    }

    pub fn symbols(self) -> impl Iterator<Item = u8> {
        0..self.0
    }

    pub fn contains(self, symbol: u8) -> bool {
        symbol < self.0
    }
}

/// Result of comparing two words lexicographically, with the two
/// prefix cases reported separately from strict order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LexOrder {
    Less,
    Equal,
    Greater,
    /// The left word is a proper prefix of the right word.
    PrefixOf,
    /// The right word is a proper prefix of the left word.
    ExtensionOf,
}

/// A finite word over an [`Alphabet`]. Invariant: every symbol is below
/// the alphabet size.
///
/// Serializes as its display string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

impl Word {
    pub fn new(symbols: Vec<u8>, alphabet: Alphabet) -> Result<Self, WordError> {
        if let Some(&bad) = symbols.iter().find(|&&s| !alphabet.contains(s)) {
            return Err(WordError::SymbolOutOfRange {
                symbol: bad as u32,
                size: alphabet.size() as u8,
            });
        }
        Ok(Word { symbols, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Word {
            symbols: Vec::new(),
            alphabet,
        }
    }

    /// Convenience constructor for binary words in tests and examples.
    pub fn binary(symbols: &[u8]) -> Self {
        Word::new(symbols.to_vec(), Alphabet::binary()).expect("binary symbols")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn push(&mut self, symbol: u8) {
        debug_assert!(self.alphabet.contains(symbol));
        self.symbols.push(symbol);
    }

    /// Word consisting of the first `n` symbols. Panics if `n > len`.
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            symbols: self.symbols[..n].to_vec(),
            alphabet: self.alphabet,
        }
    }

    /// Word consisting of the last `n` symbols. Panics if `n > len`.
    pub fn suffix(&self, n: usize) -> Word {
        Word {
            symbols: self.symbols[self.len() - n..].to_vec(),
            alphabet: self.alphabet,
        }
    }

    /// Lexicographic comparison where a proper prefix is reported as
    /// [`LexOrder::PrefixOf`] rather than as strictly smaller.
    pub fn lex_compare(&self, other: &Word) -> LexOrder {
        let n = self.len().min(other.len());
        for i in 0..n {
            if self.symbols[i] < other.symbols[i] {
                return LexOrder::Less;
            }
            if self.symbols[i] > other.symbols[i] {
                return LexOrder::Greater;
            }
        }
        match self.len().cmp(&other.len()) {
            std::cmp::Ordering::Less => LexOrder::PrefixOf,
            std::cmp::Ordering::Equal => LexOrder::Equal,
            std::cmp::Ordering::Greater => LexOrder::ExtensionOf,
        }
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.len() <= other.len() && self.symbols[..] == other.symbols[..self.len()]
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        self.len() <= other.len() && self.symbols[..] == other.symbols[other.len() - self.len()..]
    }

    /// True when `self` occurs as a contiguous block inside `other`.
    pub fn is_factor_of(&self, other: &Word) -> bool {
        if self.is_empty() {
            return true;
        }
        if self.len() > other.len() {
            return false;
        }
        other
            .symbols
            .windows(self.len())
            .any(|win| win == self.symbols.as_slice())
    }

    /// Concatenation. Panics if the alphabets differ; words from
    /// different systems are never meant to be mixed.
    pub fn concat(&self, other: &Word) -> Word {
        assert_eq!(
            self.alphabet, other.alphabet,
            "cannot concatenate words over different alphabets"
        );
        let mut symbols = Vec::with_capacity(self.len() + other.len());
        symbols.extend_from_slice(&self.symbols);
        symbols.extend_from_slice(&other.symbols);
        Word {
            symbols,
            alphabet: self.alphabet,
        }
    }

    /// `self` repeated `times` times.
    pub fn repeat(&self, times: usize) -> Word {
        Word {
            symbols: self.symbols.repeat(times),
            alphabet: self.alphabet,
        }
    }

    /// First `n` symbols of the one-sided periodic stream `self^infinity`.
    pub fn periodic_prefix(&self, n: usize) -> Word {
        assert!(!self.is_empty(), "periodic stream needs a nonempty period");
        let symbols = (0..n).map(|i| self.symbols[i % self.len()]).collect();
        Word {
            symbols,
            alphabet: self.alphabet,
        }
    }

    /// Cyclic left rotation by `k` positions.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let k = k % self.len();
        let mut symbols = Vec::with_capacity(self.len());
        symbols.extend_from_slice(&self.symbols[k..]);
        symbols.extend_from_slice(&self.symbols[..k]);
        Word {
            symbols,
            alphabet: self.alphabet,
        }
    }

    /// True when the word is not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        for d in 1..n {
            if n.is_multiple_of(d) && self.symbols[..n - d] == self.symbols[d..] {
                return false;
            }
        }
        true
    }

    /// Parse from the display form: plain digit string for alphabets of
    /// size at most 10, dot-separated decimal symbols otherwise (the
    /// dotted form is accepted for any alphabet). Empty input is the
    /// empty word.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, WordError> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Word::empty(alphabet));
        }
        let symbols: Result<Vec<u8>, WordError> = if text.contains('.') {
            text.split('.')
                .map(|part| {
                    part.trim()
                        .parse::<u8>()
                        .map_err(|e| WordError::Parse(text.to_string(), e.to_string()))
                })
                .collect()
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| {
                            WordError::Parse(text.to_string(), format!("bad digit `{c}`"))
                        })
                })
                .collect()
        };
        Word::new(symbols?, alphabet)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for Word {
    /// Plain digit string for alphabets of size at most 10,
    /// dot-separated decimal symbols for larger alphabets.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphabet.size() <= 10 {
            for s in &self.symbols {
                write!(f, "{s}")?;
            }
        } else {
            let mut first = true;
            for s in &self.symbols {
                if !first {
                    write!(f, ".")?;
                }
                write!(f, "{s}")?;
                first = false;
            }
        }
        Ok(())
    }
}

/// All pairwise concatenations `a ++ b`, deduplicated and sorted.
pub fn concat_set<A, B>(left: &BTreeSet<A>, right: &BTreeSet<B>) -> BTreeSet<Word>
where
    A: Borrow<Word> + Ord,
    B: Borrow<Word> + Ord,
{
    let mut out = BTreeSet::new();
    for a in left {
        for b in right {
            out.insert(a.borrow().concat(b.borrow()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::binary()).unwrap()
    }

    #[test]
    fn lex_compare_distinguishes_order_and_prefix_cases() {
        assert_eq!(w("10").lex_compare(&w("11")), LexOrder::Less);
        assert_eq!(w("11").lex_compare(&w("10")), LexOrder::Greater);
        assert_eq!(w("101").lex_compare(&w("101")), LexOrder::Equal);
        assert_eq!(w("10").lex_compare(&w("100")), LexOrder::PrefixOf);
        assert_eq!(w("100").lex_compare(&w("10")), LexOrder::ExtensionOf);
        assert_eq!(
            Word::empty(Alphabet::binary()).lex_compare(&w("0")),
            LexOrder::PrefixOf
        );
    }

    #[test]
    fn prefix_suffix_factor_predicates() {
        assert!(w("10").is_prefix_of(&w("100")));
        assert!(!w("01").is_prefix_of(&w("100")));
        assert!(w("00").is_suffix_of(&w("100")));
        assert!(w("01").is_factor_of(&w("1011")));
        assert!(!w("11").is_factor_of(&w("1010")));
        assert!(Word::empty(Alphabet::binary()).is_factor_of(&w("10")));
    }

    #[test]
    fn concat_set_deduplicates() {
        let a: BTreeSet<Word> = [w("0"), w("01")].into_iter().collect();
        let b: BTreeSet<Word> = [w("10"), w("0")].into_iter().collect();
        let prod = concat_set(&a, &b);
        // `0 ++ 10` and `01 ++ 0` collide on `010`.
        assert_eq!(prod.len(), 3);
        assert!(prod.contains(&w("010")));
        assert!(prod.contains(&w("00")));
        assert!(prod.contains(&w("0110")));
    }

    #[test]
    fn rotation_and_primitivity() {
        assert_eq!(w("0110").rotate(1), w("1100"));
        assert_eq!(w("0110").rotate(4), w("0110"));
        assert!(w("01").is_primitive());
        assert!(!w("0101").is_primitive());
        assert!(!w("111").is_primitive());
        assert!(w("0010").is_primitive());
    }

    #[test]
    fn periodic_prefix_wraps() {
        assert_eq!(w("01").periodic_prefix(5), w("01010"));
        assert_eq!(w("1").periodic_prefix(3), w("111"));
    }

    #[test]
    fn display_uses_dots_for_wide_alphabets() {
        let a12 = Alphabet::new(12).unwrap();
        let word = Word::new(vec![11, 0, 3], a12).unwrap();
        assert_eq!(word.to_string(), "11.0.3");
        assert_eq!(Word::parse("11.0.3", a12).unwrap(), word);
        assert_eq!(w("0110").to_string(), "0110");
    }

    #[test]
    fn rejects_out_of_range_symbols() {
        assert!(Word::new(vec![0, 2], Alphabet::binary()).is_err());
        assert!(Word::parse("102", Alphabet::binary()).is_err());
        assert!(Alphabet::new(1).is_err());
        assert!(Alphabet::new(256).is_err());
    }

    fn arb_binary_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(0u8..2, 0..12).prop_map(|v| Word::binary(&v))
    }

    proptest! {
        #[test]
        fn lex_compare_is_antisymmetric(a in arb_binary_word(), b in arb_binary_word()) {
            let ab = a.lex_compare(&b);
            let ba = b.lex_compare(&a);
            let expected = match ab {
                LexOrder::Less => LexOrder::Greater,
                LexOrder::Greater => LexOrder::Less,
                LexOrder::Equal => LexOrder::Equal,
                LexOrder::PrefixOf => LexOrder::ExtensionOf,
                LexOrder::ExtensionOf => LexOrder::PrefixOf,
            };
            prop_assert_eq!(ba, expected);
        }

        #[test]
        fn prefix_cases_match_predicate(a in arb_binary_word(), b in arb_binary_word()) {
            let ord = a.lex_compare(&b);
            let prefix = a.is_prefix_of(&b);
            prop_assert_eq!(
                prefix,
                matches!(ord, LexOrder::PrefixOf | LexOrder::Equal)
            );
        }

        #[test]
        fn concat_is_length_additive(a in arb_binary_word(), b in arb_binary_word()) {
            let c = a.concat(&b);
            prop_assert_eq!(c.len(), a.len() + b.len());
            prop_assert!(a.is_prefix_of(&c));
            prop_assert!(b.is_suffix_of(&c));
        }

        #[test]
        fn display_parse_round_trip(a in arb_binary_word()) {
            let text = a.to_string();
            prop_assert_eq!(Word::parse(&text, a.alphabet()).unwrap(), a);
        }

        #[test]
        fn concat_set_size_bounded(
            xs in proptest::collection::btree_set(arb_binary_word(), 0..6),
            ys in proptest::collection::btree_set(arb_binary_word(), 0..6),
        ) {
            let prod = concat_set(&xs, &ys);
            prop_assert!(prod.len() <= xs.len() * ys.len());
            for p in &prod {
                prop_assert!(xs.iter().any(|x| x.is_prefix_of(p)));
            }
        }
    }
}
