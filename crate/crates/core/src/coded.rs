//! Coded systems: the closure of all bi-infinite free concatenations of
//! a finite generating set of words. A finite word is in the language
//! iff it occurs inside some such concatenation, which reduces to a
//! boundary-position dynamic program over the generator set.

use crate::decomp::{Component, Decomposition};
use crate::lang::{Budget, Dfa, GrowthEstimate, LanguageOracle};
use crate::word::{Alphabet, Word};
use crate::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

/// A validated, deduplicated, sorted list of nonempty generator words
/// over a common alphabet.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    words: Vec<Word>,
    alphabet: Alphabet,
}

impl GeneratorSet {
    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut alphabet: Option<Alphabet> = None;
        for w in words {
            if w.is_empty() {
                return Err(Error::Config("generators must be nonempty".into()));
            }
            match alphabet {
                None => alphabet = Some(w.alphabet()),
                Some(a) if a == w.alphabet() => {}
                Some(a) => {
                    return Err(Error::Config(format!(
                        "generator alphabet mismatch: {} vs {}",
                        a.size(),
                        w.alphabet().size()
                    )))
                }
            }
            set.insert(w);
        }
        let alphabet =
            alphabet.ok_or_else(|| Error::Config("generator set must be nonempty".into()))?;
        Ok(GeneratorSet {
            words: set.into_iter().collect(),
            alphabet,
        })
    }

    /// Parse a generator file: one word per line, `#` starts a comment,
    /// blank lines are skipped. The alphabet is inferred from the
    /// largest digit used (at least binary).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = Vec::new();
        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                lines.push(line.to_string());
            }
        }
        if lines.is_empty() {
            return Err(Error::Config("generator file contains no words".into()));
        }
        let mut max_digit = 1u8;
        for line in &lines {
            for ch in line.chars() {
                let d = ch
                    .to_digit(10)
                    .ok_or_else(|| Error::Config(format!("bad generator symbol {ch:?}")))?;
                max_digit = max_digit.max(d as u8);
            }
        }
        let alphabet = Alphabet::new(usize::from(max_digit) + 1)?;
        let words = lines
            .iter()
            .map(|l| Word::parse(l, alphabet))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Self::from_words(words)
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }
}

/// How a word was located inside a concatenation of generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum ParseWitness {
    /// The word sits wholly inside one generator at the given offset.
    Factor { generator: usize, offset: usize },
    /// The word crosses generator boundaries: a (possibly empty)
    /// suffix of `suffix_of`, then complete generators, then a
    /// (possibly empty) prefix of `prefix_of`.
    Boundary {
        suffix_len: usize,
        suffix_of: Option<usize>,
        generators: Vec<usize>,
        prefix_len: usize,
        prefix_of: Option<usize>,
    },
}

/// Growth comparison between the boundary-fragment counts and the full
/// language.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryVerdict {
    /// Fragment counts grow subexponentially (rate proxy near zero).
    Subexponential,
    /// Fragments grow, but at a strictly slower exponential rate than
    /// the language.
    StrictlySlower,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryGrowthReport {
    pub fragment_counts: Vec<u64>,
    pub fragment_rate_proxy: f64,
    pub language_rate_proxy: f64,
    pub verdict: BoundaryVerdict,
}

/// Threshold logic shared by the report and its tests: a fragment rate
/// under 0.05 nats counts as subexponential; otherwise the language
/// must lead by at least 0.05 nats to call the gap real.
pub fn classify_boundary(fragment_rate: f64, language_rate: f64) -> BoundaryVerdict {
    if fragment_rate <= 0.05 {
        BoundaryVerdict::Subexponential
    } else if language_rate - fragment_rate >= 0.05 {
        BoundaryVerdict::StrictlySlower
    } else {
        BoundaryVerdict::Inconclusive
    }
}

/// A coded system presented by generators.
pub struct CodedSystem {
    generators: GeneratorSet,
}

/// Parse-table cell: (leading fragment length, generator supplying it,
/// back-pointer (previous boundary position, generator index)).
type ReachCell = (usize, Option<usize>, Option<(usize, usize)>);

impl CodedSystem {
    pub fn new(generators: GeneratorSet) -> Arc<Self> {
        Arc::new(CodedSystem { generators })
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.generators
    }

    /// Membership with an explanation of where the word sits.
    pub fn parse(&self, w: &Word) -> Option<ParseWitness> {
        if w.is_empty() {
            return Some(ParseWitness::Boundary {
                suffix_len: 0,
                suffix_of: None,
                generators: vec![],
                prefix_len: 0,
                prefix_of: None,
            });
        }
        for (gi, g) in self.generators.words().iter().enumerate() {
            if let Some(offset) = find_factor(g, w) {
                return Some(ParseWitness::Factor {
                    generator: gi,
                    offset,
                });
            }
        }
        let n = w.len();
        // reach[i]: Some((suffix info, boundary back-pointer)) when the
        // prefix w[0..i] is a generator suffix followed by complete
        // generators.
        let mut reach: Vec<Option<ReachCell>> = vec![None; n + 1];
        reach[0] = Some((0, None, None));
        for (i, cell) in reach.iter_mut().enumerate().skip(1) {
            let head = w.prefix(i);
            if let Some(gi) = self.suffix_source(&head) {
                *cell = Some((i, Some(gi), None));
            }
        }
        for j in 1..=n {
            if reach[j].is_some() {
                continue;
            }
            for (gi, g) in self.generators.words().iter().enumerate() {
                let gl = g.len();
                if gl > j {
                    continue;
                }
                if reach[j - gl].is_some() && w.symbols()[j - gl..j] == *g.symbols() {
                    reach[j] = Some((0, None, Some((j - gl, gi))));
                    break;
                }
            }
        }
        for i in (0..=n).rev() {
            if reach[i].is_none() {
                continue;
            }
            let tail = w.suffix(n - i);
            let prefix_of = if tail.is_empty() {
                Some(None)
            } else {
                self.prefix_source(&tail).map(Some)
            };
            if let Some(prefix_of) = prefix_of {
                // Walk the back-pointers to recover the parse.
                let mut gens_rev = Vec::new();
                let mut pos = i;
                let (suffix_len, suffix_of) = loop {
                    let cell = reach[pos].expect("reach chain");
                    match cell.2 {
                        Some((prev, gi)) => {
                            gens_rev.push(gi);
                            pos = prev;
                        }
                        None => break (cell.0, cell.1),
                    }
                };
                gens_rev.reverse();
                return Some(ParseWitness::Boundary {
                    suffix_len,
                    suffix_of,
                    generators: gens_rev,
                    prefix_len: n - i,
                    prefix_of,
                });
            }
        }
        None
    }

    /// Check a witness against the word it claims to explain.
    pub fn verify_witness(&self, w: &Word, witness: &ParseWitness) -> bool {
        match witness {
            ParseWitness::Factor { generator, offset } => {
                let Some(g) = self.generators.words().get(*generator) else {
                    return false;
                };
                *offset + w.len() <= g.len()
                    && g.symbols()[*offset..*offset + w.len()] == *w.symbols()
            }
            ParseWitness::Boundary {
                suffix_len,
                suffix_of,
                generators,
                prefix_len,
                prefix_of,
            } => {
                let mut rebuilt: Vec<u8> = Vec::with_capacity(w.len());
                match (suffix_len, suffix_of) {
                    (0, None) => {}
                    (len, Some(gi)) => {
                        let Some(g) = self.generators.words().get(*gi) else {
                            return false;
                        };
                        if *len > g.len() {
                            return false;
                        }
                        rebuilt.extend_from_slice(g.suffix(*len).symbols());
                    }
                    _ => return false,
                }
                for gi in generators {
                    let Some(g) = self.generators.words().get(*gi) else {
                        return false;
                    };
                    rebuilt.extend_from_slice(g.symbols());
                }
                match (prefix_len, prefix_of) {
                    (0, None) => {}
                    (len, Some(gi)) => {
                        let Some(g) = self.generators.words().get(*gi) else {
                            return false;
                        };
                        if *len > g.len() {
                            return false;
                        }
                        rebuilt.extend_from_slice(g.prefix(*len).symbols());
                    }
                    _ => return false,
                }
                rebuilt == *w.symbols()
            }
        }
    }

    fn suffix_source(&self, w: &Word) -> Option<usize> {
        self.generators
            .words()
            .iter()
            .position(|g| w.is_suffix_of(g))
    }

    fn prefix_source(&self, w: &Word) -> Option<usize> {
        self.generators
            .words()
            .iter()
            .position(|g| w.is_prefix_of(g))
    }

    /// Count distinct boundary fragments per length: the union of the
    /// length-`n` prefixes and length-`n` suffixes of the generators.
    pub fn fragment_counts(&self, n_max: usize) -> Vec<u64> {
        let mut counts = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut set = BTreeSet::new();
            for g in self.generators.words() {
                if g.len() >= n {
                    set.insert(g.prefix(n));
                    set.insert(g.suffix(n));
                }
            }
            counts.push(set.len() as u64);
        }
        counts
    }

    /// Compare fragment growth against language growth over a window.
    pub fn boundary_growth(&self, n_max: usize, budget: &Budget) -> Result<BoundaryGrowthReport> {
        let fragment_counts = self.fragment_counts(n_max);
        let frag_big: Vec<num::BigUint> =
            fragment_counts.iter().map(|&c| num::BigUint::from(c)).collect();
        let frag_est = GrowthEstimate::from_counts(frag_big);
        let lang_counts = crate::lang::count_words(self, n_max, budget)?;
        let lang_est = GrowthEstimate::from_counts(lang_counts);
        let fragment_rate_proxy = frag_est.limsup_proxy.max(0.0);
        let language_rate_proxy = lang_est.limsup_proxy;
        Ok(BoundaryGrowthReport {
            fragment_counts,
            fragment_rate_proxy,
            language_rate_proxy,
            verdict: classify_boundary(fragment_rate_proxy, language_rate_proxy),
        })
    }

    /// Decomposition induced by the presentation: good = exact
    /// concatenations, prefixes = generator suffixes (the left edge of
    /// a window cuts a generator tail), suffixes = generator prefixes.
    pub fn decomposition(self: &Arc<Self>) -> Decomposition {
        Decomposition {
            prefixes: Arc::new(CodedFragmentComponent {
                system: self.clone(),
                side: FragmentSide::GeneratorSuffix,
            }),
            good: Arc::new(CodedGoodComponent(self.clone())),
            suffixes: Arc::new(CodedFragmentComponent {
                system: self.clone(),
                side: FragmentSide::GeneratorPrefix,
            }),
            gap: 0,
            periodic_glue: true,
        }
    }

    /// Worst-case completion cost: for every boundary fragment of
    /// length at most `m`, the cheapest number of extra symbols that
    /// completes it to a full generator, maximized per side and summed.
    pub fn extension_time(&self, m: usize) -> u64 {
        let mut left = 0u64;
        let mut right = 0u64;
        for g in self.generators.words() {
            for len in 1..=g.len().min(m) {
                let s = g.suffix(len);
                let cheapest = self
                    .generators
                    .words()
                    .iter()
                    .filter(|h| s.is_suffix_of(h))
                    .map(|h| (h.len() - len) as u64)
                    .min()
                    .expect("fragment has a source");
                left = left.max(cheapest);
                let p = g.prefix(len);
                let cheapest = self
                    .generators
                    .words()
                    .iter()
                    .filter(|h| p.is_prefix_of(h))
                    .map(|h| (h.len() - len) as u64)
                    .min()
                    .expect("fragment has a source");
                right = right.max(cheapest);
            }
        }
        left + right
    }
}

fn find_factor(haystack: &Word, needle: &Word) -> Option<usize> {
    if needle.len() > haystack.len() {
        return None;
    }
    (0..=haystack.len() - needle.len())
        .find(|&off| haystack.symbols()[off..off + needle.len()] == *needle.symbols())
}

impl LanguageOracle for CodedSystem {
    fn alphabet(&self) -> Alphabet {
        self.generators.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        self.parse(w).is_some()
    }

    fn automaton(&self) -> Option<&Dfa> {
        None
    }

    fn family_id(&self) -> String {
        let mut hasher = Sha256::new();
        for g in self.generators.words() {
            hasher.update(g.to_string().as_bytes());
            hasher.update(b"\n");
        }
        let digest = hasher.finalize();
        let mut hex = String::new();
        for b in digest.iter().take(6) {
            write!(hex, "{b:02x}").unwrap();
        }
        format!("coded{{{hex}}}")
    }
}

/// Exact concatenations of generators (including the empty product).
pub struct CodedGoodComponent(pub Arc<CodedSystem>);

impl CodedGoodComponent {
    fn concat_reachable(&self, w: &Word) -> Vec<bool> {
        let n = w.len();
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for j in 1..=n {
            for g in self.0.generators.words() {
                let gl = g.len();
                if gl <= j && reach[j - gl] && w.symbols()[j - gl..j] == *g.symbols() {
                    reach[j] = true;
                    break;
                }
            }
        }
        reach
    }
}

impl Component for CodedGoodComponent {
    fn contains(&self, w: &Word) -> bool {
        *self.concat_reachable(w).last().unwrap()
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        let alphabet = self.0.generators.alphabet;
        let mut layers: Vec<BTreeSet<Word>> = vec![BTreeSet::new(); n + 1];
        layers[0].insert(Word::empty(alphabet));
        for len in 1..=n {
            let mut layer = BTreeSet::new();
            for g in self.0.generators.words() {
                let gl = g.len();
                if gl <= len {
                    for base in &layers[len - gl] {
                        layer.insert(base.concat(g));
                    }
                }
            }
            layers[len] = layer;
        }
        Some(layers.pop().unwrap().into_iter().collect())
    }

    fn describe(&self) -> String {
        "exact generator concatenations".into()
    }
}

enum FragmentSide {
    GeneratorSuffix,
    GeneratorPrefix,
}

/// Boundary fragments of one side: suffixes of generators (used as
/// parse prefixes) or prefixes of generators (used as parse suffixes).
pub struct CodedFragmentComponent {
    system: Arc<CodedSystem>,
    side: FragmentSide,
}

impl Component for CodedFragmentComponent {
    fn contains(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        match self.side {
            FragmentSide::GeneratorSuffix => self.system.suffix_source(w).is_some(),
            FragmentSide::GeneratorPrefix => self.system.prefix_source(w).is_some(),
        }
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        let mut set = BTreeSet::new();
        if n == 0 {
            set.insert(Word::empty(self.system.generators.alphabet));
        }
        for g in self.system.generators.words() {
            if g.len() >= n && n > 0 {
                match self.side {
                    FragmentSide::GeneratorSuffix => set.insert(g.suffix(n)),
                    FragmentSide::GeneratorPrefix => set.insert(g.prefix(n)),
                };
            }
        }
        Some(set.into_iter().collect())
    }

    fn describe(&self) -> String {
        match self.side {
            FragmentSide::GeneratorSuffix => "generator suffixes".into(),
            FragmentSide::GeneratorPrefix => "generator prefixes".into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::{BetaShift, BetaSpec};
    use crate::decomp::check_parse_cover;
    use crate::lang::enumerate;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::binary()).unwrap()
    }

    fn system(words: &[&str]) -> Arc<CodedSystem> {
        let gens =
            GeneratorSet::from_words(words.iter().map(|s| w(s))).unwrap();
        CodedSystem::new(gens)
    }

    #[test]
    fn generator_file_parsing() {
        let gens = GeneratorSet::from_text("# block list\n0\n100\n\n100 # dupe\n").unwrap();
        assert_eq!(gens.words().len(), 2);
        assert_eq!(gens.alphabet(), Alphabet::binary());
        assert!(GeneratorSet::from_text("# nothing\n").is_err());
        assert!(GeneratorSet::from_text("abc").is_err());
    }

    #[test]
    fn membership_of_single_generator_orbit() {
        let s = system(&["10"]);
        for good in ["0", "1", "01", "10", "010", "101", "0101", "1010"] {
            assert!(s.contains(&w(good)), "{good} should parse");
        }
        for bad in ["11", "00", "100", "0011"] {
            assert!(!s.contains(&w(bad)), "{bad} should not parse");
        }
    }

    #[test]
    fn witnesses_verify_and_explain() {
        let s = system(&["0", "100"]);
        let witness = s.parse(&w("100")).unwrap();
        assert!(s.verify_witness(&w("100"), &witness));
        // `00100` = suffix "00" of `100`, then the generator `100`.
        let word = w("00100");
        let witness = s.parse(&word).unwrap();
        assert!(s.verify_witness(&word, &witness));
        match &witness {
            ParseWitness::Boundary { .. } | ParseWitness::Factor { .. } => {}
        }
        // A tampered witness must fail.
        let bad = ParseWitness::Factor {
            generator: 0,
            offset: 1,
        };
        assert!(!s.verify_witness(&word, &bad));
    }

    #[test]
    fn fragment_counts_for_block_presentation() {
        let s = system(&["0", "100", "10100", "1010100", "101010100", "10101010100"]);
        let counts = s.fragment_counts(4);
        // Length 1: prefixes {0,1}, suffixes {0}; union size 2.
        assert_eq!(counts[1], 2);
        assert_eq!(counts[0], 1);
        // Length 2: prefixes {10}, suffixes {00}; union size 2.
        assert_eq!(counts[2], 2);
    }

    #[test]
    fn coded_view_agrees_with_digit_expansion_membership() {
        let beta = BetaShift::new(BetaSpec::Golden, 32).unwrap();
        let gens = GeneratorSet::from_words(beta.generators(12).unwrap()).unwrap();
        let coded = CodedSystem::new(gens);
        let budget = Budget::default();
        let layers = enumerate(&crate::lang::FullShift::new(Alphabet::binary()), 8, &budget)
            .unwrap();
        let mut mismatches = 0usize;
        for layer in &layers {
            for word in layer {
                if beta.contains(word) != coded.contains(word) {
                    mismatches += 1;
                }
            }
        }
        assert_eq!(mismatches, 0);
    }

    #[test]
    fn decomposition_covers_small_window() {
        let s = system(&["0", "100"]);
        let d = s.decomposition();
        assert!(d.good.contains(&w("0100")));
        assert!(!d.good.contains(&w("10")));
        assert!(d.prefixes.contains(&w("00"))); // suffix of `100`
        assert!(d.suffixes.contains(&w("10"))); // prefix of `100`
        let report = check_parse_cover(s.as_ref(), &d, 9, &Budget::default()).unwrap();
        assert!(report.passed, "uncovered: {:?}", report.uncovered);
        let slice = d.good.slice(3).unwrap();
        assert_eq!(slice, vec![w("000"), w("100")]);
    }

    #[test]
    fn extension_time_is_the_worst_completion_cost() {
        let s = system(&["0", "100"]);
        // Left fragments: "0" completes for free (generator `0`), "00"
        // needs 1 more symbol. Right fragments: "1" needs 2, "10" needs 1.
        assert_eq!(s.extension_time(1), 2);
        assert_eq!(s.extension_time(2), 3);
    }

    #[test]
    fn boundary_verdict_thresholds() {
        assert_eq!(classify_boundary(0.01, 0.7), BoundaryVerdict::Subexponential);
        assert_eq!(classify_boundary(0.3, 0.7), BoundaryVerdict::StrictlySlower);
        assert_eq!(classify_boundary(0.68, 0.7), BoundaryVerdict::Inconclusive);
    }

    #[test]
    fn full_shift_presentation_has_negligible_boundary() {
        let s = system(&["0", "1"]);
        let report = s.boundary_growth(10, &Budget::default()).unwrap();
        assert_eq!(report.verdict, BoundaryVerdict::Subexponential);
        assert!((report.language_rate_proxy - std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn periodic_status_is_depth_checked_not_certified() {
        let s = system(&["10"]);
        assert!(!s.periodic_exact());
        assert_eq!(s.periodic_status(&w("10"), 12), PeriodicStatus::Admissible);
        assert_eq!(s.periodic_status(&w("11"), 12), PeriodicStatus::Inadmissible);
    }

    use crate::lang::PeriodicStatus;
}
