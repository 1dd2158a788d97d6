//! Language engine: the oracle interface shared by every shift family,
//! automaton-backed exact counting, layered enumeration with budgets,
//! growth-rate estimates, and a persistent per-length cache.

use crate::word::{Alphabet, Word};
use crate::{Error, Result};
use num::bigint::BigUint;
use num::traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::Path;

/// Admissibility of the periodic stream `w^infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodicStatus {
    Admissible,
    Inadmissible,
    /// The oracle could not decide at the requested depth. Only oracles
    /// without an exact periodicity test report this.
    Undecided,
}

/// A factorial language presented by membership queries. Implementations
/// must be factor-closed: every factor of an admissible word is
/// admissible, so length-layered enumeration by single-symbol extension
/// is exhaustive.
pub trait LanguageOracle: Send + Sync {
    fn alphabet(&self) -> Alphabet;

    /// Exact membership for words up to [`max_supported_len`].
    fn contains(&self, w: &Word) -> bool;

    /// Deterministic presentation when one is available; enables exact
    /// path counting instead of enumeration.
    fn automaton(&self) -> Option<&Dfa> {
        None
    }

    /// Largest word length the oracle answers exactly, if bounded
    /// (for example by a cached digit stream or a truncated rule).
    fn max_supported_len(&self) -> Option<usize> {
        None
    }

    /// Stable human-readable identifier of the language and all of its
    /// defining parameters; hashed to key the layer cache.
    fn family_id(&self) -> String;

    /// Whether [`periodic_status`] is an exact decision procedure for
    /// this oracle (as opposed to a bounded-depth check).
    fn periodic_exact(&self) -> bool {
        false
    }

    /// Decide whether `w^infinity` stays admissible. The default checks
    /// the first `max(repeat_check, 2|w|)` symbols of the stream: a
    /// failure is conclusive (the language is factorial), a pass is
    /// depth-bounded evidence.
    fn periodic_status(&self, w: &Word, repeat_check: usize) -> PeriodicStatus {
        if w.is_empty() {
            return PeriodicStatus::Inadmissible;
        }
        let depth = repeat_check.max(2 * w.len());
        if self.contains(&w.periodic_prefix(depth)) {
            PeriodicStatus::Admissible
        } else {
            PeriodicStatus::Inadmissible
        }
    }
}

/// Deterministic automaton over an [`Alphabet`]; every state accepts
/// (the languages here are factorial), missing entries are rejecting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    /// `transitions[state][symbol]` is the successor state, if any.
    pub transitions: Vec<Vec<Option<u32>>>,
    pub initial: u32,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.transitions.len()
    }

    pub fn step(&self, state: u32, symbol: u8) -> Option<u32> {
        self.transitions[state as usize][symbol as usize]
    }

    /// Run the word from `initial`; `None` means rejection.
    pub fn run(&self, w: &Word) -> Option<u32> {
        let mut state = self.initial;
        for &s in w.symbols() {
            state = self.step(state, s)?;
        }
        Some(state)
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.run(w).is_some()
    }

    /// `counts[n]` = number of admissible words of length `n`
    /// (paths of length `n` starting at `initial`).
    pub fn count_words(&self, n_max: usize) -> Vec<BigUint> {
        let fwd = self.forward_path_counts(n_max);
        fwd.iter()
            .map(|layer| layer.iter().sum::<BigUint>())
            .collect()
    }

    /// `out[k][q]` = number of length-`k` paths from `initial` to `q`.
    pub fn forward_path_counts(&self, n_max: usize) -> Vec<Vec<BigUint>> {
        let states = self.num_states();
        let mut layer = vec![BigUint::zero(); states];
        layer[self.initial as usize] = BigUint::one();
        let mut out = vec![layer];
        for _ in 0..n_max {
            let prev = out.last().unwrap();
            let mut next = vec![BigUint::zero(); states];
            for (q, row) in self.transitions.iter().enumerate() {
                if prev[q].is_zero() {
                    continue;
                }
                for target in row.iter().flatten() {
                    next[*target as usize] += &prev[q];
                }
            }
            out.push(next);
        }
        out
    }

    /// `out[k][q]` = number of length-`k` paths starting at `q`.
    pub fn backward_path_counts(&self, n_max: usize) -> Vec<Vec<BigUint>> {
        let states = self.num_states();
        let mut out = vec![vec![BigUint::one(); states]];
        for _ in 0..n_max {
            let prev = out.last().unwrap();
            let mut next = vec![BigUint::zero(); states];
            for (q, row) in self.transitions.iter().enumerate() {
                for target in row.iter().flatten() {
                    let add = prev[*target as usize].clone();
                    next[q] += add;
                }
            }
            out.push(next);
        }
        out
    }

    /// Strong connectivity of the transition graph (needed for a
    /// well-defined stationary path measure).
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.num_states();
        if n == 0 {
            return false;
        }
        let reach = |start: usize, reversed: bool| -> Vec<bool> {
            let mut seen = vec![false; n];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(q) = stack.pop() {
                for (p, row) in self.transitions.iter().enumerate() {
                    for t in row.iter().flatten() {
                        let (from, to) = if reversed {
                            (*t as usize, p)
                        } else {
                            (p, *t as usize)
                        };
                        if from == q && !seen[to] {
                            seen[to] = true;
                            stack.push(to);
                        }
                    }
                }
            }
            seen
        };
        reach(0, false).iter().all(|&b| b) && reach(0, true).iter().all(|&b| b)
    }
}

/// Resource limits for enumeration-based routines.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_words_per_layer: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_words_per_layer: 5_000_000,
        }
    }
}

/// All admissible words of each length `0..=n_max`, built layer by
/// layer (single-symbol extension; exhaustive because the language is
/// factor-closed). Within each layer words appear in sorted order.
pub fn enumerate(
    oracle: &dyn LanguageOracle,
    n_max: usize,
    budget: &Budget,
) -> Result<Vec<Vec<Word>>> {
    if let Some(max) = oracle.max_supported_len() {
        if n_max > max {
            return Err(Error::DepthUnsupported {
                requested: n_max,
                max,
            });
        }
    }
    let alphabet = oracle.alphabet();
    let empty = Word::empty(alphabet);
    let mut layers: Vec<Vec<Word>> = vec![if oracle.contains(&empty) {
        vec![empty]
    } else {
        Vec::new()
    }];
    for n in 1..=n_max {
        let prev = layers.last().unwrap();
        let next: Vec<Word> = prev
            .par_iter()
            .flat_map_iter(|w| {
                alphabet.symbols().filter_map(move |s| {
                    let mut cand = w.clone();
                    cand.push(s);
                    if oracle.contains(&cand) {
                        Some(cand)
                    } else {
                        None
                    }
                })
            })
            .collect();
        if next.len() > budget.max_words_per_layer {
            return Err(Error::BudgetExceeded {
                layer: n,
                limit: budget.max_words_per_layer,
            });
        }
        layers.push(next);
    }
    Ok(layers)
}

/// Exact per-length word counts: path counting when the oracle exposes
/// an automaton, layered enumeration otherwise.
pub fn count_words(
    oracle: &dyn LanguageOracle,
    n_max: usize,
    budget: &Budget,
) -> Result<Vec<BigUint>> {
    if let Some(max) = oracle.max_supported_len() {
        if n_max > max {
            return Err(Error::DepthUnsupported {
                requested: n_max,
                max,
            });
        }
    }
    if let Some(dfa) = oracle.automaton() {
        return Ok(dfa.count_words(n_max));
    }
    let layers = enumerate(oracle, n_max, budget)?;
    Ok(layers
        .iter()
        .map(|layer| BigUint::from(layer.len()))
        .collect())
}

/// Per-length counts with the associated growth-rate diagnostics.
#[derive(Debug, Clone)]
pub struct GrowthEstimate {
    pub counts: Vec<BigUint>,
    /// `rates[n] = ln(counts[n]) / n`; empty layers give `-inf`.
    pub rates: Vec<f64>,
    /// Max rate over the trailing third of the computed range — a
    /// finite-depth stand-in for the limsup growth rate.
    pub limsup_proxy: f64,
}

impl GrowthEstimate {
    pub fn from_counts(counts: Vec<BigUint>) -> Self {
        let rates: Vec<f64> = counts
            .iter()
            .enumerate()
            .map(|(n, c)| {
                if n == 0 || c.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    ln_biguint(c) / n as f64
                }
            })
            .collect();
        let n_max = counts.len().saturating_sub(1);
        let window = n_max.div_ceil(3).max(1);
        let start = n_max.saturating_sub(window - 1).max(1);
        let limsup_proxy = rates
            .iter()
            .enumerate()
            .filter(|(n, _)| *n >= start)
            .map(|(_, &r)| r)
            .fold(f64::NEG_INFINITY, f64::max);
        GrowthEstimate {
            counts,
            rates,
            limsup_proxy,
        }
    }
}

/// Natural log of an arbitrary-precision count, via `f64` with a
/// power-of-two rescale for values beyond `f64` range.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match x.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => {
            let bits = x.bits();
            let shift = bits.saturating_sub(64);
            let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
            top.ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}

/// The full shift over `k` symbols: every word is admissible.
#[derive(Debug, Clone)]
pub struct FullShift {
    alphabet: Alphabet,
    dfa: Dfa,
}

impl FullShift {
    pub fn new(alphabet: Alphabet) -> Self {
        let dfa = Dfa {
            alphabet,
            transitions: vec![alphabet.symbols().map(|_| Some(0)).collect()],
            initial: 0,
        };
        FullShift { alphabet, dfa }
    }
}

impl LanguageOracle for FullShift {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn contains(&self, _w: &Word) -> bool {
        true
    }

    fn automaton(&self) -> Option<&Dfa> {
        Some(&self.dfa)
    }

    fn family_id(&self) -> String {
        format!("full{{k={}}}", self.alphabet.size())
    }

    fn periodic_exact(&self) -> bool {
        true
    }

    fn periodic_status(&self, w: &Word, _repeat_check: usize) -> PeriodicStatus {
        if w.is_empty() {
            PeriodicStatus::Inadmissible
        } else {
            PeriodicStatus::Admissible
        }
    }
}

/// The language of factors of the single periodic stream
/// `period^infinity` — a minimal example whose word counts stabilize.
#[derive(Debug, Clone)]
pub struct OrbitLanguage {
    period: Word,
}

impl OrbitLanguage {
    pub fn new(period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Config("orbit period must be nonempty".into()));
        }
        Ok(OrbitLanguage { period })
    }

    pub fn period(&self) -> &Word {
        &self.period
    }
}

impl LanguageOracle for OrbitLanguage {
    fn alphabet(&self) -> Alphabet {
        self.period.alphabet()
    }

    fn contains(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        let span = self.period.periodic_prefix(self.period.len() + w.len());
        w.is_factor_of(&span)
    }

    fn family_id(&self) -> String {
        format!("orbit{{period={}}}", self.period)
    }

    fn periodic_exact(&self) -> bool {
        true
    }

    fn periodic_status(&self, w: &Word, _repeat_check: usize) -> PeriodicStatus {
        if w.is_empty() {
            return PeriodicStatus::Inadmissible;
        }
        // `w^infinity` lies in the orbit closure iff it coincides with a
        // rotated copy of `period^infinity`; comparing one full common
        // period decides this exactly.
        let p = self.period.len();
        let span = lcm(p, w.len()) + p;
        let stream = w.periodic_prefix(span);
        for k in 0..p {
            if self.period.rotate(k).periodic_prefix(span) == stream {
                return PeriodicStatus::Admissible;
            }
        }
        PeriodicStatus::Inadmissible
    }
}

fn lcm(a: usize, b: usize) -> usize {
    num::integer::lcm(a, b)
}

/// Persistent per-length cache of counts (and optionally full layers),
/// keyed by a digest of the oracle's `family_id`.
#[derive(Debug, Default)]
pub struct LayerCache {
    entries: HashMap<(String, usize), CacheEntry>,
    family_names: HashMap<String, String>,
}

#[derive(Debug, Clone)]
struct CacheEntry {
    alphabet_size: usize,
    count: BigUint,
    words: Option<Vec<Word>>,
}

pub fn family_digest(family_id: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(family_id.as_bytes());
    let out = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in out {
        let _ = write!(hex, "{byte:02x}");
    }
    hex
}

impl LayerCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get_count(&self, family_id: &str, n: usize) -> Option<&BigUint> {
        self.entries
            .get(&(family_digest(family_id), n))
            .map(|e| &e.count)
    }

    pub fn get_words(&self, family_id: &str, n: usize) -> Option<&[Word]> {
        self.entries
            .get(&(family_digest(family_id), n))
            .and_then(|e| e.words.as_deref())
    }

    pub fn put_count(&mut self, family_id: &str, alphabet: Alphabet, n: usize, count: BigUint) {
        let digest = family_digest(family_id);
        self.family_names
            .insert(digest.clone(), family_id.to_string());
        self.entries
            .entry((digest, n))
            .or_insert_with(|| CacheEntry {
                alphabet_size: alphabet.size(),
                count: BigUint::zero(),
                words: None,
            })
            .count = count;
    }

    pub fn put_words(&mut self, family_id: &str, alphabet: Alphabet, n: usize, words: Vec<Word>) {
        let count = BigUint::from(words.len());
        let digest = family_digest(family_id);
        self.family_names
            .insert(digest.clone(), family_id.to_string());
        self.entries.insert(
            (digest, n),
            CacheEntry {
                alphabet_size: alphabet.size(),
                count,
                words: Some(words),
            },
        );
    }

    /// Load from the line-oriented text format written by [`save`].
    pub fn load(path: &Path) -> Result<Self> {
        let file = std::fs::File::open(path)?;
        let reader = std::io::BufReader::new(file);
        let mut cache = LayerCache::new();
        for line in reader.lines() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("#family ") {
                if let Some((digest, name)) = rest.split_once(' ') {
                    cache
                        .family_names
                        .insert(digest.to_string(), name.to_string());
                }
                continue;
            }
            if line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            let (digest, n, k, count) = match (parts.next(), parts.next(), parts.next(), parts.next())
            {
                (Some(d), Some(n), Some(k), Some(c)) => (d, n, k, c),
                _ => return Err(Error::Config(format!("malformed cache line `{line}`"))),
            };
            let n: usize = n
                .parse()
                .map_err(|_| Error::Config(format!("bad length in cache line `{line}`")))?;
            let alphabet_size: usize = k
                .parse()
                .map_err(|_| Error::Config(format!("bad alphabet in cache line `{line}`")))?;
            let count = count
                .parse::<BigUint>()
                .map_err(|_| Error::Config(format!("bad count in cache line `{line}`")))?;
            let words = match parts.next() {
                None | Some("") => None,
                Some(joined) => {
                    let alphabet = Alphabet::new(alphabet_size)?;
                    let words: std::result::Result<Vec<Word>, _> = joined
                        .split(',')
                        .map(|t| Word::parse(t, alphabet))
                        .collect();
                    Some(words?)
                }
            };
            cache.entries.insert(
                (digest.to_string(), n),
                CacheEntry {
                    alphabet_size,
                    count,
                    words,
                },
            );
        }
        Ok(cache)
    }

    /// Write atomically (temp file + rename) in a stable order.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = path.with_extension("tmp");
        {
            let mut file = std::fs::File::create(&tmp)?;
            writeln!(file, "# shiftlab layer cache v1")?;
            let mut names: Vec<_> = self.family_names.iter().collect();
            names.sort();
            for (digest, name) in names {
                writeln!(file, "#family {digest} {name}")?;
            }
            let mut keys: Vec<_> = self.entries.keys().collect();
            keys.sort();
            for key in keys {
                let entry = &self.entries[key];
                write!(
                    file,
                    "{}\t{}\t{}\t{}",
                    key.0, key.1, entry.alphabet_size, entry.count
                )?;
                if let Some(words) = &entry.words {
                    let joined: Vec<String> = words.iter().map(|w| w.to_string()).collect();
                    write!(file, "\t{}", joined.join(","))?;
                }
                writeln!(file)?;
            }
        }
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Per-length counts as in [`count_words`], consulting and filling a
/// [`LayerCache`] when one is supplied.
pub fn count_words_cached(
    oracle: &dyn LanguageOracle,
    n_max: usize,
    budget: &Budget,
    cache: Option<&mut LayerCache>,
) -> Result<Vec<BigUint>> {
    let family = oracle.family_id();
    if let Some(cache) = &cache {
        let mut all = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            match cache.get_count(&family, n) {
                Some(c) => all.push(c.clone()),
                None => break,
            }
        }
        if all.len() == n_max + 1 {
            return Ok(all);
        }
    }
    let counts = count_words(oracle, n_max, budget)?;
    if let Some(cache) = cache {
        for (n, c) in counts.iter().enumerate() {
            cache.put_count(&family, oracle.alphabet(), n, c.clone());
        }
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_mean_dfa() -> Dfa {
        // No two consecutive 1s: state 0 after a 0, state 1 after a 1.
        Dfa {
            alphabet: Alphabet::binary(),
            transitions: vec![vec![Some(0), Some(1)], vec![Some(0), None]],
            initial: 0,
        }
    }

    struct DfaOracle(Dfa);

    impl LanguageOracle for DfaOracle {
        fn alphabet(&self) -> Alphabet {
            self.0.alphabet
        }
        fn contains(&self, w: &Word) -> bool {
            self.0.accepts(w)
        }
        fn automaton(&self) -> Option<&Dfa> {
            Some(&self.0)
        }
        fn family_id(&self) -> String {
            "test-golden-mean".into()
        }
    }

    #[test]
    fn full_shift_counts_are_powers() {
        let full = FullShift::new(Alphabet::binary());
        let counts = count_words(&full, 10, &Budget::default()).unwrap();
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(c, &BigUint::from(1u32 << n));
        }
    }

    #[test]
    fn dfa_counts_match_enumeration() {
        let oracle = DfaOracle(golden_mean_dfa());
        let budget = Budget::default();
        let layers = enumerate(&oracle, 12, &budget).unwrap();
        let counts = count_words(&oracle, 12, &budget).unwrap();
        for n in 0..=12 {
            assert_eq!(BigUint::from(layers[n].len()), counts[n], "length {n}");
        }
        // Fibonacci pattern: 1, 2, 3, 5, 8, ...
        assert_eq!(counts[1], BigUint::from(2u32));
        assert_eq!(counts[2], BigUint::from(3u32));
        assert_eq!(counts[3], BigUint::from(5u32));
        assert_eq!(counts[4], BigUint::from(8u32));
    }

    #[test]
    fn enumeration_layers_are_sorted_and_deduplicated() {
        let oracle = DfaOracle(golden_mean_dfa());
        let layers = enumerate(&oracle, 8, &Budget::default()).unwrap();
        for layer in &layers {
            let mut sorted = layer.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(&sorted, layer);
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let full = FullShift::new(Alphabet::binary());
        let tight = Budget {
            max_words_per_layer: 16,
        };
        let err = enumerate(&full, 10, &tight).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { layer: 5, .. }));
    }

    #[test]
    fn orbit_language_counts_stabilize() {
        let orbit = OrbitLanguage::new(Word::binary(&[0, 1])).unwrap();
        let counts = count_words(&orbit, 10, &Budget::default()).unwrap();
        for (n, count) in counts.iter().enumerate().skip(1) {
            assert_eq!(*count, BigUint::from(2u32), "length {n}");
        }
        let w01 = Word::binary(&[0, 1]);
        let w10 = Word::binary(&[1, 0]);
        let w0101 = Word::binary(&[0, 1, 0, 1]);
        let w11 = Word::binary(&[1, 1]);
        assert_eq!(orbit.periodic_status(&w01, 8), PeriodicStatus::Admissible);
        assert_eq!(orbit.periodic_status(&w10, 8), PeriodicStatus::Admissible);
        assert_eq!(orbit.periodic_status(&w0101, 8), PeriodicStatus::Admissible);
        assert_eq!(orbit.periodic_status(&w11, 8), PeriodicStatus::Inadmissible);
    }

    #[test]
    fn growth_estimate_reports_rates_and_proxy() {
        let full = FullShift::new(Alphabet::binary());
        let counts = count_words(&full, 12, &Budget::default()).unwrap();
        let est = GrowthEstimate::from_counts(counts);
        assert!((est.rates[12] - 2f64.ln()).abs() < 1e-12);
        assert!((est.limsup_proxy - 2f64.ln()).abs() < 1e-12);
        assert_eq!(est.rates[0], f64::NEG_INFINITY);
    }

    #[test]
    fn empty_layers_give_neg_infinity_rates() {
        let est = GrowthEstimate::from_counts(vec![
            BigUint::from(1u32),
            BigUint::from(2u32),
            BigUint::zero(),
        ]);
        assert_eq!(est.rates[2], f64::NEG_INFINITY);
        assert_eq!(est.limsup_proxy, f64::NEG_INFINITY);
    }

    #[test]
    fn cache_round_trips_counts_and_words() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("layers.cache");
        let mut cache = LayerCache::new();
        let alphabet = Alphabet::binary();
        cache.put_count(
            "family-a",
            alphabet,
            30,
            "123456789012345678901234567890".parse().unwrap(),
        );
        cache.put_words(
            "family-b",
            alphabet,
            2,
            vec![Word::binary(&[0, 1]), Word::binary(&[1, 0])],
        );
        cache.save(&path).unwrap();
        let loaded = LayerCache::load(&path).unwrap();
        assert_eq!(
            loaded.get_count("family-a", 30).unwrap(),
            &"123456789012345678901234567890".parse::<BigUint>().unwrap()
        );
        assert_eq!(
            loaded.get_words("family-b", 2).unwrap(),
            &[Word::binary(&[0, 1]), Word::binary(&[1, 0])]
        );
        assert!(loaded.get_count("family-a", 31).is_none());
    }

    #[test]
    fn cached_counting_avoids_recomputation() {
        let full = FullShift::new(Alphabet::binary());
        let mut cache = LayerCache::new();
        let budget = Budget::default();
        let first = count_words_cached(&full, 8, &budget, Some(&mut cache)).unwrap();
        // Poison the cache to prove the second call reads from it.
        cache.put_count(&full.family_id(), full.alphabet(), 8, BigUint::from(999u32));
        let second = count_words_cached(&full, 8, &budget, Some(&mut cache)).unwrap();
        assert_eq!(first[8], BigUint::from(256u32));
        assert_eq!(second[8], BigUint::from(999u32));
    }
}
