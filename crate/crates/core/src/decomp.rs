//! Language decompositions `C^p · G · C^s` — every admissible word as
//! prefix + good core + suffix — and the checkable conditions attached
//! to them: gluing of good words with fixed-length connectors
//! (specification), growth comparison between the good core and the
//! prefix/suffix collections, bounded extension of near-good words back
//! into the good core, and a diagnostic separating positive-entropy
//! behaviour from single-orbit collapse.

use crate::lang::{enumerate, Budget, LanguageOracle, PeriodicStatus};
use crate::word::Word;
use crate::{Error, Result};
use num::BigUint;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

/// One collection of words (prefixes, good core, or suffixes) presented
/// by membership, optionally with direct per-length enumeration.
pub trait Component: Send + Sync {
    fn contains(&self, w: &Word) -> bool;

    /// The sorted length-`n` slice, when the collection has enough
    /// structure to enumerate directly. `None` means "filter the
    /// language layer instead".
    fn slice(&self, _n: usize) -> Option<Vec<Word>> {
        None
    }

    fn describe(&self) -> String;
}

/// The collection containing only the empty word.
pub struct EpsilonOnly;

impl Component for EpsilonOnly {
    fn contains(&self, w: &Word) -> bool {
        w.is_empty()
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        // Length 0 needs the alphabet to materialize the empty word;
        // let the caller fall back to filtering that layer.
        if n == 0 {
            None
        } else {
            Some(vec![])
        }
    }

    fn describe(&self) -> String {
        "{empty}".into()
    }
}

/// An explicit finite collection (always includes the empty word
/// implicitly only if present in the set).
pub struct WordSetComponent {
    words: BTreeSet<Word>,
    name: String,
}

impl WordSetComponent {
    pub fn new(words: BTreeSet<Word>, name: impl Into<String>) -> Self {
        WordSetComponent {
            words,
            name: name.into(),
        }
    }
}

impl Component for WordSetComponent {
    fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        Some(self.words.iter().filter(|w| w.len() == n).cloned().collect())
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// A collection defined by a predicate closure.
pub struct FnComponent<F: Fn(&Word) -> bool + Send + Sync> {
    pred: F,
    name: String,
}

impl<F: Fn(&Word) -> bool + Send + Sync> FnComponent<F> {
    pub fn new(pred: F, name: impl Into<String>) -> Self {
        FnComponent {
            pred,
            name: name.into(),
        }
    }
}

impl<F: Fn(&Word) -> bool + Send + Sync> Component for FnComponent<F> {
    fn contains(&self, w: &Word) -> bool {
        (self.pred)(w)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// A three-part decomposition of a language: every admissible word
/// should factor as `p ++ g ++ s` with `p` in `prefixes`, `g` in the
/// good core, and `s` in `suffixes` (any part may be empty).
pub struct Decomposition {
    pub prefixes: Arc<dyn Component>,
    pub good: Arc<dyn Component>,
    pub suffixes: Arc<dyn Component>,
    /// Connector length used when gluing good words.
    pub gap: usize,
    /// Whether glued words are additionally claimed to close up into
    /// periodic points.
    pub periodic_glue: bool,
}

/// One admissible split of a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParseSplit {
    pub prefix_len: usize,
    pub good_len: usize,
    pub suffix_len: usize,
}

impl Decomposition {
    /// All splits `w = p ++ g ++ s` accepted by the three components.
    pub fn parse(&self, w: &Word) -> Vec<ParseSplit> {
        let n = w.len();
        let mut out = Vec::new();
        for i in 0..=n {
            if !self.prefixes.contains(&w.prefix(i)) {
                continue;
            }
            for j in i..=n {
                let good = Word::new(w.symbols()[i..j].to_vec(), w.alphabet()).unwrap();
                if !self.good.contains(&good) {
                    continue;
                }
                if self.suffixes.contains(&w.suffix(n - j)) {
                    out.push(ParseSplit {
                        prefix_len: i,
                        good_len: j - i,
                        suffix_len: n - j,
                    });
                }
            }
        }
        out
    }

    /// Membership in the core window: some split spends at most `m`
    /// symbols on each of the prefix and suffix parts.
    pub fn in_core_window(&self, w: &Word, m: usize) -> bool {
        let n = w.len();
        for i in 0..=m.min(n) {
            if !self.prefixes.contains(&w.prefix(i)) {
                continue;
            }
            for j in (n.saturating_sub(m).max(i)..=n).rev() {
                if !self.suffixes.contains(&w.suffix(n - j)) {
                    continue;
                }
                let good = Word::new(w.symbols()[i..j].to_vec(), w.alphabet()).unwrap();
                if self.good.contains(&good) {
                    return true;
                }
            }
        }
        false
    }

    /// Sorted length-`n` slice of a component, falling back to
    /// filtering the language layer when no direct enumeration exists.
    pub fn component_slice(
        comp: &dyn Component,
        lang: &dyn LanguageOracle,
        n: usize,
        budget: &Budget,
    ) -> Result<Vec<Word>> {
        if let Some(s) = comp.slice(n) {
            let mut s = s;
            s.sort();
            s.dedup();
            return Ok(s);
        }
        let layers = enumerate(lang, n, budget)?;
        Ok(layers[n]
            .iter()
            .filter(|w| comp.contains(w))
            .cloned()
            .collect())
    }
}

/// Whether connectors must have exactly the stated length or may be
/// shorter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GapMode {
    Exact,
    AtMost,
}

/// Parameters for the gluing check.
#[derive(Debug, Clone)]
pub struct SpecParams {
    /// Good words up to this length enter the tuple pool.
    pub n_max: usize,
    /// Largest tuple size glued (pairs up to this size, exhaustively).
    pub max_tuple: usize,
    /// Connector length.
    pub gap: usize,
    pub mode: GapMode,
    /// Also check that glued words close up periodically.
    pub check_periodic: bool,
    /// Depth used by bounded periodicity checks.
    pub repeat_check: usize,
    /// Cap on membership queries before giving up.
    pub max_checks: u64,
}

impl Default for SpecParams {
    fn default() -> Self {
        SpecParams {
            n_max: 6,
            max_tuple: 3,
            gap: 0,
            mode: GapMode::Exact,
            check_periodic: true,
            repeat_check: 48,
            max_checks: 50_000_000,
        }
    }
}

/// A tuple of good words that could not be glued.
#[derive(Debug, Clone, Serialize)]
pub struct GlueFailure {
    pub tuple: Vec<String>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecificationReport {
    pub passed: bool,
    pub gap: usize,
    pub mode: GapMode,
    pub good_pool_size: usize,
    pub tuples_checked: u64,
    pub failures: Vec<GlueFailure>,
    pub periodic_checked: bool,
    pub periodic_failures: Vec<GlueFailure>,
    /// Glued words whose periodicity the oracle could not decide at the
    /// configured depth; reported, not counted as failures.
    pub periodic_undecided: Vec<String>,
    /// With zero-length connectors: whether every glued pair landed
    /// back in the good core, which bootstraps gluing of arbitrary
    /// tuple sizes.
    pub pairwise_closed_in_good: Option<bool>,
}

/// Check that every tuple (sizes `2..=max_tuple`) of good words of
/// length `1..=n_max` can be glued with connectors of the configured
/// length into an admissible word, and optionally that some gluing
/// closes up into a periodic point.
pub fn check_specification(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    params: &SpecParams,
) -> Result<SpecificationReport> {
    let budget = Budget::default();
    let mut pool: Vec<Word> = Vec::new();
    for n in 1..=params.n_max {
        pool.extend(Decomposition::component_slice(
            decomp.good.as_ref(),
            lang,
            n,
            &budget,
        )?);
    }
    let connectors: Vec<Word> = {
        let layers = enumerate(lang, params.gap, &budget)?;
        match params.mode {
            GapMode::Exact => layers[params.gap].clone(),
            GapMode::AtMost => layers.into_iter().flatten().collect(),
        }
    };
    if connectors.is_empty() {
        return Err(Error::Config(format!(
            "no admissible connectors of length {}",
            params.gap
        )));
    }

    let checks = AtomicU64::new(0);
    let mut failures: Vec<GlueFailure> = Vec::new();
    let mut periodic_failures: Vec<GlueFailure> = Vec::new();
    let mut periodic_undecided: Vec<String> = Vec::new();
    let mut tuples_checked = 0u64;
    let mut pairwise_closed = true;

    // Iterate tuples of each size via an odometer over pool indices.
    for size in 2..=params.max_tuple {
        let mut idx = vec![0usize; size];
        if pool.is_empty() {
            break;
        }
        loop {
            let tuple: Vec<&Word> = idx.iter().map(|&i| &pool[i]).collect();
            tuples_checked += 1;
            let glued = glue_tuple(
                lang,
                decomp,
                &tuple,
                &connectors,
                params,
                &checks,
                size == 2,
                &mut pairwise_closed,
            )?;
            match glued {
                GlueOutcome::Ok => {}
                GlueOutcome::NoConnector => {
                    if failures.len() < 8 {
                        failures.push(GlueFailure {
                            tuple: tuple.iter().map(|w| w.to_string()).collect(),
                            reason: "no admissible connector assignment".into(),
                        });
                    } else {
                        // Keep counting tuples but stop recording.
                    }
                }
                GlueOutcome::NoPeriodic => {
                    if periodic_failures.len() < 8 {
                        periodic_failures.push(GlueFailure {
                            tuple: tuple.iter().map(|w| w.to_string()).collect(),
                            reason: "glued word never closes up periodically".into(),
                        });
                    }
                }
                GlueOutcome::PeriodicUndecided(w) => {
                    if periodic_undecided.len() < 8 {
                        periodic_undecided.push(w.to_string());
                    }
                }
            }
            if checks.load(AtomicOrdering::Relaxed) > params.max_checks {
                return Err(Error::VerifyBudget {
                    checks: checks.load(AtomicOrdering::Relaxed),
                    limit: params.max_checks,
                });
            }
            // Advance odometer.
            let mut pos = size;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < pool.len() {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }

    let passed = failures.is_empty() && (!params.check_periodic || periodic_failures.is_empty());
    Ok(SpecificationReport {
        passed,
        gap: params.gap,
        mode: params.mode,
        good_pool_size: pool.len(),
        tuples_checked,
        failures,
        periodic_checked: params.check_periodic,
        periodic_failures,
        periodic_undecided,
        pairwise_closed_in_good: if params.gap == 0 { Some(pairwise_closed) } else { None },
    })
}

enum GlueOutcome {
    Ok,
    NoConnector,
    NoPeriodic,
    PeriodicUndecided(Word),
}

#[allow(clippy::too_many_arguments)]
fn glue_tuple(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    tuple: &[&Word],
    connectors: &[Word],
    params: &SpecParams,
    checks: &AtomicU64,
    track_pairwise: bool,
    pairwise_closed: &mut bool,
) -> Result<GlueOutcome> {
    let slots = tuple.len() - 1;
    let mut combo = vec![0usize; slots];
    let mut any_admissible = false;
    let mut periodic_ok = false;
    let mut periodic_undecided: Option<Word> = None;
    loop {
        let mut glued = tuple[0].clone();
        for (slot, &word) in tuple.iter().enumerate().skip(1) {
            glued = glued.concat(&connectors[combo[slot - 1]]).concat(word);
        }
        checks.fetch_add(1, AtomicOrdering::Relaxed);
        if lang.contains(&glued) {
            any_admissible = true;
            if track_pairwise && params.gap == 0 && !decomp.good.contains(&glued) {
                *pairwise_closed = false;
            }
            if params.check_periodic && !periodic_ok {
                // The glued word must close up with one more connector.
                for tail in connectors {
                    let cycle = glued.concat(tail);
                    checks.fetch_add(1, AtomicOrdering::Relaxed);
                    match lang.periodic_status(&cycle, params.repeat_check) {
                        PeriodicStatus::Admissible => {
                            periodic_ok = true;
                            break;
                        }
                        PeriodicStatus::Undecided => {
                            periodic_undecided.get_or_insert_with(|| cycle.clone());
                        }
                        PeriodicStatus::Inadmissible => {}
                    }
                }
            } else if !params.check_periodic {
                return Ok(GlueOutcome::Ok);
            }
            if periodic_ok {
                return Ok(GlueOutcome::Ok);
            }
        }
        // Advance connector odometer.
        let mut pos = slots;
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            combo[pos] += 1;
            if combo[pos] < connectors.len() {
                break;
            }
            combo[pos] = 0;
        }
        if combo.iter().all(|&c| c == 0) {
            break;
        }
    }
    if !any_admissible {
        return Ok(GlueOutcome::NoConnector);
    }
    if params.check_periodic {
        if let Some(w) = periodic_undecided {
            return Ok(GlueOutcome::PeriodicUndecided(w));
        }
        return Ok(GlueOutcome::NoPeriodic);
    }
    Ok(GlueOutcome::Ok)
}

/// Growth comparison between the full language and the prefix/suffix
/// collections over a trailing window of lengths.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeGrowthReport {
    pub window: (usize, usize),
    /// Per length: `(n, #L_n rate, #(Cp ∪ Cs)_n count, margin)`.
    pub rows: Vec<EdgeGrowthRow>,
    pub min_margin: f64,
    /// Margin threshold regarded as evidence of a genuine growth gap.
    pub threshold: f64,
    pub verdict: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeGrowthRow {
    pub n: usize,
    pub lang_count: String,
    pub lang_rate: f64,
    pub edge_count: u64,
    pub edge_rate: f64,
    pub margin: f64,
}

/// Condition comparing good-complement growth to language growth: the
/// prefix/suffix collections must grow strictly slower. The margin at
/// each window length is `rate(L_n) - rate((C^p ∪ C^s)_n)`; the report
/// carries the pointwise minimum.
pub fn check_edge_growth(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    window: (usize, usize),
    threshold: f64,
    budget: &Budget,
) -> Result<EdgeGrowthReport> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi {
        return Err(Error::Config(format!(
            "bad growth window [{lo}, {hi}]"
        )));
    }
    let lang_counts = crate::lang::count_words(lang, hi, budget)?;
    let mut rows = Vec::new();
    let mut min_margin = f64::INFINITY;
    for (n, lang_count) in lang_counts.iter().enumerate().take(hi + 1).skip(lo) {
        let mut edge: BTreeSet<Word> = BTreeSet::new();
        edge.extend(Decomposition::component_slice(
            decomp.prefixes.as_ref(),
            lang,
            n,
            budget,
        )?);
        edge.extend(Decomposition::component_slice(
            decomp.suffixes.as_ref(),
            lang,
            n,
            budget,
        )?);
        let edge_count = edge.len() as u64;
        let lang_rate = rate_of(lang_count, n);
        let edge_rate = if edge_count == 0 {
            0.0
        } else {
            (edge_count as f64).ln() / n as f64
        };
        let margin = lang_rate - edge_rate;
        min_margin = min_margin.min(margin);
        rows.push(EdgeGrowthRow {
            n,
            lang_count: lang_count.to_string(),
            lang_rate,
            edge_count,
            edge_rate,
            margin,
        });
    }
    Ok(EdgeGrowthReport {
        window,
        rows,
        min_margin,
        threshold,
        verdict: min_margin >= threshold,
    })
}

fn rate_of(count: &BigUint, n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    crate::lang::ln_biguint(count) / n as f64
}

/// Result of the bounded-extension check: every word in the core
/// window should extend into the good core by adding at most `tau`
/// symbols on each side.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub core_margin: usize,
    pub n_max: usize,
    pub tau_cap: usize,
    /// Max over window words of the minimal extension size, when every
    /// word extends.
    pub tau: Option<usize>,
    pub words_checked: u64,
    /// Window words with no extension within the cap.
    pub failures: Vec<String>,
    /// A word attaining the reported `tau`.
    pub witness: Option<String>,
}

/// For every admissible `v` (length <= `n_max`) lying in the core
/// window with margin `m`, search for words `u`, `w` of length at most
/// `tau_cap` with `u ++ v ++ w` in the good core; report the worst
/// minimal `max(|u|, |w|)` or the words that fail.
pub fn check_extension(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    m: usize,
    n_max: usize,
    tau_cap: usize,
    budget: &Budget,
) -> Result<ExtensionReport> {
    let layers = enumerate(lang, n_max, budget)?;
    let pad_layers = enumerate(lang, tau_cap, budget)?;
    // Candidate (left, right) lengths ordered by the extension size
    // max(a, b), so the first success is minimal.
    let mut length_pairs: Vec<(usize, usize)> = (0..=tau_cap)
        .flat_map(|a| (0..=tau_cap).map(move |b| (a, b)))
        .collect();
    length_pairs.sort_by_key(|&(a, b)| (a.max(b), a + b));

    let mut tau = 0usize;
    let mut witness: Option<String> = None;
    let mut failures: Vec<String> = Vec::new();
    let mut words_checked = 0u64;
    for layer in layers.iter().skip(1) {
        for v in layer {
            if !decomp.in_core_window(v, m) {
                continue;
            }
            words_checked += 1;
            let mut best: Option<usize> = None;
            'search: for &(a, b) in &length_pairs {
                for u in &pad_layers[a] {
                    for w in &pad_layers[b] {
                        let cand = u.concat(v).concat(w);
                        if decomp.good.contains(&cand) {
                            best = Some(a.max(b));
                            break 'search;
                        }
                    }
                }
            }
            match best {
                Some(t) => {
                    if t > tau {
                        tau = t;
                        witness = Some(v.to_string());
                    }
                }
                None => {
                    if failures.len() < 8 {
                        failures.push(v.to_string());
                    }
                }
            }
        }
    }
    Ok(ExtensionReport {
        core_margin: m,
        n_max,
        tau_cap,
        tau: if failures.is_empty() { Some(tau) } else { None },
        words_checked,
        failures,
        witness,
    })
}

/// How completely the decomposition covers the language at small
/// lengths: every admissible word must admit at least one split.
#[derive(Debug, Clone, Serialize)]
pub struct ParseCoverReport {
    pub n_max: usize,
    pub words_checked: u64,
    pub uncovered: Vec<String>,
    pub passed: bool,
}

pub fn check_parse_cover(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    n_max: usize,
    budget: &Budget,
) -> Result<ParseCoverReport> {
    let layers = enumerate(lang, n_max, budget)?;
    let mut uncovered = Vec::new();
    let mut words_checked = 0u64;
    for layer in &layers {
        for w in layer {
            words_checked += 1;
            if decomp.parse(w).is_empty() && uncovered.len() < 16 {
                uncovered.push(w.to_string());
            }
        }
    }
    let passed = uncovered.is_empty();
    Ok(ParseCoverReport {
        n_max,
        words_checked,
        uncovered,
        passed,
    })
}

/// Outcome of the entropy-versus-single-orbit diagnostic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DichotomyVerdict {
    PositiveEntropyEvidence,
    SinglePeriodicOrbit,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct DichotomyReport {
    pub depth: usize,
    pub verdict: DichotomyVerdict,
    /// Two good words whose two gluing orders share no common outcome —
    /// the free-concatenation witness behind positive entropy.
    pub witness: Option<(String, String)>,
    /// Periodic word describing the single orbit, when that is the verdict.
    pub orbit_word: Option<String>,
    /// Whether the single-orbit verdict came from the good core alone
    /// (prefix/suffix collections may still contribute other points).
    pub good_core_signal: bool,
    pub counts: Vec<String>,
}

/// Decide, at finite depth, which side of the dichotomy the system
/// shows: a pair of good words generating distinguishable orders
/// (entropy), or collapse of all words onto one periodic orbit.
pub fn dichotomy_diagnostic(
    lang: &dyn LanguageOracle,
    decomp: &Decomposition,
    depth: usize,
    budget: &Budget,
) -> Result<DichotomyReport> {
    let counts = crate::lang::count_words(lang, depth, budget)?;
    let count_strings: Vec<String> = counts.iter().map(|c| c.to_string()).collect();

    // Stabilized counts: try to exhibit one periodic word whose orbit
    // carries every admissible word.
    let tail_start = depth - depth / 3;
    let stabilized = depth >= 6
        && counts[tail_start..].windows(2).all(|w| w[0] == w[1])
        && counts[depth] <= BigUint::from(2 * depth);
    if stabilized {
        if let Some(p) = counts[depth].to_u64_digits().first().copied() {
            let p = p as usize;
            let layers = enumerate(lang, depth, budget)?;
            for cand in &layers[p.min(depth)] {
                let span = cand.periodic_prefix(depth + cand.len());
                if layers[depth].iter().all(|w| w.is_factor_of(&span)) {
                    return Ok(DichotomyReport {
                        depth,
                        verdict: DichotomyVerdict::SinglePeriodicOrbit,
                        witness: None,
                        orbit_word: Some(cand.to_string()),
                        good_core_signal: false,
                        counts: count_strings,
                    });
                }
            }
        }
    }

    // Witness search among short good words: v, w such that the two
    // gluing orders produce disjoint admissible outcomes.
    let pool_depth = depth.min(6);
    let mut pool: Vec<Word> = Vec::new();
    for n in 1..=pool_depth {
        pool.extend(Decomposition::component_slice(
            decomp.good.as_ref(),
            lang,
            n,
            budget,
        )?);
    }
    let connectors = enumerate(lang, decomp.gap, budget)?
        .swap_remove(decomp.gap);
    for (i, v) in pool.iter().enumerate() {
        for w in pool.iter().skip(i + 1) {
            let glue = |a: &Word, b: &Word| -> BTreeSet<Word> {
                connectors
                    .iter()
                    .map(|x| a.concat(x).concat(b))
                    .filter(|cand| lang.contains(cand))
                    .collect()
            };
            let vw = glue(v, w);
            let wv = glue(w, v);
            if vw.is_empty() || wv.is_empty() {
                continue;
            }
            if vw.intersection(&wv).next().is_none() {
                return Ok(DichotomyReport {
                    depth,
                    verdict: DichotomyVerdict::PositiveEntropyEvidence,
                    witness: Some((v.to_string(), w.to_string())),
                    orbit_word: None,
                    good_core_signal: false,
                    counts: count_strings,
                });
            }
        }
    }

    // No distinguishing pair: check whether the good core itself
    // collapses onto one periodic pattern.
    if let Some(shortest) = pool.iter().min_by_key(|w| w.len()) {
        let ok = pool.iter().all(|g| {
            let span = shortest.periodic_prefix(g.len() + shortest.len());
            g.is_prefix_of(&span) || g.is_factor_of(&span)
        });
        if ok {
            return Ok(DichotomyReport {
                depth,
                verdict: DichotomyVerdict::SinglePeriodicOrbit,
                witness: None,
                orbit_word: Some(shortest.to_string()),
                good_core_signal: true,
                counts: count_strings,
            });
        }
    }

    Ok(DichotomyReport {
        depth,
        verdict: DichotomyVerdict::Inconclusive,
        witness: None,
        orbit_word: None,
        good_core_signal: false,
        counts: count_strings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{FullShift, OrbitLanguage};
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::binary()).unwrap()
    }

    fn set_component(words: &[&str], name: &str) -> Arc<dyn Component> {
        let set: BTreeSet<Word> = words.iter().map(|s| w(s)).collect();
        Arc::new(WordSetComponent::new(set, name))
    }

    /// Full shift with the trivial decomposition: everything is good.
    fn full_decomp() -> (FullShift, Decomposition) {
        let full = FullShift::new(Alphabet::binary());
        let d = Decomposition {
            prefixes: Arc::new(EpsilonOnly),
            good: Arc::new(FnComponent::new(|_: &Word| true, "all words")),
            suffixes: Arc::new(EpsilonOnly),
            gap: 0,
            periodic_glue: true,
        };
        (full, d)
    }

    #[test]
    fn full_shift_glues_everything() {
        let (full, d) = full_decomp();
        let report = check_specification(&full, &d, &SpecParams::default()).unwrap();
        assert!(report.passed);
        assert_eq!(report.pairwise_closed_in_good, Some(true));
        assert!(report.failures.is_empty());
    }

    #[test]
    fn explicit_good_set_failure_is_witnessed() {
        // Good = {1, 10} inside the ``no 11'' language with zero-length
        // connectors: the pair (1, 1) glues to 11, which is forbidden.
        let dfa = crate::lang::Dfa {
            alphabet: Alphabet::binary(),
            transitions: vec![vec![Some(0), Some(1)], vec![Some(0), None]],
            initial: 0,
        };
        struct NoDoubleOnes(crate::lang::Dfa);
        impl LanguageOracle for NoDoubleOnes {
            fn alphabet(&self) -> Alphabet {
                self.0.alphabet
            }
            fn contains(&self, w: &Word) -> bool {
                self.0.accepts(w)
            }
            fn automaton(&self) -> Option<&crate::lang::Dfa> {
                Some(&self.0)
            }
            fn family_id(&self) -> String {
                "test-no-11".into()
            }
        }
        let lang = NoDoubleOnes(dfa);
        let d = Decomposition {
            prefixes: Arc::new(EpsilonOnly),
            good: set_component(&["1", "10"], "{1,10}"),
            suffixes: Arc::new(EpsilonOnly),
            gap: 0,
            periodic_glue: false,
        };
        let params = SpecParams {
            n_max: 2,
            max_tuple: 2,
            check_periodic: false,
            ..SpecParams::default()
        };
        let report = check_specification(&lang, &d, &params).unwrap();
        assert!(!report.passed);
        assert!(report
            .failures
            .iter()
            .any(|f| f.tuple == vec!["1".to_string(), "1".to_string()]));
    }

    #[test]
    fn parse_enumerates_all_splits() {
        let (_, d) = full_decomp();
        let splits = d.parse(&w("0110"));
        // Prefix and suffix must be empty, good takes everything.
        assert_eq!(splits.len(), 1);
        assert_eq!(splits[0].good_len, 4);
        assert!(d.in_core_window(&w("0110"), 0));
    }

    #[test]
    fn extension_search_reports_zero_for_full_shift() {
        let (full, d) = full_decomp();
        let report = check_extension(&full, &d, 3, 5, 3, &Budget::default()).unwrap();
        assert_eq!(report.tau, Some(0));
        assert!(report.failures.is_empty());
    }

    #[test]
    fn dichotomy_sees_entropy_in_full_shift() {
        let (full, d) = full_decomp();
        let report = dichotomy_diagnostic(&full, &d, 10, &Budget::default()).unwrap();
        assert_eq!(report.verdict, DichotomyVerdict::PositiveEntropyEvidence);
        assert!(report.witness.is_some());
    }

    #[test]
    fn dichotomy_sees_single_orbit_language() {
        let orbit = OrbitLanguage::new(w("01")).unwrap();
        let d = Decomposition {
            prefixes: Arc::new(EpsilonOnly),
            good: Arc::new(FnComponent::new(|_: &Word| true, "all words")),
            suffixes: Arc::new(EpsilonOnly),
            gap: 0,
            periodic_glue: true,
        };
        let report = dichotomy_diagnostic(&orbit, &d, 12, &Budget::default()).unwrap();
        assert_eq!(report.verdict, DichotomyVerdict::SinglePeriodicOrbit);
        assert!(report.orbit_word.is_some());
    }

    #[test]
    fn edge_growth_margin_for_full_shift_with_trivial_edges() {
        let (full, d) = full_decomp();
        let report =
            check_edge_growth(&full, &d, (4, 8), 0.05, &Budget::default()).unwrap();
        // Edges are {empty}, so the margin equals the language rate ln 2.
        assert!((report.min_margin - 2f64.ln()).abs() < 1e-9);
        assert!(report.verdict);
    }

    #[test]
    fn parse_cover_detects_missing_words() {
        let full = FullShift::new(Alphabet::binary());
        let d = Decomposition {
            prefixes: Arc::new(EpsilonOnly),
            good: set_component(&["", "0", "1"], "short words only"),
            suffixes: Arc::new(EpsilonOnly),
            gap: 0,
            periodic_glue: false,
        };
        let report = check_parse_cover(&full, &d, 3, &Budget::default()).unwrap();
        assert!(!report.passed);
        assert!(!report.uncovered.is_empty());
    }
}
