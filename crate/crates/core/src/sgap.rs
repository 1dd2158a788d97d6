//! S-gap shifts over `{0,1}`: the admissibility rule constrains the
//! length of every internal run of 0s — a maximal run strictly between
//! two 1s — to lie in a set `S` of allowed gaps. Leading and trailing
//! runs are unconstrained and the all-zero words are admissible, so the
//! language is exactly the factor language read off sequences whose
//! complete gaps obey the rule.

use crate::decomp::{Component, Decomposition};
use crate::lang::{enumerate, Budget, Dfa, LanguageOracle, PeriodicStatus};
use crate::word::{Alphabet, Word};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

/// The set of allowed internal gap lengths. Infinite families carry a
/// truncation bound: gaps above it are treated as disallowed, keeping
/// every routine exact for the truncated rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapRule {
    Explicit(BTreeSet<u64>),
    /// Powers of two up to the truncation bound.
    PowersOfTwo { trunc: u64 },
    /// All naturals (including 0) up to the truncation bound.
    AllNaturals { trunc: u64 },
}

impl GapRule {
    pub fn explicit(gaps: impl IntoIterator<Item = u64>) -> Result<Self> {
        let set: BTreeSet<u64> = gaps.into_iter().collect();
        if set.is_empty() {
            return Err(Error::Config("the gap set must be nonempty".into()));
        }
        Ok(GapRule::Explicit(set))
    }

    pub fn allows(&self, gap: u64) -> bool {
        match self {
            GapRule::Explicit(set) => set.contains(&gap),
            GapRule::PowersOfTwo { trunc } => {
                gap >= 1 && gap <= *trunc && (gap & (gap - 1)) == 0
            }
            GapRule::AllNaturals { trunc } => gap <= *trunc,
        }
    }

    /// Allowed gaps in increasing order (finite by construction).
    pub fn gaps(&self) -> Vec<u64> {
        match self {
            GapRule::Explicit(set) => set.iter().copied().collect(),
            GapRule::PowersOfTwo { trunc } => {
                let mut v = Vec::new();
                let mut g = 1u64;
                while g <= *trunc {
                    v.push(g);
                    g = g.saturating_mul(2);
                }
                v
            }
            GapRule::AllNaturals { trunc } => (0..=*trunc).collect(),
        }
    }

    pub fn max_gap(&self) -> u64 {
        *self.gaps().last().expect("nonempty rule")
    }

    pub fn describe(&self) -> String {
        match self {
            GapRule::Explicit(set) => {
                let items: Vec<String> = set.iter().map(|g| g.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
            GapRule::PowersOfTwo { trunc } => format!("pow2<={trunc}"),
            GapRule::AllNaturals { trunc } => format!("nat<={trunc}"),
        }
    }
}

/// Entropy solve: `lambda` is the root of
/// `sum over allowed gaps n of lambda^{-n-1} = 1` in `(1, 2]`.
#[derive(Debug, Clone, Serialize)]
pub struct GapEntropy {
    pub lambda: f64,
    /// `|1 - sum lambda^{-n-1}|` at the returned root.
    pub residual: f64,
    /// Upper bound on the series mass dropped by truncating an
    /// infinite family: `lambda^{-(trunc+1)} / (lambda - 1)`.
    pub tail_bound: f64,
    pub iterations: u32,
}

/// Solve the gap-series equation by bisection. A single-gap rule gives
/// entropy zero (`lambda = 1`).
pub fn gap_entropy(rule: &GapRule, tol: f64) -> GapEntropy {
    let gaps = rule.gaps();
    if gaps.len() == 1 {
        return GapEntropy {
            lambda: 1.0,
            residual: 0.0,
            tail_bound: 0.0,
            iterations: 0,
        };
    }
    let series = |lambda: f64| -> f64 {
        gaps.iter()
            .map(|&n| lambda.powi(-(n as i32) - 1))
            .sum::<f64>()
    };
    // The series is strictly decreasing in lambda, exceeds 1 at 1+ and
    // is at most 1 at 2, so the root lies in (1, 2].
    let mut lo = 1.0 + 1e-12;
    let mut hi = 2.0;
    let mut iterations = 0u32;
    while hi - lo > tol && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if series(mid) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let lambda = 0.5 * (lo + hi);
    let residual = (1.0 - series(lambda)).abs();
    let tail_bound = match rule {
        GapRule::Explicit(_) => 0.0,
        GapRule::PowersOfTwo { trunc } | GapRule::AllNaturals { trunc } => {
            lambda.powi(-(*trunc as i32) - 1) / (lambda - 1.0)
        }
    };
    GapEntropy {
        lambda,
        residual,
        tail_bound,
        iterations,
    }
}

/// An S-gap shift presented by its display language.
pub struct SGapShift {
    rule: GapRule,
    alphabet: Alphabet,
    dfa: Dfa,
    core_dfa: Dfa,
}

impl SGapShift {
    pub fn new(rule: GapRule) -> Result<Arc<Self>> {
        let alphabet = Alphabet::binary();
        let max_gap = rule.max_gap();
        if max_gap > 4096 {
            return Err(Error::Config(
                "gap bound too large for the counting automaton (max 4096)".into(),
            ));
        }
        let dfa = build_display_dfa(&rule, alphabet);
        let core_dfa = build_core_dfa(&rule, alphabet);
        Ok(Arc::new(SGapShift {
            rule,
            alphabet,
            dfa,
            core_dfa,
        }))
    }

    pub fn rule(&self) -> &GapRule {
        &self.rule
    }

    /// Natural-log entropy via the gap series.
    pub fn entropy(&self, tol: f64) -> GapEntropy {
        gap_entropy(&self.rule, tol)
    }

    /// Strongly connected presentation of the recurrent core (words in
    /// which every gap, including boundary ones, is allowed). Suitable
    /// for stationary path measures; counts a smaller language than the
    /// display automaton.
    pub fn core_presentation(&self) -> &Dfa {
        &self.core_dfa
    }

    /// The decomposition: good = complete blocks `0^{n_1} 1 ... 0^{n_k} 1`
    /// with every gap allowed, prefixes = `0^a 1` with `a` disallowed
    /// (plus the empty word), suffixes = all-zero words.
    pub fn decomposition(self: &Arc<Self>) -> Decomposition {
        Decomposition {
            prefixes: Arc::new(SGapPrefixComponent(self.clone())),
            good: Arc::new(SGapGoodComponent(self.clone())),
            suffixes: Arc::new(SGapSuffixComponent(self.clone())),
            gap: 0,
            periodic_glue: true,
        }
    }

    /// Smallest connector length `t` such that `left ++ v ++ right` is
    /// admissible for some admissible `v` of length `t`, with a witness.
    pub fn min_gap(
        &self,
        left: &Word,
        right: &Word,
        t_cap: usize,
        budget: &Budget,
    ) -> Result<Option<(usize, Word)>> {
        let layers = enumerate(self, t_cap, budget)?;
        for (t, layer) in layers.iter().enumerate() {
            for v in layer {
                let cand = left.concat(v).concat(right);
                if self.contains(&cand) {
                    return Ok(Some((t, v.clone())));
                }
            }
        }
        Ok(None)
    }

    fn block_word_allowed(&self, w: &Word) -> bool {
        // Must be a concatenation of blocks `0^n 1` with allowed `n`.
        if w.is_empty() {
            return true;
        }
        if *w.symbols().last().unwrap() != 1 {
            return false;
        }
        let mut zeros = 0u64;
        for &s in w.symbols() {
            if s == 0 {
                zeros += 1;
            } else {
                if !self.rule.allows(zeros) {
                    return false;
                }
                zeros = 0;
            }
        }
        true
    }
}

fn build_display_dfa(rule: &GapRule, alphabet: Alphabet) -> Dfa {
    // States: 0 = leading (no 1 yet), 1 + j = "j zeros since the last
    // 1" for j in 0..=max_gap, last = trailing run already longer than
    // any allowed gap.
    let max_gap = rule.max_gap() as usize;
    let leading = 0usize;
    let run = |j: usize| 1 + j;
    let trailing = 1 + max_gap + 1;
    let num_states = trailing + 1;
    let mut transitions = vec![vec![None; alphabet.size()]; num_states];
    transitions[leading][0] = Some(leading as u32);
    transitions[leading][1] = Some(run(0) as u32);
    for j in 0..=max_gap {
        transitions[run(j)][0] = Some(if j < max_gap {
            run(j + 1) as u32
        } else {
            trailing as u32
        });
        if rule.allows(j as u64) {
            transitions[run(j)][1] = Some(run(0) as u32);
        }
    }
    transitions[trailing][0] = Some(trailing as u32);
    Dfa {
        alphabet,
        transitions,
        initial: leading as u32,
    }
}

fn build_core_dfa(rule: &GapRule, alphabet: Alphabet) -> Dfa {
    // Recurrent core: states "j zeros since the last 1"; every gap must
    // close with an allowed length.
    let max_gap = rule.max_gap() as usize;
    let mut transitions = vec![vec![None; alphabet.size()]; max_gap + 1];
    for (j, row) in transitions.iter_mut().enumerate() {
        if j < max_gap {
            row[0] = Some((j + 1) as u32);
        }
        if rule.allows(j as u64) {
            row[1] = Some(0);
        }
    }
    Dfa {
        alphabet,
        transitions,
        initial: 0,
    }
}

impl LanguageOracle for SGapShift {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        // Scan internal gaps directly; boundary runs are free.
        let mut seen_one = false;
        let mut zeros = 0u64;
        for &s in w.symbols() {
            if s == 0 {
                zeros += 1;
            } else {
                if seen_one && !self.rule.allows(zeros) {
                    return false;
                }
                seen_one = true;
                zeros = 0;
            }
        }
        true
    }

    fn automaton(&self) -> Option<&Dfa> {
        Some(&self.dfa)
    }

    fn family_id(&self) -> String {
        format!("sgap{{{}}}", self.rule.describe())
    }

    fn periodic_exact(&self) -> bool {
        true
    }

    fn periodic_status(&self, w: &Word, _repeat_check: usize) -> PeriodicStatus {
        if w.is_empty() {
            return PeriodicStatus::Inadmissible;
        }
        let ones: Vec<usize> = w
            .symbols()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == 1)
            .map(|(i, _)| i)
            .collect();
        if ones.is_empty() {
            // The zero stream is admissible.
            return PeriodicStatus::Admissible;
        }
        // In `w^infinity`, every gap is circular: the internal gaps of
        // `w` plus the wrap-around gap.
        for pair in ones.windows(2) {
            let gap = (pair[1] - pair[0] - 1) as u64;
            if !self.rule.allows(gap) {
                return PeriodicStatus::Inadmissible;
            }
        }
        let wrap = (w.len() - ones.last().unwrap() - 1 + ones[0]) as u64;
        if self.rule.allows(wrap) {
            PeriodicStatus::Admissible
        } else {
            PeriodicStatus::Inadmissible
        }
    }
}

/// Good core: complete blocks with every gap allowed.
pub struct SGapGoodComponent(pub Arc<SGapShift>);

impl Component for SGapGoodComponent {
    fn contains(&self, w: &Word) -> bool {
        self.0.block_word_allowed(w)
    }

    fn describe(&self) -> String {
        "complete allowed blocks".into()
    }
}

/// Prefix collection: `0^a 1` with `a` not an allowed gap, or empty.
/// (An allowed leading run is absorbed by the good core instead.)
pub struct SGapPrefixComponent(pub Arc<SGapShift>);

impl Component for SGapPrefixComponent {
    fn contains(&self, w: &Word) -> bool {
        if w.is_empty() {
            return true;
        }
        let n = w.len();
        if w.symbols()[n - 1] != 1 || w.symbols()[..n - 1].iter().any(|&s| s != 0) {
            return false;
        }
        !self.0.rule.allows((n - 1) as u64)
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        if n == 0 {
            return Some(vec![Word::empty(self.0.alphabet)]);
        }
        if self.0.rule.allows((n - 1) as u64) {
            return Some(vec![]);
        }
        let mut symbols = vec![0u8; n - 1];
        symbols.push(1);
        Some(vec![Word::new(symbols, self.0.alphabet).unwrap()])
    }

    fn describe(&self) -> String {
        "disallowed leading run closed by a 1".into()
    }
}

/// Suffix collection: all-zero words (trailing runs are free).
pub struct SGapSuffixComponent(pub Arc<SGapShift>);

impl Component for SGapSuffixComponent {
    fn contains(&self, w: &Word) -> bool {
        w.symbols().iter().all(|&s| s == 0)
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        Some(vec![Word::new(vec![0u8; n], self.0.alphabet).unwrap()])
    }

    fn describe(&self) -> String {
        "all-zero trailing runs".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::count_words;
    use num::BigUint;

    fn s12() -> Arc<SGapShift> {
        SGapShift::new(GapRule::explicit([1, 2]).unwrap()).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::binary()).unwrap()
    }

    #[test]
    fn membership_checks_internal_gaps_only() {
        let s = s12();
        assert!(s.contains(&w("0000")));
        assert!(s.contains(&w("101")));
        assert!(s.contains(&w("1001")));
        assert!(s.contains(&w("01010"))); // gaps 1, 1
        assert!(!s.contains(&w("11"))); // gap 0
        assert!(!s.contains(&w("0110"))); // adjacent 1s inside the word
        assert!(!s.contains(&w("10001"))); // gap 3
        assert!(s.contains(&w("100000"))); // trailing run is free
        assert!(s.contains(&w("000001"))); // leading run is free
    }

    #[test]
    fn automaton_counts_match_membership_enumeration() {
        let s = s12();
        let budget = Budget::default();
        let counts = count_words(s.as_ref(), 10, &budget).unwrap();
        let expected = [1u64, 2, 3, 5, 8, 12, 18, 26, 37, 52, 72];
        for (n, e) in expected.iter().enumerate() {
            assert_eq!(counts[n], BigUint::from(*e), "length {n}");
        }
        let layers = enumerate(s.as_ref(), 10, &budget).unwrap();
        for (n, layer) in layers.iter().enumerate() {
            assert_eq!(BigUint::from(layer.len()), counts[n], "layer {n}");
        }
    }

    #[test]
    fn entropy_solves_the_gap_series() {
        let e12 = gap_entropy(&GapRule::explicit([1, 2]).unwrap(), 1e-14);
        assert!((e12.lambda - 1.3247179572447458).abs() < 1e-9);
        assert!(e12.residual < 1e-10);

        let e01 = gap_entropy(&GapRule::explicit([0, 1]).unwrap(), 1e-14);
        assert!((e01.lambda - 1.618033988749895).abs() < 1e-9);

        let nat = gap_entropy(&GapRule::AllNaturals { trunc: 64 }, 1e-14);
        assert!((nat.lambda - 2.0).abs() < 1e-6);

        let pow2 = gap_entropy(&GapRule::PowersOfTwo { trunc: 64 }, 1e-14);
        assert!((pow2.lambda - 1.4484694700045373).abs() < 1e-9);

        let single = gap_entropy(&GapRule::explicit([0]).unwrap(), 1e-14);
        assert_eq!(single.lambda, 1.0);
    }

    #[test]
    fn entropy_of_odd_rule_matches_reference() {
        let e13 = gap_entropy(&GapRule::explicit([1, 3]).unwrap(), 1e-14);
        assert!((e13.lambda - 1.272019649514069).abs() < 1e-9);
    }

    #[test]
    fn periodic_status_uses_circular_gaps() {
        let s = s12();
        assert_eq!(s.periodic_status(&w("01"), 8), PeriodicStatus::Admissible);
        assert_eq!(s.periodic_status(&w("001"), 8), PeriodicStatus::Admissible);
        assert_eq!(
            s.periodic_status(&w("0001"), 8),
            PeriodicStatus::Inadmissible
        );
        assert_eq!(s.periodic_status(&w("1"), 8), PeriodicStatus::Inadmissible);
        assert_eq!(s.periodic_status(&w("0"), 8), PeriodicStatus::Admissible);
        assert_eq!(
            s.periodic_status(&w("10010"), 8),
            PeriodicStatus::Admissible
        );
    }

    #[test]
    fn decomposition_components_and_cover() {
        let s = s12();
        let d = s.decomposition();
        assert!(d.good.contains(&w("0101")));
        assert!(d.good.contains(&w("01001")));
        assert!(!d.good.contains(&w("0100"))); // does not end in 1
        assert!(!d.good.contains(&w("0001"))); // gap 3 not allowed
        assert!(d.prefixes.contains(&w("0001")));
        assert!(!d.prefixes.contains(&w("01"))); // gap 1 is allowed
        assert!(d.suffixes.contains(&w("000")));
        let report =
            crate::decomp::check_parse_cover(s.as_ref(), &d, 10, &Budget::default()).unwrap();
        assert!(report.passed, "uncovered: {:?}", report.uncovered);
    }

    #[test]
    fn prefix_slice_matches_rule() {
        let s2 = SGapShift::new(GapRule::explicit([2]).unwrap()).unwrap();
        let d = s2.decomposition();
        // `01`: leading run of length 1, and 1 is not an allowed gap.
        assert!(d.prefixes.contains(&w("01")));
        let slice = d.prefixes.slice(2).unwrap();
        assert_eq!(slice, vec![w("01")]);
        // Length 3 would be `001` with allowed gap 2: empty slice.
        assert!(d.prefixes.slice(3).unwrap().is_empty());
    }

    #[test]
    fn min_gap_finds_smallest_connector() {
        let s = s12();
        let got = s
            .min_gap(&w("1"), &w("1"), 6, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(got.0, 1);
        let pow2 = SGapShift::new(GapRule::PowersOfTwo { trunc: 64 }).unwrap();
        // 1 0^3 | v | 0^3 1 needs the total zero run to hit a power of
        // two: the smallest admissible filler is `00`.
        let got = pow2
            .min_gap(&w("1000"), &w("0001"), 6, &Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(got.0, 2);
        assert_eq!(got.1, w("00"));
    }

    #[test]
    fn core_presentation_is_strongly_connected() {
        let s = s12();
        assert!(s.core_presentation().is_strongly_connected());
        // The display automaton is not (leading/trailing states).
        assert!(!s.automaton().unwrap().is_strongly_connected());
    }
}
