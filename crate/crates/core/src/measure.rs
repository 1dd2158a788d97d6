//! Measures at desk scale: periodic-point inventories, empirical
//! cylinder frequencies of the counting measure on long words, and the
//! stationary Markov measure attached to a strongly connected
//! presentation (the unique maximal-entropy candidate when it applies).

use crate::decomp::Component;
use crate::lang::{enumerate, Budget, Dfa, LanguageOracle, PeriodicStatus};
use crate::word::Word;
use crate::{Error, Result};
use num::traits::ToPrimitive;
use num::BigUint;
use num::Zero;
use serde::Serialize;

/// Inventory of periodic points up to a period bound. A primitive word
/// `w` of length `q` stands for the point `w^infinity`; distinct
/// primitive words give distinct points, so counting words counts
/// points of least period `q`.
#[derive(Debug, Clone, Serialize)]
pub struct PeriodicSet {
    pub q_max: usize,
    /// `counts[q]` = number of points of least period exactly `q`.
    pub counts: Vec<u64>,
    /// `cumulative[n]` = number of points of least period at most `n`.
    pub cumulative: Vec<u64>,
    /// Primitive admissible words per period.
    pub words: Vec<Vec<Word>>,
    /// Words whose status the oracle could not decide.
    pub undecided: Vec<Word>,
    /// True when every status came from an exact decision procedure
    /// and nothing was left undecided.
    pub certified: bool,
}

pub fn periodic_points(
    oracle: &dyn LanguageOracle,
    q_max: usize,
    repeat_check: usize,
    budget: &Budget,
) -> Result<PeriodicSet> {
    // A word admissible as a power must itself be in the language, so
    // language layers bound the search.
    let layers = enumerate(oracle, q_max, budget)?;
    let mut counts = vec![0u64; q_max + 1];
    let mut words: Vec<Vec<Word>> = vec![Vec::new(); q_max + 1];
    let mut undecided = Vec::new();
    for q in 1..=q_max {
        for w in &layers[q] {
            if !w.is_primitive() {
                continue;
            }
            match oracle.periodic_status(w, repeat_check) {
                PeriodicStatus::Admissible => {
                    counts[q] += 1;
                    words[q].push(w.clone());
                }
                PeriodicStatus::Inadmissible => {}
                PeriodicStatus::Undecided => undecided.push(w.clone()),
            }
        }
    }
    let mut cumulative = vec![0u64; q_max + 1];
    let mut acc = 0u64;
    for q in 1..=q_max {
        acc += counts[q];
        cumulative[q] = acc;
    }
    let certified = oracle.periodic_exact() && undecided.is_empty();
    Ok(PeriodicSet {
        q_max,
        counts,
        cumulative,
        words,
        undecided,
        certified,
    })
}

impl PeriodicSet {
    /// Empirical measure of the cylinder `[w]` under the uniform
    /// distribution on all periodic points of period at most `n`:
    /// each point of least period `q` visits the cylinder once per
    /// occurrence of `w` in one period window of length `q`.
    pub fn cylinder_frequency(&self, w: &Word, n: usize) -> f64 {
        let n = n.min(self.q_max);
        let mut mass = 0f64;
        let mut total = 0f64;
        for q in 1..=n {
            for p in &self.words[q] {
                total += 1.0;
                // Occurrences of w in the periodic stream, per period.
                let window = p.periodic_prefix(q + w.len().saturating_sub(1));
                let mut hits = 0usize;
                for k in 0..q {
                    if window.symbols()[k..k + w.len()] == *w.symbols() {
                        hits += 1;
                    }
                }
                mass += hits as f64 / q as f64;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            mass / total
        }
    }

    /// Growth rates `ln(cumulative[n]) / n` for each period bound.
    pub fn growth_rates(&self) -> Vec<f64> {
        self.cumulative
            .iter()
            .enumerate()
            .map(|(n, &c)| {
                if n == 0 || c == 0 {
                    f64::NEG_INFINITY
                } else {
                    (c as f64).ln() / n as f64
                }
            })
            .collect()
    }
}

/// Empirical cylinder frequencies of the uniform distribution on the
/// length-`m` slice of the language: the average over positions of the
/// fraction of slice words showing `w` at that position.
pub struct EmpiricalMeasure {
    m: usize,
    route: MeasureRoute,
    total: BigUint,
}

enum MeasureRoute {
    /// Path-count tables over a deterministic presentation.
    Automaton {
        dfa: Dfa,
        forward: Vec<Vec<BigUint>>,
        backward: Vec<Vec<BigUint>>,
    },
    /// Explicit slice of the language.
    Enumerated { slice: Vec<Word> },
}

impl EmpiricalMeasure {
    /// Build using the automaton when the oracle has one, otherwise by
    /// enumerating the slice.
    pub fn new(oracle: &dyn LanguageOracle, m: usize, budget: &Budget) -> Result<Self> {
        if let Some(cap) = oracle.max_supported_len() {
            if m > cap {
                return Err(Error::DepthUnsupported {
                    requested: m,
                    max: cap,
                });
            }
        }
        if let Some(dfa) = oracle.automaton() {
            let forward = dfa.forward_path_counts(m);
            let backward = dfa.backward_path_counts(m);
            let total = forward[m].iter().sum();
            return Ok(EmpiricalMeasure {
                m,
                route: MeasureRoute::Automaton {
                    dfa: dfa.clone(),
                    forward,
                    backward,
                },
                total,
            });
        }
        let mut layers = enumerate(oracle, m, budget)?;
        let slice = layers.pop().expect("layer m");
        let total = BigUint::from(slice.len());
        Ok(EmpiricalMeasure {
            m,
            route: MeasureRoute::Enumerated { slice },
            total,
        })
    }

    /// Force the enumeration route (for cross-checking the automaton).
    pub fn new_enumerated(
        oracle: &dyn LanguageOracle,
        m: usize,
        budget: &Budget,
    ) -> Result<Self> {
        let mut layers = enumerate(oracle, m, budget)?;
        let slice = layers.pop().expect("layer m");
        let total = BigUint::from(slice.len());
        Ok(EmpiricalMeasure {
            m,
            route: MeasureRoute::Enumerated { slice },
            total,
        })
    }

    pub fn slice_len(&self) -> &BigUint {
        &self.total
    }

    pub fn route_name(&self) -> &'static str {
        match self.route {
            MeasureRoute::Automaton { .. } => "automaton",
            MeasureRoute::Enumerated { .. } => "enumeration",
        }
    }

    /// Estimated cylinder mass of `w`.
    pub fn estimate(&self, w: &Word) -> f64 {
        let n = w.len();
        if n > self.m || self.total.is_zero() {
            return 0.0;
        }
        let positions = self.m - n + 1;
        let occurrences: BigUint = match &self.route {
            MeasureRoute::Automaton {
                dfa,
                forward,
                backward,
            } => {
                let mut acc = BigUint::zero();
                for k in 0..positions {
                    for s in 0..dfa.num_states() as u32 {
                        if forward[k][s as usize].is_zero() {
                            continue;
                        }
                        let mut state = s;
                        let mut ok = true;
                        for &sym in w.symbols() {
                            match dfa.step(state, sym) {
                                Some(next) => state = next,
                                None => {
                                    ok = false;
                                    break;
                                }
                            }
                        }
                        if ok {
                            acc += &forward[k][s as usize]
                                * &backward[self.m - k - n][state as usize];
                        }
                    }
                }
                acc
            }
            MeasureRoute::Enumerated { slice } => {
                let mut acc = 0u64;
                for u in slice {
                    for k in 0..positions {
                        if u.symbols()[k..k + n] == *w.symbols() {
                            acc += 1;
                        }
                    }
                }
                BigUint::from(acc)
            }
        };
        let denom = &self.total * BigUint::from(positions);
        big_ratio(&occurrences, &denom)
    }
}

fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    if den.is_zero() {
        return 0.0;
    }
    // Scale down together so both fit in f64.
    let bits = num.bits().max(den.bits());
    if bits <= 1000 {
        num.to_f64().unwrap_or(0.0) / den.to_f64().unwrap_or(f64::INFINITY)
    } else {
        let shift = bits - 900;
        (num >> shift).to_f64().unwrap_or(0.0) / (den >> shift).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Stationary Markov measure of a strongly connected deterministic
/// presentation, built from the Perron eigendata of its adjacency
/// matrix.
#[derive(Debug, Clone, Serialize)]
pub struct StationaryMarkov {
    pub lambda: f64,
    pub residual: f64,
    left: Vec<f64>,
    right: Vec<f64>,
    normalizer: f64,
    #[serde(skip)]
    dfa: Option<Dfa>,
}

impl StationaryMarkov {
    /// Requires a strongly connected presentation; the display
    /// automata with transient lead-in or absorbing tail states must
    /// pass their recurrent core instead.
    pub fn from_presentation(dfa: &Dfa) -> Result<Self> {
        if !dfa.is_strongly_connected() {
            return Err(Error::Config(
                "stationary measure needs a strongly connected presentation".into(),
            ));
        }
        let n = dfa.num_states();
        let adj = adjacency(dfa);
        let adj_t = transpose(&adj);
        let (right, lambda_r) = perron_vector(&adj, n);
        let (left, lambda_l) = perron_vector(&adj_t, n);
        let lambda = 0.5 * (lambda_r + lambda_l);
        let residual = residual_inf(&adj, &right, lambda).max(residual_inf(&adj_t, &left, lambda));
        let normalizer: f64 = left.iter().zip(&right).map(|(l, r)| l * r).sum();
        Ok(StationaryMarkov {
            lambda,
            residual,
            left,
            right,
            normalizer,
            dfa: Some(dfa.clone()),
        })
    }

    /// Measure of the cylinder `[w]`: sum over start states of
    /// `l_i * r_{delta(i, w)}`, normalized and damped by `lambda^{-|w|}`.
    pub fn cylinder(&self, w: &Word) -> f64 {
        let dfa = self.dfa.as_ref().expect("presentation");
        let mut acc = 0f64;
        for i in 0..dfa.num_states() as u32 {
            let mut state = i;
            let mut ok = true;
            for &sym in w.symbols() {
                match dfa.step(state, sym) {
                    Some(next) => state = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                acc += self.left[i as usize] * self.right[state as usize];
            }
        }
        acc / (self.normalizer * self.lambda.powi(w.len() as i32))
    }

    pub fn entropy(&self) -> f64 {
        self.lambda.ln()
    }
}

fn adjacency(dfa: &Dfa) -> Vec<Vec<f64>> {
    let n = dfa.num_states();
    let mut a = vec![vec![0f64; n]; n];
    for (i, row) in dfa.transitions.iter().enumerate() {
        for target in row.iter().flatten() {
            a[i][*target as usize] += 1.0;
        }
    }
    a
}

fn transpose(a: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut t = vec![vec![0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            t[j][i] = a[i][j];
        }
    }
    t
}

fn mat_vec(a: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn residual_inf(a: &[Vec<f64>], v: &[f64], lambda: f64) -> f64 {
    mat_vec(a, v)
        .iter()
        .zip(v)
        .map(|(av, x)| (av - lambda * x).abs())
        .fold(0.0, f64::max)
}

/// Power iteration on `A + I` (primitive for irreducible `A`), with the
/// eigenvalue recovered from the Rayleigh quotient of `A` itself.
fn perron_vector(a: &[Vec<f64>], n: usize) -> (Vec<f64>, f64) {
    let mut v = vec![1.0 / n as f64; n];
    let mut lambda = 1.0;
    for _ in 0..200_000 {
        let mut next = mat_vec(a, &v);
        for (x, y) in next.iter_mut().zip(&v) {
            *x += *y;
        }
        let norm: f64 = next.iter().sum();
        for x in &mut next {
            *x /= norm;
        }
        let av = mat_vec(a, &next);
        let num: f64 = av.iter().zip(&next).map(|(x, y)| x * y).sum();
        let den: f64 = next.iter().map(|x| x * x).sum();
        let new_lambda = num / den;
        let done = (new_lambda - lambda).abs() < 1e-15
            && residual_inf(a, &next, new_lambda) < 1e-13;
        v = next;
        lambda = new_lambda;
        if done {
            break;
        }
    }
    (v, lambda)
}

/// One length layer of the ratio data used for two-sided density
/// evidence.
#[derive(Debug, Clone, Serialize)]
pub struct GibbsRow {
    pub n: usize,
    /// Smallest `estimate(w) * e^{n h}` over core words of length `n`.
    pub min_core: Option<(String, f64)>,
    /// Largest over all language words of length `n`.
    pub max_all: Option<(String, f64)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GibbsReport {
    pub entropy: f64,
    pub rows: Vec<GibbsRow>,
    pub lower: f64,
    pub lower_witness: String,
    pub upper: f64,
    pub upper_witness: String,
}

/// Scan `estimate(w) * e^{|w| h}` over every language word up to
/// `n_max`, tracking the minimum over the core component and the
/// maximum over everything. Two-sided bounds bounded away from 0 and
/// infinity are the Gibbs-type evidence for the counting measure.
pub fn gibbs_report(
    oracle: &dyn LanguageOracle,
    core: &dyn Component,
    measure: &EmpiricalMeasure,
    entropy: f64,
    n_max: usize,
    budget: &Budget,
) -> Result<GibbsReport> {
    let layers = enumerate(oracle, n_max, budget)?;
    let mut rows = Vec::new();
    let mut lower = f64::INFINITY;
    let mut lower_witness = String::new();
    let mut upper = f64::NEG_INFINITY;
    let mut upper_witness = String::new();
    for (n, layer) in layers.iter().enumerate().skip(1) {
        let mut min_core: Option<(String, f64)> = None;
        let mut max_all: Option<(String, f64)> = None;
        let weight = (n as f64 * entropy).exp();
        for w in layer {
            let value = measure.estimate(w) * weight;
            if core.contains(w)
                && min_core.as_ref().is_none_or(|(_, v)| value < *v)
            {
                min_core = Some((w.to_string(), value));
            }
            if max_all.as_ref().is_none_or(|(_, v)| value > *v) {
                max_all = Some((w.to_string(), value));
            }
        }
        if let Some((w, v)) = &min_core {
            if *v < lower {
                lower = *v;
                lower_witness = w.clone();
            }
        }
        if let Some((w, v)) = &max_all {
            if *v > upper {
                upper = *v;
                upper_witness = w.clone();
            }
        }
        rows.push(GibbsRow {
            n,
            min_core,
            max_all,
        });
    }
    Ok(GibbsReport {
        entropy,
        rows,
        lower,
        lower_witness,
        upper,
        upper_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::{BetaShift, BetaSpec};
    use crate::sgap::{GapRule, SGapShift};
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(s, Alphabet::binary()).unwrap()
    }

    #[test]
    fn periodic_counts_for_golden_ratio_shift() {
        let beta = BetaShift::new(BetaSpec::Golden, 32).unwrap();
        let set = periodic_points(beta.as_ref(), 10, 48, &Budget::default()).unwrap();
        assert_eq!(&set.counts[1..], &[1, 2, 3, 4, 10, 12, 28, 40, 72, 110]);
        assert_eq!(
            &set.cumulative[1..],
            &[1, 3, 6, 10, 20, 32, 60, 100, 172, 282]
        );
        assert!(set.certified);
        assert!(set.undecided.is_empty());
    }

    #[test]
    fn stationary_measure_matches_golden_eigendata() {
        let beta = BetaShift::new(BetaSpec::Golden, 32).unwrap();
        let markov = StationaryMarkov::from_presentation(beta.automaton().unwrap()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((markov.lambda - phi).abs() < 1e-12, "{}", markov.lambda);
        assert!(markov.residual < 1e-10);
        let expected = [
            ("000", 0.2763932022500211),
            ("001", 0.17082039324993692),
            ("010", 0.2763932022500211),
            ("100", 0.17082039324993692),
            ("101", 0.10557280900008414),
        ];
        let mut total = 0.0;
        for (word, value) in expected {
            let got = markov.cylinder(&w(word));
            assert!((got - value).abs() < 1e-9, "{word}: {got}");
            total += got;
        }
        // The two words containing `11` carry no mass.
        assert_eq!(markov.cylinder(&w("011")), 0.0);
        assert_eq!(markov.cylinder(&w("110")), 0.0);
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn stationary_measure_rejects_reducible_presentations() {
        let s = SGapShift::new(GapRule::explicit([1, 2]).unwrap()).unwrap();
        assert!(StationaryMarkov::from_presentation(s.automaton().unwrap()).is_err());
        let core = StationaryMarkov::from_presentation(s.core_presentation()).unwrap();
        assert!((core.lambda - 1.3247179572447458).abs() < 1e-10);
    }

    #[test]
    fn empirical_routes_agree() {
        let beta = BetaShift::new(BetaSpec::Golden, 32).unwrap();
        let budget = Budget::default();
        let fast = EmpiricalMeasure::new(beta.as_ref(), 12, &budget).unwrap();
        let slow = EmpiricalMeasure::new_enumerated(beta.as_ref(), 12, &budget).unwrap();
        assert_eq!(fast.route_name(), "automaton");
        assert_eq!(slow.route_name(), "enumeration");
        let layers = enumerate(beta.as_ref(), 3, &budget).unwrap();
        for layer in &layers[1..] {
            for word in layer {
                let a = fast.estimate(word);
                let b = slow.estimate(word);
                assert!((a - b).abs() < 1e-12, "{word}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn empirical_single_symbol_frequency_matches_reference() {
        let beta = BetaShift::new(BetaSpec::Golden, 40).unwrap();
        let m = EmpiricalMeasure::new(beta.as_ref(), 24, &Budget::default()).unwrap();
        let got = m.estimate(&w("1"));
        assert!((got - 0.282759302).abs() < 1e-6, "{got}");
    }

    #[test]
    fn gibbs_rows_are_two_sided() {
        let beta = BetaShift::new(BetaSpec::Golden, 40).unwrap();
        let budget = Budget::default();
        let measure = EmpiricalMeasure::new(beta.as_ref(), 24, &budget).unwrap();
        let d = beta.decomposition();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let report = gibbs_report(
            beta.as_ref(),
            d.good.as_ref(),
            &measure,
            phi.ln(),
            4,
            &budget,
        )
        .unwrap();
        assert!(report.lower > 0.5, "lower {}", report.lower);
        assert!(report.upper < 2.0, "upper {}", report.upper);
        assert_eq!(report.rows.len(), 4);
        // Row n=1: both symbols live in the language; `0` dominates.
        let row1 = &report.rows[0];
        assert_eq!(row1.max_all.as_ref().unwrap().0, "0");
    }

    #[test]
    fn periodic_cylinder_frequencies_approach_stationary_values() {
        let beta = BetaShift::new(BetaSpec::Golden, 48).unwrap();
        let set = periodic_points(beta.as_ref(), 12, 64, &Budget::default()).unwrap();
        let markov = StationaryMarkov::from_presentation(beta.automaton().unwrap()).unwrap();
        let dev: f64 = ["000", "001", "010", "011", "100", "101", "110", "111"]
            .iter()
            .map(|s| (set.cylinder_frequency(&w(s), 12) - markov.cylinder(&w(s))).abs())
            .fold(0.0, f64::max);
        assert!(dev < 0.01, "max deviation {dev}");
    }

    #[test]
    fn periodic_growth_rate_tracks_entropy() {
        let beta = BetaShift::new(BetaSpec::Golden, 48).unwrap();
        let set = periodic_points(beta.as_ref(), 12, 64, &Budget::default()).unwrap();
        let rates = set.growth_rates();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((rates[12] - phi.ln()).abs() < 0.1);
    }
}
