//! Canned end-to-end scenarios, one per headline claim the workbench
//! checks at desk scale. Each prints one line per sub-check and the
//! command exits nonzero when any sub-check fails, so the output is an
//! honest record of what currently holds.

use crate::commands::Ctx;
use shiftlab::beta::{BetaShift, BetaSpec};
use shiftlab::coded::{CodedSystem, GeneratorSet};
use shiftlab::decomp::{
    check_edge_growth, check_extension, check_parse_cover, check_specification, Decomposition,
    GapMode, SpecParams,
};
use shiftlab::factor::{
    check_homomorphism, image_slice_check, transport_decomposition, BlockCode, FactorLanguage,
};
use shiftlab::lang::{count_words, enumerate, LanguageOracle};
use shiftlab::measure::{gibbs_report, periodic_points, EmpiricalMeasure, StationaryMarkov};
use shiftlab::sgap::{GapRule, SGapShift};
use shiftlab::word::{Alphabet, Word};
use shiftlab::{Error, Result};
use num::BigUint;
use std::sync::Arc;

pub struct Runner {
    pub all_ok: bool,
}

impl Runner {
    pub fn new() -> Self {
        Runner { all_ok: true }
    }

    fn check(&mut self, id: &str, name: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("[{id}] {name}: {verdict} ({detail})");
        self.all_ok &= ok;
    }
}

const IDS: &[&str] = &[
    "beta-digits",
    "fibonacci-counts",
    "sgap-entropy",
    "decomposition-conditions",
    "counting-bounds",
    "gibbs-golden",
    "periodic-convergence",
    "factor-transport",
    "spec-failure-witness",
    "coded-consistency",
];

pub fn run(ctx: &Ctx, id: &str) -> Result<bool> {
    let mut runner = Runner::new();
    if id == "all" {
        for each in IDS {
            dispatch(ctx, each, &mut runner)?;
        }
    } else {
        dispatch(ctx, id, &mut runner)?;
    }
    Ok(runner.all_ok)
}

fn dispatch(ctx: &Ctx, id: &str, runner: &mut Runner) -> Result<()> {
    match id {
        "beta-digits" => beta_digits(runner),
        "fibonacci-counts" => fibonacci_counts(ctx, runner),
        "sgap-entropy" => sgap_entropy(ctx, runner),
        "decomposition-conditions" => decomposition_conditions(ctx, runner),
        "counting-bounds" => counting_bounds(ctx, runner),
        "gibbs-golden" => gibbs_golden(ctx, runner),
        "periodic-convergence" => periodic_convergence(ctx, runner),
        "factor-transport" => factor_transport(ctx, runner),
        "spec-failure-witness" => spec_failure_witness(ctx, runner),
        "coded-consistency" => coded_consistency(ctx, runner),
        other => Err(Error::Config(format!(
            "unknown scenario {other:?}; expected one of {} or all",
            IDS.join(", ")
        ))),
    }
}

fn golden(depth: usize) -> Result<Arc<BetaShift>> {
    BetaShift::new(BetaSpec::Golden, depth)
}

fn s12() -> Result<Arc<SGapShift>> {
    SGapShift::new(GapRule::explicit([1, 2])?)
}

fn fib(n: usize) -> BigUint {
    let mut a = BigUint::from(0u32);
    let mut b = BigUint::from(1u32);
    for _ in 0..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// Digit-stream correctness for three expansions: the partial sums of
/// `w_j beta^{-j}` land within `2 beta^{-N}` of 1, and every shifted
/// digit tail stays lexicographically below the stream.
fn beta_digits(runner: &mut Runner) -> Result<()> {
    let id = "beta-digits";
    for spec in ["golden", "2", "1.8"] {
        let shift = BetaShift::from_text(spec, 64)?;
        let identity = shift.check_digit_identity(64)?;
        let dominance = shift.check_shift_dominance(64)?;
        runner.check(
            id,
            &format!("digit identity for {spec}"),
            identity,
            format!("N=64, beta ~ {:.9}", shift.beta_approx()),
        );
        runner.check(
            id,
            &format!("shift dominance for {spec}"),
            dominance,
            "all 64 tails".into(),
        );
    }
    Ok(())
}

/// Golden-ratio word counts are shifted Fibonacci numbers, by both
/// automaton counting and direct enumeration.
fn fibonacci_counts(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "fibonacci-counts";
    let shift = golden(32)?;
    let counts = count_words(shift.as_ref(), 25, &ctx.budget)?;
    let dp_ok = (0..=25).all(|n| counts[n] == fib(n + 2));
    runner.check(id, "automaton counts are Fibonacci", dp_ok, "n <= 25".into());
    let layers = enumerate(shift.as_ref(), 12, &ctx.budget)?;
    let enum_ok = (0..=12).all(|n| BigUint::from(layers[n].len()) == counts[n]);
    runner.check(id, "enumeration agrees with counting", enum_ok, "n <= 12".into());
    Ok(())
}

/// Gap-series entropy: tight residual for {1,2}, the truncated
/// all-naturals rule recovering the full shift, and the finite-window
/// growth-rate proximity at length 30.
fn sgap_entropy(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "sgap-entropy";
    let shift = s12()?;
    let entropy = shift.entropy(1e-14);
    let series_residual = {
        let l = entropy.lambda;
        (1.0 - (l.powi(-2) + l.powi(-3))).abs()
    };
    runner.check(
        id,
        "series equation residual < 1e-10",
        series_residual < 1e-10,
        format!("lambda = {:.12}, residual = {series_residual:.3e}", entropy.lambda),
    );
    let counts = count_words(shift.as_ref(), 30, &ctx.budget)?;
    let rate = shiftlab::lang::ln_biguint(&counts[30]) / 30.0;
    let delta = (rate - entropy.lambda.ln()).abs();
    runner.check(
        id,
        "length-30 growth rate within 0.05 of log lambda",
        delta < 0.05,
        format!("rate = {rate:.6}, log lambda = {:.6}, delta = {delta:.6}", entropy.lambda.ln()),
    );
    let all = SGapShift::new(GapRule::AllNaturals { trunc: 64 })?;
    let lambda = all.entropy(1e-14).lambda;
    runner.check(
        id,
        "all-gaps rule recovers the full shift",
        (lambda - 2.0).abs() < 1e-6,
        format!("lambda = {lambda:.9}"),
    );
    Ok(())
}

/// A named system paired with its oracle and decomposition.
type SystemCase = (&'static str, Arc<dyn LanguageOracle>, Decomposition);

fn systems_with_decompositions() -> Result<Vec<SystemCase>> {
    let beta = golden(64)?;
    let beta_decomp = beta.decomposition();
    let sgap = s12()?;
    let sgap_decomp = sgap.decomposition();
    Ok(vec![
        ("beta:golden", beta as Arc<dyn LanguageOracle>, beta_decomp),
        ("sgap:set=1,2", sgap as Arc<dyn LanguageOracle>, sgap_decomp),
    ])
}

/// The three decomposition conditions plus parse cover on the two
/// reference systems.
fn decomposition_conditions(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "decomposition-conditions";
    for (name, oracle, decomp) in systems_with_decompositions()? {
        let spec = check_specification(oracle.as_ref(), &decomp, &SpecParams::default())?;
        runner.check(
            id,
            &format!("{name} gluing with zero connectors"),
            spec.passed,
            format!("{} tuples", spec.tuples_checked),
        );
        let cover = check_parse_cover(oracle.as_ref(), &decomp, 12, &ctx.budget)?;
        runner.check(
            id,
            &format!("{name} parse cover to length 12"),
            cover.passed,
            format!("{} words", cover.words_checked),
        );
        let ext = check_extension(oracle.as_ref(), &decomp, 3, 3, 8, &ctx.budget)?;
        runner.check(
            id,
            &format!("{name} bounded extension at margin 3"),
            ext.tau.is_some(),
            match ext.tau {
                Some(tau) => format!("tau = {tau}"),
                None => format!("inextensible: {}", ext.failures.join(", ")),
            },
        );
        let growth = check_edge_growth(oracle.as_ref(), &decomp, (15, 25), 0.3, &ctx.budget)?;
        runner.check(
            id,
            &format!("{name} edge-growth margin >= 0.3 on [15, 25]"),
            growth.verdict,
            format!("min margin = {:.6}", growth.min_margin),
        );
    }
    Ok(())
}

/// Counting-shape bounds: the good core never outgrows `e^{n h}`, and
/// bounded-edge windows carry at least 90% of each length layer for
/// some margin up to 6.
fn counting_bounds(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "counting-bounds";
    let beta = golden(64)?;
    let sgap = s12()?;
    let cases: Vec<(&str, Arc<dyn LanguageOracle>, Decomposition, f64)> = vec![
        (
            "beta:golden",
            beta.clone() as Arc<dyn LanguageOracle>,
            beta.decomposition(),
            beta.entropy(),
        ),
        (
            "sgap:set=1,2",
            sgap.clone() as Arc<dyn LanguageOracle>,
            sgap.decomposition(),
            sgap.entropy(1e-14).lambda.ln(),
        ),
    ];
    for (name, oracle, decomp, log_lambda) in cases {
        let layers = enumerate(oracle.as_ref(), 25, &ctx.budget)?;
        let mut bound_ok = true;
        let mut worst = f64::NEG_INFINITY;
        for (n, layer) in layers.iter().enumerate().skip(1) {
            let good = layer.iter().filter(|w| decomp.good.contains(w)).count();
            if good == 0 {
                continue;
            }
            let excess = (good as f64).ln() - n as f64 * log_lambda;
            worst = worst.max(excess);
            if excess > 1e-6 {
                bound_ok = false;
            }
        }
        runner.check(
            id,
            &format!("{name} good-core counts below e^(n h)"),
            bound_ok,
            format!("max ln-excess = {worst:.3e}, n <= 25"),
        );
        let mut best: Option<(usize, f64)> = None;
        for m in 1..=6 {
            let mut min_density = f64::INFINITY;
            for (n, layer) in layers.iter().enumerate().skip(1).take(20) {
                let _ = n;
                let covered = layer
                    .iter()
                    .filter(|w| decomp.in_core_window(w, m))
                    .count();
                min_density = min_density.min(covered as f64 / layer.len() as f64);
            }
            if best.is_none_or(|(_, d)| min_density > d) {
                best = Some((m, min_density));
            }
            if min_density >= 0.9 {
                break;
            }
        }
        let (m, density) = best.expect("at least one margin tried");
        runner.check(
            id,
            &format!("{name} core-window density >= 0.9 with margin <= 6"),
            density >= 0.9,
            format!("best margin {m}: min density {density:.6} over n <= 20"),
        );
    }
    Ok(())
}

/// Two-sided cylinder bounds for the golden-ratio shift: empirical
/// frequencies scaled by `e^{n h}` stay within 10% of the reference
/// constants on both sides.
fn gibbs_golden(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "gibbs-golden";
    let shift = golden(64)?;
    let measure = EmpiricalMeasure::new(shift.as_ref(), 24, &ctx.budget)?;
    let decomp = shift.decomposition();
    let report = gibbs_report(
        shift.as_ref(),
        decomp.good.as_ref(),
        &measure,
        shift.entropy(),
        8,
        &ctx.budget,
    )?;
    let lower_ref = 0.729225289;
    let upper_ref = 1.160519827;
    runner.check(
        id,
        "good-core lower bound within 10% of reference",
        report.lower >= 0.9 * lower_ref,
        format!("lower = {:.9} at [{}], reference {lower_ref}", report.lower, report.lower_witness),
    );
    runner.check(
        id,
        "language upper bound within 10% of reference",
        report.upper <= 1.1 * upper_ref,
        format!("upper = {:.9} at [{}], reference {upper_ref}", report.upper, report.upper_witness),
    );
    Ok(())
}

/// Periodic-orbit averages against the stationary measure: length-3
/// cylinders converge, the deviation shrinks with the period bound,
/// and the cumulative count approaches the entropy rate.
fn periodic_convergence(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "periodic-convergence";
    let shift = golden(64)?;
    let markov = StationaryMarkov::from_presentation(shift.automaton().expect("presentation"))?;
    let set = periodic_points(shift.as_ref(), 20, 64, &ctx.budget)?;
    let words: Vec<Word> = enumerate(shift.as_ref(), 3, &ctx.budget)?[3].clone();
    let dev = |bound: usize| -> f64 {
        words
            .iter()
            .map(|w| (set.cylinder_frequency(w, bound) - markov.cylinder(w)).abs())
            .fold(0.0, f64::max)
    };
    let dev20 = dev(20);
    let dev8 = dev(8);
    runner.check(
        id,
        "length-3 cylinders within 0.05 at period bound 20",
        dev20 <= 0.05,
        format!("max deviation = {dev20:.6}"),
    );
    runner.check(
        id,
        "deviation at bound 20 no worse than at bound 8",
        dev20 <= dev8,
        format!("{dev20:.6} vs {dev8:.6}"),
    );
    let rate = (set.cumulative[18] as f64).ln() / 18.0;
    let delta = (rate - shift.entropy()).abs();
    runner.check(
        id,
        "cumulative periodic count rate within 0.05 of entropy at n=18",
        delta < 0.05,
        format!("rate = {rate:.6}, entropy = {:.6}, delta = {delta:.6}", shift.entropy()),
    );
    Ok(())
}

/// Sliding block codes on the golden-ratio shift: concatenation
/// identities, fragment-count transport bound, and gluing of the
/// transported decomposition.
fn factor_transport(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "factor-transport";
    let shift = golden(64)?;
    let codes = [
        ("k=0 identity", BlockCode::identity(Alphabet::binary())),
        ("k=1 outer-xor", BlockCode::binary_outer_xor()),
    ];
    for (label, code) in codes {
        let k = code.k();
        let factor = FactorLanguage::new(shift.clone() as Arc<dyn LanguageOracle>, code)?;
        let layers = enumerate(shift.as_ref(), 3, &ctx.budget)?;
        let mut failures = 0usize;
        for v in &layers[3] {
            for u in &layers[3] {
                if !check_homomorphism(factor.code(), v, u)?.passed {
                    failures += 1;
                }
            }
        }
        runner.check(
            id,
            &format!("{label} concatenation identities on |v|=|w|=3"),
            failures == 0,
            format!("{} pairs", layers[3].len() * layers[3].len()),
        );

        let decomp = shift.decomposition();
        let transported = transport_decomposition(&factor, &decomp);
        let source_counts = count_words(shift.as_ref(), 10.max(2 * k), &ctx.budget)?;
        let factor_layers = enumerate(factor.as_ref(), 10, &ctx.budget)?;
        let mut bound_ok = true;
        for (n, layer) in factor_layers.iter().enumerate().take(11) {
            let image_prefixes = layer
                .iter()
                .filter(|y| transported.prefixes.contains(y))
                .count();
            let source_prefixes = enumerate(shift.as_ref(), n, &ctx.budget)?[n]
                .iter()
                .filter(|w| decomp.prefixes.contains(w))
                .count();
            let cap = source_counts[2 * k]
                .clone()
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0) as usize
                * source_prefixes;
            if image_prefixes > cap.max(if n == 0 { 1 } else { 0 }) {
                bound_ok = false;
            }
        }
        runner.check(
            id,
            &format!("{label} transported prefix counts bounded"),
            bound_ok,
            "n <= 10".into(),
        );

        let params = SpecParams {
            n_max: 5,
            max_tuple: 2,
            gap: transported.gap,
            mode: GapMode::Exact,
            ..SpecParams::default()
        };
        let spec = check_specification(factor.as_ref(), &transported, &params)?;
        runner.check(
            id,
            &format!("{label} transported gluing with gap {}", transported.gap),
            spec.passed,
            format!("{} tuples", spec.tuples_checked),
        );

        let mut slices_ok = true;
        for n in 1..=6 {
            slices_ok &= image_slice_check(&factor, n, &ctx.budget)?.agree;
        }
        runner.check(
            id,
            &format!("{label} image slices match membership"),
            slices_ok,
            "n <= 6".into(),
        );
    }
    Ok(())
}

/// The power-of-two gap rule forces connector lengths to grow: the
/// minimal gluing time between deeper and deeper words is strictly
/// increasing, witnessing failure of any uniform gluing bound.
fn spec_failure_witness(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "spec-failure-witness";
    let shift = SGapShift::new(GapRule::PowersOfTwo { trunc: 64 })?;
    let alphabet = shift.alphabet();
    let mut previous: Option<usize> = None;
    let mut increasing = true;
    let mut observed = Vec::new();
    for n in 2..=4usize {
        let run = (1usize << (n - 1)) + 1;
        let mut left = vec![1u8];
        left.extend(vec![0u8; run]);
        let mut right = vec![0u8; run];
        right.push(1u8);
        let left = Word::new(left, alphabet).unwrap();
        let right = Word::new(right, alphabet).unwrap();
        let found = shift.min_gap(&left, &right, 16, &ctx.budget)?;
        match found {
            Some((t, _witness)) => {
                observed.push(t);
                if let Some(p) = previous {
                    increasing &= t > p;
                }
                previous = Some(t);
            }
            None => {
                increasing = false;
                observed.push(usize::MAX);
            }
        }
    }
    let rendered: Vec<String> = observed.iter().map(|t| t.to_string()).collect();
    runner.check(
        id,
        "minimal connector lengths strictly increase",
        increasing && observed.len() == 3,
        format!("t = {}", rendered.join(", ")),
    );
    Ok(())
}

/// The generator view of the golden-ratio shift reproduces direct
/// membership exactly on all short words.
fn coded_consistency(ctx: &Ctx, runner: &mut Runner) -> Result<()> {
    let id = "coded-consistency";
    let shift = golden(32)?;
    let generators = shift.generators(12)?;
    let expected = ["0", "100", "10100", "1010100", "101010100", "10101010100"];
    let rendered: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
    runner.check(
        id,
        "generator inventory to length 12",
        rendered == expected,
        rendered.join(", "),
    );
    let coded = CodedSystem::new(GeneratorSet::from_words(generators)?);
    let all = enumerate(
        &shiftlab::lang::FullShift::new(Alphabet::binary()),
        10,
        &ctx.budget,
    )?;
    let mut mismatches = 0usize;
    let mut checked = 0usize;
    for layer in &all {
        for w in layer {
            checked += 1;
            if shift.contains(w) != coded.contains(w) {
                mismatches += 1;
            }
        }
    }
    runner.check(
        id,
        "coded membership equals digit-stream membership",
        mismatches == 0,
        format!("{checked} words, {mismatches} mismatches"),
    );
    Ok(())
}
