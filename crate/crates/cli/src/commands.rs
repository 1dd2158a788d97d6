//! Implementations of the individual subcommands. Every command prints
//! deterministic text (no timestamps, no machine-dependent fields) and
//! returns `Ok(true)` when all requested checks pass.

use crate::system::{parse_gap_rule, SystemHandle};
use shiftlab::coded::{CodedSystem, GeneratorSet};
use shiftlab::decomp::{
    check_edge_growth, check_extension, check_parse_cover, check_specification,
    dichotomy_diagnostic, GapMode, SpecParams,
};
use shiftlab::factor::{check_homomorphism, entropy_gap, image_slice_check, BlockCode, FactorLanguage};
use shiftlab::lang::{
    count_words_cached, enumerate, Budget, GrowthEstimate, LanguageOracle, LayerCache,
};
use shiftlab::measure::{gibbs_report, periodic_points, EmpiricalMeasure, StationaryMarkov};
use shiftlab::report::{Report, Verdict};
use shiftlab::sgap::SGapShift;
use shiftlab::word::Word;
use shiftlab::{Error, Result};
use std::path::{Path, PathBuf};

pub struct Ctx {
    pub budget: Budget,
    pub cache_path: Option<PathBuf>,
}

impl Ctx {
    fn with_cache<T>(&self, f: impl FnOnce(Option<&mut LayerCache>) -> Result<T>) -> Result<T> {
        match &self.cache_path {
            None => f(None),
            Some(dir) => {
                let file = dir.join("layers.tsv");
                let mut cache = if file.exists() {
                    LayerCache::load(&file)?
                } else {
                    LayerCache::new()
                };
                let out = f(Some(&mut cache))?;
                cache.save(&file)?;
                Ok(out)
            }
        }
    }
}

fn print_counts(oracle: &dyn LanguageOracle, n_max: usize, ctx: &Ctx) -> Result<()> {
    let counts = ctx.with_cache(|cache| count_words_cached(oracle, n_max, &ctx.budget, cache))?;
    let est = GrowthEstimate::from_counts(counts.clone());
    for (n, count) in counts.iter().enumerate() {
        if n == 0 {
            continue;
        }
        println!("n={n} count={count} rate={:.9}", est.rates[n]);
    }
    println!("rate-proxy={:.9}", est.limsup_proxy);
    Ok(())
}

fn write_report(report: &Report, out: Option<&Path>, format: &str) -> Result<()> {
    if let Some(path) = out {
        match format {
            "csv" => report.write_csv(path)?,
            _ => report.write_json(path)?,
        }
        println!("report written: {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_beta(
    ctx: &Ctx,
    spec: &str,
    depth: usize,
    digits: usize,
    enumerate_to: Option<usize>,
    decompose: bool,
    verify: Option<&str>,
    out: Option<&Path>,
) -> Result<bool> {
    let shift = shiftlab::beta::BetaShift::from_text(spec, depth)?;
    println!("system: {}", shift.family_id());
    println!("beta ~ {:.12}", shift.beta_approx());
    println!("alphabet: {}", shift.alphabet().size());
    println!("entropy: {:.12}", shift.entropy());
    let digit_word = shift.digit_word(digits.min(shift.depth()))?;
    println!("digits[{}]: {}", digit_word.len(), digit_word);
    match shift.periodic_tail() {
        Some((rho, pi)) => println!("digit stream: eventually periodic (start {rho}, period {pi})"),
        None => println!(
            "digit stream: no cycle detected within depth {}",
            shift.depth()
        ),
    }
    let mut report = Report::new(shift.family_id());
    let mut all_ok = true;
    if let Some(n) = enumerate_to {
        print_counts(shift.as_ref(), n, ctx)?;
    }
    if decompose {
        let d = shift.decomposition();
        println!("decomposition: prefixes = {}", d.prefixes.describe());
        println!("decomposition: good = {}", d.good.describe());
        println!("decomposition: suffixes = {}", d.suffixes.describe());
        println!("decomposition: gap = {}", d.gap);
        let cover = check_parse_cover(shift.as_ref(), &d, 10, &ctx.budget)?;
        println!(
            "parse-cover(10): {} ({} words)",
            verdict_str(cover.passed),
            cover.words_checked
        );
        report.push_serialized("parse-cover", verdict_of(cover.passed), &cover)?;
        all_ok &= cover.passed;
    }
    if let Some(conditions) = verify {
        let handle = SystemHandle::parse(&format!("beta:{spec}"), depth)?;
        all_ok &= run_conditions(ctx, &handle, conditions, 12, &mut report)?;
    }
    write_report(&report, out, "json")?;
    Ok(all_ok)
}

pub fn cmd_sgap(
    ctx: &Ctx,
    set: Option<&str>,
    rule: Option<&str>,
    max: u64,
    enumerate_to: Option<usize>,
    out: Option<&Path>,
) -> Result<bool> {
    let gap_rule = match (set, rule) {
        (Some(list), None) => parse_gap_rule(&format!("set={list}"))?,
        (None, Some(name)) => parse_gap_rule(&format!("rule={name},max={max}"))?,
        _ => {
            return Err(Error::Config(
                "provide exactly one of --set or --rule".into(),
            ))
        }
    };
    let shift = SGapShift::new(gap_rule)?;
    println!("system: {}", shift.family_id());
    let entropy = shift.entropy(1e-14);
    println!("lambda = {:.12}", entropy.lambda);
    println!("log lambda = {:.12}", entropy.lambda.ln());
    println!("residual = {:.3e}", entropy.residual);
    println!("truncation tail bound = {:.3e}", entropy.tail_bound);
    if let Some(n) = enumerate_to {
        print_counts(shift.as_ref(), n, ctx)?;
    }
    let mut report = Report::new(shift.family_id());
    report.push_serialized("entropy", Verdict::Info, &entropy)?;
    write_report(&report, out, "json")?;
    Ok(true)
}

pub fn cmd_coded(
    ctx: &Ctx,
    generators: &Path,
    fragment_counts: Option<usize>,
    enumerate_to: Option<usize>,
    boundary: Option<usize>,
    out: Option<&Path>,
) -> Result<bool> {
    let set = GeneratorSet::from_file(generators)?;
    let system = CodedSystem::new(set);
    println!("system: {}", system.family_id());
    println!("generators: {}", system.generators().words().len());
    println!("longest generator: {}", system.generators().max_len());
    let mut report = Report::new(system.family_id());
    if let Some(n) = fragment_counts {
        let counts = system.fragment_counts(n);
        let rendered: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        println!("fragment counts 0..={n}: {}", rendered.join(" "));
        report.push_serialized("fragment-counts", Verdict::Info, &counts)?;
    }
    if let Some(n) = enumerate_to {
        print_counts(system.as_ref(), n, ctx)?;
    }
    if let Some(n) = boundary {
        let growth = system.boundary_growth(n, &ctx.budget)?;
        println!(
            "boundary growth: fragments {:.6}, language {:.6}, verdict {:?}",
            growth.fragment_rate_proxy, growth.language_rate_proxy, growth.verdict
        );
        report.push_serialized("boundary-growth", Verdict::Info, &growth)?;
    }
    write_report(&report, out, "json")?;
    Ok(true)
}

fn verdict_str(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Run the named decomposition conditions against a system. `I` is the
/// gluing (specification-style) check, `II` the edge-growth margin,
/// `III` the bounded-extension check, and `cover` the parse cover.
pub fn run_conditions(
    ctx: &Ctx,
    handle: &SystemHandle,
    conditions: &str,
    depth: usize,
    report: &mut Report,
) -> Result<bool> {
    let decomp = handle.decomposition()?;
    let oracle = handle.oracle().as_ref();
    let mut all_ok = true;
    for cond in conditions.split(',') {
        match cond.trim() {
            "I" => {
                let params = SpecParams {
                    gap: decomp.gap,
                    ..SpecParams::default()
                };
                let spec = check_specification(oracle, &decomp, &params)?;
                println!(
                    "condition I (gluing, gap {} {:?}): {} ({} tuples, pool {})",
                    spec.gap,
                    spec.mode,
                    verdict_str(spec.passed),
                    spec.tuples_checked,
                    spec.good_pool_size
                );
                if !spec.failures.is_empty() {
                    for f in spec.failures.iter().take(4) {
                        println!("  gluing failure: {f:?}");
                    }
                }
                if !spec.periodic_failures.is_empty() {
                    for f in spec.periodic_failures.iter().take(4) {
                        println!("  periodic-closure failure: {f:?}");
                    }
                }
                all_ok &= spec.passed;
                report.push_serialized("condition-I", verdict_of(spec.passed), &spec)?;
            }
            "II" => {
                let window = (depth.max(11).saturating_sub(10), depth.max(11));
                let growth = check_edge_growth(oracle, &decomp, window, 0.0, &ctx.budget)?;
                println!(
                    "condition II (edge growth on [{}, {}]): {} (min margin {:.6})",
                    window.0,
                    window.1,
                    verdict_str(growth.verdict),
                    growth.min_margin
                );
                all_ok &= growth.verdict;
                report.push_serialized("condition-II", verdict_of(growth.verdict), &growth)?;
            }
            "III" => {
                let ext = check_extension(oracle, &decomp, 3, 3, 8, &ctx.budget)?;
                let ok = ext.tau.is_some();
                match ext.tau {
                    Some(tau) => println!(
                        "condition III (extension, margin 3): PASS (tau = {tau}, witness {})",
                        ext.witness.as_deref().unwrap_or("-")
                    ),
                    None => println!(
                        "condition III (extension, margin 3): FAIL (inextensible: {})",
                        ext.failures.join(", ")
                    ),
                }
                all_ok &= ok;
                report.push_serialized("condition-III", verdict_of(ok), &ext)?;
            }
            "cover" => {
                let cover = check_parse_cover(oracle, &decomp, depth, &ctx.budget)?;
                println!(
                    "parse cover to {}: {} ({} words)",
                    depth,
                    verdict_str(cover.passed),
                    cover.words_checked
                );
                all_ok &= cover.passed;
                report.push_serialized("parse-cover", verdict_of(cover.passed), &cover)?;
            }
            "dichotomy" => {
                let d = dichotomy_diagnostic(oracle, &decomp, depth, &ctx.budget)?;
                println!("dichotomy diagnostic: {:?}", d.verdict);
                report.push_serialized("dichotomy", Verdict::Info, &d)?;
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown condition {other:?} (expected I, II, III, cover, dichotomy)"
                )))
            }
        }
    }
    Ok(all_ok)
}

pub fn cmd_verify(
    ctx: &Ctx,
    system: &str,
    conditions: &str,
    depth: usize,
    format: &str,
    out: Option<&Path>,
) -> Result<bool> {
    let handle = SystemHandle::parse(system, depth.max(64))?;
    println!("system: {}", handle.family_id());
    let mut report = Report::new(handle.family_id());
    let ok = run_conditions(ctx, &handle, conditions, depth, &mut report)?;
    write_report(&report, out, format)?;
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_measure(
    ctx: &Ctx,
    system: &str,
    mme_depth: usize,
    per: usize,
    targets_len: usize,
    gibbs: bool,
    gibbs_depth: usize,
    out: Option<&Path>,
) -> Result<bool> {
    let handle = SystemHandle::parse(system, (2 * mme_depth).max(64))?;
    let oracle = handle.oracle().as_ref();
    println!("system: {}", handle.family_id());
    let mut report = Report::new(handle.family_id());

    let empirical = EmpiricalMeasure::new(oracle, mme_depth, &ctx.budget)?;
    println!(
        "empirical measure: depth {mme_depth}, route {}, slice {}",
        empirical.route_name(),
        empirical.slice_len()
    );

    let stationary = handle
        .stationary_presentation()
        .map(|dfa| StationaryMarkov::from_presentation(&dfa))
        .transpose()?;
    if let Some(markov) = &stationary {
        println!(
            "stationary measure: lambda {:.12} (residual {:.3e})",
            markov.lambda, markov.residual
        );
        report.push_serialized("stationary", Verdict::Info, markov)?;
    } else {
        println!("stationary measure: no strongly connected presentation at hand");
    }

    let periodic = periodic_points(oracle, per, 2 * per, &ctx.budget)?;
    let counts: Vec<String> = periodic.counts[1..].iter().map(|c| c.to_string()).collect();
    println!("periodic points by least period 1..={per}: {}", counts.join(" "));
    println!(
        "periodic inventory certified: {}",
        if periodic.certified { "yes" } else { "no (depth-checked)" }
    );
    report.push_serialized("periodic-counts", Verdict::Info, &periodic.counts)?;

    let layers = enumerate(oracle, targets_len, &ctx.budget)?;
    println!("cylinder estimates up to length {targets_len}:");
    for layer in layers.iter().skip(1) {
        for word in layer {
            let emp = empirical.estimate(word);
            let per_freq = periodic.cylinder_frequency(word, per);
            match &stationary {
                Some(markov) => {
                    let stat = markov.cylinder(word);
                    println!(
                        "  [{word}] empirical={emp:.9} periodic={per_freq:.9} stationary={stat:.9} dev={:.9}",
                        (per_freq - stat).abs()
                    );
                }
                None => println!("  [{word}] empirical={emp:.9} periodic={per_freq:.9}"),
            }
        }
    }

    if gibbs {
        let decomp = handle.decomposition()?;
        let entropy = match &stationary {
            Some(markov) => markov.entropy(),
            None => {
                let counts = shiftlab::lang::count_words(oracle, mme_depth, &ctx.budget)?;
                GrowthEstimate::from_counts(counts).limsup_proxy
            }
        };
        let gr = gibbs_report(
            oracle,
            decomp.good.as_ref(),
            &empirical,
            entropy,
            gibbs_depth,
            &ctx.budget,
        )?;
        println!(
            "gibbs bounds over n<={gibbs_depth}: lower {:.9} at [{}], upper {:.9} at [{}]",
            gr.lower, gr.lower_witness, gr.upper, gr.upper_witness
        );
        report.push_serialized("gibbs", Verdict::Info, &gr)?;
    }
    write_report(&report, out, "json")?;
    Ok(true)
}

pub fn cmd_factor(
    ctx: &Ctx,
    system: &str,
    code_path: &Path,
    verify: bool,
    depth: usize,
    out: Option<&Path>,
) -> Result<bool> {
    let base = SystemHandle::parse(system, 64.max(2 * depth))?;
    let code = BlockCode::load(code_path)?;
    let k = code.k();
    let factor = FactorLanguage::new(base.oracle().clone(), code)?;
    println!("factor system: {}", factor.family_id());
    println!("code radius k = {k} (window {})", 2 * k + 1);
    let mut report = Report::new(factor.family_id());
    print_counts(factor.as_ref(), depth, ctx)?;
    let gap = entropy_gap(&factor, depth, &ctx.budget)?;
    println!(
        "growth rates: source {:.6}, image {:.6}, difference {:.6}",
        gap.source_rate, gap.factor_rate, gap.difference
    );
    report.push_serialized("entropy-gap", Verdict::Info, &gap)?;
    let mut all_ok = true;
    if verify {
        let layers = enumerate(base.oracle().as_ref(), 3, &ctx.budget)?;
        let mut identity_failures = 0usize;
        let mut pairs = 0usize;
        for v in &layers[3] {
            for u in &layers[3] {
                pairs += 1;
                if !check_homomorphism(factor.code(), v, u)?.passed {
                    identity_failures += 1;
                }
            }
        }
        println!(
            "concatenation identities on |v|=|w|=3: {} ({} pairs, {} failures)",
            verdict_str(identity_failures == 0),
            pairs,
            identity_failures
        );
        all_ok &= identity_failures == 0;

        let mut slices_ok = true;
        for n in 1..=depth.min(6) {
            let check = image_slice_check(&factor, n, &ctx.budget)?;
            slices_ok &= check.agree;
            report.push_serialized(format!("image-slice-{n}"), verdict_of(check.agree), &check)?;
        }
        println!("image slices vs membership: {}", verdict_str(slices_ok));
        all_ok &= slices_ok;

        let transported = shiftlab::factor::transport_decomposition(&factor, &base.decomposition()?);
        let cover = check_parse_cover(factor.as_ref(), &transported, depth.min(6), &ctx.budget)?;
        println!(
            "transported parse cover to {}: {}",
            depth.min(6),
            verdict_str(cover.passed)
        );
        report.push_serialized("transported-cover", verdict_of(cover.passed), &cover)?;
        all_ok &= cover.passed;

        let params = SpecParams {
            n_max: 5,
            max_tuple: 2,
            gap: transported.gap,
            mode: GapMode::Exact,
            ..SpecParams::default()
        };
        let spec = check_specification(factor.as_ref(), &transported, &params)?;
        println!(
            "transported gluing (gap {}): {}",
            transported.gap,
            verdict_str(spec.passed)
        );
        report.push_serialized("transported-gluing", verdict_of(spec.passed), &spec)?;
        all_ok &= spec.passed;
    }
    write_report(&report, out, "json")?;
    Ok(all_ok)
}

/// Smallest admissible connector between two words, with a witness.
pub fn cmd_min_gap(
    ctx: &Ctx,
    set: Option<&str>,
    rule: Option<&str>,
    max: u64,
    left: &str,
    right: &str,
    t_cap: usize,
) -> Result<bool> {
    let gap_rule = match (set, rule) {
        (Some(list), None) => parse_gap_rule(&format!("set={list}"))?,
        (None, Some(name)) => parse_gap_rule(&format!("rule={name},max={max}"))?,
        _ => {
            return Err(Error::Config(
                "provide exactly one of --set or --rule".into(),
            ))
        }
    };
    let shift = SGapShift::new(gap_rule)?;
    let alphabet = shift.alphabet();
    let left = Word::parse(left, alphabet)?;
    let right = Word::parse(right, alphabet)?;
    match shift.min_gap(&left, &right, t_cap, &ctx.budget)? {
        Some((t, witness)) => {
            println!("min connector length: {t} (witness {})", render(&witness));
            Ok(true)
        }
        None => {
            println!("no connector up to length {t_cap}");
            Ok(false)
        }
    }
}

fn render(w: &Word) -> String {
    if w.is_empty() {
        "(empty)".into()
    } else {
        w.to_string()
    }
}
