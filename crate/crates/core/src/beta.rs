//! Beta-shifts: the language of expansions in a real base `beta > 1`.
//!
//! The defining data is the quasi-greedy expansion `w` of 1: a word `u`
//! is admissible iff every suffix of `u` is lexicographically at most
//! the corresponding prefix of `w`. Digits are computed with exact
//! arithmetic (rational or algebraic), so periodicity detection and all
//! membership answers are decisions, not approximations.

use crate::decomp::{Component, Decomposition, EpsilonOnly};
use crate::exact::ExactReal;
use crate::lang::{Dfa, LanguageOracle, PeriodicStatus};
use crate::word::{Alphabet, LexOrder, Word};
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, ToPrimitive, Zero};
use num::BigUint;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// How the base was specified.
#[derive(Debug, Clone, PartialEq)]
pub enum BetaSpec {
    /// The golden ratio, shorthand for `root(x^2-x-1, near=1.618)`.
    Golden,
    /// An exact rational base, e.g. `1.8` or `9/5`.
    Rational(BigRational),
    /// A root of an integer polynomial (low coefficients first),
    /// selected by proximity to `near`.
    Root { coeffs: Vec<BigInt>, near: f64 },
}

impl BetaSpec {
    /// Accepts `golden`, a decimal or fraction literal (`2`, `1.8`,
    /// `9/5`), or `root(<polynomial in x>, near=<float>)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("golden") {
            return Ok(BetaSpec::Golden);
        }
        if let Some(rest) = t.strip_prefix("root(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Config(format!("unterminated root(...) in `{t}`")))?;
            let (poly_text, near_text) = inner
                .rsplit_once(',')
                .ok_or_else(|| Error::Config("root(...) needs `, near=<value>`".into()))?;
            let near_text = near_text.trim();
            let near_val = near_text
                .strip_prefix("near")
                .and_then(|s| s.trim_start().strip_prefix('='))
                .ok_or_else(|| Error::Config("root(...) needs `near=<value>`".into()))?;
            let near: f64 = near_val
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad `near` value `{near_val}`")))?;
            let coeffs = parse_polynomial(poly_text)?;
            return Ok(BetaSpec::Root { coeffs, near });
        }
        if let Some((num, den)) = t.split_once('/') {
            let n: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad fraction `{t}`")))?;
            let d: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("bad fraction `{t}`")))?;
            if d.is_zero() {
                return Err(Error::Config("fraction with zero denominator".into()));
            }
            return Ok(BetaSpec::Rational(BigRational::new(n, d)));
        }
        if let Some(q) = parse_decimal(t) {
            return Ok(BetaSpec::Rational(q));
        }
        Err(Error::Config(format!(
            "cannot parse base specification `{t}`; expected `golden`, a decimal, a fraction, or root(<poly>, near=<value>)"
        )))
    }

    /// Canonical text form: identifies the base independently of the
    /// input spelling.
    pub fn canonical(&self) -> String {
        match self {
            BetaSpec::Golden => "root(x^2-x-1,near=1.618)".into(),
            BetaSpec::Rational(q) => {
                if q.denom().is_one() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
            BetaSpec::Root { coeffs, near } => {
                let terms: Vec<String> = coeffs
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| match i {
                        0 => format!("{c:+}"),
                        1 => format!("{c:+}x"),
                        _ => format!("{c:+}x^{i}"),
                    })
                    .collect();
                format!("root({},near={})", terms.join(""), near)
            }
        }
    }

    fn to_real(&self) -> Result<ExactReal> {
        match self {
            BetaSpec::Golden => ExactReal::algebraic_root(
                &[BigInt::from(-1), BigInt::from(-1), BigInt::from(1)],
                1.618,
            ),
            BetaSpec::Rational(q) => Ok(ExactReal::from_rational(q.clone())),
            BetaSpec::Root { coeffs, near } => ExactReal::algebraic_root(coeffs, *near),
        }
    }
}

impl fmt::Display for BetaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical())
    }
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit() || c == '.') {
        return None;
    }
    match t.split_once('.') {
        None => t.parse::<BigInt>().ok().map(BigRational::from_integer),
        Some((int_part, frac_part)) => {
            if frac_part.is_empty() || frac_part.contains('.') {
                return None;
            }
            let int: BigInt = if int_part.is_empty() {
                BigInt::zero()
            } else {
                int_part.parse().ok()?
            };
            let frac: BigInt = frac_part.parse().ok()?;
            let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
            Some(BigRational::new(int * &scale + frac, scale))
        }
    }
}

/// Parse an integer polynomial in `x`, e.g. `x^2-x-1` or `2*x^3 + x - 5`.
fn parse_polynomial(text: &str) -> Result<Vec<BigInt>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Config("empty polynomial".into()));
    }
    let bytes = s.as_bytes();
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut i = 0usize;
    let bad = |why: &str| Error::Config(format!("cannot parse polynomial `{text}`: {why}"));
    while i < bytes.len() {
        let mut sign = BigInt::one();
        while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        }
        if i >= bytes.len() {
            return Err(bad("trailing sign"));
        }
        let mut digits = String::new();
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            digits.push(bytes[i] as char);
            i += 1;
        }
        let coef: BigInt = if digits.is_empty() {
            BigInt::one()
        } else {
            digits.parse().map_err(|_| bad("bad coefficient"))?
        };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let exp: usize = if i < bytes.len() && bytes[i] == b'x' {
            i += 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let mut e = String::new();
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    e.push(bytes[i] as char);
                    i += 1;
                }
                e.parse().map_err(|_| bad("bad exponent"))?
            } else {
                1
            }
        } else {
            if digits.is_empty() {
                return Err(bad("term with neither coefficient nor x"));
            }
            0
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        coeffs[exp] += sign * coef;
    }
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    if coeffs.len() < 2 {
        return Err(bad("degree must be at least 1"));
    }
    Ok(coeffs)
}

/// A beta-shift with its digit stream computed to a fixed depth.
/// Immutable: a deeper digit stream is a new value.
pub struct BetaShift {
    spec: BetaSpec,
    beta: ExactReal,
    alphabet: Alphabet,
    /// Quasi-greedy digits `w_1 w_2 ...` (0-based storage).
    digits: Vec<u8>,
    /// `(preperiod, period)` when the digit stream is eventually
    /// periodic (detected exactly), making the language sofic.
    periodic_tail: Option<(usize, usize)>,
    depth: usize,
    dfa: Dfa,
}

impl BetaShift {
    pub fn new(spec: BetaSpec, depth: usize) -> Result<Arc<Self>> {
        if depth == 0 {
            return Err(Error::Config("digit depth must be positive".into()));
        }
        let beta = spec.to_real()?;
        let one = BigRational::one();
        if beta.cmp_rational(&one)? != Ordering::Greater {
            return Err(Error::Config("the base must exceed 1".into()));
        }
        let floor = beta.floor()?;
        let is_integer = beta
            .sub(&ExactReal::from_rational(BigRational::from_integer(floor.clone())))
            .is_zero_value();
        let alphabet_size_big = if is_integer { floor.clone() } else { &floor + 1 };
        let alphabet_size = alphabet_size_big
            .to_usize()
            .filter(|&k| k <= 255)
            .ok_or_else(|| Error::Config("the base must be below 255".into()))?;
        let alphabet = Alphabet::new(alphabet_size.max(2))?;

        // Greedy expansion of 1 with exact state; switch to the
        // quasi-greedy form if the greedy expansion terminates.
        let mut digits: Vec<u8> = Vec::new();
        let mut periodic_tail: Option<(usize, usize)> = None;
        let mut x = ExactReal::from_integer(1);
        // ExactReal hashes by coefficients only; the interval cache
        // behind the Mutex never enters Eq/Hash.
        #[allow(clippy::mutable_key_type)]
        let mut seen: HashMap<ExactReal, usize> = HashMap::new();
        for j in 1..=depth {
            let y = beta.mul(&x);
            let d_big = y.floor()?;
            let d = d_big
                .to_u8()
                .ok_or_else(|| Error::Precision("digit exceeds the symbol range".into()))?;
            digits.push(d);
            x = y.sub(&ExactReal::from_rational(BigRational::from_integer(d_big)));
            if x.is_zero_value() {
                // Greedy expansion of 1 is finite: the quasi-greedy
                // stream repeats the block with its last digit lowered.
                let last = digits
                    .last_mut()
                    .expect("at least one digit before termination");
                debug_assert!(*last >= 1);
                *last -= 1;
                periodic_tail = Some((0, j));
                break;
            }
            if let Some(&i) = seen.get(&x) {
                periodic_tail = Some((i, j - i));
                break;
            }
            seen.insert(x.clone(), j);
        }
        // Materialize digits out to the requested depth.
        if let Some((rho, pi)) = periodic_tail {
            while digits.len() < depth.max(rho + pi) {
                let i = digits.len();
                digits.push(digits[rho + (i - rho) % pi]);
            }
        }
        let dfa = build_dfa(&digits, periodic_tail, alphabet, depth);
        Ok(Arc::new(BetaShift {
            spec,
            beta,
            alphabet,
            digits,
            periodic_tail,
            depth,
            dfa,
        }))
    }

    pub fn from_text(spec_text: &str, depth: usize) -> Result<Arc<Self>> {
        BetaShift::new(BetaSpec::parse(spec_text)?, depth)
    }

    pub fn spec(&self) -> &BetaSpec {
        &self.spec
    }

    pub fn beta(&self) -> &ExactReal {
        &self.beta
    }

    pub fn beta_approx(&self) -> f64 {
        self.beta.to_f64()
    }

    /// Natural-log growth rate of the language (equals `ln beta`).
    pub fn entropy(&self) -> f64 {
        self.beta_approx().ln()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The quasi-greedy digits computed at construction.
    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit at 0-based position `i`, wrapping through the periodic
    /// tail when one was detected.
    pub fn digit_at(&self, i: usize) -> Option<u8> {
        if i < self.digits.len() {
            return Some(self.digits[i]);
        }
        self.periodic_tail
            .map(|(rho, pi)| self.digits[rho + (i - rho) % pi])
    }

    pub fn periodic_tail(&self) -> Option<(usize, usize)> {
        self.periodic_tail
    }

    /// First `n` digits as a word.
    pub fn digit_word(&self, n: usize) -> Result<Word> {
        let mut symbols = Vec::with_capacity(n);
        for i in 0..n {
            symbols.push(self.digit_at(i).ok_or(Error::DepthUnsupported {
                requested: n,
                max: self.digits.len(),
            })?);
        }
        Ok(Word::new(symbols, self.alphabet)?)
    }

    /// Exact check that the digit stream expands 1:
    /// `1 - 2 beta^{-n} <= sum_{j<=n} w_j beta^{-j} <= 1`.
    pub fn check_digit_identity(&self, n: usize) -> Result<bool> {
        let beta_inv = self.beta.inverse()?;
        let mut power = ExactReal::from_integer(1);
        let mut sum = ExactReal::from_integer(0);
        for i in 0..n {
            power = power.mul(&beta_inv);
            let d = self.digit_at(i).ok_or(Error::DepthUnsupported {
                requested: n,
                max: self.digits.len(),
            })?;
            if d > 0 {
                sum = sum.add(&ExactReal::from_integer(d as i64).mul(&power));
            }
        }
        let one = ExactReal::from_integer(1);
        let upper_ok = sum.sub(&one).sign()? <= 0;
        // 1 - sum <= 2 beta^{-n}
        let slack = one.sub(&sum);
        let bound = ExactReal::from_integer(2).mul(&power);
        let lower_ok = slack.sub(&bound).sign()? <= 0;
        Ok(upper_ok && lower_ok)
    }

    /// Check that every shift of the digit stream is lexicographically
    /// at most the stream itself (over the first `n` digits).
    pub fn check_shift_dominance(&self, n: usize) -> Result<bool> {
        let w = self.digit_word(n)?;
        for k in 1..n {
            let shifted = w.suffix(n - k);
            let head = w.prefix(n - k);
            if shifted.lex_compare(&head) == LexOrder::Greater {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the word's follower run ends on a strict drop (match
    /// length zero). The run is tracked without the periodic-tail
    /// identification: completing a full period of the digit stream is
    /// a maximal match, not a drop, and such words are suffix material.
    pub fn ends_on_drop(&self, w: &Word) -> bool {
        let mut matched = 0usize;
        for &s in w.symbols() {
            let d = match self.digit_at(matched) {
                Some(d) => d,
                None => return false,
            };
            match s.cmp(&d) {
                Ordering::Equal => matched += 1,
                Ordering::Less => matched = 0,
                Ordering::Greater => return false,
            }
        }
        matched == 0
    }

    /// Number of good-core words (runs ending on a drop) per length,
    /// exactly, via path counting over match lengths. A drop from match
    /// length `i` has multiplicity `w_{i+1}` (any strictly smaller
    /// symbol).
    pub fn good_counts(&self, n_max: usize) -> Result<Vec<BigUint>> {
        if let Some(max) = self.max_supported_len() {
            if n_max > max {
                return Err(Error::DepthUnsupported {
                    requested: n_max,
                    max,
                });
            }
        }
        let mut layer = vec![BigUint::zero(); n_max + 1];
        layer[0] = BigUint::one();
        let mut out = vec![layer[0].clone()];
        for _ in 1..=n_max {
            let mut next = vec![BigUint::zero(); n_max + 1];
            for (i, ways) in layer.iter().enumerate() {
                if ways.is_zero() {
                    continue;
                }
                let d = self.digit_at(i).ok_or(Error::DepthUnsupported {
                    requested: n_max,
                    max: self.digits.len(),
                })?;
                if d > 0 {
                    let drops = BigUint::from(d as u32) * ways;
                    next[0] += drops;
                }
                if i < n_max {
                    next[i + 1] += ways;
                }
            }
            out.push(next[0].clone());
            layer = next;
        }
        Ok(out)
    }

    /// The decomposition: good core = runs ending at the start state,
    /// suffixes = exact digit prefixes, prefixes = empty only.
    pub fn decomposition(self: &Arc<Self>) -> Decomposition {
        Decomposition {
            prefixes: Arc::new(EpsilonOnly),
            good: Arc::new(BetaGoodComponent(self.clone())),
            suffixes: Arc::new(BetaSuffixComponent(self.clone())),
            gap: 0,
            periodic_glue: true,
        }
    }

    /// Generating words `w_1..w_{i-1} j` for each position `i` with
    /// `w_i >= 1` and each symbol `j < w_i`, up to the given length.
    /// Freely concatenating these words stays inside the language.
    pub fn generators(&self, max_len: usize) -> Result<Vec<Word>> {
        let mut out = Vec::new();
        for i in 1..=max_len {
            let d = self.digit_at(i - 1).ok_or(Error::DepthUnsupported {
                requested: max_len,
                max: self.digits.len(),
            })?;
            if d == 0 {
                continue;
            }
            let prefix = self.digit_word(i - 1)?;
            for j in 0..d {
                let mut g = prefix.clone();
                g.push(j);
                out.push(g);
            }
        }
        Ok(out)
    }
}

fn build_dfa(
    digits: &[u8],
    periodic_tail: Option<(usize, usize)>,
    alphabet: Alphabet,
    depth: usize,
) -> Dfa {
    // State i = "the last i symbols matched the first i digits".
    // Reading s with d = digit i: s == d advances, s < d resets to 0
    // (every shorter suffix then satisfies a strict inequality), s > d
    // rejects.
    let num_states = match periodic_tail {
        Some((rho, pi)) => rho + pi,
        None => depth + 1,
    };
    let mut transitions = vec![vec![None; alphabet.size()]; num_states];
    for (i, row) in transitions.iter_mut().enumerate() {
        let d = match periodic_tail {
            Some(_) => digits[i],
            None => {
                if i >= depth {
                    continue; // unknown digits beyond the horizon
                }
                digits[i]
            }
        };
        let advance = match periodic_tail {
            Some((rho, pi)) => {
                if i + 1 < rho + pi {
                    i + 1
                } else {
                    rho + (i + 1 - rho) % pi
                }
            }
            None => i + 1,
        };
        for s in alphabet.symbols() {
            row[s as usize] = match s.cmp(&d) {
                Ordering::Equal => Some(advance as u32),
                Ordering::Less => Some(0),
                Ordering::Greater => None,
            };
        }
    }
    Dfa {
        alphabet,
        transitions,
        initial: 0,
    }
}

impl LanguageOracle for BetaShift {
    fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    fn contains(&self, w: &Word) -> bool {
        debug_assert!(
            self.max_supported_len().is_none() || w.len() <= self.depth,
            "membership query beyond the computed digit depth"
        );
        self.dfa.accepts(w)
    }

    fn automaton(&self) -> Option<&Dfa> {
        Some(&self.dfa)
    }

    fn max_supported_len(&self) -> Option<usize> {
        match self.periodic_tail {
            Some(_) => None,
            None => Some(self.depth),
        }
    }

    fn family_id(&self) -> String {
        format!("beta{{spec={}}}", self.spec.canonical())
    }

    fn periodic_exact(&self) -> bool {
        true
    }

    fn periodic_status(&self, w: &Word, _repeat_check: usize) -> PeriodicStatus {
        if w.is_empty() {
            return PeriodicStatus::Inadmissible;
        }
        let mut undecided = false;
        for k in 0..w.len() {
            let rotation = w.rotate(k);
            match self.compare_rotation(&rotation) {
                Some(Ordering::Greater) => return PeriodicStatus::Inadmissible,
                Some(_) => {}
                None => undecided = true,
            }
        }
        if undecided {
            PeriodicStatus::Undecided
        } else {
            PeriodicStatus::Admissible
        }
    }
}

impl BetaShift {
    /// Compare the periodic stream `r^infinity` with the digit stream.
    /// `None` means the comparison is a tie out to the trusted horizon
    /// (only possible without a detected periodic tail).
    fn compare_rotation(&self, r: &Word) -> Option<Ordering> {
        let horizon = match self.periodic_tail {
            Some((rho, pi)) => {
                // Both streams are eventually periodic; agreement over
                // the preperiod plus one full common period is
                // agreement forever.
                rho + num::integer::lcm(pi, r.len()) + pi.max(r.len())
            }
            None => self.digits.len(),
        };
        for i in 0..horizon {
            let a = r.symbols()[i % r.len()];
            let b = self.digit_at(i).expect("within horizon");
            match a.cmp(&b) {
                Ordering::Equal => continue,
                other => return Some(other),
            }
        }
        self.periodic_tail.map(|_| Ordering::Equal)
    }
}

/// Good core of a beta-shift: words whose follower run ends on a strict
/// drop, so every suffix sits strictly below the digit stream.
pub struct BetaGoodComponent(pub Arc<BetaShift>);

impl Component for BetaGoodComponent {
    fn contains(&self, w: &Word) -> bool {
        self.0.ends_on_drop(w)
    }

    fn describe(&self) -> String {
        "runs ending on a strict drop".into()
    }
}

/// Suffix collection of a beta-shift: exact prefixes of the digit
/// stream.
pub struct BetaSuffixComponent(pub Arc<BetaShift>);

impl Component for BetaSuffixComponent {
    fn contains(&self, w: &Word) -> bool {
        (0..w.len()).all(|i| self.0.digit_at(i) == Some(w.symbols()[i]))
    }

    fn slice(&self, n: usize) -> Option<Vec<Word>> {
        match self.0.digit_word(n) {
            Ok(w) => Some(vec![w]),
            Err(_) => None,
        }
    }

    fn describe(&self) -> String {
        "prefixes of the digit stream".into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{count_words, enumerate, Budget};

    fn golden() -> Arc<BetaShift> {
        BetaShift::from_text("golden", 64).unwrap()
    }

    #[test]
    fn golden_digits_alternate() {
        let b = golden();
        assert_eq!(b.periodic_tail(), Some((0, 2)));
        assert_eq!(&b.digits()[..8], &[1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(b.alphabet().size(), 2);
        assert!((b.beta_approx() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn integer_base_two_has_all_ones() {
        let b = BetaShift::from_text("2", 16).unwrap();
        assert_eq!(b.periodic_tail(), Some((0, 1)));
        assert!(b.digits().iter().all(|&d| d == 1));
        assert_eq!(b.alphabet().size(), 2);
        // Base 2 is the full shift on two symbols.
        let counts = count_words(b.as_ref(), 10, &Budget::default()).unwrap();
        assert_eq!(counts[10], BigUint::from(1024u32));
    }

    #[test]
    fn rational_base_digits_match_exact_reference() {
        let b = BetaShift::from_text("1.8", 64).unwrap();
        // Exact greedy digits of 1 in base 9/5.
        let expected = [
            1, 1, 0, 1, 0, 1, 0, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1,
        ];
        assert_eq!(&b.digits()[..24], &expected);
        assert_eq!(b.periodic_tail(), None);
        assert_eq!(b.max_supported_len(), Some(64));
    }

    #[test]
    fn fraction_and_decimal_agree() {
        let a = BetaShift::from_text("1.8", 32).unwrap();
        let b = BetaShift::from_text("9/5", 32).unwrap();
        assert_eq!(a.digits(), b.digits());
        assert_eq!(a.family_id(), b.family_id());
    }

    #[test]
    fn root_spec_matches_golden_shorthand() {
        let a = BetaShift::from_text("root(x^2-x-1, near=1.6)", 32).unwrap();
        let b = BetaShift::from_text("golden", 32).unwrap();
        assert_eq!(a.digits(), b.digits());
    }

    #[test]
    fn digit_identity_and_shift_dominance_hold() {
        for spec in ["2", "golden", "1.8"] {
            let b = BetaShift::from_text(spec, 64).unwrap();
            assert!(b.check_digit_identity(64).unwrap(), "identity for {spec}");
            assert!(b.check_shift_dominance(64).unwrap(), "dominance for {spec}");
        }
    }

    #[test]
    fn golden_language_counts_are_fibonacci() {
        let b = golden();
        let counts = count_words(b.as_ref(), 12, &Budget::default()).unwrap();
        // 1, 2, 3, 5, 8, ... = F_{n+2}
        let fib = [1u64, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377];
        for (n, f) in fib.iter().enumerate() {
            assert_eq!(counts[n], BigUint::from(*f), "length {n}");
        }
    }

    #[test]
    fn golden_good_counts_are_fibonacci_shifted() {
        let b = golden();
        let good = b.good_counts(10).unwrap();
        let expected = [1u64, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55];
        for (n, f) in expected.iter().enumerate() {
            assert_eq!(good[n], BigUint::from(*f), "length {n}");
        }
    }

    #[test]
    fn membership_examples() {
        let b = golden();
        let t = |s: &str| Word::parse(s, b.alphabet()).unwrap();
        assert!(b.contains(&t("10100")));
        assert!(b.contains(&t("0010")));
        assert!(!b.contains(&t("11")));
        assert!(!b.contains(&t("0110")));
        let b18 = BetaShift::from_text("1.8", 64).unwrap();
        assert!(b18.contains(&t("11")));
        assert!(!b18.contains(&t("111")));
    }

    #[test]
    fn decomposition_covers_all_words() {
        let b = golden();
        let d = b.decomposition();
        let layers = enumerate(b.as_ref(), 10, &Budget::default()).unwrap();
        for layer in &layers {
            for w in layer {
                assert!(!d.parse(w).is_empty(), "no split for {w}");
            }
        }
    }

    #[test]
    fn generators_match_first_return_formula() {
        let b = golden();
        let gens = b.generators(12).unwrap();
        let strings: Vec<String> = gens.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            strings,
            vec!["0", "100", "10100", "1010100", "101010100", "10101010100"]
        );
    }

    #[test]
    fn periodic_status_is_exact_for_sofic_cases() {
        let b = golden();
        let t = |s: &str| Word::parse(s, b.alphabet()).unwrap();
        assert_eq!(b.periodic_status(&t("10"), 8), PeriodicStatus::Admissible);
        assert_eq!(b.periodic_status(&t("0"), 8), PeriodicStatus::Admissible);
        assert_eq!(b.periodic_status(&t("1"), 8), PeriodicStatus::Inadmissible);
        assert_eq!(
            b.periodic_status(&t("100"), 8),
            PeriodicStatus::Admissible
        );
    }

    #[test]
    fn aperiodic_base_decides_when_streams_differ() {
        let b = BetaShift::from_text("1.8", 64).unwrap();
        let t = |s: &str| Word::parse(s, b.alphabet()).unwrap();
        assert_eq!(b.periodic_status(&t("10"), 8), PeriodicStatus::Admissible);
        assert_eq!(b.periodic_status(&t("111"), 8), PeriodicStatus::Inadmissible);
        // Repeating the full digit prefix: some wrapped rotation
        // exceeds the stream within the trusted horizon, which is a
        // conclusive rejection even without knowing later digits.
        let head = b.digit_word(64).unwrap();
        assert_eq!(b.periodic_status(&head, 8), PeriodicStatus::Inadmissible);
        // With a tiny horizon the same comparison runs out of trusted
        // digits and must stay undecided.
        let short = BetaShift::from_text("1.8", 2).unwrap();
        let w11 = Word::parse("11", short.alphabet()).unwrap();
        assert_eq!(short.periodic_status(&w11, 8), PeriodicStatus::Undecided);
    }

    #[test]
    fn bad_specs_are_rejected() {
        assert!(BetaShift::from_text("1", 8).is_err());
        assert!(BetaShift::from_text("0.5", 8).is_err());
        assert!(BetaSpec::parse("root(x^2-x-1)").is_err());
        assert!(BetaSpec::parse("root(7, near=1)").is_err());
        assert!(BetaSpec::parse("chaos").is_err());
    }
}
