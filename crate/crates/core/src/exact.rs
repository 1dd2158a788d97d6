//! Exact arithmetic over the reals needed by digit computations:
//! arbitrary-precision rationals, and algebraic numbers represented as
//! polynomial residues modulo a defining polynomial together with a
//! Sturm-isolated rational interval locating the intended root.
//!
//! Every comparison, floor, and zero test is exact. When an interval
//! must be refined to decide a sign, refinement is capped; hitting the
//! cap surfaces as [`Error::Precision`] rather than a wrong answer.

use crate::{Error, Result};
use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex};

type Poly = Vec<BigRational>; // coefficients, low degree first

fn poly_trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_deg(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn poly_eval(p: &Poly, x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_derivative(p: &Poly) -> Poly {
    if p.len() <= 1 {
        return vec![];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

fn poly_neg(p: &Poly) -> Poly {
    p.iter().map(|c| -c).collect()
}

/// Remainder of `a` divided by `b` (`b` nonzero).
fn poly_rem(a: &Poly, b: &Poly) -> Poly {
    let b = poly_trim(b.clone());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = poly_trim(a.clone());
    let db = poly_deg(&b);
    let lead = b.last().unwrap().clone();
    while !r.is_empty() && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let factor = r.last().unwrap() / &lead;
        let shift = dr - db;
        for (i, c) in b.iter().enumerate() {
            let adj = &factor * c;
            r[i + shift] -= adj;
        }
        r = poly_trim(r);
        if r.len() == 1 && r[0].is_zero() {
            r.clear();
        }
    }
    r
}

fn poly_make_monic(p: &Poly) -> Poly {
    let p = poly_trim(p.clone());
    if p.is_empty() {
        return p;
    }
    let lead = p.last().unwrap().clone();
    p.iter().map(|c| c / &lead).collect()
}

fn poly_gcd_monic(a: &Poly, b: &Poly) -> Poly {
    let mut x = poly_trim(a.clone());
    let mut y = poly_trim(b.clone());
    while !y.is_empty() {
        let r = poly_rem(&x, &y);
        x = y;
        y = r;
    }
    poly_make_monic(&x)
}

/// Half-extended Euclid: returns `(g, u)` with `u * a = g (mod m)` and
/// `g = gcd(a, m)` (monic).
fn poly_half_ext_gcd(a: &Poly, m: &Poly) -> (Poly, Poly) {
    let mut r0 = poly_trim(m.clone());
    let mut r1 = poly_trim(a.clone());
    let mut u0: Poly = vec![];
    let mut u1: Poly = vec![BigRational::one()];
    while !r1.is_empty() {
        // quotient of r0 by r1
        let mut q: Poly = vec![BigRational::zero(); poly_deg(&r0).saturating_sub(poly_deg(&r1)) + 1];
        let mut rem = r0.clone();
        let lead = r1.last().unwrap().clone();
        let db = poly_deg(&r1);
        while !rem.is_empty() && poly_deg(&rem) >= db {
            let dr = poly_deg(&rem);
            let factor = rem.last().unwrap() / &lead;
            q[dr - db] = factor.clone();
            let shift = dr - db;
            for (i, c) in r1.iter().enumerate() {
                let adj = &factor * c;
                rem[i + shift] -= adj;
            }
            rem = poly_trim(rem);
            if rem.len() == 1 && rem[0].is_zero() {
                rem.clear();
            }
        }
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = rem;
        u0 = u1;
        u1 = u2;
    }
    // normalize so g is monic
    if r0.is_empty() {
        return (r0, u0);
    }
    let lead = r0.last().unwrap().clone();
    let g = r0.iter().map(|c| c / &lead).collect();
    let u = u0.iter().map(|c| c / &lead).collect();
    (g, u)
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            let add = ca * cb;
            out[i + j] += add;
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![poly_trim(p.clone()), poly_derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let r = poly_neg(&poly_rem(&chain[n - 2], &chain[n - 1]));
        if r.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

fn sign_variations(chain: &[Poly], x: &BigRational) -> usize {
    let mut last: Option<Sign> = None;
    let mut variations = 0;
    for p in chain {
        let v = poly_eval(p, x);
        let s = match v.numer().sign() {
            Sign::NoSign => continue,
            s => s,
        };
        if let Some(prev) = last {
            if prev != s {
                variations += 1;
            }
        }
        last = Some(s);
    }
    variations
}

/// Number of roots of the chain's square-free polynomial in `(lo, hi]`.
fn sturm_count(chain: &[Poly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo).saturating_sub(sign_variations(chain, hi))
}

/// Shared description of one algebraic number: a square-free defining
/// polynomial with no rational roots, its Sturm chain, and an isolating
/// interval (endpoints are never roots) that refines on demand.
#[derive(Debug)]
pub struct FieldCtx {
    /// Monic defining polynomial, degree >= 2, low coefficients first
    /// including the leading 1.
    min_poly: Poly,
    interval: Mutex<(BigRational, BigRational)>,
    max_refine: u32,
}

impl FieldCtx {
    fn degree(&self) -> usize {
        poly_deg(&self.min_poly)
    }

    fn interval(&self) -> (BigRational, BigRational) {
        let guard = self.interval.lock().unwrap();
        guard.clone()
    }

    /// Halve the interval width `steps` times, keeping the root inside.
    fn refine(&self, steps: u32) {
        let mut guard = self.interval.lock().unwrap();
        for _ in 0..steps {
            let mid = (&guard.0 + &guard.1) / BigRational::from_integer(BigInt::from(2));
            // The defining polynomial has no rational roots, so the
            // midpoint sign is never zero.
            let lo_sign = poly_eval(&self.min_poly, &guard.0).numer().sign();
            let mid_sign = poly_eval(&self.min_poly, &mid).numer().sign();
            if mid_sign == lo_sign {
                guard.0 = mid;
            } else {
                guard.1 = mid;
            }
        }
    }
}

/// An exact real number: a rational, or an element of the quotient ring
/// `Q[x] / (min_poly)` evaluated at the isolated root.
#[derive(Clone, Debug)]
pub struct ExactReal {
    repr: Repr,
}

#[derive(Clone, Debug)]
enum Repr {
    Rat(BigRational),
    Alg { ctx: Arc<FieldCtx>, coeffs: Poly },
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        match (&self.repr, &other.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => a == b,
            (Repr::Alg { coeffs: a, .. }, Repr::Alg { coeffs: b, .. }) => {
                poly_trim(a.clone()) == poly_trim(b.clone())
            }
            _ => false,
        }
    }
}

impl Eq for ExactReal {}

impl Hash for ExactReal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rat(q) => {
                0u8.hash(state);
                q.hash(state);
            }
            Repr::Alg { coeffs, .. } => {
                1u8.hash(state);
                for c in poly_trim(coeffs.clone()) {
                    c.hash(state);
                }
            }
        }
    }
}

impl ExactReal {
    pub fn from_rational(q: BigRational) -> Self {
        ExactReal { repr: Repr::Rat(q) }
    }

    pub fn from_integer(k: i64) -> Self {
        ExactReal::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// The root of the integer polynomial `coeffs[0] + coeffs[1] x + ...`
    /// closest to `near`. Returns a rational representation when that
    /// root is rational (after square-free reduction and rational-root
    /// extraction), an algebraic one otherwise.
    pub fn algebraic_root(coeffs: &[BigInt], near: f64) -> Result<ExactReal> {
        let rational: Poly = coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut p = poly_trim(rational);
        if poly_deg(&p) < 1 || p.is_empty() {
            return Err(Error::Config(
                "root specification needs a polynomial of degree at least 1".into(),
            ));
        }
        // Square-free part.
        let deriv = poly_derivative(&p);
        let g = poly_gcd_monic(&p, &deriv);
        if poly_deg(&g) >= 1 {
            p = poly_quotient(&p, &g);
        }
        // Extract rational roots; remember them as candidates.
        let mut rational_roots = Vec::new();
        while let Some(r) = find_rational_root(&p) {
            rational_roots.push(r.clone());
            let linear = vec![-r, BigRational::one()];
            p = poly_quotient(&p, &linear);
            if poly_deg(&p) < 1 {
                break;
            }
        }
        let mut best_rational: Option<(f64, BigRational)> = None;
        for r in rational_roots {
            let d = (r.to_f64().unwrap_or(f64::INFINITY) - near).abs();
            if best_rational.as_ref().is_none_or(|(bd, _)| d < *bd) {
                best_rational = Some((d, r));
            }
        }
        let irrational = if poly_deg(&p) >= 1 {
            isolate_root(&p, near)?
        } else {
            None
        };
        match (best_rational, irrational) {
            (Some((dr, r)), Some((di, lo, hi))) => {
                if dr <= di {
                    Ok(ExactReal::from_rational(r))
                } else {
                    Ok(Self::build_algebraic(p, lo, hi))
                }
            }
            (Some((_, r)), None) => Ok(ExactReal::from_rational(r)),
            (None, Some((_, lo, hi))) => Ok(Self::build_algebraic(p, lo, hi)),
            (None, None) => Err(Error::Config(format!(
                "no real root found near {near}; widen the search or adjust `near`"
            ))),
        }
    }

    fn build_algebraic(p: Poly, lo: BigRational, hi: BigRational) -> ExactReal {
        let monic = poly_make_monic(&p);
        let degree = poly_deg(&monic);
        let ctx = Arc::new(FieldCtx {
            min_poly: monic,
            interval: Mutex::new((lo, hi)),
            max_refine: 4096,
        });
        ctx.refine(64);
        let mut coeffs = vec![BigRational::zero(); degree];
        coeffs[1] = BigRational::one(); // the element `x`, i.e. the root itself
        ExactReal {
            repr: Repr::Alg { ctx, coeffs },
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.repr, Repr::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(q) => Some(q),
            Repr::Alg { .. } => None,
        }
    }

    fn lift(&self, other: &ExactReal) -> (ExactReal, ExactReal) {
        match (&self.repr, &other.repr) {
            (Repr::Alg { ctx, .. }, Repr::Rat(q)) => {
                let mut coeffs = vec![BigRational::zero(); ctx.degree()];
                coeffs[0] = q.clone();
                (
                    self.clone(),
                    ExactReal {
                        repr: Repr::Alg {
                            ctx: ctx.clone(),
                            coeffs,
                        },
                    },
                )
            }
            (Repr::Rat(q), Repr::Alg { ctx, .. }) => {
                let mut coeffs = vec![BigRational::zero(); ctx.degree()];
                coeffs[0] = q.clone();
                (
                    ExactReal {
                        repr: Repr::Alg {
                            ctx: ctx.clone(),
                            coeffs,
                        },
                    },
                    other.clone(),
                )
            }
            _ => (self.clone(), other.clone()),
        }
    }

    pub fn add(&self, other: &ExactReal) -> ExactReal {
        let (a, b) = self.lift(other);
        match (a.repr, b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => ExactReal::from_rational(x + y),
            (Repr::Alg { ctx, coeffs: x }, Repr::Alg { coeffs: y, .. }) => {
                let coeffs = x
                    .iter()
                    .zip(y.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                ExactReal {
                    repr: Repr::Alg { ctx, coeffs },
                }
            }
            _ => unreachable!("lift aligns representations"),
        }
    }

    pub fn sub(&self, other: &ExactReal) -> ExactReal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ExactReal {
        match &self.repr {
            Repr::Rat(q) => ExactReal::from_rational(-q),
            Repr::Alg { ctx, coeffs } => ExactReal {
                repr: Repr::Alg {
                    ctx: ctx.clone(),
                    coeffs: coeffs.iter().map(|c| -c).collect(),
                },
            },
        }
    }

    pub fn mul(&self, other: &ExactReal) -> ExactReal {
        let (a, b) = self.lift(other);
        match (a.repr, b.repr) {
            (Repr::Rat(x), Repr::Rat(y)) => ExactReal::from_rational(x * y),
            (Repr::Alg { ctx, coeffs: x }, Repr::Alg { coeffs: y, .. }) => {
                let product = poly_mul(&x, &y);
                let reduced = poly_rem(&product, &ctx.min_poly);
                let mut coeffs = vec![BigRational::zero(); ctx.degree()];
                for (i, c) in reduced.into_iter().enumerate() {
                    coeffs[i] = c;
                }
                ExactReal {
                    repr: Repr::Alg { ctx, coeffs },
                }
            }
            _ => unreachable!("lift aligns representations"),
        }
    }

    pub fn is_zero_value(&self) -> bool {
        match &self.repr {
            Repr::Rat(q) => q.is_zero(),
            Repr::Alg { ctx, coeffs } => {
                let poly = poly_trim(coeffs.clone());
                if poly.is_empty() {
                    return true;
                }
                // The element vanishes at the root iff gcd with the
                // defining polynomial has the isolated root in the
                // interval (all of the gcd's roots are roots of the
                // defining polynomial, and the interval isolates ours).
                let g = poly_gcd_monic(&poly, &ctx.min_poly);
                if poly_deg(&g) == 0 {
                    return false;
                }
                let (lo, hi) = ctx.interval();
                let slo = poly_eval(&g, &lo).numer().sign();
                let shi = poly_eval(&g, &hi).numer().sign();
                slo != shi
            }
        }
    }

    /// Multiplicative inverse of a nonzero value.
    pub fn inverse(&self) -> Result<ExactReal> {
        match &self.repr {
            Repr::Rat(q) => {
                if q.is_zero() {
                    Err(Error::Precision("division by zero".into()))
                } else {
                    Ok(ExactReal::from_rational(q.recip()))
                }
            }
            Repr::Alg { ctx, coeffs } => {
                if self.is_zero_value() {
                    return Err(Error::Precision("division by zero".into()));
                }
                let poly = poly_trim(coeffs.clone());
                let (g, u) = poly_half_ext_gcd(&poly, &ctx.min_poly);
                if poly_deg(&g) == 0 {
                    let g0 = g[0].clone();
                    let inv_coeffs = poly_rem(&u, &ctx.min_poly);
                    let mut out = vec![BigRational::zero(); ctx.degree()];
                    for (i, c) in inv_coeffs.into_iter().enumerate() {
                        out[i] = c / &g0;
                    }
                    return Ok(ExactReal {
                        repr: Repr::Alg {
                            ctx: ctx.clone(),
                            coeffs: out,
                        },
                    });
                }
                // Reducible defining polynomial: u*self = g at the root
                // with g nonzero there, so 1/self = u * (1/g); the gcd
                // has strictly smaller degree, so this terminates.
                let g_elem = ExactReal {
                    repr: Repr::Alg {
                        ctx: ctx.clone(),
                        coeffs: pad(&g, ctx.degree()),
                    },
                };
                let u_elem = ExactReal {
                    repr: Repr::Alg {
                        ctx: ctx.clone(),
                        coeffs: pad(&poly_rem(&u, &ctx.min_poly), ctx.degree()),
                    },
                };
                Ok(u_elem.mul(&g_elem.inverse()?))
            }
        }
    }

    /// Exact sign: -1, 0, or +1.
    pub fn sign(&self) -> Result<i8> {
        match &self.repr {
            Repr::Rat(q) => Ok(match q.numer().sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            }),
            Repr::Alg { ctx, coeffs } => {
                if self.is_zero_value() {
                    return Ok(0);
                }
                let mut spent = 0u32;
                let mut step = 8u32;
                loop {
                    let (lo, hi) = self.bounds(ctx, coeffs);
                    if lo.is_positive() {
                        return Ok(1);
                    }
                    if hi.is_negative() {
                        return Ok(-1);
                    }
                    if spent >= ctx.max_refine {
                        return Err(Error::Precision(format!(
                            "sign undecided after {spent} interval refinements"
                        )));
                    }
                    ctx.refine(step);
                    spent += step;
                    step = (step * 2).min(256);
                }
            }
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &BigRational) -> Result<Ordering> {
        let diff = self.sub(&ExactReal::from_rational(q.clone()));
        Ok(match diff.sign()? {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }

    /// Exact floor.
    pub fn floor(&self) -> Result<BigInt> {
        match &self.repr {
            Repr::Rat(q) => Ok(q.floor().to_integer()),
            Repr::Alg { ctx, coeffs } => {
                let mut spent = 0u32;
                let mut step = 8u32;
                loop {
                    let (lo, hi) = self.bounds(ctx, coeffs);
                    let klo = lo.floor().to_integer();
                    let khi = hi.floor().to_integer();
                    if klo == khi {
                        return Ok(klo);
                    }
                    if &khi - &klo == BigInt::one() {
                        // Straddles one integer boundary: equal exactly?
                        let boundary =
                            ExactReal::from_rational(BigRational::from_integer(khi.clone()));
                        if self.sub(&boundary).is_zero_value() {
                            return Ok(khi);
                        }
                    }
                    if spent >= ctx.max_refine {
                        return Err(Error::Precision(format!(
                            "floor undecided after {spent} interval refinements"
                        )));
                    }
                    ctx.refine(step);
                    spent += step;
                    step = (step * 2).min(256);
                }
            }
        }
    }

    /// Envelope of the value given the current root interval; valid
    /// because the isolated roots handled here are positive.
    fn bounds(&self, ctx: &FieldCtx, coeffs: &Poly) -> (BigRational, BigRational) {
        let (ilo, ihi) = ctx.interval();
        debug_assert!(ilo.is_positive(), "interval arithmetic assumes a positive root");
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        let mut plo = BigRational::one();
        let mut phi = BigRational::one();
        for c in coeffs {
            if c.is_positive() {
                lo += c * &plo;
                hi += c * &phi;
            } else {
                lo += c * &phi;
                hi += c * &plo;
            }
            plo *= &ilo;
            phi *= &ihi;
        }
        (lo, hi)
    }

    /// Double-precision approximation (refined to ~1e-18 first).
    pub fn to_f64(&self) -> f64 {
        match &self.repr {
            Repr::Rat(q) => q.to_f64().unwrap_or(f64::NAN),
            Repr::Alg { ctx, coeffs } => {
                ctx.refine(8);
                loop {
                    let (lo, hi) = self.bounds(ctx, coeffs);
                    let width = &hi - &lo;
                    let tol = BigRational::new(BigInt::one(), BigInt::from(1u64 << 60));
                    if width < tol {
                        let two = BigRational::from_integer(BigInt::from(2));
                        return ((lo + hi) / two).to_f64().unwrap_or(f64::NAN);
                    }
                    ctx.refine(16);
                }
            }
        }
    }

    /// Stable key for cycle detection in digit loops.
    pub fn cycle_key(&self) -> u64 {
        let mut hasher = DefaultHasher::new();
        self.hash(&mut hasher);
        hasher.finish()
    }
}

fn pad(p: &Poly, len: usize) -> Poly {
    let mut out = p.clone();
    out.resize(len, BigRational::zero());
    out
}

/// Exact quotient for exact divisors (remainder known to vanish).
fn poly_quotient(a: &Poly, b: &Poly) -> Poly {
    let b = poly_trim(b.clone());
    let mut r = poly_trim(a.clone());
    let db = poly_deg(&b);
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); poly_deg(&r).saturating_sub(db) + 1];
    while !r.is_empty() && poly_deg(&r) >= db {
        let dr = poly_deg(&r);
        let factor = r.last().unwrap() / &lead;
        q[dr - db] = factor.clone();
        for (i, c) in b.iter().enumerate() {
            let adj = &factor * c;
            r[i + dr - db] -= adj;
        }
        r = poly_trim(r);
        if r.len() == 1 && r[0].is_zero() {
            r.clear();
        }
    }
    poly_trim(q)
}

/// One rational root of an integer-coefficient polynomial (cleared of
/// denominators), found by the rational root theorem with divisor
/// enumeration capped for very large constant terms.
fn find_rational_root(p: &Poly) -> Option<BigRational> {
    let p = poly_trim(p.clone());
    if p.len() < 2 {
        return None;
    }
    // Clear denominators.
    let mut denom_lcm = BigInt::one();
    for c in &p {
        denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| (c * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    if ints[0].is_zero() {
        return Some(BigRational::zero());
    }
    let c0 = ints[0].abs();
    let cd = ints.last().unwrap().abs();
    let ps = small_divisors(&c0)?;
    let qs = small_divisors(&cd)?;
    for num in &ps {
        for den in &qs {
            for sign in [1i64, -1] {
                let cand = BigRational::new(num * BigInt::from(sign), den.clone());
                if poly_eval(&p, &cand).is_zero() {
                    return Some(cand);
                }
            }
        }
    }
    None
}

/// All positive divisors when the value is small enough to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            divs.push(BigInt::from(d));
            if d != n / d {
                divs.push(BigInt::from(n / d));
            }
        }
        d += 1;
        if divs.len() > 4096 {
            return None;
        }
    }
    Some(divs)
}

/// Locate the real root of a square-free, rational-root-free polynomial
/// closest to `near`. Returns `(distance, lo, hi)` with exactly one
/// root in `(lo, hi)` by Sturm count.
#[allow(clippy::type_complexity)]
fn isolate_root(p: &Poly, near: f64) -> Result<Option<(f64, BigRational, BigRational)>> {
    let chain = sturm_chain(&poly_make_monic(p));
    for denom in [64u32, 1024] {
        let step = BigRational::new(BigInt::one(), BigInt::from(denom));
        let near_rat = BigRational::from_float(near)
            .ok_or_else(|| Error::Config("`near` must be a finite number".into()))?;
        let start = &near_rat - BigRational::from_integer(BigInt::one());
        let mut brackets: Vec<(BigRational, BigRational)> = Vec::new();
        let mut prev_x = start.clone();
        let mut prev_sign = poly_eval(p, &prev_x).numer().sign();
        for i in 1..=(2 * denom) {
            let x = &start + &step * BigRational::from_integer(BigInt::from(i));
            let s = poly_eval(p, &x).numer().sign();
            if s == Sign::NoSign {
                // A rational root would have been divided out already.
                return Err(Error::Config(
                    "unexpected rational root during isolation".into(),
                ));
            }
            if prev_sign != Sign::NoSign && s != prev_sign {
                brackets.push((prev_x.clone(), x.clone()));
            }
            prev_x = x;
            prev_sign = s;
        }
        if brackets.is_empty() {
            continue;
        }
        // Pick the bracket whose midpoint is closest to `near`.
        brackets.sort_by(|a, b| {
            let mid = |z: &(BigRational, BigRational)| {
                (z.0.to_f64().unwrap_or(f64::NAN) + z.1.to_f64().unwrap_or(f64::NAN)) / 2.0
            };
            (mid(a) - near)
                .abs()
                .partial_cmp(&(mid(b) - near).abs())
                .unwrap_or(Ordering::Equal)
        });
        let (mut lo, mut hi) = brackets[0].clone();
        // Narrow until the interval isolates a single root.
        let two = BigRational::from_integer(BigInt::from(2));
        let mut guard = 0;
        while sturm_count(&chain, &lo, &hi) > 1 {
            let mid = (&lo + &hi) / &two;
            let lo_sign = poly_eval(p, &lo).numer().sign();
            let mid_sign = poly_eval(p, &mid).numer().sign();
            if mid_sign != lo_sign {
                hi = mid;
            } else {
                lo = mid;
            }
            guard += 1;
            if guard > 256 {
                return Err(Error::Precision(
                    "failed to isolate a single root; roots may coincide".into(),
                ));
            }
        }
        if sturm_count(&chain, &lo, &hi) == 1 {
            let mid = (lo.to_f64().unwrap_or(f64::NAN) + hi.to_f64().unwrap_or(f64::NAN)) / 2.0;
            return Ok(Some(((mid - near).abs(), lo, hi)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ExactReal {
        // x^2 - x - 1
        ExactReal::algebraic_root(&[BigInt::from(-1), BigInt::from(-1), BigInt::from(1)], 1.6)
            .unwrap()
    }

    #[test]
    fn golden_root_satisfies_its_equation() {
        let phi = golden();
        let lhs = phi.mul(&phi);
        let rhs = phi.add(&ExactReal::from_integer(1));
        assert!(lhs.sub(&rhs).is_zero_value());
        assert!((phi.to_f64() - 1.618033988749895).abs() < 1e-12);
    }

    #[test]
    fn floor_of_golden_powers() {
        let phi = golden();
        assert_eq!(phi.floor().unwrap(), BigInt::from(1));
        let phi2 = phi.mul(&phi);
        assert_eq!(phi2.floor().unwrap(), BigInt::from(2)); // 2.618...
        let phi3 = phi2.mul(&phi);
        assert_eq!(phi3.floor().unwrap(), BigInt::from(4)); // 4.236...
    }

    #[test]
    fn floor_detects_exact_integers() {
        let phi = golden();
        // phi^2 - phi = 1 exactly.
        let one = phi.mul(&phi).sub(&phi);
        assert_eq!(one.floor().unwrap(), BigInt::from(1));
        assert_eq!(one.sign().unwrap(), 1);
        assert!(one.sub(&ExactReal::from_integer(1)).is_zero_value());
    }

    #[test]
    fn inverse_of_golden_is_golden_minus_one() {
        let phi = golden();
        let inv = phi.inverse().unwrap();
        let expected = phi.sub(&ExactReal::from_integer(1));
        assert!(inv.sub(&expected).is_zero_value());
        let product = phi.mul(&inv);
        assert!(product.sub(&ExactReal::from_integer(1)).is_zero_value());
    }

    #[test]
    fn rational_roots_are_detected() {
        // x^2 - 3x + 2 = (x-1)(x-2); near 2 picks the rational root 2.
        let r = ExactReal::algebraic_root(
            &[BigInt::from(2), BigInt::from(-3), BigInt::from(1)],
            1.9,
        )
        .unwrap();
        assert!(r.is_rational());
        assert_eq!(
            r.as_rational().unwrap(),
            &BigRational::from_integer(BigInt::from(2))
        );
    }

    #[test]
    fn near_selects_between_roots() {
        // x^2 - 3 has roots +-sqrt(3).
        let r = ExactReal::algebraic_root(&[BigInt::from(-3), BigInt::from(0), BigInt::from(1)], 1.7)
            .unwrap();
        assert!((r.to_f64() - 3f64.sqrt()).abs() < 1e-12);
        let sq = r.mul(&r).sub(&ExactReal::from_integer(3));
        assert!(sq.is_zero_value());
    }

    #[test]
    fn reducible_polynomial_still_supports_arithmetic() {
        // (x^2 - 2)(x^2 - 3), near sqrt(2): square-free already, no
        // rational roots; gcd-based zero tests must still be exact.
        let coeffs = [
            BigInt::from(6),
            BigInt::from(0),
            BigInt::from(-5),
            BigInt::from(0),
            BigInt::from(1),
        ];
        let r = ExactReal::algebraic_root(&coeffs, 1.41).unwrap();
        let two = ExactReal::from_integer(2);
        assert!(r.mul(&r).sub(&two).is_zero_value());
        assert_eq!(r.mul(&r).sub(&ExactReal::from_integer(3)).sign().unwrap(), -1);
        let inv = r.inverse().unwrap();
        assert!(r.mul(&inv).sub(&ExactReal::from_integer(1)).is_zero_value());
    }

    #[test]
    fn comparisons_against_rationals_are_exact() {
        let phi = golden();
        // Consecutive Fibonacci ratios alternate around phi:
        // 987/610 < phi < 610/377.
        let below = BigRational::new(BigInt::from(987), BigInt::from(610));
        assert_eq!(phi.cmp_rational(&below).unwrap(), Ordering::Greater);
        let above = BigRational::new(BigInt::from(610), BigInt::from(377));
        assert_eq!(phi.cmp_rational(&above).unwrap(), Ordering::Less);
    }

    #[test]
    fn cycle_keys_agree_with_equality() {
        let phi = golden();
        let a = phi.mul(&phi).sub(&phi); // 1
        let b = ExactReal::from_integer(1);
        // Same value, but different representations (field element vs
        // rational) — keys may differ; equality within one
        // representation class is what cycle detection relies on.
        let c = phi.inverse().unwrap().add(&ExactReal::from_integer(0));
        let d = phi.sub(&ExactReal::from_integer(1));
        assert_eq!(c, d);
        assert_eq!(c.cycle_key(), d.cycle_key());
        assert!(a.sub(&b).is_zero_value());
    }
}
