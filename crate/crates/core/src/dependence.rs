//! Multiplicative dependence of Gaussian integers and witness searches for
//! `a^m ≈ u·b^n`.
//!
//! `a` and `b` are dependent when `a^r = b^s` for positive `r, s`. For
//! independent pairs the quotients `a^m / b^n` accumulate at every point of
//! the group they generate, which the searches below exploit: a
//! [`GroupWitness`] certifies `|a^m/b^n - u|² <= num/den`, and a
//! [`PrefixWitness`] certifies that the base-`b` word of `a^m` starts with the
//! word of `u`.
//!
//! Floating point is used only to nominate `n` for a given `m`; every witness
//! is checked in exact integer arithmetic before it is returned.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::gaussint::{factorize, ln_abs, GaussError, GaussInt};
use crate::numeration::{canonical_digit_set, length_bound, DigitSet, LengthBound, NumerationError, Word};

#[derive(Debug, Error)]
pub enum DependenceError {
    #[error("{0} is zero or a unit")]
    UnitOrZeroInput(GaussInt),
    #[error("no witness found for m <= {m_max}")]
    NotFound { m_max: u32 },
    #[error("{a} and {b} are multiplicatively dependent: ({a})^{r} = ({b})^{s}")]
    NotIndependent { a: GaussInt, b: GaussInt, r: u32, s: u32 },
    #[error("bound denominator must be positive")]
    ZeroDenominator,
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

type Result<T, E = DependenceError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DependenceVerdict {
    pub dependent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
}

impl DependenceVerdict {
    fn independent() -> Self {
        DependenceVerdict { dependent: false, r: None, s: None }
    }
}

fn require_nonunit(z: &GaussInt) -> Result<()> {
    if z.norm() <= BigInt::one() {
        return Err(DependenceError::UnitOrZeroInput(z.clone()));
    }
    Ok(())
}

/// Decides whether `a^r = b^s` for some positive `r, s`, returning the
/// least such pair.
///
/// The prime exponent vectors must be positively proportional, which fixes
/// `r/s`; the remaining unit `a^r·b^(-s)` has order dividing 4, so the
/// multiplier `t ∈ 1..=4` is found by direct powering.
pub fn mult_dependent(a: &GaussInt, b: &GaussInt) -> Result<DependenceVerdict> {
    require_nonunit(a)?;
    require_nonunit(b)?;
    let fa = factorize(a)?;
    let fb = factorize(b)?;
    let primes_a: Vec<_> = fa.factors.iter().map(|(p, _)| p).collect();
    let primes_b: Vec<_> = fb.factors.iter().map(|(p, _)| p).collect();
    if primes_a != primes_b {
        return Ok(DependenceVerdict::independent());
    }
    let (ea, eb) = (fa.factors[0].1, fb.factors[0].1);
    let g = ea.gcd(&eb);
    let (r0, s0) = (eb / g, ea / g);
    let proportional = fa.factors.iter().zip(&fb.factors).all(|((_, x), (_, y))| r0 * x == s0 * y);
    if !proportional {
        return Ok(DependenceVerdict::independent());
    }
    for t in 1..=4 {
        let (r, s) = (t * r0, t * s0);
        if a.pow(r) == b.pow(s) {
            return Ok(DependenceVerdict { dependent: true, r: Some(r), s: Some(s) });
        }
    }
    Ok(DependenceVerdict::independent())
}

/// Certified approximation `norm(a^m - u·b^n)·err_den <= err_num·norm(b^n)`,
/// i.e. `|a^m/b^n - u| <= sqrt(err_num/err_den)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupWitness {
    pub m: u32,
    pub n: u32,
    pub u: GaussInt,
    pub err_num: BigInt,
    pub err_den: BigInt,
}

impl GroupWitness {
    /// `a^m - u·b^n`.
    pub fn residual(&self, a: &GaussInt, b: &GaussInt) -> GaussInt {
        a.pow(self.m) - &self.u * &b.pow(self.n)
    }

    pub fn verify(&self, a: &GaussInt, b: &GaussInt) -> bool {
        self.err_den.is_positive()
            && self.residual(a, b).norm() * &self.err_den <= &self.err_num * b.pow(self.n).norm()
    }
}

/// Powers of a fixed element, computed on demand.
struct PowerCache {
    base: GaussInt,
    powers: Vec<GaussInt>,
}

impl PowerCache {
    fn new(base: &GaussInt) -> Self {
        PowerCache { base: base.clone(), powers: vec![GaussInt::one()] }
    }

    fn get(&mut self, n: usize) -> &GaussInt {
        while self.powers.len() <= n {
            let next = self.powers.last().unwrap() * &self.base;
            self.powers.push(next);
        }
        &self.powers[n]
    }
}

/// Candidate exponents `n` for `a^m ≈ u·b^n`: the float estimate and its
/// two neighbours, ascending, clipped at `n_min`.
fn candidates(m: u32, ln_a: f64, ln_b: f64, ln_u: f64, n_min: u32) -> impl Iterator<Item = u32> {
    let est = ((m as f64 * ln_a - ln_u) / ln_b).round() as i64;
    (est - 1..=est + 1).filter(move |&n| n >= n_min as i64).map(|n| n as u32)
}

/// Smallest `m` in `1..=m_max` (then smallest `n`) with
/// `|a^m/b^n - u|² <= err_num/err_den`.
pub fn group_witness(
    a: &GaussInt,
    b: &GaussInt,
    u: &GaussInt,
    err_num: &BigInt,
    err_den: &BigInt,
    m_max: u32,
) -> Result<GroupWitness> {
    require_nonunit(a)?;
    require_nonunit(b)?;
    if u.is_zero() {
        return Err(DependenceError::UnitOrZeroInput(u.clone()));
    }
    if !err_den.is_positive() {
        return Err(DependenceError::ZeroDenominator);
    }
    let (ln_a, ln_b, ln_u) = (ln_abs(a), ln_abs(b), ln_abs(u));
    let mut bpow = PowerCache::new(b);
    let mut am = GaussInt::one();
    for m in 1..=m_max {
        am = &am * a;
        for n in candidates(m, ln_a, ln_b, ln_u, 0) {
            let bn = bpow.get(n as usize);
            let z = &am - &(u * bn);
            if z.norm() * err_den <= err_num * bn.norm() {
                return Ok(GroupWitness { m, n, u: u.clone(), err_num: err_num.clone(), err_den: err_den.clone() });
            }
        }
    }
    Err(DependenceError::NotFound { m_max })
}

/// `a^m = u·b^n + z` with `ℓ(z) <= n`, so the word of `a^m` extends the
/// word of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixWitness {
    pub m: u32,
    pub n: u32,
    pub u: GaussInt,
    pub z: GaussInt,
}

impl PrefixWitness {
    /// Re-checks the identity, the length bound on `z` and the prefix
    /// property against the canonical digit set of `b`.
    pub fn verify(&self, a: &GaussInt, b: &GaussInt) -> Result<bool> {
        let ds = canonical_digit_set(b)?;
        let am = a.pow(self.m);
        let identity = am == &(&self.u * &b.pow(self.n)) + &self.z;
        let short = ds.word_length(&self.z)? <= self.n as usize;
        let prefix = ds.encode(&am)?.starts_with(&ds.encode(&self.u)?);
        Ok(identity && short && prefix)
    }

    pub fn word_am(&self, a: &GaussInt, ds: &DigitSet) -> Result<Word> {
        Ok(ds.encode(&a.pow(self.m))?)
    }
}

/// Finds `m <= budget` and `n >= n_min` with `|a^m/b^n - u| <= |b|^(-M(3))`
/// (the length-bound constant), which forces `ℓ(a^m - u·b^n) <= n`.
///
/// Both postconditions are verified by explicit encoding before returning.
pub fn prefix_extension(a: &GaussInt, b: &GaussInt, u: &GaussInt, n_min: u32, budget: u32) -> Result<PrefixWitness> {
    let ds = canonical_digit_set(a).and_then(|_| canonical_digit_set(b))?;
    if u.is_zero() {
        return Err(DependenceError::UnitOrZeroInput(u.clone()));
    }
    let verdict = mult_dependent(a, b)?;
    if verdict.dependent {
        return Err(DependenceError::NotIndependent {
            a: a.clone(),
            b: b.clone(),
            r: verdict.r.unwrap(),
            s: verdict.s.unwrap(),
        });
    }
    let lb = length_bound(b)?;
    search_prefix(a, u, n_min, budget, &ds, &lb)
}

fn search_prefix(
    a: &GaussInt,
    u: &GaussInt,
    n_min: u32,
    budget: u32,
    ds: &DigitSet,
    lb: &LengthBound,
) -> Result<PrefixWitness> {
    let b = ds.base();
    let word_u = ds.encode(u)?;
    let (ln_a, ln_b, ln_u) = (ln_abs(a), ln_abs(b), ln_abs(u));
    let mut bpow = PowerCache::new(b);
    let mut am = GaussInt::one();
    for m in 1..=budget {
        am = &am * a;
        for n in candidates(m, ln_a, ln_b, ln_u, n_min) {
            let bn = bpow.get(n as usize);
            let z = &am - &(u * bn);
            if !lb.within_scale(&z, &bn.norm()) {
                continue;
            }
            if ds.word_length(&z)? <= n as usize && ds.encode(&am)?.starts_with(&word_u) {
                return Ok(PrefixWitness { m, n, u: u.clone(), z });
            }
        }
    }
    Err(DependenceError::NotFound { m_max: budget })
}

/// Iterates [`prefix_extension`]: each step takes the previous power `a^m`
/// as the next `u`, producing words `w0 ⊏ w1 ⊏ …` of increasing powers.
/// Stops early (returning the chain so far) when a step finds nothing.
pub fn prefix_chain(
    a: &GaussInt,
    b: &GaussInt,
    u: &GaussInt,
    n_min: u32,
    budget: u32,
    depth: usize,
) -> Result<Vec<PrefixWitness>> {
    let first = prefix_extension(a, b, u, n_min, budget)?;
    let ds = canonical_digit_set(b)?;
    let lb = length_bound(b)?;
    let mut chain = vec![first];
    while chain.len() < depth {
        let prev = chain.last().unwrap();
        let next_u = a.pow(prev.m);
        // n >= 1 rules out the trivial a^m = a^m·b^0
        match search_prefix(a, &next_u, n_min.max(1), budget, &ds, &lb) {
            Ok(w) => chain.push(w),
            Err(DependenceError::NotFound { .. }) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(chain)
}

/// Exact value of `norm(a^m - u·b^n) / norm(b^n)` as a reduced fraction,
/// for reporting.
pub fn squared_error(a: &GaussInt, b: &GaussInt, u: &GaussInt, m: u32, n: u32) -> (BigInt, BigInt) {
    let bn = b.pow(n);
    let num = (a.pow(m) - u * &bn).norm();
    let den = bn.norm();
    let g = num.gcd(&den);
    if g.is_zero() {
        return (num, den);
    }
    (num / &g, den / g)
}
