//! Digit sets and base-`b` representations of the Gaussian integers.
//!
//! A [`DigitSet`] pairs a base `b` (with `norm(b) >= 5`) with a complete
//! residue system modulo `b` that contains 0. Every Gaussian integer then has
//! a unique msd-first [`Word`] over that digit set, produced by the greedy
//! loop `z -> (z - d) / b`.
//!
//! All comparisons are carried out in exact integer arithmetic. Radii appear
//! only squared.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gaussint::{round_div, GaussError, GaussInt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerationError {
    #[error("base {0} has norm below 5")]
    BaseTooSmall(GaussInt),
    #[error("digit set does not contain 0")]
    MissingZero,
    #[error("digit set for a base of norm {expected} must have {expected} digits, found {found}")]
    WrongDigitCount { expected: BigInt, found: usize },
    #[error("digits {0} and {1} are congruent modulo the base")]
    CongruentDigits(GaussInt, GaussInt),
    #[error("digit {0} is not in the digit set")]
    ForeignDigit(GaussInt),
    #[error("word has a zero leading digit")]
    LeadingZero,
    #[error("expansion of {0} did not terminate within the safety bound")]
    NonTermination(GaussInt),
    #[error("digit sets have different bases {0} and {1}")]
    BaseMismatch(GaussInt, GaussInt),
    #[error("power exponent must be positive")]
    ZeroExponent,
    #[error("invalid word literal: {0}")]
    WordSyntax(String),
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

/// Iteration cap used while computing M(3) for a canonical digit set. The
/// canonical expansion always terminates, so this is never reached.
const PROVISIONAL_CAP: usize = 4096;

/// The digit of `z` in the canonical digit set of `base`:
/// `z - b·q` where `q` rounds `z/b` half-up in each component.
pub fn canonical_residue(z: &GaussInt, base: &GaussInt) -> GaussInt {
    let n = base.norm();
    let w = z * &base.conj();
    let q = GaussInt { re: round_div(&w.re, &n), im: round_div(&w.im, &n) };
    z - &(base * &q)
}

/// Membership in the half-open box `[-1/2, 1/2)²` for `d/b`, as
/// `-N <= 2·Re(d·conj b) < N` and likewise for `Im`.
fn in_canonical_box(d: &GaussInt, base: &GaussInt, n: &BigInt) -> bool {
    let w = d * &base.conj();
    let (re2, im2) = (&w.re * 2, &w.im * 2);
    let lo = -n;
    re2 >= lo && &re2 < n && im2 >= lo && &im2 < n
}

/// All lattice points with `norm <= r2`, sorted by `(re, im)`.
pub fn lattice_disc(r2: &BigInt) -> Vec<GaussInt> {
    if r2.is_negative() {
        return Vec::new();
    }
    let r = r2.sqrt().to_i64().expect("disc radius fits in i64");
    let r2 = r2.to_i64().expect("disc radius fits in i64");
    let mut out = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            if x * x + y * y <= r2 {
                out.push(GaussInt::new(x, y));
            }
        }
    }
    out
}

/// `M(3)` of the canonical digit set of `base`, evaluated without building
/// the digit set.
fn canonical_m3(base: &GaussInt) -> u32 {
    lattice_disc(&BigInt::from(9))
        .into_iter()
        .map(|mut z| {
            let mut len = 0u32;
            while !z.is_zero() {
                let d = canonical_residue(&z, base);
                z = (&z - &d).exact_div(base).expect("digit is a residue");
                len += 1;
                assert!((len as usize) < PROVISIONAL_CAP, "canonical expansion diverged");
            }
            len
        })
        .max()
        .unwrap_or(0)
}

struct Inner {
    base: GaussInt,
    norm: BigInt,
    digits: Vec<GaussInt>,
    zero_index: usize,
    canonical: bool,
    /// canonical residue of each digit -> index in `digits`
    residue_index: HashMap<GaussInt, usize>,
    /// M(3) of the canonical set of the same base; feeds the encode safety bound.
    safety_m3: u32,
}

/// A base together with a complete residue system modulo that base.
///
/// Digits are kept sorted by `(re, im)`. Cloning is cheap.
#[derive(Clone)]
pub struct DigitSet(Arc<Inner>);

impl PartialEq for DigitSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.base == other.0.base && self.0.digits == other.0.digits)
    }
}

impl Eq for DigitSet {}

impl fmt::Debug for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DigitSet").field("base", &self.0.base).field("digits", &self.0.digits).finish()
    }
}

impl DigitSet {
    /// Validates an arbitrary digit set: `norm(base) >= 5`, contains 0, has
    /// `norm(base)` pairwise incongruent digits.
    ///
    /// Termination of the expansion is not checked here, see
    /// [`DigitSet::probe_termination`].
    pub fn new(base: GaussInt, mut digits: Vec<GaussInt>) -> Result<DigitSet, NumerationError> {
        let norm = base.norm();
        if norm < BigInt::from(5) {
            return Err(NumerationError::BaseTooSmall(base));
        }
        if BigInt::from(digits.len()) != norm {
            return Err(NumerationError::WrongDigitCount { expected: norm, found: digits.len() });
        }
        digits.sort();
        if digits.binary_search(&GaussInt::zero()).is_err() {
            return Err(NumerationError::MissingZero);
        }
        let mut residue_index = HashMap::with_capacity(digits.len());
        let mut canonical = true;
        for (i, d) in digits.iter().enumerate() {
            let r = canonical_residue(d, &base);
            canonical &= &r == d;
            if let Some(j) = residue_index.insert(r, i) {
                return Err(NumerationError::CongruentDigits(digits[j].clone(), d.clone()));
            }
        }
        let zero_index = digits.binary_search(&GaussInt::zero()).unwrap();
        let safety_m3 = canonical_m3(&base);
        Ok(DigitSet(Arc::new(Inner { base, norm, digits, zero_index, canonical, residue_index, safety_m3 })))
    }

    pub fn base(&self) -> &GaussInt {
        &self.0.base
    }

    /// `norm(base)`, which is also the number of digits.
    pub fn norm(&self) -> &BigInt {
        &self.0.norm
    }

    pub fn digits(&self) -> &[GaussInt] {
        &self.0.digits
    }

    pub fn len(&self) -> usize {
        self.0.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.digits.is_empty()
    }

    pub fn zero_index(&self) -> usize {
        self.0.zero_index
    }

    pub fn is_canonical(&self) -> bool {
        self.0.canonical
    }

    pub fn contains(&self, d: &GaussInt) -> bool {
        self.index_of(d).is_some()
    }

    /// Position of `d` in the digit order.
    pub fn index_of(&self, d: &GaussInt) -> Option<usize> {
        let r = canonical_residue(d, &self.0.base);
        self.0.residue_index.get(&r).copied().filter(|&i| &self.0.digits[i] == d)
    }

    /// Index of the digit congruent to `z` modulo the base.
    pub fn digit_index_of(&self, z: &GaussInt) -> usize {
        self.0.residue_index[&canonical_residue(z, &self.0.base)]
    }

    /// The unique digit `d` with `b | (z - d)`.
    pub fn digit_of(&self, z: &GaussInt) -> GaussInt {
        if self.0.canonical {
            canonical_residue(z, &self.0.base)
        } else {
            self.0.digits[self.digit_index_of(z)].clone()
        }
    }

    fn safety_bound(&self, z: &GaussInt) -> usize {
        // smallest t with N^t >= norm(z) + 1
        let target = z.norm() + 1u32;
        let mut t = 0usize;
        let mut p = BigInt::one();
        while p < target {
            p *= &self.0.norm;
            t += 1;
        }
        4 * self.0.safety_m3 as usize + 2 * t + 16
    }

    /// The msd-first word of `z`. `encode(0)` is the empty word.
    pub fn encode(&self, z: &GaussInt) -> Result<Word, NumerationError> {
        let bound = self.safety_bound(z);
        let mut digits = Vec::new();
        let mut rest = z.clone();
        while !rest.is_zero() {
            if digits.len() >= bound {
                return Err(NumerationError::NonTermination(z.clone()));
            }
            let d = self.digit_of(&rest);
            rest = (&rest - &d).exact_div(&self.0.base)?;
            digits.push(d);
        }
        digits.reverse();
        Ok(Word(digits))
    }

    /// Horner evaluation of a digit string, which may have leading zeros.
    pub fn decode(&self, digits: &[GaussInt]) -> Result<GaussInt, NumerationError> {
        let mut acc = GaussInt::zero();
        for d in digits {
            if !self.contains(d) {
                return Err(NumerationError::ForeignDigit(d.clone()));
            }
            acc = &(&acc * &self.0.base) + d;
        }
        Ok(acc)
    }

    /// `ℓ(z)`, the length of the word of `z`.
    pub fn word_length(&self, z: &GaussInt) -> Result<usize, NumerationError> {
        self.encode(z).map(|w| w.len())
    }

    /// `M(r)`: the longest word among lattice points with `norm <= r2`.
    pub fn max_length_in_disc(&self, r2: &BigInt) -> Result<usize, NumerationError> {
        lattice_disc(r2).iter().try_fold(0, |m, z| Ok(m.max(self.word_length(z)?)))
    }

    /// Checks that the expansion terminates for every `z` with `norm(z) <= 400`.
    ///
    /// Always succeeds for canonical digit sets; for user-supplied sets this is
    /// evidence of validity, not a proof.
    pub fn probe_termination(&self) -> Result<(), NumerationError> {
        if self.0.canonical {
            return Ok(());
        }
        for z in lattice_disc(&BigInt::from(400)) {
            self.encode(&z)?;
        }
        Ok(())
    }

    /// Maximum digit norm, i.e. `Δ²`.
    pub fn max_digit_norm(&self) -> BigInt {
        self.0.digits.iter().map(GaussInt::norm).max().unwrap_or_default()
    }

    /// Turns a digit string into a [`Word`], checking membership and the
    /// leading-digit rule.
    pub fn word(&self, digits: Vec<GaussInt>) -> Result<Word, NumerationError> {
        if let Some(d) = digits.iter().find(|d| !self.contains(d)) {
            return Err(NumerationError::ForeignDigit(d.clone()));
        }
        Word::new(digits)
    }
}

/// The digit set `{ d : -1/2 <= Re(d/b) < 1/2, -1/2 <= Im(d/b) < 1/2 }`.
pub fn canonical_digit_set(base: &GaussInt) -> Result<DigitSet, NumerationError> {
    let n = base.norm();
    if n < BigInt::from(5) {
        return Err(NumerationError::BaseTooSmall(base.clone()));
    }
    let digits: Vec<_> = lattice_disc(&n).into_iter().filter(|d| in_canonical_box(d, base, &n)).collect();
    let ds = DigitSet::new(base.clone(), digits)?;
    debug_assert!(ds.is_canonical());
    Ok(ds)
}

/// A most-significant-first digit string whose leading digit is nonzero.
/// The empty word represents 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<GaussInt>);

impl Word {
    pub fn new(digits: Vec<GaussInt>) -> Result<Word, NumerationError> {
        match digits.first() {
            Some(d) if d.is_zero() => Err(NumerationError::LeadingZero),
            _ => Ok(Word(digits)),
        }
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn into_digits(self) -> Vec<GaussInt> {
        self.0
    }

    /// Parses the comma-separated form; the empty string is the empty word.
    pub fn parse(s: &str) -> Result<Word, NumerationError> {
        if s.is_empty() {
            return Ok(Word::empty());
        }
        let digits = s
            .split(',')
            .map(|t| t.parse::<GaussInt>().map_err(|e| NumerationError::WordSyntax(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(digits)
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }
}

impl Deref for Word {
    type Target = [GaussInt];
    fn deref(&self) -> &[GaussInt] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Certified word-length bound: with `m3 = M(3)`,
/// `norm(z)·N^m3 <= N^k` implies `ℓ(z) <= k`.
///
/// The constant `c = |b|^(-M(3))` is never formed as a real number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBound {
    pub base: GaussInt,
    pub m3: u32,
    norm: BigInt,
}

impl LengthBound {
    pub fn within_bound(&self, z: &GaussInt, k: u32) -> bool {
        z.norm() * self.norm.pow(self.m3) <= self.norm.pow(k)
    }

    /// `norm(z)·N^m3 <= norm(scale)`, the same test against an arbitrary scale
    /// such as `b^n` or `u·b^n`.
    pub fn within_scale(&self, z: &GaussInt, scale_norm: &BigInt) -> bool {
        z.norm() * self.norm.pow(self.m3) <= *scale_norm
    }
}

pub fn length_bound(base: &GaussInt) -> Result<LengthBound, NumerationError> {
    let ds = canonical_digit_set(base)?;
    let m3 = ds.max_length_in_disc(&BigInt::from(9))? as u32;
    Ok(LengthBound { base: base.clone(), m3, norm: ds.norm().clone() })
}

/// Digit set `D ∪ bD ∪ … ∪ b^(j-1)D` for the base `b^j`, i.e. all
/// `d0 + b·d1 + … + b^(j-1)·d(j-1)`.
pub fn power_digit_set(ds: &DigitSet, j: u32) -> Result<DigitSet, NumerationError> {
    if j == 0 {
        return Err(NumerationError::ZeroExponent);
    }
    if j == 1 {
        return Ok(ds.clone());
    }
    let mut digits = vec![GaussInt::zero()];
    let mut scale = GaussInt::one();
    for _ in 0..j {
        let s = &scale;
        digits = digits.iter().flat_map(|acc| ds.digits().iter().map(move |d| acc + &(s * d))).collect();
        scale = &scale * ds.base();
    }
    DigitSet::new(ds.base().pow(j), digits)
}

/// Regroups a word over `D` into a word over `power_digit_set(D, j)` by
/// left-padding with zeros to a multiple of `j` and folding each block.
pub fn recode(word: &[GaussInt], ds: &DigitSet, j: u32) -> Result<Word, NumerationError> {
    if j == 0 {
        return Err(NumerationError::ZeroExponent);
    }
    if let Some(d) = word.iter().find(|d| !ds.contains(d)) {
        return Err(NumerationError::ForeignDigit(d.clone()));
    }
    let j = j as usize;
    let pad = (j - word.len() % j) % j;
    let padded: Vec<GaussInt> = std::iter::repeat_n(GaussInt::zero(), pad).chain(word.iter().cloned()).collect();
    let digits: Vec<GaussInt> = padded
        .chunks(j)
        .map(|block| block.iter().fold(GaussInt::zero(), |acc, d| &(&acc * ds.base()) + d))
        .skip_while(GaussInt::is_zero)
        .collect();
    Word::new(digits)
}

/// The set `E` witnessing `D + E ⊆ D' + b·E`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCertificate {
    pub envelope: Vec<GaussInt>,
}

impl LinkCertificate {
    /// Re-runs the exhaustive containment check. Returns the first `(d, e)`
    /// for which `(d + e - d')/b` leaves the envelope.
    pub fn first_violation(&self, from: &DigitSet, to: &DigitSet) -> Option<(GaussInt, GaussInt)> {
        let members: std::collections::HashSet<&GaussInt> = self.envelope.iter().collect();
        if !members.contains(&GaussInt::zero()) {
            return Some((GaussInt::zero(), GaussInt::zero()));
        }
        for d in from.digits() {
            for e in &self.envelope {
                let s = d + e;
                let d2 = to.digit_of(&s);
                let e2 = (&s - &d2).exact_div(to.base()).expect("digit is a residue");
                if !members.contains(&e2) {
                    return Some((d.clone(), e.clone()));
                }
            }
        }
        None
    }

    pub fn verify(&self, from: &DigitSet, to: &DigitSet) -> bool {
        self.first_violation(from, to).is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkOutcome {
    Linked(LinkCertificate),
    /// The first pair `(d, e)` whose reconstruction left `E`.
    NotLinked { digit: GaussInt, offset: GaussInt },
}

/// `norm(e) <= (Δ + Δ')²` with `Δ² = a`, `Δ'² = b`, exactly.
fn within_sum_radius(n: &BigInt, a: &BigInt, b: &BigInt) -> bool {
    let t = n - a - b;
    !t.is_positive() || &t * &t <= BigInt::from(4) * a * b
}

/// Builds `E` = all lattice points within radius `Δ + Δ'` and verifies
/// `D + E ⊆ D' + b·E` exhaustively.
pub fn check_linked(from: &DigitSet, to: &DigitSet) -> Result<LinkOutcome, NumerationError> {
    if from.base() != to.base() {
        return Err(NumerationError::BaseMismatch(from.base().clone(), to.base().clone()));
    }
    from.probe_termination()?;
    to.probe_termination()?;
    let (a, b) = (from.max_digit_norm(), to.max_digit_norm());
    // (Δ + Δ')² <= 2(Δ² + Δ'²) bounds the enumeration disc
    let outer = BigInt::from(2) * (&a + &b);
    let envelope: Vec<GaussInt> =
        lattice_disc(&outer).into_iter().filter(|e| within_sum_radius(&e.norm(), &a, &b)).collect();
    let cert = LinkCertificate { envelope };
    Ok(match cert.first_violation(from, to) {
        None => LinkOutcome::Linked(cert),
        Some((digit, offset)) => LinkOutcome::NotLinked { digit, offset },
    })
}

/// Least `j` in `1..=8` with `b^j` a positive rational integer.
///
/// A real power forces `arg(b)` to be a multiple of `π/4`, so 8 suffices.
pub fn real_power_exponent(base: &GaussInt) -> Result<Option<u32>, NumerationError> {
    if base.norm() < BigInt::from(5) {
        return Err(NumerationError::BaseTooSmall(base.clone()));
    }
    let mut p = GaussInt::one();
    for j in 1..=8 {
        p = &p * base;
        if p.im.is_zero() && p.re.is_positive() {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn w(ds: &DigitSet, ds_digits: &[(i64, i64)]) -> Word {
        ds.word(ds_digits.iter().map(|&(a, b)| g(a, b)).collect()).unwrap()
    }

    /// Box test with rationals, independent of `in_canonical_box`.
    fn box_oracle(base: &GaussInt) -> Vec<GaussInt> {
        let n = base.norm();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut out = Vec::new();
        let r = 2 * n.sqrt().to_i64().unwrap() + 2;
        for x in -r..=r {
            for y in -r..=r {
                let q = &g(x, y) * &base.conj();
                let re = BigRational::new(q.re.clone(), n.clone());
                let im = BigRational::new(q.im.clone(), n.clone());
                if -&half <= re && re < half && -&half <= im && im < half {
                    out.push(g(x, y));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn small_bases_give_the_five_point_cross() {
        let cross = vec![g(-1, 0), g(0, -1), g(0, 0), g(0, 1), g(1, 0)];
        for b in [g(2, 1), g(-1, 2), g(-2, 1)] {
            let ds = canonical_digit_set(&b).unwrap();
            assert_eq!(ds.digits(), &cross[..]);
            assert_eq!(box_oracle(&b), cross);
        }
    }

    #[test]
    fn canonical_matches_rational_box_oracle() {
        for b in [g(3, 0), g(1, 3), g(-4, 1), g(0, 5), g(5, -5), g(-3, -7)] {
            assert_eq!(canonical_digit_set(&b).unwrap().digits(), &box_oracle(&b)[..], "base {b}");
        }
    }

    #[test]
    fn rejects_small_bases() {
        for b in [g(2, 0), g(1, 1), g(-1, 1), g(0, 0), g(0, -2)] {
            assert!(matches!(canonical_digit_set(&b), Err(NumerationError::BaseTooSmall(_))));
        }
    }

    #[test]
    fn digit_set_validation() {
        let b = g(2, 1);
        assert!(matches!(DigitSet::new(b.clone(), vec![g(1, 0), g(2, 0), g(3, 0), g(4, 0), g(5, 0)]), Err(NumerationError::MissingZero)));
        assert!(matches!(DigitSet::new(b.clone(), vec![g(0, 0), g(1, 0)]), Err(NumerationError::WrongDigitCount { .. })));
        // 5 ≡ 0 mod 2+i
        assert!(matches!(
            DigitSet::new(b.clone(), vec![g(0, 0), g(1, 0), g(2, 0), g(3, 0), g(5, 0)]),
            Err(NumerationError::CongruentDigits(_, _))
        ));
        let ds = DigitSet::new(b, vec![g(4, 0), g(0, 0), g(2, 0), g(1, 0), g(3, 0)]).unwrap();
        assert_eq!(ds.digits()[0], g(0, 0));
        assert!(!ds.is_canonical());
    }

    #[test]
    fn digit_of_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(ds.digit_of(&g(2, 0)), g(0, -1));
        assert_eq!(ds.digit_of(&g(0, 0)), g(0, 0));
        assert_eq!(ds.digit_of(&g(5, 0)), g(0, 0));
    }

    #[test]
    fn encode_decode_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(ds.encode(&g(0, 0)).unwrap(), Word::empty());
        assert_eq!(ds.encode(&g(2, 0)).unwrap(), w(&ds, &[(1, 0), (0, -1)]));
        let five = w(&ds, &[(0, -1), (0, 1), (-1, 0), (0, 0)]);
        assert_eq!(ds.encode(&g(5, 0)).unwrap(), five);
        assert_eq!(ds.decode(&five).unwrap(), g(5, 0));
        assert_eq!(ds.decode(&[]).unwrap(), g(0, 0));
        assert_eq!(ds.decode(&[g(1, 0), g(0, 0)]).unwrap(), g(2, 1));
        assert!(matches!(ds.decode(&[g(2, 0)]), Err(NumerationError::ForeignDigit(_))));
    }

    #[test]
    fn word_lengths() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(ds.word_length(&g(0, 0)).unwrap(), 0);
        assert_eq!(ds.word_length(&g(5, 0)).unwrap(), 4);
        assert_eq!(ds.word_length(&g(2, 1)).unwrap(), 2);
        assert_eq!(ds.word_length(&g(3, 0)).unwrap(), 3);
    }

    #[test]
    fn max_length_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(ds.max_length_in_disc(&BigInt::from(0)).unwrap(), 0);
        assert_eq!(ds.max_length_in_disc(&BigInt::from(1)).unwrap(), 1);
        assert_eq!(ds.max_length_in_disc(&BigInt::from(9)).unwrap(), 3);
    }

    #[test]
    fn length_bound_examples() {
        let lb = length_bound(&g(2, 1)).unwrap();
        assert_eq!(lb.m3, 3);
        assert!(lb.within_bound(&g(0, 0), 0));
        for k in 0..10 {
            assert!(!lb.within_bound(&g(2, 1).pow(k), k));
        }
        assert_eq!(length_bound(&g(3, 0)).unwrap().m3, 2);
        assert!(matches!(length_bound(&g(1, 1)), Err(NumerationError::BaseTooSmall(_))));
    }

    #[test]
    fn power_digit_sets() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(power_digit_set(&ds, 1).unwrap(), ds);
        let p2 = power_digit_set(&ds, 2).unwrap();
        assert_eq!(p2.len(), 25);
        assert_eq!(p2.base(), &g(3, 4));
        assert!(matches!(power_digit_set(&ds, 0), Err(NumerationError::ZeroExponent)));
    }

    #[test]
    fn recode_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        assert_eq!(recode(&[], &ds, 2).unwrap(), Word::empty());
        let r = recode(&w(&ds, &[(1, 0), (0, -1)]), &ds, 2).unwrap();
        assert_eq!(&*r, &[g(2, 0)]);
        let p2 = power_digit_set(&ds, 2).unwrap();
        assert_eq!(p2.decode(&r).unwrap(), g(2, 0));
        assert_eq!(p2.encode(&g(2, 0)).unwrap(), r);
        // odd length pads a leading zero
        let five = ds.encode(&g(5, 0)).unwrap();
        let r5 = recode(&five, &ds, 3).unwrap();
        assert_eq!(r5.len(), 2);
        assert_eq!(power_digit_set(&ds, 3).unwrap().decode(&r5).unwrap(), g(5, 0));
        assert!(matches!(recode(&[g(7, 0)], &ds, 2), Err(NumerationError::ForeignDigit(_))));
    }

    #[test]
    fn linking() {
        let ds = canonical_digit_set(&g(-2, 1)).unwrap();
        assert!(matches!(check_linked(&ds, &ds).unwrap(), LinkOutcome::Linked(_)));
        let hs = DigitSet::new(g(-2, 1), (0..5).map(|k| g(k, 0)).collect()).unwrap();
        hs.probe_termination().unwrap();
        match check_linked(&hs, &ds).unwrap() {
            LinkOutcome::Linked(cert) => {
                assert!(cert.envelope.contains(&g(0, 0)));
                // radius Δ + Δ' = 4 + 1
                assert!(cert.envelope.contains(&g(5, 0)) && !cert.envelope.contains(&g(4, 4)));
                assert!(cert.verify(&hs, &ds));
            }
            other => panic!("{other:?}"),
        }
        let other = canonical_digit_set(&g(2, 1)).unwrap();
        assert!(matches!(check_linked(&ds, &other), Err(NumerationError::BaseMismatch(_, _))));
    }

    #[test]
    fn non_terminating_digit_set_is_detected() {
        // {0,1,2,3,4} for 2+i: the expansion of -1 cycles
        let bad = DigitSet::new(g(2, 1), (0..5).map(|k| g(k, 0)).collect()).unwrap();
        assert!(matches!(bad.probe_termination(), Err(NumerationError::NonTermination(_))));
    }

    #[test]
    fn sum_radius_is_exact() {
        // Δ² = 2, Δ'² = 8: (√2 + 2√2)² = 18 exactly
        let (a, b) = (BigInt::from(2), BigInt::from(8));
        assert!(within_sum_radius(&BigInt::from(18), &a, &b));
        assert!(!within_sum_radius(&BigInt::from(19), &a, &b));
    }

    #[test]
    fn real_power_exponents() {
        assert_eq!(real_power_exponent(&g(3, 0)).unwrap(), Some(1));
        assert_eq!(g(2, 2).pow(4), g(-64, 0));
        assert_eq!(g(2, 2).pow(8), g(4096, 0));
        assert_eq!(real_power_exponent(&g(2, 2)).unwrap(), Some(8));
        assert_eq!(real_power_exponent(&g(2, 1)).unwrap(), None);
        assert_eq!(real_power_exponent(&g(-3, 0)).unwrap(), Some(2));
        assert_eq!(real_power_exponent(&g(0, 3)).unwrap(), Some(4));
    }

    #[test]
    fn word_syntax() {
        let w = Word::parse("1,0-1i").unwrap();
        assert_eq!(&*w, &[g(1, 0), g(0, -1)]);
        assert_eq!(w.to_string(), "1,0-1i");
        assert_eq!(Word::parse("").unwrap(), Word::empty());
        assert!(matches!(Word::parse("0,1"), Err(NumerationError::LeadingZero)));
        assert!(matches!(Word::parse("1,,2"), Err(NumerationError::WordSyntax(_))));
    }
}
