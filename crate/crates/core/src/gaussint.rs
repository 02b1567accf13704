//! Exact arithmetic on the Gaussian integers `Z[i]`.
//!
//! Everything here is exact: absolute values are only ever accessed through
//! the norm `re² + im²`, divisions are either exact or rounded through
//! integer floor division, and factorization works on the rational norm.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaussError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: GaussInt, divisor: GaussInt },
    #[error("gcd of two zeros is undefined")]
    BothZero,
    #[error("cannot factorize zero")]
    ZeroInput,
    #[error("base {0} is zero or a unit")]
    BaseIsUnitOrZero(GaussInt),
}

/// A Gaussian integer `re + im·i` with arbitrary-precision components.
///
/// The derived ordering is lexicographic on `(re, im)`, which is the digit
/// order used throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussInt { re: re.into(), im: im.into() }
    }

    pub fn zero() -> Self {
        GaussInt::default()
    }

    pub fn one() -> Self {
        GaussInt::new(1, 0)
    }

    pub fn i() -> Self {
        GaussInt::new(0, 1)
    }

    /// The four units `1, i, -1, -i`.
    pub fn units() -> [GaussInt; 4] {
        [GaussInt::new(1, 0), GaussInt::new(0, 1), GaussInt::new(-1, 0), GaussInt::new(0, -1)]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn conj(&self) -> GaussInt {
        GaussInt { re: self.re.clone(), im: -&self.im }
    }

    /// Multiplication by `i`: `(re, im) -> (-im, re)`.
    pub fn mul_i(&self) -> GaussInt {
        GaussInt { re: -&self.im, im: self.re.clone() }
    }

    pub fn pow(&self, mut exp: u32) -> GaussInt {
        let mut base = self.clone();
        let mut acc = GaussInt::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The associate with `re > 0` and `im >= 0`. Zero maps to zero.
    pub fn canonical_associate(&self) -> GaussInt {
        if self.is_zero() {
            return GaussInt::zero();
        }
        let mut z = self.clone();
        while !(z.re.is_positive() && !z.im.is_negative()) {
            z = z.mul_i();
        }
        z
    }

    /// True iff `w` divides `self` in `Z[i]`. Zero divides only zero.
    pub fn is_divisible_by(&self, w: &GaussInt) -> bool {
        if w.is_zero() {
            return self.is_zero();
        }
        let n = w.norm();
        let p = self * &w.conj();
        p.re.is_multiple_of(&n) && p.im.is_multiple_of(&n)
    }

    /// The quotient `self / w`, which must be exact.
    ///
    /// Divisibility is tested on `self·conj(w)` against `norm(w)`; no rational
    /// intermediate is formed.
    pub fn exact_div(&self, w: &GaussInt) -> Result<GaussInt, GaussError> {
        if w.is_zero() {
            return Err(GaussError::DivisionByZero);
        }
        let n = w.norm();
        let p = self * &w.conj();
        let (qr, rr) = p.re.div_rem(&n);
        let (qi, ri) = p.im.div_rem(&n);
        if !rr.is_zero() || !ri.is_zero() {
            return Err(GaussError::NotDivisible { dividend: self.clone(), divisor: w.clone() });
        }
        Ok(GaussInt { re: qr, im: qi })
    }

    /// Nearest-lattice-point quotient, ties rounded up componentwise. The
    /// remainder `self - q·w` has norm at most `norm(w)/2`.
    pub fn div_round(&self, w: &GaussInt) -> Result<GaussInt, GaussError> {
        if w.is_zero() {
            return Err(GaussError::DivisionByZero);
        }
        let n = w.norm();
        let p = self * &w.conj();
        Ok(GaussInt { re: round_div(&p.re, &n), im: round_div(&p.im, &n) })
    }

    /// `Some(n)` with `a^n == self`, `None` if `self` is not a power of `a`.
    ///
    /// Repeatedly divides by `a` until reaching 1, hitting a non-multiple, or
    /// dropping below `norm(a)`.
    pub fn is_power_of(&self, a: &GaussInt) -> Result<Option<u32>, GaussError> {
        let na = a.norm();
        if na <= BigInt::one() {
            return Err(GaussError::BaseIsUnitOrZero(a.clone()));
        }
        let mut z = self.clone();
        let mut n = 0u32;
        loop {
            if z.is_one() {
                return Ok(Some(n));
            }
            if z.norm() < na {
                return Ok(None);
            }
            match z.exact_div(a) {
                Ok(q) => z = q,
                Err(_) => return Ok(None),
            }
            n += 1;
        }
    }
}

/// `floor((2p + n) / 2n)`, i.e. `p/n` rounded half up, for `n > 0`.
pub(crate) fn round_div(p: &BigInt, n: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (&two * p + n).div_floor(&(&two * n))
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid Gaussian integer literal {0:?}")]
pub struct ParseGaussIntError(pub String);

impl FromStr for GaussInt {
    type Err = ParseGaussIntError;

    /// Accepts `a`, `a+bi` and `a-bi`, with an optional sign on `a` and no
    /// whitespace. The coefficient of `i` may be omitted (`2+i`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGaussIntError(s.to_string());
        let body = s.strip_prefix(['+', '-']).unwrap_or(s);
        let split = body.find(['+', '-']).map(|p| p + (s.len() - body.len()));
        let Some(split) = split else {
            return parse_int(s).map(|re| GaussInt::new(re, 0)).ok_or_else(err);
        };
        let (re_part, im_part) = s.split_at(split);
        let re = parse_int(re_part).ok_or_else(err)?;
        let coeff = im_part.strip_suffix('i').ok_or_else(err)?;
        let im = match coeff {
            "+" => BigInt::one(),
            "-" => -BigInt::one(),
            _ => parse_int(coeff).ok_or_else(err)?,
        };
        Ok(GaussInt { re, im })
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl serde::Serialize for GaussInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for GaussInt {
    fn from(re: i64) -> Self {
        GaussInt::new(re, 0)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $Trait<&GaussInt> for &GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &GaussInt) -> GaussInt {
                let ($a, $b) = (self, rhs);
                $body
            }
        }
        impl $Trait<GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                (&self).$method(&rhs)
            }
        }
        impl $Trait<&GaussInt> for GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: &GaussInt) -> GaussInt {
                (&self).$method(rhs)
            }
        }
        impl $Trait<GaussInt> for &GaussInt {
            type Output = GaussInt;
            fn $method(self, rhs: GaussInt) -> GaussInt {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| GaussInt { re: &a.re + &b.re, im: &a.im + &b.im });
forward_binop!(Sub, sub, |a, b| GaussInt { re: &a.re - &b.re, im: &a.im - &b.im });
forward_binop!(Mul, mul, |a, b| GaussInt {
    re: &a.re * &b.re - &a.im * &b.im,
    im: &a.re * &b.im + &a.im * &b.re,
});

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt { re: -&self.re, im: -&self.im }
    }
}

/// A greatest common divisor in canonical-associate form.
pub fn gauss_gcd(z: &GaussInt, w: &GaussInt) -> Result<GaussInt, GaussError> {
    if z.is_zero() && w.is_zero() {
        return Err(GaussError::BothZero);
    }
    let (mut a, mut b) = (z.clone(), w.clone());
    while !b.is_zero() {
        let q = a.div_round(&b)?;
        let r = &a - &(&q * &b);
        a = b;
        b = r;
    }
    Ok(a.canonical_associate())
}

/// `unit · Π primeᵉ` with canonical primes sorted by `(norm, re, im)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussFactorization {
    pub unit: GaussInt,
    pub factors: Vec<(GaussInt, u32)>,
}

impl GaussFactorization {
    pub fn product(&self) -> GaussInt {
        self.factors.iter().fold(self.unit.clone(), |acc, (p, e)| acc * p.pow(*e))
    }

    /// Exponent of `prime` (canonical form), zero if absent.
    pub fn exponent_of(&self, prime: &GaussInt) -> u32 {
        self.factors.iter().find(|(p, _)| p == prime).map_or(0, |(_, e)| *e)
    }
}

/// Rational prime factorization by trial division.
fn factor_natural(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while n.is_multiple_of(&p) {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// A square root of -1 modulo a prime `p ≡ 1 (mod 4)`, by exhaustive search.
fn sqrt_minus_one(p: &BigInt) -> BigInt {
    let target = p - 1;
    let mut x = BigInt::from(2);
    while &x < p {
        if (&x * &x) % p == target {
            return x;
        }
        x += 1;
    }
    unreachable!("p ≡ 1 mod 4 always has a square root of -1")
}

/// Factorization into canonical Gaussian primes.
///
/// 2 ramifies as `-i(1+i)²`, rational primes `p ≡ 3 (mod 4)` stay inert, and
/// `p ≡ 1 (mod 4)` splits as `gcd(p, x+i)` and its conjugate, where
/// `x² ≡ -1 (mod p)`.
pub fn factorize(z: &GaussInt) -> Result<GaussFactorization, GaussError> {
    if z.is_zero() {
        return Err(GaussError::ZeroInput);
    }
    let four = BigInt::from(4);
    let mut rest = z.clone();
    let mut factors = Vec::new();
    let mut take = |prime: GaussInt, rest: &mut GaussInt| {
        let mut e = 0;
        while let Ok(q) = rest.exact_div(&prime) {
            *rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((prime, e));
        }
    };
    for (p, _) in factor_natural(&z.norm()) {
        if p == BigInt::from(2) {
            take(GaussInt::new(1, 1), &mut rest);
        } else if (&p % &four) == BigInt::from(3) {
            take(GaussInt::new(p, 0), &mut rest);
        } else {
            let x = sqrt_minus_one(&p);
            let pi = gauss_gcd(&GaussInt::new(p.clone(), 0), &GaussInt::new(x, 1))?;
            let pi_bar = pi.conj().canonical_associate();
            take(pi, &mut rest);
            take(pi_bar, &mut rest);
        }
    }
    debug_assert!(rest.is_unit());
    factors.sort_by(|(a, _), (b, _)| match a.norm().cmp(&b.norm()) {
        Ordering::Equal => a.cmp(b),
        o => o,
    });
    Ok(GaussFactorization { unit: rest, factors })
}

/// `ln |z|`, computed from the norm without overflowing `f64`.
pub(crate) fn ln_abs(z: &GaussInt) -> f64 {
    let n = z.norm();
    let bits = n.bits();
    if bits < 1000 {
        n.to_f64().unwrap().ln() / 2.0
    } else {
        let shift = bits - 64;
        let top = (&n >> shift).to_f64().unwrap();
        (top.ln() + shift as f64 * std::f64::consts::LN_2) / 2.0
    }
}
