//! Numeration systems for the Gaussian integers in a complex base.
//!
//! * [`gaussint`]: exact Gaussian-integer arithmetic, gcd and factorization.
//! * [`numeration`]: digit sets, msd-first words, length bounds, base-power
//!   recoding and linked digit sets.
//! * [`automata`]: DFAs over digit alphabets, membership oracles and the
//!   finite evidence harnesses (residual classes, zero pumping, falsifiers).
//! * [`dependence`]: multiplicative dependence and the witness searches for
//!   `a^m ≈ u·b^n`.
//! * [`selfcheck`]: the reproducible property suite behind `verify-paper`.

// Errors carry the offending Gaussian integers; they are cold paths.
#![allow(clippy::result_large_err)]

pub mod automata;
pub mod dependence;
pub mod gaussint;
pub mod numeration;
pub mod selfcheck;

pub use gaussint::{factorize, gauss_gcd, GaussFactorization, GaussInt};
pub use numeration::{canonical_digit_set, DigitSet, LengthBound, LinkCertificate, Word};
pub use automata::{Dfa, LanguageOracle, ProductMode, ResidualReport};
pub use dependence::{mult_dependent, DependenceVerdict, GroupWitness, PrefixWitness};
