//! Deterministic finite automata over digit alphabets.
//!
//! A [`Dfa`] reads msd-first digit strings over a [`DigitSet`]. Alongside
//! the usual closure operations this module provides ground-truth
//! [`LanguageOracle`]s for sets defined by membership (powers of `a`, the
//! rational integers) and three finite evidence harnesses:
//!
//! * [`residual_signatures`] counts Myhill–Nerode classes visible at a given
//!   prefix/extension depth. The count lower-bounds the size of any DFA that
//!   agrees with the language on words up to length `k + e`.
//! * [`zero_pump_probe`] inserts blocks of zeros after the leading digit.
//! * [`dfa_oracle_disagreement`] returns the shortlex-first word on which a
//!   claimed DFA and an oracle disagree.
//!
//! Words with a zero leading digit are not representations; oracles reject
//! them and the DFAs built here reject them too. The empty word represents 0.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussint::{GaussError, GaussInt};
use crate::numeration::{canonical_digit_set, DigitSet, NumerationError, Word};

/// Default cap on enumerated word-steps for the harnesses.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error)]
pub enum AutomataError {
    #[error("digit {0} is not in the alphabet")]
    ForeignDigit(GaussInt),
    #[error("automata have different alphabets")]
    AlphabetMismatch,
    #[error("enumeration needs {required} word-steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("cannot pump the empty word")]
    EmptyWord,
    #[error("pump length must be positive")]
    ZeroPumpLength,
    #[error("base {0} is not a real odd integer >= 3")]
    BaseNotRealOdd(GaussInt),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Numeration(#[from] NumerationError),
    #[error(transparent)]
    Gauss(#[from] GaussError),
}

type Result<T, E = AutomataError> = std::result::Result<T, E>;

/// Boolean combination used by [`Dfa::product`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    And,
    Or,
    /// `L1 \ L2`
    Diff,
    /// Symmetric difference.
    Xor,
}

impl ProductMode {
    fn combine(self, a: bool, b: bool) -> bool {
        match self {
            ProductMode::And => a && b,
            ProductMode::Or => a || b,
            ProductMode::Diff => a && !b,
            ProductMode::Xor => a != b,
        }
    }
}

/// A complete DFA whose alphabet is the digit list of a [`DigitSet`], in
/// digit order.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: DigitSet,
    initial: usize,
    /// row-major: `transitions[state * |D| + digit]`
    transitions: Vec<usize>,
    accepting: Vec<bool>,
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Dfa")
            .field("base", self.alphabet.base())
            .field("states", &self.state_count())
            .field("initial", &self.initial)
            .field("accepting", &self.accepting_states())
            .finish()
    }
}

impl Dfa {
    /// Builds a DFA from one transition row per state.
    pub fn new(alphabet: DigitSet, initial: usize, rows: Vec<Vec<usize>>, accepting: &[usize]) -> Result<Dfa> {
        let n = rows.len();
        let k = alphabet.len();
        if n == 0 {
            return Err(AutomataError::InvalidDfa("no states".into()));
        }
        if initial >= n {
            return Err(AutomataError::InvalidDfa(format!("initial state {initial} out of range")));
        }
        let mut transitions = Vec::with_capacity(n * k);
        for (s, row) in rows.into_iter().enumerate() {
            if row.len() != k {
                return Err(AutomataError::InvalidDfa(format!("state {s} has {} transitions, expected {k}", row.len())));
            }
            if let Some(t) = row.iter().find(|&&t| t >= n) {
                return Err(AutomataError::InvalidDfa(format!("state {s} moves to unknown state {t}")));
            }
            transitions.extend(row);
        }
        let mut acc = vec![false; n];
        for &s in accepting {
            *acc.get_mut(s).ok_or_else(|| AutomataError::InvalidDfa(format!("accepting state {s} out of range")))? = true;
        }
        Ok(Dfa { alphabet, initial, transitions, accepting: acc })
    }

    fn from_parts(alphabet: DigitSet, initial: usize, transitions: Vec<usize>, accepting: Vec<bool>) -> Dfa {
        debug_assert_eq!(transitions.len(), accepting.len() * alphabet.len());
        Dfa { alphabet, initial, transitions, accepting }
    }

    pub fn alphabet(&self) -> &DigitSet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.state_count()).filter(|&s| self.accepting[s]).collect()
    }

    #[inline]
    pub fn step(&self, state: usize, digit: usize) -> usize {
        self.transitions[state * self.alphabet.len() + digit]
    }

    pub fn row(&self, state: usize) -> &[usize] {
        let k = self.alphabet.len();
        &self.transitions[state * k..(state + 1) * k]
    }

    pub fn run_indices(&self, word: &[usize]) -> bool {
        self.accepting[word.iter().fold(self.initial, |s, &d| self.step(s, d))]
    }

    pub fn run(&self, word: &[GaussInt]) -> Result<bool> {
        let idx = indices(&self.alphabet, word)?;
        Ok(self.run_indices(&idx))
    }

    pub fn complement(&self) -> Dfa {
        let accepting = self.accepting.iter().map(|a| !a).collect();
        Dfa::from_parts(self.alphabet.clone(), self.initial, self.transitions.clone(), accepting)
    }

    /// Product automaton restricted to pairs reachable from the initial pair.
    pub fn product(&self, other: &Dfa, mode: ProductMode) -> Result<Dfa> {
        if self.alphabet != other.alphabet {
            return Err(AutomataError::AlphabetMismatch);
        }
        let k = self.alphabet.len();
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        ids.insert(pairs[0], 0);
        let mut transitions = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            for d in 0..k {
                let next = (self.step(p, d), other.step(q, d));
                let id = *ids.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                transitions.push(id);
            }
            i += 1;
        }
        let accepting = pairs.iter().map(|&(p, q)| mode.combine(self.accepting[p], other.accepting[q])).collect();
        Ok(Dfa::from_parts(self.alphabet.clone(), 0, transitions, accepting))
    }

    /// States reachable from the initial state, in BFS order over digit order.
    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            for &t in self.row(s) {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        order
    }

    pub fn is_empty(&self) -> bool {
        !self.bfs_order().iter().any(|&s| self.accepting[s])
    }

    /// The minimal DFA, states numbered by BFS from the initial state.
    ///
    /// Unreachable states are dropped, then blocks are refined by
    /// `(block, successor blocks)` signatures until the partition is stable.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.len();
        let reach = self.bfs_order();
        let mut block: HashMap<usize, usize> = reach.iter().map(|&s| (s, usize::from(self.accepting[s]))).collect();
        let mut count = reach.iter().map(|&s| block[&s]).collect::<std::collections::BTreeSet<_>>().len();
        loop {
            let mut sig_ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut next = HashMap::with_capacity(reach.len());
            for &s in &reach {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(block[&s]);
                sig.extend(self.row(s).iter().map(|t| block[t]));
                let fresh = sig_ids.len();
                next.insert(s, *sig_ids.entry(sig).or_insert(fresh));
            }
            let new_count = sig_ids.len();
            block = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        // quotient, then renumber by BFS
        let rep: HashMap<usize, usize> = reach.iter().rev().map(|&s| (block[&s], s)).collect();
        let mut number: HashMap<usize, usize> = HashMap::new();
        let mut order = vec![block[&self.initial]];
        number.insert(order[0], 0);
        let mut i = 0;
        while i < order.len() {
            let s = rep[&order[i]];
            for &t in self.row(s) {
                let b = block[&t];
                if let std::collections::hash_map::Entry::Vacant(slot) = number.entry(b) {
                    slot.insert(order.len());
                    order.push(b);
                }
            }
            i += 1;
        }
        let mut transitions = Vec::with_capacity(order.len() * k);
        let mut accepting = Vec::with_capacity(order.len());
        for b in &order {
            let s = rep[b];
            transitions.extend(self.row(s).iter().map(|t| number[&block[t]]));
            accepting.push(self.accepting[s]);
        }
        Dfa::from_parts(self.alphabet.clone(), 0, transitions, accepting)
    }

    pub fn equivalent(&self, other: &Dfa) -> Result<bool> {
        Ok(self.product(other, ProductMode::Xor)?.is_empty())
    }

    /// Shortlex-first accepted word, as digit indices.
    ///
    /// Breadth-first search visiting digits in alphabet order reaches every
    /// state first along its shortlex-least path.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let n = self.state_count();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(s) = queue.pop_front() {
            if self.accepting[s] {
                let mut word = Vec::new();
                let mut cur = s;
                while let Some((p, d)) = parent[cur] {
                    word.push(d);
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            for (d, &t) in self.row(s).iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, d));
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Shortlex-first word accepted by exactly one of the two automata.
    pub fn distinguishing_word(&self, other: &Dfa) -> Result<Option<Vec<GaussInt>>> {
        let diff = self.product(other, ProductMode::Xor)?;
        Ok(diff.shortest_accepted().map(|w| w.into_iter().map(|d| self.alphabet.digits()[d].clone()).collect()))
    }

    pub fn to_file(&self) -> DfaFile {
        DfaFile {
            base: self.alphabet.base().clone(),
            digits: self.alphabet.digits().to_vec(),
            states: self.state_count(),
            initial: self.initial,
            accepting: self.accepting_states(),
            transitions: (0..self.state_count()).map(|s| self.row(s).to_vec()).collect(),
        }
    }

    pub fn from_file(file: DfaFile) -> Result<Dfa> {
        let alphabet = DigitSet::new(file.base, file.digits.clone())?;
        if alphabet.digits() != file.digits.as_slice() {
            return Err(AutomataError::InvalidDfa("digits are not in canonical (re, im) order".into()));
        }
        if file.states != file.transitions.len() {
            return Err(AutomataError::InvalidDfa(format!(
                "declared {} states but {} transition rows",
                file.states,
                file.transitions.len()
            )));
        }
        if file.accepting.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AutomataError::InvalidDfa("accepting list must be strictly increasing".into()));
        }
        Dfa::new(alphabet, file.initial, file.transitions, &file.accepting)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("DFA serializes")
    }

    pub fn from_json(s: &str) -> Result<Dfa> {
        Dfa::from_file(serde_json::from_str(s)?)
    }
}

/// On-disk DFA layout.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaFile {
    pub base: GaussInt,
    pub digits: Vec<GaussInt>,
    pub states: usize,
    pub initial: usize,
    pub accepting: Vec<usize>,
    pub transitions: Vec<Vec<usize>>,
}

fn indices(alphabet: &DigitSet, word: &[GaussInt]) -> Result<Vec<usize>> {
    word.iter().map(|d| alphabet.index_of(d).ok_or_else(|| AutomataError::ForeignDigit(d.clone()))).collect()
}

/// Accepts exactly the words `1 0ⁿ`, i.e. the powers `bⁿ`, over the
/// canonical digit set of `b`.
pub fn powers_dfa(base: &GaussInt) -> Result<Dfa> {
    let ds = canonical_digit_set(base)?;
    let one = ds.index_of(&GaussInt::one()).expect("1 is a canonical digit when norm(b) >= 5");
    let zero = ds.zero_index();
    let k = ds.len();
    // 0: start, 1: 1·0*, 2: dead
    let mut start = vec![2; k];
    start[one] = 1;
    let mut seen_one = vec![2; k];
    seen_one[zero] = 1;
    Dfa::new(ds, 0, vec![start, seen_one, vec![2; k]], &[1])
}

/// Accepts the words made of real digits only, which over a real odd base
/// `2m+1` (digits `-m..=m` on the real line) are exactly the words of `Z`.
pub fn integers_dfa(base: &GaussInt) -> Result<Dfa> {
    let odd = base.is_real() && base.re >= BigInt::from(3) && base.re.is_odd();
    if !odd {
        return Err(AutomataError::BaseNotRealOdd(base.clone()));
    }
    let ds = canonical_digit_set(base)?;
    let zero = ds.zero_index();
    // 0: start (ε = 0 ∈ Z), 1: inside a real word, 2: dead
    let start: Vec<usize> =
        ds.digits().iter().enumerate().map(|(i, d)| if d.is_real() && i != zero { 1 } else { 2 }).collect();
    let inside: Vec<usize> = ds.digits().iter().map(|d| if d.is_real() { 1 } else { 2 }).collect();
    let k = ds.len();
    Dfa::new(ds, 0, vec![start, inside, vec![2; k]], &[0, 1])
}

/// Ground-truth membership for a subset of `Z[i]`, lifted to words.
#[derive(Clone)]
pub struct LanguageOracle {
    alphabet: DigitSet,
    label: String,
    contains: Arc<dyn Fn(&GaussInt) -> bool + Send + Sync>,
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle").field("label", &self.label).field("base", self.alphabet.base()).finish()
    }
}

impl LanguageOracle {
    pub fn from_predicate(
        alphabet: DigitSet,
        label: impl Into<String>,
        contains: impl Fn(&GaussInt) -> bool + Send + Sync + 'static,
    ) -> LanguageOracle {
        LanguageOracle { alphabet, label: label.into(), contains: Arc::new(contains) }
    }

    pub fn alphabet(&self) -> &DigitSet {
        &self.alphabet
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Membership of the represented value, ignoring word validity.
    pub fn contains_value(&self, z: &GaussInt) -> bool {
        (self.contains)(z)
    }

    pub fn accepts(&self, word: &[GaussInt]) -> Result<bool> {
        let idx = indices(&self.alphabet, word)?;
        Ok(self.accepts_indices(&idx))
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        if word.first() == Some(&self.alphabet.zero_index()) {
            return false;
        }
        let base = self.alphabet.base();
        let digits = self.alphabet.digits();
        let value = word.iter().fold(GaussInt::zero(), |acc, &d| &(&acc * base) + &digits[d]);
        self.contains_value(&value)
    }
}

/// The set `{ aⁿ : n ∈ N }` read in the numeration system `ds`.
pub fn powers_oracle(a: &GaussInt, ds: &DigitSet) -> Result<LanguageOracle> {
    if a.norm() <= BigInt::one() {
        return Err(GaussError::BaseIsUnitOrZero(a.clone()).into());
    }
    let a2 = a.clone();
    Ok(LanguageOracle::from_predicate(ds.clone(), format!("powers of {a}"), move |z| {
        matches!(z.is_power_of(&a2), Ok(Some(_)))
    }))
}

/// The rational integers `Z ⊂ Z[i]`.
pub fn integers_oracle(ds: &DigitSet) -> LanguageOracle {
    LanguageOracle::from_predicate(ds.clone(), "integers", GaussInt::is_real)
}

/// All strings of length `<= max_len` in shortlex order, with their values.
struct Strings {
    words: Vec<Vec<usize>>,
    values: Vec<GaussInt>,
}

fn enumerate_strings(ds: &DigitSet, max_len: usize) -> Strings {
    let mut words = vec![Vec::new()];
    let mut values = vec![GaussInt::zero()];
    let mut level_start = 0;
    for _ in 0..max_len {
        let level_end = words.len();
        for i in level_start..level_end {
            for (d, digit) in ds.digits().iter().enumerate() {
                let mut w = words[i].clone();
                w.push(d);
                words.push(w);
                values.push(&(&values[i] * ds.base()) + digit);
            }
        }
        level_start = level_end;
    }
    Strings { words, values }
}

fn require_budget(alphabet: usize, len: usize, budget: u64) -> Result<()> {
    let required = (alphabet as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if required > budget as u128 {
        return Err(AutomataError::BudgetExceeded { required, budget });
    }
    Ok(())
}

/// Residual classes of a language observed through finite windows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub prefix_depth: usize,
    pub extension_depth: usize,
    pub class_count: usize,
    /// Shortlex-first prefix of each class, comma-separated digit form.
    pub representatives: Vec<String>,
}

/// Groups all prefixes `u` with `|u| <= k` by the vector of
/// `membership(u·v)` over all `v` with `|v| <= e`.
pub fn residual_signatures(oracle: &LanguageOracle, k: usize, e: usize) -> Result<ResidualReport> {
    residual_signatures_with_budget(oracle, k, e, DEFAULT_BUDGET)
}

pub fn residual_signatures_with_budget(
    oracle: &LanguageOracle,
    k: usize,
    e: usize,
    budget: u64,
) -> Result<ResidualReport> {
    let ds = oracle.alphabet();
    require_budget(ds.len(), k + e, budget)?;
    let zero = ds.zero_index();
    let prefixes = enumerate_strings(ds, k);
    let exts = enumerate_strings(ds, e);
    let powers: Vec<GaussInt> = (0..=e as u32).map(|j| ds.base().pow(j)).collect();
    let ext_alone: Vec<bool> = exts.words.iter().map(|v| oracle.accepts_indices(v)).collect();
    let words = exts.words.len();

    let signatures: Vec<Vec<u64>> = prefixes
        .words
        .par_iter()
        .zip(prefixes.values.par_iter())
        .map(|(u, uval)| {
            let mut bits = vec![0u64; words.div_ceil(64)];
            for (j, (v, vval)) in exts.words.iter().zip(&exts.values).enumerate() {
                let member = match u.first() {
                    None => ext_alone[j],
                    Some(&d) if d == zero => false,
                    Some(_) => oracle.contains_value(&(&(uval * &powers[v.len()]) + vval)),
                };
                if member {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();

    let mut classes: HashMap<&[u64], usize> = HashMap::new();
    let mut representatives = Vec::new();
    for (u, sig) in prefixes.words.iter().zip(&signatures) {
        classes.entry(sig.as_slice()).or_insert_with(|| {
            representatives.push(render_indices(ds, u));
            representatives.len() - 1
        });
    }
    Ok(ResidualReport { prefix_depth: k, extension_depth: e, class_count: classes.len(), representatives })
}

fn render_indices(ds: &DigitSet, word: &[usize]) -> String {
    word.iter().map(|&d| ds.digits()[d].to_string()).collect::<Vec<_>>().join(",")
}

/// Membership of `w` with `j·k` zeros inserted after its leading digit, for
/// `j = 0..=reps`.
pub fn zero_pump_probe(oracle: &LanguageOracle, word: &Word, k: usize, reps: usize) -> Result<Vec<bool>> {
    if word.is_empty() {
        return Err(AutomataError::EmptyWord);
    }
    if k == 0 {
        return Err(AutomataError::ZeroPumpLength);
    }
    let idx = indices(oracle.alphabet(), word)?;
    let zero = oracle.alphabet().zero_index();
    Ok((0..=reps)
        .map(|j| {
            let mut pumped = Vec::with_capacity(idx.len() + j * k);
            pumped.push(idx[0]);
            pumped.extend(std::iter::repeat_n(zero, j * k));
            pumped.extend_from_slice(&idx[1..]);
            oracle.accepts_indices(&pumped)
        })
        .collect())
}

/// Shortest, then lexicographically least, word on which `dfa` and `oracle`
/// disagree, among words of length `<= max_len`.
pub fn dfa_oracle_disagreement(dfa: &Dfa, oracle: &LanguageOracle, max_len: usize) -> Result<Option<Vec<GaussInt>>> {
    dfa_oracle_disagreement_with_budget(dfa, oracle, max_len, DEFAULT_BUDGET)
}

pub fn dfa_oracle_disagreement_with_budget(
    dfa: &Dfa,
    oracle: &LanguageOracle,
    max_len: usize,
    budget: u64,
) -> Result<Option<Vec<GaussInt>>> {
    let ds = dfa.alphabet();
    if ds != oracle.alphabet() {
        return Err(AutomataError::AlphabetMismatch);
    }
    require_budget(ds.len(), max_len, budget)?;
    if dfa.is_accepting(dfa.initial()) != oracle.contains_value(&GaussInt::zero()) {
        return Ok(Some(Vec::new()));
    }
    for len in 1..=max_len {
        // subtrees by first digit, searched in parallel; the lowest digit wins
        let hit = (0..ds.len())
            .into_par_iter()
            .map(|first| {
                let mut word = vec![first];
                let state = dfa.step(dfa.initial(), first);
                let value = ds.digits()[first].clone();
                let valid = first != ds.zero_index();
                search(dfa, oracle, len, &mut word, state, &value, valid)
            })
            .find_first(Option::is_some)
            .flatten();
        if let Some(w) = hit {
            return Ok(Some(w.into_iter().map(|d| ds.digits()[d].clone()).collect()));
        }
    }
    Ok(None)
}

fn search(
    dfa: &Dfa,
    oracle: &LanguageOracle,
    len: usize,
    word: &mut Vec<usize>,
    state: usize,
    value: &GaussInt,
    valid: bool,
) -> Option<Vec<usize>> {
    if word.len() == len {
        let member = valid && oracle.contains_value(value);
        return (dfa.is_accepting(state) != member).then(|| word.clone());
    }
    let ds = dfa.alphabet();
    let shifted = value * ds.base();
    for (d, digit) in ds.digits().iter().enumerate() {
        word.push(d);
        let found = search(dfa, oracle, len, word, dfa.step(state, d), &(&shifted + digit), valid);
        word.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    fn random_dfa(ds: &DigitSet, states: usize, rng: &mut StdRng) -> Dfa {
        let rows = (0..states).map(|_| (0..ds.len()).map(|_| rng.gen_range(0..states)).collect()).collect();
        let acc: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.4)).collect();
        Dfa::new(ds.clone(), 0, rows, &acc).unwrap()
    }

    #[test]
    fn powers_dfa_runs() {
        let d = powers_dfa(&g(2, 1)).unwrap();
        assert!(d.run(&[g(1, 0), g(0, 0)]).unwrap());
        assert!(d.run(&[g(1, 0)]).unwrap());
        assert!(d.run(&[g(1, 0), g(0, 0), g(0, 0)]).unwrap());
        assert!(!d.run(&[]).unwrap());
        assert!(!d.run(&[g(1, 0), g(0, -1)]).unwrap());
        assert!(!d.run(&[g(0, 1), g(0, 0)]).unwrap());
        assert!(matches!(d.run(&[g(3, 0)]), Err(AutomataError::ForeignDigit(_))));
    }

    #[test]
    fn distinguishing_words_are_shortlex_first() {
        let d = powers_dfa(&g(2, 1)).unwrap();
        assert_eq!(d.shortest_accepted(), Some(vec![4]));
        assert_eq!(d.distinguishing_word(&d.complement()).unwrap(), Some(vec![]));
        assert_eq!(d.distinguishing_word(&d.minimize()).unwrap(), None);
        let ints = integers_dfa(&g(3, 0)).unwrap();
        let pows = powers_dfa(&g(3, 0)).unwrap();
        // 0 is an integer but not a power
        assert_eq!(ints.distinguishing_word(&pows).unwrap(), Some(vec![]));
        let mut rng = StdRng::seed_from_u64(3);
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        for _ in 0..50 {
            let (x, y) = (random_dfa(&ds, 4, &mut rng), random_dfa(&ds, 4, &mut rng));
            match x.distinguishing_word(&y).unwrap() {
                Some(w) => assert_ne!(x.run(&w).unwrap(), y.run(&w).unwrap()),
                None => assert!(x.equivalent(&y).unwrap()),
            }
        }
    }

    #[test]
    fn powers_dfa_is_minimal_with_three_states() {
        let d = powers_dfa(&g(2, 1)).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 3);
        assert!(m.equivalent(&d).unwrap());
        let ds = d.alphabet().clone();
        let oracle = powers_oracle(&g(2, 1), &ds).unwrap();
        assert_eq!(dfa_oracle_disagreement(&m, &oracle, 8).unwrap(), None);
    }

    #[test]
    fn integers_dfa_base_three() {
        let d = integers_dfa(&g(3, 0)).unwrap();
        let ds = d.alphabet().clone();
        assert_eq!(ds.len(), 9);
        assert!(d.run(&[]).unwrap());
        for n in -100..=100 {
            assert!(d.run(&ds.encode(&g(n, 0)).unwrap()).unwrap(), "{n}");
        }
        assert!(d.run(&ds.encode(&g(-7, 0)).unwrap()).unwrap());
        assert!(!d.run(&ds.encode(&g(0, 1)).unwrap()).unwrap());
        assert!(matches!(integers_dfa(&g(2, 1)), Err(AutomataError::BaseNotRealOdd(_))));
        assert!(matches!(integers_dfa(&g(4, 0)), Err(AutomataError::BaseNotRealOdd(_))));
        assert!(matches!(integers_dfa(&g(-3, 0)), Err(AutomataError::BaseNotRealOdd(_))));
    }

    #[test]
    fn oracle_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let own = powers_oracle(&g(2, 1), &ds).unwrap();
        assert!(own.accepts(&[g(1, 0)]).unwrap());
        assert!(own.accepts(&[g(1, 0), g(0, 0)]).unwrap());
        assert!(!own.accepts(&[]).unwrap());
        assert!(!own.accepts(&[g(0, 0), g(1, 0)]).unwrap());
        let other = powers_oracle(&g(1, 2), &ds).unwrap();
        assert!(other.accepts(&ds.encode(&g(1, 2).pow(2)).unwrap()).unwrap());
        let ints = integers_oracle(&ds);
        assert!(ints.accepts(&[g(0, -1), g(0, 1), g(-1, 0), g(0, 0)]).unwrap());
        assert!(ints.accepts(&[]).unwrap());
        assert!(matches!(powers_oracle(&g(0, 1), &ds), Err(AutomataError::Gauss(_))));
    }

    #[test]
    fn residual_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let own = powers_oracle(&g(2, 1), &ds).unwrap();
        assert_eq!(residual_signatures(&own, 0, 3).unwrap().class_count, 1);
        for k in 0..=4 {
            assert!(residual_signatures(&own, k, 3).unwrap().class_count <= 4);
        }
        let other = powers_oracle(&g(1, 2), &ds).unwrap();
        // frozen from an independent Python enumeration
        assert_eq!(residual_signatures(&other, 2, 3).unwrap().class_count, 8);
        assert_eq!(residual_signatures(&other, 4, 3).unwrap().class_count, 15);
        let r = residual_signatures(&own, 2, 2).unwrap();
        assert_eq!(r.representatives[0], "");
        assert!(matches!(
            residual_signatures_with_budget(&own, 6, 6, 1000),
            Err(AutomataError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn residual_count_bounded_by_agreeing_dfa() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let oracle = powers_oracle(&g(2, 1), &ds).unwrap();
        let d = powers_dfa(&g(2, 1)).unwrap();
        assert_eq!(dfa_oracle_disagreement(&d, &oracle, 5).unwrap(), None);
        assert!(residual_signatures(&oracle, 3, 2).unwrap().class_count <= d.state_count());
    }

    #[test]
    fn pump_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let own = powers_oracle(&g(2, 1), &ds).unwrap();
        let w = Word::new(vec![g(1, 0), g(0, 0)]).unwrap();
        for k in 1..4 {
            assert!(zero_pump_probe(&own, &w, k, 5).unwrap().into_iter().all(|b| b));
        }
        let ds3 = canonical_digit_set(&g(3, 0)).unwrap();
        let nine = ds3.encode(&g(9, 0)).unwrap();
        assert!(zero_pump_probe(&integers_oracle(&ds3), &nine, 2, 6).unwrap().into_iter().all(|b| b));
        let five = ds.encode(&g(5, 0)).unwrap();
        let probe = zero_pump_probe(&integers_oracle(&ds), &five, 1, 8).unwrap();
        assert_eq!(probe.len(), 9);
        assert!(probe[0]);
        assert!(probe.contains(&false));
        assert!(matches!(zero_pump_probe(&own, &Word::empty(), 1, 2), Err(AutomataError::EmptyWord)));
        assert!(matches!(zero_pump_probe(&own, &w, 0, 2), Err(AutomataError::ZeroPumpLength)));
    }

    #[test]
    fn disagreement_examples() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let d = powers_dfa(&g(2, 1)).unwrap();
        let other = powers_oracle(&g(1, 2), &ds).unwrap();
        // [1] = (1+2i)^0 agrees; [1,0] = 2+i is accepted by the DFA only
        assert_eq!(dfa_oracle_disagreement(&d, &other, 4).unwrap(), Some(vec![g(1, 0), g(0, 0)]));
        let i3 = integers_dfa(&g(3, 0)).unwrap();
        let o3 = integers_oracle(i3.alphabet());
        assert_eq!(dfa_oracle_disagreement(&i3, &o3, 4).unwrap(), None);
        assert!(matches!(
            dfa_oracle_disagreement_with_budget(&d, &other, 12, 1_000_000),
            Err(AutomataError::BudgetExceeded { .. })
        ));
        assert!(matches!(dfa_oracle_disagreement(&i3, &other, 2), Err(AutomataError::AlphabetMismatch)));
    }

    #[test]
    fn boolean_operations() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..30 {
            let a = random_dfa(&ds, 5, &mut rng);
            let b = random_dfa(&ds, 4, &mut rng);
            assert!(a.product(&a, ProductMode::Diff).unwrap().is_empty());
            let lhs = a.product(&b, ProductMode::And).unwrap().complement();
            let rhs = a.complement().product(&b.complement(), ProductMode::Or).unwrap();
            assert!(lhs.equivalent(&rhs).unwrap());
            let m = a.minimize();
            assert!(m.equivalent(&a).unwrap());
            assert_eq!(m.minimize(), m);
            assert!(m.state_count() <= a.state_count());
        }
    }

    #[test]
    fn minimize_merges_equivalent_states() {
        let ds = canonical_digit_set(&g(2, 1)).unwrap();
        let k = ds.len();
        // two accepting sinks and an unreachable state
        let d = Dfa::new(ds, 0, vec![vec![1; k], vec![2; k], vec![1; k], vec![0; k]], &[1, 2]).unwrap();
        let m = d.minimize();
        assert_eq!(m.state_count(), 2);
        assert_eq!(m.accepting_states(), vec![1]);
    }

    #[test]
    fn json_roundtrip() {
        let d = powers_dfa(&g(2, 1)).unwrap();
        let s = d.to_json();
        assert_eq!(
            s,
            r#"{"base":"2+1i","digits":["-1","0-1i","0","0+1i","1"],"states":3,"initial":0,"accepting":[1],"transitions":[[2,2,2,2,1],[2,2,1,2,2],[2,2,2,2,2]]}"#
        );
        let back = Dfa::from_json(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_json(), s);
        let shuffled = s.replace(r#"["-1","0-1i""#, r#"["0-1i","-1""#);
        assert!(matches!(Dfa::from_json(&shuffled), Err(AutomataError::InvalidDfa(_))));
        let bad_row = s.replace("[2,2,2,2,2]", "[2,2,2,2,9]");
        assert!(matches!(Dfa::from_json(&bad_row), Err(AutomataError::InvalidDfa(_))));
    }

    #[test]
    fn alphabet_mismatch() {
        let a = powers_dfa(&g(2, 1)).unwrap();
        let b = powers_dfa(&g(-2, 1)).unwrap();
        assert!(matches!(a.product(&b, ProductMode::And), Err(AutomataError::AlphabetMismatch)));
    }
}
