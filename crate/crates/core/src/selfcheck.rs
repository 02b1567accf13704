//! Reproducible property checks over the whole crate.
//!
//! Each criterion is exhaustive over a stated finite range and carries a
//! wall-clock limit; [`run_all`] is what `gaussauto verify-paper` reports.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::automata::{
    dfa_oracle_disagreement, integers_dfa, integers_oracle, powers_dfa, powers_oracle, residual_signatures,
    zero_pump_probe, Dfa, ProductMode,
};
use crate::dependence::{mult_dependent, prefix_extension, DependenceVerdict};
use crate::gaussint::GaussInt;
use crate::numeration::{
    canonical_digit_set, check_linked, lattice_disc, length_bound, power_digit_set, recode, DigitSet, LinkOutcome,
    Word,
};

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({} ms / limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

type Check = Result<String, String>;

fn timed(id: u32, title: &'static str, limit: Duration, f: impl FnOnce() -> Check) -> CriterionOutcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    let (passed, detail) = match result {
        Ok(d) if within => (true, d),
        Ok(d) => (false, format!("{d}; exceeded time limit")),
        Err(e) => (false, e),
    };
    CriterionOutcome { id, title, passed, detail, elapsed_ms: elapsed.as_millis(), limit_ms: limit.as_millis() }
}

fn g(re: i64, im: i64) -> GaussInt {
    GaussInt::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Bases used by the representation and length criteria.
pub fn scan_bases() -> Vec<GaussInt> {
    vec![g(2, 1), g(-1, 2), g(-2, 1), g(3, 0), g(1, 3)]
}

/// Every Gaussian integer with `lo <= norm <= hi`, sorted.
pub fn bases_in_norm_range(lo: u64, hi: u64) -> Vec<GaussInt> {
    lattice_disc(&BigInt::from(hi)).into_iter().filter(|b| b.norm() >= BigInt::from(lo)).collect()
}

fn cd(b: &GaussInt) -> Result<DigitSet, String> {
    canonical_digit_set(b).map_err(|e| e.to_string())
}

/// Digit-count and pairwise-incongruence check for one base.
pub fn check_residue_system(b: &GaussInt) -> Result<(), String> {
    let ds = cd(b)?;
    ensure(BigInt::from(ds.len()) == b.norm(), || format!("base {b}: {} digits, norm {}", ds.len(), b.norm()))?;
    let d = ds.digits();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            ensure(!(&d[i] - &d[j]).is_divisible_by(b), || format!("base {b}: {} ≡ {}", d[i], d[j]))?;
        }
    }
    Ok(())
}

pub fn criterion_1() -> CriterionOutcome {
    timed(1, "canonical digit sets are complete residue systems", Duration::from_secs(5), || {
        let cross = vec![g(-1, 0), g(0, -1), g(0, 0), g(0, 1), g(1, 0)];
        for b in [g(2, 1), g(-1, 2), g(-2, 1)] {
            let ds = cd(&b)?;
            ensure(ds.digits() == cross.as_slice(), || format!("base {b}: digits {:?}", ds.digits()))?;
        }
        let bases = bases_in_norm_range(5, 100);
        for b in &bases {
            check_residue_system(b)?;
        }
        Ok(format!("{} bases with 5 <= norm <= 100", bases.len()))
    })
}

/// `decode(encode(z)) = z` for every `norm(z) <= r2`.
pub fn check_roundtrip(b: &GaussInt, r2: u64) -> Result<usize, String> {
    let ds = cd(b)?;
    let disc = lattice_disc(&BigInt::from(r2));
    for z in &disc {
        let w = ds.encode(z).map_err(|e| e.to_string())?;
        ensure(w.first().is_none_or(|d| !d.is_zero()), || format!("{z}: leading zero"))?;
        let back = ds.decode(&w).map_err(|e| e.to_string())?;
        ensure(&back == z, || format!("base {b}: {z} -> {w} -> {back}"))?;
    }
    Ok(disc.len())
}

/// Every valid word of length `<= max_len`, by extending shorter ones.
pub fn valid_words(ds: &DigitSet, max_len: usize) -> Vec<Vec<GaussInt>> {
    let mut out = vec![Vec::new()];
    let mut level: Vec<Vec<GaussInt>> = vec![Vec::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &level {
            for d in ds.digits() {
                if len == 1 && d.is_zero() {
                    continue;
                }
                let mut v = w.clone();
                v.push(d.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        level = next;
    }
    out
}

pub fn criterion_2() -> CriterionOutcome {
    timed(2, "representations are unique", Duration::from_secs(50), || {
        let mut details = Vec::new();
        for b in scan_bases() {
            let start = Instant::now();
            let n = check_roundtrip(&b, 10_000)?;
            ensure(start.elapsed() < Duration::from_secs(10), || format!("base {b} took {:?}", start.elapsed()))?;
            details.push(format!("{b}:{n}"));
        }
        let ds = cd(&g(2, 1))?;
        let words = valid_words(&ds, 5);
        for w in &words {
            let z = ds.decode(w).map_err(|e| e.to_string())?;
            let again = ds.encode(&z).map_err(|e| e.to_string())?;
            ensure(again.as_ref() == w.as_slice(), || format!("word {w:?} re-encodes as {again}"))?;
        }
        Ok(format!("roundtrip {}; {} words re-encode", details.join(" "), words.len()))
    })
}

/// Length-bound soundness on a disc plus the iterated `M` recursion.
pub fn check_length_bound(b: &GaussInt, r2: u64, k_max: u32, recursion_k: u32) -> Result<u32, String> {
    let ds = cd(b)?;
    let lb = length_bound(b).map_err(|e| e.to_string())?;
    for z in lattice_disc(&BigInt::from(r2)) {
        let len = ds.word_length(&z).map_err(|e| e.to_string())?;
        for k in 0..=k_max {
            ensure(!lb.within_bound(&z, k) || len <= k as usize, || format!("base {b}: ℓ({z}) = {len} > {k}"))?;
        }
    }
    let m9 = ds.max_length_in_disc(&BigInt::from(9)).map_err(|e| e.to_string())?;
    ensure(m9 == lb.m3 as usize, || "M(3) mismatch".into())?;
    for k in 1..=recursion_k {
        let r2 = ds.norm().pow(k);
        let mk = ds.max_length_in_disc(&r2).map_err(|e| e.to_string())?;
        ensure(mk < m9 + k as usize, || format!("base {b}: M(|b|^{k}) = {mk} > M(3) + {k} - 1"))?;
    }
    Ok(lb.m3)
}

pub fn criterion_3() -> CriterionOutcome {
    timed(3, "certified length bound with c = |b|^-M(3)", Duration::from_secs(60), || {
        let mut m3s = Vec::new();
        for b in scan_bases() {
            m3s.push(format!("{b}:M(3)={}", check_length_bound(&b, 10_000, 12, 5)?));
        }
        Ok(m3s.join(" "))
    })
}

/// The `{0, 1, ..., k²}` digit set for the base `-k + i`.
pub fn consecutive_digit_set(k: i64) -> Result<DigitSet, String> {
    DigitSet::new(g(-k, 1), (0..=k * k).map(|d| g(d, 0)).collect()).map_err(|e| e.to_string())
}

pub fn criterion_4() -> CriterionOutcome {
    timed(4, "linked digit sets", Duration::from_secs(30), || {
        for b in scan_bases() {
            let ds = cd(&b)?;
            match check_linked(&ds, &ds).map_err(|e| e.to_string())? {
                LinkOutcome::Linked(c) => ensure(c.verify(&ds, &ds), || format!("{b}: certificate does not verify"))?,
                LinkOutcome::NotLinked { digit, offset } => return Err(format!("{b}: D not linked to itself at {digit}+{offset}")),
            }
        }
        let hs = consecutive_digit_set(2)?;
        hs.probe_termination().map_err(|e| e.to_string())?;
        let canon = cd(&g(-2, 1))?;
        match check_linked(&hs, &canon).map_err(|e| e.to_string())? {
            LinkOutcome::Linked(c) => {
                ensure(c.verify(&hs, &canon), || "certificate does not verify".into())?;
                Ok(format!("reflexive on {} bases; {{0..4}} ~ canonical(-2+i) with |E| = {}", scan_bases().len(), c.envelope.len()))
            }
            LinkOutcome::NotLinked { digit, offset } => Err(format!("{{0..4}} not linked at {digit}+{offset}")),
        }
    })
}

pub fn criterion_5() -> CriterionOutcome {
    timed(5, "b versus b^j recoding", Duration::from_secs(30), || {
        let ds = cd(&g(2, 1))?;
        let p2 = power_digit_set(&ds, 2).map_err(|e| e.to_string())?;
        ensure(p2.len() == 25, || format!("|D ∪ bD| = {}", p2.len()))?;
        let disc = lattice_disc(&BigInt::from(2500));
        for j in [2u32, 3] {
            let pj = power_digit_set(&ds, j).map_err(|e| e.to_string())?;
            for z in &disc {
                let w = ds.encode(z).map_err(|e| e.to_string())?;
                let r = recode(&w, &ds, j).map_err(|e| e.to_string())?;
                let back = pj.decode(&r).map_err(|e| e.to_string())?;
                ensure(&back == z, || format!("j={j}: {z} recodes to {r} = {back}"))?;
                let direct = pj.encode(z).map_err(|e| e.to_string())?;
                ensure(direct == r, || format!("j={j}: recode {r} differs from direct encoding {direct}"))?;
            }
        }
        Ok(format!("{} points, j in {{2, 3}}", disc.len()))
    })
}

fn random_nonunit(rng: &mut StdRng) -> GaussInt {
    loop {
        let z = g(rng.gen_range(-6..=6), rng.gen_range(-6..=6));
        if z.norm() > BigInt::from(1) {
            return z;
        }
    }
}

pub fn criterion_6() -> CriterionOutcome {
    timed(6, "multiplicative dependence", Duration::from_secs(5), || {
        let expect = |a: GaussInt, b: GaussInt, want: DependenceVerdict| -> Result<(), String> {
            let got = mult_dependent(&a, &b).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("({a}, {b}): {got:?}"))
        };
        expect(g(3, 4), g(2, 1), DependenceVerdict { dependent: true, r: Some(1), s: Some(2) })?;
        expect(g(2, 0), g(4, 0), DependenceVerdict { dependent: true, r: Some(2), s: Some(1) })?;
        expect(g(2, 1), g(1, 2), DependenceVerdict { dependent: false, r: None, s: None })?;
        let mut rng = StdRng::seed_from_u64(0x5eed);
        for _ in 0..50 {
            let gamma = random_nonunit(&mut rng);
            let (p, q) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let (a, b) = (gamma.pow(p), gamma.pow(q));
            let v = mult_dependent(&a, &b).map_err(|e| e.to_string())?;
            let (Some(r), Some(s)) = (v.r, v.s) else {
                return Err(format!("{gamma}^{p}, {gamma}^{q} reported independent"));
            };
            ensure(a.pow(r) == b.pow(s), || format!("{a}^{r} != {b}^{s}"))?;
        }
        Ok("3 fixed pairs and 50 random (γ^p, γ^q) pairs".into())
    })
}

pub fn criterion_7() -> CriterionOutcome {
    timed(7, "prefix-extension witnesses", Duration::from_secs(60), || {
        let (a, b) = (g(1, 2), g(2, 1));
        let ds = cd(&b)?;
        let mut out = Vec::new();
        for (u, prefix) in [(g(1, 0), vec![g(1, 0)]), (g(2, 1), vec![g(1, 0), g(0, 0)])] {
            let w = prefix_extension(&a, &b, &u, 3, 256).map_err(|e| e.to_string())?;
            ensure(w.verify(&a, &b).map_err(|e| e.to_string())?, || format!("u={u}: witness fails re-verification"))?;
            let am = ds.encode(&a.pow(w.m)).map_err(|e| e.to_string())?;
            ensure(am.starts_with(&Word::new(prefix.clone()).unwrap()), || format!("u={u}: word {am} lacks prefix"))?;
            ensure(w.n >= 3, || "n below n_min".into())?;
            out.push(format!("u={u}: (m, n) = ({}, {})", w.m, w.n));
        }
        Ok(out.join("; "))
    })
}

/// Residual class counts for `powers_oracle(a)` over the canonical set of `b`.
pub fn residual_counts(a: &GaussInt, b: &GaussInt, ks: &[usize], e: usize) -> Result<Vec<usize>, String> {
    let ds = cd(b)?;
    let oracle = powers_oracle(a, &ds).map_err(|e| e.to_string())?;
    ks.iter()
        .map(|&k| residual_signatures(&oracle, k, e).map(|r| r.class_count).map_err(|e| e.to_string()))
        .collect()
}

pub fn criterion_8() -> CriterionOutcome {
    timed(8, "non-automaticity evidence for independent powers", Duration::from_secs(120), || {
        let ks = [2, 4, 6];
        let indep = residual_counts(&g(1, 2), &g(2, 1), &ks, 3)?;
        ensure(indep.windows(2).all(|w| w[0] < w[1]), || format!("1+2i counts {indep:?} not strictly increasing"))?;
        let own = residual_counts(&g(2, 1), &g(2, 1), &ks, 3)?;
        ensure(own.iter().all(|&c| c <= 4), || format!("2+i counts {own:?} exceed 4"))?;
        let d = powers_dfa(&g(2, 1)).map_err(|e| e.to_string())?;
        let oracle = powers_oracle(&g(2, 1), d.alphabet()).map_err(|e| e.to_string())?;
        let dis = dfa_oracle_disagreement(&d, &oracle, 8).map_err(|e| e.to_string())?;
        ensure(dis.is_none(), || format!("powers_dfa disagrees on {dis:?}"))?;
        Ok(format!("1+2i over 2+i: {indep:?}; 2+i over 2+i: {own:?}; powers_dfa agrees to length 8"))
    })
}

pub fn criterion_9() -> CriterionOutcome {
    timed(9, "the integers over real and non-real bases", Duration::from_secs(30), || {
        let d = integers_dfa(&g(3, 0)).map_err(|e| e.to_string())?;
        let oracle = integers_oracle(d.alphabet());
        let dis = dfa_oracle_disagreement(&d, &oracle, 5).map_err(|e| e.to_string())?;
        ensure(dis.is_none(), || format!("integers_dfa(3) disagrees on {dis:?}"))?;
        let ds = cd(&g(2, 1))?;
        let five = ds.encode(&g(5, 0)).map_err(|e| e.to_string())?;
        let probe = zero_pump_probe(&integers_oracle(&ds), &five, 1, 8).map_err(|e| e.to_string())?;
        ensure(probe.contains(&false), || format!("pump probe {probe:?} never leaves Z"))?;
        Ok(format!("integers_dfa(3) agrees to length 5; pump from {five}: {probe:?}"))
    })
}

/// A uniformly random complete DFA.
pub fn random_dfa(ds: &DigitSet, states: usize, rng: &mut StdRng) -> Dfa {
    let rows = (0..states).map(|_| (0..ds.len()).map(|_| rng.gen_range(0..states)).collect()).collect();
    let acc: Vec<usize> = (0..states).filter(|_| rng.gen_bool(0.5)).collect();
    Dfa::new(ds.clone(), rng.gen_range(0..states), rows, &acc).expect("well-formed random DFA")
}

pub fn criterion_10() -> CriterionOutcome {
    timed(10, "DFA engine laws", Duration::from_secs(10), || {
        let ds = cd(&g(2, 1))?;
        let mut rng = StdRng::seed_from_u64(10);
        let dfas: Vec<Dfa> = (0..100).map(|_| { let n = rng.gen_range(1..=8); random_dfa(&ds, n, &mut rng) }).collect();
        for (i, d) in dfas.iter().enumerate() {
            let m = d.minimize();
            ensure(m.minimize() == m, || format!("dfa {i}: minimize not idempotent"))?;
            ensure(m.equivalent(d).map_err(|e| e.to_string())?, || format!("dfa {i}: minimize changed the language"))?;
            let e = &dfas[(i + 1) % dfas.len()];
            let lhs = d.product(e, ProductMode::And).map_err(|e| e.to_string())?.complement();
            let rhs = d.complement().product(&e.complement(), ProductMode::Or).map_err(|e| e.to_string())?;
            ensure(lhs.equivalent(&rhs).map_err(|e| e.to_string())?, || format!("dfa {i}: De Morgan fails"))?;
            let json = d.to_json();
            let back = Dfa::from_json(&json).map_err(|e| e.to_string())?;
            ensure(&back == d && back.to_json() == json, || format!("dfa {i}: JSON round-trip differs"))?;
        }
        Ok("100 random DFAs over the base-(2+i) alphabet".into())
    })
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
