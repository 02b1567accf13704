//! One adapter per subcommand: parse-level inputs in, module results out.

use std::path::Path;

use anyhow::{bail, Context, Result};
use gaussauto::automata::{
    dfa_oracle_disagreement_with_budget, integers_dfa, integers_oracle, powers_dfa, powers_oracle,
    residual_signatures_with_budget, zero_pump_probe,
};
use gaussauto::dependence::{group_witness, prefix_chain, squared_error, DependenceError};
use gaussauto::numeration::{length_bound, DigitSet, Word};
use gaussauto::selfcheck;
use gaussauto::{canonical_digit_set, mult_dependent, Dfa, GaussInt, LanguageOracle};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::report::{Report, Status};
use crate::{BuiltIn, Command, DfaCommand, Emit, SetSpec};

type Outcome = Result<(Value, Status)>;

fn ok(results: Value) -> Outcome {
    Ok((results, Status::Ok))
}

fn not_found(results: Value) -> Outcome {
    Ok((results, Status::NotFound))
}

/// Exact integers as JSON numbers when they fit, strings otherwise.
fn big(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn digits_json(word: &[GaussInt]) -> Value {
    json!(word.iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn word_json(word: &Word) -> Value {
    json!({ "digits": digits_json(word), "text": word.to_string(), "length": word.len() })
}

fn set_oracle(set: &SetSpec, ds: &DigitSet) -> Result<LanguageOracle> {
    Ok(match set {
        SetSpec::Integers => integers_oracle(ds),
        SetSpec::Powers(a) => powers_oracle(a, ds)?,
    })
}

fn read_dfa(path: &Path) -> Result<Dfa> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Dfa::from_json(&text).with_context(|| format!("{} is not a valid DFA file", path.display()))
}

fn write_dfa(dfa: &Dfa, emit: &Emit) -> Result<()> {
    if let Some(path) = &emit.dfa_out {
        std::fs::write(path, dfa.to_json() + "\n").with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn dfa_json(dfa: &Dfa) -> Result<Value> {
    Ok(serde_json::to_value(dfa.to_file())?)
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

pub fn execute(cmd: &Command) -> Report {
    let (command, inputs) = describe(cmd);
    let (results, status) = match run(cmd) {
        Ok(r) => r,
        Err(e) => (Value::Null, Status::Error(format!("{e:#}"))),
    };
    Report { command: command.into(), inputs, results, status }
}

fn describe(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Digits { base } => ("digits", json!({ "base": base })),
        Command::Encode { base, z } => ("encode", json!({ "base": base, "z": z })),
        Command::Decode { base, word } => ("decode", json!({ "base": base, "word": word.to_string() })),
        Command::ScanBases { norm_min, norm_max, radius2, k_max } => (
            "scan-bases",
            json!({ "norm_min": norm_min, "norm_max": norm_max, "radius2": radius2, "k_max": k_max }),
        ),
        Command::Deptest { a, b } => ("deptest", json!({ "a": a, "b": b })),
        Command::Witness { a, b, u, bound, budget } => (
            "witness",
            json!({ "a": a, "b": b, "u": u, "bound": format!("{}/{}", bound.num, bound.den), "budget": budget }),
        ),
        Command::Prefix { a, b, u, n_min, budget, depth } => (
            "prefix",
            json!({ "a": a, "b": b, "u": u, "n_min": n_min, "budget": budget, "depth": depth }),
        ),
        Command::Residuals { a, base, k, e, budget } => {
            ("residuals", json!({ "a": a, "base": base, "k": k, "e": e, "budget": budget }))
        }
        Command::Pump { base, set, word, k, reps } => (
            "pump",
            json!({ "base": base, "set": set.to_string(), "word": word.to_string(), "k": k, "reps": reps }),
        ),
        Command::Dfa(sub) => match sub {
            DfaCommand::Run { file, word } => ("dfa run", json!({ "file": path_str(file), "word": word.to_string() })),
            DfaCommand::Min { file, .. } => ("dfa min", json!({ "file": path_str(file) })),
            DfaCommand::Equiv { left, right } => {
                ("dfa equiv", json!({ "left": path_str(left), "right": path_str(right) }))
            }
            DfaCommand::Falsify { file, set, max_len, budget } => (
                "dfa falsify",
                json!({ "file": path_str(file), "set": set.to_string(), "max_len": max_len, "budget": budget }),
            ),
            DfaCommand::Build { kind, base, .. } => {
                let kind = match kind {
                    BuiltIn::Powers => "powers",
                    BuiltIn::Integers => "integers",
                };
                ("dfa build", json!({ "kind": kind, "base": base }))
            }
        },
        Command::VerifyPaper => ("verify-paper", json!({})),
    }
}

fn run(cmd: &Command) -> Outcome {
    match cmd {
        Command::Digits { base } => {
            let ds = canonical_digit_set(base)?;
            let lb = length_bound(base)?;
            ok(json!({
                "base": base,
                "norm": big(ds.norm()),
                "count": ds.len(),
                "digits": digits_json(ds.digits()),
                "m3": lb.m3,
            }))
        }
        Command::Encode { base, z } => {
            let ds = canonical_digit_set(base)?;
            ok(json!({ "z": z, "word": word_json(&ds.encode(z)?) }))
        }
        Command::Decode { base, word } => {
            let ds = canonical_digit_set(base)?;
            ok(json!({ "word": word_json(word), "z": ds.decode(word)? }))
        }
        Command::ScanBases { norm_min, norm_max, radius2, k_max } => scan_bases(*norm_min, *norm_max, *radius2, *k_max),
        Command::Deptest { a, b } => ok(serde_json::to_value(mult_dependent(a, b)?)?),
        Command::Witness { a, b, u, bound, budget } => {
            match group_witness(a, b, u, &bound.num, &bound.den, *budget) {
                Ok(w) => {
                    let (num, den) = squared_error(a, b, u, w.m, w.n);
                    ok(json!({
                        "m": w.m,
                        "n": w.n,
                        "u": w.u,
                        "z": w.residual(a, b),
                        "squared_error": format!("{num}/{den}"),
                        "certified": w.verify(a, b),
                    }))
                }
                Err(DependenceError::NotFound { m_max }) => not_found(json!({ "searched": { "m_min": 1, "m_max": m_max } })),
                Err(e) => Err(e.into()),
            }
        }
        Command::Prefix { a, b, u, n_min, budget, depth } => prefix(a, b, u, *n_min, *budget, *depth),
        Command::Residuals { a, base, k, e, budget } => {
            let ds = canonical_digit_set(base)?;
            let target = residual_signatures_with_budget(&powers_oracle(a, &ds)?, *k, *e, *budget)?;
            let control = residual_signatures_with_budget(&powers_oracle(base, &ds)?, *k, *e, *budget)?;
            ok(json!({
                "target": { "set": format!("powers:{a}"), "report": target },
                "control": { "set": format!("powers:{base}"), "report": control },
            }))
        }
        Command::Pump { base, set, word, k, reps } => {
            let ds = canonical_digit_set(base)?;
            let oracle = set_oracle(set, &ds)?;
            let membership = zero_pump_probe(&oracle, word, *k, *reps)?;
            let first_out = membership.iter().position(|&m| !m);
            ok(json!({ "membership": membership, "first_excluded": first_out }))
        }
        Command::Dfa(sub) => dfa(sub),
        Command::VerifyPaper => {
            let outcomes = selfcheck::run_all();
            for o in &outcomes {
                eprintln!("{}", o.line());
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            let results = json!({ "criteria": outcomes, "passed": outcomes.len() - failed, "total": outcomes.len() });
            if failed == 0 {
                ok(results)
            } else {
                Ok((results, Status::Error(format!("{failed} of {} criteria failed", outcomes.len()))))
            }
        }
    }
}

fn scan_bases(norm_min: u64, norm_max: u64, radius2: u64, k_max: u32) -> Outcome {
    if norm_min < 5 {
        bail!("bases need norm >= 5");
    }
    let mut rows = Vec::new();
    let mut failed = 0;
    for b in selfcheck::bases_in_norm_range(norm_min, norm_max) {
        let digits = selfcheck::check_residue_system(&b);
        let roundtrip = selfcheck::check_roundtrip(&b, radius2);
        let length = selfcheck::check_length_bound(&b, radius2, k_max, 0);
        let digits_ok = digits.is_ok();
        let errors: Vec<String> =
            [digits.err(), roundtrip.as_ref().err().cloned(), length.as_ref().err().cloned()].into_iter().flatten().collect();
        let passed = errors.is_empty();
        failed += usize::from(!passed);
        rows.push(json!({
            "base": b,
            "norm": big(&b.norm()),
            "digit_count_ok": digits_ok,
            "roundtrip_points": roundtrip.as_ref().ok(),
            "m3": length.as_ref().ok(),
            "passed": passed,
            "errors": errors,
        }));
    }
    ok(json!({ "bases": rows.len(), "failed": failed, "all_passed": failed == 0, "table": rows }))
}

fn prefix(a: &GaussInt, b: &GaussInt, u: &GaussInt, n_min: u32, budget: u32, depth: usize) -> Outcome {
    let chain = match prefix_chain(a, b, u, n_min, budget, depth.max(1)) {
        Ok(c) => c,
        Err(DependenceError::NotFound { m_max }) => {
            return not_found(json!({ "searched": { "m_min": 1, "m_max": m_max, "n_min": n_min } }))
        }
        Err(e) => return Err(e.into()),
    };
    let ds = canonical_digit_set(b)?;
    let links = chain
        .iter()
        .map(|w| {
            Ok(json!({
                "m": w.m,
                "n": w.n,
                "u": w.u,
                "z": w.z,
                "word_am": w.word_am(a, &ds)?.to_string(),
                "word_u": ds.encode(&w.u)?.to_string(),
                "certified": w.verify(a, b)?,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    ok(json!({ "chain": links, "links": chain.len(), "complete": chain.len() >= depth.max(1) }))
}

fn dfa(cmd: &DfaCommand) -> Outcome {
    match cmd {
        DfaCommand::Run { file, word } => {
            let d = read_dfa(file)?;
            ok(json!({ "accepted": d.run(word)?, "states": d.state_count() }))
        }
        DfaCommand::Min { file, emit } => {
            let d = read_dfa(file)?;
            let m = d.minimize();
            write_dfa(&m, emit)?;
            ok(json!({ "states_before": d.state_count(), "states_after": m.state_count(), "dfa": dfa_json(&m)? }))
        }
        DfaCommand::Equiv { left, right } => {
            let (l, r) = (read_dfa(left)?, read_dfa(right)?);
            let witness = l.distinguishing_word(&r)?;
            ok(json!({
                "equivalent": witness.is_none(),
                "distinguishing_word": witness.as_deref().map(digits_json),
            }))
        }
        DfaCommand::Falsify { file, set, max_len, budget } => {
            let d = read_dfa(file)?;
            let oracle = set_oracle(set, d.alphabet())?;
            match dfa_oracle_disagreement_with_budget(&d, &oracle, *max_len, *budget)? {
                Some(w) => ok(json!({
                    "counterexample": digits_json(&w),
                    "dfa_accepts": d.run(&w)?,
                    "set_contains": oracle.accepts(&w)?,
                })),
                None => not_found(json!({ "searched_max_len": max_len })),
            }
        }
        DfaCommand::Build { kind, base, emit } => {
            let d = match kind {
                BuiltIn::Powers => powers_dfa(base)?,
                BuiltIn::Integers => integers_dfa(base)?,
            };
            write_dfa(&d, emit)?;
            ok(json!({ "states": d.state_count(), "dfa": dfa_json(&d)? }))
        }
    }
}
