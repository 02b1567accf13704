use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gaussauto::numeration::Word;
use gaussauto::GaussInt;
use num_bigint::BigInt;
use serde_json::json;

mod commands;
mod report;

use report::{Report, Status};

/// Gaussian-integer numeration systems, automata over digit alphabets, and
/// multiplicative-dependence witnesses. Every command prints a JSON report
/// `{command, inputs, results, status}`; exit code 0 = ok, 2 = not found,
/// 1 = error.
#[derive(Debug, Parser)]
#[command(name = "gaussauto", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Compact single-line JSON (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write the report to FILE instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical digit set of a base.
    Digits {
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
    },
    /// Representation of a Gaussian integer (most significant digit first).
    Encode {
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
        #[arg(allow_hyphen_values = true)]
        z: GaussInt,
    },
    /// Value of a comma-separated digit word ("" is the empty word).
    Decode {
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
        #[arg(allow_hyphen_values = true, value_parser = parse_word)]
        word: Word,
    },
    /// Digit-count, round-trip and length-bound checks for every base in a norm range.
    ScanBases {
        #[arg(long, default_value_t = 5)]
        norm_min: u64,
        #[arg(long, default_value_t = 20)]
        norm_max: u64,
        /// Squared radius of the round-trip and length-bound disc.
        #[arg(long, default_value_t = 1000)]
        radius2: u64,
        /// Largest k for the length-bound predicate.
        #[arg(long, default_value_t = 8)]
        k_max: u32,
    },
    /// Multiplicative dependence of two Gaussian integers.
    Deptest {
        #[arg(allow_hyphen_values = true)]
        a: GaussInt,
        #[arg(allow_hyphen_values = true)]
        b: GaussInt,
    },
    /// Smallest m <= budget with |a^m/b^n - u|^2 <= bound.
    Witness {
        #[arg(allow_hyphen_values = true)]
        a: GaussInt,
        #[arg(allow_hyphen_values = true)]
        b: GaussInt,
        #[arg(short, long, default_value = "1", allow_hyphen_values = true)]
        u: GaussInt,
        /// Bound on the squared error, as NUM/DEN.
        #[arg(long, default_value = "1/25", value_parser = parse_bound)]
        bound: Bound,
        /// Largest exponent m searched.
        #[arg(long, default_value_t = 256)]
        budget: u32,
    },
    /// Powers of a whose base-b words extend the word of u.
    Prefix {
        #[arg(allow_hyphen_values = true)]
        a: GaussInt,
        #[arg(allow_hyphen_values = true)]
        b: GaussInt,
        #[arg(short, long, default_value = "1", allow_hyphen_values = true)]
        u: GaussInt,
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        /// Largest exponent m searched per link.
        #[arg(long, default_value_t = 256)]
        budget: u32,
        /// Number of links w0 ⊏ w1 ⊏ … ⊏ w_depth to attempt.
        #[arg(long, default_value_t = 1)]
        depth: usize,
    },
    /// Residual class counts for the powers of a over base b, with the powers of b as control.
    Residuals {
        #[arg(allow_hyphen_values = true)]
        a: GaussInt,
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
        /// Prefix length.
        #[arg(short, default_value_t = 4)]
        k: usize,
        /// Extension length.
        #[arg(short, default_value_t = 3)]
        e: usize,
        /// Cap on |D|^(k+e).
        #[arg(long, default_value_t = gaussauto::automata::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Membership after inserting j·k zeros behind the leading digit, j = 0..=reps.
    Pump {
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
        /// `integers` or `powers:A`.
        #[arg(long, value_parser = parse_set)]
        set: SetSpec,
        #[arg(allow_hyphen_values = true, value_parser = parse_word)]
        word: Word,
        #[arg(short, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        reps: usize,
    },
    /// Automaton operations on DFA JSON files.
    #[command(subcommand)]
    Dfa(DfaCommand),
    /// Run the full acceptance suite.
    VerifyPaper,
}

#[derive(Debug, Subcommand)]
pub enum DfaCommand {
    /// Does the automaton accept the word?
    Run {
        file: PathBuf,
        #[arg(allow_hyphen_values = true, value_parser = parse_word)]
        word: Word,
    },
    /// Minimal equivalent automaton.
    Min {
        file: PathBuf,
        #[command(flatten)]
        emit: Emit,
    },
    /// Language equality, with the shortlex-first distinguishing word.
    Equiv { left: PathBuf, right: PathBuf },
    /// Shortlex-first word on which the automaton and a set disagree.
    Falsify {
        file: PathBuf,
        /// `integers` or `powers:A`.
        #[arg(long, value_parser = parse_set)]
        set: SetSpec,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = gaussauto::automata::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// One of the built-in automata.
    Build {
        #[arg(long, value_enum)]
        kind: BuiltIn,
        #[arg(short, long, allow_hyphen_values = true)]
        base: GaussInt,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Debug, Args)]
pub struct Emit {
    /// Also write the automaton itself, in DFA file format, to FILE.
    #[arg(long, value_name = "FILE")]
    pub dfa_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BuiltIn {
    /// Powers of the base: the words 1 0…0.
    Powers,
    /// Rational integers, for a real odd base >= 3.
    Integers,
}

#[derive(Debug, Clone)]
pub enum SetSpec {
    Integers,
    Powers(GaussInt),
}

impl std::fmt::Display for SetSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SetSpec::Integers => f.write_str("integers"),
            SetSpec::Powers(a) => write!(f, "powers:{a}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Bound {
    pub num: BigInt,
    pub den: BigInt,
}

fn parse_word(s: &str) -> Result<Word, String> {
    Word::parse(s).map_err(|e| e.to_string())
}

fn parse_set(s: &str) -> Result<SetSpec, String> {
    match s.split_once(':') {
        None if s == "integers" => Ok(SetSpec::Integers),
        Some(("powers", a)) => a.parse().map(SetSpec::Powers).map_err(|e| format!("{e}")),
        _ => Err(format!("expected `integers` or `powers:A`, got {s:?}")),
    }
}

fn parse_bound(s: &str) -> Result<Bound, String> {
    let (num, den) = s.split_once('/').ok_or_else(|| format!("expected NUM/DEN, got {s:?}"))?;
    let num: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
    if num.sign() == num_bigint::Sign::Minus || den.sign() != num_bigint::Sign::Plus {
        return Err("bound needs NUM >= 0 and DEN > 0".into());
    }
    Ok(Bound { num, den })
}

fn emit(report: &Report, pretty: bool, output: Option<&PathBuf>) -> ExitCode {
    let text = report.render(pretty);
    let code = report.status.exit_code();
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("gaussauto: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let argv: Vec<String> = std::env::args().skip(1).collect();
            let report = Report {
                command: "usage".into(),
                inputs: json!({ "argv": argv }),
                results: json!(null),
                status: Status::Error(e.render().to_string().trim_end().to_string()),
            };
            return emit(&report, false, None);
        }
    };
    let report = commands::execute(&cli.command);
    emit(&report, cli.pretty, cli.output.as_ref())
}
