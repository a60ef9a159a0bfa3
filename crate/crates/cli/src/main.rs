//! `tqftwb`: batch front end. Every run prints (or writes) one JSON report;
//! exit status is 0 when the suite passes, 1 when a check fails and 2 on bad
//! input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tqftwb_core::cob2::{canonical_term, normalize, parse_and_check};
use tqftwb_core::frobenius::{check_axioms, evaluate, genus0_abelian, CheckOptions};
use tqftwb_core::groupoid::{AbelianModel, AbelianSpan};
use tqftwb_core::lie::{
    coad_formula_check, companion_checks, parse_family, slice_report, slodowy_checks, stabilizer_family_check,
    CheckReport, Family,
};

#[derive(Parser, Debug)]
#[command(
    name = "tqftwb",
    version,
    about = "Cobordism normal forms, span-valued TQFT checks and exact slice checks"
)]
struct Cli {
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cobordism terms.
    Cob {
        #[command(subcommand)]
        action: CobAction,
    },
    /// Evaluate terms in an abelian model.
    Tqft {
        #[command(subcommand)]
        action: TqftAction,
    },
    /// Frobenius relation suite.
    Frobenius {
        #[command(subcommand)]
        action: FrobeniusAction,
    },
    /// Exact coadjoint checks for one family.
    Lie(LieArgs),
}

#[derive(Subcommand, Debug)]
enum CobAction {
    Normalize {
        #[arg(long)]
        term: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Expect {
    Id,
    Genus0,
}

#[derive(Subcommand, Debug)]
enum TqftAction {
    Eval {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
}

#[derive(Subcommand, Debug)]
enum FrobeniusAction {
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, env = "TQFTWB_SEED", default_value_t = 0)]
        seed: u64,
        /// Random decomposition samples.
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Sln,
    #[value(name = "sl2-semidirect")]
    Sl2Semidirect,
    #[value(name = "sl3-centralizer")]
    Sl3Centralizer,
}

#[derive(Args, Debug)]
struct LieArgs {
    #[arg(value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 25)]
    trials: usize,
    #[arg(long, env = "TQFTWB_SEED", default_value_t = 0)]
    seed: u64,
}

/// Bad input: exit 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    options: Value,
    passed: bool,
    result: T,
}

struct Outcome {
    command: &'static str,
    passed: bool,
    text: String,
}

fn envelope<T: Serialize>(
    command: &'static str,
    options: Value,
    passed: bool,
    result: T,
) -> Result<Outcome, InputError> {
    let env = Envelope {
        tool: "tqftwb",
        version: env!("CARGO_PKG_VERSION"),
        command,
        options,
        passed,
        result,
    };
    let mut text = serde_json::to_string_pretty(&env)?;
    text.push('\n');
    Ok(Outcome { command, passed, text })
}

fn load_model(path: &Path) -> Result<AbelianModel, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    AbelianModel::from_json(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn cob_normalize(term: &str) -> Result<Outcome, InputError> {
    let (t, sig) = parse_and_check(term)?;
    let nf = normalize(&t)?;
    let result = json!({
        "term": t.to_string(),
        "signature": sig.to_string(),
        "normal_form": nf.canonical(),
        "genus": nf.total_genus(),
        "components": nf.components.len(),
        "canonical_term": canonical_term(&nf).to_string(),
    });
    envelope("cob normalize", json!({ "term": term }), true, result)
}

fn tqft_eval(model_path: &Path, term: &str, expect: Option<Expect>) -> Result<Outcome, InputError> {
    let model = load_model(model_path)?;
    let (t, sig) = parse_and_check(term)?;
    let nf = normalize(&t)?;
    let span = evaluate(&model, &t)?;
    let (label, target) = match expect {
        None => {
            let c = canonical_term(&nf);
            (c.to_string(), evaluate(&model, &c)?)
        }
        Some(Expect::Id) => {
            if sig.dom != sig.cod {
                return Err(InputError(format!("--expect id needs equal arities, term has {sig}")));
            }
            (format!("id({})", sig.dom), AbelianSpan::identity(&model, sig.dom))
        }
        Some(Expect::Genus0) => (
            format!("genus0({},{})", sig.dom, sig.cod),
            genus0_abelian(&model, sig.dom, sig.cod)?,
        ),
    };
    let fp = span.fingerprint();
    let equal = fp == target.fingerprint();
    let verdict = format!(
        "{}: {label}",
        if equal {
            "fingerprint-equal"
        } else {
            "fingerprint-differs"
        }
    );
    let result = json!({
        "model": model.describe(),
        "term": t.to_string(),
        "signature": sig.to_string(),
        "normal_form": nf.canonical(),
        "fingerprint": fp.canonical(),
        "expected_fingerprint": target.fingerprint().canonical(),
        "cardinality": span.cardinality().to_string(),
        "verdict": verdict,
    });
    let options = json!({ "model": model_path.display().to_string(), "term": term, "expect": expect });
    envelope("tqft eval", options, equal, result)
}

fn frobenius_check(model_path: &Path, seed: u64, samples: usize) -> Result<Outcome, InputError> {
    let model = load_model(model_path)?;
    let opts = CheckOptions {
        seed,
        samples,
        ..CheckOptions::default()
    };
    let report = check_axioms(&model, &opts);
    let options = json!({ "model": model_path.display().to_string(), "seed": seed, "samples": samples });
    envelope("frobenius check", options, report.passed, report)
}

fn lie_suites(family: Family, trials: usize, seed: u64) -> Result<Vec<CheckReport>, InputError> {
    let mut out = Vec::new();
    match family {
        Family::Sl(n) => {
            out.push(companion_checks(n, trials, seed)?);
            if n >= 3 {
                out.push(slodowy_checks(n, trials, seed)?);
            }
            out.push(slice_report(family, trials, seed)?);
            out.push(coad_formula_check(family, trials, seed)?);
        }
        _ => {
            out.push(coad_formula_check(family, trials, seed)?);
            out.push(stabilizer_family_check(family, trials, seed)?);
            out.push(slice_report(family, trials, seed)?);
        }
    }
    Ok(out)
}

fn lie(args: &LieArgs) -> Result<Outcome, InputError> {
    let name = match args.family {
        FamilyArg::Sln => "sln",
        FamilyArg::Sl2Semidirect => "sl2-semidirect",
        FamilyArg::Sl3Centralizer => "sl3-centralizer",
    };
    if args.n.is_some() && !matches!(args.family, FamilyArg::Sln) {
        return Err(InputError(format!("--n only applies to sln, not {name}")));
    }
    if args.trials == 0 {
        return Err(InputError("--trials must be at least 1".into()));
    }
    let family = parse_family(name, args.n)?;
    let reports = lie_suites(family, args.trials, args.seed)?;
    let passed = reports.iter().all(|r| r.passed);
    let options = json!({ "family": name, "n": args.n, "trials": args.trials, "seed": args.seed });
    envelope(
        "lie",
        options,
        passed,
        json!({ "family": family.name(), "reports": reports }),
    )
}

fn run(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Cob {
            action: CobAction::Normalize { term },
        } => cob_normalize(term),
        Command::Tqft {
            action: TqftAction::Eval { model, term, expect },
        } => tqft_eval(model, term, *expect),
        Command::Frobenius {
            action: FrobeniusAction::Check { model, seed, samples },
        } => frobenius_check(model, *seed, *samples),
        Command::Lie(args) => lie(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(&cli) {
        Ok(out) => out,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &out.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{}: {}", out.command, if out.passed { "pass" } else { "fail" });
        }
        None => print!("{}", out.text),
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
