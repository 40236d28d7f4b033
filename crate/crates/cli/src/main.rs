use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use ellis_core::covering::{
    asymptotic_pair_words, base_coincidence_rank, build_cover, cover_invariants, default_window,
    solve_cocycles, Cocycle, CocycleDoc, CoverReport,
};
use ellis_core::error::Error;
use ellis_core::group::{FiniteGroup, DEFAULT_BUDGET};
use ellis_core::kernel::{compare_kernels, kernel_report, AnalysisOptions, KernelReport};
use ellis_core::sturmian::{classification_report, factor_report, SturmianParams};
use ellis_core::subst::{Substitution, DEFAULT_MAX_POWER};

const DEFAULT_SAMPLE_WINDOW: u64 = 32;

/// Kernels of Ellis semigroups of substitution and Sturmian shifts.
#[derive(Debug, Parser)]
#[command(name = "ellis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
struct Flags {
    /// Largest power tried when simplifying or computing the height.
    #[arg(long, global = true, value_parser = positive)]
    max_power: Option<u64>,
    /// Factor length up to which complexity is inspected for periodicity.
    #[arg(long, global = true, value_parser = positive)]
    complexity_bound: Option<u64>,
    /// Word length searched for asymptotic pairs, or sample length for Sturmian words.
    #[arg(long, global = true, value_parser = positive)]
    window: Option<u64>,
    /// Number of candidate maps an isomorphism search may try.
    #[arg(long, global = true, value_parser = positive)]
    budget: Option<u64>,
    /// Coincidence rank of the base system when it cannot be derived.
    #[arg(long, global = true, value_parser = positive)]
    cr_base: Option<u64>,
    /// Print the JSON report instead of the text view.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kernel report of a substitution.
    Analyze { file: PathBuf },
    /// Compare the kernels of two substitutions.
    Compare { first: PathBuf, second: PathBuf },
    /// Group extension of a substitution along a cocycle.
    #[command(group(clap::ArgGroup::new("source").required(true).args(["cocycle", "search"])))]
    Cover {
        file: PathBuf,
        group: PathBuf,
        /// Cocycle to lift along.
        #[arg(long)]
        cocycle: Option<PathBuf>,
        /// Lift along every primitive cocycle.
        #[arg(long)]
        search: bool,
    },
    /// Cut type and Ellis semigroup of an (α, κ)-Sturmian system.
    SturmianClassify { params: PathBuf },
    /// Factor-map verdicts between two Sturmian systems.
    SturmianCompare { first: PathBuf, second: PathBuf },
}

fn positive(text: &str) -> Result<u64, String> {
    match text.parse::<u64>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

enum Failure {
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_substitution(path: &Path) -> Result<Substitution, Failure> {
    Ok(Substitution::from_json(&read(path)?)?)
}

fn load_params(path: &Path) -> Result<SturmianParams, Failure> {
    Ok(SturmianParams::from_json(&read(path)?)?)
}

fn options(flags: &Flags) -> AnalysisOptions {
    AnalysisOptions {
        max_power: flags.max_power.map_or(DEFAULT_MAX_POWER, |n| n as usize),
        complexity_bound: flags.complexity_bound.map(|n| n as usize),
        ..AnalysisOptions::default()
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn analyze(file: &Path, flags: &Flags) -> Result<Value, Failure> {
    let s = load_substitution(file)?;
    Ok(to_value(&kernel_report(&s, &options(flags))?))
}

fn compare(first: &Path, second: &Path, flags: &Flags) -> Result<Value, Failure> {
    let opts = options(flags);
    let a: KernelReport = kernel_report(&load_substitution(first)?, &opts)?;
    let b: KernelReport = kernel_report(&load_substitution(second)?, &opts)?;
    let budget = flags.budget.map_or(DEFAULT_BUDGET, u128::from);
    Ok(to_value(&compare_kernels(&a, &b, budget)?))
}

fn cover(
    file: &Path,
    group_file: &Path,
    cocycle_file: Option<&Path>,
    flags: &Flags,
) -> Result<Value, Failure> {
    let s = load_substitution(file)?;
    let group = FiniteGroup::from_json(&read(group_file)?)?;
    let window = flags.window.map_or_else(|| default_window(&s), |n| n as usize);
    let pairs = asymptotic_pair_words(&s, window)?;
    let cr_base = base_coincidence_rank(&s, flags.cr_base.map_or(1, |n| n as usize));
    let cocycles = match cocycle_file {
        Some(path) => {
            let doc: CocycleDoc = serde_json::from_str(&read(path)?).map_err(Error::from)?;
            vec![Cocycle::from_doc(&doc, &s, &group)?]
        }
        None => solve_cocycles(&s, &group),
    };
    let mut reports = Vec::new();
    for q in &cocycles {
        let result = build_cover(&s, &group, q)?;
        if cocycle_file.is_none() && !result.nontrivial {
            continue;
        }
        let result = cover_invariants(result, &group, &pairs, q, cr_base);
        reports.push(CoverReport::new(&s, &group, q, &pairs, &result, cr_base));
    }
    Ok(to_value(&reports))
}

fn sturmian_classify(file: &Path, flags: &Flags) -> Result<Value, Failure> {
    let params = load_params(file)?;
    let window = flags.window.unwrap_or(DEFAULT_SAMPLE_WINDOW) as usize;
    Ok(to_value(&classification_report(&params, window)?))
}

fn sturmian_compare(first: &Path, second: &Path) -> Result<Value, Failure> {
    Ok(to_value(&factor_report(&load_params(first)?, &load_params(second)?)))
}

/// Text view of a JSON report: one `key: value` line per scalar.
fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, item) in map {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}{key}: {}\n", scalar(item)));
                } else {
                    out.push_str(&format!("{pad}{key}:\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else if item.as_array().is_some_and(|row| row.iter().all(is_scalar)) {
                    let row: Vec<String> = item.as_array().unwrap().iter().map(scalar).collect();
                    out.push_str(&format!("{pad}- [{}]\n", row.join(", ")));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(item, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn is_scalar(value: &Value) -> bool {
    !(value.is_object() || value.is_array())
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let flags = &cli.flags;
    let outcome = match &cli.command {
        Command::Analyze { file } => analyze(file, flags),
        Command::Compare { first, second } => compare(first, second, flags),
        Command::Cover {
            file,
            group,
            cocycle,
            ..
        } => cover(file, group, cocycle.as_deref(), flags),
        Command::SturmianClassify { params } => sturmian_classify(params, flags),
        Command::SturmianCompare { first, second } => sturmian_compare(first, second),
    };
    match outcome {
        Ok(report) => {
            let text = if flags.json {
                serde_json::to_string_pretty(&report).expect("json") + "\n"
            } else {
                let mut text = String::new();
                render(&report, 0, &mut text);
                text
            };
            emit(&text);
            ExitCode::SUCCESS
        }
        Err(Failure::Core(e)) if e.is_domain() => {
            let object = json!({ "kind": e.kind(), "message": e.to_string() });
            emit(&(serde_json::to_string_pretty(&object).expect("json") + "\n"));
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
