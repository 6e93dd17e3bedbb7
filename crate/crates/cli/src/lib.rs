//! The `motivic` command-line tool.
//!
//! Every command produces one [`OutputRecord`]. With `--json` it is printed
//! as a JSON object with the fields `command`, `input`, `result`, `status`
//! (`"ok"` or `"error"`) and `diagnostics`; otherwise as plain text. Classes
//! inside `result` appear as `{"text": ..., "terms": [...]}`.
//!
//! Exit codes: 0 success, 1 usage error, 2 parse error, 3 computation error
//! (overflow, budget, non-integral fit), 4 verification mismatch. Any
//! nonzero exit also writes its diagnostics to stderr.

mod exec;
mod record;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::Value;

use motivic_core::dsl::parse_script_bytes;
use motivic_core::oracle::{Budget, PrimeField};

pub use exec::{
    biratdiff_cmd, count_cmd, count_problem_cmd, demo_lesieutre, equiv_cmd, execute, modl_cmd, normalize_cmd,
    parse_checked, rational_cmd, verify_cmd, Outcome,
};
pub use record::{class_value, ExitCode, OutputRecord, Status};

#[derive(Debug, Parser)]
#[command(name = "motivic", version, about = "Classes of varieties in the Grothendieck ring")]
struct Cli {
    /// Print machine-readable JSON records
    #[arg(long, global = true)]
    json: bool,
    /// Cap on candidate points or tuples per enumeration
    #[arg(long, global = true, env = "MOTIVIC_BUDGET")]
    budget: Option<u64>,
    /// Accepted for reproducibility; every computation is deterministic
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Print the canonical class of an expression
    Normalize { expr: String },
    /// Decide whether two expressions have the same class
    Equiv { left: String, right: String },
    /// Print the class modulo L
    Modl { expr: String },
    /// Look for M with [X] = [P^d] + L*M
    Rational {
        expr: String,
        #[arg(long)]
        dim: u32,
    },
    /// Look for M with [X] - [Y] = L*M
    Biratdiff { left: String, right: String },
    /// Count F_p-points of an expression
    Count {
        expr: String,
        #[arg(long, value_parser = parse_prime)]
        p: u32,
    },
    /// Count over several primes, interpolate, and compare with the class
    Verify {
        expr: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,7", value_parser = parse_prime)]
        primes: Vec<u32>,
    },
    /// Count solutions of a JSON problem file
    CountProblem { file: PathBuf },
    /// Worked examples
    Demo {
        #[command(subcommand)]
        demo: Demo,
    },
    /// Execute a .mot script
    Run { file: PathBuf },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Blow up P^3 at m points in two configurations and compare
    Lesieutre {
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        points: u32,
    },
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    PrimeField::new(p).map(|_| p).map_err(|e| e.to_string())
}

/// Runs the tool with `argv` (program name first), printing to the process's
/// stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    ExitCode::Usage.code()
                }
            };
        }
    };
    let budget = cli.budget.map_or(Budget::DEFAULT, Budget);
    let outcome = dispatch(&cli.command, budget);
    emit(&outcome, cli.json, out, err);
    outcome.code.code()
}

fn emit(outcome: &Outcome, json: bool, out: &mut dyn Write, err: &mut dyn Write) {
    let rec = &outcome.record;
    if json {
        let _ = writeln!(out, "{}", rec.to_json());
    } else if rec.status == Status::Ok || !rec.result.is_null() {
        let _ = write!(out, "{}", rec.to_plain());
    }
    if outcome.code != ExitCode::Success {
        for d in &rec.diagnostics {
            let _ = writeln!(err, "{d}");
        }
    }
}

fn dispatch(cmd: &Cmd, budget: Budget) -> Outcome {
    match cmd {
        Cmd::Normalize { expr } => with_expr("normalize", expr, |e| normalize_cmd(e, expr)),
        Cmd::Equiv { left, right } => {
            let input = format!("{left}, {right}");
            with_pair("equiv", left, right, |a, b| equiv_cmd(a, b, &input))
        }
        Cmd::Modl { expr } => with_expr("modl", expr, |e| modl_cmd(e, expr)),
        Cmd::Rational { expr, dim } => with_expr("rational", expr, |e| rational_cmd(e, *dim, expr)),
        Cmd::Biratdiff { left, right } => {
            let input = format!("{left}, {right}");
            with_pair("biratdiff", left, right, |a, b| biratdiff_cmd(a, b, &input))
        }
        Cmd::Count { expr, p } => with_expr("count", expr, |e| count_cmd(e, *p, budget, expr)),
        Cmd::Verify { expr, primes } => with_expr("verify", expr, |e| verify_cmd(e, primes, budget, expr)),
        Cmd::CountProblem { file } => {
            let input = file.display().to_string();
            match std::fs::read_to_string(file) {
                Ok(text) => count_problem_cmd(&text, budget, &input),
                Err(e) => usage("count-problem", &input, format!("cannot read {input}: {e}")),
            }
        }
        Cmd::Demo {
            demo: Demo::Lesieutre { points },
        } => demo_lesieutre(*points, budget),
        Cmd::Run { file } => run_script(file, budget),
    }
}

fn usage(command: &str, input: &str, message: String) -> Outcome {
    Outcome {
        record: OutputRecord::error(command, input, vec![format!("usage error: {message}")]),
        code: ExitCode::Usage,
    }
}

fn parse_failure(command: &str, input: &str, diagnostics: Vec<String>) -> Outcome {
    Outcome {
        record: OutputRecord::error(command, input, diagnostics),
        code: ExitCode::Parse,
    }
}

fn with_expr(command: &str, text: &str, f: impl FnOnce(&motivic_core::VarietyExpr) -> Outcome) -> Outcome {
    match parse_checked(text) {
        Ok(e) => f(&e),
        Err(d) => parse_failure(command, text, d),
    }
}

fn with_pair(
    command: &str,
    left: &str,
    right: &str,
    f: impl FnOnce(&motivic_core::VarietyExpr, &motivic_core::VarietyExpr) -> Outcome,
) -> Outcome {
    let input = format!("{left}, {right}");
    match (parse_checked(left), parse_checked(right)) {
        (Ok(a), Ok(b)) => f(&a, &b),
        (Err(d), _) | (_, Err(d)) => parse_failure(command, &input, d),
    }
}

/// Executes a script, stopping at the first failing command. The record's
/// `result` lists one record per executed command.
pub fn run_script(path: &std::path::Path, budget: Budget) -> Outcome {
    let input = path.display().to_string();
    let bytes = match std::fs::read(path) {
        Ok(b) => b,
        Err(e) => return usage("run", &input, format!("cannot read {input}: {e}")),
    };
    run_script_source(&bytes, &input, budget)
}

/// [`run_script`] on script text already in memory; `name` labels it.
pub fn run_script_source(bytes: &[u8], name: &str, budget: Budget) -> Outcome {
    let program = match parse_script_bytes(bytes) {
        Ok(p) => p,
        Err(e) => return parse_failure("run", name, vec![format!("{name}:{e}")]),
    };
    let mut records = Vec::new();
    let mut code = ExitCode::Success;
    let mut diagnostics = Vec::new();
    for (i, cmd) in program.commands.iter().enumerate() {
        let outcome = execute(cmd, budget);
        let failed = outcome.code != ExitCode::Success;
        if failed {
            code = outcome.code;
            diagnostics.push(format!(
                "{name}: command {} ({}) failed",
                i + 1,
                exec::command_name(cmd)
            ));
            diagnostics.extend(outcome.record.diagnostics.iter().cloned());
        }
        records.push(serde_json::to_value(&outcome.record).expect("records serialize"));
        if failed {
            break;
        }
    }
    let status = if code == ExitCode::Success { Status::Ok } else { Status::Error };
    Outcome {
        record: OutputRecord {
            command: "run".into(),
            input: name.into(),
            result: Value::Array(records),
            status,
            diagnostics,
        },
        code,
    }
}
