//! The `pmv` command line.
//!
//! Exit codes: 0 on success, 1 when a property fails (the counterexample is
//! printed) or a precondition does not hold, 2 on usage and parse errors.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::error::Error;
use crate::grid::{Budget, DEFAULT_DEPTH, DEFAULT_POINTS, DEFAULT_SEED};
use crate::ideals::{enumerate_ideals, is_maximal, is_normal, is_prime, is_representable, DEFAULT_IDEAL_BOUND};
use crate::report::SuiteReport;
use crate::search::{counterexample_search, MAX_SEARCH_SIZE};
use crate::spec::{parse_element, parse_spec, AlgebraSpec};
use crate::sqrt::{classify, find_sqrt, is_strict, run_property_suite, SqrtSearch};

#[derive(Debug, Parser)]
#[command(name = "pmv", version, about = "Exact pseudo MV-algebras and their square roots")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Sample points on infinite carriers.
    #[arg(long, global = true, default_value_t = DEFAULT_POINTS, value_name = "N")]
    budget: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED, value_name = "S")]
    seed: u64,
    /// Iteration depth for orbits.
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH, value_name = "D")]
    depth: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms A1–A8.
    CheckAxioms { spec: PathBuf },
    /// Decide whether a square root exists, optionally evaluating it.
    Sqrt {
        spec: PathBuf,
        #[arg(long, value_name = "E")]
        element: Option<String>,
    },
    /// Split into Boolean and strict parts.
    Classify { spec: PathBuf },
    /// Run a named property suite.
    Suite { name: String, spec: PathBuf },
    /// List the ideals of a finite algebra.
    Ideals { spec: PathBuf },
    /// Search small chains and products of chains for a violator.
    Counterexample {
        #[arg(long)]
        property: String,
        #[arg(long, default_value_t = MAX_SEARCH_SIZE, value_name = "K")]
        max_size: usize,
    },
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommandOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(stdout: String, code: i32) -> Self {
        CommandOutput { stdout, stderr: String::new(), code }
    }
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Usage(_)
        | Error::Rational(_)
        | Error::UnknownSuite(_)
        | Error::DescriptorMismatch(_)
        | Error::NotInAlgebra { .. }
        | Error::InvalidUnit(_)
        | Error::InvalidDescriptor(_)
        | Error::InvalidTable(_) => 2,
        _ => 1,
    }
}

fn load(path: &Path) -> Result<AlgebraSpec, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_spec(&text).map_err(|e| match e {
        Error::Parse { line, column, message } => format!("{}:{line}:{column}: {message}", path.display()),
        e => format!("{}: {e}", path.display()),
    })
}

fn emit(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).expect("json values serialize");
        s.push('\n');
        s
    } else {
        text
    }
}

fn report(json: bool, rep: &SuiteReport) -> CommandOutput {
    let text = format!("{rep}\n");
    let value = serde_json::to_value(rep).expect("reports serialize");
    CommandOutput::ok(emit(json, value, text), if rep.passed() { 0 } else { 1 })
}

fn sqrt_cmd(cli: &Cli, m: &Algebra, budget: &Budget, element: Option<&str>) -> Result<CommandOutput, Error> {
    let x = element.map(|t| parse_element(m, t)).transpose()?;
    let w = match find_sqrt(m, budget)? {
        SqrtSearch::Root(w) => w,
        SqrtSearch::NoRoot(n) => {
            let value = json!({ "root": Value::Null, "reason": n.reason });
            return Ok(CommandOutput::ok(emit(cli.json, value, format!("{}\n", n.reason)), 1));
        }
    };
    let r0 = w.apply(m, &m.zero())?;
    let strict = is_strict(m, &w)?;
    let mut text = format!("square root: {w}; r(0)={}; strict={strict}\n", m.show(&r0));
    let mut value = json!({
        "root": w.name(),
        "verification": w.verification(),
        "r0": m.show(&r0),
        "strict": strict,
    });
    if let Some(x) = x {
        let y = w.apply(m, &x)?;
        text.push_str(&format!("r({})={}\n", m.show(&x), m.show(&y)));
        value["element"] = json!(m.show(&x));
        value["value"] = json!(m.show(&y));
    }
    Ok(CommandOutput::ok(emit(cli.json, value, text), 0))
}

fn classify_cmd(cli: &Cli, m: &Algebra, budget: &Budget) -> Result<CommandOutput, Error> {
    let w = match find_sqrt(m, budget)? {
        SqrtSearch::Root(w) => w,
        SqrtSearch::NoRoot(n) => {
            let value = json!({ "kind": Value::Null, "reason": n.reason });
            return Ok(CommandOutput::ok(emit(cli.json, value, format!("{}\n", n.reason)), 1));
        }
    };
    let c = classify(m, &w, budget)?;
    let value = json!({
        "kind": c.kind,
        "w": m.show(&c.w),
        "v": m.show(&c.v),
        "boolean_part": c.boolean_part.as_ref().map(|p| p.description.clone()),
        "strict_part": c.strict_part.as_ref().map(|p| p.description.clone()),
    });
    Ok(CommandOutput::ok(emit(cli.json, value, format!("{}\n", c.summary(m))), 0))
}

fn ideals_cmd(cli: &Cli, m: &Algebra) -> Result<CommandOutput, Error> {
    let ideals = enumerate_ideals(m, DEFAULT_IDEAL_BOUND, None)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    let (mut normal, mut prime, mut maximal) = (0, 0, 0);
    for i in &ideals {
        let members: Vec<String> = i.members().iter().map(|x| m.show(x)).collect();
        let (n, p, mx) = (is_normal(m, i.members())?, is_prime(m, i.members())?, is_maximal(m, i.members())?);
        normal += n as usize;
        prime += p as usize;
        maximal += mx as usize;
        let mut flags: Vec<&str> = Vec::new();
        for (on, name) in [(n, "normal"), (p, "prime"), (mx, "maximal")] {
            if on {
                flags.push(name);
            }
        }
        text.push_str(&format!("{{{}}} {}\n", members.join(", "), flags.join(" ")));
        rows.push(json!({ "members": members, "normal": n, "prime": p, "maximal": mx }));
    }
    let representable = is_representable(m)?;
    text.push_str(&format!(
        "{} ideals, {prime} prime, {maximal} maximal, {normal} normal; representable={representable}\n",
        ideals.len()
    ));
    let value = json!({ "ideals": rows, "representable": representable });
    Ok(CommandOutput::ok(emit(cli.json, value, text), 0))
}

fn counterexample_cmd(cli: &Cli, property: &str, max_size: usize) -> Result<CommandOutput, Error> {
    match counterexample_search(property, max_size)? {
        None => {
            let value = json!({ "property": property, "max_size": max_size, "found": Value::Null });
            Ok(CommandOutput::ok(emit(cli.json, value, format!("no counterexample up to size {max_size}\n")), 0))
        }
        Some(v) => {
            let spec = AlgebraSpec::of(&Algebra::table(v.table.clone()))?;
            let value = json!({
                "property": property,
                "max_size": max_size,
                "found": v.description,
                "reason": v.reason,
                "table": spec,
            });
            Ok(CommandOutput::ok(emit(cli.json, value, format!("{v}\n{}", spec.to_text())), 1))
        }
    }
}

fn dispatch(cli: &Cli) -> CommandOutput {
    let budget = Budget::with_points(cli.budget).seed(cli.seed).depth(cli.depth);
    let spec_path = match &cli.command {
        Command::CheckAxioms { spec }
        | Command::Sqrt { spec, .. }
        | Command::Classify { spec }
        | Command::Suite { spec, .. }
        | Command::Ideals { spec } => Some(spec),
        Command::Counterexample { .. } => None,
    };
    let spec = match spec_path.map(|p| load(p)).transpose() {
        Ok(s) => s,
        Err(msg) => return CommandOutput { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 2 },
    };
    let m = spec.as_ref().map(AlgebraSpec::algebra);
    let result = match (&cli.command, m) {
        (Command::CheckAxioms { .. }, Some(m)) => Ok(report(cli.json, &m.check_axioms(&budget))),
        (Command::Sqrt { element, .. }, Some(m)) => sqrt_cmd(cli, m, &budget, element.as_deref()),
        (Command::Classify { .. }, Some(m)) => classify_cmd(cli, m, &budget),
        (Command::Suite { name, .. }, Some(m)) => run_property_suite(name, m, None, &budget).map(|r| report(cli.json, &r)),
        (Command::Ideals { .. }, Some(m)) => ideals_cmd(cli, m),
        (Command::Counterexample { property, max_size }, _) => counterexample_cmd(cli, property, *max_size),
        _ => unreachable!("every spec command loaded its spec"),
    };
    result.unwrap_or_else(|e| CommandOutput { stdout: String::new(), stderr: format!("error: {e}\n"), code: exit_code(&e) })
}

/// Runs `pmv` with the arguments after the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> CommandOutput {
    let args = std::iter::once("pmv").chain(argv.iter().map(AsRef::as_ref));
    match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                CommandOutput { stdout: String::new(), stderr: text, code: 2 }
            } else {
                CommandOutput::ok(text, 0)
            }
        }
    }
}
