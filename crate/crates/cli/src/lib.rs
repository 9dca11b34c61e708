//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the text to print together with the exit code:
//! 0 when everything requested passed, 1 when a checked property failed, 2 on
//! input or validation errors.

use std::ffi::OsString;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use finsupp::finset::FiniteFunction;
use finsupp::theory::{self, ModificationKind, TheoryError};
use finsupp::{zoo, CheckReport, FunctorInstance, TabulatedFunctor};
use serde_json::{json, Value};
use thiserror::Error;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest accepted `--max-size`.
pub const HARD_MAX_SIZE: usize = 5;
pub const CHECK_NAMES: &[&str] = &["laws", "mono", "epi", "intersections", "support"];

#[derive(Debug, Parser)]
#[command(
    name = "finsupp",
    version,
    about = "Finitary set functors: ∅-modifications, supports and exhaustive checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Min,
    Max,
}

impl From<Mode> for ModificationKind {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Min => ModificationKind::Minimal,
            Mode::Max => ModificationKind::Maximal,
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    /// `zoo:<name>`, a `.ffn` presentation, or a `.json` tabulation
    input: String,
    #[arg(long, default_value_t = 3)]
    max_size: usize,
    /// Emit machine-readable JSON
    #[arg(long)]
    json: bool,
    /// Apply the minimal or maximal ∅-modification to the input first
    #[arg(long, value_enum)]
    modify: Option<Mode>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the exhaustive property checks
    Check {
        #[command(flatten)]
        common: Common,
        /// Checks to skip: laws, mono, epi, intersections, support
        #[arg(long, value_delimiter = ',')]
        skip: Vec<String>,
        /// Seed for the shuffled removal orders of the support check
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include elapsed times in the report
        #[arg(long)]
        timings: bool,
    },
    /// List the elements of F(size)
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        size: usize,
    },
    /// Print the action of F on a function
    Map {
        #[command(flatten)]
        common: Common,
        /// Comma-separated table of the function
        #[arg(long = "fn", allow_hyphen_values = true)]
        table: String,
        #[arg(long)]
        dom: usize,
        #[arg(long)]
        cod: usize,
    },
    /// Compute the support of an element of F(size)
    Supp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        element: String,
    },
    /// Show the value at ∅ of an ∅-modification and its maps out of ∅
    Modify {
        input: String,
        #[arg(long, visible_alias = "modify", value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        max_size: usize,
        #[arg(long)]
        json: bool,
    },
    /// Largest support size over sets of size ≤ max-size
    Degree {
        #[command(flatten)]
        common: Common,
    },
    /// Write the tabulated data file
    Export {
        #[command(flatten)]
        common: Common,
        /// Output path; stdout when omitted
        #[arg(short, long)]
        output: Option<String>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Input(String),
    /// A property of the functor failed; carries the text already rendered.
    #[error("{message}")]
    Property { message: String, output: String },
}

impl CliError {
    fn input(e: impl std::fmt::Display) -> Self {
        CliError::Input(e.to_string())
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut stderr = String::new();
    match execute(cli.command, &mut stderr) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr,
        },
        Err(CliError::Input(message)) => {
            stderr.push_str(&format!("error: {message}\n"));
            Outcome {
                code: 2,
                stdout: String::new(),
                stderr,
            }
        }
        Err(CliError::Property { message, output }) => {
            stderr.push_str(&format!("property violation: {message}\n"));
            Outcome {
                code: 1,
                stdout: output,
                stderr,
            }
        }
    }
}

/// Resolves `zoo:<name>`, a `.json` tabulation, or a `.ffn` presentation.
pub fn load_input(input: &str) -> Result<FunctorInstance, String> {
    if let Some(name) = input.strip_prefix("zoo:") {
        return zoo::instance(name).ok_or_else(|| {
            let known: Vec<&str> = zoo::names().collect();
            format!("unknown zoo functor `{name}` (known: {})", known.join(", "))
        });
    }
    let path = Path::new(input);
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {input}: {e}"))?;
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("input")
        .to_string();
    if path.extension().is_some_and(|ext| ext == "json") {
        let table = TabulatedFunctor::from_json(&text).map_err(|e| format!("{input}: {e}"))?;
        Ok(FunctorInstance::from_tabulation(stem, table))
    } else {
        let presentation =
            finsupp::parse_presentation(&text).map_err(|e| format!("{input}: {e}"))?;
        Ok(FunctorInstance::from_presentation(presentation))
    }
}

fn validate_max_size(
    max_size: usize,
    needs_modification: bool,
    stderr: &mut String,
) -> Result<(), CliError> {
    if max_size > HARD_MAX_SIZE {
        return Err(CliError::Input(format!(
            "--max-size {max_size} exceeds the cap of {HARD_MAX_SIZE}"
        )));
    }
    if needs_modification && max_size < 2 {
        return Err(CliError::Input(
            "∅-modifications need --max-size of at least 2".into(),
        ));
    }
    if max_size == HARD_MAX_SIZE {
        stderr.push_str("warning: --max-size 5 can take a long time\n");
    }
    Ok(())
}

fn prepare(common: &Common, stderr: &mut String) -> Result<FunctorInstance, CliError> {
    validate_max_size(common.max_size, common.modify.is_some(), stderr)?;
    let base = load_input(&common.input).map_err(CliError::Input)?;
    match common.modify {
        None => Ok(base),
        Some(mode) => theory::modify(&base, mode.into()).map_err(CliError::input),
    }
}

fn check_size(size: usize) -> Result<(), CliError> {
    if size > HARD_MAX_SIZE {
        return Err(CliError::Input(format!(
            "--size {size} exceeds the cap of {HARD_MAX_SIZE}"
        )));
    }
    Ok(())
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn pretty(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json renders");
    text.push('\n');
    text
}

fn report_json(report: &CheckReport, timings: bool) -> Value {
    let mut value = serde_json::to_value(report).expect("report serializes");
    if timings {
        value["elapsed_ms"] = json!(report.elapsed.as_secs_f64() * 1000.0);
    }
    value
}

fn render_reports(
    functor: &FunctorInstance,
    max_size: usize,
    reports: &[CheckReport],
    json_output: bool,
    timings: bool,
) -> String {
    if json_output {
        let checks: Vec<Value> = reports.iter().map(|r| report_json(r, timings)).collect();
        pretty(&json!({
            "tool_version": TOOL_VERSION,
            "functor": functor.name(),
            "max_size": max_size,
            "checks": checks,
        }))
    } else {
        let mut out = format!("functor {} (max size {max_size})\n", functor.name());
        for report in reports {
            out.push_str(&report.to_string());
            if timings {
                out.push_str(&format!(
                    "  elapsed: {:.3} ms\n",
                    report.elapsed.as_secs_f64() * 1000.0
                ));
            }
        }
        out
    }
}

/// Turns a monomorphicity refusal into an exit-1 outcome with the failing
/// check report attached.
fn refusal(
    functor: &FunctorInstance,
    bound: usize,
    error: TheoryError,
    json_output: bool,
) -> CliError {
    if !error.is_property_violation() {
        return CliError::input(error);
    }
    let report = match theory::check_monomorphic(functor, bound) {
        Ok(report) => report,
        Err(e) => return CliError::input(e),
    };
    let output = render_reports(
        functor,
        bound,
        std::slice::from_ref(&report),
        json_output,
        false,
    );
    CliError::Property {
        message: error.to_string(),
        output,
    }
}

fn execute(command: Command, stderr: &mut String) -> Result<(i32, String), CliError> {
    match command {
        Command::Check {
            common,
            skip,
            seed,
            timings,
        } => {
            if let Some(unknown) = skip.iter().find(|s| !CHECK_NAMES.contains(&s.as_str())) {
                return Err(CliError::Input(format!(
                    "unknown check `{unknown}` (known: {})",
                    CHECK_NAMES.join(", ")
                )));
            }
            let functor = prepare(&common, stderr)?;
            let max = common.max_size;
            let seeds = [seed, seed.wrapping_add(1), seed.wrapping_add(2)];
            let mut reports = Vec::new();
            for &name in CHECK_NAMES.iter().filter(|n| !skip.iter().any(|s| s == *n)) {
                let report = match name {
                    "laws" => theory::check_laws(&functor, max),
                    "mono" => theory::check_monomorphic(&functor, max),
                    "epi" => theory::check_epimorphic(&functor, max),
                    "intersections" => theory::check_intersections(&functor, max),
                    _ => theory::check_support_family(&functor, max, &seeds),
                }
                .map_err(CliError::input)?;
                reports.push(report);
            }
            let output = render_reports(&functor, max, &reports, common.json, timings);
            let failed: Vec<&str> = reports
                .iter()
                .filter(|r| !r.passed())
                .map(|r| r.name.as_str())
                .collect();
            if failed.is_empty() {
                Ok((0, output))
            } else {
                Err(CliError::Property {
                    message: format!("failed checks: {}", failed.join(", ")),
                    output,
                })
            }
        }
        Command::Eval { common, size } => {
            check_size(size)?;
            let functor = prepare(&common, stderr)?;
            let names = functor.element_names(size).map_err(CliError::input)?;
            let output = if common.json {
                pretty(&json!({ "functor": functor.name(), "size": size, "elements": names }))
            } else {
                format!("F({size}) = {}\n", braces(&names))
            };
            Ok((0, output))
        }
        Command::Map {
            common,
            table,
            dom,
            cod,
        } => {
            check_size(dom.max(cod))?;
            let functor = prepare(&common, stderr)?;
            let entries = if table.trim().is_empty() {
                Vec::new()
            } else {
                table
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| CliError::Input(format!("bad table entry `{t}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?
            };
            let f = FiniteFunction::new(dom, cod, entries).map_err(CliError::input)?;
            let mapped = functor.morphism(&f).map_err(CliError::input)?;
            let (source, target) = (
                functor.element_names(dom).map_err(CliError::input)?,
                functor.element_names(cod).map_err(CliError::input)?,
            );
            let output = if common.json {
                let action: serde_json::Map<String, Value> = source
                    .iter()
                    .enumerate()
                    .map(|(i, name)| (name.clone(), json!(target[mapped.apply(i)])))
                    .collect();
                pretty(
                    &json!({ "functor": functor.name(), "function": f, "table": mapped.table(), "action": action }),
                )
            } else {
                let mut out = format!("F{f}\n");
                for (i, name) in source.iter().enumerate() {
                    out.push_str(&format!("  {name} ↦ {}\n", target[mapped.apply(i)]));
                }
                out
            };
            Ok((0, output))
        }
        Command::Supp {
            common,
            size,
            element,
        } => {
            check_size(size)?;
            let functor = prepare(&common, stderr)?;
            let index = functor
                .find_element(size, &element)
                .map_err(CliError::input)?;
            let result = theory::support(&functor, size, index)
                .map_err(|e| refusal(&functor, size.max(1), e, common.json))?;
            let output = if common.json {
                pretty(&json!({ "functor": functor.name(), "result": result }))
            } else {
                format!(
                    "{}\nwitness: {} ∈ F({})\n",
                    result.support,
                    result.witness_name,
                    result.support.len()
                )
            };
            Ok((0, output))
        }
        Command::Modify {
            input,
            mode,
            max_size,
            json: json_output,
        } => {
            validate_max_size(max_size, true, stderr)?;
            let base = load_input(&input).map_err(CliError::Input)?;
            let kind = ModificationKind::from(mode);
            let modified = theory::modify(&base, kind).map_err(CliError::input)?;
            let empty = modified.element_names(0).map_err(CliError::input)?;
            let mut maps = Vec::new();
            for y in 1..=max_size {
                let m = theory::empty_morphism(&modified, y).map_err(CliError::input)?;
                let target = modified.element_names(y).map_err(CliError::input)?;
                let pairs: Vec<(String, String)> = empty
                    .iter()
                    .enumerate()
                    .map(|(i, n)| (n.clone(), target[m.apply(i)].clone()))
                    .collect();
                maps.push((y, pairs));
            }
            let symbol = kind.symbol();
            let output = if json_output {
                let maps: Vec<Value> = maps
                    .iter()
                    .map(|(y, pairs)| {
                        let action: serde_json::Map<String, Value> =
                            pairs.iter().map(|(a, b)| (a.clone(), json!(b))).collect();
                        json!({ "cod": y, "action": action })
                    })
                    .collect();
                pretty(&json!({
                    "functor": base.name(),
                    "mode": kind,
                    "empty_value": empty,
                    "base_empty_value": base.element_names(0).map_err(CliError::input)?,
                    "empty_morphisms": maps,
                }))
            } else {
                let mut out = format!("F{symbol}∅ = {}\n", braces(&empty));
                for (y, pairs) in &maps {
                    let body: Vec<String> =
                        pairs.iter().map(|(a, b)| format!("{a} ↦ {b}")).collect();
                    out.push_str(&format!(
                        "  ∅→{y}: {}\n",
                        if body.is_empty() {
                            "(empty)".into()
                        } else {
                            body.join(", ")
                        }
                    ));
                }
                out
            };
            Ok((0, output))
        }
        Command::Degree { common } => {
            let functor = prepare(&common, stderr)?;
            let degree = theory::degree(&functor, common.max_size)
                .map_err(|e| refusal(&functor, common.max_size.max(1), e, common.json))?;
            let output = if common.json {
                pretty(
                    &json!({ "functor": functor.name(), "probe": common.max_size, "degree": degree }),
                )
            } else {
                format!(
                    "{} ({})\n",
                    degree.value,
                    if degree.exact { "exact" } else { "lower bound" }
                )
            };
            Ok((0, output))
        }
        Command::Export { common, output } => {
            let functor = prepare(&common, stderr)?;
            let text = functor
                .tabulate(common.max_size)
                .map_err(CliError::input)?
                .to_json();
            match output {
                None => Ok((0, text)),
                Some(path) => {
                    std::fs::write(&path, text)
                        .map_err(|e| CliError::Input(format!("cannot write {path}: {e}")))?;
                    Ok((0, format!("wrote {path}\n")))
                }
            }
        }
    }
}
