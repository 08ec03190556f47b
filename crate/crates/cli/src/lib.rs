//! `szbeal` command-line front end.
//!
//! Exit status: 0 for a clean run, 2 when the run found something (a
//! counterexample candidate, an illegal rewrite, a search violation or a
//! semantics disagreement), 1 for usage, input or guard errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use szbeal_core::bealcore::{
    self, parse_claims, BealClaim, Classification, PositiveIntegerPolicy, VerdictReport,
};
use szbeal_core::rewrite::{self, Verdict};
use szbeal_core::search::{self, SearchBounds, SearchResult};
use szbeal_core::semantics::{self, SAMPLE_X};
use szbeal_core::szval::{RoundingMode, SzValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FOUND: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "szbeal",
    version,
    about = "Signed-zero semantics, rewrite legality and Beal-equation adjudication"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Adjudicate claimed solutions of A^x + B^y = C^z.
    Adjudicate(AdjudicateArgs),
    /// Search for solutions with bases up to N and exponents 3..=K.
    Search(SearchArgs),
    /// Print the signed-zero rule table with model and host results.
    SemanticsTable(SemanticsArgs),
    /// Check whether a rewrite `LHS => RHS` preserves every result bit.
    CheckRewrite(RewriteArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    #[default]
    Strict,
    ZeroInclusive,
    #[value(alias = "signed-zero-inclusive")]
    SignedZero,
}

impl From<PolicyArg> for PositiveIntegerPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Strict => PositiveIntegerPolicy::Strict,
            PolicyArg::ZeroInclusive => PositiveIntegerPolicy::ZeroInclusive,
            PolicyArg::SignedZero => PositiveIntegerPolicy::SignedZeroInclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    #[default]
    ToNearest,
    TowardNegative,
}

impl From<RoundingArg> for RoundingMode {
    fn from(r: RoundingArg) -> Self {
        match r {
            RoundingArg::ToNearest => RoundingMode::ToNearest,
            RoundingArg::TowardNegative => RoundingMode::TowardNegative,
        }
    }
}

#[derive(Debug, Args)]
pub struct AdjudicateArgs {
    /// Claim file, or `-` for stdin.
    #[arg(required_unless_present = "claim", conflicts_with = "claim")]
    pub input: Option<PathBuf>,
    /// Inline claim record, e.g. "A=1 B=+0 C=1 x=3 y=4 z=5". Repeatable.
    #[arg(long)]
    pub claim: Vec<String>,
    /// Policy for records that do not name one.
    #[arg(long, value_enum, default_value_t)]
    pub policy: PolicyArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_base: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub max_exp: u32,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SemanticsArgs {
    #[arg(long, value_enum, default_value_t)]
    pub rounding: RoundingArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RewriteArgs {
    /// Rule in the form `LHS => RHS`.
    #[arg(allow_hyphen_values = true)]
    pub rule: String,
    #[arg(long, value_enum, default_value_t)]
    pub rounding: RoundingArg,
    /// Comma-separated test values; defaults to 1,-1,2.5,-2.5,+0,-0,+inf,-inf,nan.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub domain: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// Output of one command: what to print and how to exit.
#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn error(msg: impl std::fmt::Display) -> Outcome {
        Outcome {
            stderr: format!("error: {msg}\n"),
            code: EXIT_ERROR,
            ..Outcome::default()
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, stdin),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stderr: rendered,
                    code,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    stdout: rendered,
                    code,
                    ..Outcome::default()
                }
            }
        }
    }
}

pub fn run(cli: Cli, stdin: &mut dyn Read) -> Outcome {
    match cli.command {
        Command::Adjudicate(a) => run_adjudicate(&a, stdin),
        Command::Search(a) => run_search(&a),
        Command::SemanticsTable(a) => run_semantics_table(&a),
        Command::CheckRewrite(a) => run_check_rewrite(&a),
    }
}

/// Machine-readable adjudication record, one JSON object per line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjudicationRecord {
    pub line: usize,
    pub claim: BealClaim,
    pub policy: PositiveIntegerPolicy,
    pub report: VerdictReport,
}

fn read_input(path: &PathBuf, stdin: &mut dyn Read) -> Result<String, String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        stdin
            .read_to_string(&mut text)
            .map_err(|e| format!("reading stdin: {e}"))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| format!("reading {}: {e}", path.display()))?;
    }
    Ok(text)
}

pub fn run_adjudicate(args: &AdjudicateArgs, stdin: &mut dyn Read) -> Outcome {
    let text = match &args.input {
        Some(path) => match read_input(path, stdin) {
            Ok(t) => t,
            Err(e) => return Outcome::error(e),
        },
        None => args.claim.join("\n"),
    };
    let records = match parse_claims(&text) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let default_policy: PositiveIntegerPolicy = args.policy.into();

    let mut out = Outcome::default();
    let mut found = false;
    for rec in records {
        let policy = rec.policy.unwrap_or(default_policy);
        let report = match bealcore::adjudicate(&rec.claim, policy) {
            Ok(r) => r,
            Err(e) => return Outcome::error(format!("line {}: {e}", rec.line)),
        };
        found |= report.classification == Classification::CounterexampleCandidate;
        match args.format {
            Format::Text => out
                .stdout
                .push_str(&render_report(rec.line, &rec.claim, policy, &report)),
            Format::Json => {
                let record = AdjudicationRecord {
                    line: rec.line,
                    claim: rec.claim,
                    policy,
                    report,
                };
                out.stdout
                    .push_str(&serde_json::to_string(&record).expect("serializable"));
                out.stdout.push('\n');
            }
        }
    }
    out.code = if found { EXIT_FOUND } else { EXIT_OK };
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_report(
    line: usize,
    claim: &BealClaim,
    policy: PositiveIntegerPolicy,
    r: &VerdictReport,
) -> String {
    let mut s = String::new();
    let flags = r.base_admissibility;
    let _ = writeln!(
        s,
        "claim (line {line}): A={} B={} C={} x={} y={} z={}",
        claim.a, claim.b, claim.c, claim.x, claim.y, claim.z
    );
    let _ = writeln!(s, "  policy: {policy}");
    let _ = writeln!(s, "  exponents valid: {}", yes_no(r.exponents_valid));
    let _ = writeln!(
        s,
        "  bases admissible: {} (A {}, B {}, C {})",
        yes_no(r.bases_admissible),
        yes_no(flags.a),
        yes_no(flags.b),
        yes_no(flags.c)
    );
    let _ = writeln!(s, "  equation holds: {}", yes_no(r.equation_holds));
    let cpf = match (&r.common_prime_factor, r.all_bases_zero) {
        (Some(p), _) => p.to_string(),
        (None, true) => "none (all bases zero)".to_string(),
        (None, false) => "none".to_string(),
    };
    let _ = writeln!(s, "  common prime factor: {cpf}");
    let _ = writeln!(s, "  verdict: {}", r.summary(claim));
    s
}

/// Machine-readable search output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub max_base: u32,
    pub max_exponent: u32,
    #[serde(flatten)]
    pub result: SearchResult,
}

pub fn run_search(args: &SearchArgs) -> Outcome {
    let bounds = match SearchBounds::new(args.max_base, args.max_exp) {
        Ok(b) => b,
        Err(e) => return Outcome::error(e),
    };
    let result = match search::search_solutions(&bounds) {
        Ok(r) => r,
        Err(e) => return Outcome::error(e),
    };
    let code = if result.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_FOUND
    };
    let stdout = match args.format {
        Format::Json => {
            let record = SearchRecord {
                max_base: args.max_base,
                max_exponent: args.max_exp,
                result,
            };
            serde_json::to_string(&record).expect("serializable") + "\n"
        }
        Format::Text => render_search(&bounds, &result),
    };
    Outcome {
        stdout,
        code,
        ..Outcome::default()
    }
}

fn render_search(bounds: &SearchBounds, r: &SearchResult) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "search: bases 1..={}, exponents 3..={}",
        bounds.max_base(),
        bounds.max_exponent()
    );
    if r.solutions.is_empty() {
        s.push_str("no solutions\n");
        return s;
    }
    let _ = writeln!(s, "{:<24} common prime", "(A,B,C;x,y,z)");
    for sol in &r.solutions {
        let cp = sol
            .common_prime
            .map_or("none".to_string(), |p| p.to_string());
        let _ = writeln!(s, "{:<24} {cp}", sol.to_string());
    }
    let _ = writeln!(
        s,
        "{} solutions, {} violations",
        r.solutions.len(),
        r.violations.len()
    );
    for v in &r.violations {
        let _ = writeln!(s, "VIOLATION {v}: no common prime factor");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemanticsRecord {
    pub rule: String,
    pub model: SzValue,
    pub expected: SzValue,
    /// Host result in the same spelling; absent when not host-checkable.
    pub host: Option<SzValue>,
    pub agrees: bool,
}

pub fn run_semantics_table(args: &SemanticsArgs) -> Outcome {
    let rm: RoundingMode = args.rounding.into();
    let rows = semantics::evaluate_table(rm);
    let mut out = Outcome::default();
    let mut all_ok = true;
    if args.format == Format::Text {
        let _ = writeln!(out.stdout, "# rounding: {rm}; x = {SAMPLE_X}");
    }
    for row in rows {
        let expected = row.rule.expected(rm);
        let ok = row.matches_expected(rm) && row.host_agrees() != Some(false);
        all_ok &= ok;
        match args.format {
            Format::Text => {
                let mut line = format!("{} = {} [model]", row.rule.label, row.model);
                match (row.host, row.host_agrees()) {
                    (Some(h), Some(agree)) => {
                        let _ = write!(
                            line,
                            " {} [host] {}",
                            SzValue::from_f64(h),
                            if agree { "OK" } else { "MISMATCH" }
                        );
                    }
                    _ => line.push_str(" (host: n/a)"),
                }
                if !row.matches_expected(rm) {
                    let _ = write!(line, " EXPECTED {expected}");
                }
                out.stdout.push_str(&line);
                out.stdout.push('\n');
            }
            Format::Json => {
                let record = SemanticsRecord {
                    rule: row.rule.label.to_string(),
                    model: row.model,
                    expected,
                    host: row.host.map(SzValue::from_f64),
                    agrees: ok,
                };
                out.stdout
                    .push_str(&serde_json::to_string(&record).expect("serializable"));
                out.stdout.push('\n');
            }
        }
    }
    out.code = if all_ok { EXIT_OK } else { EXIT_FOUND };
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRecord {
    pub rule: String,
    pub rounding: RoundingMode,
    pub verdict: Verdict,
}

fn caret_line(src: &str, column: usize) -> String {
    format!("  {src}\n  {}^\n", " ".repeat(column.saturating_sub(1)))
}

pub fn run_check_rewrite(args: &RewriteArgs) -> Outcome {
    let rm: RoundingMode = args.rounding.into();
    let domain: Vec<SzValue> = match &args.domain {
        None => rewrite::default_domain(),
        Some(items) => {
            let parsed: Result<Vec<SzValue>, _> =
                items.iter().map(|s| s.parse::<SzValue>()).collect();
            match parsed {
                Ok(d) => d,
                Err(e) => return Outcome::error(format!("--domain: {e}")),
            }
        }
    };
    let rule = match rewrite::parse_rule(&args.rule) {
        Ok(r) => r,
        Err(e) => {
            let mut out = Outcome::error(format!("parse error: {e}"));
            out.stderr.push_str(&caret_line(&args.rule, e.column));
            return out;
        }
    };
    let verdict = match rewrite::check_rewrite(&rule, &domain, rm) {
        Ok(v) => v,
        Err(e) => return Outcome::error(e),
    };
    let code = if verdict.is_legal() {
        EXIT_OK
    } else {
        EXIT_FOUND
    };
    let stdout = match args.format {
        Format::Text => format!("{verdict}\n"),
        Format::Json => {
            let record = RewriteRecord {
                rule: args.rule.clone(),
                rounding: rm,
                verdict,
            };
            serde_json::to_string(&record).expect("serializable") + "\n"
        }
    };
    Outcome {
        stdout,
        code,
        ..Outcome::default()
    }
}

/// Writes an outcome to the process streams and returns its exit code.
pub fn emit(outcome: &Outcome) -> i32 {
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    outcome.code
}
