//! The `branchkit` command line: `branch`, `verify` and `dim`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.

use std::ffi::OsString;
use std::io::Write;
use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::Error;
use crate::harmonics::{harmonic_dim, HarmonicLabel};
use crate::spectrum::{parse_rational, ParamSet, Rational};
use crate::theorems::{branch_with, BranchRequest, Subgroup, DEFAULT_INDEX_BOUND};
use crate::verify::{run_suite, tally, Grid, RunOptions, Suite};
use crate::weights::{weyl_dim, GroupLabel, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "branchkit",
    version,
    about = "Branching laws of the unitary principal series of GL(n,C)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the spectrum of a restriction.
    Branch(BranchArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Dimension of a harmonic space or highest-weight module.
    Dim(DimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct BranchArgs {
    #[arg(long)]
    n: usize,
    /// K, H1, H2, H3, H4, H5 or H6.
    #[arg(long)]
    subgroup: String,
    #[arg(long, allow_hyphen_values = true)]
    k: i64,
    /// Exact rational "a/b" or integer.
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = parse_lambda)]
    lambda: Rational,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// List countable families up to degree/index D.
    #[arg(long, value_name = "D")]
    truncate: Option<u32>,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// "a..b" or a single value.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    n: Option<RangeInclusive<i64>>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    m: Option<RangeInclusive<i64>>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
    k: Option<RangeInclusive<i64>>,
    #[arg(long)]
    max_degree: Option<u32>,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: u32,
    /// Record wall-clock milliseconds (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct DimArgs {
    /// "R:N:j", "C:n:a:b", "H:m:a:b" or "SU2:j".
    #[arg(long, conflicts_with_all = ["group", "weight"], required_unless_present = "group")]
    harmonic: Option<String>,
    /// Group label such as "U(3)" or "Sp(2)xU(1)", with --weight.
    #[arg(long, requires = "weight")]
    group: Option<String>,
    /// Highest weight such as "(1,0,-1)".
    #[arg(long, allow_hyphen_values = true, requires = "group")]
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = Emit::Text)]
    emit: Emit,
}

fn parse_lambda(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, String> {
    let num = |x: &str| {
        x.trim()
            .parse::<i64>()
            .map_err(|_| format!("malformed range '{s}' (expected a..b or a single integer)"))
    };
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => num(s)?..=num(s)?,
    };
    if r.is_empty() {
        return Err(format!("empty range '{s}'"));
    }
    Ok(r)
}

/// Runs the command line `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Branch(a) => cmd_branch(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Dim(a) => cmd_dim(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "branchkit: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

fn cmd_branch(a: BranchArgs, out: &mut dyn Write) -> CmdResult {
    let subgroup = Subgroup::from_parts(&a.subgroup, a.p, a.q, a.m)?;
    let req = BranchRequest::new(a.n, subgroup, a.k, a.lambda);
    let index_bound = a.truncate.map_or(DEFAULT_INDEX_BOUND, i64::from);
    let spectrum = branch_with(&req, index_bound)?;
    match a.emit {
        Emit::Json => {
            let shown = match a.truncate {
                Some(d) => spectrum.truncated(i64::from(d)),
                None => spectrum,
            };
            writeln!(out, "{}", shown.to_json())?;
        }
        Emit::Text => {
            writeln!(out, "{}", spectrum.provenance)?;
            for c in &spectrum.components {
                writeln!(out, "  {c}")?;
                if let (Some(d), ParamSet::Progression { .. }) = (a.truncate, &c.params) {
                    let listed = c.params.values_up_to(&Rational::from(i64::from(d)));
                    let listed: Vec<String> = listed
                        .unwrap_or_default()
                        .iter()
                        .map(ToString::to_string)
                        .collect();
                    writeln!(out, "    up to {d}: {{{}}}", listed.join(", "))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let grid = Grid {
        n: a.n,
        m: a.m,
        k: a.k,
        max_degree: a.max_degree,
    };
    let opts = RunOptions {
        jobs: a.jobs as usize,
        timing: a.timing,
    };
    let reports = run_suite(a.suite, &grid, &opts)?;
    let (pass, fail, skipped) = tally(&reports);
    match a.emit {
        Emit::Json => writeln!(out, "{}", serde_json::to_string_pretty(&reports)?)?,
        Emit::Text => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
            writeln!(out, "{pass} passed, {fail} failed, {skipped} skipped")?;
        }
    }
    Ok(if fail > 0 { EXIT_FAIL } else { EXIT_OK })
}

fn cmd_dim(a: DimArgs, out: &mut dyn Write) -> CmdResult {
    let (what, dim) = match (&a.harmonic, &a.group, &a.weight) {
        (Some(spec), _, _) => {
            let label: HarmonicLabel = spec.parse()?;
            (spec.clone(), harmonic_dim(label)?)
        }
        (None, Some(group), Some(weight)) => {
            let group: GroupLabel = group.parse()?;
            let weight: Weight = weight.parse()?;
            (format!("{group} {weight}"), weyl_dim(&group, &weight)?)
        }
        _ => return Err("dim needs --harmonic or --group with --weight".into()),
    };
    match a.emit {
        Emit::Json => writeln!(
            out,
            "{}",
            json!({ "input": what, "dimension": dim.to_string() })
        )?,
        Emit::Text => writeln!(out, "{dim}")?,
    }
    Ok(EXIT_OK)
}
