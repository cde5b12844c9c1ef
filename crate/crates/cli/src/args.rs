use std::path::PathBuf;

use acyclic_cnf::checkers::Checker;
use acyclic_cnf::families::FamilyKind;
use clap::{Args, Parser, Subcommand};

/// Environment variable holding the default `--solver-cmd`.
pub const SOLVER_ENV: &str = "ACYC_SOLVER_CMD";

#[derive(Debug, Parser)]
#[command(name = "acyc", version, about = "Generate, solve and tabulate acyclicity-checker benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a suite of DIMACS instances with metadata sidecars.
    Gen(GenArgs),
    /// Run a solver on every instance of a suite and record the results as CSV.
    Run(RunArgs),
    /// Check a solver model against its instance.
    Verify(VerifyArgs),
    /// Solved-instance counts per solver and checker.
    Table(ReportArgs),
    /// Cactus-plot series: sorted solve times with cumulative index.
    Cactus(ReportArgs),
    /// Formula sizes per checker and n.
    Sizes(SizesArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// `no-sink` or `supervisor`.
    #[arg(long, value_parser = parse_family)]
    pub family: FamilyKind,
    /// Vertex counts: `5`, `2,4,8`, `2..50` or `2..50:4`.
    #[arg(long, default_value = "2..50", value_parser = parse_num_list)]
    pub n: NumList,
    /// Zero-min-out probabilities in percent (supervisor only).
    #[arg(long, default_value = "10..90:10", value_parser = parse_num_list)]
    pub p: NumList,
    /// Suite seed; each instance derives its own from it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated checker names; all applicable checkers by default.
    #[arg(long, value_parser = parse_checkers)]
    pub checker: Option<CheckerList>,
    /// Created if missing; existing files are overwritten.
    #[arg(long)]
    pub outdir: PathBuf,
    /// Remove repeated literals and tautologies before writing.
    #[arg(long)]
    pub simplify: bool,
    /// Leave out the degenerate index tuples of tc1, tc2, tc3 and fw.
    #[arg(long)]
    pub skip_degenerate: bool,
    /// Require supervisor bounds to be realizable without self-loops.
    #[arg(long)]
    pub no_self_loops: bool,
    /// Print the file manifest without writing anything.
    #[arg(long)]
    pub dry_run: bool,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Suite directory written by `gen`.
    #[arg(long)]
    pub suite: PathBuf,
    /// Shell command with an `{input}` placeholder and an optional `{output}`
    /// placeholder for solvers that write their answer to a file.
    #[arg(long, env = SOLVER_ENV)]
    pub solver_cmd: String,
    /// Solver label in the records; the command's first word by default.
    #[arg(long)]
    pub label: Option<String>,
    /// Wall-clock limit per instance, in seconds.
    #[arg(long, default_value_t = 500.0)]
    pub timeout: f64,
    /// Address-space limit per solver run, in MB (0 for none).
    #[arg(long, default_value_t = 2048)]
    pub memlimit: u64,
    /// Solver runs at a time.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Only run these checkers.
    #[arg(long, value_parser = parse_checkers)]
    pub checker: Option<CheckerList>,
    /// CSV destination; standard output by default.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Instance file written by `gen`.
    #[arg(long)]
    pub cnf: PathBuf,
    /// Solver output holding the model (`-` for standard input).
    #[arg(long)]
    pub model: PathBuf,
    /// Instance metadata; found next to the CNF by default.
    #[arg(long)]
    pub instance: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Run record files written by `run`.
    #[arg(required = true)]
    pub records: Vec<PathBuf>,
    /// CSV destination; standard output by default.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SizesArgs {
    /// Comma-separated checker names; all by default.
    #[arg(long, value_parser = parse_checkers)]
    pub checker: Option<CheckerList>,
    #[arg(long, default_value = "4,8,16,32,64", value_parser = parse_num_list)]
    pub n: NumList,
    /// Give up on a circuit checker once it passes this many AND gates.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub skip_degenerate: bool,
    /// CSV destination; standard output by default.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumList(pub Vec<u64>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckerList(pub Vec<Checker>);

fn parse_family(s: &str) -> Result<FamilyKind, String> {
    s.parse().map_err(|e: acyclic_cnf::Error| e.to_string())
}

fn parse_checkers(s: &str) -> Result<CheckerList, String> {
    if s == "all" {
        return Ok(CheckerList(Checker::ALL.to_vec()));
    }
    s.split(',').map(|c| c.trim().parse().map_err(|e: acyclic_cnf::Error| e.to_string())).collect::<Result<_, _>>().map(CheckerList)
}

fn parse_num_list(s: &str) -> Result<NumList, String> {
    parse_list(s).map(NumList)
}

/// Parse `a`, `a..b`, `a..b:step`, or comma-separated combinations; ranges
/// are inclusive.
pub fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("`{t}` is not a non-negative integer"));
    let mut out = Vec::new();
    for part in s.split(',') {
        let (range, step) = match part.split_once(':') {
            Some((r, st)) => (r, num(st)?),
            None => (part, 1),
        };
        if step == 0 {
            return Err("step must be positive".into());
        }
        match range.split_once("..") {
            Some((a, b)) => {
                let (a, b) = (num(a)?, num(b)?);
                if a > b {
                    return Err(format!("empty range {a}..{b}"));
                }
                out.extend((a..=b).step_by(step as usize));
            }
            None => out.push(num(range)?),
        }
    }
    Ok(out)
}
