//! Benchmark harness for the acyclicity encodings: suite generation,
//! supervised solver runs with model verification, and CSV reports.

pub mod args;
pub mod gen;
mod pool;
pub mod report;
pub mod run;
pub mod suite;

use std::fs::{self, File};
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use acyclic_cnf::checkers::Checker;
use acyclic_cnf::cnf::{parse_solver_output, SolverAnswer};
use anyhow::{bail, Context, Result};

use args::{Cli, Command};

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn load_records(paths: &[std::path::PathBuf]) -> Result<Vec<run::RunRecord>> {
    let mut all = Vec::new();
    for p in paths {
        let f = File::open(p).with_context(|| format!("opening {}", p.display()))?;
        all.extend(report::read_records(f).with_context(|| format!("reading {}", p.display()))?);
    }
    Ok(all)
}

/// Execute a parsed command line.
pub fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen(a) => {
            let summary = gen::cmd_gen(&a, &mut io::stdout().lock())?;
            if !a.dry_run {
                eprintln!("wrote {} instances, {} encodings to {}", summary.instances, summary.files, a.outdir.display());
            }
        }
        Command::Run(a) => {
            let spec = run::SolverSpec::new(a.label, &a.solver_cmd, a.timeout, a.memlimit)?;
            let checkers: Option<Vec<Checker>> = a.checker.map(|c| c.0);
            let outcome = run::cmd_run(&a.suite, &spec, a.jobs, checkers.as_deref())?;
            report::write_records(&outcome.records, sink(a.out.as_deref())?)?;
            if let Some(msg) = outcome.failure {
                eprintln!("{msg}");
                eprintln!("run aborted: a SAT answer failed verification");
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify(a) => {
            let text = if a.model.as_os_str() == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                fs::read_to_string(&a.model).with_context(|| format!("reading {}", a.model.display()))?
            };
            let model = match parse_solver_output(&text) {
                SolverAnswer::Sat(m) => m,
                SolverAnswer::Unsat => bail!("solver output says UNSAT; there is no model to verify"),
                SolverAnswer::Unknown(why) => bail!("no model in solver output: {why}"),
            };
            let instance = match a.instance {
                Some(p) => p,
                None => default_instance(&a.cnf)?,
            };
            let r = run::verify_answer(&a.cnf, &instance, &model)?;
            print!("{r}");
            if !r.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Table(a) => {
            let rows = report::cmd_table(&load_records(&a.records)?);
            report::write_csv(&report::TABLE_FIELDS, &rows, sink(a.out.as_deref())?)?;
        }
        Command::Cactus(a) => {
            let rows = report::cmd_cactus(&load_records(&a.records)?);
            report::write_csv(&report::CACTUS_FIELDS, &rows, sink(a.out.as_deref())?)?;
        }
        Command::Sizes(a) => {
            let checkers = a.checker.map(|c| c.0).unwrap_or_else(|| Checker::ALL.to_vec());
            let ns: Vec<usize> = a.n.0.iter().map(|&n| n as usize).collect();
            let rows = report::cmd_sizes(&checkers, &ns, a.budget, a.skip_degenerate)?;
            report::write_csv(&report::SIZE_FIELDS, &rows, sink(a.out.as_deref())?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// `<dir>/<id>.instance.toml` for a CNF whose comments name instance `<id>`.
fn default_instance(cnf: &Path) -> Result<std::path::PathBuf> {
    let text = fs::read_to_string(cnf).with_context(|| format!("reading {}", cnf.display()))?;
    let id = text
        .lines()
        .take_while(|l| l.starts_with('c'))
        .find_map(|l| l.strip_prefix("c instance "))
        .map(str::trim)
        .with_context(|| format!("{} names no instance; pass --instance", cnf.display()))?;
    Ok(suite::instance_path(cnf.parent().unwrap_or(Path::new(".")), id))
}
