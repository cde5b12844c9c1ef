//! Reference DIMACS solver for tests and for runs without an external solver.
//!
//! Usage: `acyc-refsat FILE`. Prints `s SATISFIABLE` with a `v` line, or
//! `s UNSATISFIABLE`, and exits with 10 or 20 respectively.

use std::fs::File;
use std::io::{BufReader, Write};
use std::process::ExitCode;

use anyhow::{Context, Result};
use varisat::Solver;

fn solve(path: &str) -> Result<ExitCode> {
    let file = File::open(path).with_context(|| format!("opening {path}"))?;
    let mut solver = Solver::new();
    solver.add_dimacs_cnf(BufReader::new(file)).with_context(|| format!("reading {path}"))?;
    let sat = solver.solve().context("solver failure")?;
    let mut out = std::io::BufWriter::new(std::io::stdout().lock());
    if sat {
        writeln!(out, "s SATISFIABLE")?;
        write!(out, "v")?;
        for l in solver.model().unwrap_or_default() {
            write!(out, " {}", l.to_dimacs())?;
        }
        writeln!(out, " 0")?;
        out.flush()?;
        Ok(ExitCode::from(10))
    } else {
        writeln!(out, "s UNSATISFIABLE")?;
        out.flush()?;
        Ok(ExitCode::from(20))
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let [path] = args.as_slice() else {
        eprintln!("usage: acyc-refsat FILE");
        return ExitCode::from(2);
    };
    match solve(path) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("acyc-refsat: {e:#}");
            ExitCode::from(1)
        }
    }
}
