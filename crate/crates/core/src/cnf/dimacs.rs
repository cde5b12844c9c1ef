//! DIMACS CNF with the variable map embedded as comment lines.
//!
//! ```text
//! c <free-form note>
//! c edge <i> <j> <var>
//! c aux <role> <var>
//! p cnf <vars> <clauses>
//! <lit> ... 0
//! ```

use std::fmt::Write as _;
use std::io::Write;

use super::{Clause, CnfFormula, EdgeVarMap, Lit, Role, Var, VarMap};
use crate::{Error, Result};

/// Write `f` in DIMACS form. Output depends only on the inputs.
pub fn write_dimacs<W: Write>(f: &CnfFormula, map: &VarMap, sink: W) -> Result<()> {
    write_dimacs_annotated(f, map, &[], sink)
}

/// As [`write_dimacs`], with extra `c` note lines first.
pub fn write_dimacs_annotated<W: Write>(
    f: &CnfFormula,
    map: &VarMap,
    notes: &[String],
    sink: W,
) -> Result<()> {
    let mut out = std::io::BufWriter::new(sink);
    for note in notes {
        for line in note.lines() {
            writeln!(out, "c {line}")?;
        }
    }
    if let Some(edges) = map.edges() {
        for (i, j, v) in edges.iter() {
            writeln!(out, "c edge {i} {j} {v}")?;
        }
    }
    for (role, v) in map.aux_by_var() {
        writeln!(out, "c aux {role} {v}")?;
    }
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses())?;
    let mut line = String::new();
    for c in f.clauses() {
        line.clear();
        for l in c.lits() {
            let _ = write!(line, "{l} ");
        }
        line.push('0');
        writeln!(out, "{line}")?;
    }
    out.flush()?;
    Ok(())
}

/// A parsed DIMACS file.
#[derive(Clone, Debug)]
pub struct DimacsFile {
    pub formula: CnfFormula,
    /// Edge and auxiliary roles recovered from `c edge` / `c aux` lines.
    pub varmap: VarMap,
    /// Comment lines that are not part of the variable map, without the `c `.
    pub notes: Vec<String>,
}

pub fn parse_dimacs(text: &str) -> Result<DimacsFile> {
    let err = |line: usize, message: String| Error::Dimacs { line, message };
    let mut header: Option<(u32, usize)> = None;
    let mut formula = CnfFormula::new();
    let mut edges: Vec<(usize, usize, Var)> = Vec::new();
    let mut aux: Vec<(Role, Var)> = Vec::new();
    let mut notes = Vec::new();
    let mut pending: Vec<Lit> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if !(rest.is_empty() || rest.starts_with(char::is_whitespace)) {
                return Err(err(lineno, format!("unexpected token `{line}`")));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match fields.as_slice() {
                ["edge", i, j, v] => {
                    let parse = |s: &str| {
                        s.parse::<usize>()
                            .map_err(|_| err(lineno, format!("bad edge record `{line}`")))
                    };
                    let var = Var::new(parse(v)? as u32)?;
                    edges.push((parse(i)?, parse(j)?, var));
                }
                ["aux", role, v] => {
                    let role: Role = role.parse()?;
                    let var = v
                        .parse::<u32>()
                        .map_err(|_| err(lineno, format!("bad aux record `{line}`")))?;
                    aux.push((role, Var::new(var)?));
                }
                _ => notes.push(rest.trim_start().to_string()),
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            if header.is_some() {
                return Err(err(lineno, "duplicate problem line".into()));
            }
            let fields: Vec<&str> = rest.split_whitespace().collect();
            match fields.as_slice() {
                ["cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(lineno, "bad variable count".into()))?;
                    let c = c.parse().map_err(|_| err(lineno, "bad clause count".into()))?;
                    header = Some((v, c));
                }
                _ => return Err(err(lineno, format!("malformed problem line `{line}`"))),
            }
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(lineno, "clause before problem line".into()));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| err(lineno, format!("bad literal `{tok}`")))?;
            if v == 0 {
                formula.add_clause(Clause::new(std::mem::take(&mut pending)));
            } else {
                if v.unsigned_abs() > num_vars as u64 {
                    return Err(err(lineno, format!("literal {v} exceeds declared {num_vars} variables")));
                }
                pending.push(Lit::from_dimacs(v)?);
            }
        }
    }
    let Some((num_vars, num_clauses)) = header else {
        return Err(err(0, "missing problem line".into()));
    };
    if !pending.is_empty() {
        return Err(err(0, "last clause is not terminated by 0".into()));
    }
    if formula.num_clauses() != num_clauses {
        return Err(err(
            0,
            format!("header declares {num_clauses} clauses, found {}", formula.num_clauses()),
        ));
    }
    formula.reserve_vars(num_vars);

    let mut varmap = VarMap::new();
    if !edges.is_empty() {
        let n = (edges.len() as f64).sqrt().round() as usize;
        if n * n != edges.len() {
            return Err(err(0, format!("{} edge records do not form a square grid", edges.len())));
        }
        varmap.set_edges(EdgeVarMap::from_triples(n, &edges)?)?;
    }
    for (role, var) in aux {
        varmap.insert(role, var)?;
    }
    Ok(DimacsFile { formula, varmap, notes })
}
