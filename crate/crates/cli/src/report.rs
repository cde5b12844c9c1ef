use std::collections::BTreeMap;
use std::io::{Read, Write};

use acyclic_cnf::checkers::{encode, formula_size, Checker, EncodeOptions};
use acyclic_cnf::cnf::{EdgeVarMap, VarAllocator};
use acyclic_cnf::Error;
use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::run::{RunRecord, RUN_FIELDS, RUN_SCHEMA};

pub const TABLE_SCHEMA: &str = "acyc-table-v1";
pub const CACTUS_SCHEMA: &str = "acyc-cactus-v1";
pub const SIZES_SCHEMA: &str = "acyc-sizes-v1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub schema: String,
    pub solver: String,
    pub checker: String,
    pub solved: usize,
    pub total: usize,
}

pub const TABLE_FIELDS: [&str; 5] = ["schema", "solver", "checker", "solved", "total"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CactusPoint {
    pub schema: String,
    pub solver: String,
    pub checker: String,
    pub index: usize,
    pub seconds: f64,
}

pub const CACTUS_FIELDS: [&str; 5] = ["schema", "solver", "checker", "index", "seconds"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeRow {
    pub schema: String,
    pub checker: String,
    pub n: usize,
    pub size: Option<u64>,
    pub vars: Option<u32>,
    pub clauses: Option<usize>,
    /// `built`, `counted`, or `over-budget`.
    pub method: String,
}

pub const SIZE_FIELDS: [&str; 7] = ["schema", "checker", "n", "size", "vars", "clauses", "method"];

/// Write `rows` as CSV under a header that is present even with no rows.
pub fn write_csv<T: Serialize, W: Write>(fields: &[&str], rows: &[T], sink: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    w.write_record(fields)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_records<W: Write>(records: &[RunRecord], sink: W) -> Result<()> {
    write_csv(&RUN_FIELDS, records, sink)
}

pub fn read_records<R: Read>(source: R) -> Result<Vec<RunRecord>> {
    let mut rd = csv::Reader::from_reader(source);
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != RUN_FIELDS {
        bail!("not a run record file: header is `{}`", header.join(","));
    }
    let mut out = Vec::new();
    for (k, r) in rd.deserialize::<RunRecord>().enumerate() {
        let r = r.with_context(|| format!("record {}", k + 1))?;
        if r.schema != RUN_SCHEMA {
            bail!("record {} has schema `{}`, expected {RUN_SCHEMA}", k + 1, r.schema);
        }
        out.push(r);
    }
    Ok(out)
}

/// Solved counts per `(solver, checker)`.
pub fn cmd_table(records: &[RunRecord]) -> Vec<TableRow> {
    let mut counts: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    for r in records {
        let e = counts.entry((r.solver.clone(), r.checker.clone())).or_default();
        e.1 += 1;
        if r.status.is_solved() {
            e.0 += 1;
        }
    }
    counts
        .into_iter()
        .map(|((solver, checker), (solved, total))| TableRow { schema: TABLE_SCHEMA.into(), solver, checker, solved, total })
        .collect()
}

/// Per `(solver, checker)`, the solved instances' times in increasing order,
/// numbered from 1.
pub fn cmd_cactus(records: &[RunRecord]) -> Vec<CactusPoint> {
    let mut series: BTreeMap<(String, String), Vec<f64>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.status.is_solved()) {
        series.entry((r.solver.clone(), r.checker.clone())).or_default().push(r.seconds);
    }
    let mut out = Vec::new();
    for ((solver, checker), mut times) in series {
        times.sort_by(f64::total_cmp);
        for (k, seconds) in times.into_iter().enumerate() {
            out.push(CactusPoint { schema: CACTUS_SCHEMA.into(), solver: solver.clone(), checker: checker.clone(), index: k + 1, seconds });
        }
    }
    out
}

/// Size of each checker at each `n`. Matrix checkers are counted without
/// being built, so their variable and clause counts are left empty.
pub fn cmd_sizes(checkers: &[Checker], ns: &[usize], budget: Option<u64>, skip_degenerate: bool) -> Result<Vec<SizeRow>> {
    let mut out = Vec::new();
    for &c in checkers {
        for &n in ns {
            let row = |size, vars, clauses, method: &str| SizeRow {
                schema: SIZES_SCHEMA.into(),
                checker: c.to_string(),
                n,
                size,
                vars,
                clauses,
                method: method.into(),
            };
            if n == 0 {
                bail!("sizes need n >= 1");
            }
            match c {
                Checker::Mm | Checker::Ss => match formula_size(c, n, budget) {
                    Ok(s) => out.push(row(Some(s), None, None, "counted")),
                    Err(Error::GateBudget { .. }) => out.push(row(None, None, None, "over-budget")),
                    Err(e) => return Err(e.into()),
                },
                _ => {
                    let opts = EncodeOptions { skip_degenerate, gate_budget: budget, ..EncodeOptions::default() };
                    let mut alloc = VarAllocator::new();
                    let edges = EdgeVarMap::allocate(n, &mut alloc);
                    match encode(c, &edges, &mut alloc, &opts) {
                        Ok(e) => out.push(row(
                            Some(e.formula.size()),
                            Some(e.formula.num_vars()),
                            Some(e.formula.num_clauses()),
                            "built",
                        )),
                        Err(Error::GateBudget { .. }) => out.push(row(None, None, None, "over-budget")),
                        Err(e) => return Err(e.into()),
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::run::Status;

    fn rec(solver: &str, checker: &str, status: Status, seconds: f64) -> RunRecord {
        RunRecord {
            schema: RUN_SCHEMA.into(),
            instance: "nosink-n03".into(),
            family: "no-sink".into(),
            n: 3,
            p: None,
            seed: None,
            checker: checker.into(),
            solver: solver.into(),
            status,
            seconds,
            size: 10,
            vars: 9,
            clauses: 3,
            verified: (status == Status::Sat).then_some(true),
            note: String::new(),
        }
    }

    #[test]
    fn table_and_cactus() {
        let rs = vec![
            rec("a", "tc1", Status::Unsat, 0.5),
            rec("a", "tc1", Status::Timeout, 9.0),
            rec("a", "tc1", Status::Sat, 0.1),
            rec("b", "bin", Status::Error, 0.0),
        ];
        let t = cmd_table(&rs);
        assert_eq!(t.len(), 2);
        assert_eq!((t[0].solved, t[0].total), (2, 3));
        assert_eq!((t[1].solved, t[1].total), (0, 1));
        let c = cmd_cactus(&rs);
        assert_eq!(c.iter().map(|p| (p.index, p.seconds)).collect::<Vec<_>>(), vec![(1, 0.1), (2, 0.5)]);
    }

    #[test]
    fn csv_round_trip_and_empty_header() {
        let rs = vec![rec("a", "tc1", Status::Sat, 0.25), rec("a", "fw", Status::Unsat, 1.0)];
        let mut buf = Vec::new();
        write_records(&rs, &mut buf).unwrap();
        assert_eq!(read_records(&buf[..]).unwrap(), rs);
        let mut empty = Vec::new();
        write_csv(&TABLE_FIELDS, &cmd_table(&[]), &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), "schema,solver,checker,solved,total\n");
        assert!(read_records("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn sizes_at_two() {
        let rows = cmd_sizes(&Checker::ALL, &[2], None, false).unwrap();
        let get = |c: &str| rows.iter().find(|r| r.checker == c).unwrap().size.unwrap();
        assert_eq!((get("tc1"), get("tc2"), get("tc3"), get("unr"), get("fw")), (48, 48, 36, 36, 72));
        assert_eq!(rows.iter().find(|r| r.checker == "ss").unwrap().method, "counted");
        let over = cmd_sizes(&[Checker::Ss], &[8], Some(10), false).unwrap();
        assert_eq!(over[0].method, "over-budget");
    }
}
