//! Benchmark graph families: graphs without sinks, and the Supervisor
//! problem with per-vertex degree bounds.

mod cardinality;
mod generator;
mod realizability;

pub use cardinality::{atleast_counter, atleast_seq, atmost_counter, atmost_seq, Counter};
pub use generator::{gen_supervisor_instance, instance_seed, GeneratorOptions, InstanceMeta, DEFAULT_RETRY_CAP};
pub use realizability::digraph_realizable;

use std::fmt;
use std::str::FromStr;

use crate::cnf::{CnfFormula, EdgeVarMap, Lit, Role, VarAllocator, VarMap};
use crate::graph::{satisfies_bounds, DegreeBounds, Graph};
use crate::{Error, Result};

/// Every vertex has an outgoing edge: clause `(x_i1 | ... | x_in)` per row.
pub fn encode_no_sink(edges: &EdgeVarMap) -> CnfFormula {
    let n = edges.n();
    let mut f = CnfFormula::new();
    for i in 1..=n {
        f.add_clause((1..=n).map(|j| edges.var(i, j).pos()).collect::<Vec<Lit>>());
    }
    f
}

/// A family formula together with the names of its auxiliary variables.
#[derive(Clone, Debug, Default)]
pub struct FamilyEncoding {
    pub formula: CnfFormula,
    pub varmap: VarMap,
}

/// Row `i` has at least `l_i` edges and column `j` at most `u_j`, each by a
/// sequential counter.
pub fn encode_supervisor(b: &DegreeBounds, edges: &EdgeVarMap, alloc: &mut VarAllocator) -> Result<FamilyEncoding> {
    let n = edges.n();
    if b.n() != n {
        return Err(Error::SizeMismatch { expected: n, actual: b.n() });
    }
    let mut out = FamilyEncoding::default();
    for i in 1..=n {
        let row: Vec<Lit> = (1..=n).map(|j| edges.var(i, j).pos()).collect();
        let c = atleast_counter(b.vertex(i).min_out, &row, alloc);
        for (p, q, v) in c.registers {
            out.varmap.insert(Role::AtLeastCounter { vertex: i, i: p, j: q }, v)?;
        }
        out.formula.extend(c.formula);
    }
    for j in 1..=n {
        let col: Vec<Lit> = (1..=n).map(|i| edges.var(i, j).pos()).collect();
        let c = atmost_counter(b.vertex(j).max_in, &col, alloc);
        for (p, q, v) in c.registers {
            out.varmap.insert(Role::AtMostCounter { vertex: j, i: p, j: q }, v)?;
        }
        out.formula.extend(c.formula);
    }
    Ok(out)
}

/// Bounds `(n, 1)` for every vertex: the no-sink family as a Supervisor instance.
pub fn no_sink_bounds(n: usize) -> DegreeBounds {
    DegreeBounds::new(vec![(n, 1); n])
}

/// `k1` pigeons with bounds `(0, 1)` and `k2` holes with bounds `(1, 0)`.
/// Unsatisfiable when `k1 > k2`.
pub fn pigeonhole_bounds(k1: usize, k2: usize) -> DegreeBounds {
    DegreeBounds::new(std::iter::repeat_n((0, 1), k1).chain(std::iter::repeat_n((1, 0), k2)))
}

/// `sum u_i = sum l_i`: then every solution has in-degree `u_i` and
/// out-degree `l_i` exactly.
pub fn is_dag_realizability_instance(b: &DegreeBounds) -> bool {
    let (u, l) = b.iter().fold((0, 0), |(u, l), v| (u + v.max_in, l + v.min_out));
    u == l
}

/// A concrete `phi_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    NoSink { n: usize },
    Supervisor(DegreeBounds),
}

impl Family {
    pub fn n(&self) -> usize {
        match self {
            Family::NoSink { n } => *n,
            Family::Supervisor(b) => b.n(),
        }
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            Family::NoSink { .. } => FamilyKind::NoSink,
            Family::Supervisor(_) => FamilyKind::Supervisor,
        }
    }

    /// Adding edges preserves membership.
    pub fn is_monotone(&self) -> bool {
        match self {
            Family::NoSink { .. } => true,
            Family::Supervisor(b) => b.iter().all(|v| v.max_in >= b.n()),
        }
    }

    pub fn bounds(&self) -> Option<&DegreeBounds> {
        match self {
            Family::NoSink { .. } => None,
            Family::Supervisor(b) => Some(b),
        }
    }

    pub fn encode(&self, edges: &EdgeVarMap, alloc: &mut VarAllocator) -> Result<FamilyEncoding> {
        if edges.n() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), actual: edges.n() });
        }
        match self {
            Family::NoSink { .. } => Ok(FamilyEncoding { formula: encode_no_sink(edges), varmap: VarMap::new() }),
            Family::Supervisor(b) => encode_supervisor(b, edges, alloc),
        }
    }

    /// Does `g` belong to the family?
    pub fn contains(&self, g: &Graph) -> Result<bool> {
        match self {
            Family::NoSink { n } => {
                if g.n() != *n {
                    return Err(Error::SizeMismatch { expected: *n, actual: g.n() });
                }
                Ok((1..=*n).all(|i| g.out_degree(i) > 0))
            }
            Family::Supervisor(b) => satisfies_bounds(g, b),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    NoSink,
    Supervisor,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::NoSink => "no-sink",
            FamilyKind::Supervisor => "supervisor",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "no-sink" | "nosink" | "gt" => Ok(FamilyKind::NoSink),
            "supervisor" => Ok(FamilyKind::Supervisor),
            _ => Err(Error::InvalidArgument(format!("unknown family `{s}` (expected no-sink or supervisor)"))),
        }
    }
}
