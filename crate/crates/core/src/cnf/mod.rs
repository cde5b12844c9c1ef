//! CNF data model: variables, literals, clauses, formulas, variable
//! allocation and the role map that names every variable of an encoding.

mod dimacs;
mod solver_output;
mod varmap;

use std::fmt;
use std::ops::Not;

pub use dimacs::{parse_dimacs, write_dimacs, write_dimacs_annotated, DimacsFile};
pub use solver_output::{parse_solver_output, SolverAnswer};
pub use varmap::{EdgeVarMap, Role, VarMap};

use crate::{Error, Result};

/// A propositional variable, numbered from 1 as in DIMACS.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u32);

impl Var {
    pub fn new(index: u32) -> Result<Var> {
        if index == 0 || index > i32::MAX as u32 {
            return Err(Error::InvalidVariable(index.into()));
        }
        Ok(Var(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn pos(self) -> Lit {
        Lit(self.0 as i32)
    }

    pub fn neg(self) -> Lit {
        Lit(-(self.0 as i32))
    }

    pub fn lit(self, positive: bool) -> Lit {
        if positive {
            self.pos()
        } else {
            self.neg()
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A literal in DIMACS convention: `+v` or `-v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Lit(i32);

impl Lit {
    pub fn from_dimacs(value: i64) -> Result<Lit> {
        if value == 0 || value.unsigned_abs() > i32::MAX as u64 {
            return Err(Error::InvalidVariable(value));
        }
        Ok(Lit(value as i32))
    }

    pub fn to_dimacs(self) -> i32 {
        self.0
    }

    pub fn var(self) -> Var {
        Var(self.0.unsigned_abs())
    }

    pub fn is_positive(self) -> bool {
        self.0 > 0
    }

    /// Dense code `2*(v-1) + negated`, for literal-indexed tables.
    #[inline]
    pub fn code(self) -> usize {
        ((self.0.unsigned_abs() as usize - 1) << 1) | (self.0 < 0) as usize
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(-self.0)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A disjunction of literals. Literals are kept as written; see
/// [`Clause::normalized`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new(lits: Vec<Lit>) -> Clause {
        Clause(lits)
    }

    pub fn empty() -> Clause {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_tautology(&self) -> bool {
        self.0.iter().any(|&l| self.0.contains(&!l))
    }

    /// Same clause with repeated literals removed, first occurrence kept.
    pub fn normalized(&self) -> Clause {
        let mut out: Vec<Lit> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if !out.contains(&l) {
                out.push(l);
            }
        }
        Clause(out)
    }

    /// Value under a partial assignment: `Some(true)` if some literal is true,
    /// `Some(false)` if all are false, `None` otherwise.
    pub fn value(&self, a: &Assignment) -> Option<bool> {
        let mut undecided = false;
        for &l in &self.0 {
            match a.lit_value(l) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => undecided = true,
            }
        }
        if undecided {
            None
        } else {
            Some(false)
        }
    }
}

impl From<Vec<Lit>> for Clause {
    fn from(lits: Vec<Lit>) -> Self {
        Clause(lits)
    }
}

impl<const N: usize> From<[Lit; N]> for Clause {
    fn from(lits: [Lit; N]) -> Self {
        Clause(lits.to_vec())
    }
}

/// A conjunction of clauses together with the number of variables in scope.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
    num_vars: u32,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_clause(&mut self, clause: impl Into<Clause>) {
        let clause = clause.into();
        if let Some(m) = clause.0.iter().map(|l| l.var().0).max() {
            self.num_vars = self.num_vars.max(m);
        }
        self.clauses.push(clause);
    }

    /// Raise the variable count, e.g. to cover auxiliaries that occur in no clause.
    pub fn reserve_vars(&mut self, num_vars: u32) {
        self.num_vars = self.num_vars.max(num_vars);
    }

    /// Conjunction with `other`.
    pub fn extend(&mut self, other: CnfFormula) {
        self.num_vars = self.num_vars.max(other.num_vars);
        self.clauses.extend(other.clauses);
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    /// `m + sum |C_i|` for clauses `C_1, ..., C_m`.
    pub fn size(&self) -> u64 {
        self.clauses.iter().map(|c| 1 + c.len() as u64).sum()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// Drop repeated literals inside clauses and drop tautological clauses.
    pub fn simplify(&mut self) {
        self.clauses = self
            .clauses
            .iter()
            .map(Clause::normalized)
            .filter(|c| !c.is_tautology())
            .collect();
    }

    /// True iff every clause has a true literal under `a`.
    pub fn is_satisfied_by(&self, a: &Assignment) -> bool {
        self.clauses.iter().all(|c| c.value(a) == Some(true))
    }

    /// A clause not satisfied by `a`, if any.
    pub fn first_unsatisfied(&self, a: &Assignment) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.value(a) != Some(true))
    }
}

/// Hands out fresh variable indices, strictly increasing.
#[derive(Clone, Debug)]
pub struct VarAllocator {
    next: u32,
}

impl Default for VarAllocator {
    fn default() -> Self {
        VarAllocator { next: 1 }
    }
}

impl VarAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Continue after an existing formula's variables.
    pub fn starting_after(num_vars: u32) -> Self {
        VarAllocator { next: num_vars + 1 }
    }

    pub fn fresh(&mut self) -> Var {
        let v = Var(self.next);
        self.next = self.next.checked_add(1).expect("variable space exhausted");
        assert!(self.next <= i32::MAX as u32, "variable space exhausted");
        v
    }

    pub fn fresh_vec(&mut self, count: usize) -> Vec<Var> {
        (0..count).map(|_| self.fresh()).collect()
    }

    /// Number of variables issued so far.
    pub fn allocated(&self) -> u32 {
        self.next - 1
    }
}

/// A partial truth assignment.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Assignment {
    values: Vec<Option<bool>>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_lits<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Self> {
        let mut a = Assignment::new();
        for l in lits {
            if a.lit_value(l) == Some(false) {
                return Err(Error::InvalidArgument(format!(
                    "inconsistent assignment: variable {} assigned both ways",
                    l.var()
                )));
            }
            a.assign(l);
        }
        Ok(a)
    }

    pub fn get(&self, v: Var) -> Option<bool> {
        self.values.get(v.0 as usize).copied().flatten()
    }

    pub fn lit_value(&self, l: Lit) -> Option<bool> {
        self.get(l.var()).map(|b| b == l.is_positive())
    }

    pub fn set(&mut self, v: Var, value: bool) {
        let i = v.0 as usize;
        if self.values.len() <= i {
            self.values.resize(i + 1, None);
        }
        self.values[i] = Some(value);
    }

    /// Make `l` true.
    pub fn assign(&mut self, l: Lit) {
        self.set(l.var(), l.is_positive());
    }

    pub fn unset(&mut self, v: Var) {
        if let Some(slot) = self.values.get_mut(v.0 as usize) {
            *slot = None;
        }
    }

    pub fn len(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Assigned variables as true literals, in variable order.
    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, v)| v.map(|b| Var(i as u32).lit(b)))
    }
}

impl fmt::Debug for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.lits().map(|l| l.0)).finish()
    }
}

/// Shorthand for building literals in tests and examples: `lit(3)`, `lit(-2)`.
pub fn lit(value: i32) -> Lit {
    Lit::from_dimacs(value.into()).expect("literal must be nonzero")
}
