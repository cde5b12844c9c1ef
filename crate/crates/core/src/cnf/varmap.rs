use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::{Var, VarAllocator};
use crate::{Error, Result};

/// Bijection between ordered vertex pairs `(i, j)` of `[n] x [n]` and the
/// edge variables `x_ij`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeVarMap {
    n: usize,
    vars: Vec<Var>,
}

impl EdgeVarMap {
    /// Allocate `n*n` consecutive variables, row-major: `x_11, x_12, ..., x_nn`.
    pub fn allocate(n: usize, alloc: &mut VarAllocator) -> Self {
        EdgeVarMap { n, vars: alloc.fresh_vec(n * n) }
    }

    /// Build from explicit `(i, j, var)` triples; every pair must occur once.
    pub fn from_triples(n: usize, triples: &[(usize, usize, Var)]) -> Result<Self> {
        let mut slots: Vec<Option<Var>> = vec![None; n * n];
        for &(i, j, v) in triples {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::VertexOutOfRange { vertex: i.max(j), n });
            }
            let s = &mut slots[(i - 1) * n + (j - 1)];
            if s.is_some() {
                return Err(Error::DuplicateRole(format!("edge({i},{j})")));
            }
            *s = Some(v);
        }
        let vars: Option<Vec<Var>> = slots.into_iter().collect();
        let vars = vars.ok_or_else(|| Error::Metadata(format!("incomplete edge map for n = {n}")))?;
        let mut seen = HashSet::new();
        for v in &vars {
            if !seen.insert(*v) {
                return Err(Error::DuplicateVariable(v.index()));
            }
        }
        Ok(EdgeVarMap { n, vars })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The variable `x_ij` (1-based vertices).
    #[inline]
    pub fn var(&self, i: usize, j: usize) -> Var {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "edge ({i},{j}) out of range for n = {}",
            self.n
        );
        self.vars[(i - 1) * self.n + (j - 1)]
    }

    /// `(i, j, x_ij)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Var)> + '_ {
        let n = self.n;
        self.vars.iter().enumerate().map(move |(s, &v)| (s / n + 1, s % n + 1, v))
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }
}

/// The meaning of an auxiliary variable.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Role {
    /// `y_ij` of the transitive-closure checkers: `ij` is in the relation.
    Reach { i: usize, j: usize },
    /// Bit `bit` (1-based, least significant first) of the label of `vertex`.
    Label { vertex: usize, bit: usize },
    /// `y_ijk` of the Warshall checker.
    Warshall { i: usize, j: usize, k: usize },
    /// Witness `u_pos` of the unary comparison for the pair `(i, j)`.
    UnaryWitness { i: usize, j: usize, pos: usize },
    /// Register `s_{i,j}` of the sequential counter bounding row `vertex`.
    AtLeastCounter { vertex: usize, i: usize, j: usize },
    /// Register `s_{i,j}` of the sequential counter bounding column `vertex`.
    AtMostCounter { vertex: usize, i: usize, j: usize },
    /// Defining variable of a circuit AND node.
    Gate { node: usize },
    /// Variable fixed to true, standing in for circuit constants.
    True,
}

impl Role {
    fn name(&self) -> &'static str {
        match self {
            Role::Reach { .. } => "reach",
            Role::Label { .. } => "label",
            Role::Warshall { .. } => "fw",
            Role::UnaryWitness { .. } => "unr_u",
            Role::AtLeastCounter { .. } => "atleast",
            Role::AtMostCounter { .. } => "atmost",
            Role::Gate { .. } => "gate",
            Role::True => "true",
        }
    }

    fn indices(&self) -> Vec<usize> {
        match *self {
            Role::Reach { i, j } => vec![i, j],
            Role::Label { vertex, bit } => vec![vertex, bit],
            Role::Warshall { i, j, k } => vec![i, j, k],
            Role::UnaryWitness { i, j, pos } => vec![i, j, pos],
            Role::AtLeastCounter { vertex, i, j } | Role::AtMostCounter { vertex, i, j } => {
                vec![vertex, i, j]
            }
            Role::Gate { node } => vec![node],
            Role::True => vec![],
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        let idx = self.indices();
        if !idx.is_empty() {
            let parts: Vec<String> = idx.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Role> {
        let bad = || Error::Metadata(format!("unrecognised role `{s}`"));
        let (name, idx) = match s.find('(') {
            Some(p) => {
                let inner = s[p + 1..].strip_suffix(')').ok_or_else(bad)?;
                let idx: std::result::Result<Vec<usize>, _> =
                    inner.split(',').map(|x| x.trim().parse::<usize>()).collect();
                (&s[..p], idx.map_err(|_| bad())?)
            }
            None => (s, Vec::new()),
        };
        Ok(match (name, idx.as_slice()) {
            ("reach", &[i, j]) => Role::Reach { i, j },
            ("label", &[vertex, bit]) => Role::Label { vertex, bit },
            ("fw", &[i, j, k]) => Role::Warshall { i, j, k },
            ("unr_u", &[i, j, pos]) => Role::UnaryWitness { i, j, pos },
            ("atleast", &[vertex, i, j]) => Role::AtLeastCounter { vertex, i, j },
            ("atmost", &[vertex, i, j]) => Role::AtMostCounter { vertex, i, j },
            ("gate", &[node]) => Role::Gate { node },
            ("true", &[]) => Role::True,
            _ => return Err(bad()),
        })
    }
}

/// Names for every variable of an encoding: the edge map plus auxiliary roles.
#[derive(Clone, Debug, Default)]
pub struct VarMap {
    edges: Option<EdgeVarMap>,
    aux: BTreeMap<Role, Var>,
    owner: HashMap<Var, Role>,
    edge_vars: HashSet<Var>,
}

impl VarMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_edges(edges: EdgeVarMap) -> Self {
        let edge_vars = edges.vars().iter().copied().collect();
        VarMap { edges: Some(edges), edge_vars, ..Self::default() }
    }

    pub fn edges(&self) -> Option<&EdgeVarMap> {
        self.edges.as_ref()
    }

    pub fn set_edges(&mut self, edges: EdgeVarMap) -> Result<()> {
        for v in edges.vars() {
            if self.owner.contains_key(v) {
                return Err(Error::DuplicateVariable(v.index()));
            }
        }
        self.edge_vars = edges.vars().iter().copied().collect();
        self.edges = Some(edges);
        Ok(())
    }

    pub fn insert(&mut self, role: Role, var: Var) -> Result<()> {
        if self.aux.contains_key(&role) {
            return Err(Error::DuplicateRole(role.to_string()));
        }
        if self.edge_vars.contains(&var) || self.owner.contains_key(&var) {
            return Err(Error::DuplicateVariable(var.index()));
        }
        self.aux.insert(role, var);
        self.owner.insert(var, role);
        Ok(())
    }

    pub fn get(&self, role: &Role) -> Option<Var> {
        self.aux.get(role).copied()
    }

    pub fn role_of(&self, var: Var) -> Option<Role> {
        self.owner.get(&var).copied()
    }

    pub fn aux_len(&self) -> usize {
        self.aux.len()
    }

    /// Auxiliary roles ordered by variable index.
    pub fn aux_by_var(&self) -> Vec<(Role, Var)> {
        let mut v: Vec<(Role, Var)> = self.aux.iter().map(|(r, v)| (*r, *v)).collect();
        v.sort_by_key(|&(_, var)| var);
        v
    }

    /// Union with `other`; roles and variables must stay unique.
    pub fn merge(&mut self, other: VarMap) -> Result<()> {
        match (&self.edges, other.edges) {
            (None, Some(e)) => self.set_edges(e)?,
            (Some(a), Some(b)) if *a != b => {
                return Err(Error::InvalidArgument("merging var maps with different edge maps".into()))
            }
            _ => {}
        }
        for (role, var) in other.aux {
            self.insert(role, var)?;
        }
        Ok(())
    }

    /// Write the map as key-value records, one variable per line:
    /// `role=edge indices=1,2 var=2`.
    pub fn write_records<W: Write>(&self, mut sink: W) -> Result<()> {
        if let Some(e) = &self.edges {
            for (i, j, v) in e.iter() {
                writeln!(sink, "role=edge indices={i},{j} var={v}")?;
            }
        }
        for (role, var) in self.aux_by_var() {
            let idx: Vec<String> = role.indices().iter().map(usize::to_string).collect();
            writeln!(sink, "role={} indices={} var={var}", role.name(), idx.join(","))?;
        }
        Ok(())
    }
}
