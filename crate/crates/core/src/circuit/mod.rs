//! Gate-level circuits and the Tseitin compiler.
//!
//! Circuits are and-inverter graphs: every internal node is a two-input AND,
//! and every edge may be complemented. `NOT` is a complemented wire, `OR` is
//! `!(!a & !b)`, and the constants are the two polarities of node 0. This is
//! the full `INPUT / CONST / AND / OR / NOT` basis with one node kind.
//!
//! Two builders implement [`GateBuilder`]:
//!
//! * [`Circuit`] stores the nodes, optionally folding constants and sharing
//!   structurally identical nodes, and can be evaluated or compiled to CNF.
//! * [`GateCounter`] only counts the AND nodes a construction would create
//!   (with constant folding, without sharing). It needs no memory per gate,
//!   which is what makes size sweeps of the large matrix circuits possible.

pub mod arith;
pub mod matrix;
mod tseitin;

use std::collections::HashMap;
use std::fmt;
use std::ops::Not;

pub use tseitin::{tseitin, Signal, TseitinEncoding};

use crate::cnf::{Assignment, Var};
use crate::{Error, Result};

/// A possibly complemented reference to a circuit node.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Wire(u32);

impl Wire {
    pub const FALSE: Wire = Wire(0);
    pub const TRUE: Wire = Wire(1);

    fn new(node: usize, complemented: bool) -> Wire {
        let node = u32::try_from(node).expect("circuit too large");
        assert!(node < 1 << 31, "circuit too large");
        Wire(node << 1 | complemented as u32)
    }

    pub fn node(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_complemented(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn is_const(self) -> bool {
        self.node() == 0
    }

    /// `Some(value)` for the constant wires.
    pub fn const_value(self) -> Option<bool> {
        self.is_const().then(|| self.is_complemented())
    }

    pub fn constant(value: bool) -> Wire {
        if value {
            Wire::TRUE
        } else {
            Wire::FALSE
        }
    }
}

impl Not for Wire {
    type Output = Wire;

    fn not(self) -> Wire {
        Wire(self.0 ^ 1)
    }
}

impl fmt::Debug for Wire {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.const_value() {
            Some(v) => write!(f, "{v}"),
            None if self.is_complemented() => write!(f, "!n{}", self.node()),
            None => write!(f, "n{}", self.node()),
        }
    }
}

/// Value of `w` given the per-node values returned by [`Circuit::evaluate`].
pub fn wire_value(values: &[bool], w: Wire) -> bool {
    values[w.node()] ^ w.is_complemented()
}

/// Constant folding for a two-input AND, shared by both builders.
#[inline]
fn fold_and(a: Wire, b: Wire) -> Option<Wire> {
    if a == Wire::FALSE || b == Wire::FALSE || a == !b {
        Some(Wire::FALSE)
    } else if a == Wire::TRUE || a == b {
        Some(b)
    } else if b == Wire::TRUE {
        Some(a)
    } else {
        None
    }
}

/// Something that can build circuits out of inputs and AND gates.
pub trait GateBuilder {
    /// The wire carrying CNF variable `var`. Repeated calls return the same wire.
    fn input(&mut self, var: Var) -> Wire;

    fn and(&mut self, a: Wire, b: Wire) -> Wire;

    /// Number of AND nodes created so far.
    fn and_count(&self) -> u64;

    /// Maximum number of AND nodes, if limited.
    fn budget(&self) -> Option<u64>;

    /// `Err(GateBudget)` once the AND count has passed the budget.
    fn check_budget(&self) -> Result<()> {
        match self.budget() {
            Some(b) if self.and_count() > b => Err(Error::GateBudget { budget: b }),
            _ => Ok(()),
        }
    }

    fn or(&mut self, a: Wire, b: Wire) -> Wire {
        !self.and(!a, !b)
    }

    fn xor(&mut self, a: Wire, b: Wire) -> Wire {
        let l = self.and(a, !b);
        let r = self.and(!a, b);
        self.or(l, r)
    }

    /// Balanced OR tree; `FALSE` for no wires.
    fn or_reduce(&mut self, wires: &[Wire]) -> Wire {
        match wires {
            [] => Wire::FALSE,
            [w] => *w,
            _ => {
                let (l, r) = wires.split_at(wires.len() / 2);
                let l = self.or_reduce(l);
                let r = self.or_reduce(r);
                self.or(l, r)
            }
        }
    }

    /// Balanced AND tree; `TRUE` for no wires.
    fn and_reduce(&mut self, wires: &[Wire]) -> Wire {
        let negated: Vec<Wire> = wires.iter().map(|&w| !w).collect();
        !self.or_reduce(&negated)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Node {
    /// Node 0: constant false.
    Const,
    Input(Var),
    And(Wire, Wire),
}

/// Construction options for a [`Circuit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CircuitOptions {
    /// Fold constants and trivial ANDs (`a & a`, `a & !a`).
    pub fold: bool,
    /// Reuse an existing node for a structurally identical AND.
    pub share: bool,
    pub budget: Option<u64>,
}

impl Default for CircuitOptions {
    fn default() -> Self {
        CircuitOptions { fold: true, share: true, budget: None }
    }
}

impl CircuitOptions {
    /// No folding, no sharing: one node per requested gate.
    pub fn raw() -> Self {
        CircuitOptions { fold: false, share: false, budget: None }
    }
}

/// An and-inverter graph with a list of outputs asserted to be true.
#[derive(Clone, Debug)]
pub struct Circuit {
    nodes: Vec<Node>,
    /// Evaluation order; node 0 first.
    order: Vec<u32>,
    outputs: Vec<Wire>,
    inputs: HashMap<Var, Wire>,
    strash: HashMap<(Wire, Wire), Wire>,
    opts: CircuitOptions,
    ands: u64,
}

impl Default for Circuit {
    fn default() -> Self {
        Circuit::new(CircuitOptions::default())
    }
}

impl Circuit {
    pub fn new(opts: CircuitOptions) -> Self {
        Circuit {
            nodes: vec![Node::Const],
            order: vec![0],
            outputs: Vec::new(),
            inputs: HashMap::new(),
            strash: HashMap::new(),
            opts,
            ands: 0,
        }
    }

    /// Circuit from an explicit node list (node 0 must be [`Node::Const`]).
    /// Nodes may reference later nodes; the graph must still be acyclic.
    pub fn from_nodes(nodes: Vec<Node>, outputs: Vec<Wire>) -> Result<Self> {
        if nodes.first() != Some(&Node::Const) {
            return Err(Error::InvalidArgument("node 0 must be the constant".into()));
        }
        let count = nodes.len();
        let check = |w: Wire| if w.node() < count { Ok(()) } else { Err(Error::UnknownNode(w.node())) };
        for node in &nodes {
            if let Node::And(a, b) = node {
                check(*a)?;
                check(*b)?;
            }
        }
        for &w in &outputs {
            check(w)?;
        }
        // Iterative DFS for a topological order.
        let mut state = vec![0u8; count];
        let mut order = Vec::with_capacity(count);
        for root in 0..count {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, false)];
            while let Some((v, done)) = stack.pop() {
                if done {
                    state[v] = 2;
                    order.push(v as u32);
                    continue;
                }
                match state[v] {
                    2 => continue,
                    1 => return Err(Error::CyclicCircuit(v)),
                    _ => {}
                }
                state[v] = 1;
                stack.push((v, true));
                if let Node::And(a, b) = nodes[v] {
                    for c in [b.node(), a.node()] {
                        match state[c] {
                            1 => return Err(Error::CyclicCircuit(c)),
                            0 => stack.push((c, false)),
                            _ => {}
                        }
                    }
                }
            }
        }
        let mut inputs = HashMap::new();
        let mut ands = 0;
        for (i, node) in nodes.iter().enumerate() {
            match node {
                Node::Input(v) => {
                    inputs.entry(*v).or_insert(Wire::new(i, false));
                }
                Node::And(..) => ands += 1,
                Node::Const => {}
            }
        }
        Ok(Circuit {
            nodes,
            order,
            outputs,
            inputs,
            strash: HashMap::new(),
            opts: CircuitOptions::raw(),
            ands,
        })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn outputs(&self) -> &[Wire] {
        &self.outputs
    }

    /// Assert that `w` is true.
    pub fn assert_true(&mut self, w: Wire) {
        self.outputs.push(w);
    }

    pub fn options(&self) -> CircuitOptions {
        self.opts
    }

    pub(crate) fn order(&self) -> &[u32] {
        &self.order
    }

    fn push(&mut self, node: Node) -> Wire {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.order.push(id as u32);
        Wire::new(id, false)
    }

    /// Value of every node under an assignment of the input variables.
    pub fn evaluate(&self, inputs: &Assignment) -> Result<Vec<bool>> {
        let mut val = vec![false; self.nodes.len()];
        for &id in &self.order {
            let id = id as usize;
            val[id] = match self.nodes[id] {
                Node::Const => false,
                Node::Input(v) => inputs.get(v).ok_or(Error::MissingInput(v.index()))?,
                Node::And(a, b) => wire_value(&val, a) && wire_value(&val, b),
            };
        }
        Ok(val)
    }

    /// Values of `wires` under `inputs`.
    pub fn eval_wires(&self, inputs: &Assignment, wires: &[Wire]) -> Result<Vec<bool>> {
        let val = self.evaluate(inputs)?;
        Ok(wires.iter().map(|&w| wire_value(&val, w)).collect())
    }

    /// Values of the asserted outputs.
    pub fn eval_outputs(&self, inputs: &Assignment) -> Result<Vec<bool>> {
        self.eval_wires(inputs, &self.outputs)
    }
}

impl GateBuilder for Circuit {
    fn input(&mut self, var: Var) -> Wire {
        if let Some(&w) = self.inputs.get(&var) {
            return w;
        }
        let w = self.push(Node::Input(var));
        self.inputs.insert(var, w);
        w
    }

    fn and(&mut self, a: Wire, b: Wire) -> Wire {
        if self.opts.fold {
            if let Some(w) = fold_and(a, b) {
                return w;
            }
        }
        let key = if a <= b { (a, b) } else { (b, a) };
        if self.opts.share {
            if let Some(&w) = self.strash.get(&key) {
                return w;
            }
        }
        let w = self.push(Node::And(key.0, key.1));
        self.ands += 1;
        if self.opts.share {
            self.strash.insert(key, w);
        }
        w
    }

    fn and_count(&self) -> u64 {
        self.ands
    }

    fn budget(&self) -> Option<u64> {
        self.opts.budget
    }
}

/// Counts AND gates with constant folding and no sharing, without storing them.
#[derive(Clone, Debug)]
pub struct GateCounter {
    next: usize,
    inputs: HashMap<Var, Wire>,
    ands: u64,
    budget: Option<u64>,
}

impl Default for GateCounter {
    fn default() -> Self {
        GateCounter { next: 1, inputs: HashMap::new(), ands: 0, budget: None }
    }
}

impl GateCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: u64) -> Self {
        GateCounter { budget: Some(budget), ..Self::default() }
    }

    fn fresh(&mut self) -> Wire {
        let w = Wire::new(self.next, false);
        self.next += 1;
        w
    }
}

impl GateBuilder for GateCounter {
    fn input(&mut self, var: Var) -> Wire {
        if let Some(&w) = self.inputs.get(&var) {
            return w;
        }
        let w = self.fresh();
        self.inputs.insert(var, w);
        w
    }

    fn and(&mut self, a: Wire, b: Wire) -> Wire {
        if let Some(w) = fold_and(a, b) {
            return w;
        }
        self.ands += 1;
        self.fresh()
    }

    fn and_count(&self) -> u64 {
        self.ands
    }

    fn budget(&self) -> Option<u64> {
        self.budget
    }
}
