use super::{Circuit, Node, Wire};
use crate::cnf::{Clause, CnfFormula, Lit, Role, Var, VarAllocator, VarMap};
use crate::Result;

/// What a wire became in the CNF.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Signal {
    Const(bool),
    Lit(Lit),
}

#[derive(Clone, Debug)]
pub struct TseitinEncoding {
    pub formula: CnfFormula,
    /// Gate and constant variables with their roles.
    pub varmap: VarMap,
    node_lits: Vec<Option<Lit>>,
}

impl TseitinEncoding {
    pub fn signal(&self, w: Wire) -> Signal {
        if let Some(v) = w.const_value() {
            if self.node_lits[0].is_none() {
                return Signal::Const(v);
            }
        }
        let l = self.node_lits[w.node()].expect("wire of a node outside the compiled circuit");
        Signal::Lit(if w.is_complemented() { !l } else { l })
    }
}

/// Compile `c` to CNF. Every AND node `g = a & b` gets a fresh variable and
/// the clauses `(-g a) (-g b) (g -a -b)`; every asserted output becomes a
/// unit clause. Constant operands (only present in unfolded circuits) are
/// represented by one variable fixed true by a unit clause.
pub fn tseitin(c: &Circuit, alloc: &mut VarAllocator) -> Result<TseitinEncoding> {
    let nodes = c.nodes();
    let mut lits: Vec<Option<Lit>> = vec![None; nodes.len()];
    let mut formula = CnfFormula::new();
    let mut varmap = VarMap::new();

    let needs_const = nodes.iter().any(|n| matches!(n, Node::And(a, b) if a.is_const() || b.is_const()));
    if needs_const {
        let t = alloc.fresh();
        varmap.insert(Role::True, t)?;
        formula.add_clause([t.pos()]);
        // node 0 is constant false
        lits[0] = Some(t.neg());
    }
    for (id, node) in nodes.iter().enumerate() {
        if let Node::Input(v) = node {
            lits[id] = Some(v.pos());
            formula.reserve_vars(v.index());
        }
    }
    let lit_of = |lits: &[Option<Lit>], w: Wire| {
        let l = lits[w.node()].expect("operand compiled before its gate");
        if w.is_complemented() {
            !l
        } else {
            l
        }
    };
    for &id in c.order() {
        let id = id as usize;
        if let Node::And(a, b) = nodes[id] {
            let g: Var = alloc.fresh();
            varmap.insert(Role::Gate { node: id }, g)?;
            let (la, lb) = (lit_of(&lits, a), lit_of(&lits, b));
            formula.add_clause([g.neg(), la]);
            formula.add_clause([g.neg(), lb]);
            formula.add_clause([g.pos(), !la, !lb]);
            lits[id] = Some(g.pos());
        }
    }
    let enc = TseitinEncoding { formula, varmap, node_lits: lits };
    let mut formula = enc.formula.clone();
    for &w in c.outputs() {
        match enc.signal(w) {
            Signal::Const(true) => {}
            Signal::Const(false) => formula.add_clause(Clause::empty()),
            Signal::Lit(l) => formula.add_clause([l]),
        }
    }
    Ok(TseitinEncoding { formula, ..enc })
}
