use super::{Checker, EncodeOptions, EncodingResult};
use crate::circuit::{tseitin, Circuit, CircuitOptions, GateBuilder, Signal, Wire};
use crate::cnf::{Clause, CnfFormula, EdgeVarMap, Lit, Role, Var, VarAllocator, VarMap};
use crate::Result;

/// `ceil(log2 n)`: enough bits for `n` distinct labels.
pub fn label_bits(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize
}

fn label_vars(n: usize, bits: usize, alloc: &mut VarAllocator, map: &mut VarMap) -> Result<Vec<Vec<Var>>> {
    let mut labels = Vec::with_capacity(n);
    for vertex in 1..=n {
        let mut ys = Vec::with_capacity(bits);
        for bit in 1..=bits {
            let v = alloc.fresh();
            map.insert(Role::Label { vertex, bit }, v)?;
            ys.push(v);
        }
        labels.push(ys);
    }
    Ok(labels)
}

/// Lexicographic `y < z`, most significant bit first:
/// `less() = 0`, `less(y Y, z Z) = (!y & z) | ((!y | z) & less(Y, Z))`.
fn lessbin<G: GateBuilder>(g: &mut G, y: &[Wire], z: &[Wire]) -> Wire {
    match (y.split_first(), z.split_first()) {
        (Some((&y0, ys)), Some((&z0, zs))) => {
            let lt = g.and(!y0, z0);
            let le = g.or(!y0, z0);
            let rest = lessbin(g, ys, zs);
            let tail = g.and(le, rest);
            g.or(lt, tail)
        }
        _ => Wire::FALSE,
    }
}

/// Binary labels: every edge `ij` forces `label(i) < label(j)`.
pub fn bin(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    let n = edges.n();
    let b = label_bits(n);
    let mut aux = VarMap::new();
    let labels = label_vars(n, b, alloc, &mut aux)?;
    let copts = if opts.fold { CircuitOptions::default() } else { CircuitOptions::raw() };
    let mut c = Circuit::new(CircuitOptions { budget: opts.gate_budget, ..copts });
    // bit 1 is the least significant; the comparator wants MSB first
    let wires: Vec<Vec<Wire>> = labels.iter().map(|ys| ys.iter().rev().map(|&v| c.input(v)).collect()).collect();
    let mut less = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            less.push(lessbin(&mut c, &wires[i - 1], &wires[j - 1]));
        }
        c.check_budget()?;
    }
    let enc = tseitin(&c, alloc)?;
    aux.merge(enc.varmap.clone())?;
    let mut f = enc.formula.clone();
    for ((_, _, x), &w) in edges.iter().zip(&less) {
        match enc.signal(w) {
            Signal::Const(true) => {}
            Signal::Const(false) => f.add_clause([x.neg()]),
            Signal::Lit(l) => f.add_clause([x.neg(), l]),
        }
    }
    EncodingResult::new(Checker::Bin, edges, f, aux)
}

/// Unary labels of `n - 1` bits of the form `1^a 0^b` (label `a`), and
/// every edge `ij` forces `label(i) < label(j)` through fresh witnesses
/// `u_1..u_{n-1}`: `u_b` says bit `b` is 0 at `i` and 1 at `j`.
pub fn unr(edges: &EdgeVarMap, alloc: &mut VarAllocator) -> Result<EncodingResult> {
    let n = edges.n();
    let w = n.saturating_sub(1);
    let mut aux = VarMap::new();
    let labels = label_vars(n, w, alloc, &mut aux)?;
    let mut f = CnfFormula::new();
    for ys in &labels {
        for b in 1..w {
            f.add_clause([ys[b].neg(), ys[b - 1].pos()]);
        }
    }
    for (i, j, x) in edges.iter() {
        let mut guard: Vec<Lit> = vec![x.neg()];
        for pos in 1..=w {
            let u = alloc.fresh();
            aux.insert(Role::UnaryWitness { i, j, pos }, u)?;
            f.add_clause([labels[i - 1][pos - 1].neg(), u.neg()]);
            f.add_clause([labels[j - 1][pos - 1].pos(), u.neg()]);
            guard.push(u.pos());
        }
        f.add_clause(Clause::new(guard));
    }
    EncodingResult::new(Checker::Unr, edges, f, aux)
}
