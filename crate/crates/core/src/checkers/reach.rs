use super::{Checker, EncodeOptions, EncodingResult};
use crate::cnf::{CnfFormula, EdgeVarMap, Role, Var, VarAllocator, VarMap};
use crate::Result;

/// Fresh `y_ij` for every ordered pair, row-major.
fn reach_vars(n: usize, alloc: &mut VarAllocator, map: &mut VarMap) -> Result<Vec<Var>> {
    let mut ys = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let v = alloc.fresh();
            map.insert(Role::Reach { i, j }, v)?;
            ys.push(v);
        }
    }
    Ok(ys)
}

/// Which middle clause closes the relation.
#[derive(Clone, Copy, PartialEq)]
enum Closure {
    /// `R R <= R`
    Square,
    /// `R E <= R`
    Edge,
}

fn transitive_closure(
    checker: Checker,
    closure: Closure,
    edges: &EdgeVarMap,
    alloc: &mut VarAllocator,
    opts: &EncodeOptions,
) -> Result<EncodingResult> {
    let n = edges.n();
    let mut aux = VarMap::new();
    let ys = reach_vars(n, alloc, &mut aux)?;
    let y = |i: usize, j: usize| ys[(i - 1) * n + (j - 1)];
    let mut f = CnfFormula::new();
    for i in 1..=n {
        f.add_clause([y(i, i).neg()]);
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                // j = k is tautological, i = j subsumed or tautological
                if opts.skip_degenerate && (i == j || j == k) {
                    continue;
                }
                let second = match closure {
                    Closure::Square => y(j, k),
                    Closure::Edge => edges.var(j, k),
                };
                f.add_clause([y(i, j).neg(), second.neg(), y(i, k).pos()]);
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            f.add_clause([edges.var(i, j).neg(), y(i, j).pos()]);
        }
    }
    EncodingResult::new(checker, edges, f, aux)
}

/// Irreflexive transitive relation `y` containing the edges:
/// `-y_ii`, `(-y_ij | -y_jk | y_ik)` and `(-x_ij | y_ij)`.
pub fn tc1(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    transitive_closure(Checker::Tc1, Closure::Square, edges, alloc, opts)
}

/// As [`tc1`] with middle clauses `(-y_ij | -x_jk | y_ik)`.
pub fn tc2(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    transitive_closure(Checker::Tc2, Closure::Edge, edges, alloc, opts)
}

/// The edge relation itself must be irreflexive and transitive. A graph
/// satisfies this iff it is a transitively closed DAG, so the checker is
/// only sound for families preserved under adding edges.
pub fn tc3(edges: &EdgeVarMap, opts: &EncodeOptions) -> Result<EncodingResult> {
    let n = edges.n();
    let x = |i, j| edges.var(i, j);
    let mut f = CnfFormula::new();
    for i in 1..=n {
        f.add_clause([x(i, i).neg()]);
    }
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                if opts.skip_degenerate && (i == j || j == k) {
                    continue;
                }
                f.add_clause([x(i, j).neg(), x(j, k).neg(), x(i, k).pos()]);
            }
        }
    }
    EncodingResult::new(Checker::Tc3, edges, f, VarMap::new())
}

/// Warshall's recurrence: `y_ijk` holds when there is a path from `i` to
/// `j` with intermediate vertices in `1..=k`. Implications only.
pub fn fw(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    let n = edges.n();
    let mut aux = VarMap::new();
    // layout [k][i][j], k in 0..=n
    let mut ys = Vec::with_capacity((n + 1) * n * n);
    for i in 1..=n {
        for j in 1..=n {
            for k in 0..=n {
                let v = alloc.fresh();
                aux.insert(Role::Warshall { i, j, k }, v)?;
                ys.push(((k, i, j), v));
            }
        }
    }
    ys.sort_unstable_by_key(|&(key, _)| key);
    let y = |i: usize, j: usize, k: usize| ys[k * n * n + (i - 1) * n + (j - 1)].1;
    let mut f = CnfFormula::new();
    for i in 1..=n {
        f.add_clause([y(i, i, n).neg()]);
    }
    for i in 1..=n {
        for j in 1..=n {
            f.add_clause([edges.var(i, j).neg(), y(i, j, 0).pos()]);
        }
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                f.add_clause([y(i, j, k - 1).neg(), y(i, j, k).pos()]);
                // i = k or j = k is subsumed by the clause above
                if opts.skip_degenerate && (i == k || j == k) {
                    continue;
                }
                f.add_clause([y(i, k, k - 1).neg(), y(k, j, k - 1).neg(), y(i, j, k).pos()]);
            }
        }
    }
    EncodingResult::new(Checker::Fw, edges, f, aux)
}
