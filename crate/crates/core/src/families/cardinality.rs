use crate::cnf::{Clause, CnfFormula, Lit, Var, VarAllocator};

/// A sequential counter: its clauses and the registers `s_{i,j}` it
/// allocated (`i` indexes the literal prefix, `j` the count, both 1-based).
#[derive(Clone, Debug, Default)]
pub struct Counter {
    pub formula: CnfFormula,
    pub registers: Vec<(usize, usize, Var)>,
}

/// At most `k` of `lits` are true.
///
/// Register `s_{i,j}` is implied when at least `j` of the first `i` literals
/// are true, so setting `k + 1` literals propagates to a conflict.
pub fn atmost_counter(k: usize, lits: &[Lit], alloc: &mut VarAllocator) -> Counter {
    let m = lits.len();
    let mut out = Counter::default();
    if k >= m {
        return out;
    }
    if k == 0 {
        for &x in lits {
            out.formula.add_clause([!x]);
        }
        return out;
    }
    // registers for prefixes 1..m-1
    let mut s = vec![Vec::with_capacity(k); m - 1];
    for (i, row) in s.iter_mut().enumerate() {
        for j in 0..k {
            let v = alloc.fresh();
            row.push(v);
            out.registers.push((i + 1, j + 1, v));
        }
    }
    let f = &mut out.formula;
    f.add_clause([!lits[0], s[0][0].pos()]);
    for j in 1..k {
        f.add_clause([s[0][j].neg()]);
    }
    for i in 1..m - 1 {
        let x = lits[i];
        f.add_clause([!x, s[i][0].pos()]);
        f.add_clause([s[i - 1][0].neg(), s[i][0].pos()]);
        for j in 1..k {
            f.add_clause([!x, s[i - 1][j - 1].neg(), s[i][j].pos()]);
            f.add_clause([s[i - 1][j].neg(), s[i][j].pos()]);
        }
        f.add_clause([!x, s[i - 1][k - 1].neg()]);
    }
    f.add_clause([!lits[m - 1], s[m - 2][k - 1].neg()]);
    out
}

/// At least `k` of `lits` are true: at most `|lits| - k` of their negations.
pub fn atleast_counter(k: usize, lits: &[Lit], alloc: &mut VarAllocator) -> Counter {
    if k == 0 {
        return Counter::default();
    }
    if k > lits.len() {
        let mut out = Counter::default();
        out.formula.add_clause(Clause::empty());
        return out;
    }
    let negated: Vec<Lit> = lits.iter().map(|&l| !l).collect();
    atmost_counter(lits.len() - k, &negated, alloc)
}

pub fn atmost_seq(k: usize, lits: &[Lit], alloc: &mut VarAllocator) -> CnfFormula {
    atmost_counter(k, lits, alloc).formula
}

pub fn atleast_seq(k: usize, lits: &[Lit], alloc: &mut VarAllocator) -> CnfFormula {
    atleast_counter(k, lits, alloc).formula
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::Assignment;
    use crate::engine::{enumerate_models, unit_propagate, PropagationStatus};

    fn vars(m: usize) -> (Vec<Var>, Vec<Lit>, VarAllocator) {
        let mut alloc = VarAllocator::new();
        let vs = alloc.fresh_vec(m);
        let ls = vs.iter().map(|v| v.pos()).collect();
        (vs, ls, alloc)
    }

    #[test]
    fn atmost_one_of_three() {
        let (vs, ls, mut alloc) = vars(3);
        let f = atmost_seq(1, &ls, &mut alloc);
        assert_eq!(enumerate_models(&f, &vs).unwrap().len(), 4);
    }

    #[test]
    fn trivial_bounds() {
        let (_, ls, mut alloc) = vars(3);
        assert_eq!(atleast_seq(0, &ls, &mut alloc).num_clauses(), 0);
        assert!(atleast_seq(4, &ls, &mut alloc).has_empty_clause());
        assert_eq!(atmost_seq(3, &ls, &mut alloc).num_clauses(), 0);
        assert_eq!(atmost_seq(7, &ls, &mut alloc).num_clauses(), 0);
        assert_eq!(alloc.allocated(), 3);
    }

    #[test]
    fn exhaustive_counting_semantics() {
        for m in 0..=8usize {
            for k in 0..=m + 1 {
                let (vs, ls, mut alloc) = vars(m);
                let most = enumerate_models(&atmost_seq(k, &ls, &mut alloc), &vs).unwrap();
                let least = enumerate_models(&atleast_seq(k, &ls, &mut alloc), &vs).unwrap();
                for mask in 0u32..1 << m {
                    let ones = mask.count_ones() as usize;
                    assert_eq!(most.contains_mask(mask), ones <= k, "atmost m={m} k={k} {mask:b}");
                    assert_eq!(least.contains_mask(mask), ones >= k, "atleast m={m} k={k} {mask:b}");
                }
            }
        }
    }

    #[test]
    fn overflow_is_detected_by_propagation() {
        for m in 2..=7 {
            for k in 0..m {
                let (vs, ls, mut alloc) = vars(m);
                let f = atmost_seq(k, &ls, &mut alloc);
                let a = Assignment::from_lits(vs[..k + 1].iter().map(|v| v.pos())).unwrap();
                assert!(matches!(unit_propagate(&f, &a).status, PropagationStatus::Conflict(_)), "m={m} k={k}");
            }
        }
    }
}
