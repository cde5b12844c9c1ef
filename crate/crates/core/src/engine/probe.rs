use super::propagate::Propagator;
use crate::cnf::{Clause, CnfFormula, Lit, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SweepOutcome {
    /// The formula is refuted by propagation and failed literals.
    Conflict,
    /// No further failed literals; the formula reduced by every root-level
    /// assignment (satisfied clauses dropped, false literals removed).
    Simplified(CnfFormula),
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub outcome: SweepOutcome,
    /// Negations of the failed literals, in the order they were found.
    pub forced: Vec<Lit>,
    pub passes: usize,
}

impl SweepResult {
    pub fn is_conflict(&self) -> bool {
        self.outcome == SweepOutcome::Conflict
    }
}

/// Probe both polarities of every unassigned variable, in index order. A
/// literal whose assertion propagates to a conflict is failed, and its
/// negation is fixed at the root. Passes repeat until one finds nothing.
pub fn failed_literal_sweep(f: &CnfFormula) -> SweepResult {
    let mut p = Propagator::new(f);
    let mut forced = Vec::new();
    let mut passes = 0;
    if p.root_conflict().is_some() {
        return SweepResult { outcome: SweepOutcome::Conflict, forced, passes };
    }
    loop {
        passes += 1;
        let mut changed = false;
        for v in 1..=f.num_vars() {
            let v = Var::new(v).expect("positive");
            for l in [v.pos(), v.neg()] {
                if p.value(l).is_some() {
                    continue;
                }
                p.new_level();
                p.enqueue(l, None);
                let failed = p.propagate().is_some();
                p.backtrack(0);
                if failed {
                    forced.push(!l);
                    changed = true;
                    p.enqueue(!l, None);
                    if p.propagate().is_some() {
                        return SweepResult { outcome: SweepOutcome::Conflict, forced, passes };
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut reduced = CnfFormula::new();
    reduced.reserve_vars(f.num_vars());
    for c in f.clauses() {
        if c.lits().iter().any(|&l| p.value(l) == Some(true)) {
            continue;
        }
        reduced.add_clause(Clause::new(c.lits().iter().copied().filter(|&l| p.value(l).is_none()).collect()));
    }
    for &l in p.trail() {
        reduced.add_clause([l]);
    }
    SweepResult { outcome: SweepOutcome::Simplified(reduced), forced, passes }
}
