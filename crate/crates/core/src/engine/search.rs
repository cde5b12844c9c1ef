use std::collections::BTreeSet;

use super::propagate::{propagate_under, PropagationStatus, Propagator};
use crate::cnf::{Assignment, CnfFormula, Lit, Var};
use crate::{Error, Result};

/// Largest projection [`enumerate_models`] accepts.
pub const PROJECTION_LIMIT: usize = 16;

/// Chronological backtracking over `p` starting at its current level.
/// Leaves `p` at the satisfying trail, or back at the starting level.
fn dpll(p: &mut Propagator, order: &[Var]) -> bool {
    let base = p.level();
    // (decision, both polarities tried)
    let mut stack: Vec<(Lit, bool)> = Vec::new();
    let mut conflict = p.propagate().is_some();
    loop {
        if conflict {
            loop {
                match stack.pop() {
                    None => {
                        p.backtrack(base);
                        return false;
                    }
                    Some((l, false)) => {
                        p.backtrack(base + stack.len());
                        p.new_level();
                        p.enqueue(!l, None);
                        stack.push((!l, true));
                        break;
                    }
                    Some((_, true)) => {}
                }
            }
        } else {
            let next = order.iter().find(|v| p.var_value(**v).is_none()).map(|v| v.pos()).or_else(|| p.pick_branch());
            match next {
                None => return true,
                Some(l) => {
                    p.new_level();
                    p.enqueue(l, None);
                    stack.push((l, false));
                }
            }
        }
        conflict = p.propagate().is_some();
    }
}

/// A model of `f` extending `assumptions`, or `None` if there is none.
/// Variables left unassigned by the search are set false.
pub fn solve(f: &CnfFormula, assumptions: &Assignment) -> Option<Assignment> {
    solve_with_order(f, assumptions, &[])
}

/// As [`solve`], branching on `order` first (positive polarity first).
pub fn solve_with_order(f: &CnfFormula, assumptions: &Assignment, order: &[Var]) -> Option<Assignment> {
    let mut p = Propagator::new(f);
    if propagate_under(&mut p, assumptions) != PropagationStatus::Fixpoint {
        return None;
    }
    if !dpll(&mut p, order) {
        return None;
    }
    let mut a = p.assignment();
    for v in 1..=f.num_vars() {
        let v = Var::new(v).expect("positive");
        if a.get(v).is_none() {
            a.set(v, false);
        }
    }
    debug_assert!(f.is_satisfied_by(&a));
    Some(a)
}

/// Projected model set: bit `k` of a mask is the value of `vars[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSet {
    pub vars: Vec<Var>,
    pub masks: BTreeSet<u32>,
}

impl ModelSet {
    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn contains_mask(&self, mask: u32) -> bool {
        self.masks.contains(&mask)
    }

    /// Whether the projection of `a` (which must assign every projected var) is a model.
    pub fn contains(&self, a: &Assignment) -> bool {
        let mut mask = 0;
        for (k, &v) in self.vars.iter().enumerate() {
            if a.get(v) == Some(true) {
                mask |= 1 << k;
            }
        }
        self.contains_mask(mask)
    }
}

/// All assignments to `project` that extend to a model of `f`.
///
/// Branches on the projected variables in order, pruning with unit
/// propagation, and decides each complete projected assignment by search.
pub fn enumerate_models(f: &CnfFormula, project: &[Var]) -> Result<ModelSet> {
    if project.len() > PROJECTION_LIMIT {
        return Err(Error::ProjectionLimit { vars: project.len(), limit: PROJECTION_LIMIT });
    }
    let mut masks = BTreeSet::new();
    let mut p = Propagator::new(f);
    let unseen = project.iter().any(|v| v.index() as usize > p.num_vars());
    if p.root_conflict().is_none() {
        let mut f = f.clone();
        if unseen {
            // mention every projected variable so it has a slot
            f.reserve_vars(project.iter().map(|v| v.index()).max().unwrap_or(0));
            p = Propagator::new(&f);
        }
        walk(&mut p, project, 0, &mut masks);
    }
    Ok(ModelSet { vars: project.to_vec(), masks })
}

fn walk(p: &mut Propagator, project: &[Var], k: usize, masks: &mut BTreeSet<u32>) {
    if k == project.len() {
        if dpll(p, &[]) {
            let mut mask = 0;
            for (i, &v) in project.iter().enumerate() {
                if p.var_value(v) == Some(true) {
                    mask |= 1 << i;
                }
            }
            masks.insert(mask);
        }
        return;
    }
    let v = project[k];
    match p.var_value(v) {
        Some(_) => {
            let level = p.level();
            walk(p, project, k + 1, masks);
            p.backtrack(level);
        }
        None => {
            for value in [false, true] {
                let level = p.level();
                p.new_level();
                p.enqueue(v.lit(value), None);
                if p.propagate().is_none() {
                    walk(p, project, k + 1, masks);
                }
                p.backtrack(level);
            }
        }
    }
}
