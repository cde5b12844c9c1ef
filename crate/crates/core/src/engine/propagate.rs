use crate::cnf::{Assignment, CnfFormula, Lit, Var};

/// Two-watched-literal unit propagation with a decision-level trail.
///
/// Clauses are deduplicated on construction. Propagation visits the trail in
/// order and each watch list in insertion order, so results are
/// deterministic for a given formula.
#[derive(Clone, Debug)]
pub struct Propagator {
    clauses: Vec<Vec<Lit>>,
    /// Index of each stored clause in the source formula.
    origin: Vec<usize>,
    watches: Vec<Vec<usize>>,
    units: Vec<(Lit, usize)>,
    values: Vec<i8>,
    reasons: Vec<Option<usize>>,
    trail: Vec<Lit>,
    levels: Vec<usize>,
    head: usize,
    root_conflict: Option<usize>,
}

impl Propagator {
    /// Set up and propagate the unit clauses at level 0.
    pub fn new(f: &CnfFormula) -> Self {
        let nv = f.num_vars() as usize;
        let mut p = Propagator {
            clauses: Vec::new(),
            origin: Vec::new(),
            watches: vec![Vec::new(); 2 * nv],
            units: Vec::new(),
            values: vec![0; nv + 1],
            reasons: vec![None; nv + 1],
            trail: Vec::new(),
            levels: Vec::new(),
            head: 0,
            root_conflict: None,
        };
        for (idx, c) in f.clauses().iter().enumerate() {
            let lits = c.normalized().lits().to_vec();
            match lits.len() {
                0 => {
                    p.root_conflict.get_or_insert(idx);
                }
                1 => p.units.push((lits[0], idx)),
                _ => {
                    let id = p.clauses.len();
                    p.watches[lits[0].code()].push(id);
                    p.watches[lits[1].code()].push(id);
                    p.clauses.push(lits);
                    p.origin.push(idx);
                }
            }
        }
        if p.root_conflict.is_none() {
            for i in 0..p.units.len() {
                let (l, idx) = p.units[i];
                match p.value(l) {
                    Some(true) => {}
                    Some(false) => {
                        p.root_conflict = Some(idx);
                        break;
                    }
                    None => p.enqueue(l, Some(idx)),
                }
            }
        }
        if p.root_conflict.is_none() {
            p.root_conflict = p.propagate();
        }
        p
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    /// The clause refuted at level 0 (empty clause, clashing units, or propagation).
    pub fn root_conflict(&self) -> Option<usize> {
        self.root_conflict
    }

    #[inline]
    pub fn value(&self, l: Lit) -> Option<bool> {
        let v = *self.values.get(l.var().index() as usize)?;
        match v {
            0 => None,
            s => Some((s > 0) == l.is_positive()),
        }
    }

    pub fn var_value(&self, v: Var) -> Option<bool> {
        self.value(v.pos())
    }

    /// Source-formula index of the clause that implied `v`.
    pub fn reason(&self, v: Var) -> Option<usize> {
        self.reasons.get(v.index() as usize).copied().flatten()
    }

    /// Assign `l`, which must be unassigned; `reason` is a source clause index.
    pub fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var().index() as usize;
        debug_assert_eq!(self.values[v], 0);
        self.values[v] = if l.is_positive() { 1 } else { -1 };
        self.reasons[v] = reason;
        self.trail.push(l);
    }

    /// Propagate to fixpoint; returns the source index of a falsified clause.
    pub fn propagate(&mut self) -> Option<usize> {
        while self.head < self.trail.len() {
            let falsified = !self.trail[self.head];
            self.head += 1;
            let mut ws = std::mem::take(&mut self.watches[falsified.code()]);
            let mut keep = 0;
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let cid = ws[i];
                i += 1;
                let c = &mut self.clauses[cid];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let first = c[0];
                if value_in(&self.values, first) == Some(true) {
                    ws[keep] = cid;
                    keep += 1;
                    continue;
                }
                if let Some(k) = (2..c.len()).find(|&k| value_in(&self.values, c[k]) != Some(false)) {
                    c.swap(1, k);
                    let w = c[1];
                    self.watches[w.code()].push(cid);
                    continue;
                }
                ws[keep] = cid;
                keep += 1;
                if value_in(&self.values, first) == Some(false) {
                    conflict = Some(self.origin[cid]);
                    while i < ws.len() {
                        ws[keep] = ws[i];
                        keep += 1;
                        i += 1;
                    }
                } else {
                    let origin = self.origin[cid];
                    self.enqueue(first, Some(origin));
                }
            }
            ws.truncate(keep);
            self.watches[falsified.code()] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    /// Current decision level (0 = root).
    pub fn level(&self) -> usize {
        self.levels.len()
    }

    pub fn new_level(&mut self) {
        self.levels.push(self.trail.len());
    }

    /// Undo every assignment above `level`.
    pub fn backtrack(&mut self, level: usize) {
        if level >= self.levels.len() {
            return;
        }
        let keep = self.levels[level];
        for l in self.trail.drain(keep..) {
            let v = l.var().index() as usize;
            self.values[v] = 0;
            self.reasons[v] = None;
        }
        self.levels.truncate(level);
        self.head = self.head.min(keep);
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    pub fn assignment(&self) -> Assignment {
        let mut a = Assignment::new();
        for &l in &self.trail {
            a.assign(l);
        }
        a
    }

    /// Some clause not yet satisfied, shortest first by unassigned count,
    /// earliest on ties; with its first unassigned literal.
    pub(crate) fn pick_branch(&self) -> Option<Lit> {
        let mut best: Option<(usize, Lit)> = None;
        for c in &self.clauses {
            let mut open = 0;
            let mut first = None;
            let mut satisfied = false;
            for &l in c {
                match self.value(l) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        open += 1;
                        first.get_or_insert(l);
                    }
                }
            }
            if satisfied {
                continue;
            }
            if let Some(l) = first {
                if best.is_none_or(|(o, _)| open < o) {
                    best = Some((open, l));
                    if open == 2 {
                        break;
                    }
                }
            }
        }
        best.map(|(_, l)| l)
    }
}

#[inline]
fn value_in(values: &[i8], l: Lit) -> Option<bool> {
    match values[l.var().index() as usize] {
        0 => None,
        s => Some((s > 0) == l.is_positive()),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationStatus {
    /// Index of a falsified clause in the formula.
    Conflict(usize),
    Fixpoint,
}

#[derive(Clone, Debug)]
pub struct PropagationResult {
    pub status: PropagationStatus,
    /// Assumptions plus implied literals (up to the conflict).
    pub assignment: Assignment,
}

impl PropagationResult {
    pub fn is_conflict(&self) -> bool {
        matches!(self.status, PropagationStatus::Conflict(_))
    }
}

/// Unit propagation from `assumptions` to a fixpoint or a conflict.
pub fn unit_propagate(f: &CnfFormula, assumptions: &Assignment) -> PropagationResult {
    let mut p = Propagator::new(f);
    let status = propagate_under(&mut p, assumptions);
    PropagationResult { status, assignment: p.assignment() }
}

/// Add `assumptions` at a new level of `p` and propagate.
pub(crate) fn propagate_under(p: &mut Propagator, assumptions: &Assignment) -> PropagationStatus {
    if let Some(c) = p.root_conflict() {
        return PropagationStatus::Conflict(c);
    }
    p.new_level();
    for l in assumptions.lits() {
        if l.var().index() as usize > p.num_vars() {
            continue;
        }
        match p.value(l) {
            Some(true) => {}
            Some(false) => {
                let r = p.reason(l.var()).expect("implied at the root by a clause");
                return PropagationStatus::Conflict(r);
            }
            None => p.enqueue(l, None),
        }
    }
    match p.propagate() {
        Some(c) => PropagationStatus::Conflict(c),
        None => PropagationStatus::Fixpoint,
    }
}
