use std::fmt;

use crate::cnf::{Assignment, CnfFormula, EdgeVarMap};
use crate::families::Family;
use crate::graph::Graph;
use crate::{Error, Result};

/// The graph whose edges are the true edge variables of `a`.
pub fn decode_graph(a: &Assignment, edges: &EdgeVarMap) -> Result<Graph> {
    let mut g = Graph::empty(edges.n());
    for (i, j, v) in edges.iter() {
        match a.get(v) {
            Some(true) => g.add_edge(i, j)?,
            Some(false) => {}
            None => return Err(Error::UnassignedEdge { i, j, var: v.index() }),
        }
    }
    Ok(g)
}

/// Edge assumptions describing `g` completely.
pub fn edge_assignment(g: &Graph, edges: &EdgeVarMap) -> Assignment {
    let mut a = Assignment::new();
    for (i, j, v) in edges.iter() {
        a.set(v, g.has_edge(i, j));
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// A directed cycle of `g` as a vertex list, if any.
fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let mut state = vec![0u8; n + 1];
    let mut parent = vec![0usize; n + 1];
    for root in 1..=n {
        if state[root] != 0 {
            continue;
        }
        let mut stack = vec![(root, g.successors(root).collect::<Vec<_>>())];
        state[root] = 1;
        while let Some((v, succ)) = stack.last_mut() {
            let v = *v;
            match succ.pop() {
                Some(w) if state[w] == 1 => {
                    let mut cycle = vec![w];
                    let mut x = v;
                    while x != w {
                        cycle.push(x);
                        x = parent[x];
                    }
                    cycle.reverse();
                    cycle.rotate_right(1);
                    return Some(cycle);
                }
                Some(w) if state[w] == 0 => {
                    state[w] = 1;
                    parent[w] = v;
                    stack.push((w, g.successors(w).collect()));
                }
                Some(_) => {}
                None => {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
    }
    None
}

/// Check a model of `family /\ checker`: every clause of `formula` is
/// satisfied, the decoded graph is acyclic, and it belongs to the family.
pub fn verify_model(family: &Family, formula: &CnfFormula, edges: &EdgeVarMap, a: &Assignment) -> Result<VerificationReport> {
    let g = decode_graph(a, edges)?;
    let mut checks = Vec::new();
    checks.push(match formula.first_unsatisfied(a) {
        None => Check { name: "clauses", passed: true, detail: format!("all {} clauses satisfied", formula.num_clauses()) },
        Some(c) => {
            let lits: Vec<String> = c.lits().iter().map(|l| l.to_string()).collect();
            Check { name: "clauses", passed: false, detail: format!("clause ({}) not satisfied", lits.join(" ")) }
        }
    });
    checks.push(match find_cycle(&g) {
        None => Check { name: "acyclic", passed: true, detail: format!("{} edges, no cycle", g.edge_count()) },
        Some(c) => {
            let path: Vec<String> = c.iter().chain(c.first()).map(|v| v.to_string()).collect();
            Check { name: "acyclic", passed: false, detail: format!("cycle {}", path.join(" -> ")) }
        }
    });
    let member = family.contains(&g)?;
    let detail = match (family, member) {
        (_, true) => "graph belongs to the family".to_string(),
        (Family::NoSink { .. }, false) => {
            let sinks: Vec<String> = (1..=g.n()).filter(|&i| g.out_degree(i) == 0).map(|i| i.to_string()).collect();
            format!("sinks at {}", sinks.join(","))
        }
        (Family::Supervisor(b), false) => {
            let bad: Vec<String> = (1..=g.n())
                .filter(|&i| g.in_degree(i) > b.vertex(i).max_in || g.out_degree(i) < b.vertex(i).min_out)
                .map(|i| format!("{i} (in {} out {})", g.in_degree(i), g.out_degree(i)))
                .collect();
            format!("bounds violated at {}", bad.join(", "))
        }
    };
    checks.push(Check { name: "family", passed: member, detail });
    Ok(VerificationReport { checks })
}
