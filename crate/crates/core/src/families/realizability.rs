use std::collections::VecDeque;

use crate::graph::DegreeBounds;

/// Is there a digraph on `[n]` with in-degree of `j` at most `u_j` and
/// out-degree of `i` at least `l_i`? Every ordered pair may be used once;
/// the diagonal pairs only when `allow_self_loops` is set.
///
/// This is a transportation problem: vertex `i` supplies `l_i` edge ends,
/// vertex `j` absorbs at most `u_j`, each pair carries at most one.
pub fn digraph_realizable(b: &DegreeBounds, allow_self_loops: bool) -> bool {
    if allow_self_loops {
        complete_transport_feasible(b)
    } else {
        max_flow_feasible(b, false)
    }
}

/// Complete bipartite case. By max-flow/min-cut, feasible iff for every
/// `r`, the `r` largest demands sum to at most `sum_j min(u_j, r)`.
fn complete_transport_feasible(b: &DegreeBounds) -> bool {
    let mut l: Vec<usize> = b.iter().map(|v| v.min_out).collect();
    l.sort_unstable_by(|x, y| y.cmp(x));
    let mut demand = 0;
    for (r, li) in l.iter().enumerate() {
        demand += li;
        let cap: usize = b.iter().map(|v| v.max_in.min(r + 1)).sum();
        if demand > cap {
            return false;
        }
    }
    true
}

struct Edge {
    to: usize,
    cap: usize,
}

struct FlowNet {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, from: usize, to: usize, cap: usize) {
        self.adj[from].push(self.edges.len());
        self.edges.push(Edge { to, cap });
        self.adj[to].push(self.edges.len());
        self.edges.push(Edge { to: from, cap: 0 });
    }

    /// Dinic's algorithm.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let n = self.adj.len();
        let mut flow = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                for &e in &self.adj[v] {
                    let Edge { to, cap } = self.edges[e];
                    if cap > 0 && level[to] == usize::MAX {
                        level[to] = level[v] + 1;
                        q.push_back(to);
                    }
                }
            }
            if level[t] == usize::MAX {
                return flow;
            }
            let mut next = vec![0; n];
            loop {
                let pushed = self.augment(s, t, usize::MAX, &level, &mut next);
                if pushed == 0 {
                    break;
                }
                flow += pushed;
            }
        }
    }

    fn augment(&mut self, v: usize, t: usize, limit: usize, level: &[usize], next: &mut [usize]) -> usize {
        if v == t {
            return limit;
        }
        while next[v] < self.adj[v].len() {
            let e = self.adj[v][next[v]];
            let Edge { to, cap } = self.edges[e];
            if cap > 0 && level[to] == level[v] + 1 {
                let pushed = self.augment(to, t, limit.min(cap), level, next);
                if pushed > 0 {
                    self.edges[e].cap -= pushed;
                    self.edges[e ^ 1].cap += pushed;
                    return pushed;
                }
            }
            next[v] += 1;
        }
        0
    }
}

fn max_flow_feasible(b: &DegreeBounds, allow_self_loops: bool) -> bool {
    let n = b.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    let mut demand = 0;
    for i in 0..n {
        let v = b.vertex(i + 1);
        demand += v.min_out;
        net.add(s, i, v.min_out);
        net.add(n + i, t, v.max_in);
        for j in 0..n {
            if allow_self_loops || i != j {
                net.add(i, n + j, 1);
            }
        }
    }
    net.max_flow(s, t) == demand
}
