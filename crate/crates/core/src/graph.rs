//! Directed graphs on `[n] = {1, ..., n}`, the DFS cycle oracle and
//! exhaustive enumeration of small graphs.
//!
//! Self-loops are ordinary edges here and count as cycles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest `n` accepted by [`enumerate_graphs`]; `2^(4*4)` graphs is the limit.
pub const ENUMERATION_LIMIT: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n] }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Graph whose edge set is given by the bits of `mask`, with bit
    /// `(i-1)*n + (j-1)` standing for edge `ij`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "mask too narrow for n = {n}");
        let adj = (0..n * n).map(|b| mask >> b & 1 == 1).collect();
        Graph { n, adj }
    }

    pub fn mask(&self) -> u64 {
        assert!(self.n * self.n <= 64, "mask too narrow for n = {}", self.n);
        self.adj
            .iter()
            .enumerate()
            .fold(0, |m, (b, &e)| if e { m | 1 << b } else { m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + (j - 1)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        let s = self.slot(i, j);
        self.adj[s] = true;
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> Result<()> {
        self.check(i)?;
        self.check(j)?;
        let s = self.slot(i, j);
        self.adj[s] = false;
        Ok(())
    }

    /// Returns false for out-of-range vertices.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.adj[self.slot(i, j)]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &e)| e)
            .map(move |(s, _)| (s / n + 1, s % n + 1))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count()
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (1..=self.n).filter(move |&j| self.has_edge(i, j))
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.successors(i).count()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (1..=self.n).filter(|&i| self.has_edge(i, j)).count()
    }

    /// True iff the graph has a directed cycle. Iterative three-colour DFS.
    pub fn has_cycle(&self) -> bool {
        #[derive(Clone, Copy, PartialEq)]
        enum Colour {
            White,
            Grey,
            Black,
        }
        let n = self.n;
        let mut colour = vec![Colour::White; n + 1];
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 1..=n {
            if colour[root] != Colour::White {
                continue;
            }
            colour[root] = Colour::Grey;
            stack.push((root, 1));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                if *next > n {
                    colour[v] = Colour::Black;
                    stack.pop();
                    continue;
                }
                let w = *next;
                *next += 1;
                if !self.has_edge(v, w) {
                    continue;
                }
                match colour[w] {
                    Colour::Grey => return true,
                    Colour::White => {
                        colour[w] = Colour::Grey;
                        stack.push((w, 1));
                    }
                    Colour::Black => {}
                }
            }
        }
        false
    }

    pub fn is_acyclic(&self) -> bool {
        !self.has_cycle()
    }

    /// Kahn's algorithm. `None` when the graph is cyclic.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg: Vec<usize> = (0..=self.n)
            .map(|j| if j == 0 { 0 } else { self.in_degree(j) })
            .collect();
        let mut ready: Vec<usize> = (1..=self.n).filter(|&j| indeg[j] == 0).rev().collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            order.push(v);
            for w in self.successors(v) {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(w);
                }
            }
        }
        (order.len() == self.n).then_some(order)
    }

    /// Edges `ij` such that `j` is reachable from `i` by a path of length >= 1.
    pub fn transitive_closure(&self) -> Graph {
        let n = self.n;
        let mut tc = self.clone();
        for k in 1..=n {
            for i in 1..=n {
                if !tc.has_edge(i, k) {
                    continue;
                }
                for j in 1..=n {
                    if tc.has_edge(k, j) {
                        let s = tc.slot(i, j);
                        tc.adj[s] = true;
                    }
                }
            }
        }
        tc
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {{", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}{j}")?;
            if self.n > 9 {
                f.write_str(" ")?;
            }
        }
        f.write_str("})")
    }
}

/// Per-vertex bounds of the Supervisor problem: vertex `i` may have at most
/// `max_in` incoming edges and must have at least `min_out` outgoing ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexBounds {
    pub max_in: usize,
    pub min_out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegreeBounds(Vec<VertexBounds>);

pub type SupervisorBounds = DegreeBounds;

impl DegreeBounds {
    /// Bounds from `(max_in, min_out)` pairs, vertex 1 first.
    pub fn new<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        DegreeBounds(
            pairs
                .into_iter()
                .map(|(max_in, min_out)| VertexBounds { max_in, min_out })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Bounds of vertex `i` (1-based).
    pub fn vertex(&self, i: usize) -> VertexBounds {
        self.0[i - 1]
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexBounds> + '_ {
        self.0.iter().copied()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.0.iter().map(|b| (b.max_in, b.min_out)).collect()
    }
}

/// In-degree of every vertex at most its `max_in`, out-degree at least its `min_out`.
pub fn satisfies_bounds(g: &Graph, b: &DegreeBounds) -> Result<bool> {
    if b.n() != g.n() {
        return Err(Error::SizeMismatch { expected: g.n(), actual: b.n() });
    }
    Ok((1..=g.n()).all(|i| {
        let vb = b.vertex(i);
        g.in_degree(i) <= vb.max_in && g.out_degree(i) >= vb.min_out
    }))
}

/// All `2^(n*n)` graphs on `[n]`, in increasing edge-mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    if n > ENUMERATION_LIMIT {
        return Err(Error::EnumerationLimit { n, limit: ENUMERATION_LIMIT });
    }
    Ok((0..1u64 << (n * n)).map(move |m| Graph::from_mask(n, m)))
}
