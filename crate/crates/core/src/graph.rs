//! Multigraphs with loops and parallel edges, degree bounds and the
//! `gamma` / `delta` edge-set primitives.

use crate::error::{Error, Result};

/// An undirected edge. `u == v` denotes a loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: i64,
}

impl Edge {
    /// The endpoint opposite `x`. For a loop this is `x` itself.
    #[inline]
    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
}

/// Vertex/edge store. Vertex ids are dense in `[0, n)`, edge ids follow
/// insertion order. `f` is identically 1 for ordinary matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<Edge>,
    f: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl Multigraph {
    /// Graph for ordinary matching (`f ≡ 1`).
    pub fn new(n: usize) -> Self {
        Self::with_degrees(vec![1; n])
    }

    /// Graph with degree bounds `f`; every bound must be positive.
    pub fn with_degrees(f: Vec<u32>) -> Self {
        let n = f.len();
        assert!(f.iter().all(|&x| x > 0), "degree bounds must be positive");
        Multigraph { n, edges: Vec::new(), f, adj: vec![Vec::new(); n] }
    }

    /// Adds an edge and returns its id. Loops are listed once in the
    /// adjacency of their vertex.
    pub fn add_edge(&mut self, u: usize, v: usize, w: i64) -> usize {
        assert!(u < self.n && v < self.n, "edge endpoint out of range");
        let id = self.edges.len();
        self.edges.push(Edge { u, v, w });
        self.adj[u].push(id);
        if u != v {
            self.adj[v].push(id);
        }
        id
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn f(&self, v: usize) -> u32 {
        self.f[v]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.f
    }

    /// `Σ f(v)`.
    pub fn f_total(&self) -> u64 {
        self.f.iter().map(|&x| x as u64).sum()
    }

    /// True when some bound differs from 1 or the graph has a loop.
    pub fn is_ffactor_instance(&self) -> bool {
        self.f.iter().any(|&x| x != 1) || self.edges.iter().any(Edge::is_loop)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Largest absolute weight.
    pub fn max_abs_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.w.abs()).max().unwrap_or(0)
    }

    /// Rejects instances whose dual values could leave `i64` range.
    pub fn overflow_guard(&self) -> Result<()> {
        let n = self.n.max(self.f_total() as usize) as i128;
        let w = self.max_abs_weight() as i128;
        if n * (n + 1) * w.max(1) * 4 < (1i128 << 62) {
            Ok(())
        } else {
            Err(Error::OverflowGuard)
        }
    }
}

/// A set of edge ids of a fixed graph.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EdgeSet {
    bits: Vec<bool>,
    len: usize,
}

impl EdgeSet {
    pub fn empty(m: usize) -> Self {
        EdgeSet { bits: vec![false; m], len: 0 }
    }

    pub fn full(m: usize) -> Self {
        EdgeSet { bits: vec![true; m], len: m }
    }

    pub fn from_ids(m: usize, ids: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(m);
        for e in ids {
            s.insert(e);
        }
        s
    }

    pub fn from_flags(bits: Vec<bool>) -> Self {
        let len = bits.iter().filter(|&&b| b).count();
        EdgeSet { bits, len }
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.bits[e]
    }

    pub fn insert(&mut self, e: usize) -> bool {
        let fresh = !self.bits[e];
        if fresh {
            self.bits[e] = true;
            self.len += 1;
        }
        fresh
    }

    pub fn remove(&mut self, e: usize) -> bool {
        let had = self.bits[e];
        if had {
            self.bits[e] = false;
            self.len -= 1;
        }
        had
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn flags(&self) -> &[bool] {
        &self.bits
    }
}

fn membership(g: &Multigraph, s: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; g.n()];
    for &v in s {
        inside[v] = true;
    }
    inside
}

/// Edges of `m` with both ends in `s`; loops at vertices of `s` included.
pub fn gamma(g: &Multigraph, s: &[usize], m: &EdgeSet) -> EdgeSet {
    let inside = membership(g, s);
    EdgeSet::from_ids(
        m.capacity(),
        m.iter().filter(|&e| inside[g.edge(e).u] && inside[g.edge(e).v]),
    )
}

/// Edges of `m` with exactly one end in `s`; loops never qualify.
pub fn delta(g: &Multigraph, s: &[usize], m: &EdgeSet) -> EdgeSet {
    let inside = membership(g, s);
    EdgeSet::from_ids(
        m.capacity(),
        m.iter().filter(|&e| inside[g.edge(e).u] != inside[g.edge(e).v]),
    )
}

/// Degree of `v` in `m`, loops counted twice.
pub fn degree(g: &Multigraph, v: usize, m: &EdgeSet) -> u64 {
    g.adj(v)
        .iter()
        .filter(|&&e| m.contains(e))
        .map(|&e| if g.edge(e).is_loop() { 2 } else { 1 })
        .sum()
}

/// `f(v) − deg_M(v)`.
pub fn deficiency(g: &Multigraph, v: usize, m: &EdgeSet) -> Result<u64> {
    let d = degree(g, v, m);
    let f = g.f(v) as u64;
    if d > f {
        return Err(Error::DegreeViolation { vertex: v, degree: d, bound: f });
    }
    Ok(f - d)
}

/// True iff every vertex has degree exactly `f(v)` in `m`.
pub fn is_f_factor(g: &Multigraph, m: &EdgeSet) -> bool {
    (0..g.n()).all(|v| matches!(deficiency(g, v, m), Ok(0)))
}

/// Total weight of an edge set.
pub fn weight(g: &Multigraph, m: &EdgeSet) -> i64 {
    m.iter().map(|e| g.edge(e).w).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Multigraph {
        let mut g = Multigraph::new(3);
        g.add_edge(0, 1, 1);
        g.add_edge(1, 2, 1);
        g
    }

    #[test]
    fn gamma_delta_on_path() {
        let g = path3();
        let all = EdgeSet::full(g.m());
        assert_eq!(gamma(&g, &[0, 1], &all).iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(delta(&g, &[0, 1], &all).iter().collect::<Vec<_>>(), vec![1]);
        assert!(gamma(&g, &[], &all).is_empty());
        assert!(delta(&g, &[0, 1, 2], &all).is_empty());
    }

    #[test]
    fn loop_is_gamma_not_delta() {
        let mut g = Multigraph::with_degrees(vec![2, 1]);
        g.add_edge(0, 0, 3);
        let all = EdgeSet::full(1);
        assert_eq!(gamma(&g, &[0], &all).len(), 1);
        assert!(delta(&g, &[0], &all).is_empty());
        assert_eq!(degree(&g, 0, &all), 2);
    }

    #[test]
    fn deficiency_counts() {
        let mut g = Multigraph::with_degrees(vec![3, 1, 2]);
        g.add_edge(0, 0, 1);
        g.add_edge(0, 1, 1);
        let all = EdgeSet::full(2);
        assert_eq!(deficiency(&g, 0, &all), Ok(0));
        assert_eq!(deficiency(&g, 2, &all), Ok(2));
        let mut tight = Multigraph::with_degrees(vec![1, 1]);
        tight.add_edge(0, 0, 1);
        assert!(matches!(
            deficiency(&tight, 0, &EdgeSet::full(1)),
            Err(Error::DegreeViolation { vertex: 0, .. })
        ));
    }

    #[test]
    fn f_factor_checks() {
        let mut k4 = Multigraph::new(4);
        for (u, v) in [(0, 1), (2, 3), (0, 2)] {
            k4.add_edge(u, v, 0);
        }
        assert!(is_f_factor(&k4, &EdgeSet::from_ids(3, [0, 1])));
        assert!(!is_f_factor(&k4, &EdgeSet::empty(3)));
        let mut tri = Multigraph::with_degrees(vec![2, 2, 2]);
        tri.add_edge(0, 1, 0);
        tri.add_edge(1, 2, 0);
        tri.add_edge(2, 0, 0);
        assert!(is_f_factor(&tri, &EdgeSet::full(3)));
    }

    #[test]
    fn partition_identity() {
        let mut g = Multigraph::with_degrees(vec![2, 2, 2, 2]);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 3), (0, 0), (0, 3)] {
            g.add_edge(u, v, 0);
        }
        let all = EdgeSet::full(g.m());
        let s = [0, 1];
        let rest = [2, 3];
        let total = gamma(&g, &s, &all).len() + delta(&g, &s, &all).len() + gamma(&g, &rest, &all).len();
        assert_eq!(total, g.m());
    }
}
