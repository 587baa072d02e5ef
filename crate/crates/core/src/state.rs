//! Solver state shared by the search engine and the scaling drivers.

use crate::duals::{CertBlossom, Certificate};
use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::graph::{EdgeSet, Multigraph};

/// Region id of vertices outside every active shell.
pub const INACTIVE: u32 = u32::MAX;

/// Graph, current weights, matching, `y′` values, current blossoms and
/// the shell region of every vertex.
#[derive(Debug, Clone)]
pub struct Core {
    pub g: Multigraph,
    pub w: Vec<i64>,
    pub matched: Vec<bool>,
    pub deg: Vec<u32>,
    pub yp: Vec<i64>,
    pub forest: Forest,
    pub region: Vec<u32>,
}

impl Core {
    /// Empty matching, zero duals, all vertices in region 0.
    pub fn new(g: Multigraph, w: Vec<i64>) -> Self {
        let n = g.n();
        let m = g.m();
        assert_eq!(w.len(), m);
        Core {
            g,
            w,
            matched: vec![false; m],
            deg: vec![0; n],
            yp: vec![0; n],
            forest: Forest::new(n),
            region: vec![0; n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.g.n()
    }

    /// `f(v) − deg(v)`.
    #[inline]
    pub fn def(&self, v: usize) -> u32 {
        self.g.f(v) - self.deg[v]
    }

    /// Flips the matched status of `e`, keeping degrees in step.
    pub fn flip(&mut self, e: usize) -> Result<()> {
        let ed = *self.g.edge(e);
        let on = !self.matched[e];
        self.matched[e] = on;
        for x in [ed.u, ed.v] {
            if on {
                self.deg[x] += 1;
                if self.deg[x] > self.g.f(x) {
                    return Err(Error::DegreeViolation {
                        vertex: x,
                        degree: self.deg[x] as u64,
                        bound: self.g.f(x) as u64,
                    });
                }
            } else {
                self.deg[x] -= 1;
            }
        }
        Ok(())
    }

    /// True iff `e` is in `I(b)` for a live blossom `b` with `e ∈ δ(b)`.
    #[inline]
    pub fn in_i(&self, e: usize, b: usize) -> bool {
        self.matched[e] != (self.forest.blossom(b).eta == Some(e))
    }

    /// `Σ z` over the current blossoms containing `v`, stored values.
    pub fn zchain(&self, v: usize) -> i64 {
        self.forest.ancestors(v).into_iter().map(|b| self.forest.blossom(b).z).sum()
    }

    /// `ŷz(e)` from stored values, counting current blossoms through
    /// `γ(B) ∪ I(B)`. Valid when no search is in progress.
    pub fn hyz(&self, e: usize) -> i64 {
        let ed = *self.g.edge(e);
        let mut h = self.yp[ed.u] + self.yp[ed.v];
        let au = self.forest.ancestors(ed.u);
        let av = self.forest.ancestors(ed.v);
        for &b in &au {
            if av.contains(&b) || self.in_i(e, b) {
                h += self.forest.blossom(b).z;
            }
        }
        for &b in &av {
            if !au.contains(&b) && self.in_i(e, b) {
                h += self.forest.blossom(b).z;
            }
        }
        h
    }

    /// The matching as an edge set.
    pub fn matching(&self) -> EdgeSet {
        EdgeSet::from_flags(self.matched.clone())
    }

    /// Total deficiency of vertices in `region`.
    pub fn free_in(&self, region: u32) -> u64 {
        (0..self.n()).filter(|&v| self.region[v] == region).map(|v| self.def(v) as u64).sum()
    }
}

impl Core {
    /// Certificate for the current state. `y′` stands in for `y`, so any
    /// remaining root-level `z(V)` must already be folded into it.
    pub fn certificate(&self, ffactor: bool, mult: i64, offset: i64, slack: i64) -> Certificate {
        let blossoms = self
            .forest
            .alive()
            .map(|b| {
                let bl = self.forest.blossom(b);
                let mut vertices = self.forest.vertices(b);
                vertices.sort_unstable();
                let mut edges = self.forest.subgraph_edges(b);
                edges.sort_unstable();
                CertBlossom { id: b, z: bl.z, vertices, eta: bl.eta, edges }
            })
            .collect();
        let matching: Vec<usize> = (0..self.g.m()).filter(|&e| self.matched[e]).collect();
        let undervalued = matching
            .iter()
            .filter_map(|&e| {
                let gap = self.hyz(e) - self.w[e];
                (gap < -slack).then_some((e, -slack - gap))
            })
            .collect();
        Certificate {
            ffactor,
            mult,
            offset,
            slack,
            expansions: Vec::new(),
            y: self.yp.clone(),
            blossoms,
            matching,
            undervalued,
        }
    }
}
