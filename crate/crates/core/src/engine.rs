//! Event-driven Edmonds search over the tops of one region: grow, blossom,
//! expand and augment steps, dual adjustment by timestamps, and the
//! maximal-disjoint-augment mode.
//!
//! The engine handles f-factors directly: a vertex of deficiency `k` is a
//! root, and for a blossom `B` the edges of `I(B) = δ_M(B) ⊕ η(B)` see
//! `B` with its label flipped. With `f ≡ 1` every `I(B)` is empty and the
//! rules reduce to the ordinary ones.

use std::collections::VecDeque;

use crate::bucket::BucketPQ;
use crate::duals::{delay, Elig};
use crate::error::{Error, Result};
use crate::forest::NONE;
use crate::state::Core;

macro_rules! trace {
    ($s:expr, $($arg:tt)*) => {
        if $s.cfg.trace {
            let line = format!("t={} {}", $s.now, format!($($arg)*));
            $s.log.push(line);
        }
    };
}

const UNL: u8 = 0;
const OUTER: u8 = 1;
const INNER: u8 = 2;

const GROW: usize = 0;
const JOIN: usize = 1;
const EXPAND: usize = 2;

#[derive(Debug, Clone, Copy)]
pub struct SearchCfg {
    pub elig: Elig,
    pub region: u32,
    /// Keep searching after an augment, ignoring the trees it used.
    pub max_disjoint: bool,
    /// Record one line per step in [`Search::log`].
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub grows: u64,
    pub blossoms: u64,
    pub expands: u64,
    pub augments: u64,
    pub scans: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Augmented,
    Idle,
}

#[derive(Debug, Clone, Copy)]
enum Ev {
    Edge(usize),
    Expand(usize),
}

#[derive(Debug, Clone, Copy)]
struct Cand {
    kind: usize,
    d: i64,
    from: usize,
    to: usize,
}

/// One search over the region `cfg.region` of `core`. Dual values move
/// with the clock `now`; [`Search::finish`] writes them back.
pub struct Search<'a> {
    core: &'a mut Core,
    cfg: SearchCfg,
    now: i64,
    vlab: Vec<u8>,
    vst: Vec<i64>,
    nlab: Vec<u8>,
    nst: Vec<i64>,
    tau: Vec<usize>,
    tree: Vec<usize>,
    mark: Vec<u64>,
    stamp: u64,
    dead: Vec<bool>,
    touched_v: Vec<usize>,
    touched_n: Vec<usize>,
    ready: [VecDeque<Ev>; 3],
    pq: BucketPQ<Ev>,
    stats: SearchStats,
    last_path: Vec<usize>,
    log: Vec<String>,
}

impl<'a> Search<'a> {
    pub fn new(core: &'a mut Core, cfg: SearchCfg) -> Self {
        let n = core.n();
        let nodes = core.forest.nodes();
        Search {
            cfg,
            now: 0,
            vlab: vec![UNL; n],
            vst: vec![0; n],
            nlab: vec![UNL; nodes],
            nst: vec![0; nodes],
            tau: vec![NONE; nodes],
            tree: vec![NONE; nodes],
            mark: vec![0; nodes],
            stamp: 0,
            dead: Vec::new(),
            touched_v: Vec::new(),
            touched_n: Vec::new(),
            ready: [VecDeque::new(), VecDeque::new(), VecDeque::new()],
            pq: BucketPQ::new(n.max(1)),
            stats: SearchStats::default(),
            last_path: Vec::new(),
            log: Vec::new(),
            core,
        }
    }

    pub fn core(&self) -> &Core {
        self.core
    }

    pub fn now(&self) -> i64 {
        self.now
    }

    pub fn stats(&self) -> SearchStats {
        self.stats
    }

    /// Edges of the most recent augmenting trail, in walk order.
    pub fn last_path(&self) -> &[usize] {
        &self.last_path
    }

    /// Step trace, when enabled.
    pub fn log(&self) -> &[String] {
        &self.log
    }

    pub fn take_log(&mut self) -> Vec<String> {
        std::mem::take(&mut self.log)
    }


    pub fn pq_pages(&self) -> u64 {
        self.pq.pages_used()
    }

    /// Moves the search to another region id (after a shell merge) and
    /// relabels the listed vertices into it.
    pub fn set_region(&mut self, region: u32, vertices: &[usize]) {
        self.cfg.region = region;
        for &v in vertices {
            self.core.region[v] = region;
        }
    }

    fn ensure(&mut self) {
        let nodes = self.core.forest.nodes();
        if self.nlab.len() < nodes {
            self.nlab.resize(nodes, UNL);
            self.nst.resize(nodes, 0);
            self.tau.resize(nodes, NONE);
            self.tree.resize(nodes, NONE);
            self.mark.resize(nodes, 0);
        }
    }

    /// Current `y′(v)`.
    pub fn y(&self, v: usize) -> i64 {
        let base = self.core.yp[v];
        match self.vlab[v] {
            OUTER => base - (self.now - self.vst[v]),
            INNER => base + (self.now - self.vst[v]),
            _ => base,
        }
    }

    /// Current `z` of a blossom node.
    pub fn z(&self, b: usize) -> i64 {
        let z = self.core.forest.blossom(b).z;
        match self.nlab[b] {
            OUTER => z + 2 * (self.now - self.nst[b]),
            INNER => z - 2 * (self.now - self.nst[b]),
            _ => z,
        }
    }

    fn set_vlab(&mut self, v: usize, lab: u8) {
        self.core.yp[v] = self.y(v);
        self.vst[v] = self.now;
        if self.vlab[v] == UNL && lab != UNL {
            self.touched_v.push(v);
        }
        self.vlab[v] = lab;
    }

    fn set_nlab(&mut self, node: usize, lab: u8) {
        if self.core.forest.is_blossom(node) {
            let z = self.z(node);
            self.core.forest.blossom_mut(node).z = z;
        }
        self.nst[node] = self.now;
        if self.nlab[node] == UNL && lab != UNL {
            self.touched_n.push(node);
        }
        self.nlab[node] = lab;
    }

    fn zchain(&self, v: usize) -> i64 {
        self.core.forest.ancestors(v).into_iter().map(|b| self.z(b)).sum()
    }

    /// Current `ŷz(e) − w(e)` for an edge between two distinct tops or a
    /// loop at an atom.
    pub fn slack(&self, e: usize) -> i64 {
        let ed = *self.core.g.edge(e);
        let f = &self.core.forest;
        let mut h = self.y(ed.u) + self.y(ed.v);
        for x in [ed.u, ed.v] {
            let t = f.top(x);
            if f.is_blossom(t) && self.core.in_i(e, t) {
                h += self.zchain(x);
            }
        }
        h - self.core.w[e]
    }

    fn side(&self, node: usize, e: usize, lab: u8) -> u8 {
        if self.core.forest.is_blossom(node) && self.core.in_i(e, node) {
            OUTER + INNER - lab
        } else {
            lab
        }
    }

    fn usable(side: u8, matched: bool) -> bool {
        (side == OUTER && !matched) || (side == INNER && matched)
    }

    fn eval(&self, e: usize) -> Result<Option<Cand>> {
        let ed = *self.core.g.edge(e);
        let r = self.cfg.region;
        if self.core.region[ed.u] != r || self.core.region[ed.v] != r {
            return Ok(None);
        }
        let f = &self.core.forest;
        let (x, y) = (f.top(ed.u), f.top(ed.v));
        if x == y && f.is_blossom(x) {
            return Ok(None);
        }
        let (lx, ly) = (self.nlab[x], self.nlab[y]);
        if lx == UNL && ly == UNL {
            return Ok(None);
        }
        if self.cfg.max_disjoint
            && ((lx != UNL && self.dead[self.tree[x]]) || (ly != UNL && self.dead[self.tree[y]]))
        {
            return Ok(None);
        }
        let m = self.core.matched[e];
        let sx = if lx == UNL { UNL } else { self.side(x, e, lx) };
        let sy = if ly == UNL { UNL } else { self.side(y, e, ly) };
        let (ux, uy) = (Self::usable(sx, m), Self::usable(sy, m));
        let (kind, dir, rate, from, to) = if ux && uy {
            if sx != sy {
                return Ok(None);
            }
            (JOIN, sx, 2, x, y)
        } else if ux && ly == UNL {
            (GROW, sx, 1, x, y)
        } else if uy && lx == UNL {
            (GROW, sy, 1, y, x)
        } else {
            return Ok(None);
        };
        let s = self.slack(e);
        match delay(self.cfg.elig, m, s, dir == OUTER, rate) {
            Some(d) => Ok(Some(Cand { kind, d, from, to })),
            None => Err(Error::InfeasibleAdjust {
                edge: e,
                detail: format!("slack {s} at rate {rate} never reaches eligibility"),
            }),
        }
    }

    fn consider(&mut self, e: usize) -> Result<()> {
        if let Some(c) = self.eval(e)? {
            trace!(self, "cand e{e} kind {} d {}", c.kind, c.d);
            if c.d == 0 {
                self.ready[c.kind].push_back(Ev::Edge(e));
            } else {
                self.pq.push(self.now + c.d, Ev::Edge(e));
            }
        }
        Ok(())
    }

    fn scan(&mut self, v: usize) -> Result<()> {
        self.stats.scans += 1;
        for i in 0..self.core.g.adj(v).len() {
            let e = self.core.g.adj(v)[i];
            self.consider(e)?;
        }
        Ok(())
    }

    /// Scans the given vertices for new candidate edges.
    pub fn rescan(&mut self, vertices: &[usize]) -> Result<()> {
        for &v in vertices {
            self.scan(v)?;
        }
        Ok(())
    }

    /// Makes every free, unlabelled top containing a listed vertex an
    /// outer root. Returns the number of new roots.
    pub fn add_roots(&mut self, vertices: &[usize]) -> Result<usize> {
        self.ensure();
        let mut count = 0;
        for &v in vertices {
            let t = self.core.forest.top(v);
            if self.nlab[t] != UNL || self.core.region[v] != self.cfg.region {
                continue;
            }
            let free = if self.core.forest.is_blossom(t) {
                self.core.forest.blossom(t).eta.is_none()
            } else {
                self.core.def(t) > 0
            };
            if !free {
                continue;
            }
            self.tree[t] = self.dead.len();
            self.dead.push(false);
            self.tau[t] = NONE;
            self.label_top(t, OUTER)?;
            count += 1;
        }
        Ok(count)
    }

    fn label_top(&mut self, t: usize, lab: u8) -> Result<()> {
        self.set_nlab(t, lab);
        let members = self.core.forest.top_members(t).to_vec();
        for &v in &members {
            self.set_vlab(v, lab);
        }
        for &v in &members {
            self.scan(v)?;
        }
        if lab == INNER && self.core.forest.is_blossom(t) {
            self.schedule_expand(t)?;
        }
        Ok(())
    }

    fn schedule_expand(&mut self, b: usize) -> Result<()> {
        let z = self.z(b);
        if z < 0 || z % 2 != 0 {
            return Err(Error::StructureViolation(format!("inner blossom {b} has z = {z}")));
        }
        if z == 0 {
            self.ready[EXPAND].push_back(Ev::Expand(b));
        } else {
            self.pq.push(self.now + z / 2, Ev::Expand(b));
        }
        Ok(())
    }

    fn pop_ready(&mut self) -> Option<Ev> {
        self.ready.iter_mut().find_map(|q| q.pop_front())
    }

    /// Executes every step that is possible without a dual adjustment.
    /// Stops at the first augment unless in max-disjoint mode.
    pub fn process(&mut self) -> Result<Outcome> {
        let mut augmented = false;
        while let Some(ev) = self.pop_ready() {
            match ev {
                Ev::Edge(e) => {
                    let Some(c) = self.eval(e)? else { continue };
                    if c.d > 0 {
                        self.pq.push(self.now + c.d, Ev::Edge(e));
                        continue;
                    }
                    let aug = if c.kind == GROW { self.grow(e, c.from, c.to)? } else { self.join(e, c.from, c.to)? };
                    if aug {
                        augmented = true;
                        if !self.cfg.max_disjoint {
                            return Ok(Outcome::Augmented);
                        }
                    }
                }
                Ev::Expand(b) => {
                    let f = &self.core.forest;
                    if !f.blossom(b).alive || f.parent(b).is_some() || self.nlab[b] != INNER {
                        continue;
                    }
                    if self.cfg.max_disjoint && self.dead[self.tree[b]] {
                        continue;
                    }
                    let z = self.z(b);
                    if z > 0 {
                        self.pq.push(self.now + z / 2, Ev::Expand(b));
                    } else {
                        self.expand(b)?;
                    }
                }
            }
        }
        Ok(if augmented { Outcome::Augmented } else { Outcome::Idle })
    }

    /// Time until the earliest scheduled event, if any.
    pub fn next_delay(&mut self) -> Option<i64> {
        self.pq.peek_time().map(|t| t - self.now)
    }

    /// Adjusts duals by `delta`: outer `y′` down, inner up, outer blossom
    /// `z` up by `2δ`, inner down. Events falling due become ready.
    pub fn advance(&mut self, delta: i64) -> Result<()> {
        if delta < 0 {
            return Err(Error::StructureViolation(format!("negative adjustment {delta}")));
        }
        if let Some(t) = self.pq.peek_time() {
            if t < self.now + delta {
                return Err(Error::InfeasibleAdjust {
                    edge: NONE,
                    detail: format!("adjustment {delta} skips an event due in {}", t - self.now),
                });
            }
        }
        self.now += delta;
        trace!(self, "adjust {delta}");
        while let Some(ev) = self.pq.pop_until(self.now) {
            match ev {
                Ev::Edge(e) => self.consider(e)?,
                Ev::Expand(_) => self.ready[EXPAND].push_back(ev),
            }
        }
        Ok(())
    }

    /// Writes the timed duals back to the core and clears all labels.
    pub fn finish(mut self) -> SearchStats {
        for v in std::mem::take(&mut self.touched_v) {
            if self.vlab[v] != UNL {
                self.set_vlab(v, UNL);
            }
        }
        for node in std::mem::take(&mut self.touched_n) {
            if self.nlab[node] != UNL {
                self.set_nlab(node, UNL);
            }
        }
        self.stats
    }

    fn end_in(&self, e: usize, node: usize) -> usize {
        let ed = self.core.g.edge(e);
        if self.core.forest.top(ed.u) == node {
            ed.u
        } else {
            ed.v
        }
    }

    fn parent_top(&self, node: usize) -> usize {
        let t = self.tau[node];
        if t == NONE {
            return NONE;
        }
        let ed = self.core.g.edge(t);
        let f = &self.core.forest;
        if f.top(ed.u) == node {
            f.top(ed.v)
        } else {
            f.top(ed.u)
        }
    }

    fn grow_label(&self, y: usize, e: usize) -> u8 {
        let f = &self.core.forest;
        let outer = if f.is_blossom(y) { f.blossom(y).eta == Some(e) } else { self.core.matched[e] };
        if outer {
            OUTER
        } else {
            INNER
        }
    }

    fn grow(&mut self, e: usize, x: usize, y: usize) -> Result<bool> {
        let lab = self.grow_label(y, e);
        self.tau[y] = e;
        self.tree[y] = self.tree[x];
        self.stats.grows += 1;
        trace!(self, "grow e{e} {x} -> {y} {}", if lab == OUTER { "outer" } else { "inner" });
        self.label_top(y, lab)?;
        Ok(false)
    }

    fn join(&mut self, e: usize, x: usize, y: usize) -> Result<bool> {
        if self.tree[x] != self.tree[y] {
            self.augment(e)?;
            return Ok(true);
        }
        let a = self.lca(x, y)?;
        if !self.core.forest.is_blossom(a) && self.tau[a] == NONE && self.core.def(a) >= 2 {
            self.augment(e)?;
            return Ok(true);
        }
        self.form_blossom(e, x, y, a)?;
        Ok(false)
    }

    fn lca(&mut self, x: usize, y: usize) -> Result<usize> {
        self.stamp += 1;
        let (mut a, mut b) = (x, y);
        loop {
            if a == NONE && b == NONE {
                return Err(Error::StructureViolation(format!("nodes {x} and {y} share no ancestor")));
            }
            for c in [&mut a, &mut b] {
                if *c != NONE {
                    if self.mark[*c] == self.stamp {
                        return Ok(*c);
                    }
                    self.mark[*c] = self.stamp;
                    let up = {
                        let t = self.tau[*c];
                        if t == NONE {
                            NONE
                        } else {
                            let ed = self.core.g.edge(t);
                            let f = &self.core.forest;
                            if f.top(ed.u) == *c {
                                f.top(ed.v)
                            } else {
                                f.top(ed.u)
                            }
                        }
                    };
                    *c = up;
                }
            }
        }
    }

    fn form_blossom(&mut self, e: usize, x: usize, y: usize, a: usize) -> Result<()> {
        let mut xs = Vec::new();
        let mut c = x;
        while c != a {
            xs.push(c);
            c = self.parent_top(c);
        }
        let mut ys = Vec::new();
        c = y;
        while c != a {
            ys.push(c);
            c = self.parent_top(c);
        }
        xs.reverse();
        let mut children = vec![a];
        children.extend(&xs);
        children.extend(&ys);
        let mut ring: Vec<usize> = xs.iter().map(|&c| self.tau[c]).collect();
        ring.push(e);
        ring.extend(ys.iter().map(|&c| self.tau[c]));
        let k = children.len();
        let f = &self.core.forest;
        let mut ends = Vec::with_capacity(k);
        for i in 0..k {
            let ed = self.core.g.edge(ring[i]);
            let pair = if f.top(ed.u) == children[i] { (ed.u, ed.v) } else { (ed.v, ed.u) };
            if f.top(pair.1) != children[(i + 1) % k] {
                return Err(Error::StructureViolation(format!("ring edge {} misplaced", ring[i])));
            }
            ends.push(pair);
        }
        let base = f.base(a);
        let eta = (self.tau[a] != NONE).then_some(self.tau[a]);
        let mut rescan = Vec::new();
        for &c in &children {
            let was = self.nlab[c];
            self.set_nlab(c, UNL);
            if was == INNER || !self.core.forest.is_blossom(c) {
                for v in self.core.forest.top_members(c).to_vec() {
                    self.set_vlab(v, OUTER);
                    rescan.push(v);
                }
            }
        }
        let tau_a = self.tau[a];
        let tree_a = self.tree[a];
        let b = self.core.forest.add_blossom(children, ring, ends, base, eta);
        self.ensure();
        self.tau[b] = tau_a;
        self.tree[b] = tree_a;
        self.set_nlab(b, OUTER);
        self.stats.blossoms += 1;
        trace!(self, "blossom {b} on e{e} children {:?}", self.core.forest.blossom(b).children);
        for v in rescan {
            self.scan(v)?;
        }
        Ok(())
    }

    fn expand(&mut self, b: usize) -> Result<()> {
        let t = self.tau[b];
        let a = self.end_in(t, b);
        let f = &self.core.forest;
        let j = f.child_index(b, a)?;
        let t_in = self.core.matched[t];
        let children = f.blossom(b).children.clone();
        self.stats.expands += 1;
        if j == 0 && !f.is_blossom(children[0]) && t_in == f.eta_matched(b, &self.core.matched) {
            // Entered at an atomic base by an edge of the base-edge type:
            // the entering edge becomes the base edge and b turns outer.
            self.core.forest.blossom_mut(b).eta = Some(t);
            return self.label_top(b, OUTER);
        }
        let steps = if j == 0 { Vec::new() } else { f.ring_walk(&self.core.matched, b, j, t_in)? };
        let mut route = vec![(children[j], t)];
        route.extend(steps.iter().map(|s| (children[s.idx], s.edge)));
        let verts = self.core.forest.vertices(b);
        for &v in &verts {
            self.set_vlab(v, UNL);
        }
        self.set_nlab(b, UNL);
        let z = self.core.forest.blossom(b).z;
        if z != 0 {
            return Err(Error::ExpandOnPositiveZ { blossom: b, z });
        }
        let tree_b = self.tree[b];
        trace!(self, "expand {b} route {route:?}");
        self.core.forest.dissolve(b)?;
        for (c, edge) in route {
            let lab = self.grow_label(c, edge);
            self.tau[c] = edge;
            self.tree[c] = tree_b;
            self.set_nlab(c, lab);
            for v in self.core.forest.top_members(c).to_vec() {
                self.set_vlab(v, lab);
            }
            if lab == INNER && self.core.forest.is_blossom(c) {
                self.schedule_expand(c)?;
            }
        }
        for v in verts {
            self.scan(v)?;
        }
        Ok(())
    }

    /// Trail from vertex `x` (reached by `ine`) up to its root, with the
    /// base changes the flip will cause.
    fn half(&self, x: usize, ine: usize, rebase: &mut Vec<crate::forest::Rebase>) -> Result<Vec<usize>> {
        let f = &self.core.forest;
        let matched = &self.core.matched;
        let mut out = Vec::new();
        let (mut cur, mut ine) = (x, ine);
        let mut node = f.top(x);
        loop {
            if f.is_blossom(node) {
                if self.nlab[node] == OUTER {
                    f.trail(matched, node, cur, matched[ine], Some(ine), &mut out, rebase)?;
                } else {
                    let t = self.tau[node];
                    let a = self.end_in(t, node);
                    let mut tmp = Vec::new();
                    f.trail(matched, node, a, matched[t], Some(t), &mut tmp, rebase)?;
                    out.extend(tmp.into_iter().rev());
                }
            }
            let t = self.tau[node];
            if t == NONE {
                break;
            }
            out.push(t);
            let ed = self.core.g.edge(t);
            cur = if f.top(ed.u) == node { ed.v } else { ed.u };
            ine = t;
            node = f.top(cur);
        }
        Ok(out)
    }

    fn augment(&mut self, e: usize) -> Result<()> {
        let ed = *self.core.g.edge(e);
        let f = &self.core.forest;
        let (tx, ty) = (self.tree[f.top(ed.u)], self.tree[f.top(ed.v)]);
        let mut rebase = Vec::new();
        let hx = self.half(ed.u, e, &mut rebase)?;
        let hy = self.half(ed.v, e, &mut rebase)?;
        let mut path: Vec<usize> = hx.into_iter().rev().collect();
        path.push(e);
        path.extend(hy);
        trace!(self, "augment {path:?}");
        let (off, on): (Vec<usize>, Vec<usize>) = path.iter().partition(|&&p| self.core.matched[p]);
        for p in off.into_iter().chain(on) {
            self.core.flip(p)?;
        }
        for r in rebase {
            self.core.forest.apply_rebase(r)?;
        }
        self.last_path = path;
        self.dead[tx] = true;
        self.dead[ty] = true;
        self.stats.augments += 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Multigraph;

    fn core(f: Vec<u32>, edges: &[(usize, usize, i64)], y: i64) -> Core {
        let mut g = Multigraph::with_degrees(f);
        for &(u, v, w) in edges {
            g.add_edge(u, v, w);
        }
        let w = g.edges().iter().map(|e| e.w).collect();
        let mut c = Core::new(g, w);
        c.yp.iter_mut().for_each(|x| *x = y);
        c
    }

    fn exact(max_disjoint: bool) -> SearchCfg {
        SearchCfg { elig: Elig::Exact, region: 0, max_disjoint, trace: true }
    }

    fn roots(c: &Core) -> Vec<usize> {
        (0..c.n()).collect()
    }

    #[test]
    fn no_eligible_edges_leaves_only_roots() {
        let mut c = core(vec![1, 1], &[(0, 1, 10)], 10);
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        assert_eq!(s.add_roots(&all).unwrap(), 2);
        assert_eq!(s.process().unwrap(), Outcome::Idle);
        assert_eq!(s.stats().grows, 0);
        // both ends fall at rate 1, so the slack 10 closes after 5 units
        assert_eq!(s.next_delay(), Some(5));
    }

    #[test]
    fn tight_three_path_augments() {
        let mut c = core(vec![1; 4], &[(0, 1, 4), (1, 2, 4), (2, 3, 4)], 2);
        c.flip(1).unwrap();
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        assert_eq!(s.add_roots(&all).unwrap(), 2);
        assert_eq!(s.process().unwrap(), Outcome::Augmented);
        assert_eq!(s.last_path().len(), 3);
        s.finish();
        assert_eq!(c.matched, vec![true, false, true]);
    }

    #[test]
    fn disjoint_edges_augment_in_one_search() {
        let mut c = core(vec![1; 4], &[(0, 1, 6), (2, 3, 6)], 3);
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(true));
        s.add_roots(&all).unwrap();
        assert_eq!(s.process().unwrap(), Outcome::Augmented);
        assert_eq!(s.stats().augments, 2);
        s.finish();
        assert_eq!(c.matched, vec![true, true]);
    }

    #[test]
    fn empty_region_is_a_no_op() {
        let mut c = core(vec![1, 1], &[(0, 1, 2)], 1);
        c.region.iter_mut().for_each(|r| *r = 5);
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        assert_eq!(s.add_roots(&all).unwrap(), 0);
        assert_eq!(s.process().unwrap(), Outcome::Idle);
        assert_eq!(s.next_delay(), None);
    }

    #[test]
    fn free_edge_is_matched() {
        let mut c = core(vec![1, 1], &[(0, 1, 2)], 1);
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        s.add_roots(&all).unwrap();
        assert_eq!(s.process().unwrap(), Outcome::Augmented);
        s.finish();
        assert!(c.matched[0]);
    }

    #[test]
    fn walk_through_a_degree_two_vertex() {
        // 0 - 1 and 1 - 2 matched, f(1) = 2; free vertices 3 and 4
        let mut c = core(vec![1, 2, 1, 1, 1], &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (1, 4, 2)], 1);
        c.flip(0).unwrap();
        c.flip(1).unwrap();
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        assert_eq!(s.add_roots(&all).unwrap(), 2);
        assert_eq!(s.process().unwrap(), Outcome::Augmented);
        s.finish();
        assert_eq!(c.matched, vec![true, false, true, true]);
        assert!((0..5).all(|v| c.def(v) == 0));
    }

    #[test]
    fn triangle_closes_into_a_blossom() {
        // root 0, matched 1 - 2, and a far free vertex 3 behind a slack edge
        let mut c = core(vec![1; 4], &[(0, 1, 2), (1, 2, 2), (2, 0, 2), (0, 3, -20)], 1);
        c.flip(1).unwrap();
        let mut s = Search::new(&mut c, exact(false));
        s.add_roots(&[0]).unwrap();
        assert_eq!(s.process().unwrap(), Outcome::Idle);
        assert_eq!(s.stats().blossoms, 1);
        let f = &s.core().forest;
        let b: Vec<usize> = f.alive().collect();
        assert_eq!(b.len(), 1);
        assert_eq!(f.blossom(b[0]).children.len(), 3);
        assert_eq!(f.base(b[0]), 0);
        assert!(s.log().iter().any(|l| l.contains("blossom")), "{:?}", s.log());
    }

    #[test]
    fn augment_through_a_blossom_moves_its_base() {
        // e3 = 2 - 3 starts with slack 2 and closes after one adjustment
        let mut c = core(vec![1; 4], &[(0, 1, 2), (1, 2, 2), (2, 0, 2), (2, 3, 0)], 1);
        c.flip(1).unwrap();
        let all = roots(&c);
        let mut s = Search::new(&mut c, exact(false));
        assert_eq!(s.add_roots(&all).unwrap(), 2);
        assert_eq!(s.process().unwrap(), Outcome::Idle);
        assert_eq!(s.stats().blossoms, 1);
        assert_eq!(s.next_delay(), Some(1));
        s.advance(1).unwrap();
        assert_eq!(s.process().unwrap(), Outcome::Augmented, "{:?}", s.log());
        let f = &s.core().forest;
        let b = f.alive().next().unwrap();
        assert_eq!(f.base(b), 2);
        s.finish();
        assert_eq!(c.matched, vec![true, false, false, true]);
    }
}
