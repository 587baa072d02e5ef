//! Dismantling the blossoms inherited from the previous scale: major path
//! decomposition, shells, Phases 1–3, and the scaling driver for ordinary
//! matching.

use std::collections::BTreeMap;

use crate::classic::Solution;
use crate::duals::Elig;
use crate::engine::{Outcome, Search, SearchCfg};
use crate::error::{Error, Result};
use crate::forest::Forest;
use crate::graph::{weight, Multigraph};
use crate::state::{Core, INACTIVE};
use crate::stats::{Config, PathRecord, RunStats};

/// The inherited blossoms as a tree. Node ids below `n` are vertices,
/// node `n + i` is blossom `i`. Nodes without a parent are children of
/// the root `V`.
#[derive(Debug, Clone, Default)]
pub struct InheritedTree {
    pub n: usize,
    pub children: Vec<Vec<usize>>,
    pub z: Vec<i64>,
}

impl InheritedTree {
    pub fn new(n: usize) -> Self {
        InheritedTree { n, children: Vec::new(), z: Vec::new() }
    }

    /// Adds a blossom over existing nodes and returns its node id.
    pub fn add(&mut self, children: Vec<usize>, z: i64) -> usize {
        self.children.push(children);
        self.z.push(z);
        self.n + self.children.len() - 1
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }

    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    /// Parent node of every node, `None` for children of `V`.
    pub fn parents(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n + self.len()];
        for (i, ch) in self.children.iter().enumerate() {
            for &c in ch {
                p[c] = Some(self.n + i);
            }
        }
        p
    }

    /// Vertices under `node`.
    pub fn vertices(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            if x < self.n {
                out.push(x);
            } else {
                stack.extend(self.children[x - self.n].iter().copied());
            }
        }
        out
    }

    /// The blossoms of the current forest with positive `z`, nested by
    /// containment; blossoms with `z = 0` are skipped and their children
    /// attached to the nearest kept ancestor.
    pub fn from_forest(f: &Forest) -> Self {
        Self::from_forest_ids(f).0
    }

    /// As `from_forest`, also returning the forest id of every kept
    /// blossom in node order.
    pub fn from_forest_ids(f: &Forest) -> (Self, Vec<usize>) {
        let mut t = InheritedTree::new(f.n());
        let mut ids = Vec::new();
        let tops: Vec<usize> = (0..f.n()).map(|v| f.top(v)).collect();
        let mut seen = vec![false; f.nodes()];
        for &top in &tops {
            if !seen[top] {
                seen[top] = true;
                Self::collect(f, top, &mut t, &mut ids);
            }
        }
        (t, ids)
    }

    /// Kept nodes standing for `node`: the node itself when kept,
    /// otherwise the kept nodes of its children.
    fn collect(f: &Forest, node: usize, t: &mut InheritedTree, ids: &mut Vec<usize>) -> Vec<usize> {
        if !f.is_blossom(node) {
            return vec![node];
        }
        let mut kids = Vec::new();
        for &c in &f.blossom(node).children {
            kids.extend(Self::collect(f, c, t, ids));
        }
        let z = f.blossom(node).z;
        if z > 0 {
            ids.push(node);
            vec![t.add(kids, z)]
        } else {
            kids
        }
    }
}

/// A major path root with its path, listed from the root down.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorPath {
    /// `None` for the root `V`.
    pub root: Option<usize>,
    pub path: Vec<usize>,
}

/// Splits the inherited tree into major paths. A blossom's major child is
/// its child of largest mass (ties to the lowest node id); every other
/// blossom child, and every blossom child of `V`, starts a new path.
/// Paths are returned bottom-up, the path `[V]` last.
pub fn decompose(t: &InheritedTree, mass: &[u64]) -> Vec<MajorPath> {
    let n = t.n;
    let node_mass = node_masses(t, mass);
    let mut out = Vec::new();
    let parents = t.parents();
    let tops: Vec<usize> = (n..n + t.len()).filter(|&b| parents[b].is_none()).collect();
    for q in tops {
        decompose_from(t, q, &node_mass, &mut out);
    }
    out.push(MajorPath { root: None, path: Vec::new() });
    out
}

fn decompose_from(t: &InheritedTree, q: usize, node_mass: &[u64], out: &mut Vec<MajorPath>) {
    let n = t.n;
    let mut path = vec![q];
    let mut cur = q;
    loop {
        let kids = &t.children[cur - n];
        let major = kids.iter().copied().max_by(|&a, &b| node_mass[a].cmp(&node_mass[b]).then(b.cmp(&a)));
        for &c in kids {
            if c >= n && Some(c) != major {
                decompose_from(t, c, node_mass, out);
            }
        }
        match major {
            Some(m) if m >= n => {
                path.push(m);
                cur = m;
            }
            _ => break,
        }
    }
    out.push(MajorPath { root: Some(q), path });
}

fn node_masses(t: &InheritedTree, mass: &[u64]) -> Vec<u64> {
    let n = t.n;
    let mut m = vec![0u64; n + t.len()];
    m[..n].copy_from_slice(&mass[..n]);
    // Children always have smaller node ids than their parent blossom.
    for b in 0..t.len() {
        m[n + b] = t.children[b].iter().map(|&c| m[c]).sum();
    }
    m
}

#[derive(Debug, Clone)]
struct Shell {
    region: u32,
    members: Vec<usize>,
    mass: u64,
}

/// Runs the Dismantler over every major path of one scale.
pub struct Dismantler<'a> {
    core: &'a mut Core,
    tree: &'a InheritedTree,
    z: Vec<i64>,
    z_v: i64,
    mass: Vec<u64>,
    cfg: Config,
    c: u32,
    next_region: u32,
    d: Vec<u64>,
    // State of the path being dismantled.
    path: Vec<Option<usize>>,
    undissolved: std::collections::BTreeSet<usize>,
    shells: BTreeMap<usize, Shell>,
    record: PathRecord,
    pub stats: &'a mut RunStats,
}

impl<'a> Dismantler<'a> {
    pub fn new(
        core: &'a mut Core,
        tree: &'a InheritedTree,
        mass: Vec<u64>,
        fmode: bool,
        cfg: Config,
        stats: &'a mut RunStats,
    ) -> Self {
        let c = if cfg.c > 0 {
            cfg.c
        } else if fmode {
            8
        } else {
            4
        };
        stats.c = c;
        let n = core.n();
        Dismantler {
            z: tree.z.clone(),
            z_v: 0,
            mass,
            cfg,
            c,
            next_region: 0,
            d: vec![0; n],
            path: Vec::new(),
            undissolved: Default::default(),
            shells: BTreeMap::new(),
            record: PathRecord::default(),
            core,
            tree,
            stats,
        }
    }

    /// Final `z(V)`; the caller folds it into `y′`.
    pub fn z_v(&self) -> i64 {
        self.z_v
    }

    /// Dismantles every inherited blossom and leaves a perfect matching.
    pub fn run(&mut self) -> Result<()> {
        for v in 0..self.core.n() {
            self.core.region[v] = INACTIVE;
        }
        for mp in decompose(self.tree, &self.mass) {
            self.dismantle_path(&mp)?;
        }
        if (0..self.core.n()).any(|v| self.core.def(v) > 0) {
            return Err(Error::StructureViolation("scale ended with a free vertex".into()));
        }
        Ok(())
    }

    fn fresh_region(&mut self) -> u32 {
        let r = self.next_region;
        self.next_region += 1;
        r
    }

    fn dismantle_path(&mut self, mp: &MajorPath) -> Result<()> {
        let n = self.tree.n;
        let is_v = mp.root.is_none();
        let verts: Vec<usize> = match mp.root {
            Some(q) => self.tree.vertices(q),
            None => (0..n).collect(),
        };
        self.path = if is_v { vec![None] } else { mp.path.iter().map(|&b| Some(b)).collect() };
        // idx(v): deepest path blossom containing v.
        let mut idx = vec![0usize; n];
        for (j, &b) in mp.path.iter().enumerate().skip(1) {
            for v in self.tree.vertices(b) {
                idx[v] = j;
            }
        }
        self.undissolved = (0..self.path.len()).collect();
        self.shells.clear();
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &verts {
            groups.entry(if is_v { 0 } else { idx[v] }).or_default().push(v);
        }
        for j in 0..self.path.len() {
            let members = groups.remove(&j).unwrap_or_default();
            let region = self.fresh_region();
            for &v in &members {
                self.core.region[v] = region;
                self.d[v] = 0;
            }
            let mass = members.iter().map(|&v| self.mass[v]).sum();
            self.shells.insert(j, Shell { region, members, mass });
        }
        let size: u64 = verts.iter().map(|&v| self.mass[v]).sum();
        self.record = PathRecord { size, ..Default::default() };
        self.phase1(is_v)?;
        self.phase2(is_v)?;
        if !is_v {
            self.phase3()?;
        }
        self.stats.paths.push(self.record);
        Ok(())
    }

    fn active_free(&self) -> u64 {
        self.shells.values().flat_map(|s| s.members.iter()).map(|&v| self.core.def(v) as u64).sum()
    }

    fn shell_free(&self, start: usize) -> u64 {
        self.shells[&start].members.iter().map(|&v| self.core.def(v) as u64).sum()
    }

    fn next_undissolved(&self, i: usize) -> Option<usize> {
        self.undissolved.range(i + 1..).next().copied()
    }

    /// Σ d(v) over active free vertices, leaving out `ω` when the path
    /// root is a blossom.
    fn checkpoint_d(&mut self, is_v: bool) {
        let mut omega = None;
        if !is_v {
            if let Some((_, s)) = self.shells.iter().next_back() {
                omega = s.members.iter().copied().filter(|&v| self.core.def(v) > 0).min();
            }
        }
        let sum: u64 = self
            .shells
            .values()
            .flat_map(|s| s.members.iter())
            .filter(|&&v| self.core.def(v) > 0 && Some(v) != omega)
            .map(|&v| self.d[v] * self.core.def(v) as u64)
            .sum();
        self.record.d_sum = self.record.d_sum.max(sum);
    }

    fn check_bounds(&self) -> Result<()> {
        if !self.cfg.assert_bounds {
            return Ok(());
        }
        let r = &self.record;
        if r.passes as f64 > r.pass_bound() {
            return Err(Error::PassBoundExceeded { passes: r.passes, size: r.size, bound: r.pass_bound() });
        }
        let d_bound = r.d_bound(self.c);
        if r.d_sum as f64 > d_bound {
            return Err(Error::SlotBoundExceeded { what: "d(F, X)", value: r.d_sum, size: r.size, bound: d_bound });
        }
        if r.product > d_bound {
            return Err(Error::SlotBoundExceeded {
                what: "|F_p| (p - log|X|)",
                value: r.product.ceil() as u64,
                size: r.size,
                bound: d_bound,
            });
        }
        if r.translations as f64 > r.translation_bound() {
            return Err(Error::SlotBoundExceeded {
                what: "phase 1-2 translations",
                value: r.translations,
                size: r.size,
                bound: r.translation_bound(),
            });
        }
        let pages = (4.0 * r.log_size()).ceil() as u64 + 1;
        if r.pq_pages > pages {
            return Err(Error::SlotBoundExceeded {
                what: "priority queue pages",
                value: r.pq_pages,
                size: r.size,
                bound: pages as f64,
            });
        }
        Ok(())
    }

    fn cfg_for(&self, elig: Elig, region: u32, max_disjoint: bool) -> SearchCfg {
        SearchCfg { elig, region, max_disjoint, trace: self.cfg.trace }
    }

    fn phase1(&mut self, is_v: bool) -> Result<()> {
        let size = self.record.size.max(2) as f64;
        let pi = self.c as f64 * (size * size.log2()).sqrt() + 1.0;
        loop {
            let starts: Vec<usize> = self.shells.keys().copied().collect();
            for start in starts {
                self.rematch(start)?;
            }
            let free = self.active_free();
            self.checkpoint_d(is_v);
            if free as f64 <= pi {
                break;
            }
            self.record.passes += 1;
            let p = self.record.passes as f64;
            self.record.product = self.record.product.max(free as f64 * (p - self.record.log_size()));
            self.check_bounds()?;
            let mut pass: Vec<(usize, Option<usize>, u64)> = self
                .shells
                .iter()
                .filter(|(&s, _)| self.shell_free(s) > 0)
                .map(|(&s, sh)| (s, self.next_undissolved(s), sh.mass))
                .collect();
            pass.sort_by(|a, b| b.2.cmp(&a.2).then(b.0.cmp(&a.0)));
            for (start, end, _) in pass {
                if self.shells.contains_key(&start) && self.next_undissolved(start) == end {
                    self.shell_search(start)?;
                }
            }
        }
        self.check_bounds()
    }

    fn rematch(&mut self, start: usize) -> Result<()> {
        let shell = &self.shells[&start];
        if shell.members.iter().all(|&v| self.core.def(v) == 0) {
            return Ok(());
        }
        let members = shell.members.clone();
        let cfg = self.cfg_for(Elig::Phase1, shell.region, true);
        loop {
            let mut s = Search::new(self.core, cfg);
            s.add_roots(&members)?;
            let out = s.process()?;
            self.stats.absorb(s);
            if out != Outcome::Augmented {
                return Ok(());
            }
        }
    }

    fn shell_search(&mut self, start: usize) -> Result<()> {
        let shell = &self.shells[&start];
        let members = shell.members.clone();
        let cfg = self.cfg_for(Elig::Phase1, shell.region, false);
        let mut s = Search::new(self.core, cfg);
        s.add_roots(&members)?;
        if s.process()? == Outcome::Augmented {
            return Err(Error::StructureViolation("shell search found an augmenting path".into()));
        }
        s.advance(1)?;
        self.stats.absorb(s);
        for &v in &members {
            if self.core.def(v) > 0 {
                self.d[v] += 1;
            }
        }
        let mut hit = Vec::new();
        for i in [Some(start), self.next_undissolved(start)].into_iter().flatten() {
            if self.translate(i, 1, true)? {
                hit.push(i);
            }
        }
        for i in hit {
            self.dissolve(i);
        }
        Ok(())
    }

    /// Translates path blossom `i` by `delta` units; true when it is now
    /// dissolved.
    fn translate(&mut self, i: usize, delta: i64, count: bool) -> Result<bool> {
        match self.path[i] {
            None => {
                self.z_v -= 2 * delta;
                Ok(false)
            }
            Some(b) => {
                let z = &mut self.z[b - self.tree.n];
                if *z <= 0 {
                    return Err(Error::TranslateDissolved { blossom: b });
                }
                *z -= 2 * delta;
                if *z < 0 {
                    return Err(Error::StructureViolation(format!("inherited blossom {b} translated below 0")));
                }
                if count {
                    self.record.translations += delta as u64;
                }
                Ok(*z == 0)
            }
        }
    }

    /// Dissolves path blossom `i`: its shell deactivates when `i` is the
    /// outermost boundary, and otherwise merges into the enclosing shell,
    /// relabelling the smaller side.
    fn dissolve(&mut self, i: usize) {
        self.undissolved.remove(&i);
        let shell = self.shells.remove(&i).expect("shell of an undissolved blossom");
        let Some(&prev) = self.undissolved.range(..i).next_back() else {
            for &v in &shell.members {
                self.core.region[v] = INACTIVE;
            }
            return;
        };
        let outer = self.shells.get_mut(&prev).expect("enclosing shell");
        let (relabel, region) = if outer.members.len() >= shell.members.len() {
            (shell.members.clone(), outer.region)
        } else {
            outer.region = shell.region;
            (outer.members.clone(), shell.region)
        };
        outer.members.extend(shell.members.iter().copied());
        outer.mass += shell.mass;
        for v in relabel {
            self.core.region[v] = region;
        }
    }

    fn phase2(&mut self, is_v: bool) -> Result<()> {
        loop {
            self.checkpoint_d(is_v);
            self.check_bounds()?;
            if self.active_free() <= 1 || self.shells.is_empty() {
                return Ok(());
            }
            let Some(start) = self.shells.keys().copied().find(|&s| self.shell_free(s) > 0) else {
                return Ok(());
            };
            self.delta_search(start, true)?;
        }
    }

    fn phase3(&mut self) -> Result<()> {
        while let Some(&start) = self.shells.keys().next_back() {
            self.delta_search(start, false)?;
        }
        Ok(())
    }

    /// Event-driven search on one shell with window eligibility; the
    /// boundaries translate with every adjustment and dissolve when their
    /// `z` reaches 0. Ends at an augment or when the shell deactivates.
    fn delta_search(&mut self, start: usize, phase2: bool) -> Result<()> {
        let mut cur = start;
        let shell = &self.shells[&cur];
        let members = shell.members.clone();
        let cfg = self.cfg_for(Elig::Window, shell.region, false);
        let mut s = Search::new(self.core, cfg);
        s.add_roots(&members)?;
        let mut joined: Vec<(usize, i64)> =
            members.iter().filter(|&&v| s.core().def(v) > 0).map(|&v| (v, 0)).collect();
        let z = &mut self.z;
        let n = self.tree.n;
        let path = &self.path;
        let mut z_v = self.z_v;
        let mut undissolved = std::mem::take(&mut self.undissolved);
        let mut shells = std::mem::take(&mut self.shells);
        let mut translations = 0u64;
        let result = (|| -> Result<()> {
            loop {
                if s.process()? == Outcome::Augmented {
                    return Ok(());
                }
                let inner = undissolved.range(cur + 1..).next().copied();
                let bounds: Vec<usize> = [Some(cur), inner].into_iter().flatten().collect();
                let mut delta = s.next_delay();
                for &i in &bounds {
                    if let Some(b) = path[i] {
                        let half = z[b - n] / 2;
                        delta = Some(delta.map_or(half, |d| d.min(half)));
                    }
                }
                let Some(delta) = delta else {
                    return Err(Error::Infeasible);
                };
                s.advance(delta)?;
                let mut hit = Vec::new();
                for &i in &bounds {
                    match path[i] {
                        None => z_v -= 2 * delta,
                        Some(b) => {
                            z[b - n] -= 2 * delta;
                            if phase2 {
                                translations += delta as u64;
                            }
                            if z[b - n] == 0 {
                                hit.push(i);
                            } else if z[b - n] < 0 {
                                return Err(Error::StructureViolation(format!("blossom {b} translated below 0")));
                            }
                        }
                    }
                }
                for i in hit {
                    undissolved.remove(&i);
                    let shell = shells.remove(&i).expect("shell of an undissolved blossom");
                    let Some(&prev) = undissolved.range(..i).next_back() else {
                        s.set_region(INACTIVE, &shell.members);
                        return Ok(());
                    };
                    let outer = shells.get_mut(&prev).expect("enclosing shell");
                    let (relabel, region) = if outer.members.len() >= shell.members.len() {
                        (shell.members.clone(), outer.region)
                    } else {
                        let moved = outer.members.clone();
                        outer.region = shell.region;
                        (moved, shell.region)
                    };
                    let added = if i == cur { outer.members.clone() } else { shell.members.clone() };
                    outer.members.extend(shell.members.iter().copied());
                    outer.mass += shell.mass;
                    if i == cur {
                        cur = prev;
                    }
                    s.set_region(region, &relabel);
                    let now = s.now();
                    joined.extend(added.iter().filter(|&&v| s.core().def(v) > 0).map(|&v| (v, now)));
                    s.add_roots(&added)?;
                    s.rescan(&added)?;
                }
            }
        })();
        let end = s.now();
        self.record.pq_pages = self.record.pq_pages.max(s.pq_pages());
        self.stats.absorb(s);
        self.z_v = z_v;
        self.undissolved = undissolved;
        self.shells = shells;
        if phase2 {
            self.record.translations += translations;
            for (v, t) in joined {
                self.d[v] += (end - t) as u64;
            }
        }
        result
    }
}

/// Largest power-of-two exponent `s` with `2^s ≤ x` (0 for `x ≤ 1`).
pub fn floor_log2(x: i64) -> u32 {
    if x <= 1 {
        0
    } else {
        63 - x.leading_zeros()
    }
}

/// Scaling parameters: multiplier, input offset, target weights and the
/// number of scales.
#[derive(Debug, Clone)]
pub struct ScalePlan {
    pub mult: i64,
    pub offset: i64,
    pub target: Vec<i64>,
    pub scales: u32,
}

impl ScalePlan {
    /// `w̄ = mult · (ŵ + offset)`, with the offset lifting negative
    /// weights to nonnegative ones. `mult` must be even so the last
    /// scale ends exactly on `w̄`.
    pub fn new(g: &Multigraph, mult: i64) -> Self {
        let min = g.edges().iter().map(|e| e.w).min().unwrap_or(0);
        let offset = if min < 0 { g.max_abs_weight() } else { 0 };
        let target: Vec<i64> = g.edges().iter().map(|e| mult * (e.w + offset)).collect();
        let top = target.iter().copied().max().unwrap_or(0);
        let scales = if top <= 1 { 1 } else { floor_log2(top) };
        ScalePlan { mult, offset, target, scales }
    }

    /// Weights at the end of scale `i` (1-based): `2 · (w̄ >> (s + 1 − i))`.
    pub fn weights(&self, i: u32) -> Vec<i64> {
        let shift = self.scales + 1 - i;
        self.target.iter().map(|&w| 2 * (w >> shift)).collect()
    }
}

/// Hooks run at the two checkpoints of every scale when scale checks
/// are enabled.
pub(crate) fn record(stats: &mut RunStats, what: &str, violations: Vec<String>) {
    for v in violations.into_iter().take(5) {
        stats.violations.push(format!("{what}: {v}"));
    }
}

/// `ŷz(e) − w(e)` for every edge with inherited blossoms (vertex sets
/// and `z`) on top of the `y′` values in `core`.
pub(crate) fn inherited_slacks(core: &Core, tree: &InheritedTree) -> Vec<i64> {
    let n = core.n();
    let mut y: Vec<i64> = core.yp.clone();
    let mut member: Vec<Vec<usize>> = vec![Vec::new(); n];
    for b in 0..tree.len() {
        for v in tree.vertices(n + b) {
            y[v] -= tree.z[b] / 2;
            member[v].push(b);
        }
    }
    (0..core.g.m())
        .map(|e| {
            let ed = core.g.edge(e);
            let mut h = y[ed.u] + y[ed.v];
            for &b in &member[ed.u] {
                if member[ed.v].contains(&b) {
                    h += tree.z[b];
                }
            }
            h - core.w[e]
        })
        .collect()
}

/// Maximum-weight perfect matching by scaling.
pub fn solve_matching(g: &Multigraph, cfg: Config) -> Result<Solution> {
    if !g.degrees().iter().all(|&f| f == 1) {
        return Err(Error::BadHeader("matching solver needs f = 1 everywhere".into()));
    }
    g.overflow_guard()?;
    if g.n() % 2 == 1 || !crate::classic::feasibility_check(g) {
        return Err(Error::Infeasible);
    }
    let n = g.n();
    let plan = ScalePlan::new(g, n as i64 + 2);
    let mut stats = RunStats::default();
    let mut core = Core::new(g.clone(), vec![0; g.m()]);
    let mass = vec![1u64; n];
    for i in 1..=plan.scales {
        let tree = if i == 1 {
            InheritedTree::new(n)
        } else {
            let tree = InheritedTree::from_forest(&core.forest);
            for v in 0..n {
                let zsum: i64 = core.forest.ancestors(v).iter().map(|&b| core.forest.blossom(b).z).sum();
                core.yp[v] = 2 * core.yp[v] + 2 + zsum;
            }
            let mut t2 = tree;
            t2.z.iter_mut().for_each(|z| *z *= 2);
            t2
        };
        core.forest = Forest::new(n);
        core.matched.iter_mut().for_each(|m| *m = false);
        core.deg.iter_mut().for_each(|d| *d = 0);
        core.w = plan.weights(i);
        if cfg.check_scales {
            let bad: Vec<String> = inherited_slacks(&core, &tree)
                .iter()
                .enumerate()
                .filter(|(_, &s)| s < -2)
                .map(|(e, s)| format!("scale {i}: edge {} has slack {s} after scale-up", e + 1))
                .collect();
            record(&mut stats, "scale-up", bad);
        }
        let z_v = {
            let mut d = Dismantler::new(&mut core, &tree, mass.clone(), false, cfg, &mut stats);
            d.run()?;
            d.z_v()
        };
        // With only V left, y′ = y + z(V)/2 already absorbs z(V).
        let _ = z_v;
        stats.scales += 1;
        if cfg.check_scales {
            let mut gi = Multigraph::new(n);
            for (e, ed) in g.edges().iter().enumerate() {
                gi.add_edge(ed.u, ed.v, core.w[e]);
            }
            let cert = core.certificate(false, 1, 0, 2);
            let r = crate::duals::verify(&gi, &cert, &[]);
            record(&mut stats, &format!("scale {i} certificate"), r.violations);
        }
    }
    let certificate = core.certificate(false, plan.mult, plan.offset, 2);
    let matching = core.matching();
    let weight = weight(g, &matching);
    Ok(Solution { weight, matching, certificate, stats })
}
