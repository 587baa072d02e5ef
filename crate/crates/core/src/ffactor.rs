//! The f-factor layer around the Dismantler: edge compression with
//! ill-formed blossom dissolution, η-edge tightening, scale-up, I-edge
//! expansion with undervalued-edge matching, and the scaling driver.

use crate::classic::Solution;
use crate::dismantler::{record, Dismantler, InheritedTree, ScalePlan};
use crate::duals::{verify, Expansion};
use crate::error::{Error, Result};
use crate::forest::{Forest, NONE};
use crate::graph::{weight, EdgeSet, Multigraph};
use crate::state::Core;
use crate::stats::{Config, RunStats};

/// Where the edges and e-vertices of the expanded graph come from.
///
/// Edges keep the input order; an expanded edge `uv` becomes the three
/// consecutive edges `(u, a)`, `(a, b)`, `(b, v)` with `a = n + 2k`,
/// `b = n + 2k + 1` for the `k`-th expanded edge.
#[derive(Debug, Clone, Default)]
pub struct Layout {
    pub n: usize,
    /// Expanded input edges, ascending.
    pub edges: Vec<usize>,
    /// First expanded-graph edge of every input edge.
    pub first: Vec<usize>,
    /// Input edge of every expanded-graph edge.
    pub origin: Vec<usize>,
    /// Expansion index of every input edge.
    pub index: Vec<Option<usize>>,
}

impl Layout {
    /// Layout expanding `edges` (ascending) of `g`.
    pub fn new(g: &Multigraph, edges: Vec<usize>) -> Self {
        let mut first = Vec::with_capacity(g.m());
        let mut origin = Vec::new();
        let mut index = vec![None; g.m()];
        let mut k = 0;
        for e in 0..g.m() {
            first.push(origin.len());
            if k < edges.len() && edges[k] == e {
                index[e] = Some(k);
                origin.extend([e, e, e]);
                k += 1;
            } else {
                origin.push(e);
            }
        }
        Layout { n: g.n(), edges, first, origin, index }
    }

    /// The e-vertices `(a, b)` of expansion `k`; `a` is on the `u` side.
    pub fn evertices(&self, k: usize) -> (usize, usize) {
        (self.n + 2 * k, self.n + 2 * k + 1)
    }

    pub fn is_evertex(&self, v: usize) -> bool {
        v >= self.n
    }

    /// The expanded graph with the given per-edge weight splits.
    fn graph(&self, g: &Multigraph, w: &[i64]) -> Multigraph {
        let mut f = g.degrees().to_vec();
        f.extend(std::iter::repeat_n(1, 2 * self.edges.len()));
        let mut h = Multigraph::with_degrees(f);
        for (e, ed) in g.edges().iter().enumerate() {
            let i = self.first[e];
            match self.index[e] {
                Some(k) => {
                    let (a, b) = self.evertices(k);
                    h.add_edge(ed.u, a, w[i]);
                    h.add_edge(a, b, w[i + 1]);
                    h.add_edge(b, ed.v, w[i + 2]);
                }
                None => {
                    h.add_edge(ed.u, ed.v, w[i]);
                }
            }
        }
        h
    }

    /// Certificate expansion records for the weights `w` of the
    /// expanded graph.
    pub fn expansions(&self, w: &[i64]) -> Vec<Expansion> {
        self.edges
            .iter()
            .map(|&e| Expansion { edge: e, w1: w[self.first[e]], w2: w[self.first[e] + 2] })
            .collect()
    }
}

/// Degree-weighted capacity regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Blossoms of the expanded graph without `I` sets.
    EBlossom,
    /// Blossoms with an `I` set.
    Omega,
}

/// Capacity of blossom `blossom` within shell `shell`:
/// `⌊f(S ∩ B)/2⌋` for e-blossoms and `⌊(f(S ∩ B) + |γ(S, I(B))|)/2⌋`
/// otherwise, `i_edges` listing `I(B)`.
pub fn capacity(g: &Multigraph, shell: &[usize], blossom: &[usize], i_edges: &[usize], regime: Regime) -> u64 {
    let mut in_s = vec![false; g.n()];
    for &v in shell {
        in_s[v] = true;
    }
    let f: u64 = blossom.iter().filter(|&&v| in_s[v]).map(|&v| g.f(v) as u64).sum();
    let extra = match regime {
        Regime::EBlossom => 0,
        Regime::Omega => i_edges
            .iter()
            .filter(|&&e| {
                let ed = g.edge(e);
                in_s[ed.u] && in_s[ed.v]
            })
            .count() as u64,
    };
    (f + extra) / 2
}

/// `ŷz(e) − w(e)` of every edge.
fn gaps(core: &Core) -> Vec<i64> {
    (0..core.g.m()).map(|e| core.hyz(e) - core.w[e]).collect()
}

/// Window eligibility: `ŷz(e) − w(e) ∈ {0, −2}`.
fn eligible2(core: &Core, e: usize) -> bool {
    matches!(core.hyz(e) - core.w[e], 0 | -2)
}

/// Outcome of compressing one scale's expanded graph.
#[derive(Debug, Clone, Default)]
pub struct CompressReport {
    /// Expanded edges whose `C`/`E` relation goes the wrong way.
    pub violations: Vec<String>,
}

/// Replaces every expansion by its source edge: the matching follows the
/// end edges, blossoms drop their e-vertices, and base edges move to the
/// source edge or vanish when the source edge lies inside the blossom.
pub fn compress_all(bar: &Core, lay: &Layout, g: &Multigraph) -> Result<(Core, CompressReport)> {
    let n = g.n();
    let bad = |m: String| Err(Error::StructureViolation(m));
    let mut w = vec![0i64; g.m()];
    let mut matched = vec![false; g.m()];
    for e in 0..g.m() {
        let i = lay.first[e];
        matched[e] = bar.matched[i];
        w[e] = bar.w[i];
        if lay.index[e].is_some() {
            if bar.matched[i + 2] != matched[e] || bar.matched[i + 1] == matched[e] {
                return bad(format!("expansion of edge {e} does not alternate"));
            }
            w[e] += bar.w[i + 2];
        }
    }
    let mut core = Core::new(g.clone(), w);
    for e in 0..g.m() {
        if matched[e] {
            core.flip(e)?;
        }
    }
    core.yp.copy_from_slice(&bar.yp[..n]);
    let f = &bar.forest;
    let mut map = vec![NONE; f.nodes()];
    map[..n].iter_mut().enumerate().for_each(|(v, x)| *x = v);
    let mut gf = Forest::new(n);
    let mut etas = Vec::new();
    for b in f.alive().collect::<Vec<_>>() {
        let bl = f.blossom(b);
        let k = bl.children.len();
        if lay.is_evertex(bl.base) || (!f.is_blossom(bl.children[0]) && lay.is_evertex(bl.children[0])) {
            return bad(format!("blossom {b} has an e-vertex base"));
        }
        let mut children = Vec::new();
        let mut ring = Vec::new();
        let mut ends = Vec::new();
        let mut i = 0;
        loop {
            children.push(map[bl.children[i]]);
            let from = bl.ends[i].0;
            let mut to = bl.ends[i].1;
            let mut j = (i + 1) % k;
            while j != 0 && !f.is_blossom(bl.children[j]) && lay.is_evertex(bl.children[j]) {
                to = bl.ends[j].1;
                j = (j + 1) % k;
            }
            ring.push(lay.origin[bl.ring[i]]);
            ends.push((from, to));
            if j == 0 {
                break;
            }
            i = j;
        }
        if children.contains(&NONE) {
            return bad(format!("blossom {b} has an unmapped child"));
        }
        // A cycle through one child and one expansion collapses onto the
        // child: same vertices, same base edge, so the child takes its z.
        if children.len() == 1 && gf.is_blossom(children[0]) {
            gf.blossom_mut(children[0]).z += bl.z;
            map[b] = children[0];
            continue;
        }
        let id = gf.add_blossom(children, ring, ends, bl.base, None);
        gf.blossom_mut(id).z = bl.z;
        map[b] = id;
        etas.push((id, bl.eta));
    }
    for (id, eta) in etas {
        let new = match eta {
            None => None,
            Some(x) => {
                let e = lay.origin[x];
                match lay.index[e] {
                    None => Some(e),
                    Some(_) => {
                        let ed = *g.edge(e);
                        let other = match x - lay.first[e] {
                            0 => ed.v,
                            2 => ed.u,
                            _ => return bad(format!("blossom {id} has a middle expansion edge as base edge")),
                        };
                        if gf.vertices(id).contains(&other) {
                            None
                        } else {
                            Some(e)
                        }
                    }
                }
            }
        };
        gf.blossom_mut(id).eta = new;
    }
    core.forest = gf;
    let mut report = CompressReport::default();
    // C = ŷz(uv) after compression against E from the expanded graph.
    for &e in &lay.edges {
        let i = lay.first[e];
        let big_e = bar.hyz(i) + bar.hyz(i + 2) - bar.hyz(i + 1);
        let c = core.hyz(e);
        let ok = if matched[e] { c <= big_e } else { c >= big_e };
        if !ok {
            report.violations.push(format!("edge {} has C = {c}, E = {big_e}", e + 1));
        }
    }
    Ok((core, report))
}

/// Translates top-level blossom `b` by `delta` units and dissolves it
/// when its `z` reaches 0. True when dissolved.
fn translate_top(core: &mut Core, b: usize, delta: i64) -> Result<bool> {
    let z = core.forest.blossom(b).z - 2 * delta;
    if z < 0 {
        return Err(Error::StructureViolation(format!("blossom {b} translated below 0")));
    }
    for v in core.forest.vertices(b) {
        core.yp[v] += delta;
    }
    core.forest.blossom_mut(b).z = z;
    if z == 0 {
        core.forest.dissolve(b)?;
        return Ok(true);
    }
    Ok(false)
}

fn top_blossoms(core: &Core) -> Vec<usize> {
    core.forest.alive().filter(|&b| core.forest.parent(b).is_none()).collect()
}

/// Dissolves every top-level blossom without a base edge, repeatedly.
/// Returns the number dissolved.
pub fn dissolve_ill_formed(core: &mut Core) -> Result<u64> {
    let mut count = 0;
    while let Some(b) = top_blossoms(core).into_iter().find(|&b| core.forest.blossom(b).eta.is_none()) {
        let z = core.forest.blossom(b).z;
        translate_top(core, b, z / 2)?;
        count += 1;
    }
    if let Some(b) = core.forest.alive().find(|&b| core.forest.blossom(b).eta.is_none()) {
        return Err(Error::StructureViolation(format!("nested blossom {b} lost its base edge")));
    }
    Ok(count)
}

/// The top node at the far end of `η(b)`.
fn eta_head(core: &Core, b: usize) -> Result<(usize, usize)> {
    let e = core.forest.blossom(b).eta.expect("well-formed blossom");
    let ed = *core.g.edge(e);
    let inside = core.forest.top(ed.u) == b;
    if ed.is_loop() || inside == (core.forest.top(ed.v) == b) {
        return Err(Error::StructureViolation(format!("base edge {e} of blossom {b} does not leave it")));
    }
    Ok((e, core.forest.top(if inside { ed.v } else { ed.u })))
}

/// One directed cycle of top-level blossoms linked by their base edges
/// (a single edge that is the base edge of both ends does not count).
fn find_eta_cycle(core: &Core) -> Result<Option<Vec<usize>>> {
    let tops = top_blossoms(core);
    let mut next = std::collections::HashMap::new();
    for &b in &tops {
        let (e, h) = eta_head(core, b)?;
        if core.forest.is_blossom(h) && core.forest.blossom(h).eta != Some(e) {
            next.insert(b, h);
        }
    }
    let mut state: std::collections::HashMap<usize, u8> = Default::default();
    for &s in &tops {
        if state.contains_key(&s) {
            continue;
        }
        let mut walk = Vec::new();
        let mut x = s;
        loop {
            match state.get(&x) {
                Some(1) => {
                    let pos = walk.iter().position(|&y| y == x).expect("on the walk");
                    return Ok(Some(walk[pos..].to_vec()));
                }
                Some(_) => break,
                None => {}
            }
            state.insert(x, 1);
            walk.push(x);
            match next.get(&x) {
                Some(&y) => x = y,
                None => break,
            }
        }
        for y in walk {
            state.insert(y, 2);
        }
    }
    Ok(None)
}

/// Makes every base edge of a top-level blossom window-eligible by unit
/// translations: first every directed cycle of base edges is broken,
/// then ineligible base edges are tightened top-down. Returns the number
/// of blossom translations.
pub fn tighten_eta_edges(core: &mut Core) -> Result<u64> {
    let mut count = 0u64;
    loop {
        while let Some(cycle) = find_eta_cycle(core)? {
            let delta = cycle.iter().map(|&b| core.forest.blossom(b).z / 2).min().unwrap_or(0);
            for b in cycle {
                translate_top(core, b, delta)?;
                count += 1;
            }
        }
        let tops = top_blossoms(core);
        let mut inel = std::collections::HashSet::new();
        for &b in &tops {
            let e = core.forest.blossom(b).eta.expect("well-formed blossom");
            if fixable(core, e) {
                inel.insert(b);
            }
        }
        if inel.is_empty() {
            return Ok(count);
        }
        let mut root = None;
        for &b in &tops {
            if !inel.contains(&b) {
                continue;
            }
            let (e, h) = eta_head(core, b)?;
            if !inel.contains(&h) || core.forest.blossom(h).eta == Some(e) {
                root = Some(b);
                break;
            }
        }
        let Some(b) = root else {
            return Err(Error::StructureViolation("ineligible base edges form a cycle".into()));
        };
        count += tighten_edge(core, b)?;
    }
}

/// Steps needed to bring slack `gap` into `{0, −2}` moving in
/// direction `dir`, if that is possible.
fn reach(gap: i64, dir: i64) -> Option<i64> {
    [0i64, -2].iter().map(|&target| (target - gap) * dir).filter(|&k| k >= 0).min()
}

/// True when `e` is ineligible and translating the blossom at its base
/// end moves it into the window: an unmatched base edge is in `I` and
/// falls, a matched one is not and rises. An edge on the far side stays
/// inside the compressed range `[−4, 2]` and is left alone.
fn fixable(core: &Core, e: usize) -> bool {
    let gap = core.hyz(e) - core.w[e];
    let dir = if core.matched[e] { 1 } else { -1 };
    !eligible2(core, e) && reach(gap, dir).is_some()
}

/// Translates the blossoms at the base end of `η(b)` until the edge is
/// eligible or that end is atomic.
fn tighten_edge(core: &mut Core, b: usize) -> Result<u64> {
    let e = core.forest.blossom(b).eta.expect("well-formed blossom");
    let ed = *core.g.edge(e);
    let u = if core.forest.top(ed.u) == b { ed.u } else { ed.v };
    let mut count = 0;
    loop {
        let t = core.forest.top(u);
        if !core.forest.is_blossom(t) || !fixable(core, e) {
            return Ok(count);
        }
        let gap = core.hyz(e) - core.w[e];
        let dir = if core.in_i(e, t) { -1 } else { 1 };
        let half = core.forest.blossom(t).z / 2;
        let Some(k) = reach(gap, dir) else {
            return Err(Error::StructureViolation(format!("base edge {e} moves away from eligibility")));
        };
        let delta = k.min(half);
        translate_top(core, t, delta)?;
        count += 1;
    }
}

/// Scales up one compressed state: `w` to the next scale's weights,
/// `y ← 2y + 4`, `z ← 2z`. Returns the edges whose new slack
/// `Δ₀ = ŷz − w` leaves its window: `≤ 12` on the carried matching,
/// `≥ −2` off it, and `[−2, 12]` on blossom subgraph and base edges.
pub fn scale_up_f(core: &mut Core, w: Vec<i64>) -> Vec<String> {
    core.w = w;
    core.yp.iter_mut().for_each(|y| *y = 2 * *y + 4);
    let live: Vec<usize> = core.forest.alive().collect();
    for &b in &live {
        core.forest.blossom_mut(b).z *= 2;
    }
    let mut strict = vec![false; core.g.m()];
    for &b in &live {
        for e in core.forest.subgraph_edges(b) {
            strict[e] = true;
        }
        if let Some(e) = core.forest.blossom(b).eta {
            strict[e] = true;
        }
    }
    let mut out = Vec::new();
    for (e, gap) in gaps(core).into_iter().enumerate() {
        let m = core.matched[e];
        let ok = if strict[e] {
            (-2..=12).contains(&gap)
        } else if m {
            gap <= 12
        } else {
            gap >= -2
        };
        if !ok {
            out.push(format!("edge {} ({}) has slack {gap} after scale-up", e + 1, if m { "M0" } else { "free" }));
        }
    }
    out
}

/// Slack ranges after compression: `≥ −4` off the matching, `≤ 2` on it,
/// `[−4, 2]` on blossom subgraph and base edges.
pub fn compressed_window(core: &Core) -> Vec<String> {
    let mut strict = vec![false; core.g.m()];
    for b in core.forest.alive() {
        for e in core.forest.subgraph_edges(b) {
            strict[e] = true;
        }
        if let Some(e) = core.forest.blossom(b).eta {
            strict[e] = true;
        }
    }
    gaps(core)
        .into_iter()
        .enumerate()
        .filter(|&(e, gap)| {
            if strict[e] {
                !(-4..=2).contains(&gap)
            } else if core.matched[e] {
                gap > 2
            } else {
                gap < -4
            }
        })
        .map(|(e, gap)| format!("edge {} has slack {gap} after compression", e + 1))
        .collect()
}

/// The expanded graph for one scale.
#[derive(Debug, Clone)]
pub struct Expanded {
    pub core: Core,
    pub tree: InheritedTree,
    pub layout: Layout,
    /// `[n, m, f(V), n̄, m̄, f̄(V)]`.
    pub sizes: [u64; 6],
    /// Failed structure checks.
    pub violations: Vec<String>,
}

/// Expands every edge of `I(B)` for the positive-`z` blossoms of `core`,
/// places the e-vertices, sets their duals so the end edges keep their
/// slacks and the middle edge is tight, and matches every undervalued
/// edge. The result starts with an empty forest; the blossoms become the
/// inherited tree with `y′` absorbing their `z/2`.
pub fn expand_all(core: &Core) -> Result<Expanded> {
    let g = &core.g;
    let n = g.n();
    let (gt, ids) = InheritedTree::from_forest_ids(&core.forest);
    let nb = gt.len();
    let parents = gt.parents();
    // anc[v]: kept blossoms (indices) containing G vertex v, innermost first.
    let mut anc: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        let mut p = parents[v];
        while let Some(x) = p {
            anc[v].push(x - n);
            p = parents[x];
        }
    }
    let contains = |b: usize, v: usize| anc[v].contains(&b);
    let eta: Vec<Option<usize>> = ids.iter().map(|&id| core.forest.blossom(id).eta).collect();
    let in_i = |e: usize, b: usize| core.matched[e] != (eta[b] == Some(e));
    let minimal = |v: usize| anc[v].first().copied();
    let lca = |u: usize, v: usize| anc[u].iter().copied().find(|&b| contains(b, v));
    let expands = |e: usize| {
        let ed = g.edge(e);
        if ed.is_loop() {
            return false;
        }
        let side = |x: usize, o: usize| minimal(x).is_some_and(|b| !contains(b, o) && in_i(e, b));
        side(ed.u, ed.v) || side(ed.v, ed.u)
    };
    let edges: Vec<usize> = (0..g.m()).filter(|&e| expands(e)).collect();
    let lay = Layout::new(g, edges);
    let kk = lay.edges.len();
    let nbar = n + 2 * kk;
    // Placement of e-vertices: kept blossom index or None for V.
    let mut place: Vec<Option<usize>> = vec![None; 2 * kk];
    for (k, &e) in lay.edges.iter().enumerate() {
        let ed = *g.edge(e);
        for (s, (x, o)) in [(ed.u, ed.v), (ed.v, ed.u)].into_iter().enumerate() {
            place[2 * k + s] = match minimal(x) {
                Some(b) if !contains(b, o) && in_i(e, b) => Some(b),
                _ => lca(x, o),
            };
        }
    }
    let gaps = gaps(core);
    // Slack and weight split of every expanded edge, u side first.
    let mut dsplit: Vec<(i64, i64)> = Vec::with_capacity(kk);
    let mut wsplit: Vec<(i64, i64)> = Vec::with_capacity(kk);
    let mut to_match = Vec::new();
    let mut violations = Vec::new();
    let half_even = |x: i64| 2 * x.div_euclid(4);
    for (k, &e) in lay.edges.iter().enumerate() {
        let w = core.w[e];
        let w1 = half_even(w);
        wsplit.push((w1, w - w1));
        let d = gaps[e];
        let d1 = half_even(d);
        dsplit.push((d1, d - d1));
        let _ = k;
    }
    for e in 0..g.m() {
        if !core.matched[e] || gaps[e] >= -2 {
            continue;
        }
        let ed = *g.edge(e);
        let top = lca(ed.u, ed.v);
        let atomic = |x: usize| minimal(x) == top;
        if atomic(ed.u) && atomic(ed.v) {
            if lay.index[e].is_some() {
                return Err(Error::StructureViolation(format!("undervalued edge {e} joins atoms but is expanded")));
            }
            to_match.push(lay.first[e]);
            continue;
        }
        let Some(k) = lay.index[e] else {
            return Err(Error::StructureViolation(format!("undervalued edge {e} was not expanded")));
        };
        let s = if atomic(ed.u) { 1 } else { 0 };
        let x = if s == 0 { ed.u } else { ed.v };
        if place[2 * k + s] != minimal(x) {
            violations.push(format!("undervalued edge {} has its e-vertex outside B_u", e + 1));
        }
        dsplit[k] = if s == 0 { (gaps[e], 0) } else { (0, gaps[e]) };
        to_match.push(lay.first[e] + 2 * s);
    }
    // Weights of the expanded graph.
    let mut wbar = Vec::with_capacity(g.m() + 2 * kk);
    for e in 0..g.m() {
        match lay.index[e] {
            Some(k) => wbar.extend([wsplit[k].0, 0, wsplit[k].1]),
            None => wbar.push(core.w[e]),
        }
    }
    let h = lay.graph(g, &wbar);
    // Inherited tree over the expanded vertex ids.
    let mut tree = InheritedTree::new(nbar);
    let mut kids: Vec<Vec<usize>> = gt
        .children
        .iter()
        .map(|ch| ch.iter().map(|&c| if c < n { c } else { c - n + nbar }).collect())
        .collect();
    for (i, p) in place.iter().enumerate() {
        if let Some(b) = p {
            kids[*b].push(n + i);
        }
    }
    for (b, ch) in kids.into_iter().enumerate() {
        tree.add(ch, gt.z[b]);
    }
    // True y on the expanded graph.
    let zsum = |p: Option<usize>| -> i64 {
        let mut s = 0;
        let mut x = p.map(|b| b + n);
        while let Some(node) = x {
            s += gt.z[node - n];
            x = parents[node];
        }
        s
    };
    let mut y = core.yp.clone();
    y.resize(nbar, 0);
    for (k, &e) in lay.edges.iter().enumerate() {
        let ed = *g.edge(e);
        let (a, b) = lay.evertices(k);
        y[a] = wsplit[k].0 + dsplit[k].0 - core.yp[ed.u] - zsum(place[2 * k]);
        y[b] = wsplit[k].1 + dsplit[k].1 - core.yp[ed.v] - zsum(place[2 * k + 1]);
    }
    // Membership of expanded vertices in kept blossoms.
    let mut member: Vec<Vec<usize>> = anc.clone();
    for p in &place {
        let mut list = Vec::new();
        let mut x = p.map(|b| b + n);
        while let Some(node) = x {
            list.push(node - n);
            x = parents[node];
        }
        member.push(list);
    }
    let hyz_bar = |ebar: usize| -> i64 {
        let ed = h.edge(ebar);
        let mut s = y[ed.u] + y[ed.v];
        for &b in &member[ed.u] {
            if member[ed.v].contains(&b) {
                s += gt.z[b];
            }
        }
        s
    };
    for (k, &e) in lay.edges.iter().enumerate() {
        let i = lay.first[e];
        let mid = hyz_bar(i + 1);
        if mid != 0 {
            violations.push(format!("middle edge of expanded edge {} has slack {mid}", e + 1));
        }
        let ends = (hyz_bar(i) - wbar[i], hyz_bar(i + 2) - wbar[i + 2]);
        if ends != dsplit[k] {
            violations.push(format!("end edges of expanded edge {} carry slacks {ends:?}", e + 1));
        }
        let ed = *g.edge(e);
        let (a, bv) = lay.evertices(k);
        for b in 0..nb {
            let (iu, iv) = (contains(b, ed.u), contains(b, ed.v));
            let (ia, ib) = (member[a].contains(&b), member[bv].contains(&b));
            let ok = match (iu, iv) {
                (false, false) => !ia && !ib,
                (true, true) => ia && ib,
                (true, false) => !ib && ia == in_i(e, b),
                (false, true) => !ia && ib == in_i(e, b),
            };
            if !ok {
                violations.push(format!("e-vertices of edge {} misplaced for blossom {}", e + 1, ids[b]));
            }
        }
    }
    // Every e-blossom has one edge of the expanded carried matching leaving it.
    let mbar: Vec<bool> = (0..h.m())
        .map(|x| {
            let e = lay.origin[x];
            let mid = lay.index[e].is_some() && x == lay.first[e] + 1;
            core.matched[e] != mid
        })
        .collect();
    for b in 0..nb {
        let exits = (0..h.m())
            .filter(|&x| mbar[x] && {
                let ed = h.edge(x);
                member[ed.u].contains(&b) != member[ed.v].contains(&b)
            })
            .count();
        if exits != 1 {
            violations.push(format!("e-blossom {} has {exits} matched edges leaving it", ids[b]));
        }
    }
    let fv = g.f_total();
    let fbar = h.f_total();
    let sizes = [n as u64, g.m() as u64, fv, nbar as u64, h.m() as u64, fbar];
    let cap = fv.min(g.m() as u64);
    if sizes[3] > sizes[0] + 2 * cap || sizes[4] > sizes[1] + 2 * cap || fbar > 3 * fv {
        violations.push(format!("expanded graph sizes {sizes:?} exceed the bounds"));
    }
    let mut bar = Core::new(h, wbar);
    for v in 0..nbar {
        bar.yp[v] = y[v] + member[v].iter().map(|&b| gt.z[b] / 2).sum::<i64>();
    }
    for x in to_match {
        bar.flip(x)?;
    }
    Ok(Expanded { core: bar, tree, layout: lay, sizes, violations })
}

/// Maximum-weight f-factor by scaling.
pub fn solve_ffactor(g: &Multigraph, cfg: Config) -> Result<Solution> {
    g.overflow_guard()?;
    if g.f_total() % 2 == 1 || !crate::classic::feasibility_check(g) {
        return Err(Error::Infeasible);
    }
    let n = g.n();
    let mult = 3 * g.f_total() as i64 + 2;
    let plan = ScalePlan::new(g, mult);
    let mut stats = RunStats::default();
    let mut gs = Core::new(g.clone(), vec![0; g.m()]);
    gs.yp.iter_mut().for_each(|y| *y = -2);
    let mut last: Option<(Core, Layout)> = None;
    for i in 1..=plan.scales {
        if let Some((bar, lay)) = last.take() {
            let (mut c, report) = compress_all(&bar, &lay, g)?;
            if cfg.check_scales {
                record(&mut stats, &format!("scale {i} compression"), report.violations);
            }
            dissolve_ill_formed(&mut c)?;
            let t = tighten_eta_edges(&mut c)?;
            stats.eta_translations.push((t, n as u64));
            let etas: Vec<usize> = c.forest.alive().filter_map(|b| c.forest.blossom(b).eta).collect();
            let inel = etas.iter().filter(|&&e| !eligible2(&c, e)).count();
            stats.eta_ineligible.push((inel as u64, etas.len() as u64));
            if cfg.check_scales {
                record(&mut stats, &format!("scale {i} compression window"), compressed_window(&c));
            }
            gs = c;
        }
        let bad = scale_up_f(&mut gs, plan.weights(i));
        if cfg.check_scales {
            record(&mut stats, &format!("scale {i} scale-up"), bad);
        }
        let ex = expand_all(&gs)?;
        stats.expanded_sizes.push(ex.sizes);
        if cfg.check_scales {
            record(&mut stats, &format!("scale {i} expansion"), ex.violations.clone());
        }
        let Expanded { mut core, tree, layout, .. } = ex;
        let mass: Vec<u64> = core.g.degrees().iter().map(|&f| f as u64).collect();
        {
            let mut d = Dismantler::new(&mut core, &tree, mass, true, cfg, &mut stats);
            d.run()?;
        }
        stats.scales += 1;
        if cfg.check_scales {
            let mut gi = Multigraph::with_degrees(g.degrees().to_vec());
            for (e, ed) in g.edges().iter().enumerate() {
                let j = layout.first[e];
                let w = if layout.index[e].is_some() { core.w[j] + core.w[j + 2] } else { core.w[j] };
                gi.add_edge(ed.u, ed.v, w);
            }
            let mut cert = core.certificate(true, 1, 0, 2);
            cert.expansions = layout.expansions(&core.w);
            let r = verify(&gi, &cert, &[]);
            record(&mut stats, &format!("scale {i} certificate"), r.violations);
        }
        last = Some((core, layout));
    }
    let (bar, lay) = last.expect("at least one scale");
    let mut certificate = bar.certificate(true, plan.mult, plan.offset, 2);
    certificate.expansions = lay.expansions(&bar.w);
    let matching = EdgeSet::from_ids(g.m(), (0..g.m()).filter(|&e| bar.matched[lay.first[e]]));
    let weight = weight(g, &matching);
    Ok(Solution { weight, matching, certificate, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_ffactor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn checked() -> Config {
        Config { check_scales: true, ..Config::default() }
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize, m: usize, maxw: i64, fmax: u32) -> Multigraph {
        let mut f: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=fmax)).collect();
        if f.iter().sum::<u32>() % 2 == 1 {
            f[0] += if f[0] < fmax { 1 } else { 0 };
            if f.iter().sum::<u32>() % 2 == 1 {
                f[0] -= 1;
            }
        }
        let mut g = Multigraph::with_degrees(f);
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            g.add_edge(u, v, rng.gen_range(0..=maxw));
        }
        g
    }

    #[test]
    fn capacity_examples() {
        let g = Multigraph::with_degrees(vec![1, 2, 2, 1, 1]);
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(capacity(&g, &all, &[0, 1, 2], &[], Regime::EBlossom), 2);
        let mut h = Multigraph::with_degrees(vec![1, 2, 2, 1, 1]);
        let e = h.add_edge(0, 3, 4);
        assert_eq!(capacity(&h, &all, &[0, 1, 2], &[e], Regime::Omega), 3);
        assert_eq!(capacity(&g, &[3, 4], &[0, 1, 2], &[], Regime::EBlossom), 0);
    }

    /// Triangles A = {0,1,2} (base 0) and B = {3,4,5} (base 3) with
    /// `1 2` and `4 5` matched, extra edges `extra` after the six ring
    /// edges, and weights equal to `ŷz` so every edge starts tight.
    fn two_triangles(extra: &[(usize, usize)], eta: [usize; 2], z: [i64; 2], blossom_b: bool) -> (Core, usize, usize) {
        let n = 1 + extra.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(5).max(5);
        let mut g = Multigraph::new(n);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)].into_iter().chain(extra.iter().copied()) {
            g.add_edge(u, v, 0);
        }
        let m = g.m();
        let mut c = Core::new(g, vec![0; m]);
        c.yp.iter_mut().enumerate().for_each(|(v, y)| *y = 3 + v as i64);
        c.flip(1).unwrap();
        c.flip(4).unwrap();
        let a = c.forest.add_blossom(vec![0, 1, 2], vec![0, 1, 2], vec![(0, 1), (1, 2), (2, 0)], 0, Some(eta[0]));
        c.forest.blossom_mut(a).z = z[0];
        let b = if blossom_b {
            let b = c.forest.add_blossom(vec![3, 4, 5], vec![3, 4, 5], vec![(3, 4), (4, 5), (5, 3)], 3, Some(eta[1]));
            c.forest.blossom_mut(b).z = z[1];
            b
        } else {
            NONE
        };
        c.w = (0..m).map(|e| c.hyz(e)).collect();
        (c, a, b)
    }

    #[test]
    fn tighten_is_a_no_op_on_eligible_edges() {
        let (mut c, a, _) = two_triangles(&[(0, 3)], [6, 0], [4, 0], false);
        let before = c.clone();
        assert_eq!(tighten_eta_edges(&mut c).unwrap(), 0);
        assert_eq!(c.yp, before.yp);
        assert_eq!(c.forest.blossom(a).z, 4);
    }

    #[test]
    fn tighten_breaks_a_two_cycle() {
        // η(A) = 0 3 points into B, η(B) = 3 0 (a parallel edge) back into A
        let (mut c, a, b) = two_triangles(&[(0, 3), (3, 0)], [6, 7], [4, 6], true);
        let before: Vec<i64> = (0..c.g.m()).map(|e| c.hyz(e)).collect();
        assert_eq!(tighten_eta_edges(&mut c).unwrap(), 2);
        assert!(!c.forest.blossom(a).alive);
        assert_eq!(c.forest.blossom(b).z, 2);
        assert_eq!(c.hyz(6), before[6]);
        assert_eq!(c.hyz(7), before[7]);
        for e in [0, 1, 2, 3, 4, 5] {
            assert_eq!(c.hyz(e), before[e], "edge {e}");
        }
    }

    #[test]
    fn tighten_walks_a_chain_top_down() {
        // A -> B through 0 3, B -> atom 6 through 3 6 with slack +2
        let (mut c, _, b) = two_triangles(&[(0, 3), (3, 6)], [6, 7], [4, 6], true);
        c.w[7] -= 2;
        assert!(!eligible2(&c, 7));
        let t = tighten_eta_edges(&mut c).unwrap();
        assert!(t > 0 && t <= 2 * c.n() as u64);
        assert!(eligible2(&c, 7));
        // two unit steps take z(B) from 6 to 2
        assert_eq!(c.forest.blossom(b).z, 2);
        for bl in c.forest.alive() {
            let e = c.forest.blossom(bl).eta.unwrap();
            assert!(eligible2(&c, e), "base edge {e} left at {}", c.hyz(e) - c.w[e]);
        }
    }

    #[test]
    fn unmatched_base_edge_below_the_window_is_left() {
        let (mut c, a, _) = two_triangles(&[(0, 3)], [6, 0], [4, 0], false);
        c.w[6] += 4;
        assert_eq!(tighten_eta_edges(&mut c).unwrap(), 0);
        assert_eq!(c.hyz(6) - c.w[6], -4);
        assert_eq!(c.forest.blossom(a).z, 4);
    }

    #[test]
    fn ill_formed_blossoms_dissolve() {
        let (mut c, a, b) = two_triangles(&[(0, 3)], [6, 6], [4, 2], true);
        c.forest.blossom_mut(a).eta = None;
        let y0 = c.yp[1];
        assert_eq!(dissolve_ill_formed(&mut c).unwrap(), 1);
        assert!(!c.forest.blossom(a).alive);
        assert!(c.forest.blossom(b).alive);
        assert_eq!(c.yp[1], y0 + 2);
    }

    #[test]
    fn scale_up_doubles_duals() {
        let (mut c, a, _) = two_triangles(&[(0, 3)], [6, 0], [4, 0], false);
        let y: Vec<i64> = c.yp.clone();
        let w: Vec<i64> = c.w.iter().map(|&w| 2 * w).collect();
        let bad = scale_up_f(&mut c, w);
        assert!(c.yp.iter().zip(&y).all(|(&new, &old)| new == 2 * old + 4));
        assert_eq!(c.forest.blossom(a).z, 8);
        // tight edges become 8 above the doubled weights: within every window
        assert!(bad.is_empty(), "{bad:?}");
        assert!(gaps(&c).iter().all(|&g| g == 8));
        let w: Vec<i64> = c.w.iter().map(|&w| w - 20).collect();
        let bad = scale_up_f(&mut c, w);
        assert!(bad.iter().any(|v| v.contains("M0")), "{bad:?}");
    }

    #[test]
    fn compress_without_expansions_is_the_identity() {
        let (c, _, _) = two_triangles(&[(0, 3), (3, 0)], [6, 7], [4, 6], true);
        let lay = Layout::new(&c.g, Vec::new());
        let (d, report) = compress_all(&c, &lay, &c.g).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(d.matched, c.matched);
        assert_eq!(d.yp, c.yp);
        assert_eq!(d.w, c.w);
        assert_eq!((0..c.g.m()).map(|e| d.hyz(e)).collect::<Vec<_>>(), (0..c.g.m()).map(|e| c.hyz(e)).collect::<Vec<_>>());
    }

    #[test]
    fn no_blossoms_means_no_expansion() {
        let mut g = Multigraph::with_degrees(vec![1, 1]);
        g.add_edge(0, 1, 4);
        let core = Core::new(g, vec![4]);
        let ex = expand_all(&core).unwrap();
        assert_eq!(ex.core.g.n(), 2);
        assert!(ex.layout.edges.is_empty());
        assert!(ex.violations.is_empty());
    }

    #[test]
    fn odd_total_degree_is_infeasible() {
        let mut g = Multigraph::with_degrees(vec![1, 2]);
        g.add_edge(0, 1, 1);
        assert_eq!(solve_ffactor(&g, Config::default()).unwrap_err(), Error::Infeasible);
    }

    #[test]
    fn multigraph_with_loop() {
        let mut g = Multigraph::with_degrees(vec![2, 2, 1, 1]);
        g.add_edge(0, 1, 5);
        g.add_edge(0, 1, 3);
        g.add_edge(1, 2, 4);
        g.add_edge(0, 3, 2);
        g.add_edge(2, 2, 7);
        g.add_edge(2, 3, 1);
        g.add_edge(1, 1, 6);
        let want = brute_ffactor(&g).unwrap().unwrap().0;
        let sol = solve_ffactor(&g, checked()).unwrap();
        assert_eq!(sol.weight, want);
        assert!(sol.stats.violations.is_empty(), "{:?}", sol.stats.violations);
        assert!(verify(&g, &sol.certificate, &[]).ok());
    }

    #[test]
    fn random_ffactors_match_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 150 {
            let n = rng.gen_range(2..=6);
            let m = rng.gen_range(1..=12);
            let g = random_instance(&mut rng, n, m, 30, 3);
            let Some((want, _)) = brute_ffactor(&g).unwrap() else { continue };
            let sol = solve_ffactor(&g, checked()).unwrap_or_else(|e| panic!("{e} on {g:?}"));
            assert_eq!(sol.weight, want, "{g:?}");
            assert!(sol.stats.violations.is_empty(), "{:?} on {g:?}", sol.stats.violations);
            let r = verify(&g, &sol.certificate, &[]);
            assert!(r.ok(), "{:?}", r.first());
            done += 1;
        }
    }

    #[test]
    fn unit_degrees_agree_with_matching_solver() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut done = 0;
        while done < 100 {
            let n = 2 * rng.gen_range(1..=4);
            let m = rng.gen_range(1..=n * (n - 1) / 2);
            let mut g = Multigraph::new(n);
            for _ in 0..m {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                g.add_edge(u, v, rng.gen_range(0..=40));
            }
            if !crate::classic::feasibility_check(&g) {
                continue;
            }
            let a = solve_ffactor(&g, checked()).unwrap();
            let b = crate::dismantler::solve_matching(&g, Config::default()).unwrap();
            assert_eq!(a.weight, b.weight);
            done += 1;
        }
    }
}
