//! Eligibility rules, the text certificate, and a verifier that checks a
//! certificate against the input graph with no solver state.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// Which slacks `ŷz(e) − w(e)` make an edge eligible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elig {
    /// Matched edges at 0, unmatched at −2.
    Phase1,
    /// Every edge at 0 or −2.
    Window,
    /// Every edge at 0 (exact duals).
    Exact,
}

impl Elig {
    fn targets(self, matched: bool) -> &'static [i64] {
        match self {
            Elig::Phase1 if matched => &[0],
            Elig::Phase1 => &[-2],
            Elig::Window => &[0, -2],
            Elig::Exact => &[0],
        }
    }
}

/// True iff an edge with the given slack is eligible.
pub fn eligible(elig: Elig, matched: bool, slack: i64) -> bool {
    elig.targets(matched).contains(&slack)
}

/// Smallest `d ≥ 0` after which the slack, moving down (`falling`) or up
/// at `rate` per unit, hits an eligible value.
pub fn delay(elig: Elig, matched: bool, slack: i64, falling: bool, rate: i64) -> Option<i64> {
    elig.targets(matched)
        .iter()
        .filter_map(|&t| {
            let gap = if falling { slack - t } else { t - slack };
            (gap >= 0 && gap % rate == 0).then_some(gap / rate)
        })
        .min()
}

/// A blossom of the certificate: vertices, `z`, base edge and the edges
/// of its subgraph `E(B)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CertBlossom {
    pub id: usize,
    pub z: i64,
    pub vertices: Vec<usize>,
    pub eta: Option<usize>,
    pub edges: Vec<usize>,
}

/// Endpoints and edge id written on an `m` line: `(u, v, edge)`.
pub type MatchedEnds = (usize, usize, usize);

/// An expanded edge `e = uv` of the input: replaced by the path
/// `u – uv̄ – vū – v` with end weights `w1`, `w2` and a zero middle edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Expansion {
    pub edge: usize,
    pub w1: i64,
    pub w2: i64,
}

/// Matching or f-factor plus duals for the weights
/// `mult · (ŵ + offset)` on the certified graph, which is the input with
/// the listed expansions applied. `slack` is the allowed near-domination
/// gap (2 for scaled runs, 0 for exact duals).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    pub ffactor: bool,
    pub mult: i64,
    pub offset: i64,
    pub slack: i64,
    pub expansions: Vec<Expansion>,
    pub y: Vec<i64>,
    pub blossoms: Vec<CertBlossom>,
    pub matching: Vec<usize>,
    pub undervalued: Vec<(usize, i64)>,
}

/// Builds the certified graph and its weights. Expansions are applied in
/// increasing edge order; the `i`-th adds vertices `n + 2i` (next to `u`)
/// and `n + 2i + 1`, and its three edges replace `e` in the edge order.
pub fn certified_graph(
    g: &Multigraph,
    mult: i64,
    offset: i64,
    expansions: &[Expansion],
) -> std::result::Result<(Multigraph, Vec<i64>, Vec<usize>), String> {
    let mut exp: Vec<Expansion> = expansions.to_vec();
    exp.sort_by_key(|x| x.edge);
    for pair in exp.windows(2) {
        if pair[0].edge == pair[1].edge {
            return Err(format!("edge {} expanded twice", pair[0].edge + 1));
        }
    }
    let mut f = g.degrees().to_vec();
    f.extend(std::iter::repeat_n(1, 2 * exp.len()));
    let mut h = Multigraph::with_degrees(f);
    let mut w = Vec::new();
    // origin[e] = input edge the certified edge comes from
    let mut origin = Vec::new();
    let mut k = 0;
    for (e, ed) in g.edges().iter().enumerate() {
        let target = mult * (ed.w + offset);
        if k < exp.len() && exp[k].edge == e {
            let x = exp[k];
            if ed.is_loop() {
                return Err(format!("loop {} cannot be expanded", e + 1));
            }
            if x.w1 + x.w2 != target {
                return Err(format!("expansion of edge {} splits {} as {} + {}", e + 1, target, x.w1, x.w2));
            }
            let (a, b) = (g.n() + 2 * k, g.n() + 2 * k + 1);
            h.add_edge(ed.u, a, x.w1);
            h.add_edge(a, b, 0);
            h.add_edge(b, ed.v, x.w2);
            w.extend([x.w1, 0, x.w2]);
            origin.extend([e, e, e]);
            k += 1;
        } else {
            h.add_edge(ed.u, ed.v, target);
            w.push(target);
            origin.push(e);
        }
    }
    if k != exp.len() {
        return Err("expansion of a nonexistent edge".into());
    }
    Ok((h, w, origin))
}

impl Certificate {
    /// Line-oriented text form; vertices and edges are 1-based.
    pub fn render(&self, h: &Multigraph) -> String {
        let mut s = String::new();
        let mode = if self.ffactor { "ffactor" } else { "match" };
        let _ = writeln!(s, "h {} {} {} {}", mode, self.mult, self.offset, self.slack);
        for x in &self.expansions {
            let _ = writeln!(s, "x {} {} {}", x.edge + 1, x.w1, x.w2);
        }
        for (v, y) in self.y.iter().enumerate() {
            let _ = writeln!(s, "y {} {}", v + 1, y);
        }
        for b in &self.blossoms {
            let vs: Vec<String> = b.vertices.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "z {} {} : {}", b.id, b.z, vs.join(" "));
            if let Some(e) = b.eta {
                let _ = writeln!(s, "eta {} {}", b.id, e + 1);
            }
            let es: Vec<String> = b.edges.iter().map(|e| (e + 1).to_string()).collect();
            let _ = writeln!(s, "r {} : {}", b.id, es.join(" "));
        }
        for &e in &self.matching {
            let ed = h.edge(e);
            let _ = writeln!(s, "m {} {} {}", ed.u + 1, ed.v + 1, e + 1);
        }
        for &(e, u) in &self.undervalued {
            let _ = writeln!(s, "u {} {}", e + 1, u);
        }
        s
    }

    /// Parses the text form. Endpoints on `m` lines are kept for the
    /// verifier to cross-check.
    pub fn parse(text: &str) -> Result<(Certificate, Vec<MatchedEnds>)> {
        let mut c = Certificate::default();
        let mut ends = Vec::new();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut seen_header = false;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: &str| Error::ParseError { line, msg: msg.to_string() };
            let tok: Vec<&str> = raw.split_whitespace().collect();
            if tok.is_empty() || tok[0] == "c" {
                continue;
            }
            let num = |k: usize| -> Result<i64> {
                tok.get(k).ok_or_else(|| err("missing field"))?.parse::<i64>().map_err(|_| err("bad number"))
            };
            let idx = |k: usize| -> Result<usize> {
                let x = num(k)?;
                if x < 1 {
                    return Err(err("ids are 1-based"));
                }
                Ok(x as usize - 1)
            };
            let list = |from: usize| -> Result<Vec<usize>> {
                if tok.get(from - 1) != Some(&":") {
                    return Err(err("expected ':'"));
                }
                tok[from..]
                    .iter()
                    .map(|t| match t.parse::<usize>() {
                        Ok(x) if x >= 1 => Ok(x - 1),
                        _ => Err(err("bad id in list")),
                    })
                    .collect()
            };
            match tok[0] {
                "h" => {
                    c.ffactor = match tok.get(1) {
                        Some(&"match") => false,
                        Some(&"ffactor") => true,
                        _ => return Err(err("unknown mode")),
                    };
                    c.mult = num(2)?;
                    c.offset = num(3)?;
                    c.slack = num(4)?;
                    seen_header = true;
                }
                "x" => c.expansions.push(Expansion { edge: idx(1)?, w1: num(2)?, w2: num(3)? }),
                "y" => {
                    let v = idx(1)?;
                    if c.y.len() <= v {
                        c.y.resize(v + 1, 0);
                    }
                    c.y[v] = num(2)?;
                }
                "z" => {
                    let id = num(1)? as usize;
                    ids.insert(id, c.blossoms.len());
                    c.blossoms.push(CertBlossom { id, z: num(2)?, vertices: list(4)?, ..Default::default() });
                }
                "eta" => {
                    let b = *ids.get(&(num(1)? as usize)).ok_or_else(|| err("eta before its z line"))?;
                    c.blossoms[b].eta = Some(idx(2)?);
                }
                "r" => {
                    let b = *ids.get(&(num(1)? as usize)).ok_or_else(|| err("r before its z line"))?;
                    c.blossoms[b].edges = list(3)?;
                }
                "m" => {
                    let e = idx(3)?;
                    ends.push((idx(1)?, idx(2)?, e));
                    c.matching.push(e);
                }
                "u" => c.undervalued.push((idx(1)?, num(2)?)),
                _ => return Err(err("unknown line type")),
            }
        }
        if !seen_header {
            return Err(Error::BadHeader("certificate has no 'h' line".into()));
        }
        Ok((c, ends))
    }
}

/// Outcome of [`verify`]: every violation found, and the input-weight of
/// the certified matching when it pulls back to a valid one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Report {
    pub violations: Vec<String>,
    pub weight: Option<i64>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&str> {
        self.violations.first().map(|s| s.as_str())
    }
}

/// Checks `cert` against the input `g`: perfect matching / f-factor,
/// near domination, near tightness on matched and blossom edges,
/// `z ≥ 0`, and saturation of every positive blossom. `m_ends` are the
/// endpoints written on `m` lines, if any.
pub fn verify(g: &Multigraph, cert: &Certificate, m_ends: &[MatchedEnds]) -> Report {
    let mut r = Report::default();
    let (h, w, origin) = match certified_graph(g, cert.mult, cert.offset, &cert.expansions) {
        Ok(x) => x,
        Err(e) => {
            r.violations.push(e);
            return r;
        }
    };
    let n = h.n();
    let m = h.m();
    if !cert.ffactor && !g.degrees().iter().all(|&f| f == 1) {
        r.violations.push("matching certificate for an instance with f != 1".into());
    }
    if cert.y.len() != n {
        r.violations.push(format!("{} y values for {} vertices", cert.y.len(), n));
        return r;
    }
    let mut matched = vec![false; m];
    for &e in &cert.matching {
        if e >= m {
            r.violations.push(format!("matched edge {} does not exist", e + 1));
            return r;
        }
        if matched[e] {
            r.violations.push(format!("edge {} listed twice", e + 1));
        }
        matched[e] = true;
    }
    for &(u, v, e) in m_ends {
        if e < m {
            let ed = h.edge(e);
            if !((ed.u == u && ed.v == v) || (ed.u == v && ed.v == u)) {
                r.violations.push(format!("edge {} does not join {} and {}", e + 1, u + 1, v + 1));
            }
        }
    }
    let mut deg = vec![0u64; n];
    for e in (0..m).filter(|&e| matched[e]) {
        let ed = h.edge(e);
        deg[ed.u] += 1;
        deg[ed.v] += 1;
    }
    for v in 0..n {
        if deg[v] != h.f(v) as u64 {
            r.violations.push(format!("vertex {} has degree {} but f = {}", v + 1, deg[v], h.f(v)));
        }
    }

    // Blossom membership, laminarity and z.
    let nb = cert.blossoms.len();
    let mut member = vec![vec![false; n]; nb];
    for (i, b) in cert.blossoms.iter().enumerate() {
        for &v in &b.vertices {
            if v >= n {
                r.violations.push(format!("blossom {} lists vertex {}", b.id, v + 1));
                return r;
            }
            member[i][v] = true;
        }
        if b.z < 0 {
            r.violations.push(format!("blossom {} has z = {} < 0", b.id, b.z));
        }
        if b.vertices.is_empty() {
            r.violations.push(format!("blossom {} is empty", b.id));
        }
    }
    for i in 0..nb {
        for j in i + 1..nb {
            let both = (0..n).filter(|&v| member[i][v] && member[j][v]).count();
            let (a, b) = (cert.blossoms[i].vertices.len(), cert.blossoms[j].vertices.len());
            if both != 0 && both != a && both != b {
                r.violations.push(format!("blossoms {} and {} cross", cert.blossoms[i].id, cert.blossoms[j].id));
            }
        }
    }

    // I(B) = δ_M(B) ⊕ η(B).
    let in_i = |i: usize, e: usize| -> bool {
        let ed = h.edge(e);
        let crossing = member[i][ed.u] != member[i][ed.v];
        crossing && (matched[e] != (cert.blossoms[i].eta == Some(e)))
    };
    let mut hyz = vec![0i64; m];
    for e in 0..m {
        let ed = h.edge(e);
        let mut s = cert.y[ed.u] + cert.y[ed.v];
        for i in 0..nb {
            if (member[i][ed.u] && member[i][ed.v]) || in_i(i, e) {
                s += cert.blossoms[i].z;
            }
        }
        hyz[e] = s;
    }
    for (i, b) in cert.blossoms.iter().enumerate() {
        if let Some(eta) = b.eta {
            if eta >= m || member[i][h.edge(eta).u] == member[i][h.edge(eta).v] {
                r.violations.push(format!("base edge of blossom {} does not leave it", b.id));
            }
        }
    }

    let under: HashMap<usize, i64> = cert.undervalued.iter().copied().collect();
    let mut in_sub = vec![false; m];
    for b in &cert.blossoms {
        for &e in &b.edges {
            if e < m {
                in_sub[e] = true;
            }
        }
    }
    for e in 0..m {
        let gap = hyz[e] - w[e];
        if gap < -cert.slack {
            let expected = -cert.slack - gap;
            if !cert.ffactor {
                r.violations.push(format!("edge {}: ŷz − w = {} below −{}", e + 1, gap, cert.slack));
            } else if !matched[e] {
                r.violations.push(format!("unmatched edge {} is undervalued ({})", e + 1, gap));
            } else if under.get(&e) != Some(&expected) {
                r.violations.push(format!("undervalued edge {} not recorded with value {}", e + 1, expected));
            }
        } else if under.contains_key(&e) {
            r.violations.push(format!("edge {} recorded as undervalued but has ŷz − w = {}", e + 1, gap));
        }
        if matched[e] && gap > 0 {
            r.violations.push(format!("matched edge {}: ŷz − w = {} > 0", e + 1, gap));
        }
        if in_sub[e] && gap > 0 {
            r.violations.push(format!("blossom edge {}: ŷz − w = {} > 0", e + 1, gap));
        }
    }
    for (i, b) in cert.blossoms.iter().enumerate() {
        if b.z == 0 {
            continue;
        }
        let f_b: u64 = b.vertices.iter().map(|&v| h.f(v) as u64).sum();
        let mut inside = 0u64;
        let mut i_size = 0u64;
        let mut i_matched = 0u64;
        for e in 0..m {
            let ed = h.edge(e);
            if member[i][ed.u] && member[i][ed.v] {
                inside += matched[e] as u64;
            } else if in_i(i, e) {
                i_size += 1;
                i_matched += matched[e] as u64;
            }
        }
        let cap = (f_b + i_size) / 2;
        if inside + i_matched != cap {
            r.violations.push(format!(
                "blossom {} (z = {}) is not saturated: {} + {} matched, capacity {}",
                b.id, b.z, inside, i_matched, cap
            ));
        }
    }

    // Pull back to the input graph.
    let mut pulled = vec![false; g.m()];
    let mut k = 0;
    while k < m {
        let e = origin[k];
        if k + 2 < m && origin[k + 2] == e && origin[k + 1] == e {
            if matched[k] != matched[k + 2] || matched[k] == matched[k + 1] {
                r.violations.push(format!("expansion of edge {} is not alternating", e + 1));
            }
            pulled[e] = matched[k];
            k += 3;
        } else {
            pulled[e] = matched[k];
            k += 1;
        }
    }
    let mut gdeg = vec![0u64; g.n()];
    let mut weight = 0;
    for (e, ed) in g.edges().iter().enumerate() {
        if pulled[e] {
            gdeg[ed.u] += 1;
            gdeg[ed.v] += 1;
            weight += ed.w;
        }
    }
    if (0..g.n()).all(|v| gdeg[v] == g.f(v) as u64) {
        r.weight = Some(weight);
    } else {
        r.violations.push("matching does not pull back to a perfect f-factor of the input".into());
    }
    r
}
