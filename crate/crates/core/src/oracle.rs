//! Exhaustive reference solvers for tiny instances and an alternating-walk
//! checker. None of this shares code with the solvers.

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph};

/// Maximum vertex count accepted by [`brute_perfect_matching`].
pub const MATCHING_LIMIT: usize = 12;
/// Maximum edge count accepted by [`brute_ffactor`].
pub const FFACTOR_LIMIT: usize = 22;

/// Best perfect matching by recursion on the lowest unmatched vertex.
/// `Ok(None)` means no perfect matching exists.
pub fn brute_perfect_matching(g: &Multigraph) -> Result<Option<(i64, EdgeSet)>> {
    if g.n() > MATCHING_LIMIT {
        return Err(Error::SizeLimit(format!("n = {} > {}", g.n(), MATCHING_LIMIT)));
    }
    let mut used = vec![false; g.n()];
    let mut chosen = Vec::new();
    let mut best: Option<(i64, Vec<usize>)> = None;
    rec_match(g, &mut used, &mut chosen, 0, &mut best);
    Ok(best.map(|(w, ids)| (w, EdgeSet::from_ids(g.m(), ids))))
}

fn rec_match(
    g: &Multigraph,
    used: &mut [bool],
    chosen: &mut Vec<usize>,
    acc: i64,
    best: &mut Option<(i64, Vec<usize>)>,
) {
    let Some(v) = used.iter().position(|&b| !b) else {
        if best.as_ref().is_none_or(|(w, _)| acc > *w) {
            *best = Some((acc, chosen.clone()));
        }
        return;
    };
    used[v] = true;
    for &e in g.adj(v) {
        let u = g.edge(e).other(v);
        if u == v || used[u] {
            continue;
        }
        used[u] = true;
        chosen.push(e);
        rec_match(g, used, chosen, acc + g.edge(e).w, best);
        chosen.pop();
        used[u] = false;
    }
    used[v] = false;
}

/// Optimum perfect-matching weight by dynamic programming over vertex
/// subsets. Independent of [`brute_perfect_matching`].
pub fn bitmask_perfect_matching(g: &Multigraph) -> Result<Option<i64>> {
    let n = g.n();
    if n > MATCHING_LIMIT + 8 {
        return Err(Error::SizeLimit(format!("n = {n}")));
    }
    let mut best = vec![vec![None::<i64>; n]; n];
    for e in g.edges() {
        if e.u == e.v {
            continue;
        }
        let (a, b) = (e.u.min(e.v), e.u.max(e.v));
        best[a][b] = Some(best[a][b].map_or(e.w, |x: i64| x.max(e.w)));
    }
    let full = (1usize << n) - 1;
    let mut dp = vec![None::<i64>; 1 << n];
    dp[0] = Some(0);
    for mask in 0..=full {
        let Some(cur) = dp[mask] else { continue };
        if mask == full {
            continue;
        }
        let v = (!mask).trailing_zeros() as usize;
        for u in v + 1..n {
            if mask & (1 << u) != 0 {
                continue;
            }
            if let Some(w) = best[v][u] {
                let next = mask | (1 << v) | (1 << u);
                let cand = cur + w;
                if dp[next].is_none_or(|x| cand > x) {
                    dp[next] = Some(cand);
                }
            }
        }
    }
    Ok(dp[full])
}

/// Best f-factor over all edge subsets (loops count 2 toward the degree).
/// `Ok(None)` means no f-factor exists.
pub fn brute_ffactor(g: &Multigraph) -> Result<Option<(i64, EdgeSet)>> {
    if g.m() > FFACTOR_LIMIT {
        return Err(Error::SizeLimit(format!("m = {} > {}", g.m(), FFACTOR_LIMIT)));
    }
    let mut best: Option<(i64, u32)> = None;
    for mask in 0u32..(1u32 << g.m()) {
        let mut deg = vec![0u32; g.n()];
        let mut w = 0i64;
        for (i, e) in g.edges().iter().enumerate() {
            if mask & (1 << i) != 0 {
                deg[e.u] += 1;
                deg[e.v] += 1;
                w += e.w;
            }
        }
        if (0..g.n()).all(|v| deg[v] == g.f(v)) && best.is_none_or(|(bw, _)| w > bw) {
            best = Some((w, mask));
        }
    }
    Ok(best.map(|(w, mask)| (w, EdgeSet::from_ids(g.m(), (0..g.m()).filter(|i| mask & (1 << i) != 0)))))
}

/// True iff `walk`, read as a walk starting at `start`, is connected,
/// edge-simple and alternates between edges inside and outside `m`.
pub fn check_alternating_walk(g: &Multigraph, start: usize, walk: &[usize], m: &EdgeSet) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut at = start;
    for (i, &e) in walk.iter().enumerate() {
        if !seen.insert(e) {
            return false;
        }
        let edge = g.edge(e);
        if edge.u != at && edge.v != at {
            return false;
        }
        at = edge.other(at);
        if i > 0 && m.contains(e) == m.contains(walk[i - 1]) {
            return false;
        }
    }
    true
}
