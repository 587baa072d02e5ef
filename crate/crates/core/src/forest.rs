//! Current blossoms: the laminar forest with ordered child rings, the
//! partition of vertices into top-level blossoms, and the recursive
//! trail extraction used by augments and expands.
//!
//! Node ids `0..n` are vertices; blossom `i` has node id `n + i`.
//! `ring[i]` joins `children[i]` and `children[i + 1]` (cyclically) and
//! `ends[i]` holds its endpoints in those two children. Child 0 contains
//! the base, and a blossom child 0 always shares the base edge `eta`.

use crate::error::{Error, Result};

pub const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blossom {
    pub children: Vec<usize>,
    pub ring: Vec<usize>,
    pub ends: Vec<(usize, usize)>,
    pub base: usize,
    /// Base edge; `None` for a free blossom.
    pub eta: Option<usize>,
    pub z: i64,
    pub alive: bool,
}

/// One step of a walk around a child ring: `edge` leaves the previous
/// child at `from` and enters child `idx` at `entry`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub idx: usize,
    pub edge: usize,
    pub from: usize,
    pub entry: usize,
}

/// New base data for a blossom after an augment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rebase {
    pub blossom: usize,
    pub eta: Option<usize>,
    pub base: usize,
}

#[derive(Debug, Clone)]
pub struct Forest {
    n: usize,
    blossoms: Vec<Blossom>,
    parent: Vec<usize>,
    pos: Vec<usize>,
    set_of: Vec<usize>,
    set_top: Vec<usize>,
    set_members: Vec<Vec<usize>>,
    spare_sets: Vec<usize>,
    relabels: u64,
}

impl Forest {
    pub fn new(n: usize) -> Self {
        Forest {
            n,
            blossoms: Vec::new(),
            parent: vec![NONE; n],
            pos: vec![0; n],
            set_of: (0..n).collect(),
            set_top: (0..n).collect(),
            set_members: (0..n).map(|v| vec![v]).collect(),
            spare_sets: Vec::new(),
            relabels: 0,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total node count (vertices plus every blossom ever created).
    pub fn nodes(&self) -> usize {
        self.n + self.blossoms.len()
    }

    #[inline]
    pub fn is_blossom(&self, node: usize) -> bool {
        node >= self.n
    }

    #[inline]
    pub fn blossom(&self, node: usize) -> &Blossom {
        &self.blossoms[node - self.n]
    }

    #[inline]
    pub fn blossom_mut(&mut self, node: usize) -> &mut Blossom {
        &mut self.blossoms[node - self.n]
    }

    /// Ids of live blossoms, in creation order.
    pub fn alive(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.blossoms.len()).filter(|&i| self.blossoms[i].alive).map(move |i| self.n + i)
    }

    /// Top-level node containing vertex `v`.
    #[inline]
    pub fn top(&self, v: usize) -> usize {
        self.set_top[self.set_of[v]]
    }

    /// Vertices of a top-level node, without traversal.
    pub fn top_members(&self, top: usize) -> &[usize] {
        let v = if self.is_blossom(top) { self.blossom(top).base } else { top };
        &self.set_members[self.set_of[v]]
    }

    #[inline]
    pub fn parent(&self, node: usize) -> Option<usize> {
        let p = self.parent[node];
        (p != NONE).then_some(p)
    }

    /// Vertex count relabelled by set merges and splits.
    pub fn relabels(&self) -> u64 {
        self.relabels
    }

    /// Base vertex of a node.
    pub fn base(&self, node: usize) -> usize {
        if self.is_blossom(node) {
            self.blossom(node).base
        } else {
            node
        }
    }

    /// True iff the base edge of `b` is matched; a free blossom counts as
    /// having a matched base edge.
    pub fn eta_matched(&self, b: usize, matched: &[bool]) -> bool {
        self.blossom(b).eta.is_none_or(|e| matched[e])
    }

    /// All vertices of a node.
    pub fn vertices(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(x) = stack.pop() {
            if self.is_blossom(x) {
                stack.extend(self.blossom(x).children.iter().rev());
            } else {
                out.push(x);
            }
        }
        out
    }

    /// Index of the child of `b` containing vertex `x`.
    pub fn child_index(&self, b: usize, x: usize) -> Result<usize> {
        let mut c = x;
        while self.parent[c] != b {
            if self.parent[c] == NONE {
                return Err(Error::StructureViolation(format!("vertex {x} not in blossom {b}")));
            }
            c = self.parent[c];
        }
        Ok(self.pos[c])
    }

    /// Child of `b` containing vertex `x`.
    pub fn child_of(&self, b: usize, x: usize) -> Result<usize> {
        Ok(self.blossom(b).children[self.child_index(b, x)?])
    }

    /// Blossoms containing `v`, innermost first.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut c = self.parent[v];
        while c != NONE {
            out.push(c);
            c = self.parent[c];
        }
        out
    }

    /// Creates a blossom from top-level nodes and merges their sets,
    /// relabelling all but the largest.
    pub fn add_blossom(
        &mut self,
        children: Vec<usize>,
        ring: Vec<usize>,
        ends: Vec<(usize, usize)>,
        base: usize,
        eta: Option<usize>,
    ) -> usize {
        debug_assert_eq!(children.len(), ring.len());
        let id = self.n + self.blossoms.len();
        self.parent.push(NONE);
        self.pos.push(0);
        let sets: Vec<usize> = children.iter().map(|&c| self.set_of[self.base(c)]).collect();
        let keep = *sets
            .iter()
            .max_by(|&&a, &&b| self.set_members[a].len().cmp(&self.set_members[b].len()).then(b.cmp(&a)))
            .expect("blossom has children");
        for &s in &sets {
            if s == keep {
                continue;
            }
            let moved = std::mem::take(&mut self.set_members[s]);
            self.relabels += moved.len() as u64;
            for &v in &moved {
                self.set_of[v] = keep;
            }
            self.set_members[keep].extend(moved);
            self.spare_sets.push(s);
        }
        self.set_top[keep] = id;
        for (i, &c) in children.iter().enumerate() {
            self.parent[c] = id;
            self.pos[c] = i;
        }
        self.blossoms.push(Blossom { children, ring, ends, base, eta, z: 0, alive: true });
        id
    }

    /// Removes top-level blossom `b`; its children become top-level.
    /// The largest child keeps the set, the others are relabelled.
    pub fn dissolve(&mut self, b: usize) -> Result<()> {
        if self.parent[b] != NONE || !self.blossom(b).alive {
            return Err(Error::StructureViolation(format!("blossom {b} is not a live top")));
        }
        let children = self.blossom(b).children.clone();
        let set = self.set_of[self.blossom(b).base];
        let parts: Vec<Vec<usize>> = children.iter().map(|&c| self.vertices(c)).collect();
        let big = (0..parts.len()).max_by(|&a, &c| parts[a].len().cmp(&parts[c].len()).then(c.cmp(&a))).unwrap();
        self.set_members[set] = parts[big].clone();
        self.set_top[set] = children[big];
        for (i, part) in parts.into_iter().enumerate() {
            self.parent[children[i]] = NONE;
            if i == big {
                continue;
            }
            let s = self.fresh_set();
            self.relabels += part.len() as u64;
            for &v in &part {
                self.set_of[v] = s;
            }
            self.set_members[s] = part;
            self.set_top[s] = children[i];
        }
        self.blossom_mut(b).alive = false;
        Ok(())
    }

    fn fresh_set(&mut self) -> usize {
        if let Some(s) = self.spare_sets.pop() {
            s
        } else {
            self.set_members.push(Vec::new());
            self.set_top.push(NONE);
            self.set_members.len() - 1
        }
    }

    /// Rotates the child ring of `b` so that index `j` becomes 0.
    pub fn rotate(&mut self, b: usize, j: usize) {
        let bl = self.blossom_mut(b);
        bl.children.rotate_left(j);
        bl.ring.rotate_left(j);
        bl.ends.rotate_left(j);
        let children = bl.children.clone();
        for (i, c) in children.into_iter().enumerate() {
            self.pos[c] = i;
        }
    }

    /// Applies new base data and restores the child-0 convention.
    pub fn apply_rebase(&mut self, r: Rebase) -> Result<()> {
        let j = self.child_index(r.blossom, r.base)?;
        let bl = self.blossom_mut(r.blossom);
        bl.eta = r.eta;
        bl.base = r.base;
        self.rotate(r.blossom, j);
        Ok(())
    }

    /// Edges of the blossom subgraph: ring edges of `b` and of every
    /// descendant blossom.
    pub fn subgraph_edges(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![b];
        while let Some(x) = stack.pop() {
            let bl = self.blossom(x);
            out.extend(bl.ring.iter().copied());
            stack.extend(bl.children.iter().copied().filter(|&c| self.is_blossom(c)));
        }
        out
    }

    /// Walk around the ring of `b` from child `j`, entered by an edge of
    /// matched-status `t_in`, to child 0. For `j = 0` with an atomic base
    /// the walk is the full cycle when `t_in` equals the base edge type and
    /// empty otherwise; a blossom child 0 yields an empty walk.
    pub fn ring_walk(&self, matched: &[bool], b: usize, j: usize, t_in: bool) -> Result<Vec<Step>> {
        let bl = self.blossom(b);
        let k = bl.children.len();
        let c = bl.children[j];
        let forward = if j == 0 {
            if self.is_blossom(c) || t_in != self.eta_matched(b, matched) {
                return Ok(Vec::new());
            }
            true
        } else if self.is_blossom(c) {
            let eta = self.blossom(c).eta;
            if eta == Some(bl.ring[j]) {
                true
            } else if eta == Some(bl.ring[j - 1]) {
                false
            } else {
                return Err(Error::StructureViolation(format!("child {c} of {b} has its base edge off the ring")));
            }
        } else if matched[bl.ring[j]] != t_in {
            true
        } else if matched[bl.ring[j - 1]] != t_in {
            false
        } else {
            return Err(Error::StructureViolation(format!("atom {c} of {b} does not alternate")));
        };
        let mut steps = Vec::new();
        let mut i = j;
        loop {
            let step = if forward {
                let (p, q) = bl.ends[i];
                Step { idx: (i + 1) % k, edge: bl.ring[i], from: p, entry: q }
            } else {
                let pi = (i + k - 1) % k;
                let (p, q) = bl.ends[pi];
                Step { idx: pi, edge: bl.ring[pi], from: q, entry: p }
            };
            i = step.idx;
            steps.push(step);
            if i == 0 {
                break;
            }
            if steps.len() > k {
                return Err(Error::StructureViolation(format!("ring walk of {b} does not close")));
            }
        }
        Ok(steps)
    }

    /// Appends to `out` the alternating trail inside `b` from `x` to the
    /// base, entered at `x` by an edge of type `t_in` and continued at the
    /// base by an edge of the opposite type to the base edge. Records the
    /// base change `(b, other, x)` each traversed blossom gets when the
    /// trail is flipped.
    pub fn trail(
        &self,
        matched: &[bool],
        b: usize,
        x: usize,
        t_in: bool,
        other: Option<usize>,
        out: &mut Vec<usize>,
        rebase: &mut Vec<Rebase>,
    ) -> Result<()> {
        rebase.push(Rebase { blossom: b, eta: other, base: x });
        let bl = self.blossom(b);
        let j = self.child_index(b, x)?;
        let c = bl.children[j];
        if self.is_blossom(c) {
            self.trail(matched, c, x, t_in, other, out, rebase)?;
            if j == 0 {
                return Ok(());
            }
        }
        let steps = self.ring_walk(matched, b, j, t_in)?;
        for (i, s) in steps.iter().enumerate() {
            out.push(s.edge);
            let d = bl.children[s.idx];
            if !self.is_blossom(d) || (i + 1 == steps.len() && j == 0) {
                continue;
            }
            if i + 1 < steps.len() && self.blossom(d).eta == Some(s.edge) {
                let next = &steps[i + 1];
                let mut tmp = Vec::new();
                self.trail(matched, d, next.from, matched[next.edge], Some(next.edge), &mut tmp, rebase)?;
                out.extend(tmp.into_iter().rev());
            } else {
                self.trail(matched, d, s.entry, matched[s.edge], Some(s.edge), out, rebase)?;
            }
        }
        Ok(())
    }

    /// The trail from `x` to the base of `b` that starts with a matched
    /// edge at `x` (empty when `x` is the base of an ordinary blossom).
    pub fn path_to_base(&self, matched: &[bool], b: usize, x: usize) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        let mut rebase = Vec::new();
        self.trail(matched, b, x, false, None, &mut out, &mut rebase)?;
        Ok(out)
    }

    /// Checks parent/child links, ring shape and the partition.
    pub fn check(&self) -> Result<()> {
        let bad = |m: String| Err(Error::StructureViolation(m));
        for b in self.alive() {
            let bl = self.blossom(b);
            let k = bl.children.len();
            if k == 0 || bl.ring.len() != k || bl.ends.len() != k {
                return bad(format!("blossom {b} has a malformed ring"));
            }
            for (i, &c) in bl.children.iter().enumerate() {
                if self.parent[c] != b || self.pos[c] != i {
                    return bad(format!("child link {c} of {b}"));
                }
                if self.is_blossom(c) && !self.blossom(c).alive {
                    return bad(format!("dead child {c} of {b}"));
                }
            }
            if self.child_index(b, bl.base)? != 0 {
                return bad(format!("base of {b} not in child 0"));
            }
            let c0 = bl.children[0];
            if self.is_blossom(c0) && (self.blossom(c0).eta != bl.eta || self.blossom(c0).base != bl.base) {
                return bad(format!("child 0 of {b} disagrees on the base"));
            }
        }
        for v in 0..self.n {
            let mut t = v;
            while self.parent[t] != NONE {
                t = self.parent[t];
            }
            if self.top(v) != t {
                return bad(format!("partition puts {v} under {} not {t}", self.top(v)));
            }
        }
        Ok(())
    }

    /// One line per live blossom: `B<id> base z children=[...]`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for b in self.alive() {
            let bl = self.blossom(b);
            s.push_str(&format!("B{} base={} z={} children={:?}\n", b, bl.base, bl.z, bl.children));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Triangle 0-1-2 with base 0, edges 01 (id 0), 12 (id 1), 20 (id 2).
    fn triangle(matched: &[bool]) -> (Forest, usize) {
        let _ = matched;
        let mut f = Forest::new(3);
        let b = f.add_blossom(vec![0, 1, 2], vec![0, 1, 2], vec![(0, 1), (1, 2), (2, 0)], 0, None);
        (f, b)
    }

    #[test]
    fn path_to_base_on_triangle() {
        let matched = [false, true, false];
        let (f, b) = triangle(&matched);
        assert_eq!(f.path_to_base(&matched, b, 1).unwrap(), vec![1, 2]);
        assert_eq!(f.path_to_base(&matched, b, 2).unwrap(), vec![1, 0]);
        assert!(f.path_to_base(&matched, b, 0).unwrap().is_empty());
        f.check().unwrap();
    }

    #[test]
    fn merge_and_split_partition() {
        let matched = [false, true, false];
        let (mut f, b) = triangle(&matched);
        assert_eq!(f.top(2), b);
        assert_eq!(f.relabels(), 2);
        f.dissolve(b).unwrap();
        assert_eq!((f.top(0), f.top(1), f.top(2)), (0, 1, 2));
        f.check().unwrap();
    }

    #[test]
    fn union_relabels_smaller_side() {
        let mut f = Forest::new(6);
        let inner = f.add_blossom(vec![0, 1, 2], vec![0, 1, 2], vec![(0, 1), (1, 2), (2, 0)], 0, Some(9));
        let before = f.relabels();
        let outer = f.add_blossom(vec![inner, 3, 4], vec![9, 3, 4], vec![(0, 3), (3, 4), (4, 0)], 0, None);
        assert_eq!(f.relabels() - before, 2);
        assert_eq!(f.top(4), outer);
        assert_eq!(f.vertices(outer).len(), 5);
        assert_eq!(f.child_index(outer, 2).unwrap(), 0);
    }

    #[test]
    fn rotation_keeps_links() {
        let matched = [false, true, false];
        let (mut f, b) = triangle(&matched);
        f.rotate(b, 2);
        assert_eq!(f.blossom(b).children, vec![2, 0, 1]);
        assert_eq!(f.blossom(b).ends[0], (2, 0));
        assert_eq!(f.child_index(b, 1).unwrap(), 2);
    }
}
