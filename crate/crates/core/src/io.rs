//! Instance text format and a seeded instance generator.
//!
//! ```text
//! c comment
//! p ffactor 3 2
//! d 1 2
//! d 2 1
//! d 3 1
//! e 1 2 5
//! e 1 3 4
//! ```
//!
//! Vertices are 1-based. `p match n m` files have no `d` lines.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// A parsed instance. `ffactor` records the header kind, so a file
/// declared as an f-factor problem with `f ≡ 1` renders back unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub ffactor: bool,
    pub graph: Multigraph,
}

fn number<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::ParseError { line, msg: format!("missing {what}") })?;
    tok.parse().map_err(|_| Error::ParseError { line, msg: format!("bad {what} '{tok}'") })
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize> {
    let v: usize = number(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(Error::ParseError { line, msg: format!("vertex {v} outside 1..={n}") });
    }
    Ok(v - 1)
}

/// Parses the instance format.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(bool, usize, usize)> = None;
    let mut f: Vec<Option<u32>> = Vec::new();
    let mut edges: Vec<(usize, usize, i64)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(Error::BadHeader(format!("line {line}: second header")));
                }
                let ffactor = match tok.next() {
                    Some("match") => false,
                    Some("ffactor") => true,
                    other => return Err(Error::BadHeader(format!("unknown problem kind {other:?}"))),
                };
                let n: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::BadHeader("missing or bad vertex count".into()))?;
                let m: usize = tok
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::BadHeader("missing or bad edge count".into()))?;
                header = Some((ffactor, n, m));
                f = vec![if ffactor { None } else { Some(1) }; n];
            }
            "d" | "e" => {
                let (ffactor, n, _) = header.ok_or_else(|| Error::BadHeader(format!("line {line} precedes the header")))?;
                if kind == "d" {
                    if !ffactor {
                        return Err(Error::ParseError { line, msg: "degree line in a matching file".into() });
                    }
                    if !edges.is_empty() {
                        return Err(Error::ParseError { line, msg: "degree line after an edge line".into() });
                    }
                    let v = vertex(tok.next(), line, n)?;
                    let d: u32 = number(tok.next(), line, "degree")?;
                    if d == 0 {
                        return Err(Error::ParseError { line, msg: "degree must be positive".into() });
                    }
                    if f[v].is_some() {
                        return Err(Error::DuplicateDegreeLine { line, vertex: v + 1 });
                    }
                    f[v] = Some(d);
                } else {
                    if let Some(v) = f.iter().position(|d| d.is_none()) {
                        return Err(Error::ParseError { line, msg: format!("no degree line for vertex {}", v + 1) });
                    }
                    let u = vertex(tok.next(), line, n)?;
                    let v = vertex(tok.next(), line, n)?;
                    let w: i64 = number(tok.next(), line, "weight")?;
                    edges.push((u, v, w));
                }
                if tok.next().is_some() {
                    return Err(Error::ParseError { line, msg: "trailing tokens".into() });
                }
            }
            other => return Err(Error::ParseError { line, msg: format!("unknown line kind '{other}'") }),
        }
    }
    let (ffactor, n, m) = header.ok_or_else(|| Error::BadHeader("no header line".into()))?;
    if let Some(v) = f.iter().position(|d| d.is_none()) {
        return Err(Error::ParseError { line: text.lines().count(), msg: format!("no degree line for vertex {}", v + 1) });
    }
    if edges.len() != m {
        return Err(Error::BadHeader(format!("header declares {m} edges, file has {}", edges.len())));
    }
    let mut graph = Multigraph::with_degrees(f.into_iter().map(|d| d.unwrap_or(1)).collect());
    debug_assert_eq!(graph.n(), n);
    for (u, v, w) in edges {
        graph.add_edge(u, v, w);
    }
    Ok(Instance { ffactor, graph })
}

/// Text form accepted by [`parse_instance`].
pub fn render(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut s = String::new();
    let kind = if inst.ffactor { "ffactor" } else { "match" };
    let _ = writeln!(s, "p {} {} {}", kind, g.n(), g.m());
    if inst.ffactor {
        for (v, d) in g.degrees().iter().enumerate() {
            let _ = writeln!(s, "d {} {}", v + 1, d);
        }
    }
    for e in g.edges() {
        let _ = writeln!(s, "e {} {} {}", e.u + 1, e.v + 1, e.w);
    }
    s
}

/// Random multigraph with `m` edges and weights in `[0, maxw]`. With
/// `fmax > 1` the degrees are drawn from `[1, fmax]`, adjusted so that
/// `f(V)` is even, and loops may occur; with `fmax <= 1` the instance is
/// a loopless matching instance. Feasibility is not guaranteed.
pub fn generate(n: usize, m: usize, maxw: i64, fmax: u32, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ffactor = fmax > 1;
    let mut f: Vec<u32> = if ffactor { (0..n).map(|_| rng.gen_range(1..=fmax)).collect() } else { vec![1; n] };
    if ffactor && f.iter().map(|&d| d as u64).sum::<u64>() % 2 == 1 {
        let v = rng.gen_range(0..n);
        if f[v] < fmax {
            f[v] += 1;
        } else {
            f[v] -= 1;
        }
    }
    let mut graph = Multigraph::with_degrees(f);
    if n > 0 {
        for _ in 0..m {
            let u = rng.gen_range(0..n);
            let v = loop {
                let v = rng.gen_range(0..n);
                if ffactor || v != u || n == 1 {
                    break v;
                }
            };
            graph.add_edge(u, v, rng.gen_range(0..=maxw.max(0)));
        }
    }
    Instance { ffactor, graph }
}
