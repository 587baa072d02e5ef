//! Non-scaling Edmonds solver with exact duals, used as a second
//! implementation and for feasibility checks.

use crate::duals::Elig;
use crate::engine::{Outcome, Search, SearchCfg};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Multigraph};
use crate::state::Core;
use crate::stats::{Config, RunStats};
use crate::Certificate;

/// A solved instance: the optimum on the input graph and its certificate.
#[derive(Debug, Clone)]
pub struct Solution {
    pub weight: i64,
    pub matching: EdgeSet,
    pub certificate: Certificate,
    pub stats: RunStats,
}

/// Runs searches with exact eligibility until every deficiency is zero.
pub(crate) fn run_exact(core: &mut Core, stats: &mut RunStats, trace: bool) -> Result<()> {
    let all: Vec<usize> = (0..core.n()).collect();
    while all.iter().any(|&v| core.def(v) > 0) {
        let mut s = Search::new(core, SearchCfg { elig: Elig::Exact, region: 0, max_disjoint: false, trace });
        s.add_roots(&all)?;
        while s.process()? != Outcome::Augmented {
            match s.next_delay() {
                Some(d) => s.advance(d)?,
                None => return Err(Error::Infeasible),
            }
        }
        stats.absorb(s);
    }
    Ok(())
}

/// Maximum-weight perfect matching (`f ≡ 1`) or f-factor with optimum
/// duals for the weights `2ŵ`.
pub fn classic_solve(g: &Multigraph) -> Result<Solution> {
    classic_solve_with(g, Config::default())
}

/// [`classic_solve`] honouring the `trace` switch of `cfg`.
pub fn classic_solve_with(g: &Multigraph, cfg: Config) -> Result<Solution> {
    g.overflow_guard()?;
    if g.f_total() % 2 == 1 {
        return Err(Error::Infeasible);
    }
    let w: Vec<i64> = g.edges().iter().map(|e| 2 * e.w).collect();
    let y0 = g.edges().iter().map(|e| e.w).max().unwrap_or(0);
    let mut core = Core::new(g.clone(), w);
    core.yp.iter_mut().for_each(|y| *y = y0);
    let mut stats = RunStats::default();
    run_exact(&mut core, &mut stats, cfg.trace)?;
    let ffactor = !g.degrees().iter().all(|&f| f == 1);
    let certificate = core.certificate(ffactor, 2, 0, 0);
    let matching = core.matching();
    let weight = crate::graph::weight(g, &matching);
    Ok(Solution { weight, matching, certificate, stats })
}

/// True iff a perfect matching / f-factor exists, by a zero-weight run.
pub fn feasibility_check(g: &Multigraph) -> bool {
    if g.f_total() % 2 == 1 {
        return false;
    }
    let mut core = Core::new(g.clone(), vec![0; g.m()]);
    run_exact(&mut core, &mut RunStats::default(), false).is_ok()
}
