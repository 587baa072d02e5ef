//! Run configuration and the counters a solve reports.

use crate::engine::{Search, SearchStats};

/// Solver switches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct Config {
    /// Fail with a typed error when an instrumentation bound is exceeded.
    pub assert_bounds: bool,
    /// Verify every end-of-scale certificate and every structural
    /// invariant, recording violations in [`RunStats::violations`].
    pub check_scales: bool,
    /// Multiplier in the Phase 1 threshold; 0 picks 4 for matching and
    /// 8 for f-factors.
    pub c: u32,
    /// Record one line per search step in [`RunStats::trace`].
    pub trace: bool,
}


/// Bounds observed for one dismantled major path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PathRecord {
    /// Size `|X|` (f-mass in f-mode) of the path root.
    pub size: u64,
    pub passes: u64,
    pub d_sum: u64,
    pub translations: u64,
    /// Largest `|F_p| (p − log₂|X|)` over non-final passes.
    pub product: f64,
    pub pq_pages: u64,
}

impl PathRecord {
    pub fn log_size(&self) -> f64 {
        (self.size.max(2) as f64).log2()
    }

    pub fn pass_bound(&self) -> f64 {
        2.0 * (self.size as f64 * self.log_size()).sqrt() + 1.0
    }

    pub fn d_bound(&self, c: u32) -> f64 {
        c as f64 * self.size as f64 * self.log_size()
    }

    pub fn translation_bound(&self) -> f64 {
        self.size as f64 * self.log_size()
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub scales: u32,
    pub searches: u64,
    pub engine: SearchStats,
    pub paths: Vec<PathRecord>,
    /// Maximal bounds constant used for the path records.
    pub c: u32,
    /// η-edge translations per scale, with the vertex count they are
    /// measured against.
    pub eta_translations: Vec<(u64, u64)>,
    /// Base edges left outside the eligibility window after tightening,
    /// with the number of base edges, per scale.
    pub eta_ineligible: Vec<(u64, u64)>,
    /// Certified graph sizes `(n̄, m̄, f̄(V))` per scale with the input
    /// `(n, m, f(V))`.
    pub expanded_sizes: Vec<[u64; 6]>,
    /// Invariant failures found with `check_scales`.
    pub violations: Vec<String>,
    /// Search step log, filled when [`Config::trace`] is set.
    pub trace: Vec<String>,
}

impl RunStats {
    /// Closes a search and folds its counters and log into the totals.
    pub(crate) fn absorb(&mut self, mut s: Search<'_>) {
        self.trace.extend(s.take_log());
        self.add_search(s.finish());
    }

    pub fn add_search(&mut self, s: SearchStats) {
        self.searches += 1;
        self.engine.grows += s.grows;
        self.engine.blossoms += s.blossoms;
        self.engine.expands += s.expands;
        self.engine.augments += s.augments;
        self.engine.scans += s.scans;
    }
}
