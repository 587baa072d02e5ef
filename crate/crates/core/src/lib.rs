//! Maximum-weight perfect matching and maximum-weight f-factors by weight
//! scaling, with a dismantling pass over the blossoms inherited from the
//! previous scale, plus exhaustive oracles and a certificate verifier.

pub mod bucket;
pub mod classic;
pub mod dismantler;
pub mod duals;
pub mod engine;
pub mod error;
pub mod ffactor;
pub mod forest;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod state;
pub mod stats;

pub use classic::{classic_solve, classic_solve_with, feasibility_check, Solution};
pub use dismantler::solve_matching;
pub use ffactor::solve_ffactor;
pub use stats::{Config, RunStats};
pub use duals::{verify, Certificate, Report};
pub use error::{Error, Result};
pub use graph::{EdgeSet, Multigraph};
pub use io::{generate, parse_instance, render, Instance};
