//! `blossom-scale` command-line tool.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use blossom_scale::duals::certified_graph;
use blossom_scale::oracle::{brute_ffactor, brute_perfect_matching};
use blossom_scale::{
    classic_solve_with, generate, parse_instance, render, solve_ffactor, solve_matching, verify, Certificate, Config,
    Error, Instance, Solution,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

const ASSERTS_ENV: &str = "BLOSSOM_SCALE_ASSERTS";

#[derive(Parser)]
#[command(name = "blossom-scale", version, about = "Maximum-weight perfect matchings and f-factors")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and print its weight and edges.
    Solve {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// Write the certificate to this file.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Print the search step log to stderr.
        #[arg(long)]
        trace: bool,
        /// Fail when an instrumentation bound is exceeded.
        #[arg(long)]
        assert_bounds: bool,
    },
    /// Check a certificate against an instance.
    Verify { file: PathBuf, cert: PathBuf },
    /// Solve a tiny instance by exhaustive enumeration.
    Oracle { file: PathBuf },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        maxw: i64,
        #[arg(long, default_value_t = 1)]
        fmax: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve every instance in a directory with both solvers.
    Bench {
        dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Scaling matching solver when every degree bound is 1, scaling
    /// f-factor solver otherwise.
    Auto,
    /// Scaling solver chosen by the header kind.
    Scaling,
    /// Non-scaling solver with exact duals.
    Classic,
}

/// A failed command with its exit code.
struct Fail {
    code: u8,
    msg: String,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Infeasible => 2,
            Error::ParseError { .. } | Error::DuplicateDegreeLine { .. } | Error::BadHeader(_) => 4,
            Error::OverflowGuard => 5,
            _ => 1,
        };
        Fail { code, msg: e.to_string() }
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail { code: 4, msg: format!("{}: {e}", path.display()) })
}

fn load(path: &Path) -> Result<Instance, Fail> {
    Ok(parse_instance(&read(path)?)?)
}

fn run_solver(inst: &Instance, mode: Mode, cfg: Config) -> Result<Solution, Error> {
    let g = &inst.graph;
    let unit = g.degrees().iter().all(|&f| f == 1);
    match mode {
        Mode::Classic => classic_solve_with(g, cfg),
        Mode::Auto if unit => solve_matching(g, cfg),
        Mode::Scaling if !inst.ffactor => solve_matching(g, cfg),
        _ => solve_ffactor(g, cfg),
    }
}

fn render_cert(inst: &Instance, cert: &Certificate) -> Result<String, Fail> {
    let (h, _, _) = certified_graph(&inst.graph, cert.mult, cert.offset, &cert.expansions)
        .map_err(|msg| Fail { code: 1, msg })?;
    Ok(cert.render(&h))
}

fn print_edges(inst: &Instance, weight: i64, edges: impl Iterator<Item = usize>) {
    println!("weight {weight}");
    for e in edges {
        let ed = inst.graph.edge(e);
        println!("m {} {} {}", ed.u + 1, ed.v + 1, e + 1);
    }
}

fn solve(file: &Path, mode: Mode, cert: Option<&Path>, trace: bool, assert_bounds: bool) -> Result<(), Fail> {
    let inst = load(file)?;
    let env = std::env::var(ASSERTS_ENV).map(|v| v == "1").unwrap_or(false);
    let cfg = Config { assert_bounds: assert_bounds || env, trace, ..Config::default() };
    let sol = run_solver(&inst, mode, cfg)?;
    for line in &sol.stats.trace {
        eprintln!("{line}");
    }
    let report = verify(&inst.graph, &sol.certificate, &[]);
    if let Some(v) = report.first() {
        return Err(Fail { code: 3, msg: format!("own certificate rejected: {v}") });
    }
    if let Some(path) = cert {
        let text = render_cert(&inst, &sol.certificate)?;
        fs::write(path, text).map_err(|e| Fail { code: 1, msg: format!("{}: {e}", path.display()) })?;
    }
    print_edges(&inst, sol.weight, sol.matching.iter());
    Ok(())
}

fn verify_cmd(file: &Path, cert: &Path) -> Result<(), Fail> {
    let inst = load(file)?;
    let (c, ends) = Certificate::parse(&read(cert)?)?;
    let report = verify(&inst.graph, &c, &ends);
    match report.first() {
        Some(v) => Err(Fail { code: 3, msg: format!("rejected: {v}") }),
        None => {
            match report.weight {
                Some(w) => println!("ok weight {w}"),
                None => println!("ok"),
            }
            Ok(())
        }
    }
}

fn oracle(file: &Path) -> Result<(), Fail> {
    let inst = load(file)?;
    let g = &inst.graph;
    let best = if g.degrees().iter().all(|&f| f == 1) { brute_perfect_matching(g)? } else { brute_ffactor(g)? };
    let (w, m) = best.ok_or(Error::Infeasible)?;
    print_edges(&inst, w, m.iter());
    Ok(())
}

#[derive(Serialize)]
struct BenchRow {
    file: String,
    n: usize,
    m: usize,
    f_total: u64,
    status: String,
    weight: Option<i64>,
    classic_weight: Option<i64>,
    scales: u32,
    searches: u64,
    scaling_ms: f64,
    classic_ms: f64,
}

fn bench_one(path: &Path) -> BenchRow {
    let file = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let mut row = BenchRow {
        file,
        n: 0,
        m: 0,
        f_total: 0,
        status: String::new(),
        weight: None,
        classic_weight: None,
        scales: 0,
        searches: 0,
        scaling_ms: 0.0,
        classic_ms: 0.0,
    };
    let inst = match load(path) {
        Ok(i) => i,
        Err(f) => {
            row.status = format!("unreadable: {}", f.msg);
            return row;
        }
    };
    row.n = inst.graph.n();
    row.m = inst.graph.m();
    row.f_total = inst.graph.f_total();
    let t = Instant::now();
    let scaled = run_solver(&inst, Mode::Auto, Config::default());
    row.scaling_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    let classic = classic_solve_with(&inst.graph, Config::default());
    row.classic_ms = t.elapsed().as_secs_f64() * 1e3;
    row.status = match (&scaled, &classic) {
        (Ok(s), Ok(c)) => {
            row.weight = Some(s.weight);
            row.classic_weight = Some(c.weight);
            row.scales = s.stats.scales;
            row.searches = s.stats.searches;
            if let Some(v) = verify(&inst.graph, &s.certificate, &[]).first() {
                format!("rejected: {v}")
            } else if s.weight != c.weight {
                "mismatch".into()
            } else {
                "ok".into()
            }
        }
        (Err(Error::Infeasible), Err(Error::Infeasible)) => "infeasible".into(),
        (Err(e), _) => format!("error: {e}"),
        (_, Err(e)) => format!("classic error: {e}"),
    };
    row
}

fn bench(dir: &Path, json: bool) -> Result<(), Fail> {
    let entries = fs::read_dir(dir).map_err(|e| Fail { code: 4, msg: format!("{}: {e}", dir.display()) })?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_file()).collect();
    paths.sort();
    let rows: Vec<BenchRow> = paths.iter().map(|p| bench_one(p)).collect();
    if json {
        println!("{}", serde_json::to_string_pretty(&rows).map_err(|e| Fail { code: 1, msg: e.to_string() })?);
    } else {
        for r in &rows {
            let w = r.weight.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
            println!(
                "{} n {} m {} f {} weight {} scales {} searches {} scaling_ms {:.3} classic_ms {:.3} {}",
                r.file, r.n, r.m, r.f_total, w, r.scales, r.searches, r.scaling_ms, r.classic_ms, r.status
            );
        }
    }
    match rows.iter().find(|r| r.status != "ok" && r.status != "infeasible") {
        Some(r) => Err(Fail { code: 3, msg: format!("{}: {}", r.file, r.status) }),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Solve { file, mode, cert, trace, assert_bounds } => {
            solve(file, *mode, cert.as_deref(), *trace, *assert_bounds)
        }
        Cmd::Verify { file, cert } => verify_cmd(file, cert),
        Cmd::Oracle { file } => oracle(file),
        Cmd::Gen { n, m, maxw, fmax, seed } => {
            print!("{}", render(&generate(*n, *m, *maxw, *fmax, *seed)));
            Ok(())
        }
        Cmd::Bench { dir, json } => bench(dir, *json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
