use thiserror::Error;

/// Errors produced by the solvers, the verifier plumbing and the parsers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} has degree {degree} above its bound {bound}")]
    DegreeViolation { vertex: usize, degree: u64, bound: u64 },
    #[error("cannot expand blossom {blossom}: z = {z} is positive")]
    ExpandOnPositiveZ { blossom: usize, z: i64 },
    #[error("blossom {blossom} is already dissolved")]
    TranslateDissolved { blossom: usize },
    #[error("dual adjustment would violate edge {edge}: {detail}")]
    InfeasibleAdjust { edge: usize, detail: String },
    #[error("phase 1 used {passes} passes on a path root of size {size} (bound {bound})")]
    PassBoundExceeded { passes: u64, size: u64, bound: f64 },
    #[error("{what} = {value} exceeds the bound {bound} on a path root of size {size}")]
    SlotBoundExceeded { what: &'static str, value: u64, size: u64, bound: f64 },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("line {line}: {msg}")]
    ParseError { line: usize, msg: String },
    #[error("line {line}: second degree line for vertex {vertex}")]
    DuplicateDegreeLine { line: usize, vertex: usize },
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("no perfect matching / f-factor exists")]
    Infeasible,
    #[error("weights too large: n(n+1)W*4 must stay below 2^62")]
    OverflowGuard,
    #[error("instance too large for the exhaustive oracle ({0})")]
    SizeLimit(String),
}

pub type Result<T> = std::result::Result<T, Error>;
