use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid incidence structure: {0}")]
    InvalidIncidence(String),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("group materialization exceeds bound of {0} elements")]
    MaterializationBound(usize),

    #[error("group is not semi-regular on the vertex set")]
    NotSemiRegular,

    #[error("permutation group is not a subgroup of the automorphism group")]
    NotAutomorphisms,

    #[error("invalid group data: {0}")]
    InvalidGroup(String),

    #[error("invalid voltage graph: {0}")]
    InvalidVoltageGraph(String),

    #[error("arc set is not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("construction step {step} ({class}) failed: {reason}")]
    StepFailed {
        step: usize,
        class: String,
        reason: String,
    },

    #[error("invalid construction program: {0}")]
    InvalidProgram(String),

    #[error("no closure found for parameter {param} in [{lo}, {hi}]")]
    NoClosure { param: String, lo: f64, hi: f64 },

    #[error("realization labels do not match the expected incidence structure: {0}")]
    LabelMismatch(String),

    #[error("invalid celestial symbol: {0}")]
    InvalidSymbol(String),

    #[error("celestial closure failed: residual {0:.3e}")]
    ClosureFailed(f64),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
