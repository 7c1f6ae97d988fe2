use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix data has {got} entries, expected {rows}x{cols}")]
    DataLength { rows: usize, cols: usize, got: usize },
    #[error("matrix dimensions must be positive, got {rows}x{cols}")]
    EmptyShape { rows: usize, cols: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("shape mismatch in {op}: {detail}")]
    ShapeMismatch { op: &'static str, detail: String },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare { op: &'static str, rows: usize, cols: usize },
    #[error("SVD did not converge after {sweeps} sweeps")]
    SvdNotConverged { sweeps: usize },
    #[error("matrix is numerically singular (rank {rank} of {order}, condition estimate {cond:e})")]
    Singular { rank: usize, order: usize, cond: f64 },
    #[error("operation undefined for the zero matrix")]
    ZeroMatrix,
    #[error("index is {index}, group inverse requires index at most 1")]
    IndexNotOne { index: usize },
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("Minkowski inverse does not exist (rank A = {rank_a}, rank AA~ = {rank_aas}, rank A~A = {rank_asa})")]
    NotExistent { rank_a: usize, rank_aas: usize, rank_asa: usize },
    #[error("no {{1,3m}}-inverse exists: rank A~A = {rank_asa} differs from rank A = {rank_a}")]
    NotExistent13m { rank_a: usize, rank_asa: usize },
    #[error("no {{1,4m}}-inverse exists: rank AA~ = {rank_aas} differs from rank A = {rank_a}")]
    NotExistent14m { rank_a: usize, rank_aas: usize },
    #[error("factor {factor} is numerically singular (condition estimate {cond:e})")]
    SingularFactor { factor: &'static str, cond: f64 },
    #[error("HS block G1 is singular (rank {rank} of {order}); rank A~A < rank A")]
    SingularG1 { rank: usize, order: usize },
    #[error("HS block Delta is singular (rank {rank} of {order}); rank AA~ < rank A")]
    SingularDelta { rank: usize, order: usize },
    #[error("leading {order}x{order} block is numerically singular")]
    BlockSingular { order: usize },
    #[error("witness {which} is not valid: residual {residual:e}")]
    InvalidWitness { which: &'static str, residual: f64 },
    #[error("equation is inconsistent: residual {residual:e}")]
    Inconsistent { residual: f64 },
    #[error("rank equation is infeasible: {0}")]
    Infeasible(String),
    #[error("free parameter X1 is numerically singular")]
    SingularParam,
    #[error("generator exhausted {attempts} draws without meeting its constraints")]
    RetryExhausted { attempts: usize },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}
