//! Seeded instance generators and the residual / cross-algorithm oracle.
//!
//! Randomness comes from ChaCha8 seeded through `seed_from_u64`; entries are
//! complex with independent standard-normal real and imaginary parts.

mod check;
mod crosscheck;
mod generate;

pub use check::{check_candidate, CheckReport};
pub use crosscheck::{cross_check, AlgorithmOutcome, CrossCheckReport};
pub use generate::{generate, random_matrix, random_rank, GenKind, GenSpec};
