//! Benchmark inputs shared by the criterion benches.

use mink_core::{generate, GenKind, GenSpec, Matrix};

/// Square existent instance of order `n` and rank `n / 2`.
pub fn existent_square(n: usize, seed: u64) -> Matrix {
    let spec = GenSpec { rows: n, cols: n, rank: (n / 2).max(1), kind: GenKind::Existent, seed, scale: 1.0 };
    generate(&spec).expect("benchmark sizes are well inside the generator's range")
}
