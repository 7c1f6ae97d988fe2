#![allow(dead_code)]

use mink_core::{generate, GenKind, GenSpec, Matrix};

/// Existent instance number `i` of a fixed sweep over shapes up to 8x8.
pub fn existent(i: u64) -> Matrix {
    let rows = 1 + (i * 7 % 8) as usize;
    let cols = 1 + (i * 3 % 8) as usize;
    let rank = 1 + (i as usize / 2) % rows.min(cols);
    generate(&GenSpec { rows, cols, rank, kind: GenKind::Existent, seed: 500 + i, scale: 1.0 }).unwrap()
}

pub fn rel(x: &Matrix, y: &Matrix) -> f64 {
    x.dist(y) / x.norm_fro().max(y.norm_fro()).max(1.0)
}
