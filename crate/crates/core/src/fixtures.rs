//! Small exact matrices with known Minkowski-inverse behaviour, shared by
//! tests, the acceptance suite and the shipped JSON fixtures.

use crate::matrix::Matrix;

/// 5x4, rank 2, with `rank(A~A) = rank(AA~) = 1`: no Minkowski inverse even
/// though both products have index one.
pub fn no_inverse_5x4() -> Matrix {
    Matrix::from_rows(&[
        [1.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
        [1.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0],
    ])
}

/// 5x5, rank 3, Minkowski inverse exists with small integer entries.
pub fn sample_5x5() -> Matrix {
    Matrix::from_rows(&[
        [1.0, 1.0, 1.0, 0.0, 1.0],
        [0.0, 1.0, 0.0, 1.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0],
    ])
}

/// The Minkowski inverse of [`sample_5x5`].
pub fn sample_5x5_minv() -> Matrix {
    Matrix::from_rows(&[
        [0.0, 1.0, -2.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0, 0.0],
        [1.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 1.0, -1.0, 0.0, 0.0],
        [0.0, -1.0, 2.0, 0.0, 0.0],
    ])
}

/// A {1,2}-inverse of [`sample_5x5`] with `N(X) = N(A~)` that is nevertheless
/// not its Minkowski inverse: its range leaves `R(A~)`.
pub fn sample_5x5_impostor() -> Matrix {
    Matrix::from_rows(&[
        [0.0, -0.2, 0.4, 0.0, 0.0],
        [0.0, 0.4, 0.2, 0.0, 0.0],
        [1.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.6, -0.2, 0.0, 0.0],
        [0.0, -0.2, 0.4, 0.0, 0.0],
    ])
}

/// Singular values of [`sample_5x5`], to the digits used in regression tests.
pub const SAMPLE_5X5_SINGULAR_VALUES: [f64; 3] = [2.635, 1.2685, 0.66897];
