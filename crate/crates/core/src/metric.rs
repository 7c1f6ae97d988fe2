//! The Minkowski metric `G = diag(1, -1, ..., -1)` and the adjoint it induces.

use crate::matrix::Matrix;

/// Metric of a given order. Never materialised unless asked; applying it is a
/// sign flip on every row (or column) but the first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinkowskiMetric {
    order: usize,
}

impl MinkowskiMetric {
    pub fn new(order: usize) -> Self {
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn sign(&self, i: usize) -> f64 {
        if i == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// `G * m`.
    pub fn apply_left(&self, m: &Matrix) -> Matrix {
        assert_eq!(m.rows(), self.order, "metric order mismatch");
        Matrix::from_fn(m.rows(), m.cols(), |i, j| if i == 0 { m[(i, j)] } else { -m[(i, j)] })
    }

    /// `m * G`.
    pub fn apply_right(&self, m: &Matrix) -> Matrix {
        assert_eq!(m.cols(), self.order, "metric order mismatch");
        Matrix::from_fn(m.rows(), m.cols(), |i, j| if j == 0 { m[(i, j)] } else { -m[(i, j)] })
    }

    pub fn to_dense(&self) -> Matrix {
        let d: Vec<f64> = (0..self.order).map(|i| self.sign(i)).collect();
        Matrix::from_diag(self.order, self.order, &d)
    }
}

/// Minkowski adjoint `A~ = G_n A* F_m` of an `m x n` matrix.
///
/// Entry `(i, j)` is `g_i f_j conj(a_ji)`, so the map is an exact involution.
pub fn mink_adjoint(a: &Matrix) -> Matrix {
    let g = MinkowskiMetric::new(a.cols());
    let f = MinkowskiMetric::new(a.rows());
    Matrix::from_fn(a.cols(), a.rows(), |i, j| {
        let z = a[(j, i)].conj();
        if g.sign(i) * f.sign(j) > 0.0 {
            z
        } else {
            -z
        }
    })
}
