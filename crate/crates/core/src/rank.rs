use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, C64};
use crate::svd::singular_values;
use crate::tolerance::Tolerance;

/// Outcome of a numerical rank decision, kept for auditability.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankReport {
    pub rank: usize,
    /// Nonincreasing.
    pub singular_values: Vec<f64>,
    pub cutoff: f64,
}

impl RankReport {
    pub fn from_singular_values(singular_values: Vec<f64>, rows: usize, cols: usize, tol: &Tolerance) -> Self {
        Self::with_noise_scale(singular_values, rows, cols, 0.0, tol)
    }

    /// Cutoff relative to `max(sigma_max, scale)`. Products such as `AA~`
    /// carry rounding error on the scale of their factors' norms, which can
    /// exceed their own norm when the product cancels.
    pub fn with_noise_scale(singular_values: Vec<f64>, rows: usize, cols: usize, scale: f64, tol: &Tolerance) -> Self {
        let smax = singular_values.first().copied().unwrap_or(0.0).max(scale);
        let cutoff = if smax == 0.0 { 0.0 } else { tol.rank_rtol * rows.max(cols) as f64 * smax };
        let rank = singular_values.iter().filter(|&&s| s > cutoff).count();
        Self { rank, singular_values, cutoff }
    }

    /// Ratio of the largest to the smallest retained singular value.
    pub fn condition(&self) -> f64 {
        match self.rank {
            0 => f64::INFINITY,
            r => self.singular_values[0] / self.singular_values[r - 1],
        }
    }
}

pub fn numerical_rank(a: &Matrix, tol: &Tolerance) -> Result<RankReport> {
    let s = singular_values(a)?;
    Ok(RankReport::from_singular_values(s, a.rows(), a.cols(), tol))
}

pub fn rank(a: &Matrix, tol: &Tolerance) -> Result<usize> {
    numerical_rank(a, tol).map(|r| r.rank)
}

/// Rank with the cutoff measured against `scale` when that exceeds the
/// matrix norm; see [`RankReport::with_noise_scale`].
pub fn rank_with_scale(a: &Matrix, scale: f64, tol: &Tolerance) -> Result<usize> {
    let s = singular_values(a)?;
    Ok(RankReport::with_noise_scale(s, a.rows(), a.cols(), scale, tol).rank)
}

/// Smallest `t` with `rank(M^(t+1)) = rank(M^t)`.
pub fn index_of(m: &Matrix, tol: &Tolerance) -> Result<usize> {
    index_with_scale(m, 0.0, tol)
}

/// [`index_of`] for a computed `M` whose rounding error is on the scale
/// `scale`; the power `M^j` is judged against `max(scale, ||M||)^j`.
pub fn index_with_scale(m: &Matrix, scale: f64, tol: &Tolerance) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare { op: "index_of", rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let s1 = singular_values(m)?.first().copied().unwrap_or(0.0);
    let base = s1.max(scale);
    if base == 0.0 {
        return Ok(1);
    }
    // Work with M / base so that powers neither overflow nor underflow.
    let unit = m.scale(C64::new(1.0 / base, 0.0));
    let mut prev = n;
    let mut power = unit.clone();
    for t in 0..=n {
        let s = singular_values(&power)?;
        // The exact rank of M^(t+1) never exceeds that of M^t.
        let cur = RankReport::with_noise_scale(s, n, n, 1.0, tol).rank.min(prev);
        if cur == prev {
            return Ok(t);
        }
        prev = cur;
        power = power.matmul(&unit)?;
    }
    Err(Error::Internal("index computation did not stabilise".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = numerical_rank(&Matrix::zeros(3, 3), &Tolerance::default()).unwrap();
        assert_eq!(r.rank, 0);
        assert_eq!(r.cutoff, 0.0);
    }

    #[test]
    fn rank_counts_values_above_cutoff() {
        let r = RankReport::from_singular_values(vec![4.0, 1.0, 1e-20], 3, 2, &Tolerance::default());
        assert_eq!(r.rank, 2);
        assert!((r.cutoff - 3.0 * 4.0 * f64::EPSILON).abs() < 1e-30);
        assert_eq!(r.condition(), 4.0);
    }

    #[test]
    fn index_examples() {
        let tol = Tolerance::default();
        assert_eq!(index_of(&Matrix::identity(3), &tol).unwrap(), 0);
        let nil = Matrix::from_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert_eq!(index_of(&nil, &tol).unwrap(), 2);
        let p = Matrix::from_rows(&[[1.0, 0.0], [0.0, 0.0]]);
        assert_eq!(index_of(&p, &tol).unwrap(), 1);
        let shift = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]);
        assert_eq!(index_of(&shift, &tol).unwrap(), 3);
    }
}
