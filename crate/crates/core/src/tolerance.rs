use serde::{Deserialize, Serialize};

/// Numerical thresholds shared by every rank decision and equation check.
///
/// Rank cutoff: `rank_rtol * max(m, n) * sigma_max`. Equation residuals are
/// accepted when `residual <= eq_atol + eq_rtol * scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub rank_rtol: f64,
    pub eq_atol: f64,
    pub eq_rtol: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { rank_rtol: f64::EPSILON, eq_atol: 1e-12, eq_rtol: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(rank_rtol: f64, eq_atol: f64, eq_rtol: f64) -> Option<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        (ok(rank_rtol) && ok(eq_atol) && ok(eq_rtol)).then_some(Self { rank_rtol, eq_atol, eq_rtol })
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.eq_atol + self.eq_rtol * scale
    }

    /// Rank tolerance for matrices assembled from computed (rounded) results,
    /// such as candidate inverses or bordered blocks: noise at the equation
    /// tolerance must not count as rank.
    pub fn for_computed(&self) -> Self {
        Self { rank_rtol: self.rank_rtol.max(self.eq_rtol), ..*self }
    }
}
