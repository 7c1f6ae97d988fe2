//! Minkowski adjoint, existence diagnostics and the Minkowski inverse in all
//! its representations.

mod algorithms;
mod existence;
mod families;
mod witnesses;

use serde::Serialize;

use crate::matrix::Matrix;
use crate::metric::mink_adjoint;
use crate::tolerance::Tolerance;

pub use algorithms::{
    compute, mink_inverse_block, mink_inverse_frf, mink_inverse_group, mink_inverse_hs, mink_inverse_resolvent,
    mink_inverse_zlobec, mink_inverse_zlobec2, AlgoParams,
};
pub use existence::{diagnose_existence, Criteria, ExistenceDiagnosis};
pub use families::{compose_13m_14m, one_four_m, one_three_m};
pub use witnesses::{
    bjerhammar_witnesses, factorization_witnesses, moore_style_check, sylvester_witnesses, BjerhammarParams,
    BjerhammarWitnesses, FactorizationWitnesses, MooreCheck, SylvesterWitnesses,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum Algorithm {
    Frf,
    Hs,
    Zlobec { k: u32, l: u32 },
    Zlobec2 { k: u32, l: u32 },
    Group,
    Resolvent,
    Block { r: usize },
    Compose13m14m,
}

impl Algorithm {
    pub fn label(&self) -> String {
        match self {
            Algorithm::Frf => "frf".into(),
            Algorithm::Hs => "hs".into(),
            Algorithm::Zlobec { k, l } => format!("zlobec(k={k},l={l})"),
            Algorithm::Zlobec2 { k, l } => format!("zlobec2(k={k},l={l})"),
            Algorithm::Group => "group".into(),
            Algorithm::Resolvent => "resolvent".into(),
            Algorithm::Block { r } => format!("block(r={r})"),
            Algorithm::Compose13m14m => "compose".into(),
        }
    }
}

/// Output of one Minkowski-inverse algorithm.
#[derive(Debug, Clone)]
pub struct InverseComputation {
    pub algorithm: Algorithm,
    pub result: Matrix,
    /// Relative residuals of `AXA=A`, `XAX=X`, `(AX)~=AX`, `(XA)~=XA`.
    pub residuals: [f64; 4],
    /// Relative gap between two formulas the algorithm evaluates for the same
    /// quantity (expanded form, dual form), when it has one.
    pub internal_gap: Option<f64>,
    /// True when existence failed and the formula was evaluated anyway.
    pub forced: bool,
}

impl InverseComputation {
    pub(crate) fn new(algorithm: Algorithm, a: &Matrix, result: Matrix, gap: Option<f64>, forced: bool) -> Self {
        let residuals = mink_residuals(a, &result);
        Self { algorithm, result, residuals, internal_gap: gap, forced }
    }

    /// Every residual within `eq_atol + eq_rtol`.
    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.residuals.iter().all(|&r| tol.accepts(r, 1.0))
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        num
    }
}

/// Relative residuals of the four defining equations:
/// `||AXA-A||/||A||`, `||XAX-X||/||X||` and `||(AX)~-AX||/max(1,||AX||)`,
/// likewise for `XA`. A zero denominator leaves the residual absolute.
pub fn mink_residuals(a: &Matrix, x: &Matrix) -> [f64; 4] {
    let ax = a * x;
    let xa = x * a;
    [
        ratio((&ax * a).dist(a), a.norm_fro()),
        ratio((&xa * x).dist(x), x.norm_fro()),
        ratio(mink_adjoint(&ax).dist(&ax), ax.norm_fro().max(1.0)),
        ratio(mink_adjoint(&xa).dist(&xa), xa.norm_fro().max(1.0)),
    ]
}
