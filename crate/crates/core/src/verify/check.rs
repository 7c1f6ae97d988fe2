use serde::Serialize;

use crate::error::{Error, Result};
use crate::ginv::scalar;
use crate::matrix::Matrix;
use crate::metric::mink_adjoint;
use crate::minkowski::mink_residuals;
use crate::rank::rank;
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CheckReport {
    pub eq1: f64,
    pub eq2: f64,
    pub eq3m: f64,
    pub eq4m: f64,
    /// `R(X) = R(A~)`.
    pub range_ok: bool,
    /// `N(X) = N(A~)`.
    pub null_ok: bool,
    pub verdict: bool,
}

impl CheckReport {
    pub fn residuals(&self) -> [f64; 4] {
        [self.eq1, self.eq2, self.eq3m, self.eq4m]
    }
}

fn unit(z: &Matrix) -> Matrix {
    let s = z.norm_fro();
    if s > 0.0 {
        z.scale(scalar(1.0 / s))
    } else {
        z.clone()
    }
}

/// Decides whether `X` is the Minkowski inverse of `A` from the defining
/// equations and the range / null-space identities.
pub fn check_candidate(a: &Matrix, x: &Matrix, tol: &Tolerance) -> Result<CheckReport> {
    let (m, n) = a.shape();
    if x.shape() != (n, m) {
        return Err(Error::ShapeMismatch {
            op: "check_candidate",
            detail: format!("A is {m}x{n}, X is {}x{}", x.rows(), x.cols()),
        });
    }
    let [eq1, eq2, eq3m, eq4m] = mink_residuals(a, x);
    let a_s = mink_adjoint(a);
    let loose = tol.for_computed();
    let r_as = rank(&a_s, tol)?;
    let r_x = rank(x, &loose)?;
    let (ux, ua) = (unit(x), unit(&a_s));
    let range_ok = r_x == r_as && rank(&Matrix::hstack(&[&ux, &ua])?, &loose)? == r_as;
    let null_ok = r_x == r_as && rank(&Matrix::vstack(&[&ux, &ua])?, &loose)? == r_as;
    let verdict = [eq1, eq2, eq3m, eq4m].iter().all(|&r| tol.accepts(r, 1.0)) && range_ok && null_ok;
    Ok(CheckReport { eq1, eq2, eq3m, eq4m, range_ok, null_ok, verdict })
}
