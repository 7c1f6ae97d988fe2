use serde::Serialize;

use super::algorithms::frf_formula;
use super::existence::{diagnose_existence, ExistenceDiagnosis};
use crate::error::{Error, Result};
use crate::ginv::{inverse, moore_penrose_with_rank};
use crate::matrix::Matrix;
use crate::metric::mink_adjoint;
use crate::rank::rank;
use crate::svd::svd;
use crate::tolerance::Tolerance;

fn require(a: &Matrix, tol: &Tolerance) -> Result<ExistenceDiagnosis> {
    let d = diagnose_existence(a, tol)?;
    if !d.exists {
        return Err(Error::NotExistent { rank_a: d.rank_a, rank_aas: d.rank_aas, rank_asa: d.rank_asa });
    }
    Ok(d)
}

fn rel(residual: f64, scale: f64) -> f64 {
    residual / scale.max(f64::MIN_POSITIVE)
}

/// `X` (`m x m`) and `Y` (`n x n`) with `A = X A A~ A = A A~ A Y`.
#[derive(Debug, Clone)]
pub struct FactorizationWitnesses {
    pub x: Matrix,
    pub y: Matrix,
    /// Relative residuals of `A = XAA~A`, `A = AA~AY`, `(XA)~ = A^m`,
    /// `(AY)~ = A^m`.
    pub residuals: [f64; 4],
}

impl FactorizationWitnesses {
    pub fn holds(&self, tol: &Tolerance) -> bool {
        self.residuals.iter().all(|&r| tol.accepts(r, 1.0))
    }
}

/// `X = A T+` and `Y = T+ A` with `T = AA~A`; since `rank(T) = rank(A)`,
/// `T+ T` and `T T+` act as identities on the relevant spaces.
pub fn factorization_witnesses(a: &Matrix, tol: &Tolerance) -> Result<FactorizationWitnesses> {
    let d = require(a, tol)?;
    let a_s = mink_adjoint(a);
    let t = &(a * &a_s) * a;
    let t1 = moore_penrose_with_rank(&t, d.rank_a)?;
    let x = a * &t1;
    let y = &t1 * a;
    let minv = frf_formula(a, d.rank_a, tol, false)?;
    let an = a.norm_fro();
    let mn = minv.norm_fro();
    let residuals = [
        rel((&x * &t).dist(a), an),
        rel((&t * &y).dist(a), an),
        rel(mink_adjoint(&(&x * a)).dist(&minv), mn),
        rel(mink_adjoint(&(a * &y)).dist(&minv), mn),
    ];
    Ok(FactorizationWitnesses { x, y, residuals })
}

/// Solution `(X, Y)` of `XAA~ - YX = I`, `AA~X = XAA~`, `AA~Y = 0`, `Y^2 = Y`.
#[derive(Debug, Clone)]
pub struct SylvesterWitnesses {
    pub x: Matrix,
    pub y: Matrix,
    /// `A~X`, which equals `A^m`.
    pub minv: Matrix,
    /// Relative residuals of the four identities, then of `A~X = A^m`.
    pub residuals: [f64; 5],
}

impl SylvesterWitnesses {
    pub fn holds(&self, tol: &Tolerance) -> bool {
        self.residuals.iter().all(|&r| tol.accepts(r, 1.0))
    }
}

/// With `Q = AA~ + I - AA^m` and `Y = I - AA^m`: `X = AA^m Q^-1 - Y`.
pub fn sylvester_witnesses(a: &Matrix, tol: &Tolerance) -> Result<SylvesterWitnesses> {
    let d = require(a, tol)?;
    let m = a.rows();
    let i = Matrix::identity(m);
    let a_s = mink_adjoint(a);
    let aas = a * &a_s;
    let am = frf_formula(a, d.rank_a, tol, false)?;
    let p = a * &am;
    let q = &(&aas + &i) - &p;
    let q_inv = inverse(&q, tol).map_err(|e| Error::Internal(format!("Q singular after a passing diagnosis: {e}")))?;
    let y = &i - &p;
    let x = &(&p * &q_inv) - &y;
    let minv = &a_s * &x;

    let xaas = &x * &aas;
    let scale = 1.0 + aas.norm_fro() * x.norm_fro();
    let residuals = [
        rel((&xaas - &(&y * &x)).dist(&i), scale + y.norm_fro() * x.norm_fro()),
        rel((&aas * &x).dist(&xaas), scale),
        rel((&aas * &y).norm_fro(), 1.0 + aas.norm_fro() * y.norm_fro()),
        rel((&y * &y).dist(&y), 1.0 + y.norm_fro()),
        rel(minv.dist(&am), am.norm_fro()),
    ];
    Ok(SylvesterWitnesses { x, y, minv, residuals })
}

/// Range/null-space characterization of `X = A^m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MooreCheck {
    pub holds: bool,
    /// `XAa = a` on `R(A~)`, i.e. `XAA~ = A~`.
    pub reproduces_range: bool,
    /// `Xb = 0` on `N(A~)`.
    pub annihilates_null: bool,
    /// `R(X) ⊆ R(A~)`: `rank([X | A~]) = rank(A~)`.
    pub range_contained: bool,
    pub range_residual: f64,
    pub null_residual: f64,
}

pub fn moore_style_check(a: &Matrix, x: &Matrix, tol: &Tolerance) -> Result<MooreCheck> {
    let (m, n) = a.shape();
    if x.shape() != (n, m) {
        return Err(Error::ShapeMismatch {
            op: "moore_style_check",
            detail: format!("A is {m}x{n}, X is {}x{}", x.rows(), x.cols()),
        });
    }
    let a_s = mink_adjoint(a);
    let (xn, an) = (x.norm_fro(), a.norm_fro());

    let range_residual = (&(x * a) * &a_s).dist(&a_s);
    let reproduces_range = tol.accepts(range_residual, xn * an * a_s.norm_fro());

    let r_as = rank(&a_s, tol)?;
    let null = svd(&a_s)?.v.block(0, r_as, m, m - r_as);
    let null_residual = (x * &null).norm_fro();
    let annihilates_null = tol.accepts(null_residual, xn);

    // Normalize both blocks so their scales do not bias the rank decision.
    let unit = |z: &Matrix| {
        let s = z.norm_fro();
        if s > 0.0 {
            z.scale(crate::ginv::scalar(1.0 / s))
        } else {
            z.clone()
        }
    };
    let stacked = Matrix::hstack(&[&unit(x), &unit(&a_s)])?;
    let range_contained = rank(&stacked, &tol.for_computed())? == r_as;

    Ok(MooreCheck {
        holds: reproduces_range && annihilates_null && range_contained,
        reproduces_range,
        annihilates_null,
        range_contained,
        range_residual,
        null_residual,
    })
}

/// Free parameters: `y_b` (`m x m`) and `z_c` (`n x n`) for `B` and `C`,
/// `y_d`, `z_d` (both `m x n`) for `D`.
#[derive(Debug, Clone)]
pub struct BjerhammarParams {
    pub y_b: Matrix,
    pub z_c: Matrix,
    pub y_d: Matrix,
    pub z_d: Matrix,
}

impl BjerhammarParams {
    pub fn zeros(m: usize, n: usize) -> Self {
        Self { y_b: Matrix::zeros(m, m), z_c: Matrix::zeros(n, n), y_d: Matrix::zeros(m, n), z_d: Matrix::zeros(m, n) }
    }
}

/// `B`, `C`, `D` with `A^m = A~B = CA~ = A~DA~`.
#[derive(Debug, Clone)]
pub struct BjerhammarWitnesses {
    pub b: Matrix,
    pub c: Matrix,
    pub d: Matrix,
    /// Relative residuals of `A~B`, `CA~` and `A~DA~` against `A^m`.
    pub residuals: [f64; 3],
}

impl BjerhammarWitnesses {
    pub fn holds(&self, tol: &Tolerance) -> bool {
        self.residuals.iter().all(|&r| tol.accepts(r, 1.0))
    }
}

pub fn bjerhammar_witnesses(a: &Matrix, params: &BjerhammarParams, tol: &Tolerance) -> Result<BjerhammarWitnesses> {
    let (m, n) = a.shape();
    for (p, shape, what) in [
        (&params.y_b, (m, m), "Y_B"),
        (&params.z_c, (n, n), "Z_C"),
        (&params.y_d, (m, n), "Y_D"),
        (&params.z_d, (m, n), "Z_D"),
    ] {
        if p.shape() != shape {
            return Err(Error::ShapeMismatch {
                op: "bjerhammar_witnesses",
                detail: format!("{what} is {}x{}, expected {}x{}", p.rows(), p.cols(), shape.0, shape.1),
            });
        }
    }
    let dg = require(a, tol)?;
    let a_s = mink_adjoint(a);
    let am = frf_formula(a, dg.rank_a, tol, false)?;
    let p = moore_penrose_with_rank(&a_s, dg.rank_a)?;
    let left = &Matrix::identity(m) - &(&p * &a_s);
    let right = &Matrix::identity(n) - &(&a_s * &p);

    let b = &(&p * &am) + &(&left * &params.y_b);
    let c = &(&am * &p) + &(&params.z_c * &right);
    let d = &(&(&(&p * &am) * &p) + &(&left * &params.y_d)) + &(&params.z_d * &right);

    let mn = am.norm_fro();
    let residuals =
        [rel((&a_s * &b).dist(&am), mn), rel((&c * &a_s).dist(&am), mn), rel((&(&a_s * &d) * &a_s).dist(&am), mn)];
    Ok(BjerhammarWitnesses { b, c, d, residuals })
}
